#ifndef FRACPOLE_DETAIL_SUMMATION_HPP
#define FRACPOLE_DETAIL_SUMMATION_HPP

#include <cstddef>
#include <span>

namespace fracpole::detail {

// Pairwise summation with a fixed reduction tree: the result depends only on
// the input order, never on how the caller schedules work.
template <typename T>
T pairwise_sum(std::span<const T> x) {
  constexpr std::size_t leaf = 32;
  if (x.size() <= leaf) {
    T acc{};
    for (const T& v : x) acc += v;
    return acc;
  }
  const std::size_t half = x.size() / 2;
  return pairwise_sum(x.first(half)) + pairwise_sum(x.subspan(half));
}

template <typename T>
T mean(std::span<const T> x) {
  return pairwise_sum(x) / static_cast<double>(x.size());
}

}  // namespace fracpole::detail

#endif  // FRACPOLE_DETAIL_SUMMATION_HPP
