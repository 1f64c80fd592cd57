#include "fracpole/detail/fft.hpp"

#include <fftw3.h>

#include <algorithm>
#include <memory>
#include <mutex>

namespace fracpole::detail {

namespace {

// The FFTW planner is not reentrant; execution on plan-owned buffers is.
std::mutex& planner_mutex() {
  static std::mutex m;
  return m;
}

struct FftwFree {
  void operator()(void* p) const noexcept { fftw_free(p); }
};

struct PlanDestroy {
  void operator()(fftw_plan p) const noexcept {
    std::lock_guard lock(planner_mutex());
    fftw_destroy_plan(p);
  }
};

using Plan = std::unique_ptr<std::remove_pointer_t<fftw_plan>, PlanDestroy>;

template <typename T>
std::unique_ptr<T[], FftwFree> fftw_buffer(std::size_t n) {
  return std::unique_ptr<T[], FftwFree>(
      static_cast<T*>(fftw_malloc(sizeof(T) * std::max<std::size_t>(n, 1))));
}

}  // namespace

std::vector<std::complex<double>> forward_real(std::span<const double> x) {
  const int n = static_cast<int>(x.size());
  auto in = fftw_buffer<double>(x.size());
  auto out = fftw_buffer<fftw_complex>(x.size() / 2 + 1);
  Plan plan;
  {
    std::lock_guard lock(planner_mutex());
    plan.reset(fftw_plan_dft_r2c_1d(n, in.get(), out.get(), FFTW_ESTIMATE));
  }
  std::copy(x.begin(), x.end(), in.get());
  fftw_execute(plan.get());
  std::vector<std::complex<double>> result(x.size() / 2 + 1);
  for (std::size_t k = 0; k < result.size(); ++k) {
    result[k] = {out[k][0], out[k][1]};
  }
  return result;
}

std::vector<std::complex<double>> backward(
    std::span<const std::complex<double>> x) {
  const int n = static_cast<int>(x.size());
  auto in = fftw_buffer<fftw_complex>(x.size());
  auto out = fftw_buffer<fftw_complex>(x.size());
  Plan plan;
  {
    std::lock_guard lock(planner_mutex());
    plan.reset(fftw_plan_dft_1d(n, in.get(), out.get(), FFTW_BACKWARD,
                                FFTW_ESTIMATE));
  }
  for (std::size_t i = 0; i < x.size(); ++i) {
    in[i][0] = x[i].real();
    in[i][1] = x[i].imag();
  }
  fftw_execute(plan.get());
  std::vector<std::complex<double>> result(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    result[i] = {out[i][0], out[i][1]};
  }
  return result;
}

}  // namespace fracpole::detail
