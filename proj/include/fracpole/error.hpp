#ifndef FRACPOLE_ERROR_HPP
#define FRACPOLE_ERROR_HPP

#include <stdexcept>
#include <string>
#include <string_view>

namespace fracpole {

enum class ErrorCode {
  invalid_argument,
  not_posdef,
  not_positive,
  grid_too_small,
  root_near_circle,
  not_in_cone,
  no_convergence,
  singular_system,
  series_too_short,
  io,
};

/// Kebab-case name used in machine-readable error objects.
std::string_view to_string(ErrorCode code) noexcept;

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace fracpole

#endif  // FRACPOLE_ERROR_HPP
