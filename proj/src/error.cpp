#include "fracpole/error.hpp"

namespace fracpole {

std::string_view to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::invalid_argument: return "invalid-argument";
    case ErrorCode::not_posdef: return "not-posdef";
    case ErrorCode::not_positive: return "not-positive";
    case ErrorCode::grid_too_small: return "grid-too-small";
    case ErrorCode::root_near_circle: return "root-near-circle";
    case ErrorCode::not_in_cone: return "not-in-cone";
    case ErrorCode::no_convergence: return "no-convergence";
    case ErrorCode::singular_system: return "singular-system";
    case ErrorCode::series_too_short: return "series-too-short";
    case ErrorCode::io: return "io";
  }
  return "unknown";
}

}  // namespace fracpole
