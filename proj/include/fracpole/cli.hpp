#ifndef FRACPOLE_CLI_HPP
#define FRACPOLE_CLI_HPP

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "fracpole/error.hpp"
#include "fracpole/trigpoly.hpp"

namespace fracpole::cli {

enum class Command { check, me, mr, filters, simulate, eval, compare, demo };
enum class OutputFormat { json, csv };

/// Spectrum used by `filters` and `simulate`.
enum class Model { me, mr, truth };

struct JobConfig {
  Command command = Command::check;
  std::optional<std::string> input;  ///< moments, series or spectrum file
  std::vector<double> moments;       ///< inline real R_0..R_n
  std::optional<int> estimate_lags;  ///< input is a raw series
  std::optional<std::size_t> n_grid;  ///< default_grid when unset
  double tol = 1e-8;
  int max_lag = 16;
  int window = 8;
  std::size_t length = 1024;
  std::uint64_t seed = 0;
  Model model = Model::mr;
  std::optional<std::string> output;
  OutputFormat format = OutputFormat::json;
};

inline constexpr int max_order = 32;
inline constexpr std::size_t min_grid = std::size_t{1} << 8;
inline constexpr std::size_t max_grid = std::size_t{1} << 20;

/// Throws invalid_argument when a parameter is out of range.
void validate(const JobConfig& config);

/// Exit status for a library error: 1 malformed input, 2 not positive
/// definite, 3 solver failure, 4 I/O.
int exit_code(ErrorCode code) noexcept;

/// Grid size from FRACPOLE_GRID, or fallback when unset. Throws
/// invalid_argument when set but not a number.
std::size_t grid_from_environment(std::size_t fallback);

/**
 * Runs one job. The result goes to `out` (or the --output file), and any
 * failure is reported on `err` as {"error": {"code", "kind", "message"}}.
 * Returns the process exit status.
 */
int run(const JobConfig& config, std::ostream& out, std::ostream& err);

}  // namespace fracpole::cli

#endif  // FRACPOLE_CLI_HPP
