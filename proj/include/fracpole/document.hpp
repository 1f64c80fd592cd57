#ifndef FRACPOLE_DOCUMENT_HPP
#define FRACPOLE_DOCUMENT_HPP

#include <json.hpp>

#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "fracpole/me.hpp"
#include "fracpole/mr.hpp"

// JSON and CSV encodings used by the command-line tool. The layouts are
// described in docs/formats.md.
namespace fracpole::doc {

using json = nlohmann::ordered_json;

inline constexpr std::string_view spectrum_revision = "fracpole-spectrum/1";

/// Complex numbers are [re, im] pairs.
json complex_array(std::span<const cplx> v);
std::vector<cplx> parse_complex_array(const json& j);

/// %.17g, enough to round-trip any double.
std::string format_double(double v);

json grid_json(const GridDensity& g);

/// "theta,value" header followed by one row per grid point.
std::string grid_csv(const GridDensity& g);

json spectrum_document(const MeSpectrum& s, const AutocovSeq& input,
                       std::size_t n_grid, double residual_inf);
json spectrum_document(const MrSolution& sol, const AutocovSeq& input,
                       std::size_t n_grid);

/// A spectrum read back from a document, with the grid it was sampled on.
struct StoredSpectrum {
  std::variant<MeSpectrum, MrSpectrum> spectrum;
  std::size_t n_grid = 0;
  GridLayout layout = GridLayout::endpoint;
};

/// Throws invalid_argument on a malformed document.
StoredSpectrum load_spectrum(const json& j);

/// Same evaluation path as the one that produced the stored grid.
GridDensity sample_stored(const StoredSpectrum& s, std::size_t n_grid,
                          GridLayout layout);

/// {"r": [[re, im], ...]}; bare numbers are accepted as real entries.
AutocovSeq parse_moments_json(const json& j);

/// One "re,im" or "re" per line; blank lines and '#' comments are skipped.
AutocovSeq parse_moments_csv(std::string_view text);

/// One real value per line; blank lines and '#' comments are skipped.
std::vector<double> parse_series_csv(std::string_view text);

}  // namespace fracpole::doc

#endif  // FRACPOLE_DOCUMENT_HPP
