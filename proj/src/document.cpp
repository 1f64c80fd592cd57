#include "fracpole/document.hpp"

#include <charconv>
#include <cstdio>

#include "fracpole/error.hpp"

namespace fracpole::doc {

namespace {

[[noreturn]] void malformed(const std::string& what) {
  throw Error(ErrorCode::invalid_argument, what);
}

std::string_view trim(std::string_view s) {
  const auto blank = [](char c) { return c == ' ' || c == '\t' || c == '\r'; };
  while (!s.empty() && blank(s.front())) s.remove_prefix(1);
  while (!s.empty() && blank(s.back())) s.remove_suffix(1);
  return s;
}

double parse_number(std::string_view s, std::size_t line) {
  s = trim(s);
  if (!s.empty() && s.front() == '+') s.remove_prefix(1);
  double v = 0.0;
  const auto [end, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (s.empty() || ec != std::errc{} || end != s.data() + s.size()) {
    malformed("line " + std::to_string(line) + ": cannot parse '" +
              std::string(s) + "' as a number");
  }
  return v;
}

// Calls fn(line_number, content) for every non-blank, non-comment line.
template <typename Fn>
void for_each_line(std::string_view text, Fn&& fn) {
  std::size_t line = 0;
  while (!text.empty()) {
    ++line;
    const auto eol = text.find('\n');
    auto row = text.substr(0, eol);
    text = eol == std::string_view::npos ? std::string_view{} : text.substr(eol + 1);
    if (const auto hash = row.find('#'); hash != std::string_view::npos) {
      row = row.substr(0, hash);
    }
    row = trim(row);
    if (!row.empty()) fn(line, row);
  }
}

cplx parse_complex(const json& e) {
  if (e.is_number()) return {e.get<double>(), 0.0};
  if (e.is_array() && e.size() == 2 && e[0].is_number() && e[1].is_number()) {
    return {e[0].get<double>(), e[1].get<double>()};
  }
  malformed("expected a number or an [re, im] pair, got " + e.dump());
}

double number_field(const json& j, const char* key) {
  if (!j.contains(key) || !j[key].is_number()) {
    malformed(std::string("spectrum document: missing numeric field '") + key + "'");
  }
  return j[key].get<double>();
}

const json& field(const json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) {
    malformed(std::string("spectrum document: missing field '") + key + "'");
  }
  return j[key];
}

GridLayout parse_layout(const json& g) {
  if (!g.contains("layout")) return GridLayout::endpoint;
  const auto s = g["layout"].get<std::string>();
  if (s == "endpoint") return GridLayout::endpoint;
  if (s == "midpoint") return GridLayout::midpoint;
  malformed("unknown grid layout '" + s + "'");
}

}  // namespace

json complex_array(std::span<const cplx> v) {
  json out = json::array();
  for (const cplx& c : v) out.push_back(json::array({c.real(), c.imag()}));
  return out;
}

std::vector<cplx> parse_complex_array(const json& j) {
  if (!j.is_array()) malformed("expected an array of complex values");
  std::vector<cplx> out;
  out.reserve(j.size());
  for (const auto& e : j) out.push_back(parse_complex(e));
  return out;
}

std::string format_double(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

json grid_json(const GridDensity& g) {
  json out;
  out["n_grid"] = g.n_grid();
  out["layout"] = g.layout() == GridLayout::endpoint ? "endpoint" : "midpoint";
  out["values"] = json(std::vector<double>(g.values().begin(), g.values().end()));
  return out;
}

std::string grid_csv(const GridDensity& g) {
  std::string out = "theta,value\n";
  for (std::size_t i = 0; i < g.n_grid(); ++i) {
    out += format_double(g.theta(i));
    out += ',';
    out += format_double(g.values()[i]);
    out += '\n';
  }
  return out;
}

json spectrum_document(const MeSpectrum& s, const AutocovSeq& input,
                       std::size_t n_grid, double residual_inf) {
  json d;
  d["kind"] = "me";
  d["n"] = s.n;
  d["params"] = {{"k2", s.k2}, {"gain", s.gain()}, {"a", complex_array(s.a)}};
  d["grid"] = grid_json(sample_me(s, n_grid));
  d["moments_in"] = complex_array(input.values());
  d["residual_inf"] = residual_inf;
  d["spec_revision"] = spectrum_revision;
  return d;
}

json spectrum_document(const MrSolution& sol, const AutocovSeq& input,
                       std::size_t n_grid) {
  const MrSpectrum& s = sol.spectrum;
  const MrDiagnostics& diag = sol.diagnostics;
  json d;
  d["kind"] = "mr";
  d["n"] = s.n;
  d["params"] = {{"lambda", complex_array(s.lambda.values())},
                 {"k2", s.k2},
                 {"b", complex_array(s.b.nonnegative())},
                 {"factor", complex_array(s.factor)},
                 {"kappa2", s.kappa2},
                 {"kappa", s.kappa()}};
  d["grid"] = grid_json(sample_mr(s, n_grid));
  d["moments_in"] = complex_array(input.values());
  d["residual_inf"] = diag.residual_inf;
  d["solver"] = {{"iterations", diag.iterations},
                 {"relative_residual", diag.relative_residual},
                 {"min_lambda_g", diag.min_lambda_g},
                 {"n_grid", diag.n_grid},
                 {"refinements", diag.refinements}};
  d["spec_revision"] = spectrum_revision;
  return d;
}

StoredSpectrum load_spectrum(const json& j) {
  try {
    const auto kind = field(j, "kind").get<std::string>();
    const json& params = field(j, "params");
    const json& grid = field(j, "grid");
    StoredSpectrum out;
    out.n_grid = field(grid, "n_grid").get<std::size_t>();
    out.layout = parse_layout(grid);
    if (kind == "me") {
      MeSpectrum s;
      s.k2 = number_field(params, "k2");
      s.a = parse_complex_array(field(params, "a"));
      s.n = static_cast<int>(s.a.size());
      if (!(s.k2 > 0.0)) malformed("spectrum document: k2 must be positive");
      out.spectrum = std::move(s);
    } else if (kind == "mr") {
      MrSpectrum s;
      s.lambda = LagrangeVector(parse_complex_array(field(params, "lambda")));
      s.n = s.lambda.n();
      s.k2 = number_field(params, "k2");
      s.b = TrigPoly::from_nonnegative(parse_complex_array(field(params, "b")));
      s.factor = parse_complex_array(field(params, "factor"));
      s.kappa2 = number_field(params, "kappa2");
      out.spectrum = std::move(s);
    } else {
      malformed("spectrum document: unknown kind '" + kind + "'");
    }
    return out;
  } catch (const json::exception& e) {
    malformed(std::string("spectrum document: ") + e.what());
  }
}

GridDensity sample_stored(const StoredSpectrum& s, std::size_t n_grid,
                          GridLayout layout) {
  if (const auto* me = std::get_if<MeSpectrum>(&s.spectrum)) {
    return sample_me(*me, n_grid, layout);
  }
  return sample_mr(std::get<MrSpectrum>(s.spectrum), n_grid, layout);
}

AutocovSeq parse_moments_json(const json& j) {
  if (!j.is_object() || !j.contains("r")) {
    malformed("moments document must be an object with an \"r\" array");
  }
  auto r = parse_complex_array(j["r"]);
  if (r.empty()) malformed("moments document: \"r\" is empty");
  return AutocovSeq::from(std::move(r));
}

AutocovSeq parse_moments_csv(std::string_view text) {
  std::vector<cplx> r;
  for_each_line(text, [&](std::size_t line, std::string_view row) {
    const auto comma = row.find(',');
    if (comma == std::string_view::npos) {
      r.emplace_back(parse_number(row, line), 0.0);
    } else {
      const auto rest = row.substr(comma + 1);
      if (rest.find(',') != std::string_view::npos) {
        malformed("line " + std::to_string(line) + ": expected 're,im'");
      }
      r.emplace_back(parse_number(row.substr(0, comma), line),
                     parse_number(rest, line));
    }
  });
  if (r.empty()) malformed("moments file contains no values");
  return AutocovSeq::from(std::move(r));
}

std::vector<double> parse_series_csv(std::string_view text) {
  std::vector<double> out;
  for_each_line(text, [&](std::size_t line, std::string_view row) {
    out.push_back(parse_number(row, line));
  });
  return out;
}

}  // namespace fracpole::doc
