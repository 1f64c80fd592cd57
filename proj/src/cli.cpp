#include "fracpole/cli.hpp"

#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include "fracpole/benchmark.hpp"
#include "fracpole/document.hpp"
#include "fracpole/filters.hpp"
#include "fracpole/me.hpp"
#include "fracpole/mr.hpp"
#include "fracpole/simulate.hpp"

namespace fracpole::cli {

namespace {

using doc::json;

[[noreturn]] void bad(const std::string& what) {
  throw Error(ErrorCode::invalid_argument, what);
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::io, "cannot open '" + path + "' for reading");
  std::ostringstream buf;
  buf << in.rdbuf();
  if (in.bad()) throw Error(ErrorCode::io, "error while reading '" + path + "'");
  return buf.str();
}

json parse_json(const std::string& text, const std::string& what) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    bad(what + ": " + e.what());
  }
}

bool looks_like_json(const std::string& path, const std::string& text) {
  if (path.size() >= 5 && path.compare(path.size() - 5, 5, ".json") == 0) return true;
  const auto first = text.find_first_not_of(" \t\r\n");
  return first != std::string::npos && text[first] == '{';
}

std::size_t grid_of(const JobConfig& c) { return c.n_grid.value_or(default_grid); }

AutocovSeq load_moments(const JobConfig& c) {
  AutocovSeq a = [&] {
    if (!c.moments.empty()) return AutocovSeq::from_real(c.moments);
    if (!c.input) bad("no input: give --input FILE or --moments R0,R1,...");
    const std::string text = read_file(*c.input);
    if (c.estimate_lags) {
      const auto series = doc::parse_series_csv(text);
      return sample_autocov(series, *c.estimate_lags);
    }
    if (looks_like_json(*c.input, text)) {
      return doc::parse_moments_json(parse_json(text, *c.input));
    }
    return doc::parse_moments_csv(text);
  }();
  if (a.n() > max_order) {
    bad("order " + std::to_string(a.n()) + " exceeds the supported maximum " +
        std::to_string(max_order));
  }
  return a;
}

double max_abs_diff(const MomentVector& m, const AutocovSeq& a) {
  double worst = 0.0;
  for (int k = -a.n(); k <= a.n(); ++k) worst = std::max(worst, std::abs(m.at(k) - a.at(k)));
  return worst;
}

double me_residual(const MeSpectrum& s, const AutocovSeq& a, std::size_t n_grid) {
  return max_abs_diff(moments_of_density(sample_me(s, n_grid), a.n()), a);
}

MrSolution solve(const JobConfig& c, const AutocovSeq& a) {
  MrOptions opts;
  opts.tol = c.tol;
  opts.n_grid = grid_of(c);
  return solve_mr(a, opts);
}

json filter_json(const FilterCoeffs& f) {
  json coeffs = json::array();
  for (const auto& [lag, v] : f.coeffs) {
    coeffs.push_back({{"lag", lag}, {"value", json::array({v.real(), v.imag()})}});
  }
  return {{"kind", f.kind == FilterKind::predictor ? "predictor" : "smoother"},
          {"coeffs", std::move(coeffs)},
          {"variance", f.variance}};
}

std::string model_name(Model m) {
  switch (m) {
    case Model::me: return "me";
    case Model::mr: return "mr";
    case Model::truth: return "truth";
  }
  return "?";
}

struct Output {
  std::string text;
};

Output as_json(const json& j) { return {j.dump(2) + "\n"}; }

Output cmd_check(const JobConfig& c, int& status, std::ostream& err) {
  const auto a = load_moments(c);
  const auto rep = is_posdef(a);
  json j;
  j["n"] = a.n();
  j["posdef"] = rep.posdef;
  j["reflection"] = doc::complex_array(rep.reflection);
  j["variances"] = rep.variances;
  if (!rep.posdef) {
    status = exit_code(ErrorCode::not_posdef);
    json e;
    e["error"] = {{"code", status},
                  {"kind", to_string(ErrorCode::not_posdef)},
                  {"message", "Toeplitz matrix is not positive definite (order " +
                                  std::to_string(rep.reflection.size()) + " reached)"}};
    err << e.dump() << '\n';
  }
  return as_json(j);
}

Output cmd_me(const JobConfig& c) {
  const auto a = load_moments(c);
  const auto s = fit_me(a);
  const auto n_grid = grid_of(c);
  if (c.format == OutputFormat::csv) return {doc::grid_csv(sample_me(s, n_grid))};
  return as_json(doc::spectrum_document(s, a, n_grid, me_residual(s, a, n_grid)));
}

Output cmd_mr(const JobConfig& c) {
  const auto a = load_moments(c);
  const auto sol = solve(c, a);
  if (c.format == OutputFormat::csv) {
    return {doc::grid_csv(sample_mr(sol.spectrum, grid_of(c)))};
  }
  return as_json(doc::spectrum_document(sol, a, grid_of(c)));
}

Output cmd_eval(const JobConfig& c) {
  if (!c.input) bad("eval needs --input with a spectrum document");
  const auto stored = doc::load_spectrum(parse_json(read_file(*c.input), *c.input));
  const auto g = doc::sample_stored(stored, c.n_grid.value_or(stored.n_grid), stored.layout);
  if (c.format == OutputFormat::csv) return {doc::grid_csv(g)};
  json j;
  j["kind"] = std::holds_alternative<MeSpectrum>(stored.spectrum) ? "me" : "mr";
  j["grid"] = doc::grid_json(g);
  j["spec_revision"] = doc::spectrum_revision;
  return as_json(j);
}

GridDensity model_density(const JobConfig& c, const AutocovSeq& a) {
  if (c.model == Model::me) return sample_me(fit_me(a), grid_of(c));
  if (c.model == Model::mr) return sample_mr(solve(c, a).spectrum, grid_of(c));
  bad("the truth model is only available for simulate");
}

Output cmd_filters(const JobConfig& c) {
  const auto a = load_moments(c);
  const auto me = fit_me(a);
  const auto g = model_density(c, a);
  json j;
  j["model"] = model_name(c.model);
  j["n"] = a.n();
  j["n_grid"] = g.n_grid();
  j["predictor"] = filter_json(predictor(me));
  j["prediction_variance"] = prediction_variance(a);
  j["smoother"] = filter_json(optimal_smoother(g, c.max_lag));
  auto fw = filter_json(finite_window_smoother(g, c.window));
  fw["window"] = c.window;
  j["finite_window_smoother"] = std::move(fw);
  j["harmonic_mean"] = harmonic_mean(g);
  j["geometric_mean"] = geometric_mean(g);
  return as_json(j);
}

Output cmd_simulate(const JobConfig& c) {
  Realization r;
  switch (c.model) {
    case Model::truth:
      r = simulate_true_example(c.length, c.seed);
      break;
    case Model::me:
      r = simulate_ar(fit_me(load_moments(c)), c.length, c.seed);
      break;
    case Model::mr: {
      const auto a = load_moments(c);
      r = simulate_spectral(sample_mr(solve(c, a).spectrum, grid_of(c)), c.length, c.seed);
      break;
    }
  }
  if (c.format == OutputFormat::csv) {
    std::string text;
    for (double v : r.samples) text += doc::format_double(v) + '\n';
    return {text};
  }
  json j;
  j["source"] = r.source;
  j["seed"] = r.seed;
  j["length"] = r.samples.size();
  j["samples"] = r.samples;
  return as_json(j);
}

Output cmd_compare(const JobConfig& c) {
  const auto a = load_moments(c);
  const auto n_grid = grid_of(c);
  const auto me = fit_me(a);
  const auto sol = solve(c, a);
  const auto g_me = sample_me(me, n_grid);
  const auto g_mr = sample_mr(sol.spectrum, n_grid);
  const double hm_me = harmonic_mean(g_me), hm_mr = harmonic_mean(g_mr);
  const double gm_me = geometric_mean(g_me), gm_mr = geometric_mean(g_mr);
  // Equality holds for white noise; allow for rounding there.
  const double slack = 1e-10 * std::max(1.0, a.at(0).real());
  json j;
  j["n"] = a.n();
  j["n_grid"] = n_grid;
  j["moments_in"] = doc::complex_array(a.values());
  j["prediction_variance"] = prediction_variance(a);
  j["me"] = {{"k2", me.k2},
             {"a", doc::complex_array(me.a)},
             {"harmonic_mean", hm_me},
             {"geometric_mean", gm_me},
             {"residual_inf", me_residual(me, a, n_grid)}};
  const auto& s = sol.spectrum;
  j["mr"] = {{"lambda", doc::complex_array(s.lambda.values())},
             {"k2", s.k2},
             {"factor", doc::complex_array(s.factor)},
             {"kappa", s.kappa()},
             {"harmonic_mean", hm_mr},
             {"geometric_mean", gm_mr},
             {"residual_inf", sol.diagnostics.residual_inf}};
  j["ordering"] = {{"harmonic_mr_ge_me", hm_mr >= hm_me - slack},
                   {"geometric_me_ge_mr", gm_me >= gm_mr - slack},
                   {"harmonic_margin", hm_mr - hm_me},
                   {"geometric_margin", gm_me - gm_mr}};
  return as_json(j);
}

struct Row {
  std::string name;
  double published;
  double computed;
};

Output cmd_demo(const JobConfig& c) {
  const auto a = benchmark::moments();
  const benchmark::Reference ref;
  const auto me = fit_me(a);
  MrOptions opts;
  opts.tol = c.tol;
  opts.n_grid = grid_of(c);
  const auto sol = solve_mr(a, opts);
  const auto& s = sol.spectrum;

  std::vector<Row> rows;
  for (int k = 0; k < 3; ++k) {
    rows.push_back({"a" + std::to_string(k + 1), ref.me_a[k], me.a[k].real()});
  }
  rows.push_back({"k_me", ref.me_k, me.gain()});
  rows.push_back({"k2_me", ref.me_k, me.k2});
  for (int k = 0; k < 4; ++k) {
    rows.push_back({"lambda" + std::to_string(k), ref.mr_lambda[k],
                    s.lambda.values()[k].real()});
  }
  for (int k = 0; k < 3; ++k) {
    rows.push_back({"ahat" + std::to_string(k + 1), ref.mr_ahat[k], s.factor[k].real()});
  }
  rows.push_back({"kappa", ref.mr_kappa, s.kappa()});

  // How well the published multipliers reproduce the input moments.
  std::vector<cplx> published(ref.mr_lambda.begin(), ref.mr_lambda.end());
  const double published_residual =
      residual(LagrangeVector(published), MomentVector(a), opts.n_grid).inf_norm();

  if (c.format == OutputFormat::csv) {
    std::string text = "quantity,published,computed,abs_deviation,within_tolerance\n";
    for (const auto& r : rows) {
      const double dev = std::abs(r.computed - r.published);
      text += r.name + ',' + doc::format_double(r.published) + ',' +
              doc::format_double(r.computed) + ',' + doc::format_double(dev) + ',' +
              (dev <= benchmark::reference_tolerance ? "true" : "false") + '\n';
    }
    return {text};
  }
  json table = json::array();
  for (const auto& r : rows) {
    const double dev = std::abs(r.computed - r.published);
    table.push_back({{"quantity", r.name},
                     {"published", r.published},
                     {"computed", r.computed},
                     {"abs_deviation", dev},
                     {"within_tolerance", dev <= benchmark::reference_tolerance}});
  }
  json j;
  j["moments"] = doc::complex_array(a.values());
  j["tolerance"] = benchmark::reference_tolerance;
  j["comparison"] = std::move(table);
  j["mr_residual_inf"] = sol.diagnostics.residual_inf;
  j["published_lambda_residual_inf"] = published_residual;
  j["harmonic_mean"] = {{"me", harmonic_mean(sample_me(me, opts.n_grid))},
                        {"mr", harmonic_mean(sample_mr(s, opts.n_grid))}};
  j["geometric_mean"] = {{"me", geometric_mean(sample_me(me, opts.n_grid))},
                         {"mr", geometric_mean(sample_mr(s, opts.n_grid))}};
  return as_json(j);
}

void write_output(const JobConfig& c, const std::string& text, std::ostream& out) {
  if (!c.output) {
    out << text;
    return;
  }
  std::ofstream f(*c.output, std::ios::binary | std::ios::trunc);
  if (!f) throw Error(ErrorCode::io, "cannot open '" + *c.output + "' for writing");
  f << text;
  f.flush();
  if (!f) throw Error(ErrorCode::io, "error while writing '" + *c.output + "'");
}

void report(std::ostream& err, int status, std::string_view kind,
            const std::string& message, const json* extra = nullptr) {
  json e;
  e["error"] = {{"code", status}, {"kind", kind}, {"message", message}};
  if (extra) e["error"]["diagnostics"] = *extra;
  err << e.dump() << '\n';
}

}  // namespace

void validate(const JobConfig& c) {
  if (c.n_grid) {
    const auto n = *c.n_grid;
    if (!is_power_of_two(n) || n < min_grid || n > max_grid) {
      bad("grid size must be a power of two in [256, 1048576], got " + std::to_string(n));
    }
  }
  const std::size_t n_grid = grid_of(c);
  if (!(c.tol > 0.0 && c.tol <= 1e-2)) bad("tol must lie in (0, 1e-2]");
  if (c.max_lag < 0 || static_cast<std::size_t>(c.max_lag) >= n_grid / 2) {
    bad("max-lag must lie in [0, n_grid / 2)");
  }
  if (c.window < 1 || static_cast<std::size_t>(2 * c.window) >= n_grid / 2) {
    bad("window must be at least 1 and below n_grid / 4");
  }
  if (c.length < 1) bad("length must be at least 1");
  if (c.estimate_lags && (*c.estimate_lags < 0 || *c.estimate_lags > max_order)) {
    bad("estimate-lags must lie in [0, 32]");
  }
  if (c.format == OutputFormat::csv &&
      !(c.command == Command::me || c.command == Command::mr ||
        c.command == Command::eval || c.command == Command::simulate ||
        c.command == Command::demo)) {
    bad("csv output is available for me, mr, eval, simulate and demo");
  }
  if (c.model == Model::truth && c.command == Command::filters) {
    bad("the truth model is only available for simulate");
  }
}

int exit_code(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::not_posdef:
      return 2;
    case ErrorCode::no_convergence:
    case ErrorCode::not_in_cone:
    case ErrorCode::root_near_circle:
    case ErrorCode::singular_system:
      return 3;
    case ErrorCode::io:
      return 4;
    default:
      return 1;
  }
}

std::size_t grid_from_environment(std::size_t fallback) {
  const char* v = std::getenv("FRACPOLE_GRID");
  if (v == nullptr || *v == '\0') return fallback;
  char* end = nullptr;
  const unsigned long long n = std::strtoull(v, &end, 10);
  if (*end != '\0') bad(std::string("FRACPOLE_GRID is not an integer: '") + v + "'");
  return static_cast<std::size_t>(n);
}

int run(const JobConfig& config, std::ostream& out, std::ostream& err) {
  try {
    validate(config);
    int status = 0;
    Output result;
    switch (config.command) {
      case Command::check: result = cmd_check(config, status, err); break;
      case Command::me: result = cmd_me(config); break;
      case Command::mr: result = cmd_mr(config); break;
      case Command::filters: result = cmd_filters(config); break;
      case Command::simulate: result = cmd_simulate(config); break;
      case Command::eval: result = cmd_eval(config); break;
      case Command::compare: result = cmd_compare(config); break;
      case Command::demo: result = cmd_demo(config); break;
    }
    write_output(config, result.text, out);
    return status;
  } catch (const NoConvergence& e) {
    const auto& d = e.diagnostics();
    const json diag = {{"iterations", d.iterations},
                       {"residual_inf", d.residual_inf},
                       {"relative_residual", d.relative_residual},
                       {"min_lambda_g", d.min_lambda_g},
                       {"n_grid", d.n_grid}};
    const int status = exit_code(e.code());
    report(err, status, to_string(e.code()), e.what(), &diag);
    return status;
  } catch (const Error& e) {
    const int status = exit_code(e.code());
    report(err, status, to_string(e.code()), e.what());
    return status;
  } catch (const json::exception& e) {
    report(err, 1, to_string(ErrorCode::invalid_argument), e.what());
    return 1;
  }
}

}  // namespace fracpole::cli
