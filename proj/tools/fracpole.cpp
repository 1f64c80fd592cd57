// fracpole: maximum-entropy and most-random spectra from autocorrelations.
#include <CLI11.hpp>

#include <iostream>
#include <map>

#include "fracpole/cli.hpp"

using fracpole::cli::Command;
using fracpole::cli::JobConfig;
using fracpole::cli::Model;
using fracpole::cli::OutputFormat;

namespace {

struct Spec {
  const char* name;
  Command command;
  const char* help;
};

constexpr Spec commands[] = {
    {"check", Command::check, "positive-definiteness test with reflection coefficients"},
    {"me", Command::me, "maximum-entropy spectrum document"},
    {"mr", Command::mr, "most-random spectrum document"},
    {"filters", Command::filters, "predictor, smoothers and their error variances"},
    {"simulate", Command::simulate, "sample path from a spectrum"},
    {"eval", Command::eval, "evaluate a stored spectrum document on a grid"},
    {"compare", Command::compare, "me, mr and filters side by side"},
    {"demo", Command::demo, "worked example against tabulated reference values"},
};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Maximum-entropy and most-random power spectra"};
  app.require_subcommand(1);

  JobConfig cfg;
  std::size_t grid = 0;
  int estimate_lags = -1;
  std::string input, output;
  const std::map<std::string, OutputFormat> formats{{"json", OutputFormat::json},
                                                    {"csv", OutputFormat::csv}};
  const std::map<std::string, Model> models{
      {"me", Model::me}, {"mr", Model::mr}, {"truth", Model::truth}};

  for (const auto& spec : commands) {
    auto* sub = app.add_subcommand(spec.name, spec.help);
    sub->callback([&cfg, c = spec.command] { cfg.command = c; });
    if (spec.command != Command::demo) {
      sub->add_option("-i,--input", input, "input file (moments, series or spectrum)");
    }
    if (spec.command != Command::demo && spec.command != Command::eval) {
      sub->add_option("-m,--moments", cfg.moments, "inline real moments R0,R1,...")
          ->delimiter(',');
      sub->add_option("--estimate-lags", estimate_lags,
                      "treat the input as a raw series and estimate this many lags");
    }
    sub->add_option("-g,--grid", grid, "grid size, a power of two in [2^8, 2^20]");
    sub->add_option("--tol", cfg.tol, "relative residual tolerance of the MR solve");
    sub->add_option("-o,--output", output, "write the result here instead of stdout");
    sub->add_option("-f,--format", cfg.format, "json or csv")
        ->transform(CLI::CheckedTransformer(formats, CLI::ignore_case));
    if (spec.command == Command::filters) {
      sub->add_option("--max-lag", cfg.max_lag, "lags kept in the optimal smoother");
      sub->add_option("--window", cfg.window, "half-width of the finite-window smoother");
    }
    if (spec.command == Command::filters || spec.command == Command::simulate) {
      sub->add_option("--model", cfg.model, "me, mr (default) or truth (simulate only)")
          ->transform(CLI::CheckedTransformer(models, CLI::ignore_case));
    }
    if (spec.command == Command::simulate) {
      sub->add_option("-T,--length", cfg.length, "number of samples");
      sub->add_option("--seed", cfg.seed, "64-bit generator seed");
    }
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 1;
  }

  if (!input.empty()) cfg.input = input;
  if (!output.empty()) cfg.output = output;
  if (estimate_lags >= 0) cfg.estimate_lags = estimate_lags;
  try {
    if (grid != 0) {
      cfg.n_grid = grid;
    } else if (const auto env = fracpole::cli::grid_from_environment(0); env != 0) {
      cfg.n_grid = env;
    }
  } catch (const fracpole::Error& e) {
    std::cerr << R"({"error":{"code":1,"kind":"invalid-argument","message":")"
              << e.what() << "\"}}\n";
    return 1;
  }
  return fracpole::cli::run(cfg, std::cout, std::cerr);
}
