// fishgame: command-line front end for the two-player fishery game.
//
//   fishgame nash --config scenarios/reference.json --multistart 9
//   fishgame waste --config scenarios/reference.json --mode paper-rounded

#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"

#include "fishgame/commands.hpp"

namespace {

enum ExitCode { kOk = 0, kUsage = 1, kNumerical = 2 };

}  // namespace

int main(int argc, char** argv) {
  using namespace fishgame;

  CLI::App app{"Two-player fishery exploitation game with quadratic harvesting"};
  app.require_subcommand(1, 1);
  app.fallthrough();

  std::string config_path;
  std::string format;
  std::string out_path;
  int multistart = 1;
  std::string mode = "exact";
  std::optional<double> effort;
  double t_end = 40.0;
  double dt = 1e-3;
  int samples = 201;

  app.add_option("--config", config_path, "Scenario file (JSON)")->required();
  app.add_option("--format", format, "Output format")->check(CLI::IsMember({"csv", "json"}));
  app.add_option("--out", out_path, "Output path (default stdout)");
  app.add_option("--multistart", multistart, "Number of Nash start points")->check(CLI::PositiveNumber);
  app.add_option("--mode", mode, "Waste computation mode")->check(CLI::IsMember({"exact", "paper-rounded"}));
  app.add_option("--effort", effort, "Total effort (default: Nash total effort)");
  app.add_option("--t-end", t_end, "Simulation horizon");
  app.add_option("--dt", dt, "RK4 step size");
  app.add_option("--samples", samples, "Samples per curve");

  auto* simulate = app.add_subcommand("simulate", "Closed-form vs RK4 stock trajectory");
  auto* nash = app.add_subcommand("nash", "Nash equilibrium with multi-start diagnostics");
  auto* waste = app.add_subcommand("waste", "Effort wasted at the Nash equilibrium");
  auto* curves = app.add_subcommand("curves", "Growth/harvest and harvest-effort curve data");
  auto* sweep = app.add_subcommand("sweep", "Parameter sweep from the scenario's sweep section");
  auto* coop = app.add_subcommand("coop", "Cooperative optimum vs Nash totals");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kOk : kUsage;
  }

  try {
    const auto cfg = load_scenario(config_path);
    const auto fmt = format.empty() ? cfg.output.format : detail::parse_format(format);
    const auto dest = out_path.empty() ? cfg.output.path : out_path;
    if (effort && !(*effort >= 0.0)) throw DomainError("--effort must be >= 0");

    Report report;
    if (simulate->parsed()) {
      report = cmd_simulate(cfg, {effort, t_end, dt});
    } else if (nash->parsed()) {
      report = cmd_nash(cfg, multistart);
    } else if (waste->parsed()) {
      report = cmd_waste(cfg, mode == "exact" ? WasteMode::Exact : WasteMode::PaperRounded);
    } else if (curves->parsed()) {
      report = cmd_curves(cfg, {effort, samples});
    } else if (sweep->parsed()) {
      if (!cfg.sweep) throw ConfigError("scenario has no 'sweep' section");
      report = cmd_sweep(cfg, *cfg.sweep);
    } else if (coop->parsed()) {
      report = cmd_coop(cfg);
    }

    const auto text = render(report, fmt);
    if (dest.empty()) {
      std::cout << text;
    } else {
      std::ofstream out(dest, std::ios::binary);
      if (!out) throw ConfigError("cannot write '" + dest + "'");
      out << text;
    }
    return kOk;
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kUsage;
  } catch (const DomainError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const InfeasibleTarget& e) {
    std::cerr << "numerical failure: " << e.what() << '\n';
    return kNumerical;
  } catch (const ConvergenceFailure& e) {
    std::cerr << "numerical failure: " << e.what() << '\n';
    return kNumerical;
  } catch (const AllStartsFailed& e) {
    std::cerr << "numerical failure: " << e.what() << '\n';
    return kNumerical;
  }
}
