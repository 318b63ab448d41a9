#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <stdexcept>
#include <string>

#include "CLI11.hpp"
#include "cloudmarket/commands.hpp"
#include "cloudmarket/oracle.hpp"

using namespace cloudmarket;

int main(int argc, char** argv) {
  CLI::App app{"Posted-price online cloud resource market simulator"};
  app.set_version_flag("--version",
                       std::string("cloudmarket ") + kVersionString);
  app.set_config("--config", "", "Config file with long-option keys; "
                                 "command-line flags take precedence");
  app.require_subcommand(1);

  ExperimentSpec spec;
  std::string out_path;

  app.add_option("--gamma", spec.gamma, "Valuation band width p_ceil/p_floor");
  auto* beta_opt =
      app.add_option("--beta", spec.beta, "Scarcity level (demand - supply)");
  app.add_option("--cost", spec.cost, "Operational cost per resource unit");
  app.add_option("--p-floor", spec.p_floor, "Lowest admitted unit valuation");
  app.add_option("--lambda", spec.lambda, "Deadline stretch factor");
  app.add_option("--horizon", spec.horizon, "Number of time slots");
  auto* res_opt = app.add_option("--resources", spec.resources,
                                 "Number of resource types");
  app.add_option("--users", spec.users, "User count for generated instances");
  app.add_option("--max-slots", spec.max_slot_count,
                 "Largest per-job slot count in generated instances");
  app.add_option("--relative-demand", spec.relative_demand,
                 "Expected total demand over total capacity");
  app.add_option("--arrival-rate", spec.arrival_rate,
                 "Mean arrivals per slot");
  app.add_option("--amplitude", spec.amplitude,
                 "Sinusoidal arrival-rate modulation depth, 0..1");
  app.add_option("--rate-period", spec.rate_period,
                 "Slots per arrival-rate modulation cycle");
  app.add_option("--mean-demand", spec.mean_demand,
                 "Mean per-resource demand fraction");
  app.add_option("--demand-stddev", spec.demand_stddev,
                 "Demand standard deviation");
  app.add_option("--mean-slots", spec.mean_slot_count,
                 "Mean per-job slot count (simulate)");
  app.add_option("--seed", spec.seed, "Root RNG seed");
  app.add_option("--granularity", spec.granularity,
                 "Demand grid size for exact solvers and adversaries");
  app.add_option("--rho", spec.rho, "Utilization to price (price)");
  app.add_option("--rho-star", spec.rho_star,
                 "Adversarial stop utilization (adversary)");
  app.add_option("--eta", spec.eta,
                 "Lowest per-resource utilization share (ratio bounds)");
  app.add_option("--epsilon", spec.epsilon,
                 "Value slack of the adversarial flood");
  app.add_option("--points", spec.points, "Grid size for curve output");
  app.add_option("--trials", spec.trials, "Seeded trials per cell");
  app.add_option("--iterations", spec.iterations, "Tuner iterations");
  app.add_option("--decay", spec.decay, "Tuner step decay per iteration");
  app.add_option("--axis", spec.axis,
                 "Sweep axis: demand|resources|slots|lambda|amplitude|beta|"
                 "gamma");
  app.add_option("--grid", spec.grid, "Explicit grid values")
      ->delimiter(',');
  app.add_option("--input", spec.input,
                 "Request file to replay instead of generating");
  app.add_flag("--bound", spec.bound,
               "Sweep: report the theoretical bound instead of oracle runs");
  app.add_flag("--timing", spec.timing,
               "Append runtime columns (output is no longer byte-stable)");
  app.add_flag("--parallel", spec.parallel,
               "Run independent trials across threads");
  app.add_option("--out", out_path, "Write CSV here instead of stdout");

  const std::map<std::string,
                 std::pair<const char*, int (*)(const ExperimentSpec&,
                                                std::ostream&)>>
      commands{
          {"price", {"Posted unit price and ratio constant at rho", cmd_price}},
          {"curve", {"Price and worst-case welfare curves over rho", cmd_curve}},
          {"simulate", {"Run the online engine over a workload", cmd_simulate}},
          {"oracle", {"Exact offline optimum for an instance", cmd_oracle}},
          {"ratio", {"Ratio constants and market-extension bounds", cmd_ratio}},
          {"sweep", {"Online/offline welfare across a parameter grid",
                     cmd_sweep}},
          {"tune", {"Pattern search over the pricing parameters", cmd_tune}},
          {"adversary", {"Worst-case instance: measured vs guaranteed ratio",
                         cmd_adversary}},
      };
  std::string chosen;
  for (const auto& [name, entry] : commands) {
    CLI::App* sub = app.add_subcommand(name, entry.first);
    sub->fallthrough();
    sub->callback([&chosen, name = name] { chosen = name; });
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }
  spec.beta_set = beta_opt->count() > 0;
  spec.resources_set = res_opt->count() > 0;

  try {
    std::ofstream file;
    std::ostream* os = &std::cout;
    if (!out_path.empty()) {
      file.open(out_path);
      if (!file) {
        std::cerr << "error: cannot open output file: " << out_path << "\n";
        return 2;
      }
      os = &file;
    }
    return commands.at(chosen).second(spec, *os);
  } catch (const OracleBudgetError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::domain_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
