#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace cloudmarket {

// Everything the command line can configure, with the defaults the CLI
// advertises. Filled by flag parsing (or a config file) and handed to the
// command functions, which are pure except for the output stream.
struct ExperimentSpec {
  // market parameters
  double gamma = 10.0;
  double beta = 1.0;
  double cost = 0.0;
  double p_floor = 1.0;
  double lambda = 1.2;
  // workload dimensions
  int horizon = 16;
  int resources = 2;
  int users = 12;
  int max_slot_count = 3;
  double relative_demand = 1.5;
  double arrival_rate = 5.0;
  double amplitude = 0.0;
  double rate_period = 8.0;
  double mean_demand = 0.01;
  double demand_stddev = 0.005;
  double mean_slot_count = 1.0;
  std::uint64_t seed = 1;
  double granularity = 1e-3;
  // command-specific knobs
  double rho = 0.5;
  double rho_star = 0.7;
  double eta = 0.5;
  double epsilon = 1e-3;
  int points = 101;
  int trials = 50;
  int iterations = 20;
  double decay = 0.7;
  std::string axis = "demand";
  std::vector<double> grid;
  std::string input;  // request file; empty means generate
  bool bound = false;     // sweep: report the theoretical bound, no oracle
  bool timing = false;    // emit runtime columns (breaks byte-reproducibility)
  bool parallel = false;  // run independent trials under OpenMP
  bool beta_set = false;  // --beta given explicitly (overrides derived values)
  // --resources given explicitly; the adversary command is single-resource
  // unless asked otherwise (its multi-resource instances need a coarse
  // granularity to stay within the oracle budget).
  bool resources_set = false;
};

inline constexpr char kVersionString[] = "0.1.0";

int cmd_price(const ExperimentSpec& spec, std::ostream& out);
int cmd_curve(const ExperimentSpec& spec, std::ostream& out);
int cmd_simulate(const ExperimentSpec& spec, std::ostream& out);
int cmd_oracle(const ExperimentSpec& spec, std::ostream& out);
int cmd_ratio(const ExperimentSpec& spec, std::ostream& out);
int cmd_sweep(const ExperimentSpec& spec, std::ostream& out);
int cmd_tune(const ExperimentSpec& spec, std::ostream& out);
int cmd_adversary(const ExperimentSpec& spec, std::ostream& out);

}  // namespace cloudmarket
