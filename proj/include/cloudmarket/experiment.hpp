#pragma once

#include <cstdint>
#include <vector>

#include "cloudmarket/batch.hpp"
#include "cloudmarket/market.hpp"
#include "cloudmarket/oracle.hpp"

namespace cloudmarket {

// Desk-scale scenario: small enough for the exact multi-slot oracle while
// keeping the shape of the large-scale setup (modulated arrivals, truncated
// normal demands, uniform unit values, stretched deadlines).
struct DeskScenario {
  int users = 12;
  int horizon = 16;
  int num_resources = 2;
  int max_slot_count = 3;        // slot counts drawn uniformly from [1, max]
  double relative_demand = 1.5;  // total demand over total capacity
  double amplitude = 0.0;        // arrival-rate modulation depth, [0, 1]
  double rate_period = 8.0;      // slots per modulation cycle
  double lambda = 1.2;
  double gamma = 10.0;
  double p_floor = 1.0;
  double op_cost = 0.0;
  // When NaN, beta is derived from the demand level: relative_demand - 1.
  double beta_override = __builtin_nan("");
  std::uint64_t seed = 1;

  double effective_beta() const;
  PricingParams pricing() const;
  RunConfig run_config() const;
};

// One seeded instance of the scenario, sorted by arrival slot.
std::vector<JobRequest> gen_desk_instance(const DeskScenario& sc,
                                          std::uint64_t trial_seed);

struct CellStats {
  double v_ol = 0.0;       // summed online welfare across trials
  double v_opt = 0.0;      // summed offline optimum (when solved)
  double ratio = 1.0;      // v_opt / v_ol
  double runtime_ms = 0.0;
  bool solved = false;     // oracle ran
};

// Evaluates `trials` seeded instances of the scenario. Trials are
// independent; Parallel mode distributes them across threads and produces
// the same sums as Serial (per-trial results land in slots, reduction is
// sequential).
CellStats eval_cell(const DeskScenario& sc, int trials, ExecMode mode,
                    bool with_oracle);

enum class SweepAxis { Demand, Resources, Slots, Lambda, Amplitude, Beta, Gamma };

const char* axis_name(SweepAxis axis);
bool parse_axis(const char* name, SweepAxis& out);

struct SweepSpec {
  SweepAxis axis = SweepAxis::Demand;
  std::vector<double> grid;
  DeskScenario base;
  int trials = 50;
  bool with_oracle = true;  // otherwise report the theoretical bound
  ExecMode mode = ExecMode::Serial;
};

struct SweepRow {
  double axis_value = 0.0;
  double v_ol = 0.0;
  double v_opt_or_bound = 0.0;
  double ratio = 0.0;
  double runtime_ms = 0.0;
  // False when the exact oracle refused the cell (budget exceeded); v_ol is
  // still reported, v_opt_or_bound and ratio are not meaningful.
  bool solved = true;
};

DeskScenario apply_axis(const DeskScenario& base, SweepAxis axis, double value);
std::vector<SweepRow> run_sweep(const SweepSpec& spec);

}  // namespace cloudmarket
