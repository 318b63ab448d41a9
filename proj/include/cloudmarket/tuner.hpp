#pragma once

#include <vector>

#include "cloudmarket/experiment.hpp"

namespace cloudmarket {

struct EmpiricalStats {
  double mean_welfare = 0.0;
  double mean_ratio = 0.0;  // only meaningful when the oracle ran
  bool ratio_available = false;
};

// Mean online welfare (and offline ratio when requested) of the pricing
// parameters over `trials` seeded instances of the scenario. The workload is
// fixed by the scenario; only the price schedule varies with `params`.
// Trials are independent and may run concurrently; the reduction order is
// fixed, so results do not depend on the execution mode.
EmpiricalStats empirical_ratio(const DeskScenario& scenario,
                               const PricingParams& params, int trials,
                               bool with_oracle = false,
                               ExecMode mode = ExecMode::Serial);

struct TuneSchedule {
  int iterations = 20;
  // Initial perturbation per parameter. The beta step spans half the box:
  // the price curve is beta-independent above 1, so small probes from a
  // large starting guess are ties and the search would never leave that
  // plateau.
  double step_beta = 5.0;
  double step_floor = 0.25;
  double step_ceil = 1.0;
  double decay = 0.7;  // multiplicative step decay per iteration, (0,1)
  int trials = 10;
};

struct TrajectoryPoint {
  int iteration = 0;
  PricingParams params;
  double objective = 0.0;
  double step_scale = 1.0;  // multiplier applied to the initial steps
};

struct TuneResult {
  PricingParams best;
  double best_objective = 0.0;
  std::vector<TrajectoryPoint> trajectory;
};

// Derivative-free compass search over (beta, p_floor, p_ceil), maximizing
// mean welfare. Probes +/- one step per parameter each iteration, keeps the
// best improving candidate, and decays the step whether or not a move was
// made. Box constraints: beta in (-0.9, 10], p_floor in (0, p_ceil].
TuneResult pattern_search(const DeskScenario& scenario,
                          const PricingParams& initial,
                          const TuneSchedule& schedule,
                          ExecMode mode = ExecMode::Serial);

}  // namespace cloudmarket
