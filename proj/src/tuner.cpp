#include "cloudmarket/tuner.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "cloudmarket/rng.hpp"

namespace cloudmarket {

EmpiricalStats empirical_ratio(const DeskScenario& scenario,
                               const PricingParams& params, int trials,
                               bool with_oracle, ExecMode mode) {
  if (trials < 1) throw std::invalid_argument("empirical_ratio: trials < 1");
  params.validate();
  RunConfig run_cfg = scenario.run_config();
  run_cfg.params = {params};
  OracleConfig oracle_cfg;
  oracle_cfg.num_resources = scenario.num_resources;
  oracle_cfg.horizon = scenario.horizon;
  oracle_cfg.lambda = scenario.lambda;
  if (with_oracle &&
      scenario.users > oracle_cfg.limits.max_users_multi_slot)
    throw OracleBudgetError(
        "empirical_ratio: scenario exceeds the oracle budget");

  std::vector<double> ol(trials, 0.0), opt(trials, 0.0);
  for_each_index(trials, mode, [&](int i) {
    std::vector<JobRequest> requests = gen_desk_instance(
        scenario, mix_seed(scenario.seed, static_cast<std::uint64_t>(i)));
    ol[i] = run_sequence(requests, run_cfg).welfare_online;
    if (with_oracle)
      opt[i] = optimal_multi_slot(requests, oracle_cfg).welfare_opt;
  });

  EmpiricalStats stats;
  double sum_ol = 0.0, sum_opt = 0.0;
  for (int i = 0; i < trials; ++i) {
    sum_ol += ol[i];
    sum_opt += opt[i];
  }
  stats.mean_welfare = sum_ol / trials;
  if (with_oracle) {
    stats.ratio_available = true;
    stats.mean_ratio =
        sum_ol > 0.0 ? sum_opt / sum_ol : (sum_opt > 0.0 ? HUGE_VAL : 1.0);
  }
  return stats;
}

namespace {

PricingParams project(PricingParams p) {
  p.beta = std::min(10.0, std::max(-0.9 + 1e-9, p.beta));
  p.p_ceil = std::max(p.p_ceil, 1e-9);
  p.p_floor = std::min(std::max(p.p_floor, 1e-9), p.p_ceil);
  p.gamma = p.p_ceil / p.p_floor;
  return p;
}

}  // namespace

TuneResult pattern_search(const DeskScenario& scenario,
                          const PricingParams& initial,
                          const TuneSchedule& schedule, ExecMode mode) {
  if (schedule.iterations < 1)
    throw std::invalid_argument("pattern_search: iterations must be >= 1");
  if (!(schedule.decay > 0.0 && schedule.decay < 1.0))
    throw std::invalid_argument("pattern_search: decay outside (0, 1)");

  auto objective = [&](const PricingParams& p) {
    return empirical_ratio(scenario, p, schedule.trials, false, mode).mean_welfare;
  };

  TuneResult result;
  result.best = project(initial);
  result.best_objective = objective(result.best);
  result.trajectory.push_back({0, result.best, result.best_objective, 1.0});

  double scale = 1.0;
  for (int it = 1; it <= schedule.iterations; ++it) {
    PricingParams incumbent = result.best;
    double incumbent_obj = result.best_objective;
    for (int param = 0; param < 3; ++param) {
      for (double dir : {+1.0, -1.0}) {
        PricingParams cand = result.best;
        switch (param) {
          case 0: cand.beta += dir * schedule.step_beta * scale; break;
          case 1: cand.p_floor += dir * schedule.step_floor * scale; break;
          default: cand.p_ceil += dir * schedule.step_ceil * scale; break;
        }
        cand = project(cand);
        double obj = objective(cand);
        if (obj > incumbent_obj) {
          incumbent = cand;
          incumbent_obj = obj;
        }
      }
    }
    result.best = incumbent;
    result.best_objective = incumbent_obj;
    scale *= schedule.decay;
    result.trajectory.push_back({it, result.best, result.best_objective, scale});
  }
  return result;
}

}  // namespace cloudmarket
