#include "cloudmarket/commands.hpp"

#include <algorithm>
#include <fstream>
#include <optional>
#include <ostream>
#include <stdexcept>
#include <string>
#include <vector>

#include "cloudmarket/csv.hpp"
#include "cloudmarket/experiment.hpp"
#include "cloudmarket/market.hpp"
#include "cloudmarket/oracle.hpp"
#include "cloudmarket/pricing.hpp"
#include "cloudmarket/tuner.hpp"
#include "cloudmarket/workload.hpp"

namespace cloudmarket {

namespace {

PricingParams spec_params(const ExperimentSpec& spec) {
  return PricingParams::from_gamma(spec.gamma, spec.beta, spec.p_floor,
                                   spec.cost);
}

ExecMode spec_mode(const ExperimentSpec& spec) {
  return spec.parallel ? ExecMode::Parallel : ExecMode::Serial;
}

DeskScenario desk_scenario(const ExperimentSpec& spec) {
  DeskScenario sc;
  sc.users = spec.users;
  sc.horizon = spec.horizon;
  sc.num_resources = spec.resources;
  sc.max_slot_count = spec.max_slot_count;
  sc.relative_demand = spec.relative_demand;
  sc.amplitude = spec.amplitude;
  sc.rate_period = spec.rate_period;
  sc.lambda = spec.lambda;
  sc.gamma = spec.gamma;
  sc.p_floor = spec.p_floor;
  sc.op_cost = spec.cost;
  if (spec.beta_set) sc.beta_override = spec.beta;
  sc.seed = spec.seed;
  return sc;
}

std::vector<JobRequest> load_requests(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open request file: " + path);
  return read_requests(in);
}

void echo_scenario(const ExperimentSpec& spec, std::ostream& out) {
  out << "# version=" << kVersionString << "\n"
      << "# seed=" << spec.seed << "\n"
      << "# gamma=" << fmt9(spec.gamma) << " beta=" << fmt9(spec.beta)
      << " cost=" << fmt9(spec.cost) << " p_floor=" << fmt9(spec.p_floor)
      << " lambda=" << fmt9(spec.lambda) << "\n"
      << "# horizon=" << spec.horizon << " resources=" << spec.resources
      << "\n";
}

std::vector<double> default_grid(SweepAxis axis) {
  switch (axis) {
    case SweepAxis::Demand: return {0.6, 0.8, 1.0, 1.2, 1.5, 2.0};
    case SweepAxis::Resources: return {1, 2, 3, 4};
    case SweepAxis::Slots: return {1, 2, 3, 4};
    case SweepAxis::Lambda: return {1.0, 1.1, 1.2, 1.4, 1.6, 2.0};
    case SweepAxis::Amplitude: return {0.0, 0.25, 0.5, 0.75, 1.0};
    case SweepAxis::Beta: return {-0.5, 0.0, 0.2, 0.5, 1.0, 2.0, 5.0};
    case SweepAxis::Gamma: return {1.0, 2.0, 5.0, 10.0, 20.0, 50.0};
  }
  return {};
}

}  // namespace

int cmd_price(const ExperimentSpec& spec, std::ostream& out) {
  PricingParams p = spec_params(spec);
  RatioConstants rc = competitive_alpha(spec.gamma, spec.beta);
  out << "rho,unit_price,alpha,beta_zero,regime\n";
  std::optional<double> price = unit_price(spec.rho, p);
  out << fmt9(spec.rho) << ','
      << (price ? fmt9(*price) : std::string("EXHAUSTED")) << ','
      << fmt9(rc.alpha) << ',' << fmt9(rc.beta_zero) << ','
      << regime_name(rc.regime) << '\n';
  return 0;
}

int cmd_curve(const ExperimentSpec& spec, std::ostream& out) {
  PricingParams p = spec_params(spec);
  std::vector<double> grid = spec.grid;
  if (grid.empty()) {
    if (spec.points < 2)
      throw std::invalid_argument("curve: need at least 2 grid points");
    grid.reserve(spec.points);
    for (int i = 0; i < spec.points; ++i)
      grid.push_back(static_cast<double>(i) / (spec.points - 1));
  }
  out << "rho,price,v_ol,v_opt_sup,ratio\n";
  for (double rho : grid) {
    RatioCurvePoint pt = ratio_curve(rho, p);
    std::optional<double> price = unit_price(rho, p);
    out << fmt9(rho) << ','
        << (price ? fmt9(*price) : std::string("EXHAUSTED")) << ','
        << fmt9(pt.v_ol) << ',' << fmt9(pt.v_opt_sup) << ',' << fmt9(pt.ratio)
        << '\n';
  }
  return 0;
}

int cmd_simulate(const ExperimentSpec& spec, std::ostream& out) {
  std::vector<JobRequest> requests;
  if (!spec.input.empty()) {
    requests = load_requests(spec.input);
  } else {
    StochasticConfig cfg;
    cfg.horizon = spec.horizon;
    cfg.num_resources = spec.resources;
    cfg.arrival_rate = spec.arrival_rate;
    cfg.rate_amplitude = spec.amplitude;
    cfg.rate_period = spec.rate_period;
    cfg.mean_demand = spec.mean_demand;
    cfg.demand_stddev = spec.demand_stddev;
    cfg.mean_slot_count = spec.mean_slot_count;
    cfg.p_floor = spec.p_floor;
    cfg.p_ceil = spec.p_floor * spec.gamma;
    cfg.seed = spec.seed;
    requests = gen_stochastic(cfg);
  }

  RunConfig cfg;
  cfg.num_resources = spec.resources;
  cfg.horizon = spec.horizon;
  cfg.lambda = spec.lambda;
  cfg.params = {spec_params(spec)};
  Trace trace = run_sequence(requests, cfg);

  out << "# command=simulate\n";
  echo_scenario(spec, out);
  out << "# users=" << requests.size() << "\n";
  out << "id,start_slot,slot_count,outcome,price_paid,utility\n";
  int accepted = 0;
  for (std::size_t i = 0; i < requests.size(); ++i) {
    const JobRequest& req = requests[i];
    const Decision& d = trace.decisions[i];
    if (d.accepted) ++accepted;
    out << req.id << ',' << req.start_slot << ',' << req.slot_count << ','
        << outcome_name(d.outcome) << ',' << fmt9(d.price_paid) << ','
        << fmt9(d.utility) << '\n';
  }
  out << "# accepted=" << accepted << "\n"
      << "# welfare_online=" << fmt9(trace.welfare_online) << "\n"
      << "# revenue=" << fmt9(trace.revenue) << "\n";
  return 0;
}

int cmd_oracle(const ExperimentSpec& spec, std::ostream& out) {
  std::vector<JobRequest> requests;
  if (!spec.input.empty()) {
    requests = load_requests(spec.input);
  } else {
    SmallRandomConfig cfg;
    cfg.num_users = spec.users;
    cfg.num_resources = spec.resources;
    cfg.horizon = spec.horizon;
    cfg.lambda = spec.lambda;
    cfg.max_slot_count = std::min(spec.max_slot_count, spec.horizon);
    cfg.granularity = spec.granularity;
    cfg.p_floor = spec.p_floor;
    cfg.p_ceil = spec.p_floor * spec.gamma;
    cfg.seed = spec.seed;
    requests = gen_small_random(cfg);
  }

  OracleConfig cfg;
  cfg.num_resources = spec.resources;
  cfg.horizon = spec.horizon;
  cfg.lambda = spec.lambda;
  OracleSolution sol;
  if (spec.horizon > 1)
    sol = optimal_multi_slot(requests, cfg);
  else if (spec.resources > 1)
    sol = optimal_multi_resource(requests, spec.resources);
  else
    sol = optimal_basic(requests, spec.granularity);

  bool ok = verify_solution(requests, sol, cfg);
  out << "# command=oracle\n";
  echo_scenario(spec, out);
  out << "# users=" << requests.size() << "\n"
      << "# chosen=" << sol.chosen.size() << "\n"
      << "# welfare_opt=" << fmt9(sol.welfare_opt) << "\n"
      << "# verified=" << (ok ? 1 : 0) << "\n";
  out << "id,slots,valuation\n";
  for (std::size_t c = 0; c < sol.chosen.size(); ++c) {
    const JobRequest& req = requests[sol.chosen[c]];
    out << req.id << ',';
    for (std::size_t s = 0; s < sol.schedules[c].size(); ++s) {
      if (s) out << ';';
      out << sol.schedules[c][s];
    }
    out << ',' << fmt9(req.valuation) << '\n';
  }
  return ok ? 0 : 1;
}

int cmd_ratio(const ExperimentSpec& spec, std::ostream& out) {
  PricingParams p = spec_params(spec);
  RatioConstants rc = competitive_alpha(spec.gamma, spec.beta);
  out << "gamma,beta,alpha,beta_zero,regime,bound_multi_resource,bound_multi_"
         "slot\n";
  out << fmt9(spec.gamma) << ',' << fmt9(spec.beta) << ',' << fmt9(rc.alpha)
      << ',' << fmt9(rc.beta_zero) << ',' << regime_name(rc.regime) << ',';
  if (spec.beta > 0.0)  // the extension bounds presume scarcity
    out << fmt9(multi_resource_bound(spec.gamma, spec.beta, spec.eta));
  out << ',';
  if (spec.beta > 0.0 && spec.lambda > 1.0 && spec.cost == 0.0)
    out << fmt9(multi_slot_bound(spec.lambda, spec.eta, p));
  out << '\n';
  return 0;
}

int cmd_sweep(const ExperimentSpec& spec, std::ostream& out) {
  SweepSpec sweep;
  if (!parse_axis(spec.axis.c_str(), sweep.axis))
    throw std::invalid_argument("sweep: unknown axis: " + spec.axis);
  sweep.grid = spec.grid.empty() ? default_grid(sweep.axis) : spec.grid;
  sweep.base = desk_scenario(spec);
  sweep.trials = spec.trials;
  sweep.with_oracle = !spec.bound;
  sweep.mode = spec_mode(spec);
  std::vector<SweepRow> rows = run_sweep(sweep);

  out << "# command=sweep\n";
  echo_scenario(spec, out);
  out << "# axis=" << axis_name(sweep.axis) << "\n"
      << "# trials=" << sweep.trials << "\n"
      << "# mode=" << (sweep.with_oracle ? "oracle" : "bound") << "\n";
  out << "axis_value,v_ol,v_opt_or_bound,ratio";
  if (spec.timing) out << ",runtime_ms";
  out << '\n';
  for (const SweepRow& row : rows) {
    out << fmt9(row.axis_value) << ',' << fmt9(row.v_ol) << ',';
    if (row.solved)
      out << fmt9(row.v_opt_or_bound) << ',' << fmt9(row.ratio);
    else
      out << ',';  // budget exceeded: both cells stay empty
    if (spec.timing) out << ',' << fmt9(row.runtime_ms);
    out << '\n';
  }
  return 0;
}

int cmd_tune(const ExperimentSpec& spec, std::ostream& out) {
  DeskScenario sc = desk_scenario(spec);
  PricingParams initial = spec_params(spec);
  TuneSchedule schedule;
  schedule.iterations = spec.iterations;
  schedule.decay = spec.decay;
  schedule.trials = spec.trials;
  TuneResult result = pattern_search(sc, initial, schedule, spec_mode(spec));

  out << "# command=tune\n";
  echo_scenario(spec, out);
  out << "iteration,beta,p_floor,p_ceil,objective,step_scale\n";
  for (const TrajectoryPoint& pt : result.trajectory) {
    out << pt.iteration << ',' << fmt9(pt.params.beta) << ','
        << fmt9(pt.params.p_floor) << ',' << fmt9(pt.params.p_ceil) << ','
        << fmt9(pt.objective) << ',' << fmt9(pt.step_scale) << '\n';
  }
  out << "# best_beta=" << fmt9(result.best.beta) << "\n"
      << "# best_p_floor=" << fmt9(result.best.p_floor) << "\n"
      << "# best_p_ceil=" << fmt9(result.best.p_ceil) << "\n"
      << "# best_objective=" << fmt9(result.best_objective) << "\n";
  return 0;
}

int cmd_adversary(const ExperimentSpec& spec, std::ostream& out) {
  PricingParams p = spec_params(spec);
  AdversaryConfig adv;
  adv.target_rho_star = spec.rho_star;
  adv.epsilon = spec.epsilon;
  adv.granularity = spec.granularity;
  int resources = spec.resources_set ? spec.resources : 1;

  const char* variant;
  std::vector<JobRequest> requests;
  if (resources > 1) {
    variant = "multi";
    requests = gen_worstcase_multi(p, resources, adv);
  } else if (spec.beta >= 1.0) {
    variant = "single";
    requests = gen_worstcase_single(p, adv);
  } else if (spec.beta > 0.0) {
    variant = "mid";
    requests = gen_worstcase_mid(p, adv);
  } else {
    throw std::invalid_argument(
        "adversary: flat pricing (beta <= 0) has no adversarial instance");
  }

  RunConfig cfg;
  cfg.num_resources = resources;
  cfg.horizon = 1;
  cfg.lambda = 1.0;
  cfg.params = {p};
  Trace trace = run_sequence(requests, cfg);

  OracleSolution sol;
  if (resources > 1)
    sol = optimal_multi_resource(requests, resources);
  else
    sol = optimal_basic(requests, spec.granularity);

  RatioConstants rc = competitive_alpha(spec.gamma, spec.beta);
  out << "# command=adversary\n";
  ExperimentSpec echo = spec;
  echo.resources = resources;
  echo.horizon = 1;  // the construction is single-slot regardless of the flag
  echo_scenario(echo, out);
  out << "variant,rho_star,epsilon,granularity,users,v_ol,v_opt,measured_"
         "ratio,alpha\n";
  out << variant << ',' << fmt9(spec.rho_star) << ',' << fmt9(spec.epsilon)
      << ',' << fmt9(spec.granularity) << ',' << requests.size() << ','
      << fmt9(trace.welfare_online) << ',' << fmt9(sol.welfare_opt) << ','
      << fmt9(sol.welfare_opt / trace.welfare_online) << ',' << fmt9(rc.alpha)
      << '\n';
  return 0;
}

}  // namespace cloudmarket
