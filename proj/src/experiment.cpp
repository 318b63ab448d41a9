#include "cloudmarket/experiment.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <stdexcept>
#include <string_view>

#include "cloudmarket/rng.hpp"

namespace cloudmarket {

double DeskScenario::effective_beta() const {
  if (!std::isnan(beta_override)) return beta_override;
  return std::min(10.0, std::max(-0.9, relative_demand - 1.0));
}

PricingParams DeskScenario::pricing() const {
  return PricingParams::from_gamma(gamma, effective_beta(), p_floor, op_cost);
}

RunConfig DeskScenario::run_config() const {
  RunConfig cfg;
  cfg.num_resources = num_resources;
  cfg.horizon = horizon;
  cfg.lambda = lambda;
  cfg.params = {pricing()};
  return cfg;
}

std::vector<JobRequest> gen_desk_instance(const DeskScenario& sc,
                                          std::uint64_t trial_seed) {
  if (sc.users < 1 || sc.horizon < 1 || sc.num_resources < 1)
    throw std::invalid_argument("desk scenario: bad dimensions");
  if (sc.max_slot_count < 1 || sc.max_slot_count > sc.horizon)
    throw std::invalid_argument("desk scenario: bad slot count bound");
  if (!(sc.relative_demand > 0.0))
    throw std::invalid_argument("desk scenario: relative demand must be positive");
  Rng rng(trial_seed);

  // Arrival slots follow the modulated rate profile.
  std::vector<double> cum(sc.horizon, 0.0);
  double total_w = 0.0;
  for (int t = 0; t < sc.horizon; ++t) {
    double w = std::max(
        0.0, 1.0 + sc.amplitude * std::sin(6.283185307179586 * t / sc.rate_period));
    total_w += w;
    cum[t] = total_w;
  }

  double mean_slots = 0.5 * (1.0 + sc.max_slot_count);
  double mean_demand = std::min(
      0.9, sc.relative_demand * sc.horizon / (sc.users * mean_slots));

  std::vector<JobRequest> out;
  out.reserve(sc.users);
  for (int i = 0; i < sc.users; ++i) {
    JobRequest r;
    r.id = i;
    double u = rng.uniform(0.0, total_w);
    int slot = 0;
    while (slot < sc.horizon - 1 && cum[slot] < u) ++slot;
    r.slot_count = rng.uniform_int(1, sc.max_slot_count);
    r.start_slot = std::min(slot, sc.horizon - r.slot_count);
    r.demands.resize(sc.num_resources);
    for (int j = 0; j < sc.num_resources; ++j) {
      double d = rng.normal(mean_demand, 0.3 * mean_demand);
      for (int tries = 0; (d <= 0.0 || d > 1.0) && tries < 200; ++tries)
        d = rng.normal(mean_demand, 0.3 * mean_demand);
      if (d <= 0.0 || d > 1.0) d = mean_demand;
      r.demands[j] = d;
    }
    r.valuation = rng.uniform(sc.p_floor, sc.gamma * sc.p_floor) * r.total_demand();
    out.push_back(std::move(r));
  }
  std::stable_sort(out.begin(), out.end(), [](const JobRequest& a, const JobRequest& b) {
    return a.start_slot < b.start_slot;
  });
  return out;
}

CellStats eval_cell(const DeskScenario& sc, int trials, ExecMode mode,
                    bool with_oracle) {
  if (trials < 1) throw std::invalid_argument("eval_cell: trials < 1");
  auto t0 = std::chrono::steady_clock::now();
  RunConfig run_cfg = sc.run_config();
  OracleConfig oracle_cfg;
  oracle_cfg.num_resources = sc.num_resources;
  oracle_cfg.horizon = sc.horizon;
  oracle_cfg.lambda = sc.lambda;

  std::vector<double> ol(trials, 0.0), opt(trials, 0.0);
  for_each_index(trials, mode, [&](int i) {
    std::vector<JobRequest> requests =
        gen_desk_instance(sc, mix_seed(sc.seed, static_cast<std::uint64_t>(i)));
    Trace trace = run_sequence(requests, run_cfg);
    ol[i] = trace.welfare_online;
    if (with_oracle)
      opt[i] = optimal_multi_slot(requests, oracle_cfg).welfare_opt;
  });

  CellStats stats;
  for (int i = 0; i < trials; ++i) {
    stats.v_ol += ol[i];
    stats.v_opt += opt[i];
  }
  stats.solved = with_oracle;
  if (with_oracle)
    stats.ratio = stats.v_ol > 0.0 ? stats.v_opt / stats.v_ol
                                   : (stats.v_opt > 0.0 ? HUGE_VAL : 1.0);
  auto t1 = std::chrono::steady_clock::now();
  stats.runtime_ms =
      std::chrono::duration_cast<std::chrono::duration<double, std::milli>>(t1 - t0)
          .count();
  return stats;
}

const char* axis_name(SweepAxis axis) {
  switch (axis) {
    case SweepAxis::Demand: return "demand";
    case SweepAxis::Resources: return "resources";
    case SweepAxis::Slots: return "slots";
    case SweepAxis::Lambda: return "lambda";
    case SweepAxis::Amplitude: return "amplitude";
    case SweepAxis::Beta: return "beta";
    case SweepAxis::Gamma: return "gamma";
  }
  return "?";
}

bool parse_axis(const char* name, SweepAxis& out) {
  for (SweepAxis a : {SweepAxis::Demand, SweepAxis::Resources, SweepAxis::Slots,
                      SweepAxis::Lambda, SweepAxis::Amplitude, SweepAxis::Beta,
                      SweepAxis::Gamma}) {
    if (std::string_view(axis_name(a)) == name) {
      out = a;
      return true;
    }
  }
  return false;
}

DeskScenario apply_axis(const DeskScenario& base, SweepAxis axis, double value) {
  DeskScenario sc = base;
  switch (axis) {
    case SweepAxis::Demand: sc.relative_demand = value; break;
    case SweepAxis::Resources: sc.num_resources = static_cast<int>(value); break;
    case SweepAxis::Slots: sc.max_slot_count = static_cast<int>(value); break;
    case SweepAxis::Lambda: sc.lambda = value; break;
    case SweepAxis::Amplitude: sc.amplitude = value; break;
    case SweepAxis::Beta: sc.beta_override = value; break;
    case SweepAxis::Gamma: sc.gamma = value; break;
  }
  return sc;
}

std::vector<SweepRow> run_sweep(const SweepSpec& spec) {
  std::vector<SweepRow> rows;
  rows.reserve(spec.grid.size());
  for (double value : spec.grid) {
    DeskScenario sc = apply_axis(spec.base, spec.axis, value);
    SweepRow row;
    row.axis_value = value;
    CellStats stats;
    try {
      stats = eval_cell(sc, spec.trials, spec.mode, spec.with_oracle);
    } catch (const OracleBudgetError&) {
      stats = eval_cell(sc, spec.trials, spec.mode, false);
      row.solved = false;
    }
    row.v_ol = stats.v_ol;
    row.runtime_ms = stats.runtime_ms;
    if (!row.solved) {
      row.v_opt_or_bound = 0.0;
      row.ratio = 0.0;
    } else if (spec.with_oracle) {
      row.v_opt_or_bound = stats.v_opt;
      row.ratio = stats.ratio;
    } else {
      PricingParams p = sc.pricing();
      double bound;
      if (p.beta <= 0.0)  // slack guarantee, no scarcity bound applies
        bound = competitive_alpha(sc.gamma, p.beta).alpha;
      else if (sc.horizon > 1 && sc.lambda > 1.0)
        bound = multi_slot_bound(sc.lambda, 1.0, p);
      else if (sc.num_resources > 1)
        bound = multi_resource_bound(sc.gamma, p.beta, 1.0);
      else
        bound = competitive_alpha(sc.gamma, p.beta).alpha;
      row.ratio = bound;
      row.v_opt_or_bound = bound * stats.v_ol;
    }
    rows.push_back(row);
  }
  return rows;
}

}  // namespace cloudmarket
