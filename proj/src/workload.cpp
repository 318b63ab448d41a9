#include "cloudmarket/workload.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>

#include "cloudmarket/oracle.hpp"
#include "cloudmarket/rng.hpp"

namespace cloudmarket {

namespace {

double snap_to_grid(double d, double granularity, double cap) {
  if (granularity <= 0.0) return std::min(d, cap);
  double units = std::max(1.0, std::round(d / granularity));
  double snapped = units * granularity;
  while (snapped > cap && units > 1.0) {
    units -= 1.0;
    snapped = units * granularity;
  }
  return snapped;
}

}  // namespace

std::vector<JobRequest> gen_stochastic(const StochasticConfig& cfg) {
  if (cfg.horizon < 1) throw std::invalid_argument("gen_stochastic: horizon < 1");
  if (cfg.num_resources < 1)
    throw std::invalid_argument("gen_stochastic: num_resources < 1");
  if (!(cfg.arrival_rate >= 0.0))
    throw std::invalid_argument("gen_stochastic: negative arrival rate");
  if (!(cfg.rate_amplitude >= 0.0 && cfg.rate_amplitude <= 1.0))
    throw std::invalid_argument("gen_stochastic: amplitude outside [0, 1]");
  if (!(cfg.rate_period > 0.0))
    throw std::invalid_argument("gen_stochastic: rate_period must be positive");
  if (!(cfg.mean_slot_count >= 1.0))
    throw std::invalid_argument("gen_stochastic: mean_slot_count < 1");
  if (!(cfg.mean_demand > 0.0 && cfg.mean_demand <= 1.0))
    throw std::invalid_argument("gen_stochastic: mean_demand outside (0, 1]");
  if (!(cfg.p_floor > 0.0 && cfg.p_ceil >= cfg.p_floor))
    throw std::invalid_argument("gen_stochastic: bad valuation band");

  Rng rng(cfg.seed);
  std::vector<JobRequest> out;
  int id = 0;
  for (int t = 0; t < cfg.horizon; ++t) {
    double rate = cfg.arrival_rate *
                  (1.0 + cfg.rate_amplitude *
                             std::sin(6.283185307179586 * t / cfg.rate_period));
    int arrivals = rng.poisson(std::max(0.0, rate));
    for (int a = 0; a < arrivals; ++a) {
      JobRequest r;
      r.id = id++;
      r.start_slot = t;
      r.slot_count = 1 + rng.poisson(cfg.mean_slot_count - 1.0);
      r.demands.resize(cfg.num_resources);
      for (int j = 0; j < cfg.num_resources; ++j) {
        double d = rng.normal(cfg.mean_demand, cfg.demand_stddev);
        for (int tries = 0; (d <= 0.0 || d > 1.0) && tries < 200; ++tries)
          d = rng.normal(cfg.mean_demand, cfg.demand_stddev);
        if (d <= 0.0 || d > 1.0) d = cfg.mean_demand;
        r.demands[j] = snap_to_grid(d, cfg.demand_granularity, 1.0);
      }
      double unit = rng.uniform(cfg.p_floor, cfg.p_ceil);
      unit = std::min(std::max(unit, cfg.p_floor), cfg.p_ceil);
      r.valuation = unit * r.total_demand();
      out.push_back(std::move(r));
    }
  }
  return out;
}

namespace {

// Phase 1 of every worst-case build: granule-sized users valued exactly at
// the quoted price, pushed through the live engine so a replay accepts them
// bit for bit.
struct WorstcaseBuilder {
  ResourceLedger ledger;
  std::vector<JobRequest> requests;
  int id = 0;

  WorstcaseBuilder(const PricingParams& params, int num_resources)
      : ledger(ResourceLedger::make(num_resources, 1, {params})) {}

  void push_phase1(const std::vector<double>& demands) {
    JobRequest r;
    r.id = id++;
    r.demands = demands;
    Quote q = quote_multi_resource(ledger, r);
    if (!q.feasible)
      throw std::invalid_argument("worst-case generator: phase 1 ran out of capacity");
    r.valuation = q.total_price;
    Decision d = process_user(ledger, r, 1.0);
    if (!d.accepted)
      throw std::logic_error("worst-case generator: phase-1 user not accepted");
    requests.push_back(std::move(r));
  }

  void push_flood(const std::vector<double>& demands, double valuation) {
    JobRequest r;
    r.id = id++;
    r.demands = demands;
    r.valuation = valuation;
    requests.push_back(std::move(r));
  }
};

std::vector<JobRequest> worstcase_single_core(const PricingParams& params,
                                              const AdversaryConfig& adv,
                                              double flood_total) {
  params.validate();
  if (params.op_cost != 0.0)
    throw std::invalid_argument("worst-case generator: requires op_cost == 0");
  if (!(adv.granularity > 0.0 && adv.granularity <= 0.5))
    throw std::invalid_argument("worst-case generator: bad granularity");
  if (!(adv.target_rho_star > 0.0 && adv.target_rho_star <= 1.0))
    throw std::invalid_argument("worst-case generator: target outside (0, 1]");
  if (!(adv.epsilon > 0.0))
    throw std::invalid_argument("worst-case generator: epsilon must be positive");

  double g = adv.granularity;
  long long n1 = std::llround(adv.target_rho_star / g);
  WorstcaseBuilder b(params, 1);
  for (long long k = 0; k < n1; ++k) b.push_phase1({g});

  double rho_star = b.ledger.util(0, 0);
  double flood_unit;
  if (rho_star >= 1.0) {
    flood_unit = params.p_ceil - adv.epsilon;
  } else {
    double p = *unit_price(rho_star, params);
    if (p - adv.epsilon < params.p_floor)
      throw std::invalid_argument(
          "worst-case generator: flood value falls below the admitted band "
          "(target inside the flat region)");
    flood_unit = p - adv.epsilon;
  }
  long long m = std::llround(flood_total / g);
  for (long long j = 0; j < m; ++j) b.push_flood({g}, flood_unit * g);
  return std::move(b.requests);
}

}  // namespace

std::vector<JobRequest> gen_worstcase_single(const PricingParams& params,
                                             const AdversaryConfig& adv) {
  if (!(params.beta >= 1.0))
    throw std::invalid_argument("gen_worstcase_single: requires beta >= 1");
  return worstcase_single_core(params, adv, 1.0);
}

std::vector<JobRequest> gen_worstcase_mid(const PricingParams& params,
                                          const AdversaryConfig& adv) {
  if (!(params.beta > 0.0 && params.beta < 1.0))
    throw std::invalid_argument("gen_worstcase_mid: requires beta in (0, 1)");
  double flood_total = std::max(0.0, 1.0 + params.beta - adv.target_rho_star);
  return worstcase_single_core(params, adv, flood_total);
}

std::vector<JobRequest> gen_worstcase_multi(const PricingParams& params,
                                            int num_resources,
                                            const AdversaryConfig& adv) {
  params.validate();
  if (params.op_cost != 0.0)
    throw std::invalid_argument("gen_worstcase_multi: requires op_cost == 0");
  if (num_resources < 1)
    throw std::invalid_argument("gen_worstcase_multi: num_resources < 1");
  if (!(params.beta > 0.0))
    throw std::invalid_argument("gen_worstcase_multi: requires beta > 0");
  if (!(adv.granularity > 0.0 && adv.granularity <= 0.5))
    throw std::invalid_argument("gen_worstcase_multi: bad granularity");
  if (!(adv.epsilon > 0.0))
    throw std::invalid_argument("gen_worstcase_multi: epsilon must be positive");
  if (adv.variant == AdversaryVariant::ExhaustFlood && adv.target_rho_star != 1.0)
    throw std::invalid_argument(
        "gen_worstcase_multi: exhaust variant requires target 1.0");

  double g = adv.granularity;
  long long n1 = std::llround(adv.target_rho_star / g);
  WorstcaseBuilder b(params, num_resources);
  std::vector<double> phase1_demand(num_resources, 0.0);
  if (adv.balanced)
    std::fill(phase1_demand.begin(), phase1_demand.end(), g);
  else
    phase1_demand[0] = g;
  for (long long k = 0; k < n1; ++k) b.push_phase1(phase1_demand);

  double per_resource_total = std::min(1.0, 1.0 + params.beta);
  long long m = std::llround(per_resource_total / g);
  std::vector<double> flood_demand(num_resources, g);
  if (adv.variant == AdversaryVariant::ExhaustFlood)
    flood_demand[0] = g * 1e-6;  // sliver of the exhausted resource
  double flood_sum = 0.0;
  for (double d : flood_demand) flood_sum += d;
  double unit = adv.variant == AdversaryVariant::ExhaustFlood
                    ? params.p_ceil - adv.epsilon
                    : params.p_floor - adv.epsilon;
  if (unit <= 0.0)
    throw std::invalid_argument("gen_worstcase_multi: epsilon too large");
  for (long long j = 0; j < m; ++j) b.push_flood(flood_demand, unit * flood_sum);
  return std::move(b.requests);
}

std::vector<JobRequest> gen_small_random(const SmallRandomConfig& cfg) {
  OracleLimits limits;
  if (cfg.num_users < 0)
    throw std::invalid_argument("gen_small_random: negative user count");
  if (cfg.horizon < 1 || cfg.num_resources < 1)
    throw std::invalid_argument("gen_small_random: bad dimensions");
  if (cfg.max_slot_count < 1 || cfg.max_slot_count > cfg.horizon)
    throw std::invalid_argument("gen_small_random: bad slot count bound");
  if (!(cfg.lambda >= 1.0))
    throw std::invalid_argument("gen_small_random: lambda < 1");
  if (!(cfg.max_demand > 0.0 && cfg.max_demand <= 1.0))
    throw std::invalid_argument("gen_small_random: max_demand outside (0, 1]");
  if (cfg.horizon > 1) {
    if (cfg.num_users > limits.max_users_multi_slot ||
        cfg.horizon > limits.max_horizon ||
        stretched_window(cfg.max_slot_count, cfg.lambda) > limits.max_window)
      throw OracleBudgetError("gen_small_random: exceeds the multi-slot oracle budget");
  } else if (cfg.num_resources > 1) {
    if (cfg.num_users > limits.max_users_multi_resource)
      throw OracleBudgetError("gen_small_random: exceeds the multi-resource oracle budget");
  }

  Rng rng(cfg.seed);
  std::vector<JobRequest> out;
  out.reserve(cfg.num_users);
  for (int i = 0; i < cfg.num_users; ++i) {
    JobRequest r;
    r.id = i;
    r.slot_count = rng.uniform_int(1, cfg.max_slot_count);
    r.start_slot = rng.uniform_int(0, std::max(0, cfg.horizon - r.slot_count));
    r.demands.resize(cfg.num_resources);
    for (int j = 0; j < cfg.num_resources; ++j) {
      double d = rng.uniform(0.0, cfg.max_demand);
      if (d <= 0.0) d = cfg.max_demand;
      r.demands[j] = snap_to_grid(d, cfg.granularity, cfg.max_demand);
    }
    r.valuation = rng.uniform(cfg.p_floor, cfg.p_ceil) * r.total_demand();
    out.push_back(std::move(r));
  }
  return out;
}

void write_requests(std::ostream& os, const std::vector<JobRequest>& requests) {
  os << "# id,start_slot,slot_count,valuation,d_1..d_R\n";
  char buf[64];
  for (const JobRequest& r : requests) {
    os << r.id << ',' << r.start_slot << ',' << r.slot_count;
    std::snprintf(buf, sizeof buf, ",%.17g", r.valuation);
    os << buf;
    for (double d : r.demands) {
      std::snprintf(buf, sizeof buf, ",%.17g", d);
      os << buf;
    }
    os << '\n';
  }
}

std::vector<JobRequest> read_requests(std::istream& is) {
  std::vector<JobRequest> out;
  std::string line;
  int line_no = 0;
  while (std::getline(is, line)) {
    ++line_no;
    if (line.empty() || line[0] == '#') continue;
    std::vector<std::string> fields;
    std::string field;
    std::istringstream ls(line);
    while (std::getline(ls, field, ',')) fields.push_back(field);
    if (fields.size() < 5)
      throw std::runtime_error("request file: too few fields at line " +
                               std::to_string(line_no));
    JobRequest r;
    try {
      size_t pos;
      r.id = std::stoi(fields[0], &pos);
      r.start_slot = std::stoi(fields[1]);
      r.slot_count = std::stoi(fields[2]);
      r.valuation = std::stod(fields[3]);
      for (size_t f = 4; f < fields.size(); ++f)
        r.demands.push_back(std::stod(fields[f]));
    } catch (const std::exception&) {
      throw std::runtime_error("request file: malformed number at line " +
                               std::to_string(line_no));
    }
    out.push_back(std::move(r));
  }
  return out;
}

}  // namespace cloudmarket
