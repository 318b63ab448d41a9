#include "cloudmarket/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace cloudmarket {

namespace {

// Margin below which a branch-and-bound prune is not taken, so that rounding
// in the suffix-sum bound can never cut off a true optimum.
double prune_margin(double best) {
  return 1e-12 * std::max(1.0, std::fabs(best));
}

bool usable_request(const JobRequest& r, int num_resources) {
  if (static_cast<int>(r.demands.size()) != num_resources) return false;
  if (r.slot_count < 1) return false;
  if (!(r.valuation >= 0.0) || !std::isfinite(r.valuation)) return false;
  double total = 0.0;
  for (double d : r.demands) {
    if (!(d >= 0.0) || !std::isfinite(d)) return false;
    if (d > 1.0 + kCapacityEps) return false;
    total += d;
  }
  return total > 0.0;
}

std::vector<int> density_order(const std::vector<JobRequest>& requests,
                               const std::vector<int>& idx) {
  std::vector<int> order = idx;
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
    double da = requests[a].valuation / requests[a].total_demand();
    double db = requests[b].valuation / requests[b].total_demand();
    return da > db;
  });
  return order;
}

}  // namespace

OracleSolution optimal_basic(const std::vector<JobRequest>& requests,
                             double granularity) {
  if (!(granularity > 0.0 && granularity <= 1.0))
    throw std::invalid_argument("optimal_basic: granularity outside (0, 1]");
  double cells = 1.0 / granularity;
  long long cap = std::llround(cells);
  if (std::fabs(cells - cap) > 1e-6)
    throw QuantizationError("optimal_basic: granularity does not tile capacity 1");
  if (cap > 1000000)
    throw OracleBudgetError("optimal_basic: capacity grid exceeds budget");

  std::vector<int> idx;
  std::vector<long long> weight;
  for (int i = 0; i < static_cast<int>(requests.size()); ++i) {
    const JobRequest& r = requests[i];
    if (!usable_request(r, 1)) continue;
    if (r.slot_count != 1)
      throw std::invalid_argument("optimal_basic: requests must be single-slot");
    double units = r.demands[0] / granularity;
    long long w = std::llround(units);
    if (w < 1 || std::fabs(units - w) > 1e-6)
      throw QuantizationError("optimal_basic: demand not a positive multiple of granularity");
    if (w > cap) continue;  // can never fit
    idx.push_back(i);
    weight.push_back(w);
  }

  int n = static_cast<int>(idx.size());
  int w_max = static_cast<int>(cap);
  if (static_cast<long long>(n) * (w_max + 1) > 400000000LL)
    throw OracleBudgetError("optimal_basic: instance exceeds table budget");
  std::vector<double> best(w_max + 1, 0.0);
  std::vector<std::vector<bool>> take(n);
  for (int k = 0; k < n; ++k) {
    take[k].assign(w_max + 1, false);
    int wi = static_cast<int>(weight[k]);
    double vi = requests[idx[k]].valuation;
    for (int w = w_max; w >= wi; --w) {
      double cand = best[w - wi] + vi;
      if (cand > best[w]) {
        best[w] = cand;
        take[k][w] = true;
      }
    }
  }

  OracleSolution sol;
  sol.welfare_opt = best[w_max];
  int w = w_max;
  for (int k = n - 1; k >= 0; --k) {
    if (take[k][w]) {
      sol.chosen.push_back(idx[k]);
      w -= static_cast<int>(weight[k]);
    }
  }
  std::reverse(sol.chosen.begin(), sol.chosen.end());
  sol.schedules.assign(sol.chosen.size(), {0});
  OracleConfig cfg;
  sol.slot_utilization.assign(1, 0.0);
  for (int i : sol.chosen) sol.slot_utilization[0] += requests[i].demands[0];
  sol.feasible = verify_solution(requests, sol, cfg);
  return sol;
}

namespace {

struct MultiResSearch {
  const std::vector<JobRequest>& requests;
  const std::vector<int>& order;
  std::vector<double> suffix;
  std::vector<double> usage;
  std::vector<char> in_set, best_set;
  double best = -1.0;

  MultiResSearch(const std::vector<JobRequest>& reqs, const std::vector<int>& ord,
                 int num_resources)
      : requests(reqs), order(ord), usage(num_resources, 0.0),
        in_set(ord.size(), 0), best_set(ord.size(), 0) {
    suffix.assign(order.size() + 1, 0.0);
    for (int k = static_cast<int>(order.size()) - 1; k >= 0; --k)
      suffix[k] = suffix[k + 1] + requests[order[k]].valuation;
  }

  void run(int k, double cur) {
    if (k == static_cast<int>(order.size())) {
      if (cur > best) {
        best = cur;
        best_set = in_set;
      }
      return;
    }
    if (cur + suffix[k] <= best - prune_margin(best)) return;
    const JobRequest& r = requests[order[k]];
    bool fits = true;
    for (size_t j = 0; j < usage.size(); ++j) {
      if (usage[j] + r.demands[j] > 1.0 + kCapacityEps) { fits = false; break; }
    }
    if (fits) {
      for (size_t j = 0; j < usage.size(); ++j) usage[j] += r.demands[j];
      in_set[k] = 1;
      run(k + 1, cur + r.valuation);
      in_set[k] = 0;
      for (size_t j = 0; j < usage.size(); ++j) usage[j] -= r.demands[j];
    }
    run(k + 1, cur);
  }
};

}  // namespace

OracleSolution optimal_multi_resource(const std::vector<JobRequest>& requests,
                                      int num_resources,
                                      const OracleLimits& limits) {
  if (num_resources < 1)
    throw std::invalid_argument("optimal_multi_resource: num_resources < 1");
  std::vector<int> idx;
  for (int i = 0; i < static_cast<int>(requests.size()); ++i) {
    if (!usable_request(requests[i], num_resources)) continue;
    if (requests[i].slot_count != 1)
      throw std::invalid_argument("optimal_multi_resource: requests must be single-slot");
    idx.push_back(i);
  }
  if (static_cast<int>(idx.size()) > limits.max_users_multi_resource)
    throw OracleBudgetError("optimal_multi_resource: instance exceeds user budget");

  std::vector<int> order = density_order(requests, idx);
  MultiResSearch search(requests, order, num_resources);
  search.run(0, 0.0);

  OracleSolution sol;
  sol.welfare_opt = std::max(search.best, 0.0);
  for (size_t k = 0; k < order.size(); ++k)
    if (search.best_set[k]) sol.chosen.push_back(order[k]);
  std::sort(sol.chosen.begin(), sol.chosen.end());
  sol.schedules.assign(sol.chosen.size(), {0});
  sol.slot_utilization.assign(num_resources, 0.0);
  for (int i : sol.chosen)
    for (int r = 0; r < num_resources; ++r)
      sol.slot_utilization[r] += requests[i].demands[r];
  OracleConfig cfg;
  cfg.num_resources = num_resources;
  cfg.limits = limits;
  sol.feasible = verify_solution(requests, sol, cfg);
  return sol;
}

namespace {

struct MultiSlotSearch {
  const std::vector<JobRequest>& requests;
  const OracleConfig& cfg;
  std::vector<int> order;
  std::vector<double> suffix;
  std::vector<double> usage;  // num_resources x horizon
  std::vector<std::vector<int>> assign, best_assign;  // slots per order position
  std::vector<int> window_first, window_last;
  double best = -1.0;

  MultiSlotSearch(const std::vector<JobRequest>& reqs, const OracleConfig& c,
                  std::vector<int> ord)
      : requests(reqs), cfg(c), order(std::move(ord)),
        usage(static_cast<size_t>(c.num_resources) * c.horizon, 0.0),
        assign(order.size()), best_assign(order.size()) {
    suffix.assign(order.size() + 1, 0.0);
    for (int k = static_cast<int>(order.size()) - 1; k >= 0; --k)
      suffix[k] = suffix[k + 1] + requests[order[k]].valuation;
    window_first.resize(order.size());
    window_last.resize(order.size());
  }

  double& at(int r, int t) { return usage[static_cast<size_t>(r) * cfg.horizon + t]; }

  bool slot_fits(const JobRequest& r, int t) {
    for (int j = 0; j < cfg.num_resources; ++j)
      if (r.demands[j] > 0.0 && at(j, t) + r.demands[j] > 1.0 + kCapacityEps)
        return false;
    return true;
  }

  void occupy(const JobRequest& r, int t, double sign) {
    for (int j = 0; j < cfg.num_resources; ++j) at(j, t) += sign * r.demands[j];
  }

  void place(int k, int from_slot, int need, double cur) {
    const JobRequest& r = requests[order[k]];
    if (need == 0) {
      user(k + 1, cur + r.valuation);
      return;
    }
    for (int t = from_slot; t <= window_last[k] - need + 1; ++t) {
      if (!slot_fits(r, t)) continue;
      occupy(r, t, 1.0);
      assign[k].push_back(t);
      place(k, t + 1, need - 1, cur);
      assign[k].pop_back();
      occupy(r, t, -1.0);
      if (cur + suffix[k] <= best - prune_margin(best)) return;
    }
  }

  void user(int k, double cur) {
    if (k == static_cast<int>(order.size())) {
      if (cur > best) {
        best = cur;
        best_assign = assign;
      }
      return;
    }
    if (cur + suffix[k] <= best - prune_margin(best)) return;
    place(k, window_first[k], requests[order[k]].slot_count, cur);  // accept
    user(k + 1, cur);                                               // reject
  }
};

}  // namespace

OracleSolution optimal_multi_slot(const std::vector<JobRequest>& requests,
                                  const OracleConfig& config) {
  if (config.num_resources < 1)
    throw std::invalid_argument("optimal_multi_slot: num_resources < 1");
  if (config.horizon < 1 || config.horizon > config.limits.max_horizon)
    throw OracleBudgetError("optimal_multi_slot: horizon exceeds budget");
  if (!(config.lambda >= 1.0))
    throw std::invalid_argument("optimal_multi_slot: lambda must be >= 1");

  ResourceLedger probe = ResourceLedger::make(
      config.num_resources, config.horizon,
      {PricingParams::from_gamma(10.0, 1.0)});  // window math only

  std::vector<int> idx;
  for (int i = 0; i < static_cast<int>(requests.size()); ++i) {
    const JobRequest& r = requests[i];
    if (!usable_request(r, config.num_resources)) continue;
    if (r.start_slot < 0 || r.start_slot >= config.horizon) continue;
    int first, last;
    request_window(probe, r, config.lambda, first, last);
    if (last - first + 1 > config.limits.max_window)
      throw OracleBudgetError("optimal_multi_slot: window exceeds budget");
    if (last - first + 1 < r.slot_count) continue;  // nobody can serve it
    idx.push_back(i);
  }
  if (static_cast<int>(idx.size()) > config.limits.max_users_multi_slot)
    throw OracleBudgetError("optimal_multi_slot: instance exceeds user budget");

  std::vector<int> order = density_order(requests, idx);
  MultiSlotSearch search(requests, config, order);
  for (size_t k = 0; k < order.size(); ++k)
    request_window(probe, requests[order[k]], config.lambda,
                   search.window_first[k], search.window_last[k]);
  search.user(0, 0.0);

  OracleSolution sol;
  sol.welfare_opt = std::max(search.best, 0.0);
  std::vector<std::pair<int, std::vector<int>>> picked;
  for (size_t k = 0; k < order.size(); ++k)
    if (!search.best_assign[k].empty())
      picked.emplace_back(order[k], search.best_assign[k]);
  std::sort(picked.begin(), picked.end());
  for (auto& [i, slots] : picked) {
    sol.chosen.push_back(i);
    sol.schedules.push_back(std::move(slots));
  }
  sol.slot_utilization.assign(
      static_cast<size_t>(config.num_resources) * config.horizon, 0.0);
  for (size_t c = 0; c < sol.chosen.size(); ++c)
    for (int t : sol.schedules[c])
      for (int r = 0; r < config.num_resources; ++r)
        sol.slot_utilization[static_cast<size_t>(r) * config.horizon + t] +=
            requests[sol.chosen[c]].demands[r];
  sol.feasible = verify_solution(requests, sol, config);
  return sol;
}

bool verify_solution(const std::vector<JobRequest>& requests,
                     const OracleSolution& solution, const OracleConfig& config) {
  if (solution.chosen.size() != solution.schedules.size()) return false;
  ResourceLedger probe = ResourceLedger::make(
      config.num_resources, config.horizon,
      {PricingParams::from_gamma(10.0, 1.0)});  // window math only
  std::vector<double> usage(
      static_cast<size_t>(config.num_resources) * config.horizon, 0.0);
  std::vector<char> seen(requests.size(), 0);
  double welfare = 0.0;
  for (size_t c = 0; c < solution.chosen.size(); ++c) {
    int i = solution.chosen[c];
    if (i < 0 || i >= static_cast<int>(requests.size()) || seen[i]) return false;
    seen[i] = 1;
    const JobRequest& r = requests[i];
    if (!usable_request(r, config.num_resources)) return false;
    const std::vector<int>& slots = solution.schedules[c];
    if (static_cast<int>(slots.size()) != r.slot_count) return false;
    int first, last;
    request_window(probe, r, config.lambda, first, last);
    for (size_t a = 0; a < slots.size(); ++a) {
      int t = slots[a];
      if (t < first || t > last) return false;
      for (size_t b = a + 1; b < slots.size(); ++b)
        if (slots[b] == t) return false;
      for (int j = 0; j < config.num_resources; ++j)
        usage[static_cast<size_t>(j) * config.horizon + t] += r.demands[j];
    }
    welfare += r.valuation;
  }
  for (double u : usage)
    if (u > 1.0 + kCapacityEps) return false;
  return std::fabs(welfare - solution.welfare_opt) <=
         1e-9 * std::max(1.0, std::fabs(welfare));
}

}  // namespace cloudmarket
