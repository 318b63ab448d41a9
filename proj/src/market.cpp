#include "cloudmarket/market.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace cloudmarket {

ResourceLedger ResourceLedger::make(int num_resources, int horizon,
                                    std::vector<PricingParams> params) {
  if (num_resources < 1) throw std::invalid_argument("ledger: num_resources < 1");
  if (horizon < 1) throw std::invalid_argument("ledger: horizon < 1");
  if (params.size() == 1 && num_resources > 1)
    params.resize(num_resources, params[0]);
  if (static_cast<int>(params.size()) != num_resources)
    throw std::invalid_argument("ledger: params size != num_resources");
  for (const auto& p : params) p.validate();
  ResourceLedger l;
  l.num_resources = num_resources;
  l.horizon = horizon;
  l.params = std::move(params);
  l.rho.assign(static_cast<size_t>(num_resources) * horizon, 0.0);
  return l;
}

double JobRequest::total_demand() const {
  double s = 0.0;
  for (double d : demands) s += d;
  return slot_count * s;
}

const char* outcome_name(Outcome o) {
  switch (o) {
    case Outcome::Accepted: return "accepted";
    case Outcome::PriceRejected: return "price_rejected";
    case Outcome::Infeasible: return "infeasible";
    case Outcome::Oversize: return "oversize";
    case Outcome::Malformed: return "malformed";
  }
  return "?";
}

int stretched_window(int slot_count, double lambda) {
  if (slot_count < 1) throw std::invalid_argument("stretched_window: slot_count < 1");
  if (!(lambda >= 1.0)) throw std::invalid_argument("stretched_window: lambda < 1");
  return static_cast<int>(std::ceil(lambda * slot_count - 1e-9));
}

void request_window(const ResourceLedger& ledger, const JobRequest& req,
                    double lambda, int& first, int& last) {
  first = req.start_slot;
  last = std::min(req.start_slot + stretched_window(req.slot_count, lambda) - 1,
                  ledger.horizon - 1);
}

namespace {

// Cost of one slot for the request's demand vector, or no value if some
// demanded resource is exhausted or lacks capacity.
std::optional<double> slot_cost(const ResourceLedger& ledger,
                                const JobRequest& req, int t) {
  double cost = 0.0;
  for (int r = 0; r < ledger.num_resources; ++r) {
    double d = req.demands[r];
    if (d <= 0.0) continue;
    double rho = ledger.util(r, t);
    if (rho + d > 1.0 + kCapacityEps) return std::nullopt;
    auto price = unit_price(std::min(rho, 1.0), ledger.params[r]);
    if (!price) return std::nullopt;
    cost += d * *price;
  }
  return cost;
}

bool malformed(const ResourceLedger& ledger, const JobRequest& req) {
  if (static_cast<int>(req.demands.size()) != ledger.num_resources) return true;
  if (req.slot_count < 1) return true;
  if (req.start_slot < 0 || req.start_slot >= ledger.horizon) return true;
  if (!(req.valuation >= 0.0) || !std::isfinite(req.valuation)) return true;
  double total = 0.0;
  for (double d : req.demands) {
    if (!(d >= 0.0) || !std::isfinite(d)) return true;
    total += d;
  }
  return total <= 0.0;  // zero-demand requests carry no price
}

bool oversize(const JobRequest& req) {
  for (double d : req.demands)
    if (d > 1.0 + kCapacityEps) return true;
  return false;
}

void commit(ResourceLedger& ledger, const JobRequest& req,
            const std::vector<int>& slots) {
  for (int t : slots) {
    for (int r = 0; r < ledger.num_resources; ++r) {
      double d = req.demands[r];
      if (d <= 0.0) continue;
      double& rho = ledger.util(r, t);
      rho += d;
      if (rho > 1.0) {
        if (rho > 1.0 + kCapacityEps)
          throw std::logic_error("engine: committed utilization above capacity");
        rho = 1.0;
      }
    }
  }
}

}  // namespace

Quote quote_single(const ResourceLedger& ledger, double demand) {
  if (ledger.num_resources != 1 || ledger.horizon != 1)
    throw std::invalid_argument("quote_single: ledger must be 1 resource, 1 slot");
  if (!(demand > 0.0) || !std::isfinite(demand))
    throw std::invalid_argument("quote_single: demand must be positive");
  JobRequest probe;
  probe.demands = {demand};
  Quote q;
  auto cost = slot_cost(ledger, probe, 0);
  if (!cost) return q;
  q.feasible = true;
  q.total_price = *cost;
  q.chosen_slots = {0};
  q.per_slot_cost = {*cost};
  return q;
}

Quote quote_multi_resource(const ResourceLedger& ledger, const JobRequest& req) {
  Quote q;
  auto cost = slot_cost(ledger, req, 0);
  if (!cost) return q;
  q.feasible = true;
  q.total_price = *cost;
  q.chosen_slots = {0};
  q.per_slot_cost = {*cost};
  return q;
}

Quote quote_multi_slot(const ResourceLedger& ledger, const JobRequest& req,
                       double lambda) {
  Quote q;
  int first, last;
  request_window(ledger, req, lambda, first, last);
  std::vector<std::pair<double, int>> feasible;
  for (int t = first; t <= last; ++t) {
    auto cost = slot_cost(ledger, req, t);
    if (cost) feasible.emplace_back(*cost, t);
  }
  if (static_cast<int>(feasible.size()) < req.slot_count) return q;
  // Cheapest slot_count slots; equal costs go to the earlier slot.
  std::stable_sort(feasible.begin(), feasible.end(),
                   [](const auto& a, const auto& b) { return a.first < b.first; });
  feasible.resize(req.slot_count);
  std::sort(feasible.begin(), feasible.end(),
            [](const auto& a, const auto& b) { return a.second < b.second; });
  q.feasible = true;
  for (const auto& [cost, t] : feasible) {
    q.total_price += cost;
    q.chosen_slots.push_back(t);
    q.per_slot_cost.push_back(cost);
  }
  return q;
}

Decision process_user(ResourceLedger& ledger, const JobRequest& req,
                      double lambda) {
  Decision d;
  if (malformed(ledger, req)) {
    d.outcome = Outcome::Malformed;
    return d;
  }
  if (oversize(req)) {
    d.outcome = Outcome::Oversize;
    return d;
  }
  Quote q = quote_multi_slot(ledger, req, lambda);
  if (!q.feasible) {
    d.outcome = Outcome::Infeasible;
    return d;
  }
  if (req.valuation >= q.total_price) {
    commit(ledger, req, q.chosen_slots);
    d.accepted = true;
    d.outcome = Outcome::Accepted;
    d.schedule = q.chosen_slots;
    d.price_paid = q.total_price;
    d.utility = req.valuation - q.total_price;
  } else {
    d.outcome = Outcome::PriceRejected;
  }
  return d;
}

Decision process_user_single(ResourceLedger& ledger, const JobRequest& req) {
  if (ledger.num_resources != 1 || ledger.horizon != 1)
    throw std::invalid_argument("process_user_single: ledger must be 1 resource, 1 slot");
  return process_user(ledger, req, 1.0);
}

Trace run_sequence(const std::vector<JobRequest>& requests,
                   const RunConfig& config) {
  ResourceLedger ledger =
      ResourceLedger::make(config.num_resources, config.horizon, config.params);
  if (!(config.lambda >= 1.0))
    throw std::invalid_argument("run_sequence: lambda must be >= 1");
  Trace trace;
  trace.decisions.reserve(requests.size());
  for (const JobRequest& req : requests) {
    Decision d = process_user(ledger, req, config.lambda);
    if (d.accepted) {
      trace.welfare_online += req.valuation;
      trace.revenue += d.price_paid;
    }
    trace.decisions.push_back(std::move(d));
  }
  trace.final_utilization = ledger.rho;
  return trace;
}

}  // namespace cloudmarket
