#pragma once

#include <vector>

#include "cloudmarket/pricing.hpp"

namespace cloudmarket {

// Slack applied to capacity comparisons so that granule-sized commits summing
// to exactly 1 are not rejected for accumulated rounding dust (~1e-12 after
// 1e4 additions), while real demand scales (>= 1e-4) stay unaffected.
inline constexpr double kCapacityEps = 1e-9;

// Utilization state of every resource in every time slot, plus the price
// schedule parameters per resource.
struct ResourceLedger {
  int num_resources = 1;
  int horizon = 1;
  std::vector<PricingParams> params;  // one entry per resource
  std::vector<double> rho;            // num_resources x horizon, row-major

  static ResourceLedger make(int num_resources, int horizon,
                             std::vector<PricingParams> params);
  double util(int r, int t) const { return rho[r * horizon + t]; }
  double& util(int r, int t) { return rho[r * horizon + t]; }
};

struct JobRequest {
  int id = 0;
  int start_slot = 0;           // earliest usable slot
  int slot_count = 1;           // number of slots the job needs
  double valuation = 0.0;       // total willingness to pay
  std::vector<double> demands;  // per-resource fraction used in each occupied slot

  double total_demand() const;  // slot_count * sum of demands
};

struct Quote {
  bool feasible = false;
  double total_price = 0.0;
  std::vector<int> chosen_slots;      // ascending
  std::vector<double> per_slot_cost;  // aligned with chosen_slots
};

enum class Outcome {
  Accepted,
  PriceRejected,  // quoted price above the valuation
  Infeasible,     // not enough feasible slots / exhausted resource
  Oversize,       // some per-resource demand exceeds 1
  Malformed       // request fails basic validation
};

const char* outcome_name(Outcome o);

struct Decision {
  bool accepted = false;
  Outcome outcome = Outcome::Malformed;
  std::vector<int> schedule;
  double price_paid = 0.0;
  double utility = 0.0;
};

struct Trace {
  std::vector<Decision> decisions;
  double welfare_online = 0.0;  // sum of accepted valuations
  double revenue = 0.0;         // sum of prices paid
  std::vector<double> final_utilization;  // ledger rho after the run
};

// Number of slots in the stretched deadline window for a job of slot_count
// slots: ceil(lambda * slot_count), guarded against binary representation
// artifacts such as 1.1 * 10 = 11.000000000000002.
int stretched_window(int slot_count, double lambda);

// Window [first, last] (inclusive, clamped to the horizon) a request may be
// scheduled in.
void request_window(const ResourceLedger& ledger, const JobRequest& req,
                    double lambda, int& first, int& last);

// Single-resource, single-slot quote: demand * P(rho).
Quote quote_single(const ResourceLedger& ledger, double demand);

// Single-resource, single-slot accept/commit step.
Decision process_user_single(ResourceLedger& ledger, const JobRequest& req);

// Multi-resource quote in a single-slot market: sum of d_r * P(rho_r).
// Resources with zero demand contribute nothing even when exhausted.
Quote quote_multi_resource(const ResourceLedger& ledger, const JobRequest& req);

// Multi-slot quote: sum of the slot_count cheapest feasible slots in the
// stretched window (ties broken toward earlier slots).
Quote quote_multi_slot(const ResourceLedger& ledger, const JobRequest& req,
                       double lambda);

// Quote, accept iff valuation >= price, and commit on acceptance.
Decision process_user(ResourceLedger& ledger, const JobRequest& req,
                      double lambda);

struct RunConfig {
  int num_resources = 1;
  int horizon = 1;
  double lambda = 1.0;
  std::vector<PricingParams> params;  // one per resource, or one shared entry
};

// Drives process_user over the arrival sequence in order. Malformed requests
// are recorded and skipped; the run continues.
Trace run_sequence(const std::vector<JobRequest>& requests,
                   const RunConfig& config);

}  // namespace cloudmarket
