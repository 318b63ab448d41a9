#pragma once

#include <cstdint>
#include <iosfwd>
#include <vector>

#include "cloudmarket/market.hpp"

namespace cloudmarket {

// Poisson arrivals with optional sinusoidal rate modulation; demands drawn
// from a truncated normal, unit values uniform in the admitted band.
struct StochasticConfig {
  int horizon = 100;
  int num_resources = 1;
  double arrival_rate = 5.0;       // mean arrivals per slot
  double rate_amplitude = 0.0;     // sinusoidal modulation depth, [0, 1]
  double rate_period = 100.0;      // slots per modulation cycle
  double mean_demand = 0.01;       // per-resource demand mean
  double demand_stddev = 0.005;
  double mean_slot_count = 1.0;    // >= 1
  double demand_granularity = 0.0; // > 0 snaps demands to a grid (oracle use)
  double p_floor = 1.0;
  double p_ceil = 10.0;
  std::uint64_t seed = 1;
};

std::vector<JobRequest> gen_stochastic(const StochasticConfig& cfg);

enum class AdversaryVariant {
  PriceFlood,   // flood priced just below the quote at the stop point
  ExhaustFlood  // flood arrives after the focus resource is exhausted
};

struct AdversaryConfig {
  double target_rho_star = 0.7;  // utilization the phase-1 users drive to
  double epsilon = 1e-3;         // value slack of the flood
  double granularity = 1e-4;     // per-user demand size
  bool balanced = false;         // multi-resource: spread phase 1 evenly
  AdversaryVariant variant = AdversaryVariant::PriceFlood;
};

// Single-resource worst case for beta >= 1: phase-1 users valued exactly at
// the quoted price drive utilization to rho_star; a flood of total demand 1
// priced epsilon under the final quote follows.
std::vector<JobRequest> gen_worstcase_single(const PricingParams& params,
                                             const AdversaryConfig& adv);

// Same construction for beta in (0, 1); the flood's total demand is
// 1 + beta - rho_star, keeping total demand at 1 + beta.
std::vector<JobRequest> gen_worstcase_mid(const PricingParams& params,
                                          const AdversaryConfig& adv);

// Multi-resource worst case: phase 1 concentrates demand on resource 0
// (or spreads it evenly when balanced); the flood demands min{1, 1+beta}
// of every resource at unit value p_floor - epsilon (PriceFlood) or arrives
// after resource 0 is exhausted at unit value p_ceil - epsilon (ExhaustFlood).
std::vector<JobRequest> gen_worstcase_multi(const PricingParams& params,
                                            int num_resources,
                                            const AdversaryConfig& adv);

// Small seeded instances sized for the exact oracles, used for fuzzing the
// solvers against exhaustive enumeration.
struct SmallRandomConfig {
  int num_users = 10;
  int num_resources = 1;
  int horizon = 1;
  double lambda = 1.0;
  int max_slot_count = 1;
  double max_demand = 0.3;
  double granularity = 0.0;  // > 0 snaps demands to the grid
  double p_floor = 1.0;
  double p_ceil = 10.0;
  std::uint64_t seed = 1;
};

std::vector<JobRequest> gen_small_random(const SmallRandomConfig& cfg);

// Line-oriented text format, one request per line:
//   id,start_slot,slot_count,valuation,d_1[,d_2...]
// Doubles are printed with 17 significant digits so the round trip is
// bit-exact. Lines starting with '#' are comments.
void write_requests(std::ostream& os, const std::vector<JobRequest>& requests);
std::vector<JobRequest> read_requests(std::istream& is);

}  // namespace cloudmarket
