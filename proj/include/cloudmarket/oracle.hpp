#pragma once

#include <stdexcept>
#include <vector>

#include "cloudmarket/market.hpp"

namespace cloudmarket {

// Search budgets for the exact solvers. Instances past these sizes are
// refused rather than answered approximately.
struct OracleLimits {
  int max_users_multi_resource = 25;
  int max_users_multi_slot = 15;
  int max_horizon = 30;
  int max_window = 10;
};

struct OracleConfig {
  int num_resources = 1;
  int horizon = 1;
  double lambda = 1.0;
  OracleLimits limits;
};

struct OracleSolution {
  std::vector<int> chosen;                  // indices of accepted requests
  std::vector<std::vector<int>> schedules;  // slots per accepted request
  double welfare_opt = 0.0;
  std::vector<double> slot_utilization;     // num_resources x horizon
  bool feasible = false;                    // result of the built-in recheck
};

// Instance exceeds a solver budget; the caller must shrink the instance.
struct OracleBudgetError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Demands are not multiples of the requested grid.
struct QuantizationError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// Single-resource single-slot optimum via dynamic programming over a
// capacity grid; exact when every demand is a multiple of granularity.
OracleSolution optimal_basic(const std::vector<JobRequest>& requests,
                             double granularity = 1e-4);

// Multi-resource single-slot optimum via depth-first branch and bound.
OracleSolution optimal_multi_resource(const std::vector<JobRequest>& requests,
                                      int num_resources,
                                      const OracleLimits& limits = {});

// Multi-resource multi-slot optimum with per-request stretched windows,
// via depth-first search with backtracking over slot assignments.
OracleSolution optimal_multi_slot(const std::vector<JobRequest>& requests,
                                  const OracleConfig& config);

// Re-checks a solution against the instance from scratch: capacity, window
// membership, slot counts, welfare. Independent of the solver internals.
bool verify_solution(const std::vector<JobRequest>& requests,
                     const OracleSolution& solution, const OracleConfig& config);

}  // namespace cloudmarket
