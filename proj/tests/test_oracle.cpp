#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <algorithm>
#include <cmath>
#include <vector>

#include "cloudmarket/market.hpp"
#include "cloudmarket/oracle.hpp"
#include "cloudmarket/rng.hpp"
#include "cloudmarket/workload.hpp"
#include "doctest.h"

using namespace cloudmarket;

namespace {

JobRequest make_req(int id, double demand, double valuation, int start = 0,
                    int slots = 1) {
  JobRequest r;
  r.id = id;
  r.start_slot = start;
  r.slot_count = slots;
  r.valuation = valuation;
  r.demands = {demand};
  return r;
}

bool welfare_close(double a, double b) {
  return std::fabs(a - b) <= 1e-9 * std::max(1.0, std::fabs(b));
}

// Exhaustive single-resource single-slot reference on the same integer grid
// the dynamic program uses.
double brute_basic(const std::vector<JobRequest>& reqs, double granularity) {
  int n = static_cast<int>(reqs.size());
  long long cap = std::llround(1.0 / granularity);
  double best = 0.0;
  for (unsigned mask = 0; mask < (1u << n); ++mask) {
    long long w = 0;
    double v = 0.0;
    for (int i = 0; i < n; ++i) {
      if (!(mask & (1u << i))) continue;
      w += std::llround(reqs[i].demands[0] / granularity);
      v += reqs[i].valuation;
    }
    if (w <= cap && v > best) best = v;
  }
  return best;
}

double brute_multi_resource(const std::vector<JobRequest>& reqs,
                            int resources) {
  int n = static_cast<int>(reqs.size());
  double best = 0.0;
  std::vector<double> usage(resources);
  for (unsigned mask = 0; mask < (1u << n); ++mask) {
    std::fill(usage.begin(), usage.end(), 0.0);
    double v = 0.0;
    bool ok = true;
    for (int i = 0; i < n && ok; ++i) {
      if (!(mask & (1u << i))) continue;
      v += reqs[i].valuation;
      for (int r = 0; r < resources; ++r) {
        usage[r] += reqs[i].demands[r];
        if (usage[r] > 1.0 + kCapacityEps) {
          ok = false;
          break;
        }
      }
    }
    if (ok && v > best) best = v;
  }
  return best;
}

// Unordered, unpruned take-or-skip search over schedules: the same problem
// the multi-slot solver answers, minus every speedup it relies on.
struct BruteMultiSlot {
  const std::vector<JobRequest>& reqs;
  const OracleConfig& cfg;
  const ResourceLedger& probe;
  std::vector<double> usage;
  double best = 0.0;

  BruteMultiSlot(const std::vector<JobRequest>& r, const OracleConfig& c,
                 const ResourceLedger& p)
      : reqs(r), cfg(c), probe(p),
        usage(static_cast<size_t>(c.num_resources) * c.horizon, 0.0) {}

  double& at(int r, int t) {
    return usage[static_cast<size_t>(r) * cfg.horizon + t];
  }

  void place(size_t k, const JobRequest& r, int from, int need, double cur) {
    if (need == 0) {
      user(k + 1, cur + r.valuation);
      return;
    }
    int first, last;
    request_window(probe, r, cfg.lambda, first, last);
    for (int t = std::max(from, first); t <= last - need + 1; ++t) {
      bool fits = true;
      for (int j = 0; j < cfg.num_resources; ++j)
        if (r.demands[j] > 0.0 && at(j, t) + r.demands[j] > 1.0 + kCapacityEps)
          fits = false;
      if (!fits) continue;
      for (int j = 0; j < cfg.num_resources; ++j) at(j, t) += r.demands[j];
      place(k, r, t + 1, need - 1, cur);
      for (int j = 0; j < cfg.num_resources; ++j) at(j, t) -= r.demands[j];
    }
  }

  void user(size_t k, double cur) {
    if (k == reqs.size()) {
      best = std::max(best, cur);
      return;
    }
    place(k, reqs[k], 0, reqs[k].slot_count, cur);  // every way to take it
    user(k + 1, cur);                               // or skip it
  }
};

double brute_multi_slot(const std::vector<JobRequest>& reqs,
                        const OracleConfig& cfg) {
  ResourceLedger probe = ResourceLedger::make(
      cfg.num_resources, cfg.horizon, {PricingParams::from_gamma(10.0, 1.0)});
  BruteMultiSlot b(reqs, cfg, probe);
  b.user(0, 0.0);
  return b.best;
}

}  // namespace

TEST_CASE("basic oracle: hand-checked knapsack") {
  std::vector<JobRequest> reqs = {make_req(1, 0.5, 0.6), make_req(2, 0.5, 0.5),
                                  make_req(3, 0.6, 0.8)};
  OracleSolution sol = optimal_basic(reqs);
  CHECK(sol.welfare_opt == doctest::Approx(1.1).epsilon(1e-12));
  CHECK(sol.chosen == std::vector<int>{0, 1});
  CHECK(sol.feasible);
  CHECK(sol.slot_utilization[0] == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("basic oracle: degenerate instances") {
  OracleSolution one = optimal_basic({make_req(1, 1.0, 5.0)});
  CHECK(one.welfare_opt == 5.0);
  CHECK(one.chosen == std::vector<int>{0});

  OracleSolution none = optimal_basic({});
  CHECK(none.welfare_opt == 0.0);
  CHECK(none.chosen.empty());
  CHECK(none.feasible);

  // Two users of demand 0.6 cannot share the unit capacity.
  OracleSolution clash =
      optimal_basic({make_req(1, 0.6, 1.0), make_req(2, 0.6, 0.9)});
  CHECK(clash.chosen == std::vector<int>{0});
  CHECK(clash.welfare_opt == 1.0);
}

TEST_CASE("basic oracle: quantization and budget errors") {
  CHECK_THROWS_AS(optimal_basic({make_req(1, 0.5, 1.0)}, 0.3),
                  QuantizationError);  // 0.3 does not tile capacity 1
  CHECK_THROWS_AS(optimal_basic({make_req(1, 0.005, 1.0)}, 0.01),
                  QuantizationError);  // demand off the grid
  CHECK_THROWS_AS(optimal_basic({make_req(1, 0.015, 1.0)}, 0.01),
                  QuantizationError);
  CHECK_THROWS_AS(optimal_basic({make_req(1, 0.5, 1.0)}, 1e-7),
                  OracleBudgetError);  // capacity grid too fine
  CHECK_THROWS_AS(optimal_basic({make_req(1, 0.5, 1.0, 0, 2)}),
                  std::invalid_argument);  // multi-slot request
  CHECK_THROWS_AS(optimal_basic({make_req(1, 0.5, 1.0)}, 0.0),
                  std::invalid_argument);
}

TEST_CASE("basic oracle matches exhaustive enumeration") {
  for (std::uint64_t seed = 1; seed <= 100; ++seed) {
    SmallRandomConfig cfg;
    cfg.num_users = 12;
    cfg.granularity = 0.01;
    cfg.max_demand = 0.4;
    cfg.seed = seed;
    std::vector<JobRequest> reqs = gen_small_random(cfg);
    OracleSolution sol = optimal_basic(reqs, 0.01);
    CHECK(welfare_close(sol.welfare_opt, brute_basic(reqs, 0.01)));
    CHECK(sol.feasible);
  }
}

TEST_CASE("multi-resource oracle: hand-checked instances") {
  // Complementary demand profiles pack together; a balanced rival does not.
  JobRequest a = make_req(1, 0.0, 1.0);
  a.demands = {0.9, 0.1};
  JobRequest b = make_req(2, 0.0, 1.0);
  b.demands = {0.1, 0.9};
  JobRequest c = make_req(3, 0.0, 1.5);
  c.demands = {0.5, 0.5};
  OracleSolution sol = optimal_multi_resource({a, b, c}, 2);
  CHECK(sol.welfare_opt == doctest::Approx(2.0).epsilon(1e-12));
  CHECK(sol.chosen == std::vector<int>{0, 1});
  CHECK(sol.feasible);

  // The balanced user wins once it outbids the pair.
  c.valuation = 2.5;
  OracleSolution sol2 = optimal_multi_resource({a, b, c}, 2);
  CHECK(sol2.welfare_opt == doctest::Approx(2.5).epsilon(1e-12));
  CHECK(sol2.chosen == std::vector<int>{2});
}

TEST_CASE("multi-resource oracle matches exhaustive enumeration") {
  for (std::uint64_t seed = 1; seed <= 100; ++seed) {
    SmallRandomConfig cfg;
    cfg.num_users = 12;
    cfg.num_resources = (seed % 2) ? 2 : 3;
    cfg.max_demand = 0.5;
    cfg.seed = seed;
    std::vector<JobRequest> reqs = gen_small_random(cfg);
    OracleSolution sol = optimal_multi_resource(reqs, cfg.num_resources);
    CHECK(welfare_close(sol.welfare_opt,
                        brute_multi_resource(reqs, cfg.num_resources)));
    CHECK(sol.feasible);
  }
}

TEST_CASE("multi-resource oracle: user budget") {
  std::vector<JobRequest> reqs;
  for (int i = 0; i < 26; ++i) reqs.push_back(make_req(i, 0.01, 1.0));
  CHECK_THROWS_AS(optimal_multi_resource(reqs, 1), OracleBudgetError);
  reqs.pop_back();
  CHECK_NOTHROW(optimal_multi_resource(reqs, 1));
}

TEST_CASE("multi-slot oracle: deadline stretch enables packing") {
  JobRequest a = make_req(1, 0.6, 1.0, 0, 1);
  JobRequest b = make_req(2, 0.6, 2.0, 0, 1);
  OracleConfig cfg;
  cfg.horizon = 2;

  cfg.lambda = 1.0;  // both windows collapse to slot 0
  OracleSolution tight = optimal_multi_slot({a, b}, cfg);
  CHECK(tight.welfare_opt == doctest::Approx(2.0).epsilon(1e-12));
  CHECK(tight.chosen == std::vector<int>{1});

  cfg.lambda = 2.0;  // windows cover both slots; both users fit
  OracleSolution loose = optimal_multi_slot({a, b}, cfg);
  CHECK(loose.welfare_opt == doctest::Approx(3.0).epsilon(1e-12));
  CHECK(loose.chosen == std::vector<int>{0, 1});
  CHECK(loose.feasible);
}

TEST_CASE("multi-slot oracle: spanning job displaces a slot-hog") {
  // B needs both slots at 0.5; A fits beside it only in slot 1.
  JobRequest a = make_req(1, 0.6, 1.0, 0, 1);
  JobRequest b = make_req(2, 0.5, 2.0, 0, 2);
  OracleConfig cfg;
  cfg.horizon = 2;
  cfg.lambda = 2.0;  // A's window becomes [0, 1]
  OracleSolution sol = optimal_multi_slot({a, b}, cfg);
  CHECK(sol.welfare_opt == doctest::Approx(2.0).epsilon(1e-12));
  CHECK(sol.chosen == std::vector<int>{1});

  a.demands = {0.5};  // now A shares a slot with B
  OracleSolution both = optimal_multi_slot({a, b}, cfg);
  CHECK(both.welfare_opt == doctest::Approx(3.0).epsilon(1e-12));
}

TEST_CASE("multi-slot oracle: budgets") {
  OracleConfig cfg;
  cfg.horizon = 31;
  CHECK_THROWS_AS(optimal_multi_slot({}, cfg), OracleBudgetError);

  cfg.horizon = 30;
  std::vector<JobRequest> many;
  for (int i = 0; i < 16; ++i) many.push_back(make_req(i, 0.01, 1.0, 0, 1));
  CHECK_THROWS_AS(optimal_multi_slot(many, cfg), OracleBudgetError);
  many.pop_back();
  CHECK_NOTHROW(optimal_multi_slot(many, cfg));

  CHECK_THROWS_AS(optimal_multi_slot({make_req(1, 0.1, 1.0, 0, 11)}, cfg),
                  OracleBudgetError);  // stretched window exceeds the cap
}

TEST_CASE("multi-slot oracle matches unpruned exhaustive search") {
  Rng rng(7);
  for (int trial = 0; trial < 100; ++trial) {
    OracleConfig cfg;
    cfg.horizon = rng.uniform_int(2, 5);
    cfg.num_resources = rng.uniform_int(1, 2);
    cfg.lambda = 1.0 + 0.3 * rng.uniform_int(0, 2);
    SmallRandomConfig gen;
    gen.num_users = rng.uniform_int(2, 6);
    gen.num_resources = cfg.num_resources;
    gen.horizon = cfg.horizon;
    gen.lambda = cfg.lambda;
    gen.max_slot_count = std::min(2, cfg.horizon);
    gen.max_demand = 0.6;
    gen.seed = 1000 + trial;
    std::vector<JobRequest> reqs = gen_small_random(gen);
    OracleSolution sol = optimal_multi_slot(reqs, cfg);
    CHECK(welfare_close(sol.welfare_opt, brute_multi_slot(reqs, cfg)));
    CHECK(sol.feasible);
  }
}

TEST_CASE("solution verification rejects corrupted solutions") {
  std::vector<JobRequest> reqs = {make_req(1, 0.4, 1.0, 0, 2),
                                  make_req(2, 0.5, 2.0, 1, 1)};
  OracleConfig cfg;
  cfg.horizon = 4;
  cfg.lambda = 1.5;
  OracleSolution sol = optimal_multi_slot(reqs, cfg);
  REQUIRE(sol.feasible);
  REQUIRE(verify_solution(reqs, sol, cfg));

  OracleSolution wrong_welfare = sol;
  wrong_welfare.welfare_opt += 0.5;
  CHECK(!verify_solution(reqs, wrong_welfare, cfg));

  OracleSolution dup = sol;
  REQUIRE(!dup.schedules.empty());
  REQUIRE(dup.schedules[0].size() == 2);
  dup.schedules[0][1] = dup.schedules[0][0];
  CHECK(!verify_solution(reqs, dup, cfg));

  OracleSolution outside = sol;
  outside.schedules[0] = {2, 3};  // slot 3 is past the stretched deadline
  CHECK(!verify_solution(reqs, outside, cfg));

  OracleSolution repeat = sol;
  repeat.chosen.push_back(repeat.chosen[0]);
  repeat.schedules.push_back(repeat.schedules[0]);
  CHECK(!verify_solution(reqs, repeat, cfg));

  // Over-capacity packing: two 0.6 users in the same slot.
  std::vector<JobRequest> heavy = {make_req(1, 0.6, 1.0), make_req(2, 0.6, 1.0)};
  OracleSolution packed;
  packed.chosen = {0, 1};
  packed.schedules = {{0}, {0}};
  packed.welfare_opt = 2.0;
  OracleConfig one;
  CHECK(!verify_solution(heavy, packed, one));
}

TEST_CASE("offline optimum dominates the online run") {
  Rng rng(31);
  for (int trial = 0; trial < 40; ++trial) {
    OracleConfig cfg;
    cfg.horizon = rng.uniform_int(2, 5);
    cfg.lambda = 1.2;
    SmallRandomConfig gen;
    gen.num_users = rng.uniform_int(4, 8);
    gen.horizon = cfg.horizon;
    gen.lambda = cfg.lambda;
    gen.max_slot_count = 2;
    gen.max_demand = 0.5;
    gen.seed = 500 + trial;
    std::vector<JobRequest> reqs = gen_small_random(gen);

    RunConfig run;
    run.horizon = cfg.horizon;
    run.lambda = cfg.lambda;
    run.params = {PricingParams::from_gamma(10.0, 0.5)};
    Trace t = run_sequence(reqs, run);
    OracleSolution sol = optimal_multi_slot(reqs, cfg);
    CHECK(sol.welfare_opt >= t.welfare_online - 1e-9);
  }

  // A concrete case where hindsight strictly beats the posted price.
  std::vector<JobRequest> reqs = {make_req(1, 0.6, 0.7), make_req(2, 0.6, 6.0)};
  RunConfig run;
  run.params = {PricingParams::from_gamma(10.0, 1.0)};
  Trace t = run_sequence(reqs, run);
  CHECK(t.decisions[0].accepted);  // the cheap user got there first
  CHECK(t.decisions[1].outcome == Outcome::Infeasible);
  OracleSolution sol = optimal_basic(reqs, 0.1);
  CHECK(sol.welfare_opt == 6.0);
  CHECK(sol.welfare_opt > t.welfare_online);
}
