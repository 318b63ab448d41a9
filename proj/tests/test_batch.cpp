#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>
#include <stdexcept>
#include <vector>

#include "cloudmarket/batch.hpp"
#include "cloudmarket/experiment.hpp"
#include "doctest.h"

using namespace cloudmarket;

TEST_CASE("for_each_index covers every index exactly once in both modes") {
  for (ExecMode mode : {ExecMode::Serial, ExecMode::Parallel}) {
    std::vector<int> hits(257, 0);
    for_each_index(257, mode, [&](int i) { hits[i] += 1; });
    for (int h : hits) CHECK(h == 1);
  }
}

TEST_CASE("per-slot results are identical across modes") {
  auto fill = [](ExecMode mode) {
    std::vector<double> out(100);
    for_each_index(100, mode, [&](int i) {
      out[i] = std::sin(0.1 * i) * std::exp(-0.01 * i);
    });
    return out;
  };
  std::vector<double> serial = fill(ExecMode::Serial);
  std::vector<double> parallel = fill(ExecMode::Parallel);
  CHECK(serial == parallel);  // bitwise: slots are written, never reduced
}

TEST_CASE("empty and negative ranges run nothing") {
  int calls = 0;
  for_each_index(0, ExecMode::Serial, [&](int) { ++calls; });
  for_each_index(-5, ExecMode::Parallel, [&](int) { ++calls; });
  CHECK(calls == 0);
}

TEST_CASE("exceptions from loop bodies are rethrown") {
  for (ExecMode mode : {ExecMode::Serial, ExecMode::Parallel}) {
    CHECK_THROWS_AS(for_each_index(64, mode,
                                   [&](int i) {
                                     if (i == 7)
                                       throw std::runtime_error("boom");
                                   }),
                    std::runtime_error);
  }
}

TEST_CASE("thread count is reported") { CHECK(max_threads() >= 1); }

TEST_CASE("cell evaluation sums match across modes") {
  DeskScenario sc;
  sc.users = 12;
  sc.horizon = 8;
  sc.num_resources = 1;
  sc.max_slot_count = 2;
  sc.relative_demand = 1.5;
  sc.seed = 7;
  CellStats serial = eval_cell(sc, 16, ExecMode::Serial, true);
  CellStats parallel = eval_cell(sc, 16, ExecMode::Parallel, true);
  CHECK(serial.v_ol == parallel.v_ol);  // bitwise equality
  CHECK(serial.v_opt == parallel.v_opt);
  CHECK(serial.ratio == parallel.ratio);
  CHECK(serial.solved);
  CHECK(parallel.solved);
  CHECK(serial.v_opt >= serial.v_ol - 1e-9);
}
