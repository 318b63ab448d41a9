// Times the trial-evaluation loop in serial and OpenMP mode on the same
// scenario and checks that both produce bitwise-identical sums.
#include <cstdio>
#include <cstdlib>

#include "cloudmarket/batch.hpp"
#include "cloudmarket/experiment.hpp"

using namespace cloudmarket;

int main(int argc, char** argv) {
  int trials = argc > 1 ? std::atoi(argv[1]) : 64;
  DeskScenario sc;
  sc.users = 12;
  sc.horizon = 16;
  sc.num_resources = 2;
  sc.relative_demand = 1.5;
  sc.seed = 7;

  std::printf("threads: %d, trials: %d\n", max_threads(), trials);
  CellStats serial = eval_cell(sc, trials, ExecMode::Serial, true);
  CellStats parallel = eval_cell(sc, trials, ExecMode::Parallel, true);

  std::printf("serial:   %9.2f ms  v_ol=%.17g  v_opt=%.17g\n",
              serial.runtime_ms, serial.v_ol, serial.v_opt);
  std::printf("parallel: %9.2f ms  v_ol=%.17g  v_opt=%.17g\n",
              parallel.runtime_ms, parallel.v_ol, parallel.v_opt);

  bool identical =
      serial.v_ol == parallel.v_ol && serial.v_opt == parallel.v_opt;
  std::printf("speedup:  %.2fx, results %s\n",
              serial.runtime_ms / parallel.runtime_ms,
              identical ? "identical" : "DIFFER");
  return identical ? 0 : 1;
}
