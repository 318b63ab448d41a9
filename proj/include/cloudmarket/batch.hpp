#pragma once

#include <functional>

namespace cloudmarket {

// Execution mode for embarrassingly parallel evaluation loops (independent
// trials, sweep cells). Serial is the reference path; Parallel runs the same
// loop under OpenMP. Bodies must write only to their own index's slot; all
// reductions happen after the loop, so both modes produce identical bytes.
enum class ExecMode { Serial, Parallel };

// Runs fn(0) .. fn(n-1). In Parallel mode iterations may run on any thread
// in any order; exceptions are captured and the first one is rethrown after
// the loop completes.
void for_each_index(int n, ExecMode mode, const std::function<void(int)>& fn);

int max_threads();

}  // namespace cloudmarket
