#pragma once

#include <functional>
#include <string>
#include <vector>

#include "listlab/harness/history.hpp"
#include "listlab/harness/runner.hpp"

namespace listlab::harness {

struct ExploreConfig {
  Workload workload;
  RunConfig run;
  std::size_t max_states = 2'000'000;
};

struct ExploreViolation {
  std::vector<std::size_t> schedule;
  std::string reason;
};

struct ExploreReport {
  std::size_t states = 0;     // distinct states visited
  std::size_t terminals = 0;  // distinct terminal states (schedule classes)
  std::size_t pruned = 0;     // transitions into an already visited state
  std::size_t bounded = 0;    // paths cut by the step bound
  std::size_t max_depth = 0;
  std::vector<ExploreViolation> violations;
  bool passed() const { return violations.empty(); }
};

// Depth-first search over every interleaving of the workload, one step of one
// process per edge, deduplicated by Execution::encode. Each terminal history
// is checked for linearizability and handed to `on_terminal`. Throws
// BudgetExceeded past max_states.
ExploreReport explore_all(const ExploreConfig& config,
                          const std::function<void(const ExecutionHistory&)>& on_terminal = {});

}  // namespace listlab::harness
