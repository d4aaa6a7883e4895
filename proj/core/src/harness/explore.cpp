#include "listlab/harness/explore.hpp"

#include <memory>
#include <unordered_set>

#include "listlab/errors.hpp"
#include "listlab/harness/linearize.hpp"

namespace listlab::harness {

namespace {
constexpr std::size_t kMaxReported = 64;
}

ExploreReport explore_all(const ExploreConfig& config,
                          const std::function<void(const ExecutionHistory&)>& on_terminal) {
  ExploreReport report;
  auto record = [&](const ExecutionHistory& h, std::string reason) {
    if (report.violations.size() < kMaxReported) {
      report.violations.push_back({h.schedule, std::move(reason)});
    }
  };

  std::unordered_set<std::string> visited;
  std::vector<std::unique_ptr<Execution>> stack;
  auto root = std::make_unique<Execution>(config.workload, config.run);
  root->history().spec.kind = ScheduleKind::kExplicit;
  std::string key;
  root->encode(key);
  visited.insert(key);
  report.states = 1;
  stack.push_back(std::move(root));
  const auto p = config.workload.processes();

  while (!stack.empty()) {
    auto ex = std::move(stack.back());
    stack.pop_back();
    report.max_depth = std::max(report.max_depth, ex->steps());
    const bool done = ex->finished();
    if (done || ex->steps() >= config.run.step_bound) {
      ex->close();
      auto& h = ex->history();
      h.spec.steps = h.schedule;
      if (done) {
        ++report.terminals;
      } else {
        ++report.bounded;
      }
      for (const auto& v : h.violations) record(h, v.rule + ": " + v.detail);
      if (done && h.violations.empty()) {
        const auto lin = check_linearizable(h);
        if (!lin.ok()) record(h, "linearizability: " + lin.counterexample->reason);
      }
      if (on_terminal) on_terminal(h);
      continue;
    }
    for (std::size_t q = p; q-- > 0;) {
      if (!ex->active(q)) continue;
      auto child = std::make_unique<Execution>(*ex);
      child->step(q);
      key.clear();
      child->encode(key);
      if (!visited.insert(key).second) {
        ++report.pruned;
        continue;
      }
      if (++report.states > config.max_states) {
        throw BudgetExceeded("exploration exceeded " + std::to_string(config.max_states) +
                             " states");
      }
      stack.push_back(std::move(child));
    }
  }
  return report;
}

}  // namespace listlab::harness
