#pragma once

#include <memory>
#include <string>
#include <vector>

#include "listlab/dmtf/interpreter.hpp"
#include "listlab/harness/history.hpp"
#include "listlab/harness/schedule.hpp"

namespace listlab::harness {

struct RunConfig {
  std::uint32_t phi = 1;
  dmtf::Faults faults;
  std::size_t step_bound = 1'000'000;
  // Run the anytime snapshot checks after every step.
  bool check_invariants = true;
};

// One execution in progress: interpreter, request cursors and the history so
// far. Copyable, so explorers can branch from any prefix.
class Execution {
 public:
  Execution(const Workload& workload, const RunConfig& config);
  Execution(const Execution& other);
  ~Execution();
  Execution& operator=(const Execution& other);
  Execution(Execution&&) = delete;
  Execution& operator=(Execution&&) = delete;

  std::vector<ProcessStatus> status() const;
  bool active(std::size_t process) const;
  bool finished() const;
  std::size_t steps() const { return history_.steps; }

  // Invokes the next request first if the process is idle. A process with no
  // work left is a no-op and is not recorded.
  void step(std::size_t process);

  // Marks completion and runs the quiescent checks when finished.
  void close();

  const ExecutionHistory& history() const { return history_; }
  ExecutionHistory& history() { return history_; }
  const dmtf::DmtfInterpreter& interpreter() const { return interp_; }

  // State for deduplication: shared memory, programs, request cursors and the
  // linearizability facts a future response can still depend on. Histories
  // with equal keys have the same futures and the same verdicts.
  void encode(std::string& out) const;

 private:
  class Recorder;
  void on_prepend(NodeRef node);
  void add_violation(dmtf::Violation v);

  RunConfig config_;
  dmtf::DmtfInterpreter interp_;
  ExecutionHistory history_;
  std::vector<std::size_t> next_request_;
  std::vector<std::size_t> current_op_;
  // Online summary per process: front node at invocation and nodes
  // prepended since, for the pending search.
  std::vector<NodeRef> front_at_invoke_;
  std::vector<std::vector<NodeRef>> prepended_since_;
  std::vector<NodeRef> uncovered_;  // prepends no completed search accounts for
  std::size_t seen_violations_ = 0;
  std::unique_ptr<Recorder> recorder_;
};

// Drives the interpreter under the schedule until every request responds, the
// schedule ends, or the step bound is hit.
ExecutionHistory run(const Workload& workload, const ScheduleSpec& schedule,
                     const RunConfig& config = {});

}  // namespace listlab::harness
