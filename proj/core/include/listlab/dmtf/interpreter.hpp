#pragma once

#include <nlohmann/json.hpp>
#include <string>
#include <vector>

#include "listlab/dmtf/machine.hpp"
#include "listlab/dmtf/snapshot.hpp"
#include "listlab/dmtf/types.hpp"

namespace listlab::dmtf {

// Shared memory for the single-threaded interpreter. Every access is checked
// against the field-transition and announcement rules and reported to the
// observer, if any.
class InterpMemory {
 public:
  InterpMemory() = default;
  InterpMemory(const std::vector<ItemId>& items, std::size_t processes);

  NodeRef allocate(std::size_t proc, ItemId item);
  ItemId read_item(std::size_t proc, Line line, NodeRef node);
  NodeRef read(std::size_t proc, Line line, NodeRef node, Field field);
  NodeRef cas(std::size_t proc, Line line, NodeRef node, Field field, NodeRef expected,
              NodeRef desired);
  HeadPair read_head(std::size_t proc, Line line);
  HeadPair cas_head(std::size_t proc, Line line, HeadPair expected, HeadPair desired);
  Announcement read_ann(std::size_t proc, Line line, std::size_t slot);
  Announcement cas_ann(std::size_t proc, Line line, std::size_t slot, Announcement expected,
                       Announcement desired);

  void set_observer(Observer* obs) { observer_ = obs; }
  const std::vector<Violation>& violations() const { return violations_; }
  const SharedSnapshot& snapshot() const { return state_; }
  // Raw access for tests that corrupt state on purpose.
  SharedSnapshot& mutable_snapshot() { return state_; }

  // Canonical byte encoding of the shared state, for hashing.
  void encode(std::string& out) const;

 private:
  NodeRecord* node_at(std::size_t proc, Line line, NodeRef node);
  NodeRef& field_ref(NodeRecord& n, Field f);
  void violate(std::string rule, std::string detail);
  void check_node_transition(std::size_t proc, Line line, NodeRef node, Field field, NodeRef from,
                             NodeRef to);
  void check_ann_transition(std::size_t proc, std::size_t slot, Announcement from,
                            Announcement to);
  void report(const AccessRecord& rec);

  SharedSnapshot state_;
  std::vector<bool> removed_;  // node unlinked by a successful remove
  std::vector<std::size_t> owner_;  // allocating process, or SIZE_MAX for initial nodes
  std::vector<Violation> violations_;
  Observer* observer_ = nullptr;
};

struct StepOutcome {
  bool idle = false;  // the process had no pending search; nothing happened
  StepResult result;
};

// The DMTF shared state plus one program per process.
class DmtfInterpreter {
 public:
  // Throws std::invalid_argument with fewer than two distinct items, p < 1 or
  // phi < 1.
  DmtfInterpreter(const std::vector<ItemId>& items, MachineConfig config);

  std::size_t processes() const { return config_.processes; }
  const MachineConfig& config() const { return config_; }

  // Starts SEARCH(item) on an idle process. Throws std::logic_error if the
  // process is busy.
  void invoke(std::size_t process, ItemId item);
  StepOutcome step(std::size_t process);
  bool idle(std::size_t process) const { return programs_.at(process).idle(); }
  bool quiescent() const;

  const ProcessProgram& program(std::size_t process) const { return programs_.at(process); }
  const InterpMemory& memory() const { return memory_; }
  InterpMemory& memory() { return memory_; }
  const SharedSnapshot& snapshot() const { return memory_.snapshot(); }
  void set_observer(Observer* obs) { memory_.set_observer(obs); }

  // Runs SEARCH(item) on `process` alone until it returns.
  NodeRef run_to_completion(std::size_t process, ItemId item);

  nlohmann::json to_json() const;
  void encode(std::string& out) const;

 private:
  MachineConfig config_;
  InterpMemory memory_;
  std::vector<ProcessProgram> programs_;
};

nlohmann::json to_json(const ProcessProgram& pp);
nlohmann::json to_json(const SharedSnapshot& s);

}  // namespace listlab::dmtf
