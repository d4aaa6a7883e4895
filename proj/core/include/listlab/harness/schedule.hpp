#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

namespace listlab::harness {

enum class ScheduleKind {
  kExplicit,      // the listed process ids, then stop
  kRoundRobin,    // cycle over processes with work left
  kRandom,        // uniform over processes with work left, mt19937_64(seed)
  kSequential,    // each operation runs to completion, processes in turn
  kSynchronized,  // waves: every process with work invokes, round robin until all respond
  kBatches,       // explicit waves given as groups of process ids
  kMergeOrder,    // one operation at a time in the listed process order
};

struct ScheduleSpec {
  ScheduleKind kind = ScheduleKind::kRoundRobin;
  std::vector<std::size_t> steps;                // kExplicit
  std::uint64_t seed = 0;                        // kRandom
  std::vector<std::vector<std::size_t>> groups;  // kBatches
  std::vector<std::size_t> order;                // kMergeOrder
  friend bool operator==(const ScheduleSpec&, const ScheduleSpec&) = default;
};

std::string_view schedule_kind_name(ScheduleKind k);

// Accepts a bare array of process ids (explicit) or an object with "kind".
// Throws std::invalid_argument on malformed input.
ScheduleSpec schedule_from_json(const nlohmann::json& j);
nlohmann::json to_json(const ScheduleSpec& s);

struct ProcessStatus {
  bool busy = false;          // a search is in progress
  std::size_t remaining = 0;  // requests not yet invoked
  bool active() const { return busy || remaining > 0; }
};

// Produces the next process to step. Stateful; one instance per run.
class Scheduler {
 public:
  Scheduler(ScheduleSpec spec, std::size_t processes);

  // nullopt ends the run. The returned process may be inactive (explicit
  // schedules only); stepping it is a no-op.
  std::optional<std::size_t> next(const std::vector<ProcessStatus>& status);

 private:
  std::optional<std::size_t> round_robin(const std::vector<ProcessStatus>& status,
                                         const std::vector<bool>& eligible);
  std::optional<std::size_t> wave(const std::vector<ProcessStatus>& status);

  ScheduleSpec spec_;
  std::size_t processes_;
  std::size_t cursor_ = 0;
  std::size_t pos_ = 0;
  std::optional<std::size_t> current_;
  std::mt19937_64 rng_;
  // Wave schedules: members of the current wave and whether each has invoked.
  std::vector<bool> in_wave_;
  std::vector<bool> invoked_;
  bool wave_open_ = false;
};

}  // namespace listlab::harness
