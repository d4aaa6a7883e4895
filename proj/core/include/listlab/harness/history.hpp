#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "listlab/dmtf/snapshot.hpp"
#include "listlab/dmtf/types.hpp"
#include "listlab/harness/schedule.hpp"

namespace listlab::harness {

using dmtf::ItemId;
using dmtf::NodeRef;

// Initial list (front first) and one request sequence per process.
struct Workload {
  std::vector<ItemId> initial;
  std::vector<std::vector<ItemId>> requests;
  std::size_t processes() const { return requests.size(); }
  friend bool operator==(const Workload&, const Workload&) = default;
};

Workload workload_from_json(const nlohmann::json& j);
nlohmann::json to_json(const Workload& w);

enum class EventKind { kInvoke, kAlloc, kAccess, kRespond };

struct Event {
  EventKind kind = EventKind::kInvoke;
  std::size_t process = 0;
  std::size_t op = 0;
  ItemId item = dmtf::kBottom;  // Invoke, Alloc
  NodeRef node = dmtf::kNull;   // Alloc: new node; Respond: result
  dmtf::AccessRecord access;    // Access
};

struct Operation {
  std::size_t id = 0;
  std::size_t process = 0;
  ItemId item = dmtf::kBottom;
  std::size_t invoke_event = 0;
  std::optional<std::size_t> respond_event;  // empty while pending
  NodeRef result = dmtf::kNull;
  std::int64_t item_reads = 0;
  std::int64_t shared_accesses = 0;
  bool completed() const { return respond_event.has_value(); }
};

struct ExecutionHistory {
  Workload workload;
  std::uint32_t phi = 1;
  ScheduleSpec spec;
  std::vector<std::size_t> schedule;  // processes actually stepped, in order
  std::vector<Event> events;
  std::vector<Operation> ops;
  bool complete = false;  // every request responded
  std::size_t steps = 0;
  std::vector<dmtf::Violation> violations;
  std::vector<ItemId> node_items;  // item of every node, by handle
  std::vector<ItemId> final_list;  // list items at the end of the run

  std::size_t processes() const { return workload.processes(); }
  // kBottom for handles that were never allocated.
  ItemId item_of(NodeRef node) const;
};

nlohmann::json to_json(const Event& e);

// Header record, one record per event, trailer record.
void write_ndjson(const ExecutionHistory& h, std::ostream& out);
std::string to_ndjson(const ExecutionHistory& h);

}  // namespace listlab::harness
