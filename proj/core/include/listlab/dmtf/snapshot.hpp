#pragma once

#include <string>
#include <vector>

#include "listlab/dmtf/types.hpp"

namespace listlab::dmtf {

struct NodeRecord {
  ItemId item = kBottom;
  NodeRef next = kNull;
  NodeRef prev = kNull;
  NodeRef old = kNull;
  NodeRef nw = kNull;  // the `new` field
  friend bool operator==(const NodeRecord&, const NodeRecord&) = default;
};

// A copy of every shared cell plus bookkeeping the invariants need.
struct SharedSnapshot {
  std::vector<NodeRecord> nodes;
  HeadPair head;
  std::vector<Announcement> announcements;
  std::vector<std::uint32_t> prepend_count;  // successful prepends per node
  std::vector<bool> initially_listed;
  std::vector<ItemId> items;                  // the static set
};

struct Violation {
  std::string rule;
  std::string detail;
};

// Checks that hold in every reachable state: no node prepended twice, the
// new -> old back-reference, and untouched fields of nodes that never joined
// the list. With `quiescent` set (no search in progress), additionally checks
// the list shape: well-formed, one node per item, Head names the first two
// nodes, every listed node has old = DONE, and every announcement is idle.
std::vector<Violation> snapshot_invariants(const SharedSnapshot& s, bool quiescent);

// Items from the first node along next pointers. Stops at a repeated node.
std::vector<ItemId> list_items(const SharedSnapshot& s);
std::vector<NodeRef> list_nodes(const SharedSnapshot& s);

}  // namespace listlab::dmtf
