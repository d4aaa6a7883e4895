#include "listlab/dmtf/snapshot.hpp"

#include <algorithm>
#include <unordered_set>

namespace listlab::dmtf {

std::vector<NodeRef> list_nodes(const SharedSnapshot& s) {
  std::vector<NodeRef> out;
  std::vector<bool> seen(s.nodes.size(), false);
  NodeRef cur = s.head.first;
  while (is_node(cur) && cur < s.nodes.size() && !seen[cur]) {
    seen[cur] = true;
    out.push_back(cur);
    cur = s.nodes[cur].next;
  }
  return out;
}

std::vector<ItemId> list_items(const SharedSnapshot& s) {
  std::vector<ItemId> out;
  for (NodeRef n : list_nodes(s)) out.push_back(s.nodes[n].item);
  return out;
}

std::vector<Violation> snapshot_invariants(const SharedSnapshot& s, bool quiescent) {
  std::vector<Violation> v;
  auto add = [&](std::string rule, std::string detail) {
    v.push_back({std::move(rule), std::move(detail)});
  };
  const auto n = s.nodes.size();

  for (std::size_t u = 0; u < n; ++u) {
    const auto& node = s.nodes[u];
    if (u < s.prepend_count.size() && s.prepend_count[u] > 1) {
      add("prepended-once", "node " + std::to_string(u) + " prepended " +
                                std::to_string(s.prepend_count[u]) + " times");
    }
    if (is_node(node.nw)) {
      if (node.nw >= n) {
        add("handle-range", "node " + std::to_string(u) + " new points outside the arena");
      } else {
        const auto back = s.nodes[node.nw].old;
        if (back != u && back != kDone) {
          add("new-old-backref", "node " + std::to_string(u) + ".new = " + ref_name(node.nw) +
                                     " but its old = " + ref_name(back));
        }
        if (s.nodes[node.nw].item != node.item) {
          add("new-same-item", "node " + std::to_string(u) + " replaced by a different item");
        }
      }
    }
    const bool ever_listed =
        (u < s.initially_listed.size() && s.initially_listed[u]) ||
        (u < s.prepend_count.size() && s.prepend_count[u] > 0);
    if (!ever_listed) {
      if (node.old == kDone) {
        add("unlisted-fields", "node " + std::to_string(u) + " never listed but old = DONE");
      }
      if (node.nw != kNull) {
        add("unlisted-fields", "node " + std::to_string(u) + " never listed but new = " +
                                   ref_name(node.nw));
      }
    }
  }

  if (!quiescent) return v;

  const auto nodes = list_nodes(s);
  if (!nodes.empty() && is_node(s.nodes[nodes.back()].next)) {
    add("list-acyclic", "next pointers revisit a node");
  }
  std::unordered_set<ItemId> present;
  for (std::size_t k = 0; k < nodes.size(); ++k) {
    const auto& node = s.nodes[nodes[k]];
    if (!present.insert(node.item).second) {
      add("one-node-per-item", "item " + std::to_string(node.item) + " listed twice");
    }
    if (node.old != kDone) {
      add("listed-old-done", "listed node " + std::to_string(nodes[k]) + " has old = " +
                                 ref_name(node.old));
    }
    const NodeRef expect_prev = k == 0 ? kNull : nodes[k - 1];
    if (node.prev != expect_prev) {
      add("list-well-formed", "node " + std::to_string(nodes[k]) + ".prev = " +
                                  ref_name(node.prev) + ", expected " + ref_name(expect_prev));
    }
  }
  for (ItemId item : s.items) {
    if (!present.contains(item)) {
      add("every-item-listed", "item " + std::to_string(item) + " has no node in the list");
    }
  }
  if (nodes.size() >= 2 && s.head.second != nodes[1]) {
    add("head-pair", "Head.second = " + ref_name(s.head.second) + " but the second node is " +
                         std::to_string(nodes[1]));
  }
  for (std::size_t i = 0; i < s.announcements.size(); ++i) {
    const auto& a = s.announcements[i];
    if (a.node != kNull || a.item != kBottom) {
      add("idle-announcement", "A[" + std::to_string(i) + "] not reset after the search");
    }
  }
  return v;
}

}  // namespace listlab::dmtf
