#include "listlab/dmtf/interpreter.hpp"

#include <cstring>
#include <limits>
#include <set>
#include <stdexcept>

namespace listlab::dmtf {

namespace {

constexpr std::size_t kNoOwner = std::numeric_limits<std::size_t>::max();

template <class T>
void put(std::string& out, T v) {
  char buf[sizeof(T)];
  std::memcpy(buf, &v, sizeof(T));
  out.append(buf, sizeof(T));
}

}  // namespace

InterpMemory::InterpMemory(const std::vector<ItemId>& items, std::size_t processes) {
  const auto n = items.size();
  state_.items = items;
  state_.nodes.resize(n);
  for (std::size_t k = 0; k < n; ++k) {
    auto& node = state_.nodes[k];
    node.item = items[k];
    node.next = k + 1 < n ? static_cast<NodeRef>(k + 1) : kNull;
    node.prev = k > 0 ? static_cast<NodeRef>(k - 1) : kNull;
    node.old = kDone;
    node.nw = kNull;
  }
  state_.head = {0, n > 1 ? NodeRef{1} : kNull};
  state_.announcements.assign(processes, Announcement{});
  state_.prepend_count.assign(n, 0);
  state_.initially_listed.assign(n, true);
  removed_.assign(n, false);
  owner_.assign(n, kNoOwner);
}

void InterpMemory::violate(std::string rule, std::string detail) {
  violations_.push_back({std::move(rule), std::move(detail)});
}

void InterpMemory::report(const AccessRecord& rec) {
  if (observer_ != nullptr) observer_->on_access(rec);
}

NodeRecord* InterpMemory::node_at(std::size_t proc, Line line, NodeRef node) {
  if (!is_node(node) || node >= state_.nodes.size()) {
    violate("valid-handle", "p" + std::to_string(proc) + " at " + std::string(line_name(line)) +
                                " dereferenced " + ref_name(node));
    return nullptr;
  }
  return &state_.nodes[node];
}

NodeRef& InterpMemory::field_ref(NodeRecord& n, Field f) {
  switch (f) {
    case Field::kNext: return n.next;
    case Field::kPrev: return n.prev;
    case Field::kOld: return n.old;
    case Field::kNew: return n.nw;
    case Field::kItem: break;
  }
  throw std::invalid_argument("item is not a pointer field");
}

NodeRef InterpMemory::allocate(std::size_t proc, ItemId item) {
  const auto id = static_cast<NodeRef>(state_.nodes.size());
  if (!is_node(id)) throw std::length_error("node arena exhausted");
  state_.nodes.push_back(NodeRecord{item, kNull, kNull, kNull, kNull});
  state_.prepend_count.push_back(0);
  state_.initially_listed.push_back(false);
  removed_.push_back(false);
  owner_.push_back(proc);
  if (observer_ != nullptr) observer_->on_alloc(proc, id, item);
  return id;
}

ItemId InterpMemory::read_item(std::size_t proc, Line line, NodeRef node) {
  NodeRecord* n = node_at(proc, line, node);
  const ItemId v = n != nullptr ? n->item : kBottom;
  AccessRecord rec;
  rec.process = proc;
  rec.line = line;
  rec.node = node;
  rec.field = Field::kItem;
  rec.observed = v;
  report(rec);
  return v;
}

NodeRef InterpMemory::read(std::size_t proc, Line line, NodeRef node, Field field) {
  NodeRecord* n = node_at(proc, line, node);
  const NodeRef v = n != nullptr ? field_ref(*n, field) : kNull;
  AccessRecord rec;
  rec.process = proc;
  rec.line = line;
  rec.node = node;
  rec.field = field;
  rec.observed = v;
  report(rec);
  return v;
}

void InterpMemory::check_node_transition(std::size_t proc, Line line, NodeRef node, Field field,
                                         NodeRef from, NodeRef to) {
  const auto where = "p" + std::to_string(proc) + " at " + std::string(line_name(line)) +
                     " on node " + std::to_string(node);
  const auto& target = state_.nodes[node];
  auto same_item = [&](NodeRef other) {
    return other < state_.nodes.size() && state_.nodes[other].item == target.item;
  };
  if (field == Field::kOld) {
    const bool ok = (from == kNull && is_node(to) && same_item(to) && owner_[node] == proc) ||
                    (is_node(from) && to == kDone);
    if (!ok) violate("old-transition", where + ": " + ref_name(from) + " -> " + ref_name(to));
  } else if (field == Field::kNew) {
    const bool ok = (from == kNull && is_node(to) && same_item(to)) ||
                    (is_node(from) && to == kGone);
    if (!ok) violate("new-transition", where + ": " + ref_name(from) + " -> " + ref_name(to));
  } else if (removed_[node]) {
    violate("removed-links-frozen", where + ": " + std::string(field_name(field)) +
                                        " rewritten after removal");
  }
  if (line == Line::kRemove1 && field == Field::kNext && is_node(from)) {
    const NodeRef front = state_.head.first;
    if (!is_node(front) || front >= state_.nodes.size() || state_.nodes[front].old != from) {
      violate("remove-old-of-front", where + ": removed " + ref_name(from) +
                                         " which is not the front node's old");
    }
    if (from < removed_.size()) removed_[from] = true;
  }
}

NodeRef InterpMemory::cas(std::size_t proc, Line line, NodeRef node, Field field,
                          NodeRef expected, NodeRef desired) {
  NodeRecord* n = node_at(proc, line, node);
  NodeRef prior = kNull;
  bool success = false;
  if (n != nullptr) {
    NodeRef& cell = field_ref(*n, field);
    prior = cell;
    success = prior == expected;
    if (success) {
      check_node_transition(proc, line, node, field, prior, desired);
      field_ref(state_.nodes[node], field) = desired;
    }
  }
  AccessRecord rec;
  rec.process = proc;
  rec.line = line;
  rec.node = node;
  rec.field = field;
  rec.kind = AccessKind::kCas;
  rec.expected = expected;
  rec.desired = desired;
  rec.observed = prior;
  rec.success = success;
  report(rec);
  return prior;
}

HeadPair InterpMemory::read_head(std::size_t proc, Line line) {
  AccessRecord rec;
  rec.process = proc;
  rec.line = line;
  rec.cell = CellKind::kHead;
  rec.observed = pack(state_.head);
  report(rec);
  return state_.head;
}

HeadPair InterpMemory::cas_head(std::size_t proc, Line line, HeadPair expected,
                                HeadPair desired) {
  const HeadPair prior = state_.head;
  const bool success = prior == expected;
  if (success) {
    if (desired.first != prior.first) {
      const auto where = "p" + std::to_string(proc) + " at " + std::string(line_name(line));
      if (!is_node(desired.first) || desired.first >= state_.nodes.size()) {
        violate("valid-handle", where + ": Head set to " + ref_name(desired.first));
      } else {
        if (is_node(prior.first) && prior.first < state_.nodes.size() &&
            state_.nodes[prior.first].old != kDone) {
          violate("prepend-after-insert", where + ": front node " +
                                              std::to_string(prior.first) +
                                              " still being inserted");
        }
        if (desired.second != prior.first) {
          violate("head-pair", where + ": new second is not the old first");
        }
        if (++state_.prepend_count[desired.first] > 1) {
          violate("prepended-once", where + ": node " + std::to_string(desired.first) +
                                        " prepended again");
        }
      }
    }
    state_.head = desired;
  }
  AccessRecord rec;
  rec.process = proc;
  rec.line = line;
  rec.cell = CellKind::kHead;
  rec.kind = AccessKind::kCas;
  rec.expected = pack(expected);
  rec.desired = pack(desired);
  rec.observed = pack(prior);
  rec.success = success;
  report(rec);
  return prior;
}

Announcement InterpMemory::read_ann(std::size_t proc, Line line, std::size_t slot) {
  const Announcement v = state_.announcements.at(slot);
  AccessRecord rec;
  rec.process = proc;
  rec.line = line;
  rec.cell = CellKind::kAnnouncement;
  rec.slot = slot;
  rec.observed = pack(v);
  report(rec);
  return v;
}

void InterpMemory::check_ann_transition(std::size_t proc, std::size_t slot, Announcement from,
                                        Announcement to) {
  const Announcement idle{};
  const auto where = "p" + std::to_string(proc) + " on A[" + std::to_string(slot) + "]";
  bool ok = false;
  if (to == idle) {
    ok = proc == slot;  // only the owner resets its announcement
  } else if (from == idle) {
    ok = proc == slot && to.item != kBottom && is_node(to.node) &&
         to.node < owner_.size() && owner_[to.node] == proc;
  } else if (from.item != kBottom && to.item == kBottom) {
    ok = is_node(to.node) && to.node < state_.nodes.size() &&
         state_.nodes[to.node].item == from.item;
  }
  if (!ok) {
    violate("announcement-transition",
            where + ": (" + ref_name(from.node) + "," + std::to_string(from.item) + ") -> (" +
                ref_name(to.node) + "," + std::to_string(to.item) + ")");
  }
}

Announcement InterpMemory::cas_ann(std::size_t proc, Line line, std::size_t slot,
                                   Announcement expected, Announcement desired) {
  Announcement& cell = state_.announcements.at(slot);
  const Announcement prior = cell;
  const bool success = prior == expected;
  if (success) {
    if (!(prior == desired)) check_ann_transition(proc, slot, prior, desired);
    cell = desired;
  }
  AccessRecord rec;
  rec.process = proc;
  rec.line = line;
  rec.cell = CellKind::kAnnouncement;
  rec.slot = slot;
  rec.kind = AccessKind::kCas;
  rec.expected = pack(expected);
  rec.desired = pack(desired);
  rec.observed = pack(prior);
  rec.success = success;
  report(rec);
  return prior;
}

void InterpMemory::encode(std::string& out) const {
  put(out, static_cast<std::uint32_t>(state_.nodes.size()));
  for (const auto& n : state_.nodes) {
    put(out, n.item);
    put(out, n.next);
    put(out, n.prev);
    put(out, n.old);
    put(out, n.nw);
  }
  put(out, pack(state_.head));
  for (const auto& a : state_.announcements) put(out, pack(a));
  for (auto c : state_.prepend_count) put(out, c);
  for (std::size_t k = 0; k < removed_.size(); ++k) out.push_back(removed_[k] ? '\1' : '\0');
  put(out, static_cast<std::uint32_t>(violations_.size()));
}

DmtfInterpreter::DmtfInterpreter(const std::vector<ItemId>& items, MachineConfig config)
    : config_(config) {
  const std::set<ItemId> distinct(items.begin(), items.end());
  if (distinct.size() != items.size()) throw std::invalid_argument("items must be distinct");
  if (items.size() < 2) throw std::invalid_argument("need at least two items");
  if (distinct.contains(kBottom)) throw std::invalid_argument("item 0 is reserved");
  if (config.processes < 1) throw std::invalid_argument("need at least one process");
  if (config.phi < 1) throw std::invalid_argument("phi must be at least 1");
  memory_ = InterpMemory(items, config.processes);
  programs_.assign(config.processes, ProcessProgram{});
}

void DmtfInterpreter::invoke(std::size_t process, ItemId item) {
  auto& pp = programs_.at(process);
  if (!pp.idle()) throw std::logic_error("process " + std::to_string(process) + " is busy");
  if (item == kBottom) throw std::invalid_argument("item 0 is reserved");
  begin_search(pp, item);
}

StepOutcome DmtfInterpreter::step(std::size_t process) {
  auto& pp = programs_.at(process);
  if (pp.idle()) return {true, {}};
  return {false, dmtf::step(memory_, pp, process, config_)};
}

bool DmtfInterpreter::quiescent() const {
  for (const auto& pp : programs_) {
    if (!pp.idle()) return false;
  }
  return true;
}

NodeRef DmtfInterpreter::run_to_completion(std::size_t process, ItemId item) {
  invoke(process, item);
  for (;;) {
    const auto out = step(process);
    if (out.result.returned) return out.result.result;
  }
}

void DmtfInterpreter::encode(std::string& out) const {
  memory_.encode(out);
  for (const auto& pp : programs_) {
    put(out, static_cast<std::uint8_t>(pp.pc));
    put(out, pp.e);
    put(out, pp.g);
    put(out, pp.h);
    put(out, pp.h1);
    put(out, pp.h2);
    put(out, pp.h_old);
    put(out, pp.g_new);
    put(out, pp.pred);
    put(out, pp.succ);
    put(out, pack(pp.ab));
    put(out, pack(pp.mtf_ab));
    put(out, pp.e_front);
    put(out, pp.c);
    put(out, pp.slot);
  }
}

nlohmann::json to_json(const ProcessProgram& pp) {
  return {{"pc", std::string(line_name(pp.pc))},
          {"e", pp.e},
          {"g", ref_name(pp.g)},
          {"h", ref_name(pp.h)},
          {"h1", ref_name(pp.h1)},
          {"h2", ref_name(pp.h2)},
          {"h_old", ref_name(pp.h_old)},
          {"g_new", ref_name(pp.g_new)},
          {"item_reads", pp.item_reads},
          {"shared_accesses", pp.shared_accesses}};
}

nlohmann::json to_json(const SharedSnapshot& s) {
  nlohmann::json nodes = nlohmann::json::array();
  for (std::size_t k = 0; k < s.nodes.size(); ++k) {
    const auto& n = s.nodes[k];
    nodes.push_back({{"id", k},
                     {"item", n.item},
                     {"next", ref_name(n.next)},
                     {"prev", ref_name(n.prev)},
                     {"old", ref_name(n.old)},
                     {"new", ref_name(n.nw)}});
  }
  nlohmann::json anns = nlohmann::json::array();
  for (const auto& a : s.announcements) anns.push_back({ref_name(a.node), a.item});
  return {{"head", {ref_name(s.head.first), ref_name(s.head.second)}},
          {"nodes", std::move(nodes)},
          {"announcements", std::move(anns)},
          {"list", list_items(s)}};
}

nlohmann::json DmtfInterpreter::to_json() const {
  nlohmann::json progs = nlohmann::json::array();
  for (const auto& pp : programs_) progs.push_back(dmtf::to_json(pp));
  return {{"shared", dmtf::to_json(memory_.snapshot())}, {"programs", std::move(progs)}};
}

}  // namespace listlab::dmtf
