#include "listlab/harness/history.hpp"

#include <ostream>
#include <set>
#include <sstream>
#include <stdexcept>

namespace listlab::harness {

Workload workload_from_json(const nlohmann::json& j) {
  if (!j.is_object() || !j.contains("initial") || !j.contains("requests")) {
    throw std::invalid_argument("workload needs \"initial\" and \"requests\"");
  }
  Workload w;
  try {
    w.initial = j.at("initial").get<std::vector<ItemId>>();
    w.requests = j.at("requests").get<std::vector<std::vector<ItemId>>>();
  } catch (const nlohmann::json::exception& e) {
    throw std::invalid_argument(std::string("malformed workload: ") + e.what());
  }
  const std::set<ItemId> items(w.initial.begin(), w.initial.end());
  if (items.size() != w.initial.size() || items.size() < 2 || items.contains(dmtf::kBottom)) {
    throw std::invalid_argument("initial list needs at least two distinct nonzero items");
  }
  if (w.requests.empty()) throw std::invalid_argument("workload needs at least one process");
  for (const auto& r : w.requests) {
    for (auto e : r) {
      if (e == dmtf::kBottom) throw std::invalid_argument("item 0 is reserved");
    }
  }
  return w;
}

nlohmann::json to_json(const Workload& w) {
  return {{"initial", w.initial}, {"requests", w.requests}};
}

ItemId ExecutionHistory::item_of(NodeRef node) const {
  return node < node_items.size() ? node_items[node] : dmtf::kBottom;
}

nlohmann::json to_json(const Event& e) {
  using dmtf::ref_name;
  switch (e.kind) {
    case EventKind::kInvoke:
      return {{"type", "invoke"}, {"p", e.process}, {"op", e.op}, {"item", e.item}};
    case EventKind::kAlloc:
      return {{"type", "alloc"}, {"p", e.process}, {"op", e.op}, {"node", e.node},
              {"item", e.item}};
    case EventKind::kRespond:
      return {{"type", "respond"}, {"p", e.process}, {"op", e.op}, {"result", ref_name(e.node)}};
    case EventKind::kAccess:
      break;
  }
  const auto& a = e.access;
  nlohmann::json j{{"type", "access"},
                   {"p", e.process},
                   {"op", e.op},
                   {"line", std::string(dmtf::line_name(a.line))},
                   {"cell", std::string(dmtf::cell_kind_name(a.cell))},
                   {"kind", std::string(dmtf::access_kind_name(a.kind))}};
  if (a.cell == dmtf::CellKind::kNode) {
    j["node"] = ref_name(a.node);
    j["field"] = std::string(dmtf::field_name(a.field));
  } else if (a.cell == dmtf::CellKind::kAnnouncement) {
    j["slot"] = a.slot;
  }
  // Pointer cells are rendered by name, pairs and items as raw integers.
  const bool pointer = a.cell == dmtf::CellKind::kNode && a.field != dmtf::Field::kItem;
  auto value = [&](std::uint64_t v) -> nlohmann::json {
    if (pointer) return ref_name(static_cast<NodeRef>(v));
    return v;
  };
  j["observed"] = value(a.observed);
  if (a.kind == dmtf::AccessKind::kCas) {
    j["expected"] = value(a.expected);
    j["desired"] = value(a.desired);
    j["success"] = a.success;
  }
  return j;
}

void write_ndjson(const ExecutionHistory& h, std::ostream& out) {
  out << nlohmann::json{{"type", "header"},
                        {"workload", to_json(h.workload)},
                        {"phi", h.phi},
                        {"schedule", to_json(h.spec)}}
             .dump()
      << '\n';
  for (std::size_t t = 0; t < h.events.size(); ++t) {
    auto j = to_json(h.events[t]);
    j["t"] = t;
    out << j.dump() << '\n';
  }
  nlohmann::json viol = nlohmann::json::array();
  for (const auto& v : h.violations) viol.push_back({{"rule", v.rule}, {"detail", v.detail}});
  out << nlohmann::json{{"type", "end"},
                        {"complete", h.complete},
                        {"steps", h.steps},
                        {"stepped", h.schedule},
                        {"violations", std::move(viol)}}
             .dump()
      << '\n';
}

std::string to_ndjson(const ExecutionHistory& h) {
  std::ostringstream s;
  write_ndjson(h, s);
  return s.str();
}

}  // namespace listlab::harness
