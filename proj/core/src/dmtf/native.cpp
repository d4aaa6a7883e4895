#include "listlab/dmtf/native.hpp"

#include <set>
#include <stdexcept>

namespace listlab::dmtf {

namespace {

std::size_t field_index(Field f) {
  switch (f) {
    case Field::kNext: return 0;
    case Field::kPrev: return 1;
    case Field::kOld: return 2;
    case Field::kNew: return 3;
    case Field::kItem: break;
  }
  throw std::invalid_argument("item is not a pointer field");
}

AccessRecord node_record(std::size_t proc, Line line, NodeRef node, Field field) {
  AccessRecord rec;
  rec.process = proc;
  rec.line = line;
  rec.node = node;
  rec.field = field;
  return rec;
}

}  // namespace

AtomicMemory::AtomicMemory(const std::vector<ItemId>& items, std::size_t processes,
                           std::size_t capacity)
    : capacity_(capacity),
      initial_(items.size()),
      nodes_(new Node[capacity]),
      ann_(new std::atomic<std::uint64_t>[processes]),
      prepends_(new std::atomic<std::uint32_t>[capacity]),
      processes_(processes),
      items_(items) {
  if (capacity < items.size()) throw std::invalid_argument("capacity below the item count");
  if (capacity >= kEnd) throw std::invalid_argument("capacity too large");
  const auto n = items.size();
  for (std::size_t k = 0; k < capacity; ++k) {
    for (auto& f : nodes_[k].fields) f.store(kNull);
    prepends_[k].store(0);
  }
  for (std::size_t k = 0; k < n; ++k) {
    nodes_[k].item = items[k];
    nodes_[k].fields[0].store(k + 1 < n ? static_cast<NodeRef>(k + 1) : kNull);
    nodes_[k].fields[1].store(k > 0 ? static_cast<NodeRef>(k - 1) : kNull);
    nodes_[k].fields[2].store(kDone);
  }
  count_.store(static_cast<std::uint32_t>(n));
  head_.store(pack(HeadPair{0, n > 1 ? NodeRef{1} : kNull}));
  for (std::size_t i = 0; i < processes; ++i) ann_[i].store(pack(Announcement{}));
}

std::atomic<NodeRef>* AtomicMemory::field(NodeRef node, Field f) {
  if (!is_node(node) || node >= std::min<std::size_t>(count_.load(), capacity_)) return nullptr;
  return &nodes_[node].fields[field_index(f)];
}

ItemId AtomicMemory::item(NodeRef node) const {
  const bool ok = is_node(node) && node < std::min<std::size_t>(count_.load(), capacity_);
  return ok ? nodes_[node].item : kBottom;
}

NodeRef AtomicMemory::allocate(std::size_t proc, ItemId item) {
  const std::uint32_t id = count_.fetch_add(1);
  if (id >= capacity_) throw std::length_error("node arena exhausted");
  // Published to other threads only through later seq_cst stores.
  nodes_[id].item = item;
  if (observer_ != nullptr) observer_->on_alloc(proc, id, item);
  return id;
}

ItemId AtomicMemory::read_item(std::size_t proc, Line line, NodeRef node) {
  const bool ok = is_node(node) && node < std::min<std::size_t>(count_.load(), capacity_);
  const ItemId v = ok ? nodes_[node].item : kBottom;
  if (observer_ != nullptr) {
    auto rec = node_record(proc, line, node, Field::kItem);
    rec.observed = v;
    observer_->on_access(rec);
  }
  return v;
}

NodeRef AtomicMemory::read(std::size_t proc, Line line, NodeRef node, Field f) {
  auto* cell = field(node, f);
  const NodeRef v = cell != nullptr ? cell->load() : kNull;
  if (observer_ != nullptr) {
    auto rec = node_record(proc, line, node, f);
    rec.observed = v;
    observer_->on_access(rec);
  }
  return v;
}

NodeRef AtomicMemory::cas(std::size_t proc, Line line, NodeRef node, Field f, NodeRef expected,
                          NodeRef desired) {
  auto* cell = field(node, f);
  NodeRef prior = kNull;
  bool success = false;
  if (cell != nullptr) {
    prior = expected;
    success = cell->compare_exchange_strong(prior, desired);
  }
  if (observer_ != nullptr) {
    auto rec = node_record(proc, line, node, f);
    rec.kind = AccessKind::kCas;
    rec.expected = expected;
    rec.desired = desired;
    rec.observed = prior;
    rec.success = success;
    observer_->on_access(rec);
  }
  return prior;
}

HeadPair AtomicMemory::read_head(std::size_t proc, Line line) {
  const auto v = head_.load();
  if (observer_ != nullptr) {
    AccessRecord rec;
    rec.process = proc;
    rec.line = line;
    rec.cell = CellKind::kHead;
    rec.observed = v;
    observer_->on_access(rec);
  }
  return unpack_head(v);
}

HeadPair AtomicMemory::cas_head(std::size_t proc, Line line, HeadPair expected,
                                HeadPair desired) {
  std::uint64_t prior = pack(expected);
  const bool success = head_.compare_exchange_strong(prior, pack(desired));
  if (success && desired.first != expected.first && is_node(desired.first) &&
      desired.first < capacity_) {
    prepends_[desired.first].fetch_add(1);
  }
  if (observer_ != nullptr) {
    AccessRecord rec;
    rec.process = proc;
    rec.line = line;
    rec.cell = CellKind::kHead;
    rec.kind = AccessKind::kCas;
    rec.expected = pack(expected);
    rec.desired = pack(desired);
    rec.observed = prior;
    rec.success = success;
    observer_->on_access(rec);
  }
  return unpack_head(prior);
}

Announcement AtomicMemory::read_ann(std::size_t proc, Line line, std::size_t slot) {
  if (slot >= processes_) throw std::out_of_range("announcement slot");
  const auto v = ann_[slot].load();
  if (observer_ != nullptr) {
    AccessRecord rec;
    rec.process = proc;
    rec.line = line;
    rec.cell = CellKind::kAnnouncement;
    rec.slot = slot;
    rec.observed = v;
    observer_->on_access(rec);
  }
  return unpack_ann(v);
}

Announcement AtomicMemory::cas_ann(std::size_t proc, Line line, std::size_t slot,
                                   Announcement expected, Announcement desired) {
  if (slot >= processes_) throw std::out_of_range("announcement slot");
  std::uint64_t prior = pack(expected);
  const bool success = ann_[slot].compare_exchange_strong(prior, pack(desired));
  if (observer_ != nullptr) {
    AccessRecord rec;
    rec.process = proc;
    rec.line = line;
    rec.cell = CellKind::kAnnouncement;
    rec.slot = slot;
    rec.kind = AccessKind::kCas;
    rec.expected = pack(expected);
    rec.desired = pack(desired);
    rec.observed = prior;
    rec.success = success;
    observer_->on_access(rec);
  }
  return unpack_ann(prior);
}

SharedSnapshot AtomicMemory::snapshot() const {
  SharedSnapshot s;
  const std::size_t n = std::min<std::size_t>(count_.load(), capacity_);
  s.items = items_;
  s.nodes.resize(n);
  s.prepend_count.resize(n);
  s.initially_listed.assign(n, false);
  for (std::size_t k = 0; k < n; ++k) {
    const auto& node = nodes_[k];
    s.nodes[k] = {node.item, node.fields[0].load(), node.fields[1].load(), node.fields[2].load(),
                  node.fields[3].load()};
    s.prepend_count[k] = prepends_[k].load();
    s.initially_listed[k] = k < initial_;
  }
  s.head = unpack_head(head_.load());
  for (std::size_t i = 0; i < processes_; ++i) s.announcements.push_back(unpack_ann(ann_[i].load()));
  return s;
}

NativeDmtf::NativeDmtf(const std::vector<ItemId>& items, MachineConfig config,
                       std::size_t capacity)
    : config_(config), memory_(items, config.processes, capacity) {
  const std::set<ItemId> distinct(items.begin(), items.end());
  if (distinct.size() != items.size()) throw std::invalid_argument("items must be distinct");
  if (items.size() < 2) throw std::invalid_argument("need at least two items");
  if (distinct.contains(kBottom)) throw std::invalid_argument("item 0 is reserved");
  if (config.processes < 1) throw std::invalid_argument("need at least one process");
  if (config.phi < 1) throw std::invalid_argument("phi must be at least 1");
}

SearchOutcome NativeDmtf::search(std::size_t process, ItemId item) {
  if (process >= config_.processes) throw std::out_of_range("process id");
  ProcessProgram pp;
  begin_search(pp, item);
  SearchOutcome out;
  for (;;) {
    const auto r = step(memory_, pp, process, config_);
    ++out.steps;
    if (r.returned) {
      out.node = r.result;
      break;
    }
  }
  out.item_reads = pp.item_reads;
  out.shared_accesses = pp.shared_accesses;
  return out;
}

ItemId NativeDmtf::item_of(NodeRef node) const {
  if (!is_node(node) || node >= std::min<std::size_t>(memory_.allocated(), memory_.capacity())) {
    throw std::out_of_range("not a node handle");
  }
  return memory_.item(node);
}

}  // namespace listlab::dmtf
