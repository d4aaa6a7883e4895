#pragma once

#include <atomic>
#include <memory>
#include <vector>

#include "listlab/dmtf/machine.hpp"
#include "listlab/dmtf/snapshot.hpp"
#include "listlab/dmtf/types.hpp"

namespace listlab::dmtf {

// Shared memory on real atomics. Nodes live in a fixed-capacity append-only
// arena; every access is sequentially consistent. An observer may be attached
// for single-threaded record/replay only.
class AtomicMemory {
 public:
  AtomicMemory(const std::vector<ItemId>& items, std::size_t processes, std::size_t capacity);

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
  std::size_t allocated() const { return count_.load(); }
  // Item of an allocated node; kBottom for anything else.
  ItemId item(NodeRef node) const;
  std::size_t capacity() const { return capacity_; }

  // Copy of the shared state. Only meaningful while no search is running.
  SharedSnapshot snapshot() const;

 private:
  struct Node {
    ItemId item = kBottom;
    std::atomic<NodeRef> fields[4];  // next, prev, old, new
  };
  std::atomic<NodeRef>* field(NodeRef node, Field f);

  std::size_t capacity_;
  std::size_t initial_;
  std::unique_ptr<Node[]> nodes_;
  std::atomic<std::uint32_t> count_{0};
  std::atomic<std::uint64_t> head_{0};
  std::unique_ptr<std::atomic<std::uint64_t>[]> ann_;
  std::unique_ptr<std::atomic<std::uint32_t>[]> prepends_;
  std::size_t processes_;
  std::vector<ItemId> items_;
  Observer* observer_ = nullptr;
};

struct SearchOutcome {
  NodeRef node = kNull;  // handle or kNotPresent
  std::int64_t item_reads = 0;
  std::int64_t shared_accesses = 0;
  std::int64_t steps = 0;
};

// Lock-free DMTF over AtomicMemory. search() may be called concurrently for
// distinct process ids; each id must be used by one thread at a time.
class NativeDmtf {
 public:
  NativeDmtf(const std::vector<ItemId>& items, MachineConfig config, std::size_t capacity);

  SearchOutcome search(std::size_t process, ItemId item);
  ItemId item_of(NodeRef node) const;

  AtomicMemory& memory() { return memory_; }
  const MachineConfig& config() const { return config_; }
  SharedSnapshot snapshot() const { return memory_.snapshot(); }

 private:
  MachineConfig config_;
  AtomicMemory memory_;
};

}  // namespace listlab::dmtf
