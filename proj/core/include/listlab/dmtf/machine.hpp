#pragma once

// The search and move-to-front code as a step machine. Every call to step()
// performs at most one shared-memory access through the Memory backend; the
// allocation step performs none. The same machine drives the single-threaded
// interpreter and the atomic backend.
//
// A Memory backend provides
//   NodeRef      allocate(proc, item)
//   ItemId       read_item(proc, line, node)
//   NodeRef      read(proc, line, node, field)
//   NodeRef      cas(proc, line, node, field, expected, desired)   -> prior
//   HeadPair     read_head(proc, line)
//   HeadPair     cas_head(proc, line, expected, desired)           -> prior
//   Announcement read_ann(proc, line, slot)
//   Announcement cas_ann(proc, line, slot, expected, desired)      -> prior

#include <cstdint>

#include "listlab/dmtf/types.hpp"

namespace listlab::dmtf {

struct ProcessProgram {
  Line pc = Line::kIdle;
  ItemId e = kBottom;
  NodeRef g = kNull;
  NodeRef h = kNull;
  NodeRef h1 = kNull;
  NodeRef h2 = kNull;
  NodeRef h_old = kNull;  // h' in move-to-front
  NodeRef g_new = kNull;  // g' in search
  NodeRef pred = kNull;
  NodeRef succ = kNull;
  Announcement ab;        // (a, b) of the search
  Announcement mtf_ab;    // (a, b) of the inform loop
  ItemId e_front = kBottom;
  std::uint32_t c = 0;
  std::uint32_t slot = 0;
  // Item comparisons made by the current search (front test and list walk).
  std::int64_t item_reads = 0;
  std::int64_t shared_accesses = 0;

  bool idle() const { return pc == Line::kIdle; }
  friend bool operator==(const ProcessProgram&, const ProcessProgram&) = default;
};

struct StepResult {
  Line line = Line::kIdle;
  bool shared = false;     // the step touched shared memory
  bool returned = false;   // the search responded in this step
  NodeRef result = kNull;  // handle or kNotPresent when returned
};

inline void begin_search(ProcessProgram& pp, ItemId e) {
  pp = ProcessProgram{};
  pp.pc = Line::kAllocate;
  pp.e = e;
}

namespace detail {

inline constexpr Announcement kIdleAnn{kNull, kBottom};

inline StepResult finish(ProcessProgram& pp, Line line, NodeRef result) {
  pp.pc = Line::kIdle;
  return {line, true, true, result};
}

// Continue with the next announcement in the inform loop, or go on to the
// removal once every process has been examined.
inline Line after_inform(ProcessProgram& pp, const MachineConfig& cfg) {
  ++pp.slot;
  return pp.slot < cfg.processes ? Line::kReadAnnMtf : Line::kGetPrev;
}

}  // namespace detail

template <class Memory>
StepResult step(Memory& mem, ProcessProgram& pp, std::size_t i, const MachineConfig& cfg) {
  using detail::kIdleAnn;
  const Line line = pp.pc;
  StepResult out{line, true, false, kNull};
  switch (line) {
    case Line::kIdle:
      out.shared = false;
      return out;

    case Line::kAllocate:
      pp.g = mem.allocate(i, pp.e);
      pp.pc = Line::kAnnounce;
      out.shared = false;
      return out;

    case Line::kAnnounce:
      mem.cas_ann(i, line, i, kIdleAnn, Announcement{pp.g, pp.e});
      pp.pc = Line::kGetHead;
      break;

    case Line::kGetHead: {
      const HeadPair hp = mem.read_head(i, line);
      pp.h1 = hp.first;
      pp.h = hp.second;
      pp.pc = Line::kAtFront;
      break;
    }

    case Line::kAtFront:
      ++pp.item_reads;
      if (mem.read_item(i, line, pp.h1) == pp.e) {
        pp.pc = Line::kUnannFront1;
      } else {
        pp.c = 0;
        pp.pc = is_node(pp.h) ? Line::kLoopItem : Line::kReadAnn4;
      }
      break;

    case Line::kUnannFront1:
      pp.ab = mem.cas_ann(i, line, i, Announcement{pp.g, pp.e}, kIdleAnn);
      ++pp.shared_accesses;
      if (pp.ab.item == kBottom) {
        pp.pc = Line::kUnannFront2;
        return out;
      }
      return detail::finish(pp, line, pp.h1);

    case Line::kUnannFront2:
      mem.cas_ann(i, line, i, pp.ab, kIdleAnn);
      ++pp.shared_accesses;
      return detail::finish(pp, line, pp.h1);

    case Line::kLoopItem:
      ++pp.item_reads;
      if (mem.read_item(i, line, pp.h) == pp.e) {
        pp.pc = Line::kReadAnn1;
      } else {
        pp.c = (pp.c + 1) % cfg.phi;
        pp.pc = pp.c == 0 ? Line::kReadAnn3 : Line::kNext;
      }
      break;

    case Line::kReadAnn1:
      pp.ab = mem.read_ann(i, line, i);
      pp.pc = pp.ab.item == kBottom ? Line::kUnannOther1 : Line::kSetGOld;
      break;

    case Line::kUnannOther1:
      mem.cas_ann(i, line, i, pp.ab, kIdleAnn);
      ++pp.shared_accesses;
      return detail::finish(pp, line, pp.ab.node);

    case Line::kSetGOld:
      mem.cas(i, line, pp.g, Field::kOld, kNull, pp.h);
      pp.pc = Line::kSetHNew;
      break;

    case Line::kSetHNew:
      mem.cas(i, line, pp.h, Field::kNew, kNull, pp.g);
      pp.pc = Line::kSetGPrime;
      break;

    case Line::kSetGPrime:
      pp.g_new = mem.read(i, line, pp.h, Field::kNew);
      pp.pc = pp.g_new != kGone ? Line::kMtfOuter : Line::kReadAnn2;
      break;

    case Line::kMtfOuter:
      pp.pc = mem.read(i, line, pp.g_new, Field::kOld) == kDone ? Line::kReadAnn2 : Line::kGetHead2;
      break;

    case Line::kGetHead2: {
      const HeadPair hp = mem.read_head(i, line);
      pp.h1 = hp.first;
      pp.h2 = hp.second;
      pp.pc = Line::kGetOld;
      break;
    }

    case Line::kGetOld:
      pp.h_old = mem.read(i, line, pp.h1, Field::kOld);
      pp.pc = pp.h_old == kDone ? Line::kPrependCheck : Line::kSetNext;
      break;

    case Line::kPrependCheck:
      pp.pc = mem.read(i, line, pp.g_new, Field::kOld) != kDone ? Line::kTryPrepend
                                                                 : Line::kMtfOuter;
      break;

    case Line::kTryPrepend:
      mem.cas_head(i, line, HeadPair{pp.h1, pp.h2}, HeadPair{pp.g_new, pp.h1});
      pp.pc = Line::kMtfOuter;
      break;

    case Line::kSetNext:
      mem.cas(i, line, pp.h1, Field::kNext, kNull, pp.h2);
      pp.pc = Line::kSetPrev;
      break;

    case Line::kSetPrev:
      mem.cas(i, line, pp.h2, Field::kPrev, kNull, pp.h1);
      pp.pc = Line::kH1Item;
      break;

    case Line::kH1Item:
      pp.e_front = mem.read_item(i, line, pp.h1);
      pp.slot = 0;
      pp.pc = Line::kReadAnnMtf;
      break;

    case Line::kReadAnnMtf:
      pp.mtf_ab = mem.read_ann(i, line, pp.slot);
      pp.pc = pp.mtf_ab.item == pp.e_front ? Line::kInformCheck : detail::after_inform(pp, cfg);
      break;

    case Line::kInformCheck:
      if (mem.read(i, line, pp.h1, Field::kOld) != kDone && !cfg.faults.skip_inform) {
        pp.pc = Line::kInform;
      } else {
        pp.pc = detail::after_inform(pp, cfg);
      }
      break;

    case Line::kInform:
      mem.cas_ann(i, line, pp.slot, pp.mtf_ab, Announcement{pp.h1, kBottom});
      pp.pc = detail::after_inform(pp, cfg);
      break;

    case Line::kGetPrev:
      pp.pred = mem.read(i, line, pp.h_old, Field::kPrev);
      pp.pc = Line::kGetNext;
      break;

    case Line::kGetNext:
      pp.succ = mem.read(i, line, pp.h_old, Field::kNext);
      pp.pc = Line::kRemove1;
      break;

    case Line::kRemove1: {
      const NodeRef tail = cfg.faults.null_tail ? kNull : kEnd;
      mem.cas(i, line, pp.pred, Field::kNext, pp.h_old, is_node(pp.succ) ? pp.succ : tail);
      pp.pc = is_node(pp.succ) ? Line::kRemove2 : Line::kGoneLine;
      break;
    }

    case Line::kRemove2:
      mem.cas(i, line, pp.succ, Field::kPrev, pp.h_old, pp.pred);
      pp.pc = Line::kGoneLine;
      break;

    case Line::kGoneLine:
      mem.cas(i, line, pp.h_old, Field::kNew, pp.h1, kGone);
      pp.pc = Line::kDoneLine;
      break;

    case Line::kDoneLine:
      mem.cas(i, line, pp.h1, Field::kOld, pp.h_old, kDone);
      pp.pc = Line::kMtfOuter;
      break;

    case Line::kReadAnn2:
      pp.ab = mem.read_ann(i, line, i);
      pp.pc = Line::kUnannPostMtf;
      break;

    case Line::kUnannPostMtf:
      mem.cas_ann(i, line, i, pp.ab, kIdleAnn);
      ++pp.shared_accesses;
      return detail::finish(pp, line, pp.ab.node);

    case Line::kReadAnn3:
      pp.ab = mem.read_ann(i, line, i);
      pp.pc = pp.ab.item == kBottom ? Line::kUnannOther2 : Line::kNext;
      break;

    case Line::kUnannOther2:
      mem.cas_ann(i, line, i, pp.ab, kIdleAnn);
      ++pp.shared_accesses;
      return detail::finish(pp, line, pp.ab.node);

    case Line::kNext:
      pp.h = mem.read(i, line, pp.h, Field::kNext);
      pp.pc = is_node(pp.h) ? Line::kLoopItem : Line::kReadAnn4;
      break;

    case Line::kReadAnn4:
      pp.ab = mem.read_ann(i, line, i);
      pp.pc = Line::kUnannEnd;
      break;

    case Line::kUnannEnd:
      mem.cas_ann(i, line, i, pp.ab, kIdleAnn);
      ++pp.shared_accesses;
      return detail::finish(pp, line, pp.ab.item == kBottom ? pp.ab.node : kNotPresent);
  }
  ++pp.shared_accesses;
  return out;
}

}  // namespace listlab::dmtf
