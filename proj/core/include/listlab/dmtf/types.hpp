#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>

namespace listlab::dmtf {

// Arena index of a node. The top of the range is reserved for sentinels, so a
// handle is never confused with NULL, DONE, GONE, NOT_PRESENT or END.
using NodeRef = std::uint32_t;
inline constexpr NodeRef kNull = 0xFFFFFFFFu;
inline constexpr NodeRef kDone = 0xFFFFFFFEu;
inline constexpr NodeRef kGone = 0xFFFFFFFDu;
inline constexpr NodeRef kNotPresent = 0xFFFFFFFCu;
// Written into pred.next when the last node is unlinked. Distinct from NULL so
// a late CAS(h1.next, NULL, h2) cannot relink the removed node.
inline constexpr NodeRef kEnd = 0xFFFFFFFBu;

constexpr bool is_node(NodeRef r) { return r < kEnd; }

// Item id as stored in nodes and announcements; 0 is the empty item.
using ItemId = std::uint32_t;
inline constexpr ItemId kBottom = 0;

struct HeadPair {
  NodeRef first = kNull;
  NodeRef second = kNull;
  friend bool operator==(const HeadPair&, const HeadPair&) = default;
};

struct Announcement {
  NodeRef node = kNull;
  ItemId item = kBottom;
  friend bool operator==(const Announcement&, const Announcement&) = default;
};

constexpr std::uint64_t pack(HeadPair h) {
  return (std::uint64_t{h.first} << 32) | h.second;
}
constexpr HeadPair unpack_head(std::uint64_t v) {
  return {static_cast<NodeRef>(v >> 32), static_cast<NodeRef>(v & 0xFFFFFFFFu)};
}
constexpr std::uint64_t pack(Announcement a) {
  return (std::uint64_t{a.node} << 32) | a.item;
}
constexpr Announcement unpack_ann(std::uint64_t v) {
  return {static_cast<NodeRef>(v >> 32), static_cast<ItemId>(v & 0xFFFFFFFFu)};
}

enum class Field : std::uint8_t { kItem, kNext, kPrev, kOld, kNew };
enum class CellKind : std::uint8_t { kNode, kHead, kAnnouncement };
enum class AccessKind : std::uint8_t { kRead, kCas };

// Program counter values: one per line of the search and move-to-front code
// that touches shared memory, plus kAllocate (private) and kIdle.
enum class Line : std::uint8_t {
  kIdle,
  kAllocate,
  kAnnounce,
  kGetHead,
  kAtFront,
  kUnannFront1,
  kUnannFront2,
  kLoopItem,
  kReadAnn1,
  kUnannOther1,
  kSetGOld,
  kSetHNew,
  kSetGPrime,
  kMtfOuter,
  kGetHead2,
  kGetOld,
  kPrependCheck,
  kTryPrepend,
  kSetNext,
  kSetPrev,
  kH1Item,
  kReadAnnMtf,
  kInformCheck,
  kInform,
  kGetPrev,
  kGetNext,
  kRemove1,
  kRemove2,
  kGoneLine,
  kDoneLine,
  kReadAnn2,
  kUnannPostMtf,
  kReadAnn3,
  kUnannOther2,
  kNext,
  kReadAnn4,
  kUnannEnd,
};

std::string_view line_name(Line line);
std::string_view field_name(Field f);
std::string_view cell_kind_name(CellKind k);
std::string_view access_kind_name(AccessKind k);

// Human-readable handle: a decimal index or NULL/DONE/GONE/NOT_PRESENT/END.
std::string ref_name(NodeRef r);

struct Faults {
  // Skip the inform CAS in move-to-front. Breaks correctness on purpose so
  // the checkers can be shown to catch it.
  bool skip_inform = false;
  // Unlink the last node by writing NULL instead of END. Reopens the stale
  // setnext race.
  bool null_tail = false;
};

struct MachineConfig {
  std::size_t processes = 1;
  std::uint32_t phi = 1;
  Faults faults;
};

// One shared-memory access. Values are raw cell contents: a NodeRef or item
// for node fields, packed pairs for Head and announcements.
struct AccessRecord {
  std::size_t process = 0;
  Line line = Line::kIdle;
  CellKind cell = CellKind::kNode;
  NodeRef node = kNull;         // for node fields
  Field field = Field::kItem;   // for node fields
  std::size_t slot = 0;         // announcement index
  AccessKind kind = AccessKind::kRead;
  std::uint64_t expected = 0;   // CAS only
  std::uint64_t desired = 0;    // CAS only
  std::uint64_t observed = 0;   // value read, or prior value for a CAS
  bool success = true;          // CAS installed `desired`
};

class Observer {
 public:
  virtual ~Observer() = default;
  virtual void on_alloc(std::size_t process, NodeRef node, ItemId item) = 0;
  virtual void on_access(const AccessRecord& access) = 0;
};

}  // namespace listlab::dmtf
