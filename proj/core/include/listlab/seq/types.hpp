#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

namespace listlab::seq {

// An item of the shared list. Ids are positive; 0 is reserved as "no item".
struct Item {
  std::uint32_t id = 0;

  constexpr Item() = default;
  constexpr explicit Item(std::uint32_t v) : id(v) {}

  constexpr bool valid() const { return id != 0; }
  friend constexpr auto operator<=>(Item, Item) = default;
};

using RequestSequence = std::vector<Item>;

// 1-based position into a request sequence.
using Index = std::size_t;

// Position 0 of `order` is the front of the list.
struct ListState {
  std::vector<Item> order;

  std::size_t size() const { return order.size(); }
  friend bool operator==(const ListState&, const ListState&) = default;
};

struct DistanceProfile {
  std::vector<std::int64_t> per_index;  // per_index[j-1] = d_I(j)
  std::int64_t total = 0;
};

enum class CostModel { kFull, kPartial };

RequestSequence make_sequence(std::initializer_list<std::uint32_t> ids);
RequestSequence make_sequence(const std::vector<std::uint32_t>& ids);
ListState make_list(std::initializer_list<std::uint32_t> ids);
ListState make_list(const std::vector<std::uint32_t>& ids);

// The list [1, 2, ..., ell].
ListState identity_list(std::size_t ell);

std::vector<std::uint32_t> ids_of(const RequestSequence& seq);

}  // namespace listlab::seq

template <>
struct std::hash<listlab::seq::Item> {
  std::size_t operator()(listlab::seq::Item it) const noexcept {
    return std::hash<std::uint32_t>{}(it.id);
  }
};
