#pragma once

#include <cstdint>

#include "listlab/seq/types.hpp"

namespace listlab::seq {

struct MtfResult {
  std::int64_t cost = 0;
  ListState final_state;
};

// Sequential Move-to-Front. Every access pays the 1-based position of the
// requested item (one less under CostModel::kPartial) and then moves it to
// the front. Throws std::invalid_argument if a requested item is not in `init`.
MtfResult mtf_run(const RequestSequence& seq, const ListState& init,
                  CostModel model = CostModel::kFull);

// Applies move-to-front for `item` in place. Returns its 1-based position
// before the move.
std::size_t move_to_front(ListState& list, Item item);

// 1-based position of `item`, or 0 when absent.
std::size_t position_of(const ListState& list, Item item);

}  // namespace listlab::seq
