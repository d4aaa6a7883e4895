#pragma once

#include <cstdint>

#include "listlab/errors.hpp"
#include "listlab/seq/types.hpp"

namespace listlab::seq {

struct OptBudget {
  std::size_t max_list_length = 6;
  std::size_t max_sequence_length = 20;
  // Upper bound on (list permutations) x (sequence length).
  std::uint64_t max_states = 720ull * 20ull;
};

// Offline optimum in the free-exchange model: after accessing the item at
// position i, it may be reinserted anywhere in 1..i at no charge. Exact
// dynamic programming over all list permutations. Full cost model.
std::int64_t opt_free_cost(const RequestSequence& seq, const ListState& init,
                           const OptBudget& budget = {});

// Offline optimum when, in addition to free exchanges, any adjacent
// transposition may be bought for cost 1 at any time. Layered shortest path
// over permutations; the default budget admits lists of up to 5 items.
std::int64_t opt_paid_cost(const RequestSequence& seq, const ListState& init,
                           const OptBudget& budget = {5, 64, 120ull * 64ull});

// Lower bound on the partial cost of any algorithm (paid exchanges allowed) on
// `seq` from `init`: the sum over item pairs of the exact two-item optimum on
// the projected request sequence. Works for any list length.
std::int64_t opt_partial_pair_lower_bound(const RequestSequence& seq, const ListState& init);

}  // namespace listlab::seq
