#pragma once

// Independent reference implementations used only by tests. They follow the
// definitions literally and are deliberately slow.

#include <cstdint>
#include <vector>

#include "listlab/merge/merge.hpp"
#include "listlab/seq/types.hpp"

namespace oracle {

using listlab::seq::Item;
using listlab::seq::RequestSequence;

// Distinct items in seq[prev .. j-1] by explicit set construction.
std::vector<std::int64_t> distance(const RequestSequence& seq, std::int64_t ell);
std::int64_t total_distance(const RequestSequence& seq, std::int64_t ell);

// MTF cost by linear scans on a plain vector.
std::int64_t mtf_cost(const RequestSequence& seq, std::vector<Item> list);

// Free-exchange optimum by plain recursion over every reinsertion choice.
std::int64_t opt_free(const RequestSequence& seq, std::vector<Item> list);

// Two-item optimum (paid swaps allowed) by recursion over swap decisions.
std::int64_t opt_pair_partial(const RequestSequence& seq, Item front, Item back);

// Every interleaving of two sequences, built by choosing position subsets.
std::vector<std::vector<listlab::merge::Step>> merges_of_two(std::size_t n1, std::size_t n2);

// NEXT straight from the set-builder definition.
std::vector<std::size_t> next_set(const listlab::merge::Merge& m, std::size_t src, std::size_t h,
                                  std::size_t tgt);

// All restricted-growth strings of the given length with at most `max_labels`
// labels, with labels starting at `first_label`.
std::vector<RequestSequence> canonical_sequences(std::size_t length, std::uint32_t max_labels,
                                                 std::uint32_t first_label = 1);

// All sequences of the given length over items 1..ell.
std::vector<RequestSequence> all_sequences(std::size_t length, std::uint32_t ell);

}  // namespace oracle
