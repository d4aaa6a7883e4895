#pragma once

#include <optional>

#include "listlab/seq/types.hpp"

namespace listlab::seq {

// Largest j' < j with seq[j'] == seq[j], 1-based. Throws std::out_of_range
// unless 1 <= j <= |seq|.
std::optional<Index> prev_index(const RequestSequence& seq, Index j);

// Smallest j' > j with seq[j'] == seq[j], 1-based.
std::optional<Index> succ_index(const RequestSequence& seq, Index j);

// Distance of every request: the number of distinct items requested in
// seq[prev(j) .. j-1], or `ell` for a first occurrence. `ell` is a parameter
// and is not inferred from the sequence, so renamed universes larger than ell
// still charge ell for first occurrences.
//
// Runs in O(n log n) by counting, for every request, the items whose latest
// occurrence falls strictly between prev(j) and j.
DistanceProfile distance(const RequestSequence& seq, std::int64_t ell);

std::int64_t total_distance(const RequestSequence& seq, std::int64_t ell);

// Sum of d_I(j) over the given 1-based indices.
std::int64_t distance_of(const DistanceProfile& profile, const std::vector<Index>& indices);

}  // namespace listlab::seq
