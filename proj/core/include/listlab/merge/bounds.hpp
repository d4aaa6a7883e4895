#pragma once

#include <cstdint>
#include <vector>

#include "listlab/merge/merge.hpp"
#include "listlab/rational.hpp"

namespace listlab::merge {

struct BoundCheck {
  Rational lhs;
  Rational rhs;
  Rational value;  // the ratio or slack the bound is about
  bool holds = false;
};

// d(C) against p * d(M), where C is the concatenation of the sequences.
// `value` is d(C)/d(M).
BoundCheck check_c_worst(const std::vector<RequestSequence>& seqs, const Merge& merge,
                         std::int64_t ell);

// d(M) against (2p-1) d(C) + 7 p^2 ell^2 for pairwise disjoint sequences.
// `value` is the slack d(M) - (2p-1) d(C). Throws std::invalid_argument if the
// sequences share an item.
BoundCheck check_c_best(const std::vector<RequestSequence>& seqs, const Merge& merge,
                        std::int64_t ell);

// Composed bound between two merges of the same sequences:
// d(M1) <= (2p^2 - p) d(M2) + c with c = (2p-1) * overhead + 7 p^2 ell^2, where
// overhead is the extra distance introduced by making the sequences disjoint.
BoundCheck check_merge_pair(const std::vector<RequestSequence>& seqs, const Merge& m1,
                            const Merge& m2, std::int64_t ell);

}  // namespace listlab::merge
