#pragma once

#include <vector>

#include "listlab/merge/merge.hpp"

namespace listlab::merge {

struct DisjointInstance {
  std::vector<RequestSequence> sequences;
  Merge merge;
};

bool pairwise_disjoint(const std::vector<RequestSequence>& seqs);

// Renames items so that no two sequences share an item. Items are handled one
// at a time: an item of sequence i that also occurs in an earlier sequence is
// renamed, in sequence i only, to a fresh id above max(ell, every id in use).
// The merge keeps its steps. Each sequence keeps its distance profile and the
// merged distance can only grow.
DisjointInstance make_disjoint(const std::vector<RequestSequence>& seqs, const Merge& merge,
                               std::int64_t ell);

}  // namespace listlab::merge
