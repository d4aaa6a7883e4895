#pragma once

#include <cstdint>
#include <vector>

#include "listlab/merge/merge.hpp"
#include "listlab/rational.hpp"

namespace listlab::merge {

struct LowerBoundInstance {
  std::int64_t p = 0;
  std::int64_t ell = 0;
  std::int64_t r = 0;
  std::int64_t s = 0;
  std::vector<RequestSequence> sequences;
  Merge merge_hi;
  Merge merge_lo;
};

// Items 1..ell are split into p consecutive runs A_1..A_p of ell/p items.
// B_j = (A_j rev(A_j))^s and process i requests r rounds of the p blocks
// starting from B_i. merge_hi interleaves block by block so that every block
// sees the other p-1 runs in between; merge_lo fuses the p identical blocks
// that line up diagonally into runs of p equal requests, with the leftover
// leading and trailing blocks concatenated in process order.
// Throws std::invalid_argument unless p >= 2, p | ell, r >= 1 and s >= 1.
LowerBoundInstance build_lower_bound_instance(std::int64_t p, std::int64_t ell, std::int64_t r,
                                              std::int64_t s);

// 2p^2 - p - 4(p^4 - p^3)/(ell + 2p^2 - p).
Rational ratio_limit(std::int64_t p, std::int64_t ell);
// ((2p-1) ell + p) / (2p), the limiting average distance of merge_hi.
Rational hi_average_limit(std::int64_t p, std::int64_t ell);

struct MergeRatioRow {
  std::int64_t r = 0;
  std::int64_t s = 0;
  Rational avg_hi;
  Rational avg_lo;
  Rational ratio;
  Rational limit;
  Rational gap;  // limit - ratio
};

MergeRatioRow merge_ratio_row(std::int64_t p, std::int64_t ell, std::int64_t r, std::int64_t s);

}  // namespace listlab::merge
