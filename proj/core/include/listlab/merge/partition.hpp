#pragma once

#include <cstdint>
#include <vector>

#include "listlab/merge/merge.hpp"

namespace listlab::merge {

// NEXT(h, source -> target): indices of target requests merged strictly
// between f(h) and f(succ(h)) that are the first request to their item after
// f(h). Empty when h has no successor in the source sequence.
struct NextSet {
  std::size_t source = 0;
  Index h = 0;
  std::size_t target = 0;
  std::vector<Index> members;  // ascending
};

NextSet next_set(const Merge& merge, std::size_t source, Index h, std::size_t target);

// Sum over all h of |NEXT(h, source -> target)|.
std::int64_t next_set_total(const Merge& merge, std::size_t source, std::size_t target);

// Partitions of I (process 1) and J (process 2). parts_j[k] corresponds to
// parts_i[k] and may be empty.
struct PartitionPair {
  std::vector<std::vector<Index>> parts_i;
  std::vector<std::vector<Index>> parts_j;

  // |P|: the number of cross pairs between corresponding parts.
  std::int64_t product_size() const;
};

// Runs the two partition algorithms on a merge of exactly two item-disjoint
// sequences. Throws std::invalid_argument otherwise.
PartitionPair build_partitions(const Merge& merge);

// Quantities compared by the partition bounds, all exact.
struct PartitionReport {
  std::int64_t next_ij = 0;         // sum |NEXT(x, I -> J)|
  std::int64_t next_ji = 0;         // sum |NEXT(y, J -> I)|
  std::int64_t product = 0;         // |P|
  std::int64_t part_distance = 0;   // sum d_I(P^I_k) + sum d_J(P^J_k)
  std::int64_t ell = 0;

  bool injective_bound() const { return next_ij <= product; }
  bool symmetric_bound() const { return next_ji <= product + ell * ell; }
  bool combined_bound() const { return next_ij + next_ji <= 2 * product + ell * ell; }
  bool product_distance_bound() const { return product <= part_distance + 3 * ell * ell; }
  bool all_hold() const {
    return injective_bound() && symmetric_bound() && combined_bound() && product_distance_bound();
  }
};

PartitionReport partition_report(const Merge& merge, std::int64_t ell);

// True when every part of P^I and P^J requests pairwise distinct items and
// P^I covers 1..|I| exactly once while P^J uses no index twice.
bool partitions_legal(const Merge& merge, const PartitionPair& parts);

}  // namespace listlab::merge
