#include "listlab/merge/partition.hpp"

#include <algorithm>
#include <stdexcept>
#include <unordered_set>

#include "listlab/merge/disjoint.hpp"
#include "listlab/seq/distance.hpp"

namespace listlab::merge {

NextSet next_set(const Merge& merge, std::size_t source, Index h, std::size_t target) {
  NextSet out{source, h, target, {}};
  const auto& src_pos = merge.positions(source);
  if (h < 1 || h > src_pos.size()) throw std::out_of_range("NEXT index out of range");
  const auto src_seq = merge.sequence_of(source);
  const auto succ = seq::succ_index(src_seq, h);
  if (!succ) return out;
  const Index lo = src_pos[h - 1];
  const Index hi = src_pos[*succ - 1];

  const auto& tgt_pos = merge.positions(target);
  const auto& flat = merge.sequence();
  std::unordered_set<Item> seen;
  for (Index t = 1; t <= tgt_pos.size(); ++t) {
    const Index m = tgt_pos[t - 1];
    if (m <= lo) continue;
    if (m >= hi) break;
    if (seen.insert(flat[m - 1]).second) out.members.push_back(t);
  }
  return out;
}

std::int64_t next_set_total(const Merge& merge, std::size_t source, std::size_t target) {
  std::int64_t total = 0;
  const auto n = merge.positions(source).size();
  for (Index h = 1; h <= n; ++h) {
    total += static_cast<std::int64_t>(next_set(merge, source, h, target).members.size());
  }
  return total;
}

std::int64_t PartitionPair::product_size() const {
  std::int64_t total = 0;
  for (std::size_t k = 0; k < parts_i.size(); ++k) {
    total += static_cast<std::int64_t>(parts_i[k].size() * parts_j[k].size());
  }
  return total;
}

namespace {

void require_two_disjoint(const Merge& merge) {
  if (merge.process_count() != 2) {
    throw std::invalid_argument("partitions are defined for a merge of exactly two sequences");
  }
  if (!pairwise_disjoint({merge.sequence_of(1), merge.sequence_of(2)})) {
    throw std::invalid_argument("partitions require item-disjoint sequences");
  }
}

std::vector<std::vector<Index>> partition_first(const RequestSequence& seq_i) {
  const std::size_t n = seq_i.size();
  std::vector<bool> assigned(n + 1, false);
  std::vector<std::vector<Index>> parts;
  for (Index i = 1; i <= n; ++i) {
    if (assigned[i]) continue;
    std::vector<Index> part{i};
    assigned[i] = true;
    if (const auto j = seq::succ_index(seq_i, i)) {
      std::unordered_set<Item> between;
      for (Index h = i + 1; h < *j; ++h) {
        const Item item = seq_i[h - 1];
        // `between` holds I_{i+1} .. I_{h-1} when h is examined.
        if (!assigned[h] && !between.contains(item)) {
          part.push_back(h);
          assigned[h] = true;
        }
        between.insert(item);
      }
    }
    parts.push_back(std::move(part));
  }
  return parts;
}

}  // namespace

PartitionPair build_partitions(const Merge& merge) {
  require_two_disjoint(merge);
  const auto seq_i = merge.sequence_of(1);
  const auto seq_j = merge.sequence_of(2);

  PartitionPair out;
  out.parts_i = partition_first(seq_i);

  std::vector<bool> assigned(seq_j.size() + 1, false);
  for (const auto& part : out.parts_i) {
    std::vector<Index> part_j;
    // Items of NEXT(i_1) .. NEXT(i_{j-1}) for the current part.
    std::unordered_set<Item> earlier;
    for (Index i : part) {
      const auto next = next_set(merge, 1, i, 2).members;
      for (Index h : next) {
        if (!assigned[h] && !earlier.contains(seq_j[h - 1])) {
          part_j.push_back(h);
          assigned[h] = true;
        }
      }
      for (Index h : next) earlier.insert(seq_j[h - 1]);
    }
    std::sort(part_j.begin(), part_j.end());
    out.parts_j.push_back(std::move(part_j));
  }
  return out;
}

PartitionReport partition_report(const Merge& merge, std::int64_t ell) {
  const auto parts = build_partitions(merge);
  PartitionReport r;
  r.ell = ell;
  r.next_ij = next_set_total(merge, 1, 2);
  r.next_ji = next_set_total(merge, 2, 1);
  r.product = parts.product_size();
  const auto d_i = seq::distance(merge.sequence_of(1), ell);
  const auto d_j = seq::distance(merge.sequence_of(2), ell);
  for (const auto& part : parts.parts_i) r.part_distance += seq::distance_of(d_i, part);
  for (const auto& part : parts.parts_j) r.part_distance += seq::distance_of(d_j, part);
  return r;
}

bool partitions_legal(const Merge& merge, const PartitionPair& parts) {
  const auto seq_i = merge.sequence_of(1);
  const auto seq_j = merge.sequence_of(2);
  if (parts.parts_i.size() != parts.parts_j.size()) return false;
  auto distinct_items = [](const RequestSequence& s, const std::vector<Index>& part) {
    std::unordered_set<Item> items;
    for (Index x : part) {
      if (x < 1 || x > s.size() || !items.insert(s[x - 1]).second) return false;
    }
    return true;
  };
  std::vector<int> used_i(seq_i.size() + 1, 0);
  std::vector<int> used_j(seq_j.size() + 1, 0);
  for (std::size_t k = 0; k < parts.parts_i.size(); ++k) {
    if (!distinct_items(seq_i, parts.parts_i[k]) || !distinct_items(seq_j, parts.parts_j[k])) {
      return false;
    }
    for (Index x : parts.parts_i[k]) ++used_i[x];
    for (Index x : parts.parts_j[k]) ++used_j[x];
  }
  for (Index x = 1; x <= seq_i.size(); ++x) {
    if (used_i[x] != 1) return false;
  }
  for (Index x = 1; x <= seq_j.size(); ++x) {
    if (used_j[x] > 1) return false;
  }
  return true;
}

}  // namespace listlab::merge
