#include "listlab/merge/disjoint.hpp"

#include <algorithm>
#include <unordered_map>
#include <unordered_set>

namespace listlab::merge {

bool pairwise_disjoint(const std::vector<RequestSequence>& seqs) {
  std::unordered_map<Item, std::size_t> owner;
  for (std::size_t p = 0; p < seqs.size(); ++p) {
    for (Item it : seqs[p]) {
      auto [pos, inserted] = owner.emplace(it, p);
      if (!inserted && pos->second != p) return false;
    }
  }
  return true;
}

DisjointInstance make_disjoint(const std::vector<RequestSequence>& seqs, const Merge& merge,
                               std::int64_t ell) {
  std::uint32_t next_fresh = static_cast<std::uint32_t>(std::max<std::int64_t>(ell, 0));
  for (const auto& s : seqs) {
    for (Item it : s) next_fresh = std::max(next_fresh, it.id);
  }
  ++next_fresh;

  DisjointInstance out{seqs, {}};
  std::unordered_set<Item> seen;
  for (auto& s : out.sequences) {
    std::vector<Item> distinct;
    {
      std::unordered_set<Item> local;
      for (Item it : s) {
        if (local.insert(it).second) distinct.push_back(it);
      }
    }
    for (Item shared : distinct) {
      if (!seen.contains(shared)) continue;
      const Item fresh{next_fresh++};
      std::replace(s.begin(), s.end(), shared, fresh);
    }
    for (Item it : s) seen.insert(it);
  }
  out.merge = Merge(out.sequences, merge.steps());
  return out;
}

}  // namespace listlab::merge
