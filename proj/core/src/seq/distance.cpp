#include "listlab/seq/distance.hpp"

#include <stdexcept>
#include <string>
#include <unordered_map>

namespace listlab::seq {

namespace {

void check_index(const RequestSequence& seq, Index j) {
  if (j < 1 || j > seq.size()) {
    throw std::out_of_range("index " + std::to_string(j) + " outside 1.." +
                            std::to_string(seq.size()));
  }
}

// Fenwick tree over 0-based positions.
class PrefixCounter {
 public:
  explicit PrefixCounter(std::size_t n) : tree_(n + 1, 0) {}

  void add(std::size_t pos, int delta) {
    for (std::size_t i = pos + 1; i < tree_.size(); i += i & (~i + 1)) tree_[i] += delta;
  }

  // Sum over positions [0, pos).
  std::int64_t prefix(std::size_t pos) const {
    std::int64_t s = 0;
    for (std::size_t i = pos; i > 0; i -= i & (~i + 1)) s += tree_[i];
    return s;
  }

 private:
  std::vector<std::int64_t> tree_;
};

}  // namespace

std::optional<Index> prev_index(const RequestSequence& seq, Index j) {
  check_index(seq, j);
  for (Index k = j - 1; k >= 1; --k) {
    if (seq[k - 1] == seq[j - 1]) return k;
  }
  return std::nullopt;
}

std::optional<Index> succ_index(const RequestSequence& seq, Index j) {
  check_index(seq, j);
  for (Index k = j + 1; k <= seq.size(); ++k) {
    if (seq[k - 1] == seq[j - 1]) return k;
  }
  return std::nullopt;
}

DistanceProfile distance(const RequestSequence& seq, std::int64_t ell) {
  if (ell < 1) throw std::invalid_argument("ell must be at least 1");
  DistanceProfile out;
  out.per_index.resize(seq.size());
  // A position is marked while it holds the latest occurrence of its item.
  PrefixCounter latest(seq.size());
  std::unordered_map<Item, std::size_t> last_pos;
  last_pos.reserve(seq.size());
  for (std::size_t j = 0; j < seq.size(); ++j) {
    auto found = last_pos.find(seq[j]);
    std::int64_t d = ell;
    if (found != last_pos.end()) {
      const std::size_t prev = found->second;
      // Items whose latest occurrence lies in (prev, j), plus the item itself.
      d = latest.prefix(j) - latest.prefix(prev + 1) + 1;
      latest.add(prev, -1);
      found->second = j;
    } else {
      last_pos.emplace(seq[j], j);
    }
    latest.add(j, +1);
    out.per_index[j] = d;
    out.total += d;
  }
  return out;
}

std::int64_t total_distance(const RequestSequence& seq, std::int64_t ell) {
  return distance(seq, ell).total;
}

std::int64_t distance_of(const DistanceProfile& profile, const std::vector<Index>& indices) {
  std::int64_t s = 0;
  for (Index j : indices) s += profile.per_index.at(j - 1);
  return s;
}

}  // namespace listlab::seq
