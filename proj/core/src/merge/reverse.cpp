#include "listlab/merge/reverse.hpp"

#include <algorithm>
#include <limits>
#include <stdexcept>
#include <string>
#include <unordered_set>

#include "listlab/errors.hpp"
#include "listlab/seq/distance.hpp"

namespace listlab::merge {

std::int64_t min_reverse_distance(const seq::RequestSequence& x, std::size_t max_items) {
  {
    std::unordered_set<seq::Item> seen;
    for (auto it : x) {
      if (!seen.insert(it).second) throw std::invalid_argument("items must be distinct");
    }
  }
  if (x.size() > max_items) {
    throw BudgetExceeded("brute force limited to " + std::to_string(max_items) + " items");
  }
  if (x.empty()) return 0;

  const auto n = x.size();
  const auto ell = static_cast<std::int64_t>(n);
  seq::RequestSequence y = x;
  std::sort(y.begin(), y.end());
  std::int64_t best = std::numeric_limits<std::int64_t>::max();
  seq::RequestSequence yx(2 * n);
  do {
    std::copy(y.begin(), y.end(), yx.begin());
    std::copy(x.begin(), x.end(), yx.begin() + static_cast<std::ptrdiff_t>(n));
    const auto profile = seq::distance(yx, ell);
    std::int64_t sum = 0;
    for (std::size_t i = n; i < 2 * n; ++i) sum += profile.per_index[i];
    best = std::min(best, sum);
  } while (std::next_permutation(y.begin(), y.end()));
  return best;
}

}  // namespace listlab::merge
