#pragma once

#include <cstdint>

#include "listlab/seq/types.hpp"

namespace listlab::merge {

// Minimum, over every ordering Y of the items of X, of the summed distances
// of the requests of X inside the sequence Y X. Brute force over |X|!
// orderings; throws std::invalid_argument on repeated items and
// BudgetExceeded when |X| > max_items.
std::int64_t min_reverse_distance(const seq::RequestSequence& x, std::size_t max_items = 8);

}  // namespace listlab::merge
