#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "listlab/rational.hpp"
#include "listlab/seq/types.hpp"

namespace listlab::merge {

enum class PhaseForm { kA, kB, kC };

// A phase of a request sequence over two items. With the order before the
// phase written (front, back), the forms are
//   (a) back back back^j
//   (b) (back front)^k back back back^j
//   (c) (back front)^k front front^j
// Type 1 means the front item is the pair's first item, type 2 the second.
struct Phase {
  PhaseForm form = PhaseForm::kA;
  int type = 1;
  std::int64_t k = 0;
  std::int64_t j = 0;
  bool complete = true;
  seq::Item front;  // front item of the optimal order when the phase starts
  seq::Item back;
  seq::RequestSequence requests;
};

// Splits a sequence over {x, y} into phases, starting from `initial_order`
// (front first). A phase that would start with a request to the current
// front item is read with the roles of the two items swapped. At most one
// trailing phase is incomplete; its form is provisional. Throws
// std::invalid_argument if the sequence references a third item.
std::vector<Phase> phase_partition(const seq::RequestSequence& pair_seq,
                                   std::pair<seq::Item, seq::Item> initial_order);

struct PhaseCost {
  std::int64_t dmtf_bound = 0;
  std::int64_t opt_cost = 0;
  Rational ratio_bound;  // dmtf_bound / opt_cost
};

// Partial-cost bounds for a complete phase with p concurrent processes.
// Throws std::invalid_argument for incomplete phases or p < 1.
PhaseCost phase_costs(const Phase& phase, std::int64_t p);

// max{p, 2 + (p-1)/k}.
Rational phase_ratio_bound(std::int64_t p, std::int64_t k);

// Restricts a sequence to the requests for x or y.
seq::RequestSequence project_pair(const seq::RequestSequence& s, seq::Item x, seq::Item y);

}  // namespace listlab::merge
