#include "listlab/merge/phase.hpp"

#include <algorithm>
#include <stdexcept>

namespace listlab::merge {

using seq::Item;
using seq::RequestSequence;

RequestSequence project_pair(const RequestSequence& s, Item x, Item y) {
  RequestSequence out;
  for (Item it : s) {
    if (it == x || it == y) out.push_back(it);
  }
  return out;
}

std::vector<Phase> phase_partition(const RequestSequence& pair_seq,
                                   std::pair<Item, Item> initial_order) {
  const Item first = initial_order.first;
  const Item second = initial_order.second;
  for (Item it : pair_seq) {
    if (it != first && it != second) {
      throw std::invalid_argument("phase partitioning expects requests to two items only");
    }
  }

  std::vector<Phase> phases;
  Item front = first;
  Item back = second;
  std::size_t t = 0;
  const std::size_t n = pair_seq.size();
  auto at = [&](std::size_t i) { return i < n ? pair_seq[i] : Item{}; };

  while (t < n) {
    if (pair_seq[t] == front) std::swap(front, back);
    Phase ph;
    ph.front = front;
    ph.back = back;
    ph.type = front == first ? 1 : 2;
    const std::size_t start = t;

    while (at(t) == back && at(t + 1) == front) {
      ++ph.k;
      t += 2;
    }
    bool flips = false;
    if (at(t) == back && at(t + 1) == back) {
      ph.form = ph.k == 0 ? PhaseForm::kA : PhaseForm::kB;
      t += 2;
      while (at(t) == back) {
        ++ph.j;
        ++t;
      }
      flips = true;
    } else if (ph.k >= 1 && at(t) == front) {
      ph.form = PhaseForm::kC;
      ++t;
      while (at(t) == front) {
        ++ph.j;
        ++t;
      }
    } else {
      // Ran out of requests before the phase pattern was fixed.
      ph.complete = false;
      ph.form = ph.k == 0 ? PhaseForm::kA : PhaseForm::kB;
      t = n;
    }
    ph.requests.assign(pair_seq.begin() + static_cast<std::ptrdiff_t>(start),
                       pair_seq.begin() + static_cast<std::ptrdiff_t>(t));
    phases.push_back(std::move(ph));
    if (flips) std::swap(front, back);
  }
  return phases;
}

Rational phase_ratio_bound(std::int64_t p, std::int64_t k) {
  if (k < 1) return Rational(p);
  return std::max(Rational(p), Rational(2) + Rational(p - 1, k));
}

PhaseCost phase_costs(const Phase& phase, std::int64_t p) {
  if (!phase.complete) throw std::invalid_argument("phase costs are defined for complete phases");
  if (p < 1) throw std::invalid_argument("p must be at least 1");
  PhaseCost c;
  switch (phase.form) {
    case PhaseForm::kA:
      c.dmtf_bound = p;
      c.opt_cost = 1;
      break;
    case PhaseForm::kB:
      c.dmtf_bound = 2 * phase.k + p;
      c.opt_cost = phase.k + 1;
      break;
    case PhaseForm::kC:
      c.dmtf_bound = 2 * phase.k + p - 1;
      c.opt_cost = phase.k;
      break;
  }
  c.ratio_bound = Rational(c.dmtf_bound, c.opt_cost);
  return c;
}

}  // namespace listlab::merge
