#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "listlab/harness/history.hpp"

namespace listlab::harness {

// Operations in linearization order with their linearization points: the
// event index at which the returned node was at the front (-1 is the initial
// state). NOT_PRESENT searches are placed at their invocation.
struct LinearizationWitness {
  std::vector<std::size_t> order;    // op ids
  std::vector<std::int64_t> points;  // parallel to order
  std::vector<std::size_t> pending;  // pending ops included to account for a prepend
};

struct Counterexample {
  std::string reason;
  std::size_t event = 0;      // offending event index
  std::vector<Event> prefix;  // events[0..event]
};

struct LinearizationResult {
  std::optional<LinearizationWitness> witness;
  std::optional<Counterexample> counterexample;
  bool ok() const { return witness.has_value(); }
};

// Orders each search at the moment its returned node was at the front,
// matches every prepend to a search for that item, replays sequential
// move-to-front on the order and compares front items and, for complete
// histories, the final list.
LinearizationResult check_linearizable(const ExecutionHistory& h);

}  // namespace listlab::harness
