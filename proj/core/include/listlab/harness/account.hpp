#pragma once

#include <cstdint>
#include <string>

#include "listlab/harness/history.hpp"
#include "listlab/harness/linearize.hpp"
#include "listlab/seq/types.hpp"

namespace listlab::harness {

// Completed searches only; pending ones are left out of every level.
struct CostReport {
  seq::CostModel model = seq::CostModel::kFull;
  std::int64_t op_level = 0;    // sequential MTF on the linearized sequence
  std::int64_t item_level = 0;  // per search, the position where it stopped
  std::int64_t actual = 0;      // shared accesses
  std::size_t completed = 0;
  std::size_t pending = 0;
  seq::RequestSequence linearized;  // present items only
};

// Throws std::invalid_argument when the history does not linearize.
CostReport account(const ExecutionHistory& h, seq::CostModel model = seq::CostModel::kFull);
CostReport account(const ExecutionHistory& h, const LinearizationWitness& w,
                   seq::CostModel model = seq::CostModel::kFull);

std::string cost_csv_header();
std::string to_csv_row(const CostReport& r);

// Constants of the actual-cost regression bound, fitted on random runs and
// frozen:
//   actual <= K * (item_level + ceil(item_level / phi))
//             + completed * p * (K1 * p + K2 * phi + K3)
// with item_level in the full model.
struct ActualCostConstants {
  std::int64_t k = 0, k1 = 0, k2 = 0, k3 = 0;
};
ActualCostConstants frozen_actual_cost_constants();
std::int64_t actual_cost_bound(const CostReport& full, std::size_t p, std::uint32_t phi,
                               const ActualCostConstants& c = frozen_actual_cost_constants());

// Relative order of every item pair after each request of a sequential
// move-to-front run equals the order obtained from the pair's projection.
bool pairwise_property_holds(const seq::RequestSequence& s, const seq::ListState& init);

}  // namespace listlab::harness
