#pragma once

#include <cstdint>
#include <optional>

#include "listlab/harness/account.hpp"
#include "listlab/harness/runner.hpp"
#include "listlab/rational.hpp"
#include "listlab/seq/opt.hpp"

namespace listlab::harness {

struct RatioReport {
  seq::CostModel model = seq::CostModel::kFull;
  std::int64_t dmtf = 0;  // item level of the execution
  // OPT on the reference sequence. Equal when the exact oracle fits the
  // budget; otherwise the pair lower bound and sequential MTF.
  std::int64_t opt_lower = 0;
  std::int64_t opt_upper = 0;
  bool opt_exact = false;
  std::optional<Rational> ratio_lower;  // dmtf / opt_upper
  std::optional<Rational> ratio_upper;  // dmtf / opt_lower
  CostReport cost;
};

// OPT bounds on `s` from `init` in the given cost model.
void opt_bounds(const seq::RequestSequence& s, const seq::ListState& init, seq::CostModel model,
                const seq::OptBudget& budget, RatioReport& out);

// DMTF item level against OPT on the linearized sequence of the same run.
RatioReport ratio_linearization(const Workload& w, const ScheduleSpec& schedule,
                                const RunConfig& config, seq::CostModel model,
                                const seq::OptBudget& budget = {});

// DMTF item level against OPT on an independently supplied merge.
RatioReport ratio_adversarial(const Workload& w, const ScheduleSpec& schedule,
                              const RunConfig& config, const seq::RequestSequence& opt_merge,
                              seq::CostModel model, const seq::OptBudget& budget = {});

// p processes that all request the current rear item in every wave: item
// l, l-1, ..., 1, l, ... on the list 1..l, `groups` waves.
Workload chase_rear_workload(std::size_t p, std::size_t ell, std::size_t groups);

}  // namespace listlab::harness
