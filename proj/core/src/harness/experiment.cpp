#include "listlab/harness/experiment.hpp"

#include <stdexcept>

#include "listlab/errors.hpp"
#include "listlab/seq/mtf.hpp"

namespace listlab::harness {

namespace {

seq::ListState list_of(const Workload& w) {
  return seq::make_list(std::vector<std::uint32_t>(w.initial.begin(), w.initial.end()));
}

void fill_ratios(RatioReport& r) {
  r.dmtf = r.cost.item_level;
  if (r.opt_upper > 0) r.ratio_lower = Rational(r.dmtf, r.opt_upper);
  if (r.opt_lower > 0) r.ratio_upper = Rational(r.dmtf, r.opt_lower);
}

CostReport checked_cost(const ExecutionHistory& h, seq::CostModel model) {
  if (!h.violations.empty()) {
    throw std::runtime_error("run violated " + h.violations.front().rule + ": " +
                             h.violations.front().detail);
  }
  return account(h, model);
}

}  // namespace

void opt_bounds(const seq::RequestSequence& s, const seq::ListState& init, seq::CostModel model,
                const seq::OptBudget& budget, RatioReport& out) {
  const auto n = static_cast<std::int64_t>(s.size());
  const std::int64_t shift = model == seq::CostModel::kPartial ? n : 0;
  try {
    const auto exact = seq::opt_free_cost(s, init, budget) - shift;
    out.opt_lower = out.opt_upper = exact;
    out.opt_exact = true;
  } catch (const BudgetExceeded&) {
    out.opt_lower = seq::opt_partial_pair_lower_bound(s, init) + (n - shift);
    out.opt_upper = seq::mtf_run(s, init, model).cost;
    out.opt_exact = false;
  }
}

RatioReport ratio_linearization(const Workload& w, const ScheduleSpec& schedule,
                                const RunConfig& config, seq::CostModel model,
                                const seq::OptBudget& budget) {
  RatioReport r;
  r.model = model;
  r.cost = checked_cost(run(w, schedule, config), model);
  opt_bounds(r.cost.linearized, list_of(w), model, budget, r);
  fill_ratios(r);
  return r;
}

RatioReport ratio_adversarial(const Workload& w, const ScheduleSpec& schedule,
                              const RunConfig& config, const seq::RequestSequence& opt_merge,
                              seq::CostModel model, const seq::OptBudget& budget) {
  RatioReport r;
  r.model = model;
  r.cost = checked_cost(run(w, schedule, config), model);
  opt_bounds(opt_merge, list_of(w), model, budget, r);
  fill_ratios(r);
  return r;
}

Workload chase_rear_workload(std::size_t p, std::size_t ell, std::size_t groups) {
  if (p < 1 || ell < 2) throw std::invalid_argument("need p >= 1 and ell >= 2");
  Workload w;
  for (std::size_t k = 1; k <= ell; ++k) w.initial.push_back(static_cast<ItemId>(k));
  std::vector<ItemId> seq;
  for (std::size_t g = 0; g < groups; ++g) seq.push_back(static_cast<ItemId>(ell - g % ell));
  w.requests.assign(p, seq);
  return w;
}

}  // namespace listlab::harness
