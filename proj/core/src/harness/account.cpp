#include "listlab/harness/account.hpp"

#include <algorithm>
#include <stdexcept>

#include "listlab/seq/mtf.hpp"

namespace listlab::harness {

CostReport account(const ExecutionHistory& h, seq::CostModel model) {
  const auto lin = check_linearizable(h);
  if (!lin.ok()) {
    throw std::invalid_argument("history is not linearizable: " + lin.counterexample->reason);
  }
  return account(h, *lin.witness, model);
}

CostReport account(const ExecutionHistory& h, const LinearizationWitness& w,
                   seq::CostModel model) {
  CostReport r;
  r.model = model;
  const auto& initial = h.workload.initial;
  for (const auto& op : h.ops) {
    if (!op.completed()) {
      ++r.pending;
      continue;
    }
    ++r.completed;
    r.item_level += op.item_reads - (model == seq::CostModel::kPartial ? 1 : 0);
    r.actual += op.shared_accesses;
  }
  for (auto o : w.order) {
    const auto& op = h.ops[o];
    if (!op.completed()) continue;
    if (std::find(initial.begin(), initial.end(), op.item) == initial.end()) continue;
    r.linearized.push_back(seq::Item(op.item));
  }
  const auto init = seq::make_list(std::vector<std::uint32_t>(initial.begin(), initial.end()));
  r.op_level = seq::mtf_run(r.linearized, init, model).cost;
  return r;
}

std::string cost_csv_header() {
  return "model,op_level,item_level,actual,completed,pending";
}

std::string to_csv_row(const CostReport& r) {
  return std::string(r.model == seq::CostModel::kFull ? "full" : "partial") + "," +
         std::to_string(r.op_level) + "," + std::to_string(r.item_level) + "," +
         std::to_string(r.actual) + "," + std::to_string(r.completed) + "," +
         std::to_string(r.pending);
}

ActualCostConstants frozen_actual_cost_constants() { return {2, 2, 2, 24}; }

std::int64_t actual_cost_bound(const CostReport& full, std::size_t p, std::uint32_t phi,
                               const ActualCostConstants& c) {
  if (full.model != seq::CostModel::kFull) {
    throw std::invalid_argument("the actual-cost bound takes a full-model report");
  }
  const auto pp = static_cast<std::int64_t>(p);
  const auto ph = static_cast<std::int64_t>(phi);
  const auto walk = full.item_level + (full.item_level + ph - 1) / ph;
  return c.k * walk + static_cast<std::int64_t>(full.completed) * pp * (c.k1 * pp + c.k2 * ph + c.k3);
}

bool pairwise_property_holds(const seq::RequestSequence& s, const seq::ListState& init) {
  const auto& items = init.order;
  auto list = init;
  std::vector<seq::ListState> pairs;
  for (std::size_t a = 0; a < items.size(); ++a) {
    for (std::size_t b = a + 1; b < items.size(); ++b) {
      pairs.push_back(seq::ListState{{items[a], items[b]}});
    }
  }
  for (auto x : s) {
    seq::move_to_front(list, x);
    for (auto& pr : pairs) {
      if (x == pr.order[0] || x == pr.order[1]) seq::move_to_front(pr, x);
      const bool first = seq::position_of(list, pr.order[0]) < seq::position_of(list, pr.order[1]);
      if (!first) return false;
    }
  }
  return true;
}

}  // namespace listlab::harness
