#include "listlab/harness/linearize.hpp"

#include <algorithm>
#include <limits>
#include <map>
#include <tuple>

#include "listlab/seq/mtf.hpp"

namespace listlab::harness {

namespace {

constexpr std::int64_t kForever = std::numeric_limits<std::int64_t>::max();

struct Prepend {
  std::int64_t time;
  NodeRef node;
  std::size_t op;  // search whose process performed the CAS
};

LinearizationResult fail(const ExecutionHistory& h, std::string reason, std::int64_t event) {
  Counterexample ce;
  ce.reason = std::move(reason);
  ce.event = event < 0 ? 0 : static_cast<std::size_t>(event);
  const auto end = std::min(h.events.size(), ce.event + 1);
  ce.prefix.assign(h.events.begin(), h.events.begin() + static_cast<std::ptrdiff_t>(end));
  return {std::nullopt, std::move(ce)};
}

// Kuhn's augmenting paths; adj[k] lists candidate pending ops for prepend k.
bool augment(std::size_t k, const std::vector<std::vector<std::size_t>>& adj,
             std::vector<bool>& seen, std::map<std::size_t, std::size_t>& owner) {
  for (auto o : adj[k]) {
    if (seen[o]) continue;
    seen[o] = true;
    auto it = owner.find(o);
    if (it == owner.end() || augment(it->second, adj, seen, owner)) {
      owner[o] = k;
      return true;
    }
  }
  return false;
}

}  // namespace

LinearizationResult check_linearizable(const ExecutionHistory& h) {
  const auto& initial = h.workload.initial;
  auto present = [&](ItemId e) {
    return std::find(initial.begin(), initial.end(), e) != initial.end();
  };

  std::vector<Prepend> fronts{{-1, 0, std::numeric_limits<std::size_t>::max()}};
  std::map<NodeRef, std::size_t> front_index{{0, 0}};
  for (std::size_t t = 0; t < h.events.size(); ++t) {
    const auto& e = h.events[t];
    if (e.kind != EventKind::kAccess) continue;
    const auto& a = e.access;
    if (a.cell != dmtf::CellKind::kHead || a.kind != dmtf::AccessKind::kCas || !a.success) continue;
    const auto before = dmtf::unpack_head(a.observed);
    const auto after = dmtf::unpack_head(a.desired);
    if (before.first == after.first) continue;
    if (!front_index.emplace(after.first, fronts.size()).second) {
      return fail(h, "node " + std::to_string(after.first) + " prepended twice",
                  static_cast<std::int64_t>(t));
    }
    fronts.push_back({static_cast<std::int64_t>(t), after.first, e.op});
  }
  auto front_at = [&](std::int64_t t) {
    auto it = std::upper_bound(fronts.begin(), fronts.end(), t,
                               [](std::int64_t v, const Prepend& p) { return v < p.time; });
    return std::prev(it)->node;
  };

  const std::size_t n = h.ops.size();
  std::vector<std::int64_t> point(n, -1);
  std::vector<bool> placed(n, false);
  std::vector<bool> prepender(n, false);
  std::vector<bool> covered(fronts.size(), false);
  covered[0] = true;
  std::vector<std::size_t> pending;

  for (const auto& op : h.ops) {
    const auto inv = static_cast<std::int64_t>(op.invoke_event);
    if (!op.completed()) {
      pending.push_back(op.id);
      continue;
    }
    const auto resp = static_cast<std::int64_t>(*op.respond_event);
    const auto who = "op " + std::to_string(op.id) + " (p" + std::to_string(op.process) + ")";
    if (op.result == dmtf::kNotPresent) {
      if (present(op.item)) return fail(h, who + " returned NOT_PRESENT for a present item", resp);
      point[op.id] = inv;
      placed[op.id] = true;
      continue;
    }
    if (!present(op.item)) return fail(h, who + " found an item outside the set", resp);
    if (h.item_of(op.result) != op.item) {
      return fail(h, who + " returned a node holding another item", resp);
    }
    auto it = front_index.find(op.result);
    if (it == front_index.end()) {
      return fail(h, who + " returned node " + std::to_string(op.result) +
                         " which was never at the front",
                  resp);
    }
    const auto k = it->second;
    const auto start = fronts[k].time;
    const auto end = k + 1 < fronts.size() ? fronts[k + 1].time : kForever;
    if (start > resp || end <= inv) {
      return fail(h, who + " returned node " + std::to_string(op.result) +
                         " which was not at the front during the search",
                  resp);
    }
    point[op.id] = std::max(inv, start);
    placed[op.id] = true;
    if (start >= inv) {
      covered[k] = true;
      prepender[op.id] = fronts[k].op == op.id;
    }
  }

  // Prepends no completed search accounts for must belong to distinct pending
  // searches for that item that were already running.
  std::vector<std::size_t> open;
  std::vector<std::vector<std::size_t>> adj;
  for (std::size_t k = 1; k < fronts.size(); ++k) {
    if (covered[k]) continue;
    open.push_back(k);
    adj.emplace_back();
    for (auto o : pending) {
      if (h.ops[o].item == h.item_of(fronts[k].node) &&
          static_cast<std::int64_t>(h.ops[o].invoke_event) <= fronts[k].time) {
        adj.back().push_back(o);
      }
    }
  }
  std::map<std::size_t, std::size_t> owner;
  for (std::size_t i = 0; i < open.size(); ++i) {
    std::vector<bool> seen(n, false);
    if (!augment(i, adj, seen, owner)) {
      const auto& f = fronts[open[i]];
      return fail(h, "prepend of node " + std::to_string(f.node) +
                         " is not accounted for by any search",
                  f.time);
    }
  }
  LinearizationWitness w;
  for (auto [o, i] : owner) {
    point[o] = fronts[open[i]].time;
    placed[o] = true;
    prepender[o] = fronts[open[i]].op == o;
    w.pending.push_back(o);
  }
  std::sort(w.pending.begin(), w.pending.end());

  // Ties: the search that performed the prepend first, then by response.
  std::vector<std::size_t> order;
  for (std::size_t o = 0; o < n; ++o) {
    if (placed[o]) order.push_back(o);
  }
  auto key = [&](std::size_t o) {
    const auto& op = h.ops[o];
    const auto resp = op.completed() ? static_cast<std::int64_t>(*op.respond_event) : kForever;
    return std::tuple(point[o], !prepender[o], resp, o);
  };
  std::sort(order.begin(), order.end(), [&](auto a, auto b) { return key(a) < key(b); });

  auto list = seq::make_list(std::vector<std::uint32_t>(initial.begin(), initial.end()));
  for (auto o : order) {
    const auto& op = h.ops[o];
    w.order.push_back(o);
    w.points.push_back(point[o]);
    if (!present(op.item)) continue;
    seq::move_to_front(list, seq::Item(op.item));
    const auto front = h.item_of(front_at(point[o]));
    if (list.order.front().id != front) {
      return fail(h, "after op " + std::to_string(o) + " sequential move-to-front has item " +
                         std::to_string(list.order.front().id) + " in front, the list has " +
                         std::to_string(front),
                  point[o]);
    }
  }
  if (h.complete) {
    std::vector<ItemId> replay;
    for (auto it : list.order) replay.push_back(it.id);
    if (replay != h.final_list) {
      return fail(h, "final list differs from sequential move-to-front on the witness",
                  static_cast<std::int64_t>(h.events.size()) - 1);
    }
  }
  return {std::move(w), std::nullopt};
}

}  // namespace listlab::harness
