#include "listlab/seq/opt.hpp"

#include <algorithm>
#include <limits>
#include <queue>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <utility>

namespace listlab::seq {

namespace {

constexpr std::int64_t kInf = std::numeric_limits<std::int64_t>::max() / 4;

// A permutation of local item indices 0..n-1 packed four bits per slot;
// slot 0 is the front of the list.
using Code = std::uint64_t;

std::uint8_t slot(Code c, std::size_t i) { return static_cast<std::uint8_t>((c >> (4 * i)) & 0xF); }

Code with_slot(Code c, std::size_t i, std::uint8_t v) {
  const Code mask = Code{0xF} << (4 * i);
  return (c & ~mask) | (Code{v} << (4 * i));
}

// Moves the entry at slot `from` to slot `to` (to <= from), shifting the
// entries in between one slot back.
Code move_forward(Code c, std::size_t from, std::size_t to) {
  const auto v = slot(c, from);
  for (std::size_t i = from; i > to; --i) c = with_slot(c, i, slot(c, i - 1));
  return with_slot(c, to, v);
}

Code swap_adjacent(Code c, std::size_t i) {
  const auto a = slot(c, i);
  const auto b = slot(c, i + 1);
  return with_slot(with_slot(c, i, b), i + 1, a);
}

std::size_t slot_of(Code c, std::size_t n, std::uint8_t v) {
  for (std::size_t i = 0; i < n; ++i) {
    if (slot(c, i) == v) return i;
  }
  throw std::logic_error("corrupt permutation code");
}

std::uint64_t factorial(std::size_t n) {
  std::uint64_t f = 1;
  for (std::size_t i = 2; i <= n; ++i) {
    if (f > std::numeric_limits<std::uint64_t>::max() / i) return std::numeric_limits<std::uint64_t>::max();
    f *= i;
  }
  return f;
}

struct Local {
  std::size_t n = 0;
  Code init = 0;
  std::vector<std::uint8_t> requests;
};

Local localize(const RequestSequence& seq, const ListState& init) {
  Local loc;
  loc.n = init.size();
  if (loc.n > 16) throw BudgetExceeded("exact OPT supports at most 16 items");
  std::unordered_map<Item, std::uint8_t> index;
  for (std::size_t i = 0; i < loc.n; ++i) {
    if (!index.emplace(init.order[i], static_cast<std::uint8_t>(i)).second) {
      throw std::invalid_argument("initial list contains a duplicate item");
    }
    loc.init = with_slot(loc.init, i, static_cast<std::uint8_t>(i));
  }
  loc.requests.reserve(seq.size());
  for (Item it : seq) {
    auto f = index.find(it);
    if (f == index.end()) {
      throw std::invalid_argument("requested item " + std::to_string(it.id) + " is not in the list");
    }
    loc.requests.push_back(f->second);
  }
  return loc;
}

void check_budget(const Local& loc, const OptBudget& budget) {
  if (loc.n > budget.max_list_length || loc.requests.size() > budget.max_sequence_length) {
    throw BudgetExceeded("OPT instance too large: list " + std::to_string(loc.n) + ", sequence " +
                         std::to_string(loc.requests.size()));
  }
  const auto perms = factorial(loc.n);
  const auto len = std::max<std::uint64_t>(1, loc.requests.size());
  if (perms > budget.max_states / len) {
    throw BudgetExceeded("OPT state space exceeds budget of " + std::to_string(budget.max_states));
  }
}

using Layer = std::unordered_map<Code, std::int64_t>;

void relax(Layer& layer, Code c, std::int64_t cost) {
  auto [it, inserted] = layer.emplace(c, cost);
  if (!inserted && cost < it->second) it->second = cost;
}

// Serves one request from every state of `layer`, allowing the free
// reinsertion of the accessed item anywhere at or before its position.
Layer access_with_free_moves(const Layer& layer, std::size_t n, std::uint8_t item) {
  Layer next;
  next.reserve(layer.size() * 2);
  for (const auto& [code, cost] : layer) {
    const auto at = slot_of(code, n, item);
    const auto paid = cost + static_cast<std::int64_t>(at) + 1;
    for (std::size_t to = 0; to <= at; ++to) relax(next, move_forward(code, at, to), paid);
  }
  return next;
}

// Multi-source shortest paths where each adjacent transposition costs 1.
Layer close_under_paid_exchanges(const Layer& layer, std::size_t n) {
  Layer dist = layer;
  using Entry = std::pair<std::int64_t, Code>;
  std::priority_queue<Entry, std::vector<Entry>, std::greater<>> queue;
  for (const auto& [code, cost] : dist) queue.emplace(cost, code);
  while (!queue.empty()) {
    auto [cost, code] = queue.top();
    queue.pop();
    if (cost > dist[code]) continue;
    for (std::size_t i = 0; i + 1 < n; ++i) {
      const Code nb = swap_adjacent(code, i);
      auto it = dist.find(nb);
      if (it == dist.end() || cost + 1 < it->second) {
        dist[nb] = cost + 1;
        queue.emplace(cost + 1, nb);
      }
    }
  }
  return dist;
}

std::int64_t minimum(const Layer& layer) {
  std::int64_t best = kInf;
  for (const auto& [code, cost] : layer) best = std::min(best, cost);
  return best;
}

}  // namespace

std::int64_t opt_free_cost(const RequestSequence& seq, const ListState& init, const OptBudget& budget) {
  const auto loc = localize(seq, init);
  check_budget(loc, budget);
  Layer layer{{loc.init, 0}};
  for (auto item : loc.requests) layer = access_with_free_moves(layer, loc.n, item);
  return minimum(layer);
}

std::int64_t opt_paid_cost(const RequestSequence& seq, const ListState& init, const OptBudget& budget) {
  const auto loc = localize(seq, init);
  check_budget(loc, budget);
  Layer layer{{loc.init, 0}};
  for (auto item : loc.requests) {
    layer = close_under_paid_exchanges(layer, loc.n);
    layer = access_with_free_moves(layer, loc.n, item);
  }
  return minimum(layer);
}

std::int64_t opt_partial_pair_lower_bound(const RequestSequence& seq, const ListState& init) {
  std::unordered_map<Item, std::size_t> rank;
  for (std::size_t i = 0; i < init.size(); ++i) rank.emplace(init.order[i], i);
  for (Item it : seq) {
    if (!rank.contains(it)) {
      throw std::invalid_argument("requested item " + std::to_string(it.id) + " is not in the list");
    }
  }
  std::int64_t total = 0;
  for (std::size_t a = 0; a < init.size(); ++a) {
    for (std::size_t b = a + 1; b < init.size(); ++b) {
      const Item x = init.order[a];
      const Item y = init.order[b];
      // cost[0]: x in front, cost[1]: y in front.
      std::int64_t cost[2] = {0, kInf};
      for (Item r : seq) {
        if (r != x && r != y) continue;
        cost[0] = std::min(cost[0], cost[1] + 1);
        cost[1] = std::min(cost[1], cost[0] + 1);
        const int front_if_hit = r == x ? 0 : 1;
        const int other = 1 - front_if_hit;
        const std::int64_t stay_front = cost[front_if_hit];
        const std::int64_t from_back = cost[other] + 1;
        cost[front_if_hit] = std::min(stay_front, from_back);
        cost[other] = from_back;
      }
      total += std::min(cost[0], cost[1]);
    }
  }
  return total;
}

}  // namespace listlab::seq
