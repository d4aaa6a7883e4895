#include "listlab/findvalue/findvalue.hpp"

#include <algorithm>
#include <functional>
#include <stdexcept>

namespace listlab::findvalue {

bool RegisterState::agree() const {
  return registers[0] == registers[1] && registers[1] == registers[2];
}

CoinTape CoinTape::from_bits(std::vector<bool> bits) {
  CoinTape t;
  t.bits_ = std::move(bits);
  return t;
}

CoinTape CoinTape::from_hex(const std::string& hex) {
  std::vector<bool> bits;
  for (char c : hex) {
    int v;
    if (c >= '0' && c <= '9') {
      v = c - '0';
    } else if (c >= 'a' && c <= 'f') {
      v = c - 'a' + 10;
    } else if (c >= 'A' && c <= 'F') {
      v = c - 'A' + 10;
    } else {
      throw std::invalid_argument(std::string("not a hex digit: ") + c);
    }
    for (int b = 3; b >= 0; --b) bits.push_back((v >> b) & 1);
  }
  return from_bits(std::move(bits));
}

CoinTape CoinTape::from_seed(std::uint64_t seed) {
  CoinTape t;
  t.rng_.emplace(seed);
  return t;
}

bool CoinTape::next() {
  if (rng_) {
    if (left_ == 0) {
      buffer_ = (*rng_)();
      left_ = 64;
    }
    --left_;
    ++used_;
    return (buffer_ >> left_) & 1;
  }
  if (used_ >= bits_.size()) throw std::out_of_range("coin tape exhausted");
  return bits_[used_++];
}

namespace {

struct Plan {
  int delay = 0;  // rounds after the notification round
  int first = 0;  // register read first
};

// Plan of process j for an input given to process i.
using Planner = std::function<Plan(int j, int i)>;

struct World {
  std::array<EntryList, kProcesses> lists;
  RegisterState regs;
  EntryList history;
  std::int64_t round = 0;  // round of the next input
};

int other_of(int j, int a) { return 3 - j - a; }

// Plays one input to completion and applies the gating gap.
InputTrace play(World& w, int target, std::int64_t value, const Planner& plan, bool& safe) {
  InputTrace tr;
  tr.target = target;
  const std::int64_t r = w.round;
  tr.input_round = r;
  const Entry entry{target, value};
  w.history.push_back(entry);
  w.lists[target].push_back(entry);
  w.regs.registers[target] = w.lists[target];

  enum class Phase { kRead, kWrite, kDone };
  struct State {
    Phase phase = Phase::kDone;
    std::int64_t when = 0;
    int reg = 0;
  };
  std::array<State, kProcesses> st;
  for (int j = 0; j < kProcesses; ++j) {
    if (j == target) continue;
    const Plan p = plan(j, target);
    st[j] = {Phase::kRead, r + 1 + p.delay, p.first};
  }
  std::int64_t known = r;
  for (std::int64_t t = r + 1;; ++t) {
    bool busy = false;
    const auto snapshot = w.regs;
    for (int j = 0; j < kProcesses; ++j) {
      auto& s = st[j];
      if (s.phase == Phase::kRead && s.when == t) {
        ++tr.reads;
        const auto& reg = snapshot.registers[s.reg];
        auto& mine = w.lists[j];
        for (std::size_t k = mine.size(); k < reg.size(); ++k) mine.push_back(reg[k]);
        if (mine.size() == w.history.size()) {
          s = {Phase::kWrite, t + 1, s.reg};
          known = std::max(known, t);
        } else {
          s = {Phase::kRead, t + 1, other_of(j, s.reg)};
        }
      } else if (s.phase == Phase::kWrite && s.when == t) {
        w.regs.registers[j] = w.lists[j];
        s.phase = Phase::kDone;
      }
      busy = busy || s.phase != Phase::kDone;
    }
    if (!busy) break;
  }
  tr.known_round = known;
  w.round = known + 2;  // one idle round after everyone knows
  for (const auto& reg : w.regs.registers) safe = safe && reg == w.history;
  return tr;
}

void check_map(const FirstReadMap& f) {
  for (int i = 0; i < kProcesses; ++i) {
    if (f[i] < 0 || f[i] >= kProcesses || f[i] == i) {
      throw std::invalid_argument("first-read map must name another process for every process");
    }
  }
}

Planner immediate(const FirstReadMap& f) {
  return [f](int j, int) { return Plan{0, f[j]}; };
}

int lower_bound_target(const FirstReadMap& f, bool* shared) {
  for (int i = 0; i < kProcesses; ++i) {
    for (int j = i + 1; j < kProcesses; ++j) {
      if (f[i] == f[j]) {
        const int k = f[i];
        if (shared) *shared = true;
        // The one of i, j that p_k reads first keeps the role of p_i.
        return f[k] == i ? j : i;
      }
    }
  }
  if (shared) *shared = false;
  const int k = 0;  // every process reads in the first round after notification
  return other_of(k, f[k]);
}

int choose_target(const AdversaryPolicy& policy, const std::function<Rational(int)>& expected,
                  const std::optional<FirstReadMap>& f) {
  switch (policy.kind) {
    case PolicyKind::kFixedTarget:
      if (policy.target < 0 || policy.target >= kProcesses) {
        throw std::invalid_argument("fixed target must be 0, 1 or 2");
      }
      return policy.target;
    case PolicyKind::kLowerBound:
      if (!f) throw std::invalid_argument("the lower-bound adversary needs a first-read map");
      return lower_bound_target(*f, nullptr);
    case PolicyKind::kAdaptiveOffline: {
      int best = 0;
      Rational best_v = expected(0);
      for (int i = 1; i < kProcesses; ++i) {
        const auto v = expected(i);
        if (v > best_v) {
          best = i;
          best_v = v;
        }
      }
      return best;
    }
  }
  return 0;
}

RunResult first_read_run(const std::vector<std::int64_t>& inputs, const FirstReadMap& f,
                         const AdversaryPolicy& policy) {
  check_map(f);
  World w;
  RunResult res;
  const auto plan = immediate(f);
  for (auto v : inputs) {
    auto expected = [&](int i) {
      World copy = w;
      bool ignored = true;
      return Rational(play(copy, i, v, plan, ignored).reads);
    };
    const int target = choose_target(policy, expected, f);
    res.inputs.push_back(play(w, target, v, plan, res.safe));
    res.reads += res.inputs.back().reads;
  }
  res.opt_reads = 2 * static_cast<std::int64_t>(inputs.size());
  res.final_state = w.regs;
  return res;
}

// Coins in notification order: lower id first, delay coin then target coin.
Planner from_coins(const std::array<int, 4>& coins) {
  return [coins](int j, int i) {
    const int slot = j < other_of(j, i) ? 0 : 2;
    const int delay = coins[slot] ? 2 : 0;
    const int first = coins[slot + 1] ? (j + 2) % 3 : (j + 1) % 3;
    return Plan{delay, first};
  };
}

std::array<int, 4> coins_of(int mask) {
  return {(mask >> 3) & 1, (mask >> 2) & 1, (mask >> 1) & 1, mask & 1};
}

Rational expected_reads(const World& w, int target, std::int64_t value) {
  std::int64_t total = 0;
  for (int mask = 0; mask < 16; ++mask) {
    World copy = w;
    bool ignored = true;
    total += play(copy, target, value, from_coins(coins_of(mask)), ignored).reads;
  }
  return Rational(total, 16);
}

}  // namespace

RunResult run_deterministic(const std::vector<std::int64_t>& inputs,
                            const AdversaryPolicy& policy) {
  return first_read_run(inputs, {1, 2, 0}, policy);
}

RunResult run_first_read(const std::vector<std::int64_t>& inputs, const FirstReadMap& f,
                         const AdversaryPolicy& policy) {
  return first_read_run(inputs, f, policy);
}

LowerBoundPlay lower_bound_adversary(const FirstReadMap& f) {
  check_map(f);
  LowerBoundPlay play_out;
  play_out.target = lower_bound_target(f, &play_out.shared_target);
  World w;
  bool safe = true;
  play_out.reads = play(w, play_out.target, 1, immediate(f), safe).reads;
  return play_out;
}

std::vector<FirstReadMap> all_first_read_maps() {
  std::vector<FirstReadMap> out;
  for (int mask = 0; mask < 8; ++mask) {
    FirstReadMap f;
    for (int i = 0; i < kProcesses; ++i) f[i] = (mask >> i) & 1 ? (i + 2) % 3 : (i + 1) % 3;
    out.push_back(f);
  }
  return out;
}

RunResult run_randomized(const std::vector<std::int64_t>& inputs, const AdversaryPolicy& policy,
                         CoinTape& tape) {
  if (policy.kind == PolicyKind::kLowerBound) {
    throw std::invalid_argument("the lower-bound adversary applies to deterministic algorithms");
  }
  World w;
  RunResult res;
  for (auto v : inputs) {
    const int target =
        choose_target(policy, [&](int i) { return expected_reads(w, i, v); }, std::nullopt);
    std::array<int, 4> coins{};
    for (auto& c : coins) c = tape.next();
    res.inputs.push_back(play(w, target, v, from_coins(coins), res.safe));
    res.reads += res.inputs.back().reads;
  }
  res.opt_reads = 2 * static_cast<std::int64_t>(inputs.size());
  res.final_state = w.regs;
  return res;
}

ExactResult run_randomized_exact(std::size_t n, const AdversaryPolicy& policy) {
  if (n < 1) throw std::invalid_argument("need at least one input");
  if (policy.kind == PolicyKind::kLowerBound) {
    throw std::invalid_argument("the lower-bound adversary applies to deterministic algorithms");
  }
  ExactResult out;
  World w;
  bool safe = true;
  for (std::size_t k = 0; k < n; ++k) {
    const auto v = static_cast<std::int64_t>(k + 1);
    const int target =
        choose_target(policy, [&](int i) { return expected_reads(w, i, v); }, std::nullopt);
    out.targets.push_back(target);
    out.expected_reads += expected_reads(w, target, v);
    if (k == 0) {
      // p_j = p_{i+1}; its coins are the pair with slot 0 when j < k.
      const int j = (target + 1) % 3;
      const int kk = (target + 2) % 3;
      const int j_slot = j < kk ? 0 : 2;
      const std::array<std::pair<int, bool>, 4> branch{
          {{0, true}, {1, true}, {0, false}, {1, false}}};  // (delay coin, reads R_i)
      for (int b = 0; b < 4; ++b) {
        std::int64_t total = 0;
        int count = 0;
        for (int mask = 0; mask < 16; ++mask) {
          const auto coins = coins_of(mask);
          const int first = coins[j_slot + 1] ? (j + 2) % 3 : (j + 1) % 3;
          if (coins[j_slot] != branch[b].first || (first == target) != branch[b].second) continue;
          World copy = w;
          bool ignored = true;
          total += play(copy, target, v, from_coins(coins), ignored).reads;
          ++count;
        }
        out.branches[b] = Rational(total, count);
      }
    }
    // Every outcome leaves the same lists; advance with any of them.
    play(w, target, v, from_coins({0, 0, 0, 0}), safe);
  }
  out.per_input = out.expected_reads / static_cast<std::int64_t>(n);
  out.ratio = out.per_input / 2;
  return out;
}

MonteCarloResult run_randomized_monte_carlo(std::size_t n, std::size_t samples,
                                            std::uint64_t seed, const AdversaryPolicy& policy) {
  if (n < 1 || samples < 1) throw std::invalid_argument("need inputs and samples");
  std::vector<std::int64_t> inputs(n);
  for (std::size_t k = 0; k < n; ++k) inputs[k] = static_cast<std::int64_t>(k + 1);
  // The adaptive choice does not depend on the coins of the current input,
  // and gating makes it independent of earlier ones, so fix it once.
  AdversaryPolicy fixed = policy;
  if (policy.kind == PolicyKind::kAdaptiveOffline) {
    fixed.kind = PolicyKind::kFixedTarget;
    fixed.target = run_randomized_exact(1, policy).targets.front();
  }
  auto tape = CoinTape::from_seed(seed);
  std::int64_t total = 0;
  for (std::size_t s = 0; s < samples; ++s) total += run_randomized(inputs, fixed, tape).reads;
  MonteCarloResult r;
  r.samples = samples;
  r.mean_reads = static_cast<double>(total) / static_cast<double>(samples * n);
  r.ratio = r.mean_reads / 2.0;
  return r;
}

}  // namespace listlab::findvalue
