#include <doctest.h>

#include "listlab/findvalue/findvalue.hpp"

using namespace listlab;
using namespace listlab::findvalue;

namespace {

std::vector<std::int64_t> numbers(std::size_t n) {
  std::vector<std::int64_t> v;
  for (std::size_t k = 0; k < n; ++k) v.push_back(static_cast<std::int64_t>(100 + k));
  return v;
}

const AdversaryPolicy kAdaptive{PolicyKind::kAdaptiveOffline, 0};
const AdversaryPolicy kLowerBoundPolicy{PolicyKind::kLowerBound, 0};

}  // namespace

TEST_CASE("deterministic algorithm: three reads per input under every policy") {
  for (const auto& policy : {kAdaptive, kLowerBoundPolicy, AdversaryPolicy{PolicyKind::kFixedTarget, 0},
                             AdversaryPolicy{PolicyKind::kFixedTarget, 1},
                             AdversaryPolicy{PolicyKind::kFixedTarget, 2}}) {
    auto r = run_deterministic(numbers(1), policy);
    CHECK(r.reads == 3);
    CHECK(r.opt_reads == 2);
    r = run_deterministic(numbers(10), policy);
    CHECK(r.reads == 30);
    CHECK(r.opt_reads == 20);
    CHECK(r.ratio() == Rational(3, 2));
    CHECK(r.safe);
    CHECK(r.final_state.agree());
    CHECK(r.final_state.registers[0].size() == 10);
    for (const auto& in : r.inputs) CHECK(in.reads == 3);
  }
}

TEST_CASE("final registers hold the inputs in order") {
  const auto r = run_deterministic({7, 8, 9}, AdversaryPolicy{PolicyKind::kFixedTarget, 1});
  const EntryList want{{1, 7}, {1, 8}, {1, 9}};
  for (const auto& reg : r.final_state.registers) CHECK(reg == want);
}

TEST_CASE("lower-bound adversary") {
  const auto cyclic = lower_bound_adversary({1, 2, 0});
  CHECK_FALSE(cyclic.shared_target);
  CHECK(cyclic.target == 2);
  CHECK(cyclic.reads == 3);

  const auto shared = lower_bound_adversary({2, 2, 0});
  CHECK(shared.shared_target);
  CHECK(shared.reads >= 3);
  CHECK(shared.target == 1);

  const auto maps = all_first_read_maps();
  CHECK(maps.size() == 8);
  int least = 100;
  for (const auto& f : maps) {
    const auto play = lower_bound_adversary(f);
    CHECK(play.reads >= 3);
    least = std::min(least, play.reads);
    CHECK(run_first_read(numbers(4), f, kLowerBoundPolicy).reads >= 12);
  }
  CHECK(least == 3);
  CHECK_THROWS_AS(lower_bound_adversary({0, 2, 0}), std::invalid_argument);
  CHECK_THROWS_AS(lower_bound_adversary({1, 3, 0}), std::invalid_argument);
}

TEST_CASE("exact randomized expectation") {
  const auto e = run_randomized_exact(1, kAdaptive);
  CHECK(e.expected_reads == Rational(23, 8));
  CHECK(e.ratio == Rational(23, 16));
  CHECK(e.branches[0] == Rational(9, 4));
  CHECK(e.branches[1] == Rational(5, 2));
  CHECK(e.branches[2] == Rational(7, 2));
  CHECK(e.branches[3] == Rational(13, 4));
  Rational sum;
  for (const auto& b : e.branches) sum += b / 4;
  CHECK(sum == e.expected_reads);
  for (int t = 0; t < 3; ++t) {
    CHECK(run_randomized_exact(1, {PolicyKind::kFixedTarget, t}).per_input == Rational(23, 8));
  }
  const auto many = run_randomized_exact(5, kAdaptive);
  CHECK(many.expected_reads == Rational(115, 8));
  CHECK(many.ratio < Rational(3, 2));
  CHECK_THROWS_AS(run_randomized_exact(1, kLowerBoundPolicy), std::invalid_argument);
}

TEST_CASE("coin tapes") {
  // Delay/target coins for the two notified processes of one input.
  auto tape = CoinTape::from_hex("0");
  auto r = run_randomized({5}, {PolicyKind::kFixedTarget, 0}, tape);
  // p1 reads R_2 at once (miss, then R_0); p2 reads R_0 at once.
  CHECK(r.reads == 3);
  CHECK(r.safe);
  CHECK(tape.used() == 4);
  auto t2 = CoinTape::from_hex("0");
  CHECK_THROWS_AS(run_randomized({5, 6}, kAdaptive, t2), std::out_of_range);
  CHECK_THROWS_AS(CoinTape::from_hex("0g"), std::invalid_argument);
  auto bits = CoinTape::from_bits({true, false});
  CHECK(bits.next());
  CHECK_FALSE(bits.next());
  auto a = CoinTape::from_seed(3), b = CoinTape::from_seed(3);
  for (int k = 0; k < 200; ++k) CHECK(a.next() == b.next());
}

TEST_CASE("every tape stays safe and costs 2 to 4 reads") {
  for (int mask = 0; mask < 16; ++mask) {
    std::vector<bool> bits;
    for (int b = 3; b >= 0; --b) bits.push_back((mask >> b) & 1);
    auto tape = CoinTape::from_bits(bits);
    const auto r = run_randomized({1}, {PolicyKind::kFixedTarget, 1}, tape);
    CHECK(r.safe);
    CHECK(r.reads >= 2);
    CHECK(r.reads <= 4);
  }
}

TEST_CASE("Monte Carlo agrees with the exact value") {
  const auto mc = run_randomized_monte_carlo(1, 200000, 17, kAdaptive);
  CHECK(mc.mean_reads == doctest::Approx(2.875).epsilon(0.01));
  CHECK(run_randomized_monte_carlo(2, 1000, 5, kAdaptive).mean_reads ==
        run_randomized_monte_carlo(2, 1000, 5, kAdaptive).mean_reads);
}
