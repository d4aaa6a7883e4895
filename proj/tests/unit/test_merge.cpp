#include <doctest.h>

#include <random>

#include "listlab/merge/bounds.hpp"
#include "listlab/merge/disjoint.hpp"
#include "listlab/merge/lower_bound.hpp"
#include "listlab/merge/partition.hpp"
#include "listlab/merge/phase.hpp"
#include "listlab/merge/reverse.hpp"
#include "listlab/seq/distance.hpp"
#include "listlab/seq/opt.hpp"
#include "support/oracles.hpp"

using namespace listlab;
using namespace listlab::merge;
using seq::make_sequence;

namespace {

RequestSequence random_over(std::mt19937_64& rng, std::uint32_t first, std::uint32_t count,
                            std::size_t len) {
  RequestSequence s;
  for (std::size_t i = 0; i < len; ++i) s.push_back(Item(first + rng() % count));
  return s;
}

Merge random_merge(std::mt19937_64& rng, const std::vector<RequestSequence>& seqs) {
  std::vector<std::size_t> left;
  std::vector<std::size_t> taken(seqs.size(), 0);
  std::vector<Step> steps;
  std::size_t remaining = 0;
  for (const auto& s : seqs) remaining += s.size();
  while (remaining > 0) {
    std::size_t pick = rng() % remaining;
    for (std::size_t p = 0; p < seqs.size(); ++p) {
      const auto avail = seqs[p].size() - taken[p];
      if (pick < avail) {
        steps.push_back({p + 1, ++taken[p]});
        break;
      }
      pick -= avail;
    }
    --remaining;
  }
  return Merge(seqs, steps);
}

}  // namespace

TEST_CASE("merge validation and index maps") {
  const std::vector<RequestSequence> seqs{make_sequence({1, 2}), make_sequence({3})};
  const Merge m(seqs, {{1, 1}, {2, 1}, {1, 2}});
  CHECK(m.sequence() == make_sequence({1, 3, 2}));
  CHECK(m.position(1, 2) == 3);
  CHECK(m.position(2, 1) == 2);
  CHECK(m.sequence_of(1) == seqs[0]);
  CHECK_THROWS_AS(Merge(seqs, {{1, 2}, {1, 1}, {2, 1}}), std::invalid_argument);
  CHECK_THROWS_AS(Merge(seqs, {{1, 1}, {2, 1}}), std::invalid_argument);
  CHECK_THROWS_AS(Merge(seqs, {{1, 1}, {3, 1}, {1, 2}}), std::invalid_argument);
}

TEST_CASE("enumerate_merges counts") {
  CHECK(enumerate_merges({make_sequence({1}), make_sequence({2})}, 100).size() == 2);
  CHECK(enumerate_merges({make_sequence({1, 2}), make_sequence({3})}, 100).size() == 3);
  CHECK(enumerate_merges({make_sequence({1, 2}), make_sequence({3, 4})}, 100).size() == 6);
  CHECK(count_merges({make_sequence({1, 2}), make_sequence({3}), make_sequence({4, 5})}) == 30);
  CHECK_THROWS_AS(enumerate_merges({make_sequence({1, 2}), make_sequence({3, 4})}, 5),
                  BudgetExceeded);
}

TEST_CASE("enumerate_merges yields each interleaving once, like the subset oracle") {
  const std::vector<RequestSequence> seqs{make_sequence({1, 2, 1}), make_sequence({3, 4})};
  const auto ours = enumerate_merges(seqs, 1000);
  const auto ref = oracle::merges_of_two(3, 2);
  REQUIRE(ours.size() == ref.size());
  for (const auto& steps : ref) {
    const auto hits = std::count_if(ours.begin(), ours.end(),
                                    [&](const Merge& m) { return m.steps() == steps; });
    CHECK(hits == 1);
  }
}

TEST_CASE("make_disjoint examples") {
  const std::vector<RequestSequence> already{make_sequence({1}), make_sequence({2})};
  const auto same = make_disjoint(already, Merge::concatenation(already), 2);
  CHECK(same.sequences == already);

  const std::vector<RequestSequence> shared{make_sequence({1}), make_sequence({1})};
  const auto m = Merge::concatenation(shared);
  const auto out = make_disjoint(shared, m, 2);
  CHECK(pairwise_disjoint(out.sequences));
  CHECK(out.sequences[0] == shared[0]);
  CHECK(out.sequences[1] != shared[1]);
  CHECK(seq::total_distance(m.sequence(), 2) == 3);
  CHECK(seq::total_distance(out.merge.sequence(), 2) == 4);
}

TEST_CASE("make_disjoint keeps sequence distances and never lowers the merge distance") {
  std::mt19937_64 rng(41);
  for (int trial = 0; trial < 500; ++trial) {
    const auto ell = static_cast<std::uint32_t>(1 + rng() % 4);
    std::vector<RequestSequence> seqs{random_over(rng, 1, ell, rng() % 7),
                                      random_over(rng, 1, ell, rng() % 7)};
    const auto m = random_merge(rng, seqs);
    const auto out = make_disjoint(seqs, m, ell);
    CHECK(pairwise_disjoint(out.sequences));
    CHECK(out.merge.steps() == m.steps());
    for (std::size_t i = 0; i < seqs.size(); ++i) {
      CHECK(seq::distance(out.sequences[i], ell).per_index ==
            seq::distance(seqs[i], ell).per_index);
    }
    CHECK(seq::total_distance(out.merge.sequence(), ell) >= seq::total_distance(m.sequence(), ell));
  }
}

TEST_CASE("next_set examples") {
  {
    const std::vector<RequestSequence> seqs{make_sequence({1, 1}), make_sequence({2})};
    const Merge m(seqs, {{1, 1}, {2, 1}, {1, 2}});
    CHECK(next_set(m, 1, 1, 2).members == std::vector<Index>{1});
    CHECK(next_set(m, 1, 2, 2).members.empty());
  }
  {
    const std::vector<RequestSequence> seqs{make_sequence({1, 1}), make_sequence({2, 2})};
    const Merge m(seqs, {{1, 1}, {2, 1}, {2, 2}, {1, 2}});
    CHECK(next_set(m, 1, 1, 2).members == std::vector<Index>{1});
  }
}

TEST_CASE("next_set matches the set-builder definition") {
  std::mt19937_64 rng(43);
  for (int trial = 0; trial < 300; ++trial) {
    std::vector<RequestSequence> seqs{random_over(rng, 1, 3, 1 + rng() % 6),
                                      random_over(rng, 4, 3, 1 + rng() % 6)};
    const auto m = random_merge(rng, seqs);
    for (std::size_t src = 1; src <= 2; ++src) {
      const std::size_t tgt = 3 - src;
      for (Index h = 1; h <= seqs[src - 1].size(); ++h) {
        CHECK(next_set(m, src, h, tgt).members == oracle::next_set(m, src, h, tgt));
      }
    }
  }
}

TEST_CASE("build_partitions examples") {
  {
    const std::vector<RequestSequence> seqs{make_sequence({1}), make_sequence({2})};
    const auto parts = build_partitions(Merge(seqs, {{1, 1}, {2, 1}}));
    CHECK(parts.parts_i == std::vector<std::vector<Index>>{{1}});
    CHECK(parts.parts_j == std::vector<std::vector<Index>>{{}});
  }
  {
    const std::vector<RequestSequence> seqs{make_sequence({1, 1}), make_sequence({2})};
    const auto parts = build_partitions(Merge(seqs, {{1, 1}, {2, 1}, {1, 2}}));
    CHECK(parts.parts_i == std::vector<std::vector<Index>>{{1}, {2}});
    CHECK(parts.parts_j == std::vector<std::vector<Index>>{{1}, {}});
  }
  const std::vector<RequestSequence> overlap{make_sequence({1}), make_sequence({1})};
  CHECK_THROWS_AS(build_partitions(Merge::concatenation(overlap)), std::invalid_argument);
}

TEST_CASE("partition algorithm 1 groups the fresh items before a repeat") {
  // I = a b c b a: part 1 starts at the first a and takes b, c (fresh, before
  // the next a); the second b is not fresh because b occurred after a.
  const std::vector<RequestSequence> seqs{make_sequence({1, 2, 3, 2, 1}), make_sequence({9})};
  const auto parts = build_partitions(Merge::concatenation(seqs));
  CHECK(parts.parts_i == std::vector<std::vector<Index>>{{1, 2, 3}, {4}, {5}});
}

TEST_CASE("NEXT total can exceed |P| on a six-request instance") {
  // I = x y x y x y, J = w w, merged as I1 I2 I3 J1 I4 J2 I5 I6. J1 is taken by
  // the first part, and J2 is filtered out of the second part because w is
  // already in NEXT(3), so |P| = 2 while the NEXT sets hold 3 indices.
  const std::vector<RequestSequence> seqs{make_sequence({2, 1, 2, 1, 2, 1}),
                                          make_sequence({11, 11})};
  const Merge m(seqs, {{1, 1}, {1, 2}, {1, 3}, {2, 1}, {1, 4}, {2, 2}, {1, 5}, {1, 6}});
  const auto parts = build_partitions(m);
  CHECK(parts.parts_i == std::vector<std::vector<Index>>{{1, 2}, {3, 4}, {5}, {6}});
  CHECK(parts.parts_j == std::vector<std::vector<Index>>{{1}, {}, {}, {}});
  const auto rep = partition_report(m, 3);
  CHECK(rep.next_ij == 3);
  CHECK(rep.product == 2);
  CHECK_FALSE(rep.injective_bound());
  CHECK(rep.combined_bound());
}

TEST_CASE("partition bounds on random disjoint instances") {
  std::mt19937_64 rng(47);
  for (int trial = 0; trial < 300; ++trial) {
    const auto ell = static_cast<std::uint32_t>(2 + rng() % 5);
    const auto split = static_cast<std::uint32_t>(1 + rng() % (ell - 1));
    std::vector<RequestSequence> seqs{random_over(rng, 1, split, 1 + rng() % 12),
                                      random_over(rng, split + 1, ell - split, 1 + rng() % 12)};
    const auto m = random_merge(rng, seqs);
    const auto parts = build_partitions(m);
    CHECK(partitions_legal(m, parts));
    const auto rep = partition_report(m, ell);
    CHECK(rep.symmetric_bound());
    CHECK(rep.combined_bound());
    CHECK(rep.product_distance_bound());
  }
}

TEST_CASE("c_worst examples") {
  const std::vector<RequestSequence> one{make_sequence({1, 2, 1})};
  CHECK(check_c_worst(one, Merge::concatenation(one), 2).value == Rational(1));
  const std::vector<RequestSequence> twins{make_sequence({1}), make_sequence({1})};
  const auto c = check_c_worst(twins, Merge::concatenation(twins), 1);
  CHECK(c.value == Rational(1));
  CHECK(c.holds);
  const std::vector<RequestSequence> seqs{make_sequence({1, 2}), make_sequence({3, 4})};
  for_each_merge(seqs, 100, [&](const Merge& m) {
    const auto r = check_c_worst(seqs, m, 4);
    CHECK(r.holds);
    CHECK(r.value <= Rational(2));
  });
}

TEST_CASE("c_best examples") {
  const std::vector<RequestSequence> one{make_sequence({1, 2, 1})};
  CHECK(check_c_best(one, Merge::concatenation(one), 2).value == Rational(0));
  const std::vector<RequestSequence> shared{make_sequence({1}), make_sequence({1})};
  CHECK_THROWS_AS(check_c_best(shared, Merge::concatenation(shared), 1), std::invalid_argument);
  const auto inst = build_lower_bound_instance(2, 4, 2, 2);
  const auto disjoint = make_disjoint(inst.sequences, inst.merge_lo, 4);
  CHECK(check_c_best(disjoint.sequences, disjoint.merge, 4).holds);
}

TEST_CASE("composed merge bound on small instances") {
  std::mt19937_64 rng(53);
  for (int trial = 0; trial < 60; ++trial) {
    const auto ell = static_cast<std::uint32_t>(2 + rng() % 3);
    std::vector<RequestSequence> seqs{random_over(rng, 1, ell, 1 + rng() % 4),
                                      random_over(rng, 1, ell, 1 + rng() % 4)};
    const auto merges = enumerate_merges(seqs, 1000);
    for (const auto& m1 : merges) {
      for (const auto& m2 : merges) CHECK(check_merge_pair(seqs, m1, m2, ell).holds);
    }
  }
}

TEST_CASE("lower-bound instance for p=2, ell=4, r=s=1") {
  const auto inst = build_lower_bound_instance(2, 4, 1, 1);
  CHECK(inst.sequences[0] == make_sequence({1, 2, 2, 1, 3, 4, 4, 3}));
  CHECK(inst.sequences[1] == make_sequence({3, 4, 4, 3, 1, 2, 2, 1}));
  CHECK(inst.merge_hi.sequence() ==
        make_sequence({1, 2, 3, 4, 2, 1, 4, 3, 1, 2, 3, 4, 2, 1, 4, 3}));
  // Fused block 2 of process 1 with block 1 of process 2, leftovers around it.
  CHECK(inst.merge_lo.sequence() ==
        make_sequence({1, 2, 2, 1, 3, 3, 4, 4, 4, 4, 3, 3, 1, 2, 2, 1}));
  CHECK_THROWS_AS(build_lower_bound_instance(2, 5, 1, 1), std::invalid_argument);
  CHECK_THROWS_AS(build_lower_bound_instance(1, 4, 1, 1), std::invalid_argument);
}

TEST_CASE("ratio limits") {
  CHECK(ratio_limit(2, 8) == Rational(26, 7));
  CHECK(ratio_limit(3, 9) == Rational(6));
  CHECK(hi_average_limit(2, 8) == Rational(26, 4));
}

TEST_CASE("reverse ordering minimum by brute force") {
  CHECK(min_reverse_distance(make_sequence({1})) == 1);
  CHECK(min_reverse_distance(make_sequence({1, 2, 3})) == 6);
  CHECK(min_reverse_distance(make_sequence({1, 2, 3, 4, 5})) == 15);
  CHECK_THROWS_AS(min_reverse_distance(make_sequence({1, 1})), std::invalid_argument);
}

TEST_CASE("phase partition examples") {
  const Item x(1), y(2);
  auto ph = phase_partition(make_sequence({2, 2, 2}), {x, y});
  REQUIRE(ph.size() == 1);
  CHECK(ph[0].form == PhaseForm::kA);
  CHECK(ph[0].type == 1);
  CHECK(ph[0].j == 1);

  ph = phase_partition(make_sequence({2, 1, 2, 1, 1, 1}), {x, y});
  REQUIRE(ph.size() == 1);
  CHECK(ph[0].form == PhaseForm::kC);
  CHECK(ph[0].k == 2);
  CHECK(ph[0].j == 1);
  CHECK(ph[0].complete);

  ph = phase_partition(make_sequence({1, 1, 2}), {x, y});
  REQUIRE(ph.size() == 2);
  CHECK(ph[0].type == 2);
  CHECK(ph[0].form == PhaseForm::kA);
  CHECK(ph[1].complete == false);
}

TEST_CASE("phase partition covers the sequence and alternates types after (a)/(b)") {
  std::mt19937_64 rng(59);
  for (int trial = 0; trial < 300; ++trial) {
    const auto s = random_over(rng, 1, 2, rng() % 30);
    const auto phases = phase_partition(s, {Item(1), Item(2)});
    RequestSequence joined;
    for (std::size_t i = 0; i < phases.size(); ++i) {
      joined.insert(joined.end(), phases[i].requests.begin(), phases[i].requests.end());
      if (i + 1 < phases.size()) CHECK(phases[i].complete);
    }
    CHECK(joined == s);
  }
}

TEST_CASE("phase costs follow the table and OPT matches on constructed phases") {
  const Item x(1), y(2);
  auto one = [&](const RequestSequence& s) { return phase_partition(s, {x, y}).at(0); };
  auto c = phase_costs(one(make_sequence({2, 2, 2})), 3);
  CHECK(c.dmtf_bound == 3);
  CHECK(c.opt_cost == 1);
  c = phase_costs(one(make_sequence({2, 1, 2, 2})), 2);
  CHECK(c.dmtf_bound == 4);
  CHECK(c.opt_cost == 2);
  CHECK(c.ratio_bound == Rational(2));
  c = phase_costs(one(make_sequence({2, 1, 1})), 2);
  CHECK(c.dmtf_bound == 3);
  CHECK(c.opt_cost == 1);
  CHECK(phase_ratio_bound(2, 1) == Rational(3));

  // The optimal partial cost of each complete phase equals the table value.
  for (std::int64_t k = 0; k <= 3; ++k) {
    for (std::int64_t j = 0; j <= 2; ++j) {
      RequestSequence b, cc;
      for (std::int64_t i = 0; i < k; ++i) {
        b.insert(b.end(), {y, x});
        cc.insert(cc.end(), {y, x});
      }
      b.insert(b.end(), {y, y});
      for (std::int64_t i = 0; i < j; ++i) b.push_back(y);
      const auto pb = one(b);
      CHECK(seq::opt_partial_pair_lower_bound(b, seq::make_list({1, 2})) == phase_costs(pb, 2).opt_cost);
      if (k >= 1) {
        cc.push_back(x);
        for (std::int64_t i = 0; i < j; ++i) cc.push_back(x);
        const auto pc = one(cc);
        CHECK(pc.form == PhaseForm::kC);
        CHECK(seq::opt_partial_pair_lower_bound(cc, seq::make_list({1, 2})) ==
              phase_costs(pc, 2).opt_cost);
      }
    }
  }
  Phase incomplete;
  incomplete.complete = false;
  CHECK_THROWS_AS(phase_costs(incomplete, 2), std::invalid_argument);
}
