#include <doctest.h>

#include <random>

#include "listlab/errors.hpp"
#include "listlab/harness/account.hpp"
#include "listlab/harness/experiment.hpp"
#include "listlab/harness/explore.hpp"
#include "listlab/harness/linearize.hpp"
#include "listlab/harness/runner.hpp"
#include "listlab/harness/stress.hpp"
#include "listlab/merge/phase.hpp"
#include "listlab/seq/mtf.hpp"
#include "support/oracles.hpp"

using namespace listlab;
using namespace listlab::harness;

namespace {

ScheduleSpec kind(ScheduleKind k) {
  ScheduleSpec s;
  s.kind = k;
  return s;
}

Workload both_want_rear() { return Workload{{1, 2}, {{2}, {2}}}; }

Workload random_workload(std::mt19937_64& rng, std::size_t p, std::size_t ell, std::size_t len) {
  Workload w;
  for (std::size_t k = 1; k <= ell; ++k) w.initial.push_back(static_cast<ItemId>(k));
  w.requests.resize(p);
  for (auto& r : w.requests) {
    for (std::size_t k = 0; k < len; ++k) r.push_back(static_cast<ItemId>(1 + rng() % ell));
  }
  return w;
}

std::vector<std::size_t> order_of(const std::vector<ProcessStatus>& st, ScheduleSpec spec,
                                  int n) {
  Scheduler s(std::move(spec), st.size());
  std::vector<std::size_t> out;
  for (int k = 0; k < n; ++k) {
    auto p = s.next(st);
    if (!p) break;
    out.push_back(*p);
  }
  return out;
}

}  // namespace

TEST_CASE("schedule specs round-trip through JSON") {
  for (const char* text :
       {R"([0,1,1])", R"({"kind":"round_robin"})", R"({"kind":"random","seed":42})",
        R"({"kind":"sequential"})", R"({"kind":"synchronized"})",
        R"({"kind":"batches","groups":[[0,1],[1]]})", R"({"kind":"merge_order","order":[1,0]})"}) {
    const auto spec = schedule_from_json(nlohmann::json::parse(text));
    CHECK(schedule_from_json(to_json(spec)) == spec);
  }
  CHECK_THROWS_AS(schedule_from_json(nlohmann::json::parse(R"({"kind":"zigzag"})")),
                  std::invalid_argument);
  CHECK_THROWS_AS(schedule_from_json(nlohmann::json::parse(R"({"kind":"random"})")),
                  std::invalid_argument);
  CHECK_THROWS_AS(schedule_from_json(nlohmann::json::parse(R"([0,-1])")), std::invalid_argument);
  CHECK_THROWS_AS(Scheduler(schedule_from_json(nlohmann::json::parse("[3]")), 2),
                  std::invalid_argument);
}

TEST_CASE("scheduler generators") {
  const std::vector<ProcessStatus> st{{false, 2}, {true, 0}, {false, 0}};
  CHECK(order_of(st, kind(ScheduleKind::kRoundRobin), 4) == std::vector<std::size_t>{0, 1, 0, 1});
  CHECK(order_of(st, kind(ScheduleKind::kSequential), 3) == std::vector<std::size_t>{0, 1, 1});
  auto r = kind(ScheduleKind::kRandom);
  r.seed = 9;
  const auto a = order_of(st, r, 20);
  CHECK(a == order_of(st, r, 20));
  for (auto p : a) CHECK(p != 2);
}

TEST_CASE("single process run") {
  const auto h = run(Workload{{1, 2}, {{1}}}, kind(ScheduleKind::kRoundRobin));
  CHECK(h.complete);
  CHECK(h.ops.size() == 1);
  int invokes = 0, responds = 0;
  for (const auto& e : h.events) {
    invokes += e.kind == EventKind::kInvoke;
    responds += e.kind == EventKind::kRespond;
  }
  CHECK(invokes == 1);
  CHECK(responds == 1);
  CHECK(h.ops[0].result == 0);
  CHECK(h.violations.empty());
}

TEST_CASE("events alternate per process and accesses sit inside operations") {
  std::mt19937_64 rng(5);
  for (int t = 0; t < 50; ++t) {
    auto s = kind(ScheduleKind::kRandom);
    s.seed = rng();
    const auto h = run(random_workload(rng, 3, 4, 3), s);
    std::vector<bool> open(3, false);
    for (const auto& e : h.events) {
      if (e.kind == EventKind::kInvoke) {
        CHECK_FALSE(open[e.process]);
        open[e.process] = true;
      } else {
        CHECK(open[e.process]);
        if (e.kind == EventKind::kRespond) open[e.process] = false;
      }
    }
  }
}

TEST_CASE("concurrent searchers of the rear item each pay the full position") {
  const auto rr = run(both_want_rear(), kind(ScheduleKind::kRoundRobin));
  const auto sq = run(both_want_rear(), kind(ScheduleKind::kSequential));
  REQUIRE(rr.complete);
  REQUIRE(sq.complete);
  CHECK(rr.ops[0].item_reads == 2);
  CHECK(rr.ops[1].item_reads == 2);
  CHECK(account(rr).item_level == 4);
  CHECK(sq.ops[0].item_reads == 2);
  CHECK(sq.ops[1].item_reads == 1);
  CHECK(account(sq).item_level == 3);
}

TEST_CASE("replay is deterministic") {
  std::mt19937_64 rng(11);
  const auto w = random_workload(rng, 3, 5, 4);
  auto s = kind(ScheduleKind::kRandom);
  s.seed = 77;
  const auto a = run(w, s);
  const auto b = run(w, s);
  CHECK(to_ndjson(a) == to_ndjson(b));
  // Replaying the stepped processes as an explicit schedule gives the same events.
  ScheduleSpec e;
  e.kind = ScheduleKind::kExplicit;
  e.steps = a.schedule;
  auto c = run(w, e);
  c.spec = a.spec;
  CHECK(to_ndjson(a) == to_ndjson(c));
}

TEST_CASE("step bound leaves operations pending") {
  RunConfig cfg;
  cfg.step_bound = 7;
  const auto h = run(both_want_rear(), kind(ScheduleKind::kRoundRobin), cfg);
  CHECK_FALSE(h.complete);
  CHECK(h.steps == 7);
  const auto lin = check_linearizable(h);
  CHECK(lin.ok());
  const auto c = account(h);
  CHECK(c.completed == 0);
  CHECK(c.pending == 2);
}

TEST_CASE("sequential histories linearize in invocation order") {
  std::mt19937_64 rng(2);
  for (int t = 0; t < 30; ++t) {
    const auto w = random_workload(rng, 3, 4, 3);
    const auto h = run(w, kind(ScheduleKind::kSequential));
    const auto lin = check_linearizable(h);
    REQUIRE(lin.ok());
    std::vector<std::size_t> ids(h.ops.size());
    for (std::size_t k = 0; k < ids.size(); ++k) ids[k] = k;
    CHECK(lin.witness->order == ids);
    const auto c = account(h);
    const auto init = seq::make_list(std::vector<std::uint32_t>(w.initial.begin(), w.initial.end()));
    CHECK(c.op_level == c.item_level);
    CHECK(c.op_level == seq::mtf_run(c.linearized, init).cost);
  }
}

TEST_CASE("an informed search linearizes after the informer at its prepend") {
  // p1 announces, p0 runs its whole search (and informs p1), then p1 finishes.
  ScheduleSpec s;
  s.kind = ScheduleKind::kExplicit;
  s.steps = {1, 1};
  for (int k = 0; k < 60; ++k) s.steps.push_back(0);
  for (int k = 0; k < 60; ++k) s.steps.push_back(1);
  const auto h = run(both_want_rear(), s);
  REQUIRE(h.complete);
  REQUIRE(h.violations.empty());
  CHECK(h.ops[0].process == 1);
  CHECK(h.ops[0].result == h.ops[1].result);
  const auto lin = check_linearizable(h);
  REQUIRE(lin.ok());
  CHECK(lin.witness->order == std::vector<std::size_t>{1, 0});
  CHECK(lin.witness->points[0] == lin.witness->points[1]);
}

TEST_CASE("corrupted histories yield counterexamples") {
  auto h = run(both_want_rear(), kind(ScheduleKind::kSequential));
  REQUIRE(check_linearizable(h).ok());
  auto bad = h;
  bad.ops[1].result = 1;  // original node of item 2, never at the front
  auto lin = check_linearizable(bad);
  REQUIRE_FALSE(lin.ok());
  CHECK(lin.counterexample->prefix.size() == lin.counterexample->event + 1);
  CHECK_THROWS_AS(account(bad), std::invalid_argument);

  bad = h;
  bad.ops[0].result = dmtf::kNotPresent;
  CHECK_FALSE(check_linearizable(bad).ok());

  bad = h;
  bad.final_list = {1, 2};
  CHECK_FALSE(check_linearizable(bad).ok());
}

TEST_CASE("skipping the inform step is caught") {
  ExploreConfig cfg;
  cfg.workload = both_want_rear();
  cfg.run.faults.skip_inform = true;
  cfg.run.step_bound = 200;
  const auto rep = explore_all(cfg);
  CHECK_FALSE(rep.passed());
}

TEST_CASE("unlinking the last node with NULL lets a late helper relink it") {
  // p0 stalls after reading the front's old field; p1 finishes, moves item 1
  // and unlinks its old node from the tail; p0 then sets next on its stale h1.
  const std::string bits = "00000000000000000111111111111111111111111111111111111111111000011111000000000";
  ScheduleSpec spec = kind(ScheduleKind::kExplicit);
  for (char c : bits) spec.steps.push_back(static_cast<std::size_t>(c - '0'));
  const Workload w{{1, 2}, {{2}, {1}}};
  RunConfig literal;
  literal.faults.null_tail = true;
  const auto bad = run(w, spec, literal);
  REQUIRE(bad.complete);
  CHECK_FALSE(bad.violations.empty());
  CHECK_FALSE(check_linearizable(bad).ok());

  const auto good = run(w, spec, RunConfig{});
  CHECK(good.violations.empty());
  CHECK(check_linearizable(good).ok());
  CHECK(good.final_list == std::vector<ItemId>{1, 2});

  ExploreConfig cfg;
  cfg.workload = Workload{{1, 2}, {{2}, {1}}};
  cfg.run.step_bound = 200;
  CHECK(explore_all(cfg).passed());
  cfg.run.faults.null_tail = true;
  CHECK_FALSE(explore_all(cfg).passed());
}

TEST_CASE("exhaustive exploration") {
  ExploreConfig one;
  one.workload = Workload{{1, 2}, {{2, 1}}};
  auto rep = explore_all(one);
  CHECK(rep.terminals == 1);
  CHECK(rep.passed());

  ExploreConfig two;
  two.workload = both_want_rear();
  two.run.step_bound = 200;
  std::size_t checked = 0;
  rep = explore_all(two, [&](const ExecutionHistory& h) {
    CHECK(h.complete);
    CHECK(check_linearizable(h).ok());
    ++checked;
  });
  CHECK(rep.passed());
  CHECK(rep.bounded == 0);
  CHECK(checked == rep.terminals);
  CHECK(rep.terminals > 1);
  CHECK(explore_all(two).states == rep.states);

  two.max_states = 10;
  CHECK_THROWS_AS(explore_all(two), BudgetExceeded);
}

TEST_CASE("cost levels on random runs") {
  std::mt19937_64 rng(13);
  for (int t = 0; t < 1000; ++t) {
    const std::size_t p = 1 + rng() % 4;
    const std::uint32_t phi = 1 + rng() % 3;
    auto s = kind(ScheduleKind::kRandom);
    s.seed = rng();
    RunConfig cfg;
    cfg.phi = phi;
    const auto h = run(random_workload(rng, p, 2 + rng() % 4, 4), s, cfg);
    REQUIRE(h.violations.empty());
    const auto lin = check_linearizable(h);
    REQUIRE(lin.ok());
    const auto c = account(h, *lin.witness);
    CHECK(c.op_level >= 0);
    CHECK(c.item_level <= c.actual);
    CHECK(c.actual <= actual_cost_bound(c, p, phi));
    const auto init = seq::make_list(
        std::vector<std::uint32_t>(h.workload.initial.begin(), h.workload.initial.end()));
    CHECK(pairwise_property_holds(c.linearized, init));
  }
}

TEST_CASE("cost report as CSV") {
  const auto c = account(run(both_want_rear(), kind(ScheduleKind::kSequential)));
  CHECK(cost_csv_header() == "model,op_level,item_level,actual,completed,pending");
  CHECK(to_csv_row(c).rfind("full,3,3,", 0) == 0);
}

TEST_CASE("synchronized waves make every searcher find the rear item") {
  for (std::size_t p : {2u, 3u}) {
    const auto w = chase_rear_workload(p, 4, 8);
    const auto h = run(w, kind(ScheduleKind::kSynchronized));
    REQUIRE(h.complete);
    REQUIRE(h.violations.empty());
    for (const auto& op : h.ops) CHECK(op.item_reads == 4);
    const auto r = ratio_linearization(w, kind(ScheduleKind::kSynchronized), {},
                                       seq::CostModel::kPartial);
    CHECK(r.dmtf == static_cast<std::int64_t>(p * 3 * 8));
    CHECK(r.opt_upper == 3 * 8);
    CHECK(r.opt_lower <= r.opt_upper);
  }
}

TEST_CASE("ratio with a single process stays below the sequential bound") {
  std::mt19937_64 rng(21);
  for (int t = 0; t < 100; ++t) {
    const auto w = random_workload(rng, 1, 3, 6);
    const auto r = ratio_linearization(w, kind(ScheduleKind::kSequential), {},
                                       seq::CostModel::kFull);
    REQUIRE(r.opt_exact);
    CHECK(*r.ratio_upper <= Rational(2) - Rational(2, 4));
  }
}

TEST_CASE("fully adversarial mode uses the supplied merge") {
  const auto w = chase_rear_workload(2, 3, 3);
  const auto r = ratio_adversarial(w, kind(ScheduleKind::kSynchronized), {},
                                   seq::make_sequence({1, 1, 1, 1, 1, 1}), seq::CostModel::kFull);
  CHECK(r.opt_exact);
  CHECK(r.opt_lower == 6);
  CHECK(r.dmtf == 18);
}

TEST_CASE("batches reproduce the phase costs") {
  // List (1, 2): phase (b) with k = 1 is y x y y; the final y pair is one
  // concurrent wave of p searches.
  for (std::int64_t p : {2, 3}) {
    Workload w{{1, 2}, std::vector<std::vector<ItemId>>(p)};
    w.requests[0] = {2, 1, 2};
    for (std::int64_t q = 1; q < p; ++q) w.requests[q] = {2};
    ScheduleSpec s;
    s.kind = ScheduleKind::kBatches;
    s.groups = {{0}, {0}, {}};
    for (std::int64_t q = 0; q < p; ++q) s.groups.back().push_back(q);
    const auto h = run(w, s);
    REQUIRE(h.complete);
    const auto c = account(h, seq::CostModel::kPartial);
    const auto phases = merge::phase_partition(c.linearized, {seq::Item(1), seq::Item(2)});
    REQUIRE(phases.size() == 1);
    CHECK(phases[0].form == merge::PhaseForm::kB);
    const auto pc = merge::phase_costs(phases[0], p);
    CHECK(c.item_level == pc.dmtf_bound);
    CHECK(seq::opt_partial_pair_lower_bound(c.linearized, seq::make_list({1, 2})) == pc.opt_cost);
  }
}

TEST_CASE("native stress, small") {
  StressConfig cfg;
  cfg.processes = 3;
  cfg.ell = 8;
  cfg.total_searches = 3000;
  const auto r = stress_native(cfg);
  CHECK(r.passed());
  CHECK(r.searches == 3000);
}
