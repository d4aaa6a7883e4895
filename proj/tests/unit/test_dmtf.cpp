#include <doctest.h>

#include <random>
#include <thread>

#include "listlab/dmtf/interpreter.hpp"
#include "listlab/dmtf/native.hpp"

using namespace listlab::dmtf;

namespace {

struct Recorder : Observer {
  std::vector<std::string> log;
  void on_alloc(std::size_t p, NodeRef n, ItemId item) override {
    log.push_back("alloc p" + std::to_string(p) + " " + ref_name(n) + " " + std::to_string(item));
  }
  void on_access(const AccessRecord& a) override {
    log.push_back(std::to_string(a.process) + " " + std::string(line_name(a.line)) + " " +
                  std::string(cell_kind_name(a.cell)) + " " + ref_name(a.node) + " " +
                  std::string(field_name(a.field)) + " " + std::to_string(a.slot) + " " +
                  std::string(access_kind_name(a.kind)) + " " + std::to_string(a.expected) +
                  " " + std::to_string(a.desired) + " " + std::to_string(a.observed) + " " +
                  (a.success ? "ok" : "fail"));
  }
};

MachineConfig config(std::size_t p, std::uint32_t phi = 1) {
  MachineConfig c;
  c.processes = p;
  c.phi = phi;
  return c;
}

}  // namespace

TEST_CASE("initial state") {
  DmtfInterpreter m({1, 2, 3}, config(2));
  const auto& s = m.snapshot();
  CHECK(list_items(s) == std::vector<ItemId>{1, 2, 3});
  CHECK(s.head == HeadPair{0, 1});
  for (const auto& n : s.nodes) {
    CHECK(n.old == kDone);
    CHECK(n.nw == kNull);
  }
  CHECK(s.nodes[0].prev == kNull);
  CHECK(s.nodes[2].next == kNull);
  CHECK(snapshot_invariants(s, true).empty());
  CHECK(m.quiescent());
}

TEST_CASE("constructor validation") {
  CHECK_THROWS_AS(DmtfInterpreter({1}, config(1)), std::invalid_argument);
  CHECK_THROWS_AS(DmtfInterpreter({1, 1}, config(1)), std::invalid_argument);
  CHECK_THROWS_AS(DmtfInterpreter({0, 1}, config(1)), std::invalid_argument);
  CHECK_THROWS_AS(DmtfInterpreter({1, 2}, config(0)), std::invalid_argument);
  CHECK_THROWS_AS(DmtfInterpreter({1, 2}, config(1, 0)), std::invalid_argument);
  DmtfInterpreter m({1, 2}, config(1));
  m.invoke(0, 1);
  CHECK_THROWS_AS(m.invoke(0, 2), std::logic_error);
}

TEST_CASE("searching the front item") {
  DmtfInterpreter m({1, 2, 3}, config(1));
  m.invoke(0, 1);
  std::vector<Line> lines;
  StepOutcome out;
  do {
    out = m.step(0);
    lines.push_back(out.result.line);
  } while (!out.result.returned);
  CHECK(lines == std::vector<Line>{Line::kAllocate, Line::kAnnounce, Line::kGetHead,
                                   Line::kAtFront, Line::kUnannFront1});
  CHECK(out.result.result == 0);
  CHECK(m.program(0).idle());
  CHECK(m.step(0).idle);
  CHECK(list_items(m.snapshot()) == std::vector<ItemId>{1, 2, 3});
  CHECK(snapshot_invariants(m.snapshot(), true).empty());
  CHECK(m.memory().violations().empty());
}

TEST_CASE("front search costs four shared accesses") {
  NativeDmtf d({1, 2, 3}, config(1), 16);
  const auto out = d.search(0, 1);
  CHECK(out.steps == 5);
  CHECK(out.shared_accesses == 4);
  CHECK(out.item_reads == 1);
  CHECK(out.node == 0);
}

TEST_CASE("absent item") {
  DmtfInterpreter m({1, 2, 3}, config(1));
  CHECK(m.run_to_completion(0, 9) == kNotPresent);
  CHECK(list_items(m.snapshot()) == std::vector<ItemId>{1, 2, 3});
  CHECK(snapshot_invariants(m.snapshot(), true).empty());
  CHECK(m.program(0).item_reads == 3);
}

TEST_CASE("found item moves to the front") {
  DmtfInterpreter m({1, 2, 3}, config(1));
  const NodeRef r = m.run_to_completion(0, 2);
  const auto& s = m.snapshot();
  REQUIRE(is_node(r));
  CHECK(s.nodes[r].item == 2);
  CHECK(r == 3);
  CHECK(list_items(s) == std::vector<ItemId>{2, 1, 3});
  CHECK(s.nodes[3].old == kDone);
  CHECK(s.nodes[1].nw == kGone);
  CHECK(s.head == HeadPair{3, 0});
  CHECK(snapshot_invariants(s, true).empty());
  CHECK(m.memory().violations().empty());

  // Moving the last item exercises the no-successor branch.
  CHECK(m.snapshot().nodes[m.run_to_completion(0, 3)].item == 3);
  CHECK(list_items(m.snapshot()) == std::vector<ItemId>{3, 2, 1});
  CHECK(snapshot_invariants(m.snapshot(), true).empty());
  CHECK(m.memory().violations().empty());
}

TEST_CASE("phi sets how often the walk polls the announcement") {
  auto polls = [](std::uint32_t phi) {
    DmtfInterpreter m({1, 2, 3, 4, 5, 6, 7}, config(1, phi));
    m.invoke(0, 7);
    int n = 0;
    for (;;) {
      const auto out = m.step(0);
      n += out.result.line == Line::kReadAnn3;
      if (out.result.returned) break;
    }
    CHECK(list_items(m.snapshot()).front() == 7);
    CHECK(snapshot_invariants(m.snapshot(), true).empty());
    return n;
  };
  CHECK(polls(1) == 5);
  CHECK(polls(2) == 2);
  CHECK(polls(5) == 1);
}

TEST_CASE("corrupted snapshots are rejected") {
  DmtfInterpreter m({1, 2, 3}, config(1));
  auto s = m.snapshot();
  s.nodes[1].old = kNull;
  CHECK_FALSE(snapshot_invariants(s, true).empty());
  s = m.snapshot();
  s.nodes[2].next = 0;
  CHECK_FALSE(snapshot_invariants(s, true).empty());
  s = m.snapshot();
  s.announcements[0] = {0, 1};
  CHECK_FALSE(snapshot_invariants(s, true).empty());
  CHECK(snapshot_invariants(s, false).empty());
  s = m.snapshot();
  s.prepend_count[0] = 2;
  CHECK_FALSE(snapshot_invariants(s, false).empty());
}

TEST_CASE("rule violations are recorded by the interpreter") {
  InterpMemory mem({1, 2}, 2);
  mem.read(0, Line::kGetPrev, kNull, Field::kPrev);
  CHECK(mem.violations().size() == 1);
  const NodeRef g = mem.allocate(1, 1);
  mem.cas_ann(0, Line::kAnnounce, 1, Announcement{}, Announcement{g, 1});
  CHECK(mem.violations().size() == 2);
  mem.cas(0, Line::kSetGOld, 0, Field::kOld, kDone, kNull);
  CHECK(mem.violations().size() == 3);
}

TEST_CASE("random interleavings keep every invariant") {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 60; ++trial) {
    const std::size_t p = 2 + trial % 3;
    const std::uint32_t phi = 1 + trial % 2;
    DmtfInterpreter m({1, 2, 3, 4}, config(p, phi));
    std::vector<int> left(p, 6);
    std::vector<ItemId> want(p, 0);
    for (;;) {
      std::vector<std::size_t> live;
      for (std::size_t i = 0; i < p; ++i) {
        if (!m.idle(i) || left[i] > 0) live.push_back(i);
      }
      if (live.empty()) break;
      const auto i = live[rng() % live.size()];
      if (m.idle(i)) {
        want[i] = 1 + rng() % 5;  // 5 is absent
        m.invoke(i, want[i]);
        --left[i];
      }
      const auto out = m.step(i);
      if (out.result.returned) {
        if (want[i] == 5) {
          CHECK(out.result.result == kNotPresent);
        } else {
          REQUIRE(is_node(out.result.result));
          CHECK(m.snapshot().nodes[out.result.result].item == want[i]);
        }
      }
      REQUIRE(snapshot_invariants(m.snapshot(), false).empty());
    }
    CHECK(m.memory().violations().empty());
    const auto bad = snapshot_invariants(m.snapshot(), true);
    CHECK_MESSAGE(bad.empty(), (bad.empty() ? "" : bad.front().detail));
  }
}

TEST_CASE("encode distinguishes states") {
  DmtfInterpreter a({1, 2, 3}, config(2));
  DmtfInterpreter b({1, 2, 3}, config(2));
  std::string ea, eb;
  a.encode(ea);
  b.encode(eb);
  CHECK(ea == eb);
  b.invoke(1, 2);
  b.step(1);
  eb.clear();
  b.encode(eb);
  CHECK(ea != eb);
  CHECK(a.to_json()["shared"]["list"] == nlohmann::json::array({1, 2, 3}));
}

TEST_CASE("native backend replays the interpreter trace") {
  const std::vector<ItemId> items{1, 2, 3, 4};
  DmtfInterpreter interp(items, config(2));
  NativeDmtf native(items, config(2), 64);
  Recorder ri, rn;
  interp.set_observer(&ri);
  native.memory().set_observer(&rn);
  const std::vector<std::pair<std::size_t, ItemId>> ops{{0, 3}, {1, 4}, {0, 1}, {1, 4}, {0, 9}};
  for (auto [p, e] : ops) {
    const NodeRef a = interp.run_to_completion(p, e);
    const auto b = native.search(p, e);
    CHECK(a == b.node);
  }
  CHECK(ri.log == rn.log);
  CHECK(list_items(native.snapshot()) == list_items(interp.snapshot()));
  CHECK(native.snapshot().nodes == interp.snapshot().nodes);
}

TEST_CASE("native backend under threads") {
  constexpr std::size_t kThreads = 4;
  constexpr int kOps = 2000;
  NativeDmtf d({1, 2, 3, 4, 5}, config(kThreads), kThreads * kOps + 8);
  std::vector<int> wrong(kThreads, 0);
  std::vector<std::thread> pool;
  for (std::size_t t = 0; t < kThreads; ++t) {
    pool.emplace_back([&, t] {
      std::mt19937_64 rng(t + 1);
      for (int k = 0; k < kOps; ++k) {
        const ItemId e = 1 + rng() % 5;
        const auto out = d.search(t, e);
        if (!is_node(out.node) || d.item_of(out.node) != e) ++wrong[t];
      }
    });
  }
  for (auto& th : pool) th.join();
  for (int w : wrong) CHECK(w == 0);
  CHECK(snapshot_invariants(d.snapshot(), true).empty());
  CHECK_THROWS_AS(d.item_of(kNull), std::out_of_range);
}

TEST_CASE("native arena exhaustion throws") {
  NativeDmtf d({1, 2}, config(1), 3);
  d.search(0, 1);
  CHECK_THROWS_AS(d.search(0, 1), std::length_error);
}
