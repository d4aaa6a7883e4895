#include "listlab/harness/stress.hpp"

#include <atomic>
#include <chrono>
#include <random>
#include <stdexcept>
#include <thread>

#include "listlab/dmtf/native.hpp"

namespace listlab::harness {

StressReport stress_native(const StressConfig& config) {
  if (config.processes < 1 || config.ell < 2) {
    throw std::invalid_argument("need at least one process and two items");
  }
  std::vector<dmtf::ItemId> items;
  for (std::size_t k = 1; k <= config.ell; ++k) items.push_back(static_cast<dmtf::ItemId>(k));
  dmtf::MachineConfig mc;
  mc.processes = config.processes;
  mc.phi = config.phi;
  dmtf::NativeDmtf dmtf(items, mc, config.ell + config.total_searches + 1);

  struct Tally {
    std::size_t searches = 0, wrong_item = 0, wrong_absent = 0;
    std::int64_t item_reads = 0, shared = 0;
  };
  std::vector<Tally> tally(config.processes);
  std::atomic<bool> stop{false};
  const auto start = std::chrono::steady_clock::now();
  const auto deadline = start + std::chrono::duration<double>(config.timeout_seconds);

  std::vector<std::thread> pool;
  for (std::size_t t = 0; t < config.processes; ++t) {
    const std::size_t quota =
        config.total_searches / config.processes + (t < config.total_searches % config.processes);
    pool.emplace_back([&, t, quota] {
      std::mt19937_64 rng(config.seed + t);
      auto& me = tally[t];
      for (std::size_t k = 0; k < quota && !stop.load(std::memory_order_relaxed); ++k) {
        const bool absent = config.absent_every != 0 && (k + 1) % config.absent_every == 0;
        const auto e = absent ? static_cast<dmtf::ItemId>(config.ell + 1)
                              : static_cast<dmtf::ItemId>(1 + rng() % config.ell);
        const auto out = dmtf.search(t, e);
        ++me.searches;
        me.item_reads += out.item_reads;
        me.shared += out.shared_accesses;
        if (out.node == dmtf::kNotPresent) {
          me.wrong_absent += !absent;
        } else if (absent) {
          ++me.wrong_absent;
        } else if (dmtf.item_of(out.node) != e) {
          ++me.wrong_item;
        }
      }
    });
  }
  StressReport r;
  std::thread watchdog([&] {
    while (!stop.load()) {
      if (std::chrono::steady_clock::now() > deadline) {
        r.timed_out = true;
        stop.store(true);
        return;
      }
      std::this_thread::sleep_for(std::chrono::milliseconds(5));
    }
  });
  for (auto& th : pool) th.join();
  stop.store(true);
  watchdog.join();
  r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  for (const auto& t : tally) {
    r.searches += t.searches;
    r.wrong_item += t.wrong_item;
    r.wrong_absent += t.wrong_absent;
    r.item_reads += t.item_reads;
    r.shared_accesses += t.shared;
  }
  r.violations = dmtf::snapshot_invariants(dmtf.snapshot(), true);
  return r;
}

}  // namespace listlab::harness
