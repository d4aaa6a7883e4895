#pragma once

#include <cstdint>
#include <vector>

#include "listlab/dmtf/snapshot.hpp"

namespace listlab::harness {

struct StressConfig {
  std::size_t processes = 4;
  std::size_t ell = 64;
  std::size_t total_searches = 100'000;
  std::uint64_t seed = 1;
  std::uint32_t phi = 1;
  // Every n-th search asks for an item outside the set; 0 disables.
  std::size_t absent_every = 50;
  double timeout_seconds = 120.0;
};

struct StressReport {
  std::size_t searches = 0;
  std::size_t wrong_item = 0;      // handle whose item differs from the request
  std::size_t wrong_absent = 0;    // NOT_PRESENT for a present item, or the reverse
  std::vector<dmtf::Violation> violations;
  bool timed_out = false;
  double seconds = 0;
  std::int64_t item_reads = 0;
  std::int64_t shared_accesses = 0;
  bool passed() const {
    return !timed_out && wrong_item == 0 && wrong_absent == 0 && violations.empty();
  }
};

// Runs the native backend on real threads, one per process, then checks the
// quiescent snapshot.
StressReport stress_native(const StressConfig& config);

}  // namespace listlab::harness
