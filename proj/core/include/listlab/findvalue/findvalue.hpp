#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "listlab/rational.hpp"

// Three processes in synchronous rounds, one single-writer register each.
// An input given to p_i in round r is written to R_i in round r; the other
// two are notified in round r+1. A read in round t sees writes from rounds
// before t. After a read that completes its list a process writes in the
// next round; after a miss it reads the remaining register in the next round.
namespace listlab::findvalue {

inline constexpr int kProcesses = 3;

struct Entry {
  int writer = 0;
  std::int64_t value = 0;
  friend bool operator==(const Entry&, const Entry&) = default;
};
using EntryList = std::vector<Entry>;

struct RegisterState {
  std::array<EntryList, kProcesses> registers;
  bool agree() const;
};

enum class PolicyKind { kLowerBound, kFixedTarget, kAdaptiveOffline };

struct AdversaryPolicy {
  PolicyKind kind = PolicyKind::kAdaptiveOffline;
  int target = 0;  // kFixedTarget
};

// Register each process reads first when notified; f[i] != i.
using FirstReadMap = std::array<int, kProcesses>;

// Two fair coins per notification: delay (0: read at once, 1: two rounds
// later), then target (0: R_{i+1}, 1: R_{i+2}).
class CoinTape {
 public:
  static CoinTape from_bits(std::vector<bool> bits);
  // Hex digits, most significant bit of each digit first.
  static CoinTape from_hex(const std::string& hex);
  // Unbounded pseudorandom tape (mt19937_64).
  static CoinTape from_seed(std::uint64_t seed);

  // Throws std::out_of_range when a finite tape is exhausted.
  bool next();
  std::size_t used() const { return used_; }

 private:
  std::vector<bool> bits_;
  std::optional<std::mt19937_64> rng_;
  std::uint64_t buffer_ = 0;
  int left_ = 0;
  std::size_t used_ = 0;
};

struct InputTrace {
  int target = 0;
  int reads = 0;
  std::int64_t input_round = 0;
  std::int64_t known_round = 0;  // every list holds the input
};

struct RunResult {
  std::int64_t reads = 0;
  std::int64_t opt_reads = 0;  // two per input
  std::vector<InputTrace> inputs;
  RegisterState final_state;
  // After every input all registers held the input history.
  bool safe = true;
  Rational ratio() const { return Rational(reads, opt_reads); }
};

// The algorithm that reads R_{i+1} first and R_{i-1} on a miss.
RunResult run_deterministic(const std::vector<std::int64_t>& inputs, const AdversaryPolicy& policy);

// Any first-read map with immediate reads and an immediate fallback read.
// Throws std::invalid_argument if some f[i] == i or is out of range.
RunResult run_first_read(const std::vector<std::int64_t>& inputs, const FirstReadMap& f,
                         const AdversaryPolicy& policy);

struct LowerBoundPlay {
  bool shared_target = false;  // two processes read the same register first
  int target = 0;              // process given the input
  int reads = 0;
};

// The adversary's choice against a first-read map: with f_i = f_j = k and
// f_k = i, input to p_j; otherwise (a cycle) input to the process that is
// neither the earliest reader nor its first target.
LowerBoundPlay lower_bound_adversary(const FirstReadMap& f);
std::vector<FirstReadMap> all_first_read_maps();

// One run on a coin tape. Adaptive offline picks, before each input, the
// target with the largest expected cost given everything revealed so far.
// Throws std::invalid_argument for kLowerBound.
RunResult run_randomized(const std::vector<std::int64_t>& inputs, const AdversaryPolicy& policy,
                         CoinTape& tape);

struct ExactResult {
  Rational expected_reads;  // over all inputs
  Rational per_input;
  Rational ratio;           // against two reads per input
  // Conditional expectation of one input given the coins of p_{i+1}, for the
  // target i of the first input: reads R_i at once, R_i later, the other
  // register at once, the other register later.
  std::array<Rational, 4> branches;
  std::vector<int> targets;
};

ExactResult run_randomized_exact(std::size_t n, const AdversaryPolicy& policy);

struct MonteCarloResult {
  std::size_t samples = 0;
  double mean_reads = 0;  // per input
  double ratio = 0;
};

MonteCarloResult run_randomized_monte_carlo(std::size_t n, std::size_t samples,
                                            std::uint64_t seed, const AdversaryPolicy& policy);

}  // namespace listlab::findvalue
