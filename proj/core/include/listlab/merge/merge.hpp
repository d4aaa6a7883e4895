#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "listlab/seq/types.hpp"

namespace listlab::merge {

using seq::Index;
using seq::Item;
using seq::RequestSequence;

// One request of a merge: the `index`-th request (1-based) of process
// `process` (1-based).
struct Step {
  std::size_t process = 0;
  Index index = 0;
  friend bool operator==(const Step&, const Step&) = default;
};

// An order-respecting interleaving of p request sequences.
class Merge {
 public:
  Merge() = default;
  // Throws std::invalid_argument unless `steps` lists every request of every
  // sequence exactly once with per-process indices increasing.
  Merge(const std::vector<RequestSequence>& seqs, std::vector<Step> steps);

  static Merge concatenation(const std::vector<RequestSequence>& seqs);

  const std::vector<Step>& steps() const { return steps_; }
  const RequestSequence& sequence() const { return flat_; }
  std::size_t process_count() const { return positions_.size(); }
  std::size_t size() const { return steps_.size(); }

  // f^{sigma_process}(index): 1-based position in the merged sequence.
  Index position(std::size_t process, Index index) const;
  const std::vector<Index>& positions(std::size_t process) const;
  // The request sequence of one process, recovered from the merge.
  RequestSequence sequence_of(std::size_t process) const;

 private:
  std::vector<Step> steps_;
  RequestSequence flat_;
  std::vector<std::vector<Index>> positions_;
};

// Number of distinct merges (the multinomial coefficient), saturating at
// UINT64_MAX.
std::uint64_t count_merges(const std::vector<RequestSequence>& seqs);

// Calls `visit` once for every distinct merge, in lexicographic order of the
// process choices. Throws BudgetExceeded before visiting anything if there are
// more than `budget` merges. Returns the number visited.
std::uint64_t for_each_merge(const std::vector<RequestSequence>& seqs, std::uint64_t budget,
                             const std::function<void(const Merge&)>& visit);

std::vector<Merge> enumerate_merges(const std::vector<RequestSequence>& seqs,
                                    std::uint64_t budget);

}  // namespace listlab::merge
