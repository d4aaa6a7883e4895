#include "listlab/merge/merge.hpp"

#include <limits>
#include <stdexcept>
#include <string>

#include "listlab/errors.hpp"

namespace listlab::merge {

Merge::Merge(const std::vector<RequestSequence>& seqs, std::vector<Step> steps)
    : steps_(std::move(steps)), positions_(seqs.size()) {
  std::size_t expected = 0;
  for (const auto& s : seqs) expected += s.size();
  if (steps_.size() != expected) {
    throw std::invalid_argument("merge has " + std::to_string(steps_.size()) + " steps, expected " +
                                std::to_string(expected));
  }
  flat_.reserve(steps_.size());
  for (std::size_t m = 0; m < steps_.size(); ++m) {
    const auto [proc, idx] = steps_[m];
    if (proc < 1 || proc > seqs.size()) {
      throw std::invalid_argument("merge step names unknown process " + std::to_string(proc));
    }
    auto& pos = positions_[proc - 1];
    if (idx != pos.size() + 1) {
      throw std::invalid_argument("merge step (" + std::to_string(proc) + "," + std::to_string(idx) +
                                  ") breaks the order of its sequence");
    }
    pos.push_back(m + 1);
    flat_.push_back(seqs[proc - 1][idx - 1]);
  }
}

Merge Merge::concatenation(const std::vector<RequestSequence>& seqs) {
  std::vector<Step> steps;
  for (std::size_t p = 0; p < seqs.size(); ++p) {
    for (Index i = 1; i <= seqs[p].size(); ++i) steps.push_back({p + 1, i});
  }
  return Merge(seqs, std::move(steps));
}

Index Merge::position(std::size_t process, Index index) const {
  const auto& pos = positions(process);
  if (index < 1 || index > pos.size()) throw std::out_of_range("merge index out of range");
  return pos[index - 1];
}

const std::vector<Index>& Merge::positions(std::size_t process) const {
  if (process < 1 || process > positions_.size()) throw std::out_of_range("unknown process");
  return positions_[process - 1];
}

RequestSequence Merge::sequence_of(std::size_t process) const {
  RequestSequence out;
  for (Index m : positions(process)) out.push_back(flat_[m - 1]);
  return out;
}

std::uint64_t count_merges(const std::vector<RequestSequence>& seqs) {
  constexpr auto kMax = std::numeric_limits<std::uint64_t>::max();
  // Product of binomials C(n_1 + ... + n_k, n_k), each built incrementally so
  // every intermediate value is itself a binomial coefficient.
  std::uint64_t total = 1;
  std::uint64_t placed = 0;
  for (const auto& s : seqs) {
    std::uint64_t binom = 1;
    for (std::uint64_t i = 1; i <= s.size(); ++i) {
      const std::uint64_t num = placed + i;
      if (binom > kMax / num) return kMax;
      binom = binom * num / i;
    }
    placed += s.size();
    if (binom != 0 && total > kMax / binom) return kMax;
    total *= binom;
  }
  return total;
}

namespace {

void enumerate(const std::vector<RequestSequence>& seqs, const std::vector<std::size_t>& lens,
               std::vector<std::size_t>& taken, std::vector<Step>& steps,
               const std::function<void(const Merge&)>& visit, std::uint64_t& visited) {
  bool any = false;
  for (std::size_t p = 0; p < lens.size(); ++p) {
    if (taken[p] == lens[p]) continue;
    any = true;
    ++taken[p];
    steps.push_back({p + 1, taken[p]});
    enumerate(seqs, lens, taken, steps, visit, visited);
    steps.pop_back();
    --taken[p];
  }
  if (!any) {
    visit(Merge(seqs, steps));
    ++visited;
  }
}

}  // namespace

std::uint64_t for_each_merge(const std::vector<RequestSequence>& seqs, std::uint64_t budget,
                             const std::function<void(const Merge&)>& visit) {
  const auto count = count_merges(seqs);
  if (count > budget) {
    throw BudgetExceeded("instance has " + std::to_string(count) + " merges, budget is " +
                         std::to_string(budget));
  }
  std::vector<std::size_t> lens;
  for (const auto& s : seqs) lens.push_back(s.size());
  std::vector<std::size_t> taken(seqs.size(), 0);
  std::vector<Step> steps;
  std::uint64_t visited = 0;
  enumerate(seqs, lens, taken, steps, visit, visited);
  return visited;
}

std::vector<Merge> enumerate_merges(const std::vector<RequestSequence>& seqs,
                                    std::uint64_t budget) {
  std::vector<Merge> out;
  for_each_merge(seqs, budget, [&](const Merge& m) { out.push_back(m); });
  return out;
}

}  // namespace listlab::merge
