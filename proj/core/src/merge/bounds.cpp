#include "listlab/merge/bounds.hpp"

#include <stdexcept>

#include "listlab/merge/disjoint.hpp"
#include "listlab/seq/distance.hpp"

namespace listlab::merge {

namespace {

std::int64_t concat_distance(const std::vector<RequestSequence>& seqs, std::int64_t ell) {
  return seq::total_distance(Merge::concatenation(seqs).sequence(), ell);
}

}  // namespace

BoundCheck check_c_worst(const std::vector<RequestSequence>& seqs, const Merge& merge,
                         std::int64_t ell) {
  const auto p = static_cast<std::int64_t>(seqs.size());
  const auto d_c = concat_distance(seqs, ell);
  const auto d_m = seq::total_distance(merge.sequence(), ell);
  BoundCheck out;
  out.lhs = d_c;
  out.rhs = p * d_m;
  out.value = d_m == 0 ? Rational(1) : Rational(d_c, d_m);
  out.holds = out.lhs <= out.rhs;
  return out;
}

BoundCheck check_c_best(const std::vector<RequestSequence>& seqs, const Merge& merge,
                        std::int64_t ell) {
  if (!pairwise_disjoint(seqs)) {
    throw std::invalid_argument("the concatenation bound needs pairwise disjoint sequences");
  }
  const auto p = static_cast<std::int64_t>(seqs.size());
  const auto d_c = concat_distance(seqs, ell);
  const auto d_m = seq::total_distance(merge.sequence(), ell);
  BoundCheck out;
  out.lhs = d_m;
  out.rhs = (2 * p - 1) * d_c + 7 * p * p * ell * ell;
  out.value = Rational(d_m - (2 * p - 1) * d_c);
  out.holds = out.lhs <= out.rhs;
  return out;
}

BoundCheck check_merge_pair(const std::vector<RequestSequence>& seqs, const Merge& m1,
                            const Merge& m2, std::int64_t ell) {
  const auto p = static_cast<std::int64_t>(seqs.size());
  const auto disjoint = make_disjoint(seqs, m1, ell);
  const auto overhead = concat_distance(disjoint.sequences, ell) - concat_distance(seqs, ell);
  const auto d1 = seq::total_distance(m1.sequence(), ell);
  const auto d2 = seq::total_distance(m2.sequence(), ell);
  BoundCheck out;
  out.lhs = d1;
  out.rhs = (2 * p * p - p) * d2 + (2 * p - 1) * overhead + 7 * p * p * ell * ell;
  out.value = out.rhs - out.lhs;
  out.holds = out.lhs <= out.rhs;
  return out;
}

}  // namespace listlab::merge
