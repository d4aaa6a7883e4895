#include "listlab/merge/lower_bound.hpp"

#include <stdexcept>
#include <string>

#include "listlab/seq/distance.hpp"

namespace listlab::merge {

namespace {

// 0-based run index of the h-th block (1-based) of process k (1-based).
std::int64_t block_run(std::int64_t k, std::int64_t h, std::int64_t p) {
  return (k - 1 + h - 1) % p;
}

}  // namespace

LowerBoundInstance build_lower_bound_instance(std::int64_t p, std::int64_t ell, std::int64_t r,
                                              std::int64_t s) {
  if (p < 2) throw std::invalid_argument("lower-bound instance needs p >= 2");
  if (ell < p || ell % p != 0) {
    throw std::invalid_argument("p = " + std::to_string(p) + " must divide ell = " +
                                std::to_string(ell));
  }
  if (r < 1 || s < 1) throw std::invalid_argument("r and s must be at least 1");

  LowerBoundInstance inst{p, ell, r, s, {}, {}, {}};
  const std::int64_t m = ell / p;       // |A_j|
  const std::int64_t block = 2 * m * s;  // |B_j|

  std::vector<RequestSequence> blocks(p);
  for (std::int64_t j = 0; j < p; ++j) {
    for (std::int64_t rep = 0; rep < s; ++rep) {
      for (std::int64_t q = 0; q < m; ++q) blocks[j].push_back(seq::Item(j * m + q + 1));
      for (std::int64_t q = m - 1; q >= 0; --q) blocks[j].push_back(seq::Item(j * m + q + 1));
    }
  }
  const std::int64_t nblocks = r * p;
  for (std::int64_t k = 1; k <= p; ++k) {
    RequestSequence sigma;
    sigma.reserve(nblocks * block);
    for (std::int64_t h = 1; h <= nblocks; ++h) {
      const auto& b = blocks[block_run(k, h, p)];
      sigma.insert(sigma.end(), b.begin(), b.end());
    }
    inst.sequences.push_back(std::move(sigma));
  }

  auto step = [&](std::int64_t k, std::int64_t h, std::int64_t offset) {
    return Step{static_cast<std::size_t>(k), static_cast<Index>((h - 1) * block + offset + 1)};
  };

  // For block slot h, every process is inside a different run, so all forward
  // halves go first (runs in order), then all reversed halves.
  std::vector<Step> hi;
  hi.reserve(nblocks * block * p);
  for (std::int64_t h = 1; h <= nblocks; ++h) {
    for (std::int64_t rep = 0; rep < s; ++rep) {
      for (std::int64_t half = 0; half < 2; ++half) {
        for (std::int64_t j = 0; j < p; ++j) {
          const std::int64_t k = ((j - (h - 1)) % p + p) % p + 1;
          for (std::int64_t q = 0; q < m; ++q) hi.push_back(step(k, h, rep * 2 * m + half * m + q));
        }
      }
    }
  }
  inst.merge_hi = Merge(inst.sequences, std::move(hi));

  // Block h of process 1 equals block h-k+1 of process k for p <= h <= rp.
  std::vector<Step> lo;
  lo.reserve(nblocks * block * p);
  for (std::int64_t k = 1; k <= p; ++k) {
    for (std::int64_t h = 1; h <= p - k; ++h) {
      for (std::int64_t q = 0; q < block; ++q) lo.push_back(step(k, h, q));
    }
  }
  for (std::int64_t h = p; h <= nblocks; ++h) {
    for (std::int64_t q = 0; q < block; ++q) {
      for (std::int64_t k = 1; k <= p; ++k) lo.push_back(step(k, h - k + 1, q));
    }
  }
  for (std::int64_t k = 1; k <= p; ++k) {
    for (std::int64_t h = nblocks - k + 2; h <= nblocks; ++h) {
      for (std::int64_t q = 0; q < block; ++q) lo.push_back(step(k, h, q));
    }
  }
  inst.merge_lo = Merge(inst.sequences, std::move(lo));
  return inst;
}

Rational ratio_limit(std::int64_t p, std::int64_t ell) {
  return Rational(2 * p * p - p) - Rational(4 * (p * p * p * p - p * p * p), ell + 2 * p * p - p);
}

Rational hi_average_limit(std::int64_t p, std::int64_t ell) {
  return Rational((2 * p - 1) * ell + p, 2 * p);
}

MergeRatioRow merge_ratio_row(std::int64_t p, std::int64_t ell, std::int64_t r, std::int64_t s) {
  const auto inst = build_lower_bound_instance(p, ell, r, s);
  const auto n = static_cast<std::int64_t>(inst.merge_hi.size());
  MergeRatioRow row;
  row.r = r;
  row.s = s;
  row.avg_hi = Rational(seq::total_distance(inst.merge_hi.sequence(), ell), n);
  row.avg_lo = Rational(seq::total_distance(inst.merge_lo.sequence(), ell), n);
  row.ratio = row.avg_hi / row.avg_lo;
  row.limit = ratio_limit(p, ell);
  row.gap = row.limit - row.ratio;
  return row;
}

}  // namespace listlab::merge
