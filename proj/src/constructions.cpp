// SPDX-License-Identifier: MIT
#include "tenx/constructions.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "tenx/tensor_io.hpp"

namespace tenx {

namespace {

/// Exact integer square root of n when n is a perfect square, else 0.
std::size_t exact_sqrt(std::size_t n) {
  if (n == 0) return 0;
  auto r = static_cast<std::size_t>(std::llround(std::sqrt(static_cast<double>(n))));
  while (r > 1 && r * r > n) --r;
  while ((r + 1) * (r + 1) <= n) ++r;
  return r * r == n ? r : 0;
}

bool is_prime(std::size_t n) {
  if (n < 2) return false;
  for (std::size_t p = 2; p * p <= n; ++p) {
    if (n % p == 0) return false;
  }
  return true;
}

/// True iff the order-2 zero-one tensor is exactly a permutation matrix.
bool is_permutation_matrix(const DenseTensor& m) {
  if (m.order() != 2 || m.dim(0) != m.dim(1)) return false;
  const std::size_t n = m.dim(0);
  std::vector<std::size_t> row_ones(n, 0), col_ones(n, 0);
  for (std::size_t r = 0; r < n; ++r) {
    for (std::size_t c = 0; c < n; ++c) {
      const double v = m.at({r, c});
      if (v == 1.0) {
        ++row_ones[r];
        ++col_ones[c];
      } else if (v != 0.0) {
        return false;
      }
    }
  }
  for (std::size_t i = 0; i < n; ++i) {
    if (row_ones[i] != 1 || col_ones[i] != 1) return false;
  }
  return true;
}

/// True iff every block lies entirely in one half of the 2s doubled modes.
bool partition_unmixed(const ModePartition& partition, std::size_t s) {
  for (const auto& block : partition.blocks) {
    bool low = false;
    bool high = false;
    for (std::size_t mode : block) (mode < s ? low : high) = true;
    if (low && high) return false;
  }
  return true;
}

/// For a doubled-prime-shape zero-one tensor: true iff each column digit of
/// its one-entries is a function of the matching row digit alone, i.e. the
/// half-split unfolding is a Kronecker product of per-digit permutation
/// matrices.
bool digitwise_permutation(const DenseTensor& folded, std::size_t s) {
  constexpr std::size_t kUnset = static_cast<std::size_t>(-1);
  std::vector<std::vector<std::size_t>> maps(s);
  for (std::size_t j = 0; j < s; ++j) maps[j].assign(folded.dim(j), kUnset);
  bool ok = true;
  for_each_index(folded.shape(), [&](std::size_t flat, const Index& idx) {
    if (!ok || folded[flat] != 1.0) return;
    for (std::size_t j = 0; j < s; ++j) {
      std::size_t& image = maps[j][idx[j]];
      if (image == kUnset) {
        image = idx[s + j];
      } else if (image != idx[s + j]) {
        ok = false;
        return;
      }
    }
  });
  return ok;
}

/// Doubled prime list (p_1..p_s p_1..p_s) of n as a Shape.
Shape doubled_prime_shape(std::size_t n) {
  const PrimeFactorization pf = prime_factorize(n);
  Shape shape = pf.primes;
  shape.insert(shape.end(), pf.primes.begin(), pf.primes.end());
  return shape;
}

/// Permutation matrix with ones at (i, perm.map[i]).
DenseTensor permutation_matrix(std::size_t n, const Permutation& perm) {
  perm.validate(n);
  DenseTensor m(Shape{n, n});
  for (std::size_t i = 0; i < n; ++i) m.at({i, perm.map[i]}) = 1.0;
  return m;
}

/// Shared builder for symmetric_embed and its d!-scaled variant.
DenseTensor embed_with_scale(const DenseTensor& t, bool scaled) {
  const std::size_t d = t.order();
  if (d < 2) {
    throw std::invalid_argument("symmetric_embed: order must be at least 2");
  }
  std::vector<std::size_t> offset(d, 0);
  std::size_t total = 0;
  for (std::size_t k = 0; k < d; ++k) {
    offset[k] = total;
    total += t.dim(k);
  }
  double factorial = 1.0;
  for (std::size_t k = 2; k <= d; ++k) factorial *= static_cast<double>(k);
  const double scale = scaled ? 1.0 : 1.0 / factorial;

  DenseTensor z(Shape(d, total));
  std::vector<std::size_t> tau(d);
  std::iota(tau.begin(), tau.end(), std::size_t{0});
  Index pos(d);
  do {
    // Block pattern tau: slot r of z holds mode tau[r] of t, shifted into
    // that mode's band of the stacked index range.
    for_each_index(t.shape(), [&](std::size_t flat, const Index& a) {
      const double v = t[flat];
      if (v == 0.0) return;
      for (std::size_t r = 0; r < d; ++r) pos[r] = offset[tau[r]] + a[tau[r]];
      z.at(pos) = v * scale;  // distinct (tau, a) never collide
    });
  } while (std::next_permutation(tau.begin(), tau.end()));
  return z;
}

}  // namespace

PrimeFactorization prime_factorize(std::size_t n) {
  if (n < 2) {
    throw std::invalid_argument("prime_factorize: n must be at least 2");
  }
  PrimeFactorization pf;
  pf.n = n;
  std::size_t rest = n;
  for (std::size_t p = 2; p * p <= rest; ++p) {
    while (rest % p == 0) {
      pf.primes.push_back(p);
      rest /= p;
    }
  }
  if (rest > 1) pf.primes.push_back(rest);
  return pf;
}

bool uit_condition(const Shape& shape) {
  for (std::size_t dim : shape) {
    if (dim < 2) return false;
  }
  const std::size_t root = exact_sqrt(cell_count(shape));
  if (root == 0) return false;
  for (std::size_t dim : shape) {
    if (root % dim != 0) return false;
  }
  return true;
}

DenseTensor identity_tensor(std::size_t n) {
  if (n < 2) {
    throw std::invalid_argument("identity_tensor: n must be at least 2");
  }
  DenseTensor eye(Shape{n, n});
  for (std::size_t i = 0; i < n; ++i) eye.at({i, i}) = 1.0;
  return max_fold(eye);
}

bool doubled_pair_condition(const ModePartition& partition, std::size_t s) {
  try {
    partition.validate(2 * s);
  } catch (const std::invalid_argument&) {
    return false;
  }
  for (const auto& block : partition.blocks) {
    for (std::size_t j = 0; j < s; ++j) {
      const bool low = std::find(block.begin(), block.end(), j) != block.end();
      const bool high = std::find(block.begin(), block.end(), s + j) != block.end();
      if (low && high) return false;
    }
  }
  return true;
}

ModePartition build_partition(const Shape& shape) {
  if (!uit_condition(shape)) {
    throw std::invalid_argument("build_partition: shape fails the attainability condition");
  }
  const std::size_t n = exact_sqrt(cell_count(shape));
  const PrimeFactorization pf = prime_factorize(n);
  const std::size_t s = pf.primes.size();
  // Position j < s carries prime p_j (row copy); position s + j repeats it
  // (column copy); a block may not contain both copies of one pair.
  std::vector<std::size_t> prime_at(2 * s);
  for (std::size_t j = 0; j < s; ++j) prime_at[j] = prime_at[s + j] = pf.primes[j];
  std::vector<bool> used(2 * s, false);

  ModePartition partition;
  for (std::size_t dim : shape) {
    std::vector<std::size_t> block;
    for (std::size_t factor : prime_factorize(dim).primes) {
      bool placed = false;
      for (std::size_t j = 0; j < 2 * s && !placed; ++j) {
        if (used[j] || prime_at[j] != factor) continue;
        const std::size_t partner = j < s ? j + s : j - s;
        if (std::find(block.begin(), block.end(), partner) != block.end()) continue;
        block.push_back(j);
        used[j] = true;
        placed = true;
      }
      if (!placed) {
        throw std::logic_error("build_partition: greedy placement failed");
      }
    }
    partition.blocks.push_back(std::move(block));
  }
  if (!doubled_pair_condition(partition, s)) {
    throw std::logic_error("build_partition: pair condition violated");
  }
  return partition;
}

UitSpec uit_spec_for(const Shape& shape) {
  UitSpec spec;
  spec.partition = build_partition(shape);  // validates the condition
  spec.n = exact_sqrt(cell_count(shape));
  return spec;
}

DenseTensor build_uit(const Shape& shape) {
  const UitSpec spec = uit_spec_for(shape);
  return unfold(identity_tensor(spec.n), spec.partition);
}

DenseTensor build_upt(std::size_t n, const Permutation& perm, const ModePartition& partition) {
  if (n < 2) {
    throw std::invalid_argument("build_upt: n must be at least 2");
  }
  const std::size_t s = prime_factorize(n).primes.size();
  if (!doubled_pair_condition(partition, s)) {
    throw std::invalid_argument("build_upt: partition violates the pair condition");
  }
  const DenseTensor folded = max_fold(permutation_matrix(n, perm));
  // A block mixing row and column digits couples the two sides of the
  // permutation matrix; the unit spectral norm only survives that coupling
  // when the permutation factors digit-wise.  (Unmixed partitions are safe
  // for every permutation: merging the row-side and column-side blocks
  // rebuilds the permutation matrix, and unfolding never decreases the
  // spectral norm.)
  if (!partition_unmixed(partition, s) && !digitwise_permutation(folded, s)) {
    throw std::invalid_argument(
        "build_upt: a block mixes row and column modes but the permutation "
        "does not factor digit-wise; the result would not have unit spectral "
        "norm");
  }
  return unfold(folded, partition);
}

DenseTensor tall_extreme(const Shape& shape, std::size_t j, const Permutation& perm) {
  const std::size_t d = shape.size();
  (void)cell_count(shape);
  if (j >= d) {
    throw std::invalid_argument("tall_extreme: mode out of range");
  }
  std::size_t q = 1;
  for (std::size_t k = 0; k < d; ++k) {
    if (k != j) q *= shape[k];
  }
  const std::size_t nj = shape[j];
  if (nj < q) {
    throw std::invalid_argument("tall_extreme: dimension j must dominate the rest");
  }
  perm.validate(nj);
  // First q columns of the permutation matrix: row r has a one iff its
  // image lands inside the kept columns.
  DenseTensor m(Shape{nj, q});
  for (std::size_t r = 0; r < nj; ++r) {
    if (perm.map[r] < q) m.at({r, perm.map[r]}) = 1.0;
  }
  ModePartition part;
  part.blocks.resize(2);
  part.blocks[0] = {j};
  for (std::size_t k = 0; k < d; ++k) {
    if (k != j) part.blocks[1].push_back(k);
  }
  return fold(m, shape, part);
}

bool unit_spectral_certificate(const DenseTensor& t, const ModePartition& partition) {
  if (!is_zero_one(t)) return false;
  std::size_t ones = 0;
  for (double v : t.data()) ones += (v == 1.0);
  if (ones == 0) return false;
  if (ones == 1) return true;  // basis tensor: spectral norm exactly 1
  const std::size_t s = prime_factorize(ones).primes.size();
  if (!doubled_pair_condition(partition, s)) return false;
  const Shape doubled = doubled_prime_shape(ones);
  // Block products must reproduce t's shape for the fold to be meaningful.
  const ModePartition sorted = partition.sorted();
  if (sorted.block_count() != t.order()) return false;
  for (std::size_t b = 0; b < sorted.block_count(); ++b) {
    std::size_t prod = 1;
    for (std::size_t mode : sorted.blocks[b]) prod *= doubled[mode];
    if (prod != t.dim(b)) return false;
  }
  const DenseTensor folded = fold(t, doubled, sorted);
  ModePartition halves;
  halves.blocks.resize(2);
  for (std::size_t j = 0; j < s; ++j) halves.blocks[0].push_back(j);
  for (std::size_t j = s; j < 2 * s; ++j) halves.blocks[1].push_back(j);
  if (!is_permutation_matrix(unfold(folded, halves))) return false;
  // Same soundness gate as build_upt: blocks mixing row and column digits
  // are certified only for digit-wise-factoring permutations; unmixed
  // partitions certify any permutation via the merged matricization.
  return partition_unmixed(sorted, s) || digitwise_permutation(folded, s);
}

DenseTensor symmetric_embed(const DenseTensor& t) { return embed_with_scale(t, false); }

DenseTensor symmetric_embed_scaled(const DenseTensor& t) { return embed_with_scale(t, true); }

DenseTensor symmetrize(const DenseTensor& t) {
  const std::size_t d = t.order();
  for (std::size_t k = 1; k < d; ++k) {
    if (t.dim(k) != t.dim(0)) {
      throw std::invalid_argument("symmetrize: all dimensions must be equal");
    }
  }
  DenseTensor sum(t.shape());
  Permutation tau = Permutation::identity(d);
  do {
    const DenseTensor view = mode_transpose(t, tau);
    for (std::size_t i = 0; i < sum.size(); ++i) sum[i] += view[i];
  } while (std::next_permutation(tau.map.begin(), tau.map.end()));
  return sum;
}

EvenlyReport evenly_check(const DenseTensor& t) {
  EvenlyReport report;
  report.zero_one = is_zero_one(t);
  report.condition = uit_condition(t.shape());
  report.expected_ones = exact_sqrt(t.size());
  for (double v : t.data()) report.ones += (v == 1.0);
  report.total_ok =
      report.zero_one && report.expected_ones > 0 && report.ones == report.expected_ones;

  report.slices_ok = report.total_ok;
  if (report.slices_ok) {
    for (std::size_t k = 0; k < t.order() && report.slices_ok; ++k) {
      if (report.expected_ones % t.dim(k) != 0) {
        report.slices_ok = false;
        break;
      }
      const std::size_t per_slice = report.expected_ones / t.dim(k);
      std::vector<std::size_t> counts(t.dim(k), 0);
      for_each_index(t.shape(), [&](std::size_t flat, const Index& index) {
        if (t[flat] == 1.0) ++counts[index[k]];
      });
      for (std::size_t c : counts) {
        if (c != per_slice) {
          report.slices_ok = false;
          break;
        }
      }
    }
  }
  return report;
}

bool is_permutation_unfolding(const DenseTensor& t) {
  const std::size_t order = t.order();
  if (order < 2 || order % 2 != 0) {
    throw std::invalid_argument("is_permutation_unfolding: order must be even");
  }
  const std::size_t s = order / 2;
  std::size_t n = 1;
  for (std::size_t j = 0; j < s; ++j) {
    if (t.dim(j) != t.dim(s + j) || !is_prime(t.dim(j))) {
      throw std::invalid_argument(
          "is_permutation_unfolding: shape must be a doubled prime list");
    }
    n *= t.dim(j);
  }
  if (!is_zero_one(t)) {
    throw std::invalid_argument("is_permutation_unfolding: tensor must be zero-one");
  }
  // Every two-block unfolding is determined by the set of modes in the first
  // block; fix mode 0 in it (swapping blocks transposes the matrix, which
  // preserves being a permutation matrix).  Mode order inside a block only
  // permutes rows/columns, so ascending order loses nothing.
  for (std::size_t mask = 0; mask < (std::size_t{1} << (order - 1)); ++mask) {
    ModePartition part;
    part.blocks.assign(2, {});
    part.blocks[0].push_back(0);
    std::size_t product = t.dim(0);
    for (std::size_t mode = 1; mode < order; ++mode) {
      if (mask & (std::size_t{1} << (mode - 1))) {
        part.blocks[0].push_back(mode);
        product *= t.dim(mode);
      } else {
        part.blocks[1].push_back(mode);
      }
    }
    if (product != n || part.blocks[1].empty()) continue;
    if (is_permutation_matrix(unfold(t, part))) return true;
  }
  return false;
}

}  // namespace tenx
