// SPDX-License-Identifier: MIT
#pragma once

#include <cstdint>
#include <vector>

#include "tenx/tensor.hpp"

/// Builders for the library's extremal tensors and their exact certificates:
/// identity tensors, unfolded identity/permutation tensors (UIT/UPT), tall
/// extreme tensors, symmetric embeddings, and symmetrizations, plus the
/// structural checks (even slice distribution, permutation unfoldability,
/// unit-spectral-norm certification) built on them.
namespace tenx {

struct PrimeFactorization {
  std::size_t n = 0;
  /// Ascending primes with product n.
  std::vector<std::size_t> primes;
};

/// Metadata of an unfolded identity tensor: the side n of the identity
/// matrix and the mode partition of the 2s prime modes used to unfold it.
struct UitSpec {
  std::size_t n = 0;
  ModePartition partition;
};

/// Result of the even-slice-distribution check, the necessary condition for
/// a zero-one tensor to attain spectral norm 1 with sqrt(cell count) ones.
struct EvenlyReport {
  bool zero_one = false;
  /// uit_condition(shape): sqrt of the cell count is an integer divisible by
  /// every dimension.
  bool condition = false;
  std::size_t ones = 0;
  /// sqrt(cell count) when it is an integer, else 0.
  std::size_t expected_ones = 0;
  bool total_ok = false;
  /// Every mode-k slice holds exactly expected_ones / n_k ones.
  bool slices_ok = false;

  [[nodiscard]] bool all_ok() const noexcept {
    return zero_one && condition && total_ok && slices_ok;
  }
};

/// Ascending prime factorization; throws std::invalid_argument for n < 2.
[[nodiscard]] PrimeFactorization prime_factorize(std::size_t n);

/// True iff sqrt of the cell count is an integer divisible by every
/// dimension (and every dimension is >= 2) — the attainability condition for
/// the minimal ratio (prod n_k)^{-1/4}.
[[nodiscard]] bool uit_condition(const Shape& shape);

/// The nth identity tensor: the maximum folding of the n x n identity
/// matrix, of shape p_1 x...x p_s x p_1 x...x p_s.  Throws for n < 2.
[[nodiscard]] DenseTensor identity_tensor(std::size_t n);

/// Checks that `partition` splits the 2s doubled modes into nonempty
/// disjoint covering blocks none of which contains both halves {j, s+j} of a
/// row/column prime pair.
[[nodiscard]] bool doubled_pair_condition(const ModePartition& partition, std::size_t s);

/// Partition of the 2s prime modes of identity_tensor(n), n = sqrt(prod
/// shape), whose block products equal the shape dimensions in order and
/// which satisfies doubled_pair_condition.  Realizes the minimal-index-sum
/// recursion greedily: each prime factor of n_k takes the smallest unused
/// position with a matching prime whose pair partner is not already in the
/// current block.  Throws unless uit_condition(shape) holds.
[[nodiscard]] ModePartition build_partition(const Shape& shape);

/// n and build_partition(shape) bundled; throws unless uit_condition holds.
[[nodiscard]] UitSpec uit_spec_for(const Shape& shape);

/// The unfolded identity tensor of the given shape:
/// unfold(identity_tensor(n), build_partition(shape)).  Zero-one with
/// exactly n = sqrt(prod n_k) ones; spectral norm exactly 1; Frobenius norm
/// (prod n_k)^{1/4}.  Throws unless uit_condition(shape) holds.
[[nodiscard]] DenseTensor build_uit(const Shape& shape);

/// The unfolded permutation tensor: the maximum folding of the permutation
/// matrix with ones at (i, perm.map[i]), unfolded by `partition` (which must
/// satisfy doubled_pair_condition for the 2s prime modes of n).  Spectral
/// norm exactly 1; Frobenius norm n^{1/2}.
///
/// When a partition block mixes row positions {0..s-1} with column
/// positions {s..2s-1}, unit spectral norm additionally requires the
/// permutation to factor digit-wise over the prime digits (the identity
/// always does); otherwise the unfolding can have spectral norm above 1 and
/// this builder refuses it.  Throws std::invalid_argument on any invalid
/// combination.
[[nodiscard]] DenseTensor build_upt(std::size_t n, const Permutation& perm,
                                    const ModePartition& partition);

/// Zero-one tensor, for shapes where dimension j dominates the product q of
/// all others, whose mode-j matricization is the first-q-columns submatrix
/// of the permutation matrix of `perm`; its ratio is exactly q^{-1/2}.
/// Throws unless n_j >= q and perm is a bijection on {0..n_j-1}.
[[nodiscard]] DenseTensor tall_extreme(const Shape& shape, std::size_t j,
                                       const Permutation& perm);

/// Structural certificate that sigma(t) == 1: folds the zero-one tensor t
/// back along `partition` to the doubled-prime shape of n = (number of
/// ones), and accepts iff the partition satisfies doubled_pair_condition,
/// the standard half-split matricization of the folded tensor is exactly a
/// permutation matrix, and either no block mixes the two halves or the
/// permutation factors digit-wise (the two cases in which unit spectral
/// norm is provable: an unmixed partition lets a merged matricization
/// rebuild the permutation matrix itself, and a digit-wise permutation
/// reduces to the identity-tensor pairing argument).  Returns false (never
/// throws) when the structure does not match.
[[nodiscard]] bool unit_spectral_certificate(const DenseTensor& t,
                                             const ModePartition& partition);

/// The unique symmetric tensor Z of shape (sum n_k)^d whose homogeneous form
/// restricted to stacked variables reproduces the multilinear form of t:
/// one block per mode permutation, each a mode transpose of t/d!.
/// Satisfies ||Z||^2 == ||t||^2/d! and sigma(Z) == d^{-d/2} sigma(t).
/// Throws for order < 2.
[[nodiscard]] DenseTensor symmetric_embed(const DenseTensor& t);

/// d! times symmetric_embed(t): every nonzero block is an exact mode
/// transpose of t, so for integer-valued t the identity
/// sum-of-squares(symmetric_embed_scaled(t)) == d! * sum-of-squares(t)
/// holds in exact integer arithmetic.
[[nodiscard]] DenseTensor symmetric_embed_scaled(const DenseTensor& t);

/// Sum of all d! mode transposes of a cubical tensor; always symmetric.
/// Throws on non-cubical input.
[[nodiscard]] DenseTensor symmetrize(const DenseTensor& t);

/// Even-slice-distribution report; see EvenlyReport.
[[nodiscard]] EvenlyReport evenly_check(const DenseTensor& t);

/// For a zero-one tensor of doubled-prime shape p_1..p_s p_1..p_s: true iff
/// some unfolding into two complementary mode blocks yields a permutation
/// matrix.  All two-block splits with the right block product are tried
/// (order inside a block only permutes rows/columns, so it cannot affect
/// the answer).  Throws on wrong arity, non-doubled or non-prime shapes,
/// and non-binary entries.
[[nodiscard]] bool is_permutation_unfolding(const DenseTensor& t);

}  // namespace tenx
