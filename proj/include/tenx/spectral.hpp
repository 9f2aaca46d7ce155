// SPDX-License-Identifier: MIT
#pragma once

#include <cstdint>
#include <vector>

#include "tenx/tensor.hpp"

/// Numerical estimation and certified bounding of the tensor spectral norm
/// sigma(T) = max |T(x_1,...,x_d)| over unit vectors, and of the ratio
/// sigma(T)/frobenius_norm(T).
///
/// The estimator is multi-start alternating rank-one maximization: each step
/// replaces one mode's vector by the normalized contraction of T against all
/// other modes, which solves that mode's subproblem exactly, so the objective
/// is monotone nondecreasing within every start.  The returned value is a
/// certified lower bound on sigma(T); `certified_upper` is an independent
/// upper bound.  Global optimality is never claimed.
namespace tenx {

struct EstimatorConfig {
  /// Number of random starts (three deterministic structured starts are always
  /// added on top: all-ones vectors, per-mode leading singular vectors of the
  /// matricizations, and the basis vectors of the largest-magnitude entry).
  std::size_t starts = 64;
  /// Maximum alternating sweeps per start.
  std::size_t max_iters = 500;
  /// Relative objective-change threshold that ends a start early.
  double tol = 1e-12;
  /// Root seed; start i draws from an RNG seeded by (seed, i), so results are
  /// reproducible and independent of scheduling.
  std::uint64_t seed = 12345;
  /// Restrict random starts to the nonnegative orthant (valid when T >= 0,
  /// since some maximizer is then componentwise nonnegative).
  bool nonnegative_mode = false;
  /// Worker threads for independent starts; 1 = sequential.
  std::size_t jobs = 1;
};

struct SpectralEstimate {
  /// Best multilinear value found; a lower bound on sigma(T).
  double value = 0.0;
  /// One unit vector per mode attaining |T(witnesses)| == value.
  std::vector<std::vector<double>> witnesses;
  /// Upper bound from spectral_upper_bound(T); value <= certified_upper.
  double certified_upper = 0.0;
  /// True when the winning start met the tol threshold before max_iters.
  bool converged = false;
  /// Total starts executed (random + structured, all branches).
  std::size_t starts_used = 0;
};

/// True iff t is cubical and its entries are invariant under all mode
/// transposes, within rel_tol * max|t| absolute slack.
[[nodiscard]] bool is_symmetric_tensor(const DenseTensor& t, double rel_tol = 1e-9);

/// Largest singular value of an order-2 tensor, via a symmetric eigensolve of
/// the smaller Gram matrix.  Relative accuracy ~1e-10.
[[nodiscard]] double matrix_spectral_norm(const DenseTensor& m);

/// min over { frobenius_norm(T), matrix spectral norms of all mode-k
/// matricizations, and of the standard half-split unfolding when the order is
/// even }.  Always a valid upper bound on sigma(T).
[[nodiscard]] double spectral_upper_bound(const DenseTensor& t);

/// <T, (x)e_k/sqrt(n_k)> = (sum of entries)/sqrt(cell count); a lower bound on
/// sigma(T) for nonnegative T.  Throws if any entry is negative.
[[nodiscard]] double uniform_contraction_value(const DenseTensor& t);

/// Multi-start alternating maximization of |T(x_1,...,x_d)| over unit
/// vectors.  Throws std::invalid_argument on the zero tensor.
[[nodiscard]] SpectralEstimate spectral_norm_estimate(const DenseTensor& t,
                                                      const EstimatorConfig& cfg = {});

/// Same, but if `trajectories` is non-null it receives, per executed start,
/// the per-sweep objective values (monotone nondecreasing in each start).
[[nodiscard]] SpectralEstimate spectral_norm_estimate_traced(
    const DenseTensor& t, const EstimatorConfig& cfg,
    std::vector<std::vector<double>>* trajectories);

/// Maximizes |<T, x (x) ... (x) x>| over unit x for symmetric T via shifted
/// symmetric power iteration (shift = frobenius_norm(T); the shifted map is
/// run on both +T and -T when the order is even, because the extreme value of
/// the form may then be negative).  By the symmetric best-rank-one principle
/// this equals sigma(T), so it agrees with spectral_norm_estimate within
/// tolerance.  Witnesses are d copies of the best x.  Throws on
/// non-symmetric input.
[[nodiscard]] SpectralEstimate spectral_norm_symmetric(const DenseTensor& t,
                                                       const EstimatorConfig& cfg = {});

/// spectral_norm_estimate(T, cfg).value / frobenius_norm(T); in (0, 1].
[[nodiscard]] double ratio(const DenseTensor& t, const EstimatorConfig& cfg = {});

/// <T, X> / spectral_upper_bound(X): by spectral-nuclear duality a valid
/// lower bound on the nuclear norm of T.  Shapes must match; X nonzero.
/// cfg is reserved for future denominator sharpening and currently unused.
[[nodiscard]] double nuclear_lower_bound(const DenseTensor& t, const DenseTensor& x,
                                         const EstimatorConfig& cfg = {});

}  // namespace tenx
