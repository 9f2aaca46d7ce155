// SPDX-License-Identifier: MIT
#pragma once

#include <optional>
#include <string>
#include <vector>

#include "tenx/tensor.hpp"

/// Closed-form lower/upper bounds and exact values for the two extreme
/// ratios of a tensor space:
///   phi = min over nonzero tensors of (spectral norm / Frobenius norm),
///   psi = min over nonzero tensors of (Frobenius norm / nuclear norm),
/// over the complex, real, nonnegative, or zero-one tensors of a shape,
/// optionally restricted to symmetric tensors.  Reports carry every
/// applicable formula so callers can print a full derivation table.
namespace tenx {

/// Scalar field (and sign restriction) of a tensor space.
enum class Field { complex, real, nonnegative, binary };

/// Accepts "complex", "real", "nonneg"/"nonnegative", "binary"
/// (case-insensitive); throws std::invalid_argument otherwise.
[[nodiscard]] Field parse_field(const std::string& name);
[[nodiscard]] std::string format_field(Field field);

/// A tensor space: shape, scalar field, optional symmetric restriction.
struct SpaceSpec {
  Shape shape;
  Field field = Field::nonnegative;
  bool symmetric = false;

  /// Throws std::invalid_argument unless every dimension is >= 2 and, for
  /// symmetric spaces, all dimensions are equal.
  void validate() const;
};

enum class Quantity { phi, psi };

enum class FormulaKind { lower, upper, exact };

/// One evaluated closed-form bound.  `value` is the raw formula value; the
/// report's headline lower/upper fold these together (and clamp the upper
/// at 1, which both ratios never exceed).
struct FormulaEntry {
  std::string name;
  double value = 0.0;
  FormulaKind kind = FormulaKind::lower;
  std::string description;
};

struct BoundReport {
  Quantity quantity = Quantity::phi;
  double lower = 0.0;
  double upper = 1.0;
  /// Present when the ratio is known exactly (then lower == upper == exact).
  std::optional<double> exact;
  /// True for binary-field reports: they reuse the nonnegative bounds,
  /// whose equality with the binary ratio is conjectural in general.
  bool conjectural = false;
  std::vector<FormulaEntry> formulas;
};

/// Bounds on phi for an arbitrary space.  Nonnegative spaces combine the
/// fourth-root-of-cell-count lower bound (exact under the unfolded-identity
/// attainability condition), the tall-shape exact value, the doubling and
/// combined upper bounds, and — for cubical shapes of odd order — the
/// sharper cube-specific upper bounds.  Real/complex spaces use the
/// slice-product lower bound with the probabilistic 32*sqrt(d ln d) upper
/// factor.  Orders 1 and 2 are exact for every field.
[[nodiscard]] BoundReport phi_bounds(const SpaceSpec& space);

/// phi_bounds for the order-d cube of side n (non-symmetric).
[[nodiscard]] BoundReport phi_bounds_cube(std::size_t n, std::size_t d, Field field);

/// phi over the symmetric tensors of shape n^d.  Nonnegative: lower from
/// the fourth root and from restriction to the full cube; upper from the
/// symmetrization-based piecewise formulas and sqrt(d!) times the cube
/// upper.  Real/complex: slice-product lower, probabilistic upper with
/// constant 32 when d divides n and 36 otherwise.
[[nodiscard]] BoundReport phi_bounds_sym(std::size_t n, std::size_t d, Field field);

/// Bounds on psi.  Real/complex psi equals phi (the minimizing tensors
/// coincide), so those reports mirror phi_bounds.  Nonnegative spaces use
/// the slice-product lower bound, the probabilistic upper, and the
/// sqrt(2)-times-real bracket; tall shapes are exact.
[[nodiscard]] BoundReport psi_bounds(const SpaceSpec& space);

/// Asymptotic-order comparison of phi and psi over a nonnegative space.
struct OrderGapReport {
  /// (prod n_k)^{-1/4}: the order of phi.
  double phi_order = 0.0;
  /// (min_j prod_{k!=j} n_k)^{-1/2}: the order of psi.
  double psi_order = 0.0;
  /// True when one dimension dominates the product of the others (always
  /// for orders 1 and 2): then phi == psi == collapse_value exactly.
  bool collapsed = false;
  double collapse_value = 0.0;
};

/// Throws std::invalid_argument for complex/real spaces.
[[nodiscard]] OrderGapReport order_gap(const SpaceSpec& space);

/// Dimension-monotonicity consistency check: growing dimensions can only
/// shrink the true ratio, so the larger shape's lower bound must not exceed
/// the smaller shape's upper bound.  Returns that comparison (with 1e-12
/// slack); throws std::invalid_argument unless smaller <= larger
/// componentwise.
[[nodiscard]] bool mono_check(const Shape& smaller, const Shape& larger,
                              const BoundReport& smaller_report,
                              const BoundReport& larger_report);

}  // namespace tenx
