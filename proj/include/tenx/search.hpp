// SPDX-License-Identifier: MIT
#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "tenx/spectral.hpp"
#include "tenx/tensor.hpp"

/// Pruned exhaustive search over zero-one tensors for the minimal
/// spectral/Frobenius ratio of a shape, plus batch verification of the
/// published minimal-ratio tables and of the permutation-unfolding property
/// of evenly-spread unit-spectral-norm tensors.
namespace tenx {

struct SearchConfig {
  Shape shape;
  /// Restrict the enumeration to symmetric tensors (cubical shapes only).
  bool symmetric = false;
  /// Stop after this many ones per tensor.  Required for non-symmetric
  /// shapes with more than 30 cells; the result is then marked incomplete
  /// unless the pruning window closed first.
  std::optional<std::size_t> max_ones;
  /// Seed, iteration, and tolerance settings for ratio evaluation.  The
  /// search always uses 16 starts inside the loop and re-polishes
  /// candidates near the running best with 256 starts.
  EstimatorConfig estimator;
  /// Evaluate only one representative per symmetry class (slice
  /// permutations and equal-dimension mode transposes; for symmetric
  /// enumeration, simultaneous slice permutations).
  bool canonicalize = true;
  /// Worker threads for ratio evaluation.  Results are identical for any
  /// value: candidates are scored independently and merged in a fixed
  /// order.
  std::size_t parallelism = 1;
  /// When nonempty, progress is saved to this JSON file after every
  /// ones-level and a matching file is resumed from on startup.
  std::string checkpoint_path;
};

struct SearchResult {
  /// Minimum ratio found; in (0, 1] (a single one has ratio exactly 1).
  double best_ratio = 1.0;
  /// Minimizers within 1e-9 of best_ratio (canonical representatives when
  /// canonicalize is set; capped at 64 tensors).
  std::vector<DenseTensor> witnesses;
  /// Candidates whose ratio was estimated.
  std::uint64_t explored = 0;
  /// Masks skipped by the window, empty-slice, fiber, or canonicity
  /// prunes (saturating).
  std::uint64_t pruned = 0;
  double wall_time_seconds = 0.0;
  /// Highest number of ones whose level was processed.
  std::size_t ones_examined = 0;
  /// True when the pruning window closed (no heavier tensor can tie the
  /// best); false when the max_ones cap stopped the search first.
  bool complete = true;
};

/// Lexicographically minimal bit-representation (cell 0 most significant)
/// of the orbit of a zero-one tensor under all per-mode slice permutations
/// and transposes of equal-dimension modes.  Idempotent and constant on
/// orbits.  Throws std::invalid_argument for non-binary input or when the
/// orbit group exceeds 2e6 elements.
[[nodiscard]] DenseTensor canonical_form(const DenseTensor& t);

/// Minimum of ratio() over the nonzero zero-one tensors of cfg.shape
/// (symmetric ones only when cfg.symmetric), enumerated by increasing
/// number of ones m.  Levels are skipped once no tensor with m ones can
/// tie the running best r: every zero-one tensor satisfies
/// ratio >= max(1/sqrt(m), sqrt(m / cell_count)), so only
/// 1/r^2 <= m <= r^2 * cell_count matters; candidates with ratio-excluded
/// fiber overlaps are pruned as well.  Tensors with an all-zero slice are
/// skipped: they reduce to a smaller shape, whose minimum is never below
/// this shape's, so the reported value is the minimum over full-support
/// tensors (it coincides with the global minimum on every published-table
/// shape).  Throws std::invalid_argument for dimensions < 2, non-cubical
/// symmetric requests, more than 64 cells, or over-30-cell non-symmetric
/// shapes without a max_ones cap.
[[nodiscard]] SearchResult search_min_ratio(const SearchConfig& cfg);

/// One row of the published minimal-ratio tables (order-3 shapes with
/// dimensions up to 4, and symmetric cubes with n up to 4).
struct TableRowReport {
  std::string label;
  Shape shape;
  bool symmetric = false;
  /// Zero-based positions of the published witness's ones.
  std::vector<Index> ones;
  /// Published three-decimal value.
  double table_value = 0.0;
  /// Closed form where one is known, else a frozen high-precision value.
  double reference_value = 0.0;
  /// Recomputed ratio of the witness.
  double witness_ratio = 0.0;
  /// Recomputed closed-form lower bound for the row's space.
  double lower_bound = 0.0;
  /// witness_ratio within 1e-6 of reference_value and rounding to the
  /// published three decimals.
  bool pass = false;
};

/// Rebuilds all 13 published witnesses, re-estimates their ratios with the
/// given settings (nonnegative mode forced on), and recomputes each row's
/// lower bound.
[[nodiscard]] std::vector<TableRowReport> verify_tables(const EstimatorConfig& estimator);

/// Classification of the zero-one tensors with n ones on the doubled prime
/// shape of n that spread evenly across every slice: each either unfolds
/// to a permutation matrix (certifying spectral norm 1), or is certified
/// to have spectral norm > 1 (the estimator's value is a rigorous lower
/// bound), or is indeterminate.  The conjecture that unit spectral norm
/// forces a permutation unfolding holds on this evidence iff no tensor is
/// indeterminate.
struct ConjectureReport {
  std::size_t n = 0;
  Shape shape;
  /// C(cells, n): pool size before any pruning.
  std::uint64_t candidates = 0;
  std::uint64_t evenly_passed = 0;
  /// Tensors passing is_permutation_unfolding (spectral norm exactly 1).
  std::uint64_t unfolding = 0;
  /// Tensors with estimated spectral norm >= 1 + 1e-6 (so truly > 1).
  std::uint64_t excluded = 0;
  /// Tensors with neither certificate; potential counterexamples.
  std::uint64_t indeterminate = 0;
  /// Smallest spectral-norm estimate among excluded tensors (0 if none).
  double min_excluded_estimate = 0.0;
  [[nodiscard]] bool holds() const { return indeterminate == 0; }
};

/// Enumerates the evenly-spread candidates directly (per-slice counters
/// with capacity pruning) and classifies each.  Throws
/// std::invalid_argument for n < 2 or when the doubled shape exceeds 100
/// cells.
[[nodiscard]] ConjectureReport check_conjecture2(std::size_t n, const EstimatorConfig& estimator);

}  // namespace tenx
