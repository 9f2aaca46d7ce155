// SPDX-License-Identifier: MIT
#include "tenx/bounds.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "tenx/constructions.hpp"

namespace tenx {

namespace {

double factorial(std::size_t d) {
  double f = 1.0;
  for (std::size_t k = 2; k <= d; ++k) f *= static_cast<double>(k);
  return f;
}

double product_of_dims(const Shape& shape) {
  return static_cast<double>(cell_count(shape));
}

/// min over j of prod_{k != j} n_k (1 for vectors).
double min_slice_product(const Shape& shape) {
  const double total = product_of_dims(shape);
  const double n_max = static_cast<double>(*std::max_element(shape.begin(), shape.end()));
  return total / n_max;
}

/// One dimension dominates the product of all the others.
bool is_tall(const Shape& shape) {
  const double n_max = static_cast<double>(*std::max_element(shape.begin(), shape.end()));
  return n_max >= min_slice_product(shape);
}

bool is_cubical(const Shape& shape) {
  return std::all_of(shape.begin(), shape.end(),
                     [&](std::size_t n) { return n == shape.front(); });
}

Shape sorted_shape(const Shape& shape) {
  Shape s = shape;
  std::sort(s.begin(), s.end());
  return s;
}

/// Collects formula entries and folds them into headline bounds.
class ReportBuilder {
 public:
  explicit ReportBuilder(Quantity quantity) { report_.quantity = quantity; }

  void add(std::string name, double value, FormulaKind kind, std::string description) {
    report_.formulas.push_back(
        {std::move(name), value, kind, std::move(description)});
  }

  BoundReport finish(bool conjectural) {
    double lower = 0.0;
    double upper = 1.0;  // neither ratio ever exceeds one
    std::optional<double> exact;
    for (const FormulaEntry& f : report_.formulas) {
      switch (f.kind) {
        case FormulaKind::lower:
          lower = std::max(lower, f.value);
          break;
        case FormulaKind::upper:
          upper = std::min(upper, f.value);
          break;
        case FormulaKind::exact:
          if (exact && std::abs(*exact - f.value) > 1e-9) {
            throw std::logic_error("bounds: inconsistent exact values");
          }
          if (!exact) exact = f.value;
          break;
      }
    }
    if (exact) {
      lower = std::max(lower, *exact);
      upper = std::min(upper, *exact);
    }
    report_.lower = lower;
    report_.upper = upper;
    report_.exact = exact;
    report_.conjectural = conjectural;
    return std::move(report_);
  }

 private:
  BoundReport report_;
};

bool is_nonneg_like(Field field) {
  return field == Field::nonnegative || field == Field::binary;
}

/// Known exact minimal spectral/Frobenius ratios for small cubes, keyed by
/// sorted shape.  The nonnegative 2x2x2 value transfers from the complex
/// one (complex ratios lower-bound nonnegative ones) and is attained by the
/// three-ones corner tensor, which is itself zero-one.
std::optional<double> known_phi_exact(const Shape& sorted, Field field) {
  const Shape cube3{2, 2, 2};
  const Shape cube4{2, 2, 2, 2};
  if (sorted == cube3) {
    switch (field) {
      case Field::complex:
        return 2.0 / 3.0;
      case Field::real:
        return 0.5;
      case Field::nonnegative:
      case Field::binary:
        return 2.0 / 3.0;
    }
  }
  if (sorted == cube4) {
    if (field == Field::complex) return std::sqrt(2.0) / 3.0;
    if (field == Field::real) return 1.0 / std::sqrt(8.0);
  }
  return std::nullopt;
}

/// Complex exact values reusable as lower bounds for nonnegative spaces.
std::optional<double> complex_transfer_lower(const Shape& sorted) {
  return known_phi_exact(sorted, Field::complex);
}

void add_order_one_two(ReportBuilder& builder, const Shape& shape) {
  if (shape.size() == 1) {
    builder.add("vector", 1.0, FormulaKind::exact,
                "every vector has spectral norm equal to its Euclidean norm");
  } else if (shape.size() == 2) {
    const double n_min =
        static_cast<double>(*std::min_element(shape.begin(), shape.end()));
    builder.add("matrix", 1.0 / std::sqrt(n_min), FormulaKind::exact,
                "minimal matrix ratio 1/sqrt(min dimension), attained by a "
                "largest identity submatrix");
  }
}

BoundReport phi_nonneg(const Shape& shape, Field field) {
  ReportBuilder builder(Quantity::phi);
  const std::size_t d = shape.size();
  const double total = product_of_dims(shape);
  const double fourth_root = std::pow(total, -0.25);
  const double q_min = min_slice_product(shape);
  const double n_max =
      static_cast<double>(*std::max_element(shape.begin(), shape.end()));

  builder.add("fourth-root-product", fourth_root, FormulaKind::lower,
              "(prod n_k)^(-1/4), the universal nonnegative lower bound");
  if (const auto transfer = complex_transfer_lower(sorted_shape(shape))) {
    builder.add("complex-restriction", *transfer, FormulaKind::lower,
                "the complex-field minimal ratio lower-bounds the "
                "nonnegative one");
  }
  if (const auto exact = known_phi_exact(sorted_shape(shape), field)) {
    builder.add("small-cube-exact", *exact, FormulaKind::exact,
                "established minimal ratio for this small cube, attained by "
                "the three-ones corner tensor");
  }
  if (uit_condition(shape)) {
    builder.add("unfolded-identity", fourth_root, FormulaKind::exact,
                "sqrt of the cell count is an integer divisible by every "
                "dimension, so an unfolded identity tensor attains the "
                "fourth-root bound");
  }
  if (is_tall(shape)) {
    builder.add("tall", 1.0 / std::sqrt(q_min), FormulaKind::exact,
                "one dimension dominates the product of the others; attained "
                "by a permutation-submatrix matricization");
  }
  if (n_max <= std::sqrt(total)) {
    builder.add("doubling", std::pow(2.0, (d + 1) / 4.0) * fourth_root,
                FormulaKind::upper,
                "2^((d+1)/4) times the fourth-root bound, valid when no "
                "dimension exceeds sqrt of the cell count");
  }
  builder.add(
      "combined",
      std::pow(2.0, (d + 1) / 4.0) * std::pow(std::min(n_max, q_min) * q_min, -0.25),
      FormulaKind::upper,
      "2^((d+1)/4) * (min{largest dim, q} * q)^(-1/4) with q the smallest "
      "slice product; valid for every shape");
  if (is_cubical(shape) && d >= 3 && d % 2 == 1) {
    const double n = static_cast<double>(shape.front());
    builder.add("cube-odd-shifted", std::pow(std::sqrt(n + 1.0) - 1.0, -0.5 * d),
                FormulaKind::upper,
                "(sqrt(n+1)-1)^(-d/2), an odd-order cube upper bound");
    builder.add("cube-odd-trimmed", std::pow(n, -0.25 * (d - 1)),
                FormulaKind::upper,
                "n^(-(d-1)/4), from an exact even-order cube of one order "
                "less");
  }
  add_order_one_two(builder, shape);
  builder.add("unit", 1.0, FormulaKind::upper,
              "rank-one tensors have ratio exactly one");
  return builder.finish(field == Field::binary);
}

BoundReport phi_real_complex(const Shape& shape, Field field) {
  ReportBuilder builder(Quantity::phi);
  const std::size_t d = shape.size();
  const double q_min = min_slice_product(shape);
  const double slice = 1.0 / std::sqrt(q_min);

  if (d >= 3) {
    builder.add("slice-product", slice, FormulaKind::lower,
                "(min_j prod_{k!=j} n_k)^(-1/2)");
    builder.add("probabilistic",
                32.0 * std::sqrt(d * std::log(static_cast<double>(d))) * slice,
                FormulaKind::upper,
                "32 sqrt(d ln d) times the slice-product bound");
  }
  if (const auto exact = known_phi_exact(sorted_shape(shape), field)) {
    builder.add("small-cube-exact", *exact, FormulaKind::exact,
                "established minimal ratio for this small cube");
  }
  if (is_tall(shape)) {
    builder.add("tall", slice, FormulaKind::exact,
                "one dimension dominates the product of the others; the "
                "zero-one tall witness meets the slice-product lower bound");
  }
  add_order_one_two(builder, shape);
  builder.add("unit", 1.0, FormulaKind::upper,
              "rank-one tensors have ratio exactly one");
  return builder.finish(false);
}

BoundReport phi_sym_nonneg(std::size_t n, std::size_t d, Field field) {
  ReportBuilder builder(Quantity::phi);
  const double nd = static_cast<double>(n);
  const double dd = static_cast<double>(d);
  const double fact_root = std::sqrt(factorial(d));
  const BoundReport cube = phi_bounds_cube(n, d, field);

  builder.add("fourth-root", std::pow(nd, -0.25 * dd), FormulaKind::lower,
              "n^(-d/4), the nonnegative fourth-root bound for the cube");
  builder.add("cube-restriction", cube.lower, FormulaKind::lower,
              "symmetric tensors form a subset of the full cube, so the "
              "cube's minimal ratio lower-bounds the symmetric one");
  if (d % 2 == 0) {
    if (n % d == 0) {
      builder.add("sym-even-divisible",
                  fact_root * std::pow(dd, -0.25 * dd) * std::pow(nd, -0.25 * dd),
                  FormulaKind::upper,
                  "sqrt(d!) d^(-d/4) n^(-d/4), for even order dividing n");
    }
    if (n >= d) {
      builder.add("sym-even-shifted",
                  fact_root * std::pow(dd, -0.25 * dd) * std::pow(nd + 1.0 - dd, -0.25 * dd),
                  FormulaKind::upper,
                  "sqrt(d!) d^(-d/4) (n+1-d)^(-d/4), for even order with "
                  "n >= d");
    }
    builder.add("sym-even-generic", fact_root * std::pow(nd, -0.25 * dd),
                FormulaKind::upper, "sqrt(d!) n^(-d/4), for any even order");
  } else {
    if (n % d == 0) {
      builder.add("sym-odd-divisible",
                  fact_root * std::pow(dd, -0.25 * dd) *
                      std::pow(std::sqrt(nd + dd) - std::sqrt(dd), -0.5 * dd),
                  FormulaKind::upper,
                  "sqrt(d!) d^(-d/4) (sqrt(n+d)-sqrt(d))^(-d/2), for odd "
                  "order dividing n");
    }
    if (n >= d) {
      builder.add("sym-odd-shifted",
                  fact_root * std::pow(dd, -0.25 * dd) *
                      std::pow(std::sqrt(nd + 1.0) - std::sqrt(dd), -0.5 * dd),
                  FormulaKind::upper,
                  "sqrt(d!) d^(-d/4) (sqrt(n+1)-sqrt(d))^(-d/2), for odd "
                  "order with n >= d");
    }
    builder.add("sym-odd-generic-a",
                fact_root * std::pow(std::sqrt(nd + 1.0) - 1.0, -0.5 * dd),
                FormulaKind::upper,
                "sqrt(d!) (sqrt(n+1)-1)^(-d/2), for any odd order");
    builder.add("sym-odd-generic-b", fact_root * std::pow(nd, -0.25 * (dd - 1.0)),
                FormulaKind::upper,
                "sqrt(d!) n^(-(d-1)/4), for any odd order");
  }
  builder.add("factorial-cube", fact_root * cube.upper, FormulaKind::upper,
              "sqrt(d!) times the cube upper bound, via symmetrization of a "
              "near-minimal cube tensor");
  if (d == 3 && n == 2) {
    builder.add("small-cube-exact", 2.0 / 3.0, FormulaKind::exact,
                "the three-ones corner tensor is symmetric and attains the "
                "2x2x2 nonnegative minimum");
  }
  if (d == 2) {
    builder.add("matrix", 1.0 / std::sqrt(nd), FormulaKind::exact,
                "the identity matrix is symmetric and attains 1/sqrt(n)");
  }
  builder.add("unit", 1.0, FormulaKind::upper,
              "rank-one symmetric tensors have ratio exactly one");
  return builder.finish(field == Field::binary);
}

BoundReport phi_sym_real_complex(std::size_t n, std::size_t d, Field /*field*/) {
  ReportBuilder builder(Quantity::phi);
  const double nd = static_cast<double>(n);
  const double dd = static_cast<double>(d);
  const double slice = std::pow(nd, -0.5 * (dd - 1.0));

  builder.add("slice-product", slice, FormulaKind::lower, "n^(-(d-1)/2)");
  const double constant = (n % d == 0) ? 32.0 : 36.0;
  builder.add("probabilistic",
              constant * std::sqrt(factorial(d) * std::log(dd)) * slice,
              FormulaKind::upper,
              (n % d == 0)
                  ? "32 sqrt(d! ln d) n^(-(d-1)/2): the sharpened constant "
                    "available when d divides n"
                  : "36 sqrt(d! ln d) n^(-(d-1)/2)");
  if (d == 2) {
    builder.add("matrix", 1.0 / std::sqrt(nd), FormulaKind::exact,
                "the identity matrix is symmetric and attains 1/sqrt(n)");
  }
  builder.add("unit", 1.0, FormulaKind::upper,
              "rank-one symmetric tensors have ratio exactly one");
  return builder.finish(false);
}

BoundReport psi_nonneg(const Shape& shape, Field field) {
  ReportBuilder builder(Quantity::psi);
  const std::size_t d = shape.size();
  const double q_min = min_slice_product(shape);
  const double slice = 1.0 / std::sqrt(q_min);

  builder.add("slice-product", slice, FormulaKind::lower,
              "(min_j prod_{k!=j} n_k)^(-1/2)");
  if (is_tall(shape)) {
    builder.add("tall", slice, FormulaKind::exact,
                "one dimension dominates the product of the others; the "
                "spectral and nuclear extreme ratios coincide there");
  }
  if (d >= 3) {
    builder.add("probabilistic",
                32.0 * std::sqrt(2.0 * d * std::log(static_cast<double>(d))) * slice,
                FormulaKind::upper,
                "32 sqrt(2 d ln d) times the slice-product bound");
    SpaceSpec real_space;
    real_space.shape = shape;
    real_space.field = Field::real;
    const BoundReport real_report = psi_bounds(real_space);
    builder.add("real-doubling", std::sqrt(2.0) * real_report.upper,
                FormulaKind::upper,
                "at most sqrt(2) times the real-field ratio, by splitting a "
                "real tensor into its positive and negative parts");
  }
  add_order_one_two(builder, shape);
  builder.add("unit", 1.0, FormulaKind::upper,
              "the Frobenius norm never exceeds the nuclear norm");
  return builder.finish(field == Field::binary);
}

BoundReport psi_sym_nonneg(std::size_t n, std::size_t d, Field field) {
  ReportBuilder builder(Quantity::psi);
  const double nd = static_cast<double>(n);
  const double dd = static_cast<double>(d);
  const double slice = std::pow(nd, -0.5 * (dd - 1.0));

  builder.add("slice-product", slice, FormulaKind::lower, "n^(-(d-1)/2)");
  builder.add("probabilistic",
              24.0 * std::sqrt(2.0 * factorial(d) * std::log(dd)) * slice,
              FormulaKind::upper,
              "24 sqrt(2 d! ln d) n^(-(d-1)/2)");
  if (d == 2) {
    builder.add("matrix", 1.0 / std::sqrt(nd), FormulaKind::exact,
                "the identity matrix is symmetric and attains 1/sqrt(n)");
  }
  builder.add("unit", 1.0, FormulaKind::upper,
              "the Frobenius norm never exceeds the nuclear norm");
  return builder.finish(field == Field::binary);
}

}  // namespace

Field parse_field(const std::string& name) {
  std::string lower;
  lower.reserve(name.size());
  for (char c : name) lower.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
  if (lower == "complex") return Field::complex;
  if (lower == "real") return Field::real;
  if (lower == "nonneg" || lower == "nonnegative") return Field::nonnegative;
  if (lower == "binary") return Field::binary;
  throw std::invalid_argument("unknown field: " + name);
}

std::string format_field(Field field) {
  switch (field) {
    case Field::complex:
      return "complex";
    case Field::real:
      return "real";
    case Field::nonnegative:
      return "nonneg";
    case Field::binary:
      return "binary";
  }
  throw std::invalid_argument("unknown field value");
}

void SpaceSpec::validate() const {
  (void)cell_count(shape);  // rejects empty shapes and zero dimensions
  for (std::size_t n : shape) {
    if (n < 2) {
      throw std::invalid_argument("SpaceSpec: every dimension must be >= 2");
    }
  }
  if (symmetric && !is_cubical(shape)) {
    throw std::invalid_argument("SpaceSpec: symmetric spaces must be cubical");
  }
}

BoundReport phi_bounds(const SpaceSpec& space) {
  space.validate();
  if (space.symmetric) {
    return phi_bounds_sym(space.shape.front(), space.shape.size(), space.field);
  }
  if (is_nonneg_like(space.field)) return phi_nonneg(space.shape, space.field);
  return phi_real_complex(space.shape, space.field);
}

BoundReport phi_bounds_cube(std::size_t n, std::size_t d, Field field) {
  if (n < 2 || d < 1) {
    throw std::invalid_argument("phi_bounds_cube: need n >= 2 and d >= 1");
  }
  SpaceSpec space;
  space.shape.assign(d, n);
  space.field = field;
  return phi_bounds(space);
}

BoundReport phi_bounds_sym(std::size_t n, std::size_t d, Field field) {
  if (n < 2 || d < 2) {
    throw std::invalid_argument("phi_bounds_sym: need n >= 2 and d >= 2");
  }
  if (is_nonneg_like(field)) return phi_sym_nonneg(n, d, field);
  return phi_sym_real_complex(n, d, field);
}

BoundReport psi_bounds(const SpaceSpec& space) {
  space.validate();
  if (space.field == Field::complex || space.field == Field::real) {
    // The spectral and nuclear extreme ratios coincide over the complex and
    // real fields, so the phi report carries over unchanged.
    BoundReport report = phi_bounds(space);
    report.quantity = Quantity::psi;
    return report;
  }
  if (space.symmetric) {
    return psi_sym_nonneg(space.shape.front(), space.shape.size(), space.field);
  }
  return psi_nonneg(space.shape, space.field);
}

OrderGapReport order_gap(const SpaceSpec& space) {
  space.validate();
  if (!is_nonneg_like(space.field)) {
    throw std::invalid_argument("order_gap: defined for nonnegative spaces");
  }
  OrderGapReport report;
  report.phi_order = std::pow(product_of_dims(space.shape), -0.25);
  const double q_min = min_slice_product(space.shape);
  report.psi_order = 1.0 / std::sqrt(q_min);
  report.collapsed = is_tall(space.shape);
  if (report.collapsed) report.collapse_value = report.psi_order;
  return report;
}

bool mono_check(const Shape& smaller, const Shape& larger,
                const BoundReport& smaller_report, const BoundReport& larger_report) {
  if (smaller.size() != larger.size()) {
    throw std::invalid_argument("mono_check: shapes must have equal order");
  }
  for (std::size_t k = 0; k < smaller.size(); ++k) {
    if (smaller[k] > larger[k]) {
      throw std::invalid_argument("mono_check: shapes are not comparable");
    }
  }
  return larger_report.lower <= smaller_report.upper + 1e-12;
}

}  // namespace tenx
