// SPDX-License-Identifier: MIT
#pragma once

#include <iosfwd>
#include <string>

#include "tenx/tensor.hpp"

/// Tensor (de)serialization and small text helpers.
///
/// Two on-disk formats, both bit-exact round-trips:
///  - JSON: {"shape":[n1,...,nd],"data":[...]} with data row-major, mode 0
///    most significant (indices in files are 1-based only where indices
///    appear; JSON stores raw data, so no translation is needed);
///  - ones text (zero-one tensors only): a first line with the
///    space-separated dimensions, then one line per unit entry giving its
///    1-based multi-index.
/// Files named *.json use the JSON format; everything else uses ones text.
namespace tenx {

/// True iff every entry is exactly 0.0 or 1.0.
[[nodiscard]] bool is_zero_one(const DenseTensor& t);

/// Parses "2x3x4" (case-insensitive 'x') into a Shape.
/// Throws std::invalid_argument on malformed input.
[[nodiscard]] Shape parse_shape(const std::string& text);

/// Formats a shape as "2x3x4".
[[nodiscard]] std::string format_shape(const Shape& shape);

/// Formats a real number with the given number of significant digits,
/// trimming the exponent form printf would add only when needed.
[[nodiscard]] std::string format_real(double value, int significant_digits = 6);

/// JSON format.  Doubles are emitted with shortest round-trip precision.
void save_tensor_json(std::ostream& out, const DenseTensor& t);
[[nodiscard]] DenseTensor load_tensor_json(std::istream& in);

/// Ones-text format; throws std::invalid_argument unless t is zero-one.
void save_tensor_ones(std::ostream& out, const DenseTensor& t);
[[nodiscard]] DenseTensor load_tensor_ones(std::istream& in);

/// Writes/reads a file, choosing the format by the ".json" extension.
void save_tensor(const std::string& path, const DenseTensor& t);
[[nodiscard]] DenseTensor load_tensor(const std::string& path);

}  // namespace tenx
