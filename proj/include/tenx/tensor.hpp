// SPDX-License-Identifier: MIT
#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

/// Dense real tensor container plus the index-rearrangement and contraction
/// primitives used throughout the library: slices, slice permutations, mode
/// transposes, unfoldings/foldings driven by mode partitions, matricizations,
/// maximum folding into prime dimensions, multilinear evaluation, and
/// mode-wise Kronecker powers.
///
/// Conventions (fixed for the whole library):
///  - entries are stored row-major with mode 0 most significant;
///  - all mode indices in this C++ API are 0-based (serialization and the CLI
///    translate to and from the 1-based convention used in file formats);
///  - an unfolding combines the modes inside each partition block in
///    increasing mode order, row-major.
namespace tenx {

/// Dimensions of each mode, outermost first.  Order d = size(); every
/// dimension must be >= 1 (ratio statements assume >= 2, but intermediate
/// results of foldings may legitimately have unit modes).
using Shape = std::vector<std::size_t>;

/// A multi-index; valid when index[k] < shape[k] for every mode k.
using Index = std::vector<std::size_t>;

/// Bijection on {0, ..., m-1}; map[i] is the image of i.
struct Permutation {
  std::vector<std::size_t> map;

  [[nodiscard]] std::size_t size() const noexcept { return map.size(); }
  [[nodiscard]] bool is_valid() const;
  /// Throws std::invalid_argument unless this is a bijection on {0..m-1}.
  void validate(std::size_t m) const;
  [[nodiscard]] Permutation inverse() const;
  [[nodiscard]] static Permutation identity(std::size_t m);
};

/// Ordered list of disjoint, covering, nonempty blocks of mode indices.
/// Block order determines the mode order of the unfolded tensor; the order
/// of indices inside a block is irrelevant (blocks are treated as sets).
struct ModePartition {
  std::vector<std::vector<std::size_t>> blocks;

  [[nodiscard]] std::size_t block_count() const noexcept { return blocks.size(); }
  /// Throws std::invalid_argument unless blocks partition {0..d-1}.
  void validate(std::size_t d) const;
  /// Canonical copy with each block sorted ascending (block order kept).
  [[nodiscard]] ModePartition sorted() const;
  [[nodiscard]] static ModePartition trivial(std::size_t d);
};

/// Dense tensor of doubles, row-major, mode 0 most significant.
class DenseTensor {
 public:
  DenseTensor() = default;
  /// Zero-filled tensor of the given shape.
  explicit DenseTensor(Shape shape);
  /// Takes ownership of `data`; its length must equal the shape's cell count.
  DenseTensor(Shape shape, std::vector<double> data);

  [[nodiscard]] const Shape& shape() const noexcept { return shape_; }
  [[nodiscard]] std::size_t order() const noexcept { return shape_.size(); }
  [[nodiscard]] std::size_t size() const noexcept { return data_.size(); }
  [[nodiscard]] std::size_t dim(std::size_t k) const;
  [[nodiscard]] const std::vector<std::size_t>& strides() const noexcept { return strides_; }

  [[nodiscard]] double& operator[](std::size_t flat) { return data_[flat]; }
  [[nodiscard]] double operator[](std::size_t flat) const { return data_[flat]; }
  [[nodiscard]] double& at(const Index& index);
  [[nodiscard]] double at(const Index& index) const;

  /// Row-major linearization; validates every component.
  [[nodiscard]] std::size_t flat_index(const Index& index) const;
  /// Inverse of flat_index.
  [[nodiscard]] Index multi_index(std::size_t flat) const;

  [[nodiscard]] std::vector<double>& data() noexcept { return data_; }
  [[nodiscard]] const std::vector<double>& data() const noexcept { return data_; }

  bool operator==(const DenseTensor& other) const = default;

 private:
  Shape shape_;
  std::vector<std::size_t> strides_;
  std::vector<double> data_;
};

/// Number of cells of a shape (product of dimensions); validates the shape.
[[nodiscard]] std::size_t cell_count(const Shape& shape);

/// sqrt of the sum of squared entries.
[[nodiscard]] double frobenius_norm(const DenseTensor& t);

/// Entrywise inner product; shapes must match.
[[nodiscard]] double inner_product(const DenseTensor& a, const DenseTensor& b);

/// Rank-one tensor with entries prod_k vectors[k][i_k].
[[nodiscard]] DenseTensor outer_product(const std::vector<std::vector<double>>& vectors);

/// Mode-k contraction: sum_i x[i] * (mode-k slice i of t); order drops by one.
/// A contracted order-1 tensor yields a scalar wrapped in a shape-{1} tensor.
[[nodiscard]] DenseTensor mode_contract(const DenseTensor& t, std::size_t k,
                                        const std::vector<double>& x);

/// Mode-k slice at index i: the order-(d-1) subtensor with mode k fixed.
/// Slicing an order-1 tensor yields a shape-{1} tensor.
[[nodiscard]] DenseTensor slice(const DenseTensor& t, std::size_t k, std::size_t i);

/// Mode-k slice i of the result is mode-k slice perm.map[i] of t.
[[nodiscard]] DenseTensor slice_permute(const DenseTensor& t, std::size_t k,
                                        const Permutation& perm);

/// Mode transpose: result shape[k] = shape[perm.map[k]] and
/// result(j_0,...,j_{d-1}) = t(i_0,...,i_{d-1}) with j_k = i_{perm.map[k]}.
/// For matrices, perm = (1,0) is the ordinary transpose.
[[nodiscard]] DenseTensor mode_transpose(const DenseTensor& t, const Permutation& perm);

/// General unfolding: block b of the partition becomes mode b of the result,
/// of dimension prod of the block's dimensions; modes inside a block are
/// combined in increasing mode order, row-major.  Entry bijection.
[[nodiscard]] DenseTensor unfold(const DenseTensor& t, const ModePartition& partition);

/// Exact inverse of unfold: returns the tensor of shape `target` whose
/// unfolding by `partition` equals `m`.
[[nodiscard]] DenseTensor fold(const DenseTensor& m, const Shape& target,
                               const ModePartition& partition);

/// Mode-k matricization: unfold by ({k}, all other modes ascending).
[[nodiscard]] DenseTensor matricize(const DenseTensor& t, std::size_t k);

/// Splits every mode into its ascending prime factors (dimension-1 modes are
/// dropped); the data layout is unchanged, only the shape is refined.
[[nodiscard]] DenseTensor max_fold(const DenseTensor& t);

/// Multilinear form sum_i t[i] * prod_k xs[k][i_k]; equals
/// inner_product(t, outer_product(xs)).
[[nodiscard]] double multilinear_eval(const DenseTensor& t,
                                      const std::vector<std::vector<double>>& xs);

/// m-fold mode-wise Kronecker (tensor) power: order stays d, mode k gets
/// dimension dim(k)^m, and each entry is a product of m entries of t with the
/// first factor most significant in every mode.  kron_power(t, 1) == t.
[[nodiscard]] DenseTensor kron_power(const DenseTensor& t, std::size_t m);

/// Iterates all multi-indices of `shape` in row-major order, calling
/// f(flat, index).  The Index reference is reused between calls.
template <typename F>
void for_each_index(const Shape& shape, F&& f) {
  const std::size_t d = shape.size();
  Index index(d, 0);
  const std::size_t total = cell_count(shape);
  for (std::size_t flat = 0; flat < total; ++flat) {
    f(flat, static_cast<const Index&>(index));
    for (std::size_t k = d; k-- > 0;) {
      if (++index[k] < shape[k]) break;
      index[k] = 0;
    }
  }
}

}  // namespace tenx
