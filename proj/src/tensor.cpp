// SPDX-License-Identifier: MIT
#include "tenx/tensor.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

namespace tenx {

namespace {

std::vector<std::size_t> compute_strides(const Shape& shape) {
  std::vector<std::size_t> strides(shape.size(), 1);
  for (std::size_t k = shape.size(); k-- > 1;) {
    strides[k - 1] = strides[k] * shape[k];
  }
  return strides;
}

void check_same_shape(const DenseTensor& a, const DenseTensor& b, const char* op) {
  if (a.shape() != b.shape()) {
    throw std::invalid_argument(std::string(op) + ": shape mismatch");
  }
}

/// Ascending prime factors of n (empty for n == 1).
std::vector<std::size_t> prime_factors(std::size_t n) {
  std::vector<std::size_t> factors;
  for (std::size_t p = 2; p * p <= n; ++p) {
    while (n % p == 0) {
      factors.push_back(p);
      n /= p;
    }
  }
  if (n > 1) factors.push_back(n);
  return factors;
}

}  // namespace

std::size_t cell_count(const Shape& shape) {
  if (shape.empty()) {
    throw std::invalid_argument("shape: order must be at least 1");
  }
  std::size_t total = 1;
  for (std::size_t dim : shape) {
    if (dim == 0) {
      throw std::invalid_argument("shape: dimensions must be positive");
    }
    if (dim > std::numeric_limits<std::size_t>::max() / total) {
      throw std::invalid_argument("shape: cell count overflows");
    }
    total *= dim;
  }
  return total;
}

bool Permutation::is_valid() const {
  std::vector<bool> seen(map.size(), false);
  for (std::size_t v : map) {
    if (v >= map.size() || seen[v]) return false;
    seen[v] = true;
  }
  return true;
}

void Permutation::validate(std::size_t m) const {
  if (map.size() != m || !is_valid()) {
    throw std::invalid_argument("permutation: not a bijection on {0..m-1}");
  }
}

Permutation Permutation::inverse() const {
  Permutation inv;
  inv.map.resize(map.size());
  for (std::size_t i = 0; i < map.size(); ++i) inv.map[map[i]] = i;
  return inv;
}

Permutation Permutation::identity(std::size_t m) {
  Permutation p;
  p.map.resize(m);
  std::iota(p.map.begin(), p.map.end(), std::size_t{0});
  return p;
}

void ModePartition::validate(std::size_t d) const {
  std::vector<bool> seen(d, false);
  std::size_t covered = 0;
  if (blocks.empty()) {
    throw std::invalid_argument("partition: must have at least one block");
  }
  for (const auto& block : blocks) {
    if (block.empty()) {
      throw std::invalid_argument("partition: blocks must be nonempty");
    }
    for (std::size_t mode : block) {
      if (mode >= d || seen[mode]) {
        throw std::invalid_argument("partition: blocks must be disjoint subsets of {0..d-1}");
      }
      seen[mode] = true;
      ++covered;
    }
  }
  if (covered != d) {
    throw std::invalid_argument("partition: blocks must cover every mode");
  }
}

ModePartition ModePartition::sorted() const {
  ModePartition result = *this;
  for (auto& block : result.blocks) std::sort(block.begin(), block.end());
  return result;
}

ModePartition ModePartition::trivial(std::size_t d) {
  ModePartition p;
  p.blocks.resize(d);
  for (std::size_t k = 0; k < d; ++k) p.blocks[k] = {k};
  return p;
}

DenseTensor::DenseTensor(Shape shape)
    : shape_(std::move(shape)), strides_(compute_strides(shape_)), data_(cell_count(shape_), 0.0) {}

DenseTensor::DenseTensor(Shape shape, std::vector<double> data)
    : shape_(std::move(shape)), strides_(compute_strides(shape_)), data_(std::move(data)) {
  if (data_.size() != cell_count(shape_)) {
    throw std::invalid_argument("tensor: data length does not match shape");
  }
}

std::size_t DenseTensor::dim(std::size_t k) const {
  if (k >= shape_.size()) {
    throw std::invalid_argument("tensor: mode index out of range");
  }
  return shape_[k];
}

double& DenseTensor::at(const Index& index) { return data_[flat_index(index)]; }

double DenseTensor::at(const Index& index) const { return data_[flat_index(index)]; }

std::size_t DenseTensor::flat_index(const Index& index) const {
  if (index.size() != shape_.size()) {
    throw std::invalid_argument("tensor: index arity does not match order");
  }
  std::size_t flat = 0;
  for (std::size_t k = 0; k < shape_.size(); ++k) {
    if (index[k] >= shape_[k]) {
      throw std::invalid_argument("tensor: index out of range");
    }
    flat += index[k] * strides_[k];
  }
  return flat;
}

Index DenseTensor::multi_index(std::size_t flat) const {
  if (flat >= data_.size()) {
    throw std::invalid_argument("tensor: flat index out of range");
  }
  Index index(shape_.size());
  for (std::size_t k = 0; k < shape_.size(); ++k) {
    index[k] = flat / strides_[k];
    flat %= strides_[k];
  }
  return index;
}

double frobenius_norm(const DenseTensor& t) {
  double sum = 0.0;
  for (double v : t.data()) sum += v * v;
  return std::sqrt(sum);
}

double inner_product(const DenseTensor& a, const DenseTensor& b) {
  check_same_shape(a, b, "inner_product");
  double sum = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) sum += a[i] * b[i];
  return sum;
}

DenseTensor outer_product(const std::vector<std::vector<double>>& vectors) {
  if (vectors.empty()) {
    throw std::invalid_argument("outer_product: needs at least one vector");
  }
  Shape shape;
  shape.reserve(vectors.size());
  for (const auto& v : vectors) {
    if (v.empty()) {
      throw std::invalid_argument("outer_product: vectors must be nonempty");
    }
    shape.push_back(v.size());
  }
  DenseTensor result(shape);
  for_each_index(shape, [&](std::size_t flat, const Index& index) {
    double prod = 1.0;
    for (std::size_t k = 0; k < vectors.size(); ++k) prod *= vectors[k][index[k]];
    result[flat] = prod;
  });
  return result;
}

DenseTensor mode_contract(const DenseTensor& t, std::size_t k, const std::vector<double>& x) {
  const std::size_t d = t.order();
  if (k >= d) throw std::invalid_argument("mode_contract: mode out of range");
  if (x.size() != t.dim(k)) {
    throw std::invalid_argument("mode_contract: vector length does not match dimension");
  }
  Shape out_shape;
  for (std::size_t j = 0; j < d; ++j) {
    if (j != k) out_shape.push_back(t.dim(j));
  }
  if (out_shape.empty()) out_shape = {1};
  DenseTensor result(out_shape);

  std::size_t outer = 1, inner = 1;
  for (std::size_t j = 0; j < k; ++j) outer *= t.dim(j);
  for (std::size_t j = k + 1; j < d; ++j) inner *= t.dim(j);
  const std::size_t nk = t.dim(k);
  for (std::size_t o = 0; o < outer; ++o) {
    for (std::size_t i = 0; i < nk; ++i) {
      const double w = x[i];
      if (w == 0.0) continue;
      const std::size_t base = (o * nk + i) * inner;
      for (std::size_t in = 0; in < inner; ++in) {
        result[o * inner + in] += w * t[base + in];
      }
    }
  }
  return result;
}

DenseTensor slice(const DenseTensor& t, std::size_t k, std::size_t i) {
  const std::size_t d = t.order();
  if (k >= d) throw std::invalid_argument("slice: mode out of range");
  if (i >= t.dim(k)) throw std::invalid_argument("slice: index out of range");
  std::vector<double> basis(t.dim(k), 0.0);
  basis[i] = 1.0;
  return mode_contract(t, k, basis);
}

DenseTensor slice_permute(const DenseTensor& t, std::size_t k, const Permutation& perm) {
  const std::size_t d = t.order();
  if (k >= d) throw std::invalid_argument("slice_permute: mode out of range");
  perm.validate(t.dim(k));
  DenseTensor result(t.shape());
  std::size_t outer = 1, inner = 1;
  for (std::size_t j = 0; j < k; ++j) outer *= t.dim(j);
  for (std::size_t j = k + 1; j < d; ++j) inner *= t.dim(j);
  const std::size_t nk = t.dim(k);
  for (std::size_t o = 0; o < outer; ++o) {
    for (std::size_t i = 0; i < nk; ++i) {
      const std::size_t src = (o * nk + perm.map[i]) * inner;
      const std::size_t dst = (o * nk + i) * inner;
      for (std::size_t in = 0; in < inner; ++in) result[dst + in] = t[src + in];
    }
  }
  return result;
}

DenseTensor mode_transpose(const DenseTensor& t, const Permutation& perm) {
  const std::size_t d = t.order();
  perm.validate(d);
  Shape out_shape(d);
  for (std::size_t k = 0; k < d; ++k) out_shape[k] = t.dim(perm.map[k]);
  DenseTensor result(out_shape);
  // result(j) = t(i) with j_k = i_{perm[k]}: accumulate the destination flat
  // index directly from t's multi-index.
  const Permutation inv = perm.inverse();
  std::vector<std::size_t> weight(d);
  for (std::size_t m = 0; m < d; ++m) weight[m] = result.strides()[inv.map[m]];
  for_each_index(t.shape(), [&](std::size_t flat, const Index& index) {
    std::size_t out = 0;
    for (std::size_t m = 0; m < d; ++m) out += index[m] * weight[m];
    result[out] = t[flat];
  });
  return result;
}

DenseTensor unfold(const DenseTensor& t, const ModePartition& partition) {
  const std::size_t d = t.order();
  partition.validate(d);
  const ModePartition part = partition.sorted();

  Shape out_shape(part.block_count(), 1);
  for (std::size_t b = 0; b < part.block_count(); ++b) {
    for (std::size_t mode : part.blocks[b]) out_shape[b] *= t.dim(mode);
  }
  DenseTensor result(out_shape);

  // weight[m] = (row-major stride of mode m inside its block) * (stride of the
  // block in the result), so the result flat index is sum_m i_m * weight[m].
  std::vector<std::size_t> weight(d);
  for (std::size_t b = 0; b < part.block_count(); ++b) {
    std::size_t intra = 1;
    const auto& block = part.blocks[b];
    for (std::size_t pos = block.size(); pos-- > 0;) {
      weight[block[pos]] = intra * result.strides()[b];
      intra *= t.dim(block[pos]);
    }
  }
  for_each_index(t.shape(), [&](std::size_t flat, const Index& index) {
    std::size_t out = 0;
    for (std::size_t m = 0; m < d; ++m) out += index[m] * weight[m];
    result[out] = t[flat];
  });
  return result;
}

DenseTensor fold(const DenseTensor& m, const Shape& target, const ModePartition& partition) {
  const std::size_t d = target.size();
  (void)cell_count(target);  // validates target
  partition.validate(d);
  const ModePartition part = partition.sorted();
  if (m.order() != part.block_count()) {
    throw std::invalid_argument("fold: input order does not match block count");
  }
  for (std::size_t b = 0; b < part.block_count(); ++b) {
    std::size_t prod = 1;
    for (std::size_t mode : part.blocks[b]) prod *= target[mode];
    if (prod != m.dim(b)) {
      throw std::invalid_argument("fold: block dimension product does not match input");
    }
  }
  DenseTensor result(target);
  std::vector<std::size_t> weight(d);
  for (std::size_t b = 0; b < part.block_count(); ++b) {
    std::size_t intra = 1;
    const auto& block = part.blocks[b];
    for (std::size_t pos = block.size(); pos-- > 0;) {
      weight[block[pos]] = intra * m.strides()[b];
      intra *= target[block[pos]];
    }
  }
  for_each_index(target, [&](std::size_t flat, const Index& index) {
    std::size_t src = 0;
    for (std::size_t mode = 0; mode < d; ++mode) src += index[mode] * weight[mode];
    result[flat] = m[src];
  });
  return result;
}

DenseTensor matricize(const DenseTensor& t, std::size_t k) {
  const std::size_t d = t.order();
  if (d < 2) throw std::invalid_argument("matricize: order must be at least 2");
  if (k >= d) throw std::invalid_argument("matricize: mode out of range");
  ModePartition part;
  part.blocks.resize(2);
  part.blocks[0] = {k};
  for (std::size_t j = 0; j < d; ++j) {
    if (j != k) part.blocks[1].push_back(j);
  }
  return unfold(t, part);
}

DenseTensor max_fold(const DenseTensor& t) {
  Shape refined;
  for (std::size_t k = 0; k < t.order(); ++k) {
    for (std::size_t p : prime_factors(t.dim(k))) refined.push_back(p);
  }
  if (refined.empty()) refined = {1};
  // Splitting a mode into ascending prime factors combined row-major keeps the
  // row-major layout, so only the shape changes.
  return DenseTensor(refined, t.data());
}

double multilinear_eval(const DenseTensor& t, const std::vector<std::vector<double>>& xs) {
  const std::size_t d = t.order();
  if (xs.size() != d) {
    throw std::invalid_argument("multilinear_eval: need one vector per mode");
  }
  for (std::size_t k = 0; k < d; ++k) {
    if (xs[k].size() != t.dim(k)) {
      throw std::invalid_argument("multilinear_eval: vector length does not match dimension");
    }
  }
  double sum = 0.0;
  for_each_index(t.shape(), [&](std::size_t flat, const Index& index) {
    double prod = t[flat];
    if (prod == 0.0) return;
    for (std::size_t k = 0; k < d; ++k) prod *= xs[k][index[k]];
    sum += prod;
  });
  return sum;
}

DenseTensor kron_power(const DenseTensor& t, std::size_t m) {
  if (m == 0) throw std::invalid_argument("kron_power: power must be at least 1");
  DenseTensor result = t;
  const std::size_t d = t.order();
  for (std::size_t step = 1; step < m; ++step) {
    Shape shape(d);
    for (std::size_t k = 0; k < d; ++k) shape[k] = result.dim(k) * t.dim(k);
    DenseTensor next(shape);
    // next(a_0*n_0 + b_0, ..., a_{d-1}*n_{d-1} + b_{d-1}) = result(a) * t(b):
    // the accumulated factor stays most significant in every mode.
    for_each_index(result.shape(), [&](std::size_t, const Index& a) {
      const double va = result.at(a);
      if (va == 0.0) {
        return;
      }
      for_each_index(t.shape(), [&](std::size_t, const Index& b) {
        Index j(d);
        for (std::size_t k = 0; k < d; ++k) j[k] = a[k] * t.dim(k) + b[k];
        next.at(j) = va * t.at(b);
      });
    });
    // Zero blocks of `next` stay zero-filled from construction.
    result = std::move(next);
  }
  return result;
}

}  // namespace tenx
