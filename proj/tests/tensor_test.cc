// SPDX-License-Identifier: MIT
#include "tenx/tensor.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <numeric>
#include <random>
#include <stdexcept>
#include <vector>

namespace tenx {
namespace {

/// Tensor with entries 0, 1, 2, ... in row-major order.
DenseTensor iota_tensor(Shape shape, double start = 0.0) {
  DenseTensor t(std::move(shape));
  std::iota(t.data().begin(), t.data().end(), start);
  return t;
}

DenseTensor random_tensor(Shape shape, std::uint64_t seed) {
  DenseTensor t(std::move(shape));
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> dist(-1.0, 1.0);
  for (double& v : t.data()) v = dist(rng);
  return t;
}

/// n x n identity matrix.
DenseTensor identity_matrix(std::size_t n) {
  DenseTensor t(Shape{n, n});
  for (std::size_t i = 0; i < n; ++i) t.at({i, i}) = 1.0;
  return t;
}

TEST(Shape, CellCountAndValidation) {
  EXPECT_EQ(cell_count({2, 3, 4}), 24u);
  EXPECT_EQ(cell_count({1}), 1u);
  EXPECT_EQ(cell_count({5}), 5u);
  EXPECT_THROW((void)cell_count({}), std::invalid_argument);
  EXPECT_THROW((void)cell_count({2, 0, 3}), std::invalid_argument);
}

TEST(DenseTensor, StridesRowMajorMode0MostSignificant) {
  const DenseTensor t(Shape{2, 3, 4});
  ASSERT_EQ(t.strides().size(), 3u);
  EXPECT_EQ(t.strides()[0], 12u);
  EXPECT_EQ(t.strides()[1], 4u);
  EXPECT_EQ(t.strides()[2], 1u);
  EXPECT_EQ(t.size(), 24u);
  EXPECT_EQ(t.order(), 3u);
  EXPECT_EQ(t.dim(1), 3u);
  EXPECT_THROW((void)t.dim(3), std::invalid_argument);
}

TEST(DenseTensor, FlatAndMultiIndexAreInverse) {
  const DenseTensor t = iota_tensor({2, 3, 4});
  EXPECT_EQ(t.flat_index({1, 2, 3}), 23u);
  EXPECT_EQ(t.flat_index({0, 1, 2}), 6u);
  EXPECT_EQ(t.at({1, 2, 3}), 23.0);
  for (std::size_t flat = 0; flat < t.size(); ++flat) {
    EXPECT_EQ(t.flat_index(t.multi_index(flat)), flat);
  }
  EXPECT_THROW((void)t.flat_index({2, 0, 0}), std::invalid_argument);
  EXPECT_THROW((void)t.flat_index({0, 0}), std::invalid_argument);
  EXPECT_THROW((void)t.multi_index(24), std::invalid_argument);
}

TEST(DenseTensor, ConstructorValidatesDataLength) {
  EXPECT_NO_THROW(DenseTensor(Shape{2, 2}, std::vector<double>(4, 1.0)));
  EXPECT_THROW(DenseTensor(Shape{2, 2}, std::vector<double>(5, 1.0)), std::invalid_argument);
}

TEST(ForEachIndex, VisitsRowMajorOrder) {
  std::vector<Index> seen;
  for_each_index(Shape{2, 2}, [&](std::size_t flat, const Index& idx) {
    EXPECT_EQ(flat, seen.size());
    seen.push_back(idx);
  });
  const std::vector<Index> expected = {{0, 0}, {0, 1}, {1, 0}, {1, 1}};
  EXPECT_EQ(seen, expected);
}

TEST(Permutation, ValidationAndInverse) {
  const Permutation p{{1, 2, 0}};
  EXPECT_TRUE(p.is_valid());
  EXPECT_NO_THROW(p.validate(3));
  EXPECT_THROW(p.validate(4), std::invalid_argument);
  const Permutation inv = p.inverse();
  EXPECT_EQ(inv.map, (std::vector<std::size_t>{2, 0, 1}));
  EXPECT_EQ(Permutation::identity(3).map, (std::vector<std::size_t>{0, 1, 2}));
  EXPECT_FALSE((Permutation{{0, 0, 1}}.is_valid()));
  EXPECT_FALSE((Permutation{{0, 3, 1}}.is_valid()));
}

TEST(ModePartition, Validation) {
  ModePartition ok;
  ok.blocks = {{1}, {2, 0}};
  EXPECT_NO_THROW(ok.validate(3));
  EXPECT_EQ(ok.sorted().blocks[1], (std::vector<std::size_t>{0, 2}));

  ModePartition overlap;
  overlap.blocks = {{0, 1}, {1, 2}};
  EXPECT_THROW(overlap.validate(3), std::invalid_argument);

  ModePartition missing;
  missing.blocks = {{0}, {2}};
  EXPECT_THROW(missing.validate(3), std::invalid_argument);

  ModePartition empty_block;
  empty_block.blocks = {{0, 1, 2}, {}};
  EXPECT_THROW(empty_block.validate(3), std::invalid_argument);

  EXPECT_EQ(ModePartition::trivial(2).blocks,
            (std::vector<std::vector<std::size_t>>{{0}, {1}}));
}

TEST(Norms, FrobeniusAndInnerProduct) {
  const DenseTensor t(Shape{2, 2}, {3.0, 4.0, 0.0, 0.0});
  EXPECT_DOUBLE_EQ(frobenius_norm(t), 5.0);
  const DenseTensor u(Shape{2, 2}, {1.0, 1.0, 2.0, -1.0});
  EXPECT_DOUBLE_EQ(inner_product(t, u), 7.0);
  EXPECT_THROW((void)inner_product(t, DenseTensor(Shape{4})), std::invalid_argument);
}

TEST(OuterProduct, MatchesEntrywiseDefinition) {
  const DenseTensor r = outer_product({{1.0, 2.0}, {3.0, 4.0, 5.0}});
  ASSERT_EQ(r.shape(), (Shape{2, 3}));
  EXPECT_DOUBLE_EQ(r.at({0, 0}), 3.0);
  EXPECT_DOUBLE_EQ(r.at({0, 2}), 5.0);
  EXPECT_DOUBLE_EQ(r.at({1, 1}), 8.0);
  EXPECT_THROW((void)outer_product({}), std::invalid_argument);
  EXPECT_THROW((void)outer_product({{1.0}, {}}), std::invalid_argument);
}

TEST(ModeContract, MatchesManualSums) {
  const DenseTensor t = iota_tensor({2, 3, 4});
  const std::vector<double> x = {1.0, -2.0};
  const DenseTensor c0 = mode_contract(t, 0, x);
  ASSERT_EQ(c0.shape(), (Shape{3, 4}));
  // c0(j,k) = t(0,j,k) - 2 t(1,j,k) = (4j+k) - 2(12+4j+k).
  for_each_index(c0.shape(), [&](std::size_t, const Index& idx) {
    const double expected = t.at({0, idx[0], idx[1]}) - 2.0 * t.at({1, idx[0], idx[1]});
    EXPECT_DOUBLE_EQ(c0.at(idx), expected);
  });

  const DenseTensor c2 = mode_contract(t, 2, {1.0, 0.0, 0.0, 1.0});
  ASSERT_EQ(c2.shape(), (Shape{2, 3}));
  EXPECT_DOUBLE_EQ(c2.at({1, 2}), 20.0 + 23.0);

  const DenseTensor v(Shape{3}, {5.0, 6.0, 7.0});
  const DenseTensor s = mode_contract(v, 0, {1.0, 1.0, 1.0});
  ASSERT_EQ(s.shape(), (Shape{1}));
  EXPECT_DOUBLE_EQ(s[0], 18.0);

  EXPECT_THROW((void)mode_contract(t, 3, x), std::invalid_argument);
  EXPECT_THROW((void)mode_contract(t, 0, {1.0}), std::invalid_argument);
}

TEST(Slice, ExtractsSubtensor) {
  const DenseTensor t = iota_tensor({2, 3, 4});
  const DenseTensor s = slice(t, 1, 2);
  ASSERT_EQ(s.shape(), (Shape{2, 4}));
  EXPECT_DOUBLE_EQ(s.at({0, 0}), 8.0);
  EXPECT_DOUBLE_EQ(s.at({1, 3}), 23.0);
  EXPECT_THROW((void)slice(t, 1, 3), std::invalid_argument);
}

TEST(SlicePermute, ReordersSlices) {
  const DenseTensor t = iota_tensor({2, 3, 4});
  const Permutation perm{{2, 0, 1}};
  const DenseTensor r = slice_permute(t, 1, perm);
  ASSERT_EQ(r.shape(), t.shape());
  // Mode-1 slice i of r is mode-1 slice perm.map[i] of t.
  for (std::size_t i = 0; i < 3; ++i) {
    EXPECT_EQ(slice(r, 1, i), slice(t, 1, perm.map[i]));
  }
  // Applying the inverse permutation restores the tensor.
  EXPECT_EQ(slice_permute(r, 1, perm.inverse()), t);
}

TEST(ModeTranspose, FrozenSpotValues) {
  const DenseTensor t = iota_tensor({2, 3, 4});
  const DenseTensor r = mode_transpose(t, Permutation{{1, 2, 0}});
  ASSERT_EQ(r.shape(), (Shape{3, 4, 2}));
  EXPECT_DOUBLE_EQ(r.at({2, 3, 1}), 23.0);
  EXPECT_DOUBLE_EQ(r.at({1, 2, 0}), 6.0);
  // Every entry: r(j) = t(i) with j_k = i_{perm[k]}.
  for_each_index(t.shape(), [&](std::size_t, const Index& i) {
    EXPECT_DOUBLE_EQ(r.at({i[1], i[2], i[0]}), t.at(i));
  });
}

TEST(ModeTranspose, MatrixTransposeAndInverseRoundTrip) {
  const DenseTensor m = iota_tensor({2, 3});
  const DenseTensor mt = mode_transpose(m, Permutation{{1, 0}});
  ASSERT_EQ(mt.shape(), (Shape{3, 2}));
  for (std::size_t i = 0; i < 2; ++i) {
    for (std::size_t j = 0; j < 3; ++j) EXPECT_DOUBLE_EQ(mt.at({j, i}), m.at({i, j}));
  }
  const DenseTensor t = random_tensor({2, 3, 4, 5}, 99);
  const Permutation perm{{3, 0, 2, 1}};
  EXPECT_EQ(mode_transpose(mode_transpose(t, perm), perm.inverse()), t);
}

TEST(Unfold, FrozenTablesForIota234) {
  const DenseTensor t = iota_tensor({2, 3, 4});

  ModePartition p1;
  p1.blocks = {{1}, {0, 2}};
  const DenseTensor u1 = unfold(t, p1);
  ASSERT_EQ(u1.shape(), (Shape{3, 8}));
  const std::vector<double> expected1 = {0,  1,  2,  3,  12, 13, 14, 15,  //
                                         4,  5,  6,  7,  16, 17, 18, 19,  //
                                         8,  9,  10, 11, 20, 21, 22, 23};
  EXPECT_EQ(u1.data(), expected1);

  ModePartition p2;
  p2.blocks = {{0, 2}, {1}};
  const DenseTensor u2 = unfold(t, p2);
  ASSERT_EQ(u2.shape(), (Shape{8, 3}));
  const std::vector<double> expected2 = {0,  4,  8,   //
                                         1,  5,  9,   //
                                         2,  6,  10,  //
                                         3,  7,  11,  //
                                         12, 16, 20,  //
                                         13, 17, 21,  //
                                         14, 18, 22,  //
                                         15, 19, 23};
  EXPECT_EQ(u2.data(), expected2);

  ModePartition p3;
  p3.blocks = {{2}, {0, 1}};
  const DenseTensor u3 = unfold(t, p3);
  ASSERT_EQ(u3.shape(), (Shape{4, 6}));
  EXPECT_EQ(u3.data()[0], 0.0);
  EXPECT_EQ(u3.data()[5], 20.0);
  const std::vector<double> row0 = {0, 4, 8, 12, 16, 20};
  for (std::size_t j = 0; j < 6; ++j) EXPECT_DOUBLE_EQ(u3.at({0, j}), row0[j]);

  ModePartition p4;
  p4.blocks = {{0, 1}, {2}};
  const DenseTensor u4 = unfold(t, p4);
  ASSERT_EQ(u4.shape(), (Shape{6, 4}));
  // Combining (0,1) row-major then mode 2 keeps the original layout.
  EXPECT_EQ(u4.data(), t.data());
}

TEST(Unfold, BlockOrderIsResultModeOrderAndInsideOrderIrrelevant) {
  const DenseTensor t = random_tensor({2, 3, 4}, 7);
  ModePartition a;
  a.blocks = {{1}, {2, 0}};  // same set blocks as {{1},{0,2}}
  ModePartition b;
  b.blocks = {{1}, {0, 2}};
  EXPECT_EQ(unfold(t, a), unfold(t, b));
  EXPECT_THROW((void)unfold(t, ModePartition{{{0}, {1}}}), std::invalid_argument);
}

TEST(Matricize, EqualsModeFirstUnfold) {
  const DenseTensor t = random_tensor({2, 3, 4}, 11);
  ModePartition p;
  p.blocks = {{1}, {0, 2}};
  EXPECT_EQ(matricize(t, 1), unfold(t, p));
  ASSERT_EQ(matricize(t, 2).shape(), (Shape{4, 6}));
  EXPECT_THROW((void)matricize(t, 3), std::invalid_argument);
  EXPECT_THROW((void)matricize(DenseTensor(Shape{5}), 0), std::invalid_argument);
}

TEST(FoldUnfold, RoundTripsOnRandomTensors) {
  const DenseTensor t = random_tensor({2, 3, 2, 2}, 13);
  const std::vector<ModePartition> partitions = {
      ModePartition{{{0}, {1}, {2}, {3}}}, ModePartition{{{0, 1}, {2, 3}}},
      ModePartition{{{3, 0}, {1}, {2}}},   ModePartition{{{2}, {0, 1, 3}}},
      ModePartition{{{0, 1, 2, 3}}}};
  for (const auto& p : partitions) {
    const DenseTensor u = unfold(t, p);
    EXPECT_DOUBLE_EQ(frobenius_norm(u), frobenius_norm(t));
    EXPECT_EQ(fold(u, t.shape(), p), t);
  }
  ModePartition p;
  p.blocks = {{0, 1}, {2, 3}};
  EXPECT_THROW((void)fold(unfold(t, p), Shape{2, 3, 4}, p), std::invalid_argument);
  EXPECT_THROW((void)fold(unfold(t, p), t.shape(), ModePartition{{{0}, {1}, {2}, {3}}}),
               std::invalid_argument);
}

TEST(MaxFold, Identity6BecomesShape2323) {
  const DenseTensor f = max_fold(identity_matrix(6));
  ASSERT_EQ(f.shape(), (Shape{2, 3, 2, 3}));
  const std::vector<Index> ones = {{0, 0, 0, 0}, {0, 1, 0, 1}, {0, 2, 0, 2},
                                   {1, 0, 1, 0}, {1, 1, 1, 1}, {1, 2, 1, 2}};
  double total = 0.0;
  for (const Index& idx : ones) {
    EXPECT_DOUBLE_EQ(f.at(idx), 1.0);
    total += 1.0;
  }
  double sum = 0.0;
  for (double v : f.data()) sum += v;
  EXPECT_DOUBLE_EQ(sum, total);  // all other entries are zero
}

TEST(MaxFold, Identity8BecomesSixfoldBinaryCube) {
  const DenseTensor f = max_fold(identity_matrix(8));
  ASSERT_EQ(f.shape(), (Shape{2, 2, 2, 2, 2, 2}));
  std::size_t ones = 0;
  for_each_index(f.shape(), [&](std::size_t flat, const Index& idx) {
    if (f[flat] == 1.0) {
      ++ones;
      EXPECT_EQ(idx[0], idx[3]);
      EXPECT_EQ(idx[1], idx[4]);
      EXPECT_EQ(idx[2], idx[5]);
    } else {
      EXPECT_EQ(f[flat], 0.0);
    }
  });
  EXPECT_EQ(ones, 8u);
}

TEST(MaxFold, Antidiagonal4) {
  DenseTensor j4(Shape{4, 4});
  for (std::size_t i = 0; i < 4; ++i) j4.at({i, 3 - i}) = 1.0;
  const DenseTensor f = max_fold(j4);
  ASSERT_EQ(f.shape(), (Shape{2, 2, 2, 2}));
  const std::vector<Index> ones = {{0, 0, 1, 1}, {0, 1, 1, 0}, {1, 0, 0, 1}, {1, 1, 0, 0}};
  for (const Index& idx : ones) EXPECT_DOUBLE_EQ(f.at(idx), 1.0);
  EXPECT_DOUBLE_EQ(frobenius_norm(f), 2.0);
}

TEST(MaxFold, DropsUnitModesAndKeepsData) {
  const DenseTensor t = random_tensor({1, 6, 1, 2}, 17);
  const DenseTensor f = max_fold(t);
  ASSERT_EQ(f.shape(), (Shape{2, 3, 2}));
  EXPECT_EQ(f.data(), t.data());
  const DenseTensor unit(Shape{1, 1}, {4.0});
  EXPECT_EQ(max_fold(unit).shape(), (Shape{1}));
  const DenseTensor prime = random_tensor({5, 7}, 19);
  EXPECT_EQ(max_fold(prime), prime);
}

TEST(MultilinearEval, FrozenValueAndOuterProductConsistency) {
  const DenseTensor t = iota_tensor({2, 3, 4});
  const std::vector<std::vector<double>> xs = {
      {1.0, 2.0}, {0.5, -1.0, 2.0}, {1.0, 1.0, 0.0, -2.0}};
  EXPECT_NEAR(multilinear_eval(t, xs), -22.5, 1e-12);
  EXPECT_NEAR(inner_product(t, outer_product(xs)), -22.5, 1e-12);

  const std::vector<std::vector<double>> ones = {
      {1.0, 1.0}, {1.0, 1.0, 1.0}, {1.0, 1.0, 1.0, 1.0}};
  EXPECT_DOUBLE_EQ(multilinear_eval(t, ones), 276.0);
  EXPECT_THROW((void)multilinear_eval(t, {{1.0, 2.0}}), std::invalid_argument);
}

TEST(MultilinearEval, AgreesWithIteratedContraction) {
  const DenseTensor t = random_tensor({3, 2, 4}, 23);
  const std::vector<std::vector<double>> xs = {
      {0.3, -1.2, 0.7}, {1.5, -0.25}, {0.1, 0.2, -0.4, 0.9}};
  DenseTensor c = mode_contract(t, 0, xs[0]);
  c = mode_contract(c, 0, xs[1]);
  c = mode_contract(c, 0, xs[2]);
  ASSERT_EQ(c.shape(), (Shape{1}));
  EXPECT_NEAR(c[0], multilinear_eval(t, xs), 1e-12);
}

TEST(KronPower, FrozenMatrixSquare) {
  DenseTensor a(Shape{2, 3});
  std::iota(a.data().begin(), a.data().end(), 1.0);
  const DenseTensor k = kron_power(a, 2);
  ASSERT_EQ(k.shape(), (Shape{4, 9}));
  const std::vector<double> expected = {
      1,  2,  3,  2,  4,  6,  3,  6,  9,   //
      4,  5,  6,  8,  10, 12, 12, 15, 18,  //
      4,  8,  12, 5,  10, 15, 6,  12, 18,  //
      16, 20, 24, 20, 25, 30, 24, 30, 36};
  EXPECT_EQ(k.data(), expected);
  EXPECT_DOUBLE_EQ(frobenius_norm(k), 91.0);  // = frobenius_norm(a)^2
}

TEST(KronPower, FrozenOrder3Square) {
  DenseTensor t(Shape{2, 2, 2});
  std::iota(t.data().begin(), t.data().end(), 1.0);
  const DenseTensor k = kron_power(t, 2);
  ASSERT_EQ(k.shape(), (Shape{4, 4, 4}));
  const std::vector<double> slice0 = {1, 2,  2,  4,  3, 4,  6, 8,  //
                                      3, 6,  4,  8,  9, 12, 12, 16};
  EXPECT_EQ(slice(k, 0, 0).data(), slice0);
  EXPECT_DOUBLE_EQ(k.at({3, 2, 1}), 42.0);
  EXPECT_DOUBLE_EQ(frobenius_norm(k), 204.0);  // = frobenius_norm(t)^2
}

TEST(KronPower, PowerOneIsIdentityAndEntriesFactor) {
  const DenseTensor t = random_tensor({2, 3}, 29);
  EXPECT_EQ(kron_power(t, 1), t);
  const DenseTensor k3 = kron_power(t, 3);
  ASSERT_EQ(k3.shape(), (Shape{8, 27}));
  // Spot-check the defining factorization with the first factor most
  // significant: k3(a*4 + b*2 + c, d*9 + e*3 + f) = t(a,d) t(b,e) t(c,f).
  EXPECT_NEAR(k3.at({1 * 4 + 0 * 2 + 1, 2 * 9 + 0 * 3 + 1}),
              t.at({1, 2}) * t.at({0, 0}) * t.at({1, 1}), 1e-12);
  EXPECT_THROW((void)kron_power(t, 0), std::invalid_argument);
}

}  // namespace
}  // namespace tenx
