#include "qsuper/graded.hpp"

#include <gtest/gtest.h>

#include <random>

using namespace qsuper;

namespace {

Matrix random_homogeneous(std::mt19937_64& rng, const GradedSpace& src, const GradedSpace& tgt, int parity,
                          int density = 2) {
  std::uniform_int_distribution<int> d(-3, 3), keep(0, density);
  Matrix m(tgt.dim(), src.dim());
  for (std::size_t r = 0; r < tgt.dim(); ++r)
    for (std::size_t c = 0; c < src.dim(); ++c)
      if ((tgt.parity(r) ^ src.parity(c)) == parity && keep(rng) != 0) m(r, c) = Scalar(d(rng));
  return m;
}

Matrix mat(std::initializer_list<std::initializer_list<int>> rows) {
  Matrix m(rows.size(), rows.begin()->size());
  std::size_t r = 0;
  for (auto& row : rows) {
    std::size_t c = 0;
    for (int v : row) m(r, c++) = Scalar(v);
    ++r;
  }
  return m;
}

}  // namespace

TEST(Kernel, IdentityHasZeroKernel) {
  GradedSpace v(1, 1);
  EXPECT_EQ(kernel(GradedMap(Matrix::identity(2), v)).dim(), 0u);
}

TEST(Kernel, ZeroMapHasFullKernel) {
  GradedSpace v(2, 1);
  auto k = kernel(GradedMap(Matrix(3, 3), v));
  EXPECT_EQ(k.dim(), 3u);
  EXPECT_EQ(k.space.even_dim, 2u);
  EXPECT_EQ(k.space.odd_dim, 1u);
}

TEST(Kernel, OddNilpotentKillsEvenVector) {
  GradedSpace v(1, 1);
  GradedMap f(mat({{0, 1}, {0, 0}}), v);
  EXPECT_EQ(f.parity, 1);
  auto k = kernel(f);
  ASSERT_EQ(k.dim(), 1u);
  EXPECT_EQ(k.space.even_dim, 1u);
  EXPECT_EQ(k.basis[0], unit_vec(2, 0));
}

TEST(Kernel, RankNullityOnRandomGradedMaps) {
  std::mt19937_64 rng(11);
  std::uniform_int_distribution<int> dim(0, 4), par(0, 1);
  for (int trial = 0; trial < 100; ++trial) {
    GradedSpace src(dim(rng), dim(rng)), tgt(dim(rng), dim(rng));
    int p = par(rng);
    GradedMap f(random_homogeneous(rng, src, tgt, p), src, tgt);
    auto k = kernel(f);
    EXPECT_EQ(k.dim() + rank(f.matrix), src.dim());
    for (const auto& v : k.basis) EXPECT_TRUE(is_zero_vec(f.matrix * v));
  }
}

TEST(GradedTensor, IdentityTimesIdentity) {
  GradedSpace v(1, 1), w(2, 1);
  auto t = graded_tensor(GradedMap(Matrix::identity(2), v), GradedMap(Matrix::identity(3), w));
  EXPECT_EQ(t.matrix, Matrix::identity(6));
  EXPECT_EQ(t.parity, 0);
}

TEST(GradedTensor, TwoOddMapsSquareWithSign) {
  GradedSpace v(1, 1);
  GradedMap f(mat({{0, 2}, {1, 0}}), v), g(mat({{0, 1}, {3, 0}}), v);
  auto fg = graded_tensor(f, g);
  auto f2g2 = graded_tensor(GradedMap(f.matrix * f.matrix, v), GradedMap(g.matrix * g.matrix, v));
  EXPECT_EQ(fg.matrix * fg.matrix, -f2g2.matrix);
}

TEST(GradedTensor, SignDependsOnlyOnRightMapAndLeftVector) {
  GradedSpace v(1, 1);
  GradedMap f(mat({{1, 0}, {0, 2}}), v), g_even(mat({{3, 0}, {0, 1}}), v), g_odd(mat({{0, 1}, {1, 0}}), v);
  TensorBasis tb(v, v);
  auto fe = graded_tensor(f, g_even);
  auto fo = graded_tensor(f, g_odd);
  for (std::size_t r = 0; r < 4; ++r)
    for (std::size_t c = 0; c < 4; ++c) {
      auto [a, b] = tb.pairs[r];
      auto [i, j] = tb.pairs[c];
      EXPECT_EQ(fe.matrix(r, c), f.matrix(a, i) * g_even.matrix(b, j));
      Scalar s(v.parity(i) ? -1 : 1);
      EXPECT_EQ(fo.matrix(r, c), s * f.matrix(a, i) * g_odd.matrix(b, j));
    }
}

TEST(GradedTensor, SignCoherenceOnRandomMaps) {
  std::mt19937_64 rng(5);
  std::uniform_int_distribution<int> par(0, 1);
  GradedSpace v(2, 1), w(1, 2);
  for (int trial = 0; trial < 30; ++trial) {
    int pf = par(rng), pg = par(rng), pf2 = par(rng), pg2 = par(rng);
    GradedMap f(random_homogeneous(rng, v, v, pf, 1), v), g(random_homogeneous(rng, w, w, pg, 1), w);
    GradedMap f2(random_homogeneous(rng, v, v, pf2, 1), v), g2(random_homogeneous(rng, w, w, pg2, 1), w);
    f.parity = pf;
    g.parity = pg;
    f2.parity = pf2;
    g2.parity = pg2;
    Matrix lhs = graded_tensor(f, g).matrix * graded_tensor(f2, g2).matrix;
    GradedMap ff(f.matrix * f2.matrix, v), gg(g.matrix * g2.matrix, w);
    ff.parity = (pf + pf2) & 1;
    gg.parity = (pg + pg2) & 1;
    Matrix rhs = Scalar(sign_of(pg * pf2)) * graded_tensor(ff, gg).matrix;
    EXPECT_EQ(lhs, rhs);
  }
}

TEST(GradedTensor, RejectsInhomogeneous) {
  GradedSpace v(1, 1);
  GradedMap f(mat({{1, 1}, {0, 1}}), v);
  EXPECT_EQ(f.parity, kInhomogeneous);
  EXPECT_THROW(graded_tensor(f, f), std::invalid_argument);
}

TEST(Commutant, FullMatrixAlgebraHasScalarCommutant) {
  GradedSpace v(1, 1);
  std::vector<GradedMap> ops;
  for (std::size_t r = 0; r < 2; ++r)
    for (std::size_t c = 0; c < 2; ++c) {
      Matrix e(2, 2);
      e(r, c) = Scalar(1);
      ops.emplace_back(e, v);
    }
  auto even = commutant(ops, v, 0);
  ASSERT_EQ(even.size(), 1u);
  EXPECT_EQ(even[0], Matrix::identity(2));
  EXPECT_TRUE(commutant(ops, v, 1).empty());
}

TEST(Commutant, QueerOneHasOddCommutantSpannedByP) {
  GradedSpace v(1, 1);
  Matrix p = mat({{0, 1}, {-1, 0}});
  std::vector<GradedMap> ops = {GradedMap(Matrix::identity(2), v), GradedMap(mat({{0, 1}, {1, 0}}), v)};
  auto odd = commutant(ops, v, 1);
  ASSERT_EQ(odd.size(), 1u);
  // proportional to P
  Scalar f = odd[0](0, 1);
  EXPECT_EQ(odd[0], f * p);
  // and it supercommutes: residual exactly zero
  for (const auto& x : ops) EXPECT_TRUE((odd[0] * x.matrix - Scalar(sign_of(x.parity)) * x.matrix * odd[0]).is_zero());
}

TEST(Commutant, EmptyOperatorListGivesEverything) {
  GradedSpace v(2, 1);
  EXPECT_EQ(commutant(std::vector<GradedMap>{}, v, 0).size(), 5u);
  EXPECT_EQ(commutant(std::vector<GradedMap>{}, v, 1).size(), 4u);
}
