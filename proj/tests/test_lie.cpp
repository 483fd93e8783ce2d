#include "qsuper/lie.hpp"

#include <gtest/gtest.h>

#include <random>

using namespace qsuper;

namespace {

std::vector<Vec> all_basis(std::size_t n) {
  std::vector<Vec> out;
  for (std::size_t k = 0; k < n; ++k) out.push_back(unit_vec(n, k));
  return out;
}

// sl2 (+) sl2 presented in the mixed basis x_k + y_k, x_k - y_k.
LieSuper mixed_sl2_pair() {
  LieSuper gl = from_assoc(make_M(2, 0));  // E11, E12, E21, E22
  std::vector<Vec> sl = {{1, 0, 0, -1}, {0, 1, 0, 0}, {0, 0, 1, 0}};
  LieSuper s = restrict_to(gl, sl);
  LieSuper sum(GradedSpace(6, 0), {"x1", "x2", "x3", "y1", "y2", "y3"});
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j) {
      SparseRow r = s.bracket(i, j), shifted;
      for (const auto& [k, c] : r) shifted.emplace_back(k + 3, c);
      sum.set_bracket(i, j, r);
      sum.set_bracket(i + 3, j + 3, shifted);
    }
  std::vector<Vec> mixed;
  for (std::size_t k = 0; k < 3; ++k) {
    Vec p(6), m(6);
    p[k] = m[k] = Scalar(1);
    p[k + 3] = Scalar(1);
    m[k + 3] = Scalar(-1);
    mixed.push_back(p);
    mixed.push_back(m);
  }
  return restrict_to(sum, mixed);
}

}  // namespace

TEST(FromAssoc, GeneralLinearAndQueer) {
  LieSuper gl11 = from_assoc(make_M(1, 1));
  EXPECT_EQ(gl11.dim(), 4u);
  EXPECT_EQ(gl11.jacobi_failures(), 0u);
  EXPECT_EQ(gl11.skew_failures(), 0u);
  EXPECT_TRUE(gl11.respects_grading());
  LieSuper c = from_assoc(make_M(1, 0));
  EXPECT_EQ(c.dim(), 1u);
  EXPECT_TRUE(c.is_abelian());
  LieSuper qhat = from_assoc(make_Q(2));
  EXPECT_EQ(qhat.dim(), 8u);
  EXPECT_EQ(qhat.jacobi_failures(), 0u);
}

TEST(FromAssoc, BracketMatchesMatrixSupercommutator) {
  std::mt19937_64 rng(50);
  std::uniform_int_distribution<int> coef(-4, 4);
  LieSuper g = from_assoc(make_M(2, 1));
  ModuleAction nat = natural_module_M(2, 1);
  for (int trial = 0; trial < 50; ++trial) {
    // homogeneous random elements
    int px = trial % 2, py = (trial / 2) % 2;
    Vec x(g.dim()), y(g.dim());
    for (std::size_t k = 0; k < g.dim(); ++k) {
      if (g.parity(k) == px) x[k] = Scalar(coef(rng));
      if (g.parity(k) == py) y[k] = Scalar(coef(rng));
    }
    Matrix mx(3, 3), my(3, 3);
    for (std::size_t k = 0; k < g.dim(); ++k) {
      mx = mx + x[k] * nat.action[k].to_dense();
      my = my + y[k] * nat.action[k].to_dense();
    }
    Matrix expect = (px && py) ? mx * my + my * mx : mx * my - my * mx;
    Vec z = g.bracket(x, y);
    Matrix got(3, 3);
    for (std::size_t k = 0; k < g.dim(); ++k) got = got + z[k] * nat.action[k].to_dense();
    EXPECT_EQ(got, expect);
  }
}

TEST(DerivedSeries, Solvability) {
  LieSuper ab(GradedSpace(3, 0), {"a", "b", "c"});
  EXPECT_TRUE(is_solvable(ab));
  LieSuper gl = from_assoc(make_M(2, 0));
  EXPECT_FALSE(is_solvable(gl));
  // upper triangular 2x2 matrices are solvable
  LieSuper b = restrict_to(gl, {unit_vec(4, 0), unit_vec(4, 1), unit_vec(4, 3)});
  EXPECT_TRUE(is_solvable(b));
}

TEST(Ideals, ClosureIsIdempotentAndMonotone) {
  LieSuper g = from_assoc(make_M(2, 1));
  std::mt19937_64 rng(8);
  std::uniform_int_distribution<std::size_t> pick(0, g.dim() - 1);
  for (int trial = 0; trial < 10; ++trial) {
    Vec s = unit_vec(g.dim(), pick(rng)), t = unit_vec(g.dim(), pick(rng));
    auto i1 = ideal_closure(g, {s});
    EXPECT_EQ(ideal_closure(g, i1).size(), i1.size());
    auto i2 = ideal_closure(g, {s, t});
    RowEchelon big(g.dim());
    for (const auto& v : i2) big.add(v);
    for (const auto& v : i1) EXPECT_TRUE(big.contains(v));
  }
  LieSuper ab(GradedSpace(2, 1), {"a", "b", "c"});
  EXPECT_EQ(ideal_closure(ab, {unit_vec(3, 1)}).size(), 1u);
}

TEST(Simplicity, CenterAndDirectSums) {
  // q~(1): (A, B) with tr B = 0 inside the Lie superalgebra of Q(2); centre C*I.
  LieSuper qhat = from_assoc(make_Q(2));  // D11 D12 D21 D22 O11 O12 O21 O22
  std::vector<Vec> basis = all_basis(8);
  basis.resize(4);
  basis.push_back(Vec{0, 0, 0, 0, 1, 0, 0, -1});
  basis.push_back(unit_vec(8, 5));
  basis.push_back(unit_vec(8, 6));
  LieSuper qt = restrict_to(qhat, basis);
  EXPECT_EQ(qt.dim(), 7u);
  EXPECT_EQ(qt.jacobi_failures(), 0u);
  EXPECT_FALSE(is_simple(qt));

  LieSuper pair = mixed_sl2_pair();
  EXPECT_EQ(pair.jacobi_failures(), 0u);
  for (std::size_t b = 0; b < pair.dim(); ++b) EXPECT_EQ(ideal_closure(pair, {unit_vec(6, b)}).size(), 6u);
  EXPECT_FALSE(is_simple(pair));

  LieSuper sl2 = restrict_to(from_assoc(make_M(2, 0)), {Vec{1, 0, 0, -1}, unit_vec(4, 1), unit_vec(4, 2)});
  EXPECT_TRUE(is_simple(sl2));
  EXPECT_FALSE(is_simple(LieSuper(GradedSpace(1, 0), {"a"})));
}

TEST(Modules, AdjointAndAssociativeRestriction) {
  LieSuper g = from_assoc(make_M(2, 1));
  EXPECT_EQ(adjoint_module(g).representation_failures(g), 0u);
  EXPECT_EQ(from_assoc_module(natural_module_M(2, 1)).representation_failures(g), 0u);
  LieSuper q = from_assoc(make_Q(2));
  EXPECT_EQ(from_assoc_module(natural_module_Q(2)).representation_failures(q), 0u);
}

TEST(SolvableModules, HypothesisReporting) {
  LieSuper ab(GradedSpace(2, 0), {"a", "b"});
  LieModule one{GradedSpace(1, 0), {SparseMatrix(1, 1), SparseMatrix(1, 1)}, {0, 0}, {}};
  auto r = check_solvable_module_dim(ab, one);
  EXPECT_TRUE(r.hypothesis);
  EXPECT_TRUE(r.solvable);
  EXPECT_TRUE(r.one_dimensional);
  EXPECT_TRUE(r.consistent());

  // Q(1) as a Lie superalgebra: [O, O] = 2D is not inside [g0, g0] = 0.
  LieSuper q1 = from_assoc(make_Q(1));
  auto nat = from_assoc_module(natural_module_Q(1));
  auto s = check_solvable_module_dim(q1, nat);
  EXPECT_FALSE(s.hypothesis);
  EXPECT_TRUE(s.solvable);
  EXPECT_FALSE(s.one_dimensional);
  EXPECT_TRUE(s.consistent());
}
