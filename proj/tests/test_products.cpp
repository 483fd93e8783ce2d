#include "qsuper/products.hpp"

#include <gtest/gtest.h>

#include <random>

using namespace qsuper;

namespace {

Polynomial poly(std::initializer_list<Scalar> c) { return Polynomial{std::vector<Scalar>(c)}; }
CoeffAlgebra t2_minus_1() { return preset_truncated(poly({-1, 0, 1}), {Scalar(1), Scalar(-1)}); }
CoeffAlgebra t4_minus_1() {
  return preset_truncated(poly({-1, 0, 0, 0, 1}), {Scalar(1), Scalar(-1), Scalar::i(), -Scalar::i()});
}

// span{c | x} with [x, x] = 2c: its irreducible module C^{1|1} is the Clifford module of type Q.
LieSuper clifford_line() {
  LieSuper g(GradedSpace(1, 1), {"c", "x"});
  g.set_bracket(1, 1, SparseRow{{0, Scalar(2)}});
  return g;
}

SparseMatrix sparse(const Matrix& m) { return SparseMatrix::from_dense(m); }

// C^{1|1} with c acting by `lambda` and x by [[0, 1], [lambda, 0]].
LieModule clifford_line_module(const Scalar& lambda) {
  Matrix x(2, 2);
  x(0, 1) = Scalar(1);
  x(1, 0) = lambda;
  return LieModule{GradedSpace(1, 1), {sparse(lambda * Matrix::identity(2)), sparse(x)}, {0, 1}, {}};
}

// g¹ ⊕ g² module from modules of the two summands.
std::pair<SchurModule, SchurModule> on_sum(const LieSum& s, const LieSuper& g1, const LieSuper& g2, const LieModule& v1,
                                           const LieModule& v2) {
  auto p1 = g1.space().parities(), p2 = g2.space().parities();
  LieModule a = to_sum_basis(extend_to_sum(v1, g1.dim(), g2.dim(), true, p1, p2), s);
  LieModule b = to_sum_basis(extend_to_sum(v2, g1.dim(), g2.dim(), false, p1, p2), s);
  return {with_schur(a), with_schur(b)};
}

bool irreducible(const LieModule& m) { return density_type(m.action, m.parities, m.carrier).irreducible(); }

}  // namespace

TEST(Schur, Types) {
  QueerAlgebra q(2);
  SchurModule triv = trivial_schur_module(q.lie(), 2);
  EXPECT_FALSE(triv.schur.type_q());
  EXPECT_EQ(with_schur(triv.module).schur.type(), "M");
  EXPECT_EQ(with_schur(adjoint_module(q.lie())).schur.type(), "M");

  SchurModule c = with_schur(clifford_line_module(Scalar(3)));
  ASSERT_TRUE(c.schur.type_q());
  EXPECT_EQ(*c.schur.phi * *c.schur.phi, Scalar(-1) * Matrix::identity(2));
  EXPECT_EQ(c.schur.c.is_zero(), false);
  EXPECT_EQ(hom_space(c.module, c.module, 1).size(), 1u);
}

TEST(Schur, RejectsReducible) {
  LieSuper g = clifford_line();
  LieModule zero{GradedSpace(1, 1), {SparseMatrix(2, 2), SparseMatrix(2, 2)}, {0, 1}, {}};
  EXPECT_THROW(schur_data(zero), std::invalid_argument);
  QueerAlgebra q1(1);
  EXPECT_THROW(schur_data(adjoint_module(q1.lie())), std::invalid_argument);
}

TEST(HatProduct, TwoCliffordModulesSplit) {
  LieSuper g = clifford_line();
  LieSum s = lie_direct_sum(g, g);
  auto [a, b] = on_sum(s, g, g, clifford_line_module(Scalar(1)), clifford_line_module(Scalar(2)));
  EXPECT_EQ(a.module.representation_failures(s.lie), 0u);
  HatProduct h = hat_tensor(a, b);
  EXPECT_TRUE(h.split);
  EXPECT_EQ(h.full_dim, 4u);
  EXPECT_EQ(h.result.dim(), 2u);
  EXPECT_EQ(h.minus_dim, 2u);
  EXPECT_EQ(h.involution * h.involution, Matrix::identity(4));
  EXPECT_FALSE(irreducible(h.full));
  EXPECT_TRUE(irreducible(h.result.module));
  EXPECT_EQ(h.result.module.representation_failures(s.lie), 0u);
  IsoResult iso = is_isomorphic(hat_eigenspace(h, 1), hat_eigenspace(h, -1));
  EXPECT_TRUE(iso.isomorphic);
  EXPECT_EQ(density_type(h.result.module.action, h.result.module.parities, h.result.module.carrier).kind,
            DensityType::Full);
  EXPECT_FALSE(h.result.schur.type_q());
}

TEST(HatProduct, MixedTypesKeepTheFullTensor) {
  LieSuper g = clifford_line();
  QueerAlgebra q(1);
  LieSum s = lie_direct_sum(g, q.lie());
  LieModule v2 = catalog_entry(q, "hw:2").rep.module;
  v2.weights.clear();
  auto [a, b] = on_sum(s, g, q.lie(), clifford_line_module(Scalar(5)), v2);
  HatProduct h = hat_tensor(a, b);
  EXPECT_FALSE(h.split);
  EXPECT_EQ(h.result.dim(), 6u);
  EXPECT_TRUE(irreducible(h.result.module));
  ASSERT_TRUE(h.result.schur.type_q());
  // the carried φ is an odd endomorphism squaring to −1
  EXPECT_EQ(*h.result.schur.phi * *h.result.schur.phi, Scalar(-1) * Matrix::identity(6));
  EXPECT_EQ(with_schur(h.result.module).schur.type(), "Q");
}

TEST(HatProduct, TrivialFactorIsAUnit) {
  QueerAlgebra q(2);
  SchurModule adj = with_schur(adjoint_module(q.lie()));
  SchurModule triv = trivial_schur_module(q.lie(), 2);
  EXPECT_TRUE(is_isomorphic(hat_tensor(triv, adj).result.module, adj.module).isomorphic);
  EXPECT_TRUE(is_isomorphic(hat_tensor(adj, triv).result.module, adj.module).isomorphic);
}

TEST(HatProduct, AssociativeUpToIsomorphism) {
  LieSuper g = clifford_line();
  LieSum s12 = lie_direct_sum(g, g);
  LieSum s = lie_direct_sum(s12.lie, g);
  std::vector<LieModule> base{clifford_line_module(Scalar(1)), clifford_line_module(Scalar(2)),
                              clifford_line_module(Scalar(3))};
  auto p = g.space().parities(), p12 = s12.lie.space().parities();
  auto lift = [&](std::size_t which) {
    LieModule m = base[which];
    if (which < 2)
      m = to_sum_basis(extend_to_sum(m, g.dim(), g.dim(), which == 0, p, p), s12);
    m = to_sum_basis(extend_to_sum(m, s12.lie.dim(), g.dim(), which < 2, p12, p), s);
    return with_schur(m);
  };
  SchurModule v1 = lift(0), v2 = lift(1), v3 = lift(2);
  SchurModule left = hat_tensor(hat_tensor(v1, v2).result, v3).result;
  SchurModule right = hat_tensor(v1, hat_tensor(v2, v3).result).result;
  EXPECT_EQ(left.dim(), 4u);
  EXPECT_EQ(left.module.representation_failures(s.lie), 0u);
  EXPECT_TRUE(irreducible(left.module));
  EXPECT_TRUE(is_isomorphic(left.module, right.module).isomorphic);
  EXPECT_EQ(left.schur.type(), "Q");
  EXPECT_EQ(with_schur(left.module).schur.type(), "Q");
}

namespace {

Matrix sigma(const QueerAlgebra& q) {
  Matrix d = Matrix::identity(q.n() + 1);
  d(q.n(), q.n()) = Scalar(-1);
  return q.conjugation(d);
}

GammaAction z2(const CoeffAlgebra& a, Matrix on_q) {
  return GammaAction{{2}, {scaling_automorphism(a, Scalar(-1))}, {std::move(on_q)}};
}

}  // namespace

TEST(Evaluation, DistinctPointsGiveDistinctModules) {
  QueerAlgebra q(2);
  MapSuper m = tensor_lie(q.lie(), t2_minus_1());
  Catalog cat = make_catalog(q, {"trivial", "adjoint"});
  SchurModule at1 = ev_hat(m, cat, {1, 0}), at2 = ev_hat(m, cat, {0, 1});
  EXPECT_EQ(at1.module.representation_failures(m.lie), 0u);
  EXPECT_EQ(at1.dim(), 16u);
  EXPECT_FALSE(is_isomorphic(at1.module, at2.module).isomorphic);
  // the kernel of evaluation at t = 1 acts by zero on the first
  for (const auto& f : max_ideal(m.a, 0).basis)
    for (std::size_t x = 0; x < q.dim(); ++x) EXPECT_TRUE(at1.module.act(m.pure(x, f)).is_zero());
}

TEST(Evaluation, TopWeightIsAdditive) {
  QueerAlgebra q(2);
  CoeffAlgebra a = t2_minus_1();
  MapSuper m = tensor_lie(q.lie(), a);
  HwContext c = hw_context(q, a);
  Catalog cat = make_catalog(q, {"trivial", "adjoint"});
  SchurModule both = ev_hat(m, cat, {1, 1});
  EXPECT_EQ(both.dim(), 256u);
  HwCheck h = hw_irreducibility(c, both.module);
  EXPECT_TRUE(h.irreducible());
  Vec lambda{Scalar(1), Scalar(1)};
  EXPECT_EQ(h.psi, psi_sum(psi_at_point(c.cartan, lambda, 0), psi_at_point(c.cartan, lambda, 1)));
}

TEST(Evaluation, SeededFunctionalsOnTheJetFactorThroughThePoint) {
  // êv at the unique point of k[t]/t² kills the nilradical, so it sees only λ
  QueerAlgebra q(1);
  CoeffAlgebra a = preset_jet(2);
  MapSuper m = tensor_lie(q.lie(), a);
  HwContext c = hw_context(q, a);
  std::mt19937_64 rng(3);
  std::uniform_int_distribution<int> pick(1, 3);
  for (int trial = 0; trial < 3; ++trial) {
    int k = pick(rng);
    Catalog cat = make_catalog(q, {"trivial", "hw:" + std::to_string(k)});
    SchurModule v = ev_hat(m, cat, {1});
    EXPECT_EQ(v.dim(), static_cast<std::size_t>(k + 1));
    HwCheck h = hw_irreducibility(c, v.module);
    EXPECT_TRUE(h.irreducible());
    EXPECT_EQ(h.psi, psi_at_point(c.cartan, Vec{Scalar(k)}, 0));
  }
}

TEST(Evaluation, EquivarianceAndOrbitRepresentatives) {
  QueerAlgebra q(2);
  CoeffAlgebra a = t4_minus_1();
  MapSuper m = tensor_lie(q.lie(), a);
  GammaAction act = z2(a, sigma(q));
  Catalog cat = make_catalog(q, {"trivial", "adjoint"});
  EXPECT_EQ(orbit_representatives(a, act), (std::vector<std::size_t>{0, 2}));
  EXPECT_TRUE(is_equivariant(m, act, cat, {1, 1, 0, 0}));
  EXPECT_FALSE(is_equivariant(m, act, cat, {1, 0, 0, 0}));
  InvariantSub inv = invariants(m, act);
  EXPECT_THROW(ev_hat_gamma(m, inv, act, cat, {1, 0, 0, 0}), std::invalid_argument);
  SchurModule v = ev_hat_gamma(m, inv, act, cat, {1, 1, 0, 0});
  EXPECT_EQ(v.dim(), 16u);
  EXPECT_EQ(v.module.representation_failures(inv.lie), 0u);
  EXPECT_TRUE(weight_irreducibility(inv.lie, v.module).irreducible());
  EXPECT_TRUE(density_type(v.module.action, v.module.parities, v.module.carrier).irreducible());
}

TEST(Classify, UntwistedTwoPoints) {
  QueerAlgebra q(2);
  MapSuper m = tensor_lie(q.lie(), t2_minus_1());
  GammaAction act = trivial_gamma(m.a, m.q);
  Classification cl = classify_enumerate(m, act, make_catalog(q, {"trivial", "adjoint"}));
  ASSERT_EQ(cl.rows.size(), 4u);
  std::vector<std::size_t> dims;
  for (const auto& r : cl.rows) dims.push_back(r.dim);
  EXPECT_EQ(dims, (std::vector<std::size_t>{1, 16, 16, 256}));
  EXPECT_TRUE(cl.all_irreducible());
  EXPECT_TRUE(cl.pairwise_distinct());
  for (const auto& r : cl.rows) {
    if (r.density) {
      EXPECT_EQ(*r.density, r.irreducible);
    }
  }
  EXPECT_EQ(cl.skipped, 0u);
}

TEST(Classify, TwistedByZ2) {
  QueerAlgebra q(2);
  CoeffAlgebra a = t4_minus_1();
  MapSuper m = tensor_lie(q.lie(), a);
  Classification cl = classify_enumerate(m, z2(a, sigma(q)), make_catalog(q, {"trivial", "adjoint"}));
  EXPECT_EQ(cl.representatives.size(), 2u);
  ASSERT_EQ(cl.rows.size(), 4u);
  EXPECT_EQ(cl.rows[3].psi, (PsiMap{1, 1, 1, 1}));
  EXPECT_EQ(cl.rows[3].dim, 256u);
  EXPECT_TRUE(cl.all_irreducible());
  EXPECT_TRUE(cl.pairwise_distinct());
}

TEST(Classify, TrivialCatalogGivesOnlyTheTrivialModule) {
  QueerAlgebra q(2);
  MapSuper m = tensor_lie(q.lie(), t2_minus_1());
  Classification cl = classify_enumerate(m, trivial_gamma(m.a, m.q), make_catalog(q, {"trivial"}));
  ASSERT_EQ(cl.rows.size(), 1u);
  EXPECT_EQ(cl.rows[0].dim, 1u);
  EXPECT_THROW(make_catalog(q, {"adjoint"}), std::invalid_argument);
  EXPECT_THROW(make_catalog(q, {"trivial", "nonsense"}), std::invalid_argument);
}

TEST(Classify, RefusesNonFreeActions) {
  QueerAlgebra q(2);
  MapSuper m = tensor_lie(q.lie(), preset_truncated(poly({0, -1, 0, 1}), {Scalar(0), Scalar(1), Scalar(-1)}));
  GammaAction act = z2(m.a, sigma(q));
  try {
    classify_enumerate(m, act, make_catalog(q, {"trivial", "adjoint"}));
    ADD_FAILURE() << "expected refusal";
  } catch (const std::invalid_argument& e) {
    EXPECT_NE(std::string(e.what()).find("freeness violated at"), std::string::npos);
  }
}

TEST(Evaluation, MovingTheSupportTwistsTheModule) {
  QueerAlgebra q(1);
  CoeffAlgebra a = t4_minus_1();
  MapSuper m = tensor_lie(q.lie(), a);
  GammaAction act = z2(a, sigma(q));
  Catalog cat = make_catalog(q, {"trivial", "hw:1", "hw:2"});
  for (const PsiMap& psi : {PsiMap{1, 1, 0, 0}, PsiMap{0, 0, 2, 2}, PsiMap{1, 1, 2, 2}, PsiMap{2, 0, 0, 1}})
    EXPECT_EQ(moved_support_failures(m, act, cat, psi), 0u);
}
