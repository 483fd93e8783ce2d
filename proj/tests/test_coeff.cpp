#include "qsuper/coeff.hpp"
#include "qsuper/queer.hpp"

#include <gtest/gtest.h>

#include <random>

using namespace qsuper;

namespace {

Polynomial poly(std::initializer_list<Scalar> c) { return Polynomial{std::vector<Scalar>(c)}; }

CoeffAlgebra t2_minus_1() { return preset_truncated(poly({-1, 0, 1}), {Scalar(1), Scalar(-1)}); }
CoeffAlgebra t4_minus_1() {
  return preset_truncated(poly({-1, 0, 0, 0, 1}), {Scalar(1), Scalar(-1), Scalar::i(), -Scalar::i()});
}

// Element of C[t]/(f) from coefficients in the monomial basis.
Vec elem(std::size_t d, std::initializer_list<Scalar> c) {
  Vec v(d);
  std::size_t k = 0;
  for (const auto& x : c) v[k++] = x;
  return v;
}

}  // namespace

TEST(Presets, Shapes) {
  CoeffAlgebra a = t2_minus_1();
  EXPECT_EQ(a.dim(), 2u);
  EXPECT_EQ(a.maxspec().size(), 2u);
  EXPECT_EQ(a.maxspec()[0].label, "(t-1)");
  EXPECT_EQ(a.maxspec()[1].label, "(t+1)");
  EXPECT_EQ(a.tag(), "C[t]/(t^2-1)");
  CoeffAlgebra j = preset_jet(2);
  EXPECT_EQ(j.dim(), 2u);
  EXPECT_EQ(j.maxspec().size(), 1u);
  EXPECT_EQ(j.maxspec()[0].label, "(t)");
  CoeffAlgebra f = t4_minus_1();
  EXPECT_EQ(f.dim(), 4u);
  EXPECT_EQ(f.maxspec().size(), 4u);
  EXPECT_EQ(f.maxspec()[2].label, "(t-i)");
  EXPECT_EQ(f.maxspec()[3].label, "(t+i)");
  for (const CoeffAlgebra* x : {&a, &j, &f}) {
    EXPECT_TRUE(x->is_commutative());
    EXPECT_EQ(x->associativity_failures(), 0u);
    EXPECT_TRUE(x->unit_law_holds());
    EXPECT_TRUE(x->maxspec_valid());
    EXPECT_TRUE(maxspec_complete(*x));
  }
  EXPECT_EQ(preset_point().dim(), 1u);
}

TEST(Presets, RejectsBadRoots) {
  EXPECT_THROW(preset_truncated(poly({-1, 0, 1}), {Scalar(1)}), std::invalid_argument);
  EXPECT_THROW(preset_truncated(poly({-1, 0, 1}), {Scalar(1), Scalar(2)}), std::invalid_argument);
  EXPECT_THROW(preset_truncated(poly({-2, 0, 2}), {Scalar(1), Scalar(-1)}), std::invalid_argument);
}

TEST(Presets, MultiplicationMatchesPolynomialArithmetic) {
  // (1 + 2t + t^2)(3 - t) mod t^3 - t
  CoeffAlgebra a = preset_truncated(poly({0, -1, 0, 1}), {Scalar(0), Scalar(1), Scalar(-1)});
  Vec x = elem(3, {1, 2, 1}), y = elem(3, {3, -1, 0});
  // full product: 3 + 5t + t^2 - t^3 ; t^3 = t
  EXPECT_EQ(a.mul(x, y), elem(3, {3, 4, 1}));
}

TEST(Ideals, RadicalOfJet) {
  CoeffAlgebra a = preset_jet(2);
  IdealRep r = radical(a, zero_ideal());
  EXPECT_TRUE(ideal_equal(a, r, ideal_generated(a, {elem(2, {0, 1})})));
}

TEST(Ideals, DisjointSupportsProductEqualsIntersection) {
  CoeffAlgebra a = t2_minus_1();
  IdealRep i = max_ideal(a, 0), j = max_ideal(a, 1);
  IdealRep p = ideal_product(a, i, j), x = ideal_intersection(a, i, j);
  EXPECT_EQ(p.dim(), 0u);
  EXPECT_TRUE(ideal_equal(a, p, x));
  EXPECT_EQ(support(a, i), (std::vector<std::size_t>{0}));
  EXPECT_EQ(support(a, j), (std::vector<std::size_t>{1}));
}

TEST(Ideals, SplitAlgebraIdealsAreRadical) {
  CoeffAlgebra a = t4_minus_1();
  // (t - 1)^2 (t + 1) generates the same ideal as (t - 1)(t + 1) here
  Vec t1 = elem(4, {-1, 1}), tp = elem(4, {1, 1});
  IdealRep i = ideal_generated(a, {a.mul(a.mul(t1, t1), tp)});
  EXPECT_TRUE(ideal_equal(a, radical(a, i), i));
  EXPECT_EQ(i.dim(), 2u);
  EXPECT_EQ(support(a, i), (std::vector<std::size_t>{0, 1}));
}

TEST(Ideals, RadicalProperties) {
  // C[t]/(t^3 (t-1)^2): random ideals generated by products of (t)^a (t-1)^b and noise
  Polynomial f = poly({0, 0, 0, 1, -2, 1});
  CoeffAlgebra a = preset_truncated(f, {Scalar(0), Scalar(1)});
  EXPECT_TRUE(maxspec_complete(a));
  std::mt19937_64 rng(21);
  std::uniform_int_distribution<int> coef(-2, 2);
  for (int trial = 0; trial < 20; ++trial) {
    Vec g(5);
    for (auto& x : g) x = Scalar(coef(rng));
    IdealRep i = ideal_generated(a, {g});
    ASSERT_TRUE(is_ideal(a, i));
    IdealRep r = radical(a, i);
    EXPECT_TRUE(is_ideal(a, r));
    EXPECT_TRUE(ideal_subset(a, i, r));
    EXPECT_TRUE(ideal_equal(a, radical(a, r), r));
    EXPECT_LE(radical_nilpotency(a, i), a.dim());
    // the radical is the intersection of the maximal ideals in the support
    IdealRep meet = whole_algebra(a);
    for (auto m : support(a, i)) meet = ideal_intersection(a, meet, max_ideal(a, m));
    EXPECT_TRUE(ideal_equal(a, meet, r));
  }
}

TEST(Crt, Idempotents) {
  CoeffAlgebra a = t2_minus_1();
  CrtSplit s = crt_split(a, zero_ideal());
  ASSERT_EQ(s.idempotents.size(), 2u);
  EXPECT_EQ(s.idempotents[0], elem(2, {Scalar(1, 2), Scalar(1, 2)}));
  EXPECT_EQ(s.idempotents[1], elem(2, {Scalar(1, 2), Scalar(-1, 2)}));

  CrtSplit j = crt_split(preset_jet(2), zero_ideal());
  EXPECT_EQ(j.idempotents.size(), 1u);
  EXPECT_EQ(j.local_dims, (std::vector<std::size_t>{2}));

  CoeffAlgebra f = t4_minus_1();
  CrtSplit four = crt_split(f, zero_ideal());
  ASSERT_EQ(four.idempotents.size(), 4u);
  Vec sum(4);
  for (std::size_t p = 0; p < 4; ++p) {
    const Vec& e = four.idempotents[p];
    for (std::size_t k = 0; k < 4; ++k) sum[k] += e[k];
    for (std::size_t q = 0; q < 4; ++q) {
      EXPECT_EQ(f.evaluate(f.maxspec()[q], e), Scalar(p == q ? 1 : 0));
      if (p != q) {
        EXPECT_TRUE(is_zero_vec(f.mul(e, four.idempotents[q])));
      }
    }
  }
  EXPECT_EQ(sum, f.unit());
}

TEST(Crt, QuotientPieces) {
  Polynomial f = poly({0, 0, 0, 1, -2, 1});
  CoeffAlgebra a = preset_truncated(f, {Scalar(0), Scalar(1)});
  // I = (t^2 (t-1))
  Vec t = elem(5, {0, 1}), t1 = elem(5, {-1, 1});
  IdealRep i = ideal_generated(a, {a.mul(a.mul(t, t), t1)});
  CrtSplit s = crt_split(a, i);
  EXPECT_EQ(s.local_dims, (std::vector<std::size_t>{2, 1}));
  EXPECT_EQ(s.quotient.algebra.dim(), 3u);
}

TEST(Gamma, ValidateExamples) {
  QueerAlgebra q(2);
  CoeffAlgebra a = t2_minus_1();
  GammaAction swap{{2}, {scaling_automorphism(a, Scalar(-1))}, {Matrix::identity(q.dim())}};
  GammaReport r = gamma_validate(swap, a, q.lie());
  EXPECT_TRUE(r.valid());
  EXPECT_TRUE(r.free);
  ASSERT_EQ(r.orbits.size(), 1u);
  EXPECT_EQ(r.orbits[0], (std::vector<std::size_t>{0, 1}));

  CoeffAlgebra j = preset_jet(2);
  GammaAction neg{{2}, {scaling_automorphism(j, Scalar(-1))}, {Matrix::identity(q.dim())}};
  GammaReport rj = gamma_validate(neg, j, q.lie());
  EXPECT_TRUE(rj.valid());
  EXPECT_FALSE(rj.free);
  EXPECT_EQ(rj.fixed_point, "(t)");

  Matrix d = Matrix::identity(3);
  d(2, 2) = Scalar(-1);
  Matrix sigma = q.conjugation(d);
  EXPECT_TRUE(is_lie_automorphism(q.lie(), sigma));
  EXPECT_EQ(sigma * sigma, Matrix::identity(q.dim()));
  EXPECT_NE(sigma, Matrix::identity(q.dim()));
  GammaAction both{{2}, {scaling_automorphism(a, Scalar(-1))}, {sigma}};
  EXPECT_TRUE(gamma_validate(both, a, q.lie()).valid());
}

TEST(Gamma, FailuresAreReportedSeparately) {
  QueerAlgebra q(2);
  CoeffAlgebra a = t2_minus_1();
  // wrong order
  GammaAction bad_order{{3}, {scaling_automorphism(a, Scalar(-1))}, {Matrix::identity(q.dim())}};
  GammaReport r = gamma_validate(bad_order, a, q.lie());
  EXPECT_FALSE(r.relations);
  EXPECT_TRUE(r.algebra_automorphisms);
  // t -> 2t is not an automorphism of C[t]/(t^2 - 1)
  GammaAction bad_auto{{1}, {scaling_automorphism(a, Scalar(2))}, {Matrix::identity(q.dim())}};
  EXPECT_FALSE(gamma_validate(bad_auto, a, q.lie()).algebra_automorphisms);
  // odd-part sign flip breaks [odd, odd] brackets
  Matrix flip = Matrix::identity(q.dim());
  for (std::size_t k = q.dim() / 2; k < q.dim(); ++k) flip(k, k) = Scalar(-1);
  EXPECT_TRUE(is_lie_automorphism(q.lie(), flip));
  Matrix scale = Matrix::identity(q.dim());
  scale(0, 0) = Scalar(2);
  GammaAction bad_lie{{1}, {Matrix::identity(2)}, {scale}};
  EXPECT_FALSE(gamma_validate(bad_lie, a, q.lie()).lie_automorphisms);
}

TEST(Gamma, InvariantIdealsAndIdempotents) {
  CoeffAlgebra f = t4_minus_1();
  QueerAlgebra q(2);
  GammaAction g{{2}, {scaling_automorphism(f, Scalar(-1))}, {Matrix::identity(q.dim())}};
  GammaReport r = gamma_validate(g, f, q.lie());
  EXPECT_TRUE(r.valid());
  EXPECT_TRUE(r.free);
  EXPECT_EQ(r.orbits.size(), 2u);
  // (t^2 - 1) is invariant, (t - 1) is not
  EXPECT_TRUE(is_invariant(g, f, ideal_generated(f, {elem(4, {-1, 0, 1})})));
  EXPECT_FALSE(is_invariant(g, f, max_ideal(f, 0)));
  // invariant ideal: the split idempotents are permuted by the action
  CrtSplit s = crt_split(f, zero_ideal());
  Matrix gm = g.on_algebra[0];
  for (const auto& e : s.idempotents) {
    Vec ge = gm * e;
    bool found = false;
    for (const auto& e2 : s.idempotents) found = found || e2 == ge;
    EXPECT_TRUE(found);
  }
}
