#include "qsuper/assoc.hpp"

#include <gtest/gtest.h>

#include <random>

using namespace qsuper;

namespace {

Matrix random_symmetric(std::size_t r, std::mt19937_64& rng, bool nondegenerate) {
  std::uniform_int_distribution<int> coef(-3, 3);
  for (;;) {
    Matrix f(r, r);
    for (std::size_t i = 0; i < r; ++i)
      for (std::size_t j = i; j < r; ++j) f(i, j) = f(j, i) = Scalar(coef(rng));
    if (!nondegenerate || rank(f) == r) return f;
  }
}

// Generator x_k as a vector of clifford(q).
Vec generator(const AssocSuper& a, std::size_t k) {
  for (std::size_t b = 0; b < a.dim(); ++b)
    if (a.labels()[b] == "x" + std::to_string(k + 1)) return unit_vec(a.dim(), b);
  throw std::logic_error("generator not found");
}

}  // namespace

TEST(MatrixAlgebras, ShapesAndLaws) {
  AssocSuper m11 = make_M(1, 1);
  EXPECT_EQ(m11.dim(), 4u);
  EXPECT_EQ(m11.space().even_dim, 2u);
  AssocSuper q1 = make_Q(1), q2 = make_Q(2);
  EXPECT_EQ(q1.dim(), 2u);
  EXPECT_EQ(q1.labels(), (std::vector<std::string>{"D1,1", "O1,1"}));
  EXPECT_EQ(q2.dim(), 8u);
  EXPECT_EQ(q2.space().even_dim, 4u);
  for (const AssocSuper* a : {&m11, &q1, &q2}) {
    EXPECT_EQ(a->associativity_failures(), 0u);
    EXPECT_TRUE(a->unit_law_holds());
    EXPECT_TRUE(a->respects_parity());
  }
  AssocSuper m21 = make_M(2, 1);
  EXPECT_EQ(m21.dim(), 9u);
  EXPECT_EQ(m21.space().even_dim, 5u);
  EXPECT_EQ(m21.associativity_failures(), 0u);
}

TEST(MatrixAlgebras, QueerElementsSupercommuteWithP) {
  for (std::size_t m : {1u, 2u, 3u}) {
    ModuleAction nat = natural_module_Q(m);
    Matrix p = queer_P(m);
    for (std::size_t k = 0; k < nat.action.size(); ++k) {
      Matrix t = nat.action[k].to_dense();
      Matrix rhs = nat.parities[k] ? Scalar(-1) * (p * t) : p * t;
      EXPECT_EQ(t * p, rhs);
    }
    EXPECT_EQ(nat.homomorphism_failures(make_Q(m)), 0u);
  }
  EXPECT_EQ(natural_module_M(2, 1).homomorphism_failures(make_M(2, 1)), 0u);
}

TEST(Clifford, DimensionsAndDefiningRelations) {
  TowerScope scope;
  std::mt19937_64 rng(3);
  for (std::size_t r = 0; r <= 4; ++r) {
    Matrix f = random_symmetric(r, rng, false);
    AssocSuper c = clifford(QuadraticPair(f));
    EXPECT_EQ(c.dim(), std::size_t{1} << r);
    EXPECT_EQ(c.associativity_failures(), 0u) << "r=" << r;
    EXPECT_TRUE(c.unit_law_holds());
    EXPECT_TRUE(c.respects_parity());
    for (std::size_t i = 0; i < r; ++i)
      for (std::size_t j = 0; j < r; ++j) {
        Vec xi = generator(c, i), xj = generator(c, j);
        Vec anti = c.mul(xi, xj);
        Vec back = c.mul(xj, xi);
        for (std::size_t k = 0; k < c.dim(); ++k) anti[k] += back[k];
        Vec expect = c.unit();
        for (auto& s : expect) s = s * Scalar(2) * f(i, j);
        EXPECT_EQ(anti, expect);
      }
  }
  EXPECT_EQ(clifford(QuadraticPair::identity(0)).dim(), 1u);
}

TEST(Clifford, StraighteningIsIdempotent) {
  std::mt19937_64 rng(9);
  Matrix f = random_symmetric(4, rng, false);
  CliffordStraightener st(f);
  std::uniform_int_distribution<int> gen(0, 3);
  for (int trial = 0; trial < 50; ++trial) {
    CliffordStraightener::Word w(6);
    for (auto& g : w) g = gen(rng);
    for (const auto& [mask, c] : st.straighten(w)) {
      const auto& again = st.straighten(CliffordStraightener::word_of(mask));
      ASSERT_EQ(again.size(), 1u);
      EXPECT_EQ(again.begin()->first, mask);
      EXPECT_TRUE(again.begin()->second.is_one());
    }
  }
}

TEST(Center, OddPart) {
  EXPECT_EQ(odd_center(make_M(1, 1)).dim(), 0u);
  EXPECT_EQ(odd_center(make_Q(1)).dim(), 1u);
  EXPECT_EQ(odd_center(make_Q(2)).dim(), 1u);
  EXPECT_EQ(odd_center(clifford(QuadraticPair::identity(1))).dim(), 1u);
  EXPECT_EQ(odd_center(clifford(QuadraticPair::identity(2))).dim(), 0u);
}

TEST(Classify, NormalForms) {
  EXPECT_EQ(classify_simple(make_M(2, 1)).str(), "M(2|1)");
  EXPECT_EQ(classify_simple(make_M(1, 2)).str(), "M(2|1)");
  EXPECT_EQ(classify_simple(make_Q(2)).str(), "Q(2)");
  EXPECT_EQ(classify_simple(clifford(QuadraticPair::identity(1))).str(), "Q(1)");
  EXPECT_EQ(classify_simple(clifford(QuadraticPair::identity(2))).str(), "M(1|1)");
  EXPECT_EQ(classify_simple(clifford(QuadraticPair::identity(3))).str(), "Q(2)");
  EXPECT_EQ(classify_simple(clifford(QuadraticPair(Matrix(1, 1)))).kind, SimpleType::NotSimple);
}

TEST(Classify, DirectSumWithInvertibleBasisIsNotSimple) {
  // C (+) C spanned by 1 and diag(-1, 1): every basis element is invertible, so
  // each generates the whole algebra as an ideal, yet the algebra splits.
  Matrix one = Matrix::identity(2), s(2, 2);
  s(0, 0) = Scalar(-1);
  s(1, 1) = Scalar(1);
  AssocSuper a = matrix_algebra({one, s}, GradedSpace(2, 0), {"1", "s"});
  EXPECT_EQ(ideal_dimension(a, unit_vec(2, 0)), 2u);
  EXPECT_EQ(ideal_dimension(a, unit_vec(2, 1)), 2u);
  EXPECT_EQ(classify_simple(a).kind, SimpleType::NotSimple);
}

TEST(Classify, NondegenerateCliffordTypeFollowsParityOfRank) {
  TowerScope scope;
  std::mt19937_64 rng(17);
  for (std::size_t r = 1; r <= 6; ++r) {
    AssocSuper c = clifford(QuadraticPair(random_symmetric(r, rng, true)));
    SimpleType t = classify_simple(c);
    ASSERT_NE(t.kind, SimpleType::NotSimple) << "r=" << r;
    EXPECT_EQ(t.kind == SimpleType::Q, r % 2 == 1) << "r=" << r;
    if (t.kind == SimpleType::Q) {
      EXPECT_EQ(2 * t.m * t.m, c.dim());
    }
    if (t.kind == SimpleType::M) {
      EXPECT_EQ((t.m + t.n) * (t.m + t.n), c.dim());
    }
  }
}

TEST(Classify, DegenerateCliffordIsNotSimple) {
  Matrix f(3, 3);
  f(0, 0) = Scalar(1);
  f(1, 2) = f(2, 1) = Scalar(1);
  f(2, 2) = Scalar(0);
  Matrix g = f;
  g(1, 2) = g(2, 1) = Scalar(0);
  EXPECT_NE(classify_simple(clifford(QuadraticPair(f))).kind, SimpleType::NotSimple);
  EXPECT_EQ(classify_simple(clifford(QuadraticPair(g))).kind, SimpleType::NotSimple);
}

TEST(Classify, TensorWithQ1IsMatrixType) {
  for (std::size_t m : {1u, 2u}) {
    AssocSuper t = tensor_algebras(make_Q(m), make_Q(1));
    EXPECT_EQ(t.associativity_failures(), 0u);
    EXPECT_TRUE(t.unit_law_holds());
    SimpleType s = classify_simple(t);
    EXPECT_EQ(s.kind, SimpleType::M);
    EXPECT_EQ(s.m, m);
    EXPECT_EQ(s.n, m);
  }
}

TEST(CliffordIrrep, SmallCases) {
  ModuleAction one = clifford_irrep(QuadraticPair::identity(1));
  EXPECT_EQ(one.carrier, GradedSpace(1, 1));
  Matrix x = one.action[1].to_dense();
  EXPECT_TRUE(x(0, 1).is_one());
  EXPECT_TRUE(x(1, 0).is_one());
  EXPECT_EQ(clifford_irrep(QuadraticPair::identity(2)).carrier.dim(), 2u);
  EXPECT_EQ(clifford_irrep(QuadraticPair::identity(4)).carrier.dim(), 4u);
  EXPECT_THROW(clifford_irrep(QuadraticPair(Matrix(2, 2))), std::domain_error);
}

TEST(CliffordIrrep, RandomFormsGiveIrreducibleModules) {
  TowerScope scope;
  std::mt19937_64 rng(23);
  for (std::size_t r = 1; r <= 6; ++r)
    for (int trial = 0; trial < 2; ++trial) {
      QuadraticPair q(random_symmetric(r, rng, true));
      AssocSuper c = clifford(q);
      ModuleAction m = clifford_irrep(q);
      EXPECT_EQ(m.carrier.dim(), std::size_t{1} << ((r + 1) / 2));
      EXPECT_EQ(m.homomorphism_failures(c), 0u) << "r=" << r;
      DensityType d = density_type(m);
      EXPECT_EQ(d.kind, r % 2 ? DensityType::QComm : DensityType::Full) << "r=" << r << " " << d.str();
    }
}

TEST(Density, Examples) {
  EXPECT_EQ(density_type(natural_module_M(1, 1)).kind, DensityType::Full);
  EXPECT_EQ(density_type(natural_module_Q(1)).kind, DensityType::QComm);
  EXPECT_EQ(density_type(natural_module_Q(2)).kind, DensityType::QComm);
  AssocSuper q1 = make_Q(1);
  ModuleAction nat = natural_module_Q(1);
  ModuleAction prod = tensor_modules(q1, nat, q1, nat);
  EXPECT_EQ(prod.homomorphism_failures(tensor_algebras(q1, q1)), 0u);
  DensityType d = density_type(prod);
  EXPECT_EQ(d.kind, DensityType::Smaller);
  EXPECT_EQ(d.closure_dim, 4u);
}

namespace {

// Closure by plain breadth-first search over full n × n matrices.
std::size_t naive_closure(const std::vector<SparseMatrix>& ops, std::size_t n) {
  RowEchelon span(n * n);
  std::vector<Matrix> queue{Matrix::identity(n)};
  auto flat = [&](const Matrix& m) {
    Vec v(n * n);
    for (std::size_t r = 0; r < n; ++r)
      for (std::size_t c = 0; c < n; ++c) v[r * n + c] = m(r, c);
    return v;
  };
  span.add(flat(queue[0]));
  while (!queue.empty()) {
    Matrix m = queue.back();
    queue.pop_back();
    for (const auto& g : ops) {
      Matrix p = g.to_dense() * m;
      if (span.add(flat(p))) queue.push_back(p);
    }
  }
  return span.rank();
}

}  // namespace

TEST(Density, BlockedClosureMatchesNaive) {
  std::mt19937_64 rng(31);
  std::uniform_int_distribution<int> coef(-2, 2);
  for (int trial = 0; trial < 12; ++trial) {
    std::size_t n = 3 + trial % 4;
    std::vector<SparseMatrix> ops;
    // a diagonal generator with repeated eigenvalues, then sparse random ones
    Matrix d(n, n);
    for (std::size_t k = 0; k < n; ++k) d(k, k) = Scalar(static_cast<std::int64_t>(k % 2 + trial % 3));
    ops.push_back(SparseMatrix::from_dense(d));
    for (int g = 0; g < 1 + trial % 2; ++g) {
      Matrix m(n, n);
      for (std::size_t r = 0; r < n; ++r)
        for (std::size_t c = 0; c < n; ++c)
          if (rng() % 3 == 0) m(r, c) = Scalar(coef(rng));
      ops.push_back(SparseMatrix::from_dense(m));
    }
    EXPECT_EQ(span_closure_dimension(ops, n), naive_closure(ops, n)) << trial;
  }
}
