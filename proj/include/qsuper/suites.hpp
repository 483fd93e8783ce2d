#pragma once

// Verification suites behind `qsuper verify` and the acceptance binary.  Each
// criterion is a list of named exact checks; details never contain timings, so
// reports are byte-identical across runs with the same seed.

#include "qsuper/products.hpp"

#include <random>

namespace qsuper {

struct Check {
  std::string name;
  bool pass = false;
  std::string detail;
};

struct CriterionReport {
  int id = 0;
  std::string title;
  std::vector<Check> checks;

  bool pass() const {
    return std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.pass; });
  }
  std::size_t failures() const {
    return static_cast<std::size_t>(std::count_if(checks.begin(), checks.end(), [](const Check& c) { return !c.pass; }));
  }
  void expect(std::string name, bool ok, std::string detail = "") {
    checks.push_back({std::move(name), ok, std::move(detail)});
  }
  // Runs `body`, turning an exception into a failed check of that name.
  template <class F>
  void guard(const std::string& name, F&& body) {
    try {
      body();
    } catch (const std::exception& e) {
      expect(name, false, std::string("exception: ") + e.what());
    }
  }
};

namespace detail {

inline Matrix random_symmetric(std::size_t r, std::mt19937_64& rng, bool nondegenerate) {
  std::uniform_int_distribution<int> coef(-3, 3);
  for (;;) {
    Matrix f(r, r);
    for (std::size_t i = 0; i < r; ++i)
      for (std::size_t j = i; j < r; ++j) f(i, j) = f(j, i) = Scalar(coef(rng));
    if (!nondegenerate || rank(f) == r) return f;
  }
}

// A symmetric form of rank < r: a random form with its last row and column
// replaced by a combination of the others.
inline Matrix random_degenerate(std::size_t r, std::mt19937_64& rng) {
  Matrix f = random_symmetric(r, rng, false);
  std::uniform_int_distribution<int> coef(-2, 2);
  std::vector<Scalar> c(r - 1);
  for (auto& x : c) x = Scalar(coef(rng));
  for (std::size_t j = 0; j < r; ++j) {
    Scalar s;
    for (std::size_t i = 0; i + 1 < r; ++i) s += c[i] * f(i, j);
    f(r - 1, j) = s;
  }
  for (std::size_t i = 0; i + 1 < r; ++i) f(i, r - 1) = f(r - 1, i);
  Scalar s;
  for (std::size_t i = 0; i + 1 < r; ++i) s += c[i] * f(i, r - 1);
  f(r - 1, r - 1) = s;
  return f;
}

inline std::string num(std::size_t x) { return std::to_string(x); }

inline CoeffAlgebra two_points() {
  return preset_truncated(Polynomial{{Scalar(-1), Scalar(0), Scalar(1)}}, {Scalar(1), Scalar(-1)});
}

inline CoeffAlgebra four_points() {
  return preset_truncated(Polynomial{{Scalar(-1), Scalar(0), Scalar(0), Scalar(0), Scalar(1)}},
                          {Scalar(1), Scalar(-1), Scalar::i(), -Scalar::i()});
}

// Conjugation by diag(1, …, 1, −1) on q(n).
inline Matrix last_sign_flip(const QueerAlgebra& q) {
  Matrix d = Matrix::identity(q.n() + 1);
  d(q.n(), q.n()) = Scalar(-1);
  return q.conjugation(d);
}

// ℤ/2 acting by t ↦ −t on A and by the sign flip on q(n).
inline GammaAction sign_flip_group(const CoeffAlgebra& a, const QueerAlgebra& q) {
  return GammaAction{{2}, {scaling_automorphism(a, Scalar(-1))}, {last_sign_flip(q)}};
}

}  // namespace detail

// ---------------------------------------------------------------------------
// 1. Two copies of the queer line

inline CriterionReport check_queer_line_square() {
  CriterionReport r{1, "Q(1) ⊗ Q(1) and the split of C^{1|1} ⊗ C^{1|1}", {}};
  r.guard("queer line square", [&] {
    AssocSuper q1 = make_Q(1);
    SimpleType t = classify_simple(tensor_algebras(q1, q1));
    r.expect("Q(1) ⊗ Q(1) is M(1|1)", t == SimpleType{SimpleType::M, 1, 1}, t.str());

    ModuleAction nat = natural_module_Q(1);
    DensityType assoc_closure = density_type(tensor_modules(q1, nat, q1, nat));
    r.expect("C^{1|1} ⊗ C^{1|1} is reducible over Q(1) ⊗ Q(1)", assoc_closure.kind == DensityType::Smaller,
             assoc_closure.str());

    LieSuper g = from_assoc(q1);
    LieModule v = from_assoc_module(nat);
    SchurData s = schur_data(v);
    r.expect("C^{1|1} has an odd endomorphism with φ² = −1",
             s.type_q() && *s.phi * *s.phi == Scalar(-1) * Matrix::identity(2));

    LieSum sum = lie_direct_sum(g, g);
    auto par = g.space().parities();
    SchurModule a = with_schur(to_sum_basis(extend_to_sum(v, g.dim(), g.dim(), true, par, par), sum));
    SchurModule b = with_schur(to_sum_basis(extend_to_sum(v, g.dim(), g.dim(), false, par, par), sum));
    HatProduct h = hat_tensor(a, b);
    r.expect("the product splits", h.split && h.full_dim == 4);
    r.expect("(φ̃₁ ⊗ φ₂)² = 1", h.involution * h.involution == Matrix::identity(4));
    r.expect("dim V̂ = 2", h.result.dim() == 2, detail::num(h.result.dim()));
    r.expect("both eigenspaces have dimension 2", h.minus_dim == 2, detail::num(h.minus_dim));
    r.expect("V̂ is a representation", h.result.module.representation_failures(sum.lie) == 0);
    LieModule plus = hat_eigenspace(h, 1), minus = hat_eigenspace(h, -1);
    IsoResult iso = is_isomorphic(plus, minus);
    r.expect("the two summands are isomorphic",
             iso.isomorphic && intertwiner_failures(plus, minus, iso.witness, iso.parity) == 0);
    DensityType d = density_type(h.result.module.action, h.result.module.parities, h.result.module.carrier);
    r.expect("V̂ is irreducible of type M", d.kind == DensityType::Full, d.str());
    DensityType full = density_type(h.full.action, h.full.parities, h.full.carrier);
    r.expect("the full tensor product is reducible", full.kind == DensityType::Smaller, full.str());
  });
  return r;
}

// ---------------------------------------------------------------------------
// 2. Structure of q(n)

inline CriterionReport check_queer_structure() {
  CriterionReport r{2, "q(n) structure for n = 2, 3", {}};
  const std::size_t dims[] = {16, 30}, roots[] = {3, 6};
  for (std::size_t n : {2u, 3u}) {
    std::string tag = "n=" + detail::num(n) + ": ";
    r.guard(tag + "structure", [&] {
      QueerAlgebra q(n);
      const LieSuper& g = q.lie();
      r.expect(tag + "dimension", g.dim() == dims[n - 2], detail::num(g.dim()));
      r.expect(tag + "skew symmetry", g.skew_failures() == 0);
      r.expect(tag + "Jacobi identity", g.jacobi_failures() == 0);
      r.expect(tag + "positive roots", q.positive_roots().size() == roots[n - 2], detail::num(q.positive_roots().size()));
      CartanGenerationReport c = cartan_generation_check(q);
      r.expect(tag + "odd Cartan part generates the even one", c.ok(),
               detail::num(c.odd_square_rank) + "/" + detail::num(c.even_cartan_dim));
      r.expect(tag + "simple", is_simple(g));
    });
  }
  return r;
}

// ---------------------------------------------------------------------------
// 3. Clifford superalgebras

inline CriterionReport check_clifford(std::uint64_t seed) {
  CriterionReport r{3, "Clifford superalgebras of ranks 1..6", {}};
  std::mt19937_64 rng(seed * 1000 + 3);
  for (std::size_t rank_r = 1; rank_r <= 6; ++rank_r)
    for (int trial = 0; trial < 5; ++trial) {
      std::string tag = "r=" + detail::num(rank_r) + " #" + std::to_string(trial) + ": ";
      Matrix f = detail::random_symmetric(rank_r, rng, true);
      r.guard(tag + "form", [&] {
        TowerScope scope;
        QuadraticPair qp(f);
        AssocSuper c = clifford(qp);
        r.expect(tag + "dim C = 2^r", c.dim() == (std::size_t{1} << rank_r));
        ModuleAction m = clifford_irrep(qp);
        r.expect(tag + "irreducible module of dim 2^⌈r/2⌉", m.carrier.dim() == (std::size_t{1} << ((rank_r + 1) / 2)),
                 detail::num(m.carrier.dim()));
        r.expect(tag + "module is a homomorphism", m.homomorphism_failures(c) == 0);
        SimpleType t = classify_simple(c);
        r.expect(tag + "type Q iff r odd", t.kind != SimpleType::NotSimple && (t.kind == SimpleType::Q) == (rank_r % 2 == 1),
                 t.str());
        DensityType d = density_type(m);
        r.expect(tag + "density oracle", d.kind == (rank_r % 2 ? DensityType::QComm : DensityType::Full), d.str());
      });
    }
  for (std::size_t rank_r = 1; rank_r <= 6; ++rank_r) {
    std::string tag = "degenerate r=" + detail::num(rank_r) + ": ";
    Matrix f = rank_r == 1 ? Matrix(1, 1) : detail::random_degenerate(rank_r, rng);
    r.guard(tag + "form", [&] {
      TowerScope scope;
      SimpleType t = classify_simple(clifford(QuadraticPair(f)));
      r.expect(tag + "not simple", t.kind == SimpleType::NotSimple, t.str());
    });
  }
  return r;
}

// ---------------------------------------------------------------------------
// 4. Cartan modules H(ψ)

inline CriterionReport check_cartan_modules(std::uint64_t seed) {
  CriterionReport r{4, "H(ψ) over C, C[t]/(t²), C[t]/(t²−1)", {}};
  QueerAlgebra q(2);
  std::mt19937_64 rng(seed * 1000 + 4);
  std::uniform_int_distribution<int> coef(-3, 3);
  const std::pair<std::string, CoeffAlgebra> algebras[] = {
      {"C", preset_point()}, {"C[t]/(t^2)", preset_jet(2)}, {"C[t]/(t^2-1)", detail::two_points()}};
  for (const auto& [aname, a] : algebras) {
    CartanContext c = cartan_context(q, a);
    std::vector<Psi> seen;
    std::vector<LieModule> built;
    for (int trial = 0; trial < 20; ++trial) {
      Psi psi(c.half());
      for (auto& x : psi) x = Scalar(coef(rng));
      std::string tag = aname + " #" + std::to_string(trial) + ": ";
      r.guard(tag + "H(ψ)", [&] {
        CartanModule h = build_H(c, psi);
        const LieModule& m = h.module;
        std::size_t want = std::size_t{1} << ((h.data.r + 1) / 2);
        r.expect(tag + "representation", m.representation_failures(c.lie()) == 0);
        r.expect(tag + "dim = 2^⌈r/2⌉", m.dim() == want, detail::num(m.dim()) + " r=" + detail::num(h.data.r));
        r.expect(tag + "irreducible by density", density_type(m.action, m.parities, m.carrier).irreducible());
        bool scalars = true;
        for (std::size_t k = 0; k < c.half(); ++k)
          scalars = scalars && m.action[k] == psi[k] * SparseMatrix::identity(m.dim());
        r.expect(tag + "even part acts by ψ", scalars);
        LieModule again = build_H(c, psi, true).module;
        IsoResult iso = is_isomorphic(m, again);
        r.expect(tag + "rebuilt with other pivots is isomorphic",
                 iso.isomorphic && intertwiner_failures(m, again, iso.witness, iso.parity) == 0);
        r.expect(tag + "ψ is recovered", classify_cartan_module(c, m).psi == psi);
        bool separated = true;
        for (std::size_t j = 0; j < built.size(); ++j) {
          bool iso_j = built[j].dim() == m.dim() && is_isomorphic(built[j], m).isomorphic;
          if (iso_j != (seen[j] == psi)) separated = false;
        }
        r.expect(tag + "isomorphic to an earlier module iff ψ agrees", separated);

        // the ideal killed by h̄₀ ⊗ I also kills h̄₁ ⊗ I, and it is exactly I_ψ
        IdealRep ipsi = i_psi(c, psi);
        bool odd_killed = true;
        for (const auto& f : ipsi.basis)
          for (std::size_t i = 0; i < c.n; ++i) odd_killed = odd_killed && m.act(c.map.pure(c.n + i, f)).is_zero();
        r.expect(tag + "h̄₁ ⊗ I_ψ acts by zero", odd_killed);
        AnnSupport ann = ann_and_support(c.map, m);
        r.expect(tag + "annihilator is I_ψ", is_ideal(a, ann.ann) && ideal_equal(a, ann.ann, ipsi),
                 "codim " + detail::num(a.dim() - ann.ann.dim()));
        LieModule ind = induced_cartan_module(c, psi, ipsi);
        r.expect(tag + "H(ψ) fits inside the module induced over 𝔥 ⊗ A/I_ψ",
                 ind.representation_failures(c.lie()) == 0 && m.dim() <= ind.dim());
        seen.push_back(psi);
        built.push_back(m);
      });
    }
  }
  return r;
}

// ---------------------------------------------------------------------------
// 5. Highest-weight modules

namespace detail {

// PBW monomial counts per β from Π_{even} 1/(1 − x^β) · Π_{odd} (1 + x^β) over
// the positive roots ε_i − ε_j of q(n), dim A copies of each in each parity.
inline std::map<Coord, std::size_t> pbw_series(std::size_t n, std::size_t adim, std::int64_t depth) {
  std::map<Coord, std::size_t> series{{Coord(n), 1}};
  for (std::size_t i = 0; i <= n; ++i)
    for (std::size_t j = i + 1; j <= n; ++j) {
      Coord beta(n);
      for (std::size_t k = i; k < j; ++k) beta[k] = 1;
      for (std::size_t copy = 0; copy < adim; ++copy)
        for (int odd : {0, 1}) {
          std::map<Coord, std::size_t> next;
          for (const auto& [c, v] : series)
            for (std::int64_t p = 0; p <= (odd ? 1 : depth); ++p) {
              Coord d = c;
              for (std::size_t k = 0; k < n; ++k) d[k] += p * beta[k];
              if (coord_height(d) > depth) break;
              next[d] += v;
            }
          series = std::move(next);
        }
    }
  return series;
}

inline LieModule module_sum(const LieModule& a, const LieModule& b) {
  std::size_t e = a.carrier.even_dim + b.carrier.even_dim, n = a.dim() + b.dim();
  std::vector<std::size_t> pa(a.dim()), pb(b.dim());
  std::size_t next = 0;
  for (std::size_t k = 0; k < a.carrier.even_dim; ++k) pa[k] = next++;
  for (std::size_t k = 0; k < b.carrier.even_dim; ++k) pb[k] = next++;
  for (std::size_t k = a.carrier.even_dim; k < a.dim(); ++k) pa[k] = next++;
  for (std::size_t k = b.carrier.even_dim; k < b.dim(); ++k) pb[k] = next++;
  LieModule out{GradedSpace(e, n - e), {}, a.parities, std::vector<Vec>(n)};
  for (std::size_t k = 0; k < a.dim(); ++k) out.weights[pa[k]] = a.weights[k];
  for (std::size_t k = 0; k < b.dim(); ++k) out.weights[pb[k]] = b.weights[k];
  for (std::size_t g = 0; g < a.action.size(); ++g) {
    SparseMatrix m(n, n);
    for (std::size_t r = 0; r < a.dim(); ++r)
      for (const auto& [col, v] : a.action[g].row(r)) m.push(pa[r], pa[col], v);
    for (std::size_t r = 0; r < b.dim(); ++r)
      for (const auto& [col, v] : b.action[g].row(r)) m.push(pb[r], pb[col], v);
    m.normalize();
    out.action.push_back(std::move(m));
  }
  return out;
}

}  // namespace detail

/// Ten finite-dimensional V(ψ) with the truncation depth that closes them up.
struct CorpusEntry {
  std::string name;
  HwContext ctx;
  Psi psi;
  std::size_t dim;
  std::size_t depth;
};

inline std::vector<CorpusEntry> finite_corpus() {
  std::vector<CorpusEntry> out;
  QueerAlgebra q1(1), q2(2);
  HwContext p1 = hw_context(q1, preset_point()), p2 = hw_context(q2, preset_point());
  for (int k = 0; k <= 3; ++k)
    out.push_back({"q(1) λ=" + std::to_string(k), p1, psi_at_point(p1.cartan, {Scalar(k)}, 0), std::size_t(k) + 1,
                   std::size_t(k) + 2});
  const Vec adjoint{Scalar(1), Scalar(1)};
  std::vector<std::pair<Vec, std::size_t>> q2_cases{
      {{Scalar(0), Scalar(0)}, 1}, {adjoint, 16}, {{Scalar(1), Scalar(2)}, 48}, {{Scalar(2), Scalar(1)}, 48}};
  for (const auto& [lam, d] : q2_cases)
    out.push_back({"q(2) λ=" + lam[0].str() + "," + lam[1].str(), p2, psi_at_point(p2.cartan, lam, 0), d, 8});
  HwContext jet = hw_context(q2, preset_jet(2));
  out.push_back({"q(2) ⊗ C[t]/(t^2) adjoint", jet, psi_at_point(jet.cartan, adjoint, 0), 16, 6});
  HwContext two = hw_context(q2, detail::two_points());
  out.push_back({"q(2) ⊗ C[t]/(t^2-1) adjoint at t=1", two, psi_at_point(two.cartan, adjoint, 0), 16, 6});
  return out;
}

inline CriterionReport check_highest_weight(std::uint64_t seed) {
  CriterionReport r{5, "Verma truncations, simple quotients, irreducibility", {}};
  QueerAlgebra q(2);
  std::mt19937_64 rng(seed * 1000 + 5);
  std::uniform_int_distribution<int> coef(-3, 3);
  for (const auto& [aname, a] : {std::pair<std::string, CoeffAlgebra>{"C", preset_point()},
                                 std::pair<std::string, CoeffAlgebra>{"C[t]/(t^2)", preset_jet(2)}}) {
    HwContext c = hw_context(q, a);
    for (std::size_t depth = 0; depth <= 4; ++depth) {
      std::string tag = aname + " depth " + detail::num(depth) + ": ";
      Psi psi(c.cartan.half());
      for (auto& x : psi) x = Scalar(coef(rng));
      r.guard(tag + "PBW law", [&] {
        WeightModule v = verma(c, psi, depth);
        std::size_t dh = build_H(c.cartan, psi).module.dim();
        auto series = detail::pbw_series(q.n(), a.dim(), static_cast<std::int64_t>(depth));
        bool ok = v.blocks().size() == series.size();
        for (const auto& [beta, count] : series) ok = ok && v.weight_dim(beta) == count * dh;
        r.expect(tag + "PBW dimension law", ok, "dim " + detail::num(v.dim()));
      });
    }
  }
  r.guard("adjoint", [&] {
    HwContext c = hw_context(q, preset_point());
    WeightModule v = simple_quotient(c, psi_at_point(c.cartan, {Scalar(1), Scalar(1)}, 0));
    r.expect("adjoint functional gives a 16-dimensional quotient", v.finite && v.dim() == 16, detail::num(v.dim()));
    LieModule adj = adjoint_module(q.lie());
    IsoResult iso = is_isomorphic(v.module, adj);
    r.expect("quotient is the adjoint representation",
             iso.isomorphic && intertwiner_failures(v.module, adj, iso.witness, iso.parity) == 0);
  });
  for (const auto& e : finite_corpus()) {
    r.guard(e.name + ": corpus", [&] {
      WeightModule v = simple_quotient(e.ctx, e.psi, e.depth);
      r.expect(e.name + ": finite of dim " + detail::num(e.dim), v.finite && v.dim() == e.dim, detail::num(v.dim()));
      LieModule triv{GradedSpace(1, 0), std::vector<SparseMatrix>(e.ctx.lie().dim(), SparseMatrix(1, 1)),
                     e.ctx.lie().space().parities(), {Vec(e.ctx.n())}};
      std::vector<std::pair<std::string, LieModule>> cases{{"V", v.module},
                                                           {"V ⊕ V", detail::module_sum(v.module, v.module)},
                                                           {"V ⊕ trivial", detail::module_sum(v.module, triv)}};
      for (const auto& [label, m] : cases) {
        if (m.dim() > 64) continue;
        bool hw = is_irreducible_hw(e.ctx, m);
        bool dense = density_type(m.action, m.parities, m.carrier).irreducible();
        r.expect(e.name + ": " + label + " highest-weight test agrees with density", hw == dense && hw == (label == "V"),
                 std::string(hw ? "irreducible" : "reducible"));
      }
    });
  }
  return r;
}

// ---------------------------------------------------------------------------
// 6. Finite-dimensionality conditions for V(ψ)

inline CriterionReport check_finite_conditions() {
  CriterionReport r{6, "equivalent finiteness conditions on ten V(ψ)", {}};
  for (const auto& e : finite_corpus()) {
    r.guard(e.name + ": conditions", [&] {
      const HwContext& c = e.ctx;
      const CoeffAlgebra& a = c.map.a;
      WeightModule v = simple_quotient(c, e.psi, e.depth);
      bool quasifinite = v.finite;
      AnnSupport ann = ann_and_support(c.map, v.module);
      IdealRep ipsi = i_psi(c.cartan, e.psi);
      IdealCheck kill = check_psi0_ideal(c, v, ann.ann);
      r.expect(e.name + ": quasifinite", quasifinite);
      r.expect(e.name + ": a finite-codimensional ideal annihilates", kill.ideal_acts_by_zero,
               "codim " + detail::num(a.dim() - ann.ann.dim()));
      r.expect(e.name + ": ψ vanishes on h̄₀ ⊗ Ann", kill.psi_vanishes);
      r.expect(e.name + ": Ann = I_ψ", ideal_equal(a, ann.ann, ipsi));
      std::string pts;
      for (auto p : ann.support) pts += (pts.empty() ? "" : ",") + a.maxspec()[p].label;
      r.expect(e.name + ": finite support, equal to that of I_ψ", ann.support == support(a, ipsi), "{" + pts + "}");
      std::vector<IdealRep> family{zero_ideal(), whole_algebra(a), ipsi};
      for (std::size_t p = 0; p < a.maxspec().size(); ++p) family.push_back(max_ideal(a, p));
      std::size_t disagree = 0, forward = 0, backward = 0;
      for (const auto& ideal : family) {
        IdealCheck chk = check_psi0_ideal(c, v, ideal);
        if (!chk.agree()) ++disagree;
        if (chk.psi_vanishes) ++forward;
        if (chk.ideal_acts_by_zero) ++backward;
      }
      r.expect(e.name + ": ψ(h̄₀ ⊗ I) = 0 iff (q ⊗ I) V(ψ) = 0 over " + detail::num(family.size()) + " ideals",
               disagree == 0, detail::num(forward) + " vanish, " + detail::num(backward) + " annihilate");
    });
  }
  return r;
}

// ---------------------------------------------------------------------------
// 7. Irreducible products and evaluation modules

namespace detail {

// (u ⊗ v) ⊗ w ↦ u ⊗ (v ⊗ w) between the bases of the two bracketings; no
// Koszul sign appears in reassociation.
inline Matrix associator(const GradedSpace& u, const GradedSpace& v, const GradedSpace& w) {
  TensorBasis uv(u, v), vw(v, w);
  TensorBasis left(uv.space, w), right(u, vw.space);
  std::size_t n = u.dim() * v.dim() * w.dim();
  Matrix p(n, n);
  for (std::size_t i = 0; i < u.dim(); ++i)
    for (std::size_t j = 0; j < v.dim(); ++j)
      for (std::size_t k = 0; k < w.dim(); ++k)
        p(right.at(i, vw.at(j, k, w.dim()), vw.space.dim()), left.at(uv.at(i, j, v.dim()), k, w.dim())) = Scalar(1);
  return p;
}

struct PresetCase {
  std::string name;
  CoeffAlgebra a;
  bool twisted;
};

inline std::vector<PresetCase> preset_cases() {
  return {{"C[t]/(t^2-1)", two_points(), false}, {"C[t]/(t^4-1) with Z/2", four_points(), true}};
}

inline std::string psi_str(const Catalog& cat, const PsiMap& psi, const CoeffAlgebra& a) {
  std::string out;
  for (std::size_t p = 0; p < psi.size(); ++p)
    if (psi[p] != 0) out += (out.empty() ? "" : " ") + a.maxspec()[p].label + "↦" + cat[psi[p]].name;
  return out.empty() ? "0" : out;
}

}  // namespace detail

inline CriterionReport check_products() {
  CriterionReport r{7, "irreducible products and evaluation modules", {}};
  QueerAlgebra q(2);
  Catalog cat = make_catalog(q, {"trivial", "adjoint"});
  r.expect("adjoint of q(2) has Schur type M", cat[1].rep.schur.type() == "M", cat[1].rep.schur.type());
  r.guard("three Clifford lines", [&] {
    // three type-Q factors: both bracketings split once and agree
    LieSuper g = from_assoc(make_Q(1));
    LieModule v = from_assoc_module(natural_module_Q(1));
    LieSum s12 = lie_direct_sum(g, g), s = lie_direct_sum(s12.lie, g);
    auto p = g.space().parities(), p12 = s12.lie.space().parities();
    auto lift = [&](std::size_t which) {
      LieModule x = v;
      if (which < 2) x = to_sum_basis(extend_to_sum(x, g.dim(), g.dim(), which == 0, p, p), s12);
      return with_schur(to_sum_basis(extend_to_sum(x, s12.lie.dim(), g.dim(), which < 2, p12, p), s));
    };
    SchurModule v1 = lift(0), v2 = lift(1), v3 = lift(2);
    SchurModule left = hat_tensor(hat_tensor(v1, v2).result, v3).result;
    SchurModule right = hat_tensor(v1, hat_tensor(v2, v3).result).result;
    IsoResult iso = is_isomorphic(left.module, right.module);
    r.expect("three Clifford lines: both bracketings are isomorphic of dim 4",
             left.dim() == 4 && iso.isomorphic &&
                 intertwiner_failures(left.module, right.module, iso.witness, iso.parity) == 0);
  });
  for (const auto& pc : detail::preset_cases()) {
    const std::string tag = pc.name + ": ";
    r.guard(tag + "products", [&] {
      MapSuper m = tensor_lie(q.lie(), pc.a);
      HwContext c = hw_context(q, pc.a);
      GammaAction act = pc.twisted ? detail::sign_flip_group(pc.a, q) : trivial_gamma(pc.a, q.lie());
      InvariantSub inv = invariants(m, act);
      std::size_t npts = pc.a.maxspec().size();
      const Vec lambda{Scalar(1), Scalar(1)};

      // tensor products over disjoint supports: irreducible, or V̂ ⊕ V̂
      for (std::size_t p1 = 0; p1 < npts; ++p1)
        for (std::size_t p2 = p1 + 1; p2 < npts; ++p2) {
          std::string pair = pc.a.maxspec()[p1].label + "," + pc.a.maxspec()[p2].label;
          HatProduct h = hat_tensor(ev_module(m, p1, cat[1].rep), ev_module(m, p2, cat[1].rep));
          HwCheck chk = hw_irreducibility(c, h.full);
          bool dichotomy = h.split ? (h.minus_dim == h.result.dim() && h.result.dim() * 2 == h.full_dim)
                                   : chk.irreducible();
          r.expect(tag + "product at " + pair + " is irreducible or splits in two equal halves", dichotomy,
                   h.split ? "split" : "irreducible of dim " + detail::num(h.full_dim));
          // the top weight space carries the sum of the two functionals
          Psi want = psi_sum(psi_at_point(c.cartan, lambda, p1), psi_at_point(c.cartan, lambda, p2));
          HwCheck top = hw_irreducibility(c, h.result.module);
          r.expect(tag + "top functional at " + pair + " is the sum", top.irreducible() && top.psi == want);
        }

      // associativity with an explicit witness
      {
        // a third adjoint factor would have dimension 4096, so the third is trivial here
        SchurModule v1 = ev_module(m, 0, cat[1].rep), v2 = ev_module(m, 1, cat[1].rep),
                    v3 = ev_module(m, npts - 1, cat[0].rep);
        SchurModule left = hat_tensor(hat_tensor(v1, v2).result, v3).result;
        SchurModule right = hat_tensor(v1, hat_tensor(v2, v3).result).result;
        Matrix w = detail::associator(v1.module.carrier, v2.module.carrier, v3.module.carrier);
        r.expect(tag + "(V¹ ⊗̂ V²) ⊗̂ V³ ≅ V¹ ⊗̂ (V² ⊗̂ V³) by reassociation",
                 left.dim() == right.dim() && intertwiner_failures(left.module, right.module, w, 0) == 0,
                 "dim " + detail::num(left.dim()));
      }

      // evaluation restricted to the invariants is onto ⊕ q over the representatives
      auto reps = orbit_representatives(pc.a, act);
      Matrix ev = ev_gamma_matrix(m, inv, act, reps);
      r.expect(tag + "evaluation at one point per orbit is surjective", rank(ev) == reps.size() * q.dim(),
               detail::num(rank(ev)) + "/" + detail::num(reps.size() * q.dim()));

      // the choice of representatives does not matter, and distinct data give distinct modules
      Classification cl = classify_enumerate(m, act, cat);
      for (const auto& row : cl.rows) {
        std::string who = detail::psi_str(cat, row.psi, pc.a);
        r.expect(tag + "representatives of " + who + " are interchangeable",
                 representative_failures(m, inv, act, cat, row.psi) == 0);
        AnnSupport ann = ann_and_support(m, inv, act, row.module.module);
        r.expect(tag + who + " has reduced support", ann.reduced);
      }
      r.expect(tag + "evaluation modules are pairwise non-isomorphic", cl.pairwise_distinct(),
               detail::num(cl.rows.size()) + " modules");
    });
  }
  return r;
}

// ---------------------------------------------------------------------------
// 8. Classification over a catalog

inline std::string classification_table(const Classification& cl, const Catalog& cat, const CoeffAlgebra& a) {
  std::string out;
  for (std::size_t i = 0; i < cl.rows.size(); ++i) {
    const auto& row = cl.rows[i];
    out += detail::psi_str(cat, row.psi, a) + " | dim " + detail::num(row.dim) + " | type " + row.type +
           " | irreducible " + (row.irreducible ? "yes" : "no") + "\n";
  }
  return out;
}

inline CriterionReport check_classification() {
  CriterionReport r{8, "evaluation modules over the catalog {trivial, adjoint}", {}};
  QueerAlgebra q(2);
  Catalog cat = make_catalog(q, {"trivial", "adjoint"});
  const std::vector<std::size_t> expect_dims{1, 16, 16, 256};
  for (const auto& pc : detail::preset_cases()) {
    const std::string tag = pc.name + ": ";
    r.guard(tag + "classification", [&] {
      MapSuper m = tensor_lie(q.lie(), pc.a);
      HwContext c = hw_context(q, pc.a);
      GammaAction act = pc.twisted ? detail::sign_flip_group(pc.a, q) : trivial_gamma(pc.a, q.lie());
      InvariantSub inv = invariants(m, act);
      Classification cl = classify_enumerate(m, act, cat);
      std::vector<std::size_t> dims;
      for (const auto& row : cl.rows) dims.push_back(row.dim);
      r.expect(tag + "four equivariant maps", cl.rows.size() == 4 && cl.skipped == 0);
      r.expect(tag + "dimensions 1, 16, 16, 256", dims == expect_dims);
      for (const auto& row : cl.rows) {
        std::string who = detail::psi_str(cat, row.psi, pc.a);
        r.expect(tag + who + " irreducible", row.irreducible && row.density.value_or(true));
        // it is the restriction of the untwisted module supported on the representatives
        PsiMap on_reps(row.psi.size(), 0);
        for (auto p : cl.representatives) on_reps[p] = row.psi[p];
        SchurModule full = ev_hat(m, cat, on_reps);
        LieModule restricted = restrict_to_invariants(full.module, m, inv);
        bool same = restricted.dim() == row.dim;
        for (std::size_t k = 0; same && k < restricted.action.size(); ++k)
          same = restricted.action[k] == row.module.module.action[k];
        r.expect(tag + who + " is a restriction of a q ⊗ A-module", same);
        r.expect(tag + who + " untwisted module is irreducible", is_irreducible_hw(c, full.module));
      }
      r.expect(tag + "pairwise non-isomorphic", cl.pairwise_distinct());
    });
  }
  r.guard("trivial catalog", [&] {
    MapSuper m = tensor_lie(q.lie(), detail::four_points());
    Classification cl = classify_enumerate(m, trivial_gamma(m.a, m.q), make_catalog(q, {"trivial"}));
    r.expect("catalog {trivial} gives only the trivial module", cl.rows.size() == 1 && cl.rows[0].dim == 1);
  });
  r.guard("non-free action", [&] {
    CoeffAlgebra a = preset_truncated(Polynomial{{Scalar(0), Scalar(-1), Scalar(0), Scalar(1)}},
                                      {Scalar(0), Scalar(1), Scalar(-1)});
    MapSuper m = tensor_lie(q.lie(), a);
    std::string msg;
    try {
      classify_enumerate(m, detail::sign_flip_group(a, q), cat);
    } catch (const std::invalid_argument& e) {
      msg = e.what();
    }
    r.expect("a Γ with a fixed point is refused", msg.find("freeness violated at") != std::string::npos, msg);
  });
  return r;
}

// ---------------------------------------------------------------------------
// Suites

inline const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names{"superalg", "queer", "cartan", "hw", "products", "all"};
  return names;
}

/// Criteria in a suite: superalg {1, 3}, queer {2}, cartan {4}, hw {5, 6}, products {7, 8}.
inline std::vector<int> suite_criteria(const std::string& suite) {
  if (suite == "superalg") return {1, 3};
  if (suite == "queer") return {2};
  if (suite == "cartan") return {4};
  if (suite == "hw") return {5, 6};
  if (suite == "products") return {7, 8};
  if (suite == "all") return {1, 2, 3, 4, 5, 6, 7, 8};
  throw std::invalid_argument("unknown suite '" + suite + "'");
}

inline CriterionReport run_criterion(int id, std::uint64_t seed) {
  switch (id) {
    case 1: return check_queer_line_square();
    case 2: return check_queer_structure();
    case 3: return check_clifford(seed);
    case 4: return check_cartan_modules(seed);
    case 5: return check_highest_weight(seed);
    case 6: return check_finite_conditions();
    case 7: return check_products();
    case 8: return check_classification();
  }
  throw std::invalid_argument("unknown criterion " + std::to_string(id));
}

}  // namespace qsuper
