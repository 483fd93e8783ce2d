#pragma once

// Schur data, the irreducible product ⊗̂, evaluation modules over q ⊗ A and
// (q ⊗ A)^Γ, and the enumeration of evaluation modules over a finite catalog.

#include "qsuper/hwmod.hpp"

#include <functional>

namespace qsuper {

/// End(V) of an irreducible module: even part is the scalars, odd part is zero
/// or spanned by φ.  `phi` is normalised to φ² = −id; `c` is φ² before scaling.
struct SchurData {
  std::size_t even_dim = 1;
  std::optional<Matrix> phi;
  Scalar c;
  bool type_q() const { return phi.has_value(); }
  std::string type() const { return type_q() ? "Q" : "M"; }
};

inline SchurData schur_data(const LieModule& m) {
  auto even = hom_space(m, m, 0);
  auto odd = hom_space(m, m, 1);
  if (even.size() != 1 || odd.size() > 1) throw std::invalid_argument("schur_data: module is not irreducible");
  SchurData out;
  if (odd.empty()) return out;
  Matrix sq = odd[0] * odd[0];
  out.c = sq(0, 0);
  if (out.c.is_zero() || sq != out.c * Matrix::identity(m.dim()))
    throw std::invalid_argument("schur_data: module is not irreducible");
  Scalar s = adjoin_sqrt(-out.c);
  out.phi = s.inverse() * odd[0];
  return out;
}

/// A module together with its Schur data.
struct SchurModule {
  LieModule module;
  SchurData schur;
  std::size_t dim() const { return module.dim(); }
};

inline SchurModule with_schur(LieModule m) {
  SchurData s = schur_data(m);
  return SchurModule{std::move(m), std::move(s)};
}

/// The one-dimensional trivial module of an algebra of the given dimension.
inline SchurModule trivial_schur_module(const LieSuper& g, std::size_t n_weights) {
  LieModule m{GradedSpace(1, 0), std::vector<SparseMatrix>(g.dim(), SparseMatrix(1, 1)), g.space().parities(),
              {Vec(n_weights)}};
  if (n_weights == 0) m.weights.clear();
  return SchurModule{std::move(m), SchurData{}};
}

/// V ⊗ W over one algebra, x acting by ρ_V(x) ⊗ 1 + 1 ⊗ ρ_W(x) with Koszul signs.
inline LieModule tensor_module(const LieModule& v, const LieModule& w) {
  TensorBasis tb(v.carrier, w.carrier);
  LieModule out{tb.space, {}, v.parities, {}};
  SparseMatrix iv = SparseMatrix::identity(v.dim()), iw = SparseMatrix::identity(w.dim());
  for (std::size_t x = 0; x < v.action.size(); ++x) {
    int p = v.parities[x];
    SparseMatrix a = graded_tensor_sparse(v.action[x], v.carrier, v.carrier, p, iw, w.carrier, w.carrier, 0);
    SparseMatrix b = graded_tensor_sparse(iv, v.carrier, v.carrier, 0, w.action[x], w.carrier, w.carrier, p);
    out.action.push_back(a + b);
  }
  if (!v.weights.empty() && !w.weights.empty()) {
    out.weights.resize(tb.pairs.size());
    for (std::size_t k = 0; k < tb.pairs.size(); ++k) {
      const auto& [i, j] = tb.pairs[k];
      Vec s = v.weights[i];
      for (std::size_t t = 0; t < s.size(); ++t) s[t] += w.weights[j][t];
      out.weights[k] = std::move(s);
    }
  }
  return out;
}

/// Extends a module of g¹ (resp. g²) to g¹ ⊕ g², the other summand acting by zero.
/// The sum has basis (g¹ basis, g² basis) in that order.
inline LieModule extend_to_sum(const LieModule& m, std::size_t dim1, std::size_t dim2, bool first,
                               const std::vector<int>& par1, const std::vector<int>& par2) {
  LieModule out{m.carrier, {}, par1, m.weights};
  out.parities.insert(out.parities.end(), par2.begin(), par2.end());
  SparseMatrix zero(m.dim(), m.dim());
  for (std::size_t k = 0; k < dim1; ++k) out.action.push_back(first ? m.action[k] : zero);
  for (std::size_t k = 0; k < dim2; ++k) out.action.push_back(first ? zero : m.action[k]);
  return out;
}

/// Direct sum of Lie superalgebras, basis (g¹ basis, g² basis) regrouped even
/// first; `position` maps the concatenated index to the regrouped one.
struct LieSum {
  LieSuper lie;
  std::vector<std::size_t> position;
};

inline LieSum lie_direct_sum(const LieSuper& a, const LieSuper& b) {
  std::size_t da = a.dim(), db = b.dim();
  std::vector<int> par;
  for (std::size_t k = 0; k < da; ++k) par.push_back(a.parity(k));
  for (std::size_t k = 0; k < db; ++k) par.push_back(b.parity(k));
  LieSum out;
  out.position.resize(da + db);
  std::vector<std::string> labels(da + db);
  std::size_t next = 0;
  for (int want : {0, 1})
    for (std::size_t k = 0; k < da + db; ++k)
      if (par[k] == want) {
        out.position[k] = next;
        labels[next++] = k < da ? a.labels()[k] + "⊕0" : "0⊕" + b.labels()[k - da];
      }
  std::size_t evens = a.space().even_dim + b.space().even_dim;
  out.lie = LieSuper(GradedSpace(evens, da + db - evens), labels);
  auto copy = [&](const LieSuper& g, std::size_t off) {
    for (std::size_t i = 0; i < g.dim(); ++i)
      for (std::size_t j = 0; j < g.dim(); ++j) {
        SparseRow r;
        for (const auto& [k, v] : g.bracket(i, j)) r.emplace_back(out.position[off + k], v);
        std::sort(r.begin(), r.end(), [](const auto& x, const auto& y) { return x.first < y.first; });
        out.lie.set_bracket(out.position[off + i], out.position[off + j], std::move(r));
      }
  };
  copy(a, 0);
  copy(b, da);
  return out;
}

/// Reorders a module over the concatenated basis of g¹ ⊕ g² to the basis of lie_direct_sum.
inline LieModule to_sum_basis(const LieModule& m, const LieSum& s) {
  LieModule out{m.carrier, std::vector<SparseMatrix>(m.action.size()), std::vector<int>(m.action.size()), m.weights};
  for (std::size_t k = 0; k < m.action.size(); ++k) {
    out.action[s.position[k]] = m.action[k];
    out.parities[s.position[k]] = m.parities[k];
  }
  return out;
}

/// V¹ ⊗̂ V²: the full tensor product unless both factors are of type Q, when it
/// is the +1-eigenspace of φ̃₁ ⊗ φ₂ with φ̃₁ = √−1 φ₁.
struct HatProduct {
  SchurModule result;
  bool split = false;          // both factors of type Q
  std::size_t full_dim = 0;    // dim V¹ ⊗ V²
  std::size_t minus_dim = 0;   // dim of the −1-eigenspace in the split case
  Matrix involution;           // φ̃₁ ⊗ φ₂ on V¹ ⊗ V² (split case)
  LieModule full;              // V¹ ⊗ V²
};

namespace detail {

// Subspace of a module spanned by blocks of the given vectors, as a module in
// its own right.  Each block lists vectors of one (weight, parity) class in
// reduced echelon form, so coordinates are read off at the pivots.
inline LieModule restrict_to_blocks(const LieModule& m, const std::vector<RowEchelon>& blocks,
                                    const std::vector<int>& block_parity) {
  std::vector<std::pair<std::size_t, std::size_t>> order;  // (block, row)
  std::size_t evens = 0;
  for (int want : {0, 1})
    for (std::size_t b = 0; b < blocks.size(); ++b)
      if (block_parity[b] == want)
        for (std::size_t r = 0; r < blocks[b].rank(); ++r) {
          order.emplace_back(b, r);
          if (want == 0) ++evens;
        }
  std::size_t n = order.size();
  // pivot column -> new basis index
  std::vector<std::optional<std::size_t>> at_pivot(m.dim());
  for (std::size_t k = 0; k < n; ++k) at_pivot[blocks[order[k].first].pivots()[order[k].second]] = k;
  LieModule out{GradedSpace(evens, n - evens), {}, m.parities, {}};
  if (!m.weights.empty())
    for (const auto& [b, r] : order) out.weights.push_back(m.weights[blocks[b].pivots()[r]]);
  for (const auto& op : m.action) {
    SparseMatrix a(n, n);
    SparseMatrix opt = op.transpose();
    for (std::size_t k = 0; k < n; ++k) {
      const Vec& v = blocks[order[k].first].rows()[order[k].second];
      // y = op · v, read at pivots
      std::map<std::size_t, Scalar> y;
      for (std::size_t c = 0; c < v.size(); ++c) {
        if (v[c].is_zero()) continue;
        for (const auto& [r, x] : opt.row(c)) y[r] += x * v[c];
      }
      for (const auto& [r, val] : y)
        if (at_pivot[r] && !val.is_zero()) a.push(*at_pivot[r], k, val);
    }
    a.normalize();
    out.action.push_back(std::move(a));
  }
  return out;
}

inline std::vector<std::vector<std::size_t>> weight_parity_classes(const LieModule& m, std::vector<int>& parity) {
  std::map<std::pair<std::string, int>, std::size_t> ids;
  std::vector<std::vector<std::size_t>> out;
  for (std::size_t k = 0; k < m.dim(); ++k) {
    std::string key;
    if (!m.weights.empty())
      for (const auto& s : m.weights[k]) key += s.str() + ";";
    auto [it, fresh] = ids.emplace(std::make_pair(key, m.carrier.parity(k)), out.size());
    if (fresh) {
      out.emplace_back();
      parity.push_back(m.carrier.parity(k));
    }
    out[it->second].push_back(k);
  }
  return out;
}

// Basis of the λ-eigenspace of an even operator, one echelon block per class.
inline std::vector<RowEchelon> eigen_blocks(const SparseMatrix& t, const Scalar& lambda,
                                            const std::vector<std::vector<std::size_t>>& classes, std::size_t n) {
  std::vector<RowEchelon> out;
  for (const auto& members : classes) {
    Matrix sub(members.size(), members.size());
    std::vector<std::optional<std::size_t>> pos(n);
    for (std::size_t k = 0; k < members.size(); ++k) pos[members[k]] = k;
    for (std::size_t r = 0; r < members.size(); ++r) {
      for (const auto& [c, x] : t.row(members[r])) {
        if (!pos[c]) throw std::logic_error("eigen_blocks: operator mixes weight classes");
        sub(r, *pos[c]) = x;
      }
      sub(r, r) -= lambda;
    }
    RowEchelon e(n);
    for (const auto& kv : kernel_basis(sub)) {
      Vec full(n);
      for (std::size_t k = 0; k < members.size(); ++k) full[members[k]] = kv[k];
      e.add(std::move(full));
    }
    out.push_back(std::move(e));
  }
  return out;
}

}  // namespace detail

/// ⊗̂ of two modules over the same algebra (for g¹ ⊕ g², extend both first).
inline HatProduct hat_tensor(const SchurModule& a, const SchurModule& b) {
  HatProduct out;
  out.full = tensor_module(a.module, b.module);
  out.full_dim = out.full.dim();
  const GradedSpace &va = a.module.carrier, &vb = b.module.carrier;
  if (!a.schur.type_q() || !b.schur.type_q()) {
    out.result.module = out.full;
    // the odd endomorphism of the type-Q factor carries over
    if (a.schur.type_q())
      out.result.schur.phi = graded_tensor_sparse(SparseMatrix::from_dense(*a.schur.phi), va, va, 1,
                                                  SparseMatrix::identity(vb.dim()), vb, vb, 0)
                                 .to_dense();
    else if (b.schur.type_q())
      out.result.schur.phi = graded_tensor_sparse(SparseMatrix::identity(va.dim()), va, va, 0,
                                                  SparseMatrix::from_dense(*b.schur.phi), vb, vb, 1)
                                 .to_dense();
    if (out.result.schur.type_q()) out.result.schur.c = Scalar(-1);
    return out;
  }
  out.split = true;
  SparseMatrix t = Scalar::i() * graded_tensor_sparse(SparseMatrix::from_dense(*a.schur.phi), va, va, 1,
                                                      SparseMatrix::from_dense(*b.schur.phi), vb, vb, 1);
  out.involution = t.to_dense();
  std::vector<int> par;
  auto classes = detail::weight_parity_classes(out.full, par);
  auto plus = detail::eigen_blocks(t, Scalar(1), classes, out.full_dim);
  auto minus = detail::eigen_blocks(t, Scalar(-1), classes, out.full_dim);
  for (const auto& e : minus) out.minus_dim += e.rank();
  out.result.module = detail::restrict_to_blocks(out.full, plus, par);
  return out;
}

/// The (+1 or −1) eigenspace of φ̃₁ ⊗ φ₂ as a module, for split products.
inline LieModule hat_eigenspace(const HatProduct& h, int sign) {
  std::vector<int> par;
  auto classes = detail::weight_parity_classes(h.full, par);
  auto blocks = detail::eigen_blocks(SparseMatrix::from_dense(h.involution), Scalar(sign), classes, h.full_dim);
  return detail::restrict_to_blocks(h.full, blocks, par);
}

// ---------------------------------------------------------------------------
// Evaluation modules

/// A finite list of irreducible q(n)-modules; entry 0 must be the trivial module.
struct CatalogEntry {
  std::string name;
  SchurModule rep;
};
using Catalog = std::vector<CatalogEntry>;

/// Known names: "trivial", "adjoint", and "hw:a,b,..." for the simple
/// highest-weight module with those values on h_1..h_n.  A depth may follow
/// '@'; otherwise depths n(n+1) .. n(n+1) + 6 are tried.
inline CatalogEntry catalog_entry(const QueerAlgebra& q, const std::string& name) {
  if (name == "trivial") return {name, trivial_schur_module(q.lie(), q.n())};
  if (name == "adjoint") return {name, with_schur(adjoint_module(q.lie()))};
  if (name.rfind("hw:", 0) == 0) {
    std::string body = name.substr(3);
    std::optional<std::size_t> depth;
    if (auto at = body.find('@'); at != std::string::npos) {
      depth = static_cast<std::size_t>(std::stoul(body.substr(at + 1)));
      body = body.substr(0, at);
    }
    Vec lambda;
    std::size_t start = 0;
    while (start <= body.size()) {
      auto comma = body.find(',', start);
      lambda.emplace_back(static_cast<std::int64_t>(std::stoll(body.substr(start, comma - start))));
      if (comma == std::string::npos) break;
      start = comma + 1;
    }
    if (lambda.size() != q.n()) throw std::invalid_argument("catalog: " + name + " needs " + std::to_string(q.n()) + " values");
    HwContext c = hw_context(q, preset_point());
    Psi psi = psi_at_point(c.cartan, lambda, 0);
    // without an explicit depth, deepen until the quotient closes up
    std::size_t lo = depth.value_or(c.default_depth()), hi = depth.value_or(c.default_depth() + 6);
    WeightModule v = simple_quotient(c, psi, lo);
    for (std::size_t d = lo + 1; !v.finite && d <= hi; ++d) v = simple_quotient(c, psi, d);
    if (!v.finite) throw std::invalid_argument("catalog: " + name + " is not finite-dimensional within the depth");
    return {name, with_schur(v.module)};
  }
  throw std::invalid_argument("catalog: unknown module '" + name + "'");
}

inline Catalog make_catalog(const QueerAlgebra& q, const std::vector<std::string>& names) {
  Catalog out;
  for (const auto& n : names) out.push_back(catalog_entry(q, n));
  if (out.empty() || out.front().name != "trivial") throw std::invalid_argument("catalog: the first entry must be trivial");
  return out;
}

/// ev_m^*(V): V pulled back along q ⊗ A → q ⊗ A/m.
inline SchurModule ev_module(const MapSuper& m, std::size_t point, const SchurModule& v) {
  return SchurModule{pullback(v.module, ev_matrix(m, {point}), m.lie), v.schur};
}

/// Ψ: a catalog index per maximal ideal (0 = trivial, i.e. outside the support).
using PsiMap = std::vector<std::size_t>;

inline std::vector<std::size_t> psi_support(const PsiMap& psi) {
  std::vector<std::size_t> out;
  for (std::size_t p = 0; p < psi.size(); ++p)
    if (psi[p] != 0) out.push_back(p);
  return out;
}

/// êv_Ψ = ⊗̂ over the support of the pulled-back catalog modules, in point order.
inline SchurModule ev_hat(const MapSuper& m, const Catalog& cat, const PsiMap& psi) {
  SchurModule acc = trivial_schur_module(m.lie, m.q.toral().size());
  for (auto p : psi_support(psi)) acc = hat_tensor(acc, ev_module(m, p, cat.at(psi[p]).rep)).result;
  return acc;
}

/// V ∘ γ⁻¹ for an automorphism γ of the acting algebra.
inline LieModule twist(const LieModule& v, const Matrix& gamma, const LieSuper& g) {
  LieModule out = pullback(v, inverse(gamma), g);
  out.weights.clear();
  return out;
}

/// Restriction of a q ⊗ A-module to (q ⊗ A)^Γ.
inline LieModule restrict_to_invariants(const LieModule& v, const MapSuper& m, const InvariantSub& inv) {
  return pullback(v, Matrix::from_columns(inv.basis, m.lie.dim()), inv.lie);
}

/// Orbit representatives: the smallest point of each orbit.
inline std::vector<std::size_t> orbit_representatives(const CoeffAlgebra& a, const GammaAction& act) {
  std::vector<std::size_t> out;
  for (std::size_t p = 0; p < a.maxspec().size(); ++p) {
    bool least = true;
    for (const auto& e : act.elements()) {
      auto q = moved_point(a, act.algebra_matrix(e), p);
      if (q && *q < p) least = false;
    }
    if (least) out.push_back(p);
  }
  return out;
}

/// Ψ(γm) ≅ Ψ(m) ∘ γ⁻¹ for all points and group elements.
inline bool is_equivariant(const MapSuper& m, const GammaAction& act, const Catalog& cat, const PsiMap& psi) {
  for (std::size_t p = 0; p < psi.size(); ++p)
    for (const auto& e : act.elements()) {
      auto q = moved_point(m.a, act.algebra_matrix(e), p);
      if (!q) return false;
      const LieModule& here = cat.at(psi[p]).rep.module;
      LieModule there = cat.at(psi[*q]).rep.module;
      there.weights.clear();
      if (here.dim() != there.dim()) return false;
      if (!is_isomorphic(twist(here, act.lie_matrix(e), m.q), there).isomorphic) return false;
    }
  return true;
}

/// êv_Ψ^Γ: êv of Ψ restricted to one point per orbit, restricted to (q ⊗ A)^Γ.
inline SchurModule ev_hat_gamma(const MapSuper& m, const InvariantSub& inv, const GammaAction& act, const Catalog& cat,
                                const PsiMap& psi) {
  if (!is_equivariant(m, act, cat, psi)) throw std::invalid_argument("ev: Ψ is not equivariant");
  PsiMap reps(psi.size(), 0);
  for (auto p : orbit_representatives(m.a, act)) reps[p] = psi[p];
  require_distinct_orbits(m.a, act, psi_support(reps));
  SchurModule full = ev_hat(m, cat, reps);
  return SchurModule{restrict_to_invariants(full.module, m, inv), full.schur};
}

/// Checks that γ·êv_Ψ^Γ ≅ êv_Ψ^Γ, the module twisted by the Γ-action on q ⊗ A
/// restricted to the invariants (where it acts trivially): returns the number of
/// group elements for which the twisted full module is not isomorphic to the
/// module of the moved data.
inline std::size_t moved_support_failures(const MapSuper& m, const GammaAction& act, const Catalog& cat,
                                          const PsiMap& psi) {
  std::size_t bad = 0;
  for (const auto& e : act.elements()) {
    Matrix gamma = map_action(m, act, e);
    PsiMap moved(psi.size(), 0);
    for (std::size_t p = 0; p < psi.size(); ++p) {
      auto q = moved_point(m.a, act.algebra_matrix(e), p);
      if (!q) return ++bad;
      moved[*q] = psi[p];
    }
    // ev_{γm} ∘ γ = (γ on q) ∘ ev_m, so êv_Ψ ∘ γ⁻¹ ≅ êv of the moved data twisted on q
    LieModule lhs = twist(ev_hat(m, cat, psi).module, gamma, m.lie);
    SchurModule rhs_base = trivial_schur_module(m.lie, m.q.toral().size());
    for (auto p : psi_support(psi)) {
      auto q = *moved_point(m.a, act.algebra_matrix(e), p);
      LieModule pulled = pullback(twist(cat.at(psi[p]).rep.module, act.lie_matrix(e), m.q), ev_matrix(m, {q}), m.lie);
      rhs_base = hat_tensor(rhs_base, with_schur(pulled)).result;
    }
    LieModule rhs = rhs_base.module;
    rhs.weights.clear();
    if (lhs.dim() != rhs.dim() || !is_isomorphic(lhs, rhs).isomorphic) ++bad;
  }
  return bad;
}

/// Independence of the orbit representatives: for every support point m and
/// γ ∈ Γ, êv_m(Ψ(m)) and êv_{γm}(Ψ(γm)) restricted to (q ⊗ A)^Γ are
/// isomorphic, and êv_Ψ^Γ built from the representatives moved by γ is
/// isomorphic to the default one.  Returns the number of failures.
inline std::size_t representative_failures(const MapSuper& m, const InvariantSub& inv, const GammaAction& act,
                                           const Catalog& cat, const PsiMap& psi) {
  std::size_t bad = 0;
  SchurModule base = ev_hat_gamma(m, inv, act, cat, psi);
  auto reps = orbit_representatives(m.a, act);
  for (const auto& e : act.elements()) {
    Matrix g = act.algebra_matrix(e);
    for (auto p : psi_support(psi)) {
      std::size_t q = *moved_point(m.a, g, p);
      LieModule here = restrict_to_invariants(ev_module(m, p, cat.at(psi[p]).rep).module, m, inv);
      LieModule there = restrict_to_invariants(ev_module(m, q, cat.at(psi[q]).rep).module, m, inv);
      if (!is_isomorphic(here, there).isomorphic) ++bad;
    }
    SchurModule acc = trivial_schur_module(m.lie, m.q.toral().size());
    for (auto r : reps)
      if (psi[r] != 0) {
        std::size_t q = *moved_point(m.a, g, r);
        acc = hat_tensor(acc, ev_module(m, q, cat.at(psi[q]).rep)).result;
      }
    LieModule moved = restrict_to_invariants(acc.module, m, inv);
    if (moved.dim() != base.dim() || !is_isomorphic(moved, base.module).isomorphic) ++bad;
  }
  return bad;
}

// ---------------------------------------------------------------------------
// Enumeration

struct ClassifyRow {
  PsiMap psi;                // catalog index per maximal ideal
  std::size_t dim = 0;
  std::string type;          // Schur type of the module
  bool irreducible = false;  // weight test on (q ⊗ A)^Γ
  std::optional<bool> density;  // density oracle, for dim ≤ 64
  std::vector<std::size_t> support;  // support of the (Γ-invariant) annihilator
  SchurModule module;
};

struct Classification {
  std::vector<std::size_t> representatives;  // one point per orbit
  std::vector<std::vector<std::size_t>> orbits;
  std::size_t skipped = 0;  // assignments whose Γ-translates are not in the catalog
  std::vector<ClassifyRow> rows;
  std::vector<std::vector<bool>> isomorphic;  // pairwise, rows × rows
  std::vector<std::vector<std::string>> evidence;  // "dimension", "support", "hom" or "same"

  bool pairwise_distinct() const {
    for (std::size_t i = 0; i < rows.size(); ++i)
      for (std::size_t j = 0; j < rows.size(); ++j)
        if (i != j && isomorphic[i][j]) return false;
    return true;
  }
  bool all_irreducible() const {
    return std::all_of(rows.begin(), rows.end(), [](const ClassifyRow& r) { return r.irreducible; });
  }
};

/// All equivariant Ψ with values in the catalog, one choice per orbit in
/// lexicographic order, with êv_Ψ^Γ and the pairwise isomorphism table.
inline Classification classify_enumerate(const MapSuper& m, const GammaAction& act, const Catalog& cat,
                                         std::size_t density_cap = 64) {
  GammaReport report = gamma_validate(act, m.a, m.q);
  if (!report.valid()) throw std::invalid_argument("classify: Γ does not act by automorphisms");
  if (!report.free) throw std::invalid_argument("classify: freeness violated at " + report.fixed_point);
  InvariantSub inv = invariants(m, act);
  Classification out;
  out.representatives = orbit_representatives(m.a, act);
  out.orbits = report.orbits;
  std::size_t npts = m.a.maxspec().size(), k = out.representatives.size();
  std::vector<std::size_t> choice(k, 0);
  for (;;) {
    PsiMap psi(npts, 0);
    bool closed = true;
    for (std::size_t r = 0; r < k && closed; ++r) {
      std::size_t rep = out.representatives[r];
      psi[rep] = choice[r];
      for (const auto& e : act.elements()) {
        auto q = moved_point(m.a, act.algebra_matrix(e), rep);
        if (*q == rep) continue;
        LieModule moved = twist(cat[choice[r]].rep.module, act.lie_matrix(e), m.q);
        std::optional<std::size_t> hit;
        for (std::size_t j = 0; j < cat.size() && !hit; ++j) {
          LieModule cand = cat[j].rep.module;
          cand.weights.clear();
          if (cand.dim() == moved.dim() && is_isomorphic(moved, cand).isomorphic) hit = j;
        }
        if (!hit) closed = false;
        else psi[*q] = *hit;
      }
    }
    if (closed) {
      ClassifyRow row;
      row.psi = psi;
      row.module = ev_hat_gamma(m, inv, act, cat, psi);
      row.dim = row.module.dim();
      row.type = with_schur(row.module.module).schur.type();
      row.irreducible = weight_irreducibility(inv.lie, row.module.module).irreducible();
      row.support = ann_and_support(m, inv, act, row.module.module).support;
      if (row.dim <= density_cap) {
        const LieModule& v = row.module.module;
        row.density = density_type(v.action, v.parities, v.carrier).irreducible();
      }
      out.rows.push_back(std::move(row));
    } else {
      ++out.skipped;
    }
    std::size_t pos = k;
    while (pos > 0 && ++choice[pos - 1] == cat.size()) choice[--pos] = 0;
    if (pos == 0) break;
  }
  std::size_t n = out.rows.size();
  out.isomorphic.assign(n, std::vector<bool>(n, false));
  out.evidence.assign(n, std::vector<std::string>(n));
  // isomorphic modules share dimension and support; only otherwise solve for a Hom
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i; j < n; ++j) {
      const ClassifyRow &a = out.rows[i], &b = out.rows[j];
      bool iso = false;
      std::string why;
      if (i == j) iso = true, why = "same";
      else if (a.dim != b.dim) why = "dimension";
      else if (a.support != b.support) why = "support";
      else iso = is_isomorphic(a.module.module, b.module.module).isomorphic, why = "hom";
      out.isomorphic[i][j] = out.isomorphic[j][i] = iso;
      out.evidence[i][j] = out.evidence[j][i] = why;
    }
  return out;
}

}  // namespace qsuper
