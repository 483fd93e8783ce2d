#pragma once

#include "qsuper/coeff.hpp"
#include "qsuper/lie.hpp"

#include <random>

namespace qsuper {

/// g ⊗ A with basis x_i ⊗ a_k at index i * dim A + k.
struct MapSuper {
  LieSuper q;
  CoeffAlgebra a;
  LieSuper lie;

  std::size_t index(std::size_t x, std::size_t k) const { return x * a.dim() + k; }
  std::size_t q_index(std::size_t b) const { return b / a.dim(); }
  std::size_t a_index(std::size_t b) const { return b % a.dim(); }

  /// x ⊗ f for a Lie basis index x and a coefficient vector f.
  Vec pure(std::size_t x, const Vec& f) const {
    Vec v(lie.dim());
    for (std::size_t k = 0; k < a.dim(); ++k) v[index(x, k)] = f[k];
    return v;
  }
  /// Σ v_x ⊗ f for a Lie vector v.
  Vec pure(const Vec& x, const Vec& f) const {
    Vec v(lie.dim());
    for (std::size_t i = 0; i < q.dim(); ++i)
      if (!x[i].is_zero())
        for (std::size_t k = 0; k < a.dim(); ++k) v[index(i, k)] += x[i] * f[k];
    return v;
  }
};

inline MapSuper tensor_lie(const LieSuper& q, const CoeffAlgebra& a) {
  std::size_t d0 = q.space().even_dim * a.dim(), d1 = q.space().odd_dim * a.dim();
  std::vector<std::string> labels;
  for (std::size_t x = 0; x < q.dim(); ++x)
    for (std::size_t k = 0; k < a.dim(); ++k) labels.push_back(q.labels()[x] + "⊗" + a.labels()[k]);
  MapSuper m{q, a, LieSuper(GradedSpace(d0, d1), std::move(labels))};
  for (std::size_t x = 0; x < q.dim(); ++x)
    for (std::size_t y = 0; y < q.dim(); ++y) {
      const SparseRow& xy = q.bracket(x, y);
      if (xy.empty()) continue;
      for (std::size_t i = 0; i < a.dim(); ++i)
        for (std::size_t j = 0; j < a.dim(); ++j) {
          SparseRow r;
          for (const auto& [z, c] : xy)
            for (const auto& [k, f] : a.product(i, j)) r.emplace_back(m.index(z, k), c * f);
          std::sort(r.begin(), r.end(), [](const auto& u, const auto& v) { return u.first < v.first; });
          m.lie.set_bracket(m.index(x, i), m.index(y, j), std::move(r));
        }
    }
  std::vector<Vec> toral;
  for (const auto& t : q.toral()) toral.push_back(m.pure(t, a.unit()));
  m.lie.set_toral(std::move(toral));
  return m;
}

/// Jacobi identity on random basis triples.
inline std::size_t jacobi_spot_failures(const LieSuper& g, std::uint64_t seed, std::size_t count) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<std::size_t> pick(0, g.dim() - 1);
  std::size_t bad = 0;
  for (std::size_t t = 0; t < count; ++t) {
    std::size_t x = pick(rng), y = pick(rng), z = pick(rng);
    Vec ex = unit_vec(g.dim(), x), ey = unit_vec(g.dim(), y), ez = unit_vec(g.dim(), z);
    // [x,[y,z]] = [[x,y],z] + (-1)^{|x||y|} [y,[x,z]]
    Vec lhs = g.bracket(ex, g.bracket(ey, ez));
    Vec r1 = g.bracket(g.bracket(ex, ey), ez), r2 = g.bracket(ey, g.bracket(ex, ez));
    Scalar s(sign_of(g.parity(x) * g.parity(y)));
    for (std::size_t k = 0; k < g.dim(); ++k) lhs[k] -= r1[k] + s * r2[k];
    if (!is_zero_vec(lhs)) ++bad;
  }
  return bad;
}

/// Diagonal action of a group element on g ⊗ A.
inline Matrix map_action(const MapSuper&, const GammaAction& act, const std::vector<std::size_t>& e) {
  return kron(act.lie_matrix(e), act.algebra_matrix(e));
}

inline Matrix averaging_projector(const MapSuper& m, const GammaAction& act) {
  Matrix p(m.lie.dim(), m.lie.dim());
  auto elements = act.elements();
  for (const auto& e : elements) p = p + map_action(m, act, e);
  return (Scalar(1) / Scalar(static_cast<std::int64_t>(elements.size()))) * p;
}

/// Fixed points of Γ in g ⊗ A.  Basis vectors are projector images of basis
/// vectors of g ⊗ A, so they stay homogeneous for any grading the action
/// preserves (parity, and root spaces when Γ fixes the Cartan subalgebra).
struct InvariantSub {
  LieSuper lie;
  std::vector<Vec> basis;  // coordinates in g ⊗ A
  std::vector<std::size_t> source;  // g ⊗ A basis index each vector is the average of
  Matrix projector;

  Vec to_ambient(const Vec& c) const {
    Vec v(projector.rows());
    for (std::size_t k = 0; k < basis.size(); ++k)
      if (!c[k].is_zero())
        for (std::size_t d = 0; d < v.size(); ++d) v[d] += c[k] * basis[k][d];
    return v;
  }
  /// Coordinates of an invariant vector; throws if it is not invariant.
  Vec coordinates(const Vec& v) const { return BasisCoordinates(basis, projector.rows()).coordinates(v); }
};

inline InvariantSub invariants(const MapSuper& m, const GammaAction& act) {
  Matrix p = averaging_projector(m, act);
  InvariantSub out{LieSuper(GradedSpace(0, 0), {}), {}, {}, p};
  std::vector<std::string> labels;
  RowEchelon span(m.lie.dim());
  for (std::size_t k = 0; k < m.lie.dim(); ++k) {
    Vec v(m.lie.dim());
    for (std::size_t r = 0; r < v.size(); ++r) v[r] = p(r, k);
    if (!span.add(v)) continue;
    out.basis.push_back(std::move(v));
    out.source.push_back(k);
    labels.push_back("avg(" + m.lie.labels()[k] + ")");
  }
  out.lie = restrict_to(m.lie, out.basis, std::move(labels));
  return out;
}

/// Evaluation q ⊗ A -> ⊕ q at the listed maximal ideals (rows block per point).
inline Matrix ev_matrix(const MapSuper& m, const std::vector<std::size_t>& points) {
  for (std::size_t i = 0; i < points.size(); ++i)
    for (std::size_t j = i + 1; j < points.size(); ++j)
      if (points[i] == points[j]) throw std::invalid_argument("ev: repeated maximal ideal " + m.a.maxspec()[points[i]].label);
  std::size_t dq = m.q.dim();
  Matrix e(points.size() * dq, m.lie.dim());
  for (std::size_t p = 0; p < points.size(); ++p) {
    const auto& chi = m.a.maxspec().at(points[p]).character;
    for (std::size_t x = 0; x < dq; ++x)
      for (std::size_t k = 0; k < m.a.dim(); ++k) e(p * dq + x, m.index(x, k)) = chi[k];
  }
  return e;
}

/// Throws unless the points lie in pairwise distinct Γ-orbits.
inline void require_distinct_orbits(const CoeffAlgebra& a, const GammaAction& act, const std::vector<std::size_t>& points) {
  for (std::size_t i = 0; i < points.size(); ++i)
    for (const auto& e : act.elements()) {
      auto moved = moved_point(a, act.algebra_matrix(e), points[i]);
      for (std::size_t j = 0; j < points.size(); ++j)
        if (j != i && moved && *moved == points[j])
          throw std::invalid_argument("ev: " + a.maxspec()[points[i]].label + " and " + a.maxspec()[points[j]].label +
                                      " lie in one orbit");
    }
}

/// Evaluation restricted to the invariant subalgebra (columns indexed by its basis).
inline Matrix ev_gamma_matrix(const MapSuper& m, const InvariantSub& inv, const GammaAction& act,
                              const std::vector<std::size_t>& points) {
  require_distinct_orbits(m.a, act, points);
  Matrix e = ev_matrix(m, points);
  Matrix out(e.rows(), inv.basis.size());
  for (std::size_t c = 0; c < inv.basis.size(); ++c) {
    Vec col = e * inv.basis[c];
    for (std::size_t r = 0; r < e.rows(); ++r) out(r, c) = col[r];
  }
  return out;
}

/// ker ev = q ⊗ ∏ m_i.
inline bool ev_kernel_matches(const MapSuper& m, const std::vector<std::size_t>& points) {
  Matrix e = ev_matrix(m, points);
  IdealRep prod = whole_algebra(m.a);
  for (auto p : points) prod = ideal_product(m.a, prod, max_ideal(m.a, p));
  auto ker = kernel_basis(e);
  if (ker.size() != m.q.dim() * prod.dim()) return false;
  for (std::size_t x = 0; x < m.q.dim(); ++x)
    for (const auto& f : prod.basis)
      if (!is_zero_vec(e * m.pure(x, f))) return false;
  return true;
}

struct AnnSupport {
  IdealRep ann;
  std::vector<std::size_t> support;
  bool reduced = false;
};

namespace detail {

/// ops[x][k] is the action of (the image of) x ⊗ a_k.  Returns the largest
/// ideal J with ops(x ⊗ J) = 0 for all x.
inline IdealRep annihilator_ideal(const CoeffAlgebra& a, const std::vector<std::vector<SparseMatrix>>& ops) {
  std::size_t n = a.dim();
  // K = {f : Σ f_k ops[x][k] = 0 for all x}, as a kernel of stacked entry rows.
  RowEchelon eqs(n);
  for (const auto& per_x : ops) {
    std::map<std::pair<std::size_t, std::size_t>, Vec> entries;
    for (std::size_t k = 0; k < n; ++k)
      for (std::size_t r = 0; r < per_x[k].rows(); ++r)
        for (const auto& [c, v] : per_x[k].row(r)) {
          auto& row = entries[{r, c}];
          if (row.empty()) row.assign(n, Scalar());
          row[k] += v;
        }
    for (const auto& [pos, row] : entries) {
      eqs.add(row);
      if (eqs.full()) return IdealRep{};
    }
  }
  // J = {f : b f ∈ K for every basis b}
  Matrix big(eqs.rank() * n, n);
  std::size_t r = 0;
  for (std::size_t b = 0; b < n; ++b) {
    Matrix mb = a.mult_matrix(unit_vec(n, b));
    for (const auto& e : eqs.rows()) {
      for (std::size_t c = 0; c < n; ++c) {
        Scalar s;
        for (std::size_t d = 0; d < n; ++d)
          if (!e[d].is_zero()) s += e[d] * mb(d, c);
        big(r, c) = s;
      }
      ++r;
    }
  }
  return span_ideal(a, kernel_basis(big));
}

inline AnnSupport finish_ann(const CoeffAlgebra& a, IdealRep ann) {
  AnnSupport out;
  out.support = support(a, ann);
  out.reduced = ideal_equal(a, radical(a, ann), ann);
  out.ann = std::move(ann);
  return out;
}

}  // namespace detail

/// Ann_A(V) and Supp(V) for a module over g ⊗ A.
inline AnnSupport ann_and_support(const MapSuper& m, const LieModule& v) {
  std::vector<std::vector<SparseMatrix>> ops(m.q.dim());
  for (std::size_t x = 0; x < m.q.dim(); ++x)
    for (std::size_t k = 0; k < m.a.dim(); ++k) ops[x].push_back(v.action[m.index(x, k)]);
  return detail::finish_ann(m.a, detail::annihilator_ideal(m.a, ops));
}

/// Twisted version: the largest Γ-invariant ideal I with (g ⊗ I)^Γ V = 0.
inline AnnSupport ann_and_support(const MapSuper& m, const InvariantSub& inv, const GammaAction& act,
                                  const LieModule& v) {
  BasisCoordinates coords(inv.basis, m.lie.dim());
  std::vector<std::vector<SparseMatrix>> ops(m.q.dim());
  for (std::size_t x = 0; x < m.q.dim(); ++x)
    for (std::size_t k = 0; k < m.a.dim(); ++k) {
      Vec avg(m.lie.dim());
      for (std::size_t r = 0; r < avg.size(); ++r) avg[r] = inv.projector(r, m.index(x, k));
      ops[x].push_back(v.act(coords.coordinates(avg)));
    }
  IdealRep j = detail::annihilator_ideal(m.a, ops);
  // intersection of the translates γJ
  IdealRep meet = j;
  for (const auto& e : act.elements()) {
    Matrix g = act.algebra_matrix(e);
    std::vector<Vec> moved;
    for (const auto& b : j.basis) moved.push_back(g * b);
    meet = ideal_intersection(m.a, meet, span_ideal(m.a, moved));
  }
  return detail::finish_ann(m.a, std::move(meet));
}

/// Pullback of a g-module along a Lie map given as a matrix (rows: g basis,
/// columns: source basis).
inline LieModule pullback(const LieModule& v, const Matrix& map, const LieSuper& source) {
  LieModule out{v.carrier, {}, {}, v.weights};
  for (std::size_t b = 0; b < source.dim(); ++b) {
    Vec col(map.rows());
    for (std::size_t r = 0; r < map.rows(); ++r) col[r] = map(r, b);
    out.action.push_back(v.act(col));
    out.parities.push_back(source.parity(b));
  }
  return out;
}

}  // namespace qsuper
