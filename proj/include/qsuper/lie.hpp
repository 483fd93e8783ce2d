#pragma once

// Lie superalgebras given by structure constants, and their modules.

#include "qsuper/assoc.hpp"

#include <deque>
#include <map>
#include <string>
#include <utility>
#include <vector>

namespace qsuper {

class LieSuper {
 public:
  LieSuper() = default;
  LieSuper(GradedSpace space, std::vector<std::string> labels)
      : space_(space), labels_(std::move(labels)), table_(space.dim() * space.dim()) {}

  const GradedSpace& space() const { return space_; }
  std::size_t dim() const { return space_.dim(); }
  int parity(std::size_t k) const { return space_.parity(k); }
  const std::vector<std::string>& labels() const { return labels_; }

  const SparseRow& bracket(std::size_t i, std::size_t j) const { return table_[i * dim() + j]; }
  void set_bracket(std::size_t i, std::size_t j, SparseRow r) { table_[i * dim() + j] = std::move(r); }

  Vec bracket(const Vec& a, const Vec& b) const {
    Vec out(dim());
    for (std::size_t i = 0; i < dim(); ++i) {
      if (a[i].is_zero()) continue;
      for (std::size_t j = 0; j < dim(); ++j) {
        if (b[j].is_zero()) continue;
        Scalar ab = a[i] * b[j];
        for (const auto& [k, c] : bracket(i, j)) out[k] += ab * c;
      }
    }
    return out;
  }

  /// ad(e_k) as a sparse matrix on g.
  SparseMatrix ad(std::size_t k) const {
    SparseMatrix m(dim(), dim());
    for (std::size_t j = 0; j < dim(); ++j)
      for (const auto& [r, c] : bracket(k, j)) m.push(r, j, c);
    m.normalize();
    return m;
  }

  SparseMatrix ad(const Vec& x) const {
    SparseMatrix m(dim(), dim());
    for (std::size_t k = 0; k < dim(); ++k)
      if (!x[k].is_zero()) m = m + x[k] * ad(k);
    return m;
  }

  bool respects_grading() const {
    for (std::size_t i = 0; i < dim(); ++i)
      for (std::size_t j = 0; j < dim(); ++j)
        for (const auto& e : bracket(i, j))
          if (parity(e.first) != (parity(i) ^ parity(j))) return false;
    return true;
  }

  /// Pairs with [a,b] != -(-1)^{|a||b|}[b,a].
  std::size_t skew_failures() const {
    std::size_t bad = 0;
    for (std::size_t i = 0; i < dim(); ++i)
      for (std::size_t j = i; j < dim(); ++j) {
        bool s = parity(i) && parity(j);
        SparseRow lhs = bracket(i, j), rhs = bracket(j, i);
        for (auto& e : rhs) e.second = s ? e.second : -e.second;
        if (lhs.size() != rhs.size()) {
          ++bad;
          continue;
        }
        for (std::size_t k = 0; k < lhs.size(); ++k)
          if (lhs[k].first != rhs[k].first || lhs[k].second != rhs[k].second) {
            ++bad;
            break;
          }
      }
    return bad;
  }

  /// Triples violating [a,[b,c]] = [[a,b],c] + (-1)^{|a||b|}[b,[a,c]].
  std::size_t jacobi_failures() const {
    std::size_t bad = 0;
    std::size_t n = dim();
    for (std::size_t a = 0; a < n; ++a)
      for (std::size_t b = 0; b < n; ++b)
        for (std::size_t c = 0; c < n; ++c) {
          Vec lhs(n), rhs(n);
          for (const auto& [p, x] : bracket(b, c))
            for (const auto& [q, y] : bracket(a, p)) lhs[q] += x * y;
          for (const auto& [p, x] : bracket(a, b))
            for (const auto& [q, y] : bracket(p, c)) rhs[q] += x * y;
          bool neg = parity(a) && parity(b);
          for (const auto& [p, x] : bracket(a, c))
            for (const auto& [q, y] : bracket(b, p)) rhs[q] += neg ? -(x * y) : x * y;
          if (lhs != rhs) ++bad;
        }
    return bad;
  }

  bool is_abelian() const {
    for (const auto& r : table_)
      if (!r.empty()) return false;
    return true;
  }

  /// Even elements whose adjoint action is diagonal on the basis; optional.
  /// When present, ideals are sums of their joint eigenspaces.
  const std::vector<Vec>& toral() const { return toral_; }
  void set_toral(std::vector<Vec> t) { toral_ = std::move(t); }

 private:
  GradedSpace space_;
  std::vector<std::string> labels_;
  std::vector<SparseRow> table_;
  std::vector<Vec> toral_;
};

/// Supercommutator bracket [a,b] = ab - (-1)^{|a||b|} ba.
inline LieSuper from_assoc(const AssocSuper& a) {
  LieSuper g(a.space(), a.labels());
  for (std::size_t i = 0; i < a.dim(); ++i)
    for (std::size_t j = 0; j < a.dim(); ++j) {
      bool plus = a.parity(i) && a.parity(j);
      Vec v(a.dim());
      for (const auto& [k, c] : a.product(i, j)) v[k] += c;
      for (const auto& [k, c] : a.product(j, i)) v[k] += plus ? c : -c;
      g.set_bracket(i, j, detail::to_sparse(v));
    }
  return g;
}

/// Subalgebra spanned by homogeneous vectors (evens first), with structure
/// constants in that basis.  Throws if the span is not closed.
inline LieSuper restrict_to(const LieSuper& g, const std::vector<Vec>& basis, std::vector<std::string> labels = {}) {
  std::size_t evens = 0;
  for (std::size_t k = 0; k < basis.size(); ++k) {
    int p = -1;
    for (std::size_t d = 0; d < g.dim(); ++d) {
      if (basis[k][d].is_zero()) continue;
      if (p >= 0 && p != g.parity(d)) throw std::invalid_argument("restrict_to: inhomogeneous basis vector");
      p = g.parity(d);
    }
    if (p == 1) continue;
    if (evens != k) throw std::invalid_argument("restrict_to: even basis vectors must come first");
    ++evens;
  }
  if (labels.empty())
    for (std::size_t k = 0; k < basis.size(); ++k) labels.push_back("b" + std::to_string(k + 1));
  LieSuper h(GradedSpace(evens, basis.size() - evens), std::move(labels));
  BasisCoordinates coords(basis, g.dim());
  for (std::size_t i = 0; i < basis.size(); ++i)
    for (std::size_t j = 0; j < basis.size(); ++j) {
      Vec c;
      if (!coords.coordinates(g.bracket(basis[i], basis[j]), c))
        throw std::invalid_argument("restrict_to: span is not a subalgebra");
      h.set_bracket(i, j, detail::to_sparse(c));
    }
  std::vector<Vec> toral;
  for (const auto& t : g.toral()) {
    Vec c;
    if (coords.coordinates(t, c)) toral.push_back(std::move(c));
  }
  h.set_toral(std::move(toral));
  return h;
}

/// Smallest ideal containing the seed vectors (closure under ad of the basis).
inline std::vector<Vec> ideal_closure(const LieSuper& g, const std::vector<Vec>& seed) {
  RowEchelon span(g.dim());
  std::deque<Vec> queue;
  for (const auto& s : seed)
    if (span.add(s)) queue.push_back(s);
  std::vector<SparseMatrix> ads;
  for (std::size_t b = 0; b < g.dim(); ++b) ads.push_back(g.ad(b));
  while (!queue.empty() && !span.full()) {
    Vec v = std::move(queue.front());
    queue.pop_front();
    for (const auto& a : ads) {
      Vec w = a.apply(v);
      if (span.add(w)) queue.push_back(std::move(w));
    }
  }
  return span.rows();
}

/// Span of [x, y] for x in a, y in b.
inline std::vector<Vec> bracket_span(const LieSuper& g, const std::vector<Vec>& a, const std::vector<Vec>& b) {
  RowEchelon span(g.dim());
  for (const auto& x : a)
    for (const auto& y : b) span.add(g.bracket(x, y));
  return span.rows();
}

inline std::vector<std::vector<Vec>> derived_series(const LieSuper& g) {
  std::vector<std::vector<Vec>> series;
  std::vector<Vec> cur;
  for (std::size_t k = 0; k < g.dim(); ++k) cur.push_back(unit_vec(g.dim(), k));
  series.push_back(cur);
  for (;;) {
    std::vector<Vec> next = bracket_span(g, cur, cur);
    if (next.size() == cur.size()) break;
    series.push_back(next);
    if (next.empty()) break;
    cur = std::move(next);
  }
  return series;
}

inline bool is_solvable(const LieSuper& g) { return derived_series(g).back().empty(); }

/// Largest ad(g)-stable subspace inside span{e_b : b in allowed}.
inline std::vector<Vec> largest_ideal_within(const LieSuper& g, const std::vector<std::size_t>& allowed) {
  std::vector<Vec> x;
  for (auto b : allowed) x.push_back(unit_vec(g.dim(), b));
  std::vector<SparseMatrix> ads;
  for (std::size_t b = 0; b < g.dim(); ++b) ads.push_back(g.ad(b));
  for (;;) {
    if (x.empty()) return x;
    RowEchelon ech(g.dim());
    for (const auto& v : x) ech.add(v);
    // c with ad(e_b)(sum c_k x_k) in span(x) for all b
    RowEchelon eqs(x.size());
    for (const auto& a : ads) {
      std::vector<Vec> images;
      for (const auto& v : x) {
        Vec w = a.apply(v);
        ech.reduce(w);
        images.push_back(std::move(w));
      }
      for (std::size_t r = 0; r < g.dim(); ++r) {
        Vec row(x.size());
        bool any = false;
        for (std::size_t k = 0; k < x.size(); ++k)
          if (!images[k][r].is_zero()) {
            row[k] = images[k][r];
            any = true;
          }
        if (any) eqs.add(std::move(row));
      }
    }
    if (eqs.rank() == 0) return x;
    std::vector<Vec> next;
    for (const auto& c : eqs.nullspace()) {
      Vec v(g.dim());
      for (std::size_t k = 0; k < x.size(); ++k)
        if (!c[k].is_zero())
          for (std::size_t d = 0; d < g.dim(); ++d)
            if (!x[k][d].is_zero()) v[d] += c[k] * x[k][d];
      next.push_back(std::move(v));
    }
    x = std::move(next);
  }
}

/// Joint ad-eigenvalues of the toral elements on each basis vector, or an
/// empty result when the toral data does not act diagonally.
inline std::vector<std::vector<Scalar>> toral_weights(const LieSuper& g) {
  std::vector<std::vector<Scalar>> w(g.dim());
  for (const auto& t : g.toral()) {
    SparseMatrix a = g.ad(t);
    for (std::size_t b = 0; b < g.dim(); ++b) {
      Scalar ev;
      for (std::size_t r = 0; r < g.dim(); ++r)
        for (const auto& [c, v] : a.row(r))
          if (c == b) {
            if (r != b) return {};
            ev = v;
          }
      w[b].push_back(ev);
    }
  }
  return w;
}

/// Simplicity test.  With toral data: ideals are sums of weight pieces, so a
/// proper ideal either contains a basis vector from a weight space whose even
/// and odd parts are at most one-dimensional, or lies inside the sum of the
/// remaining weight spaces; both cases are checked exactly.  Without toral data
/// the adjoint module is tested with the density oracle.
inline bool is_simple(const LieSuper& g) {
  if (g.dim() == 0 || g.is_abelian()) return false;
  auto weights = g.toral().empty() ? std::vector<std::vector<Scalar>>{} : toral_weights(g);
  if (weights.empty()) {
    std::vector<SparseMatrix> ads;
    std::vector<int> par;
    for (std::size_t b = 0; b < g.dim(); ++b) {
      ads.push_back(g.ad(b));
      par.push_back(g.parity(b));
    }
    return density_type(ads, par, g.space()).irreducible();
  }
  std::map<std::vector<std::string>, std::vector<std::size_t>> spaces;
  for (std::size_t b = 0; b < g.dim(); ++b) {
    std::vector<std::string> key;
    for (const auto& s : weights[b]) key.push_back(s.str());
    spaces[key].push_back(b);
  }
  std::vector<std::size_t> big;
  for (const auto& [key, members] : spaces) {
    std::size_t e = 0, o = 0;
    for (auto b : members) (g.parity(b) ? o : e)++;
    if (e <= 1 && o <= 1) {
      for (auto b : members)
        if (ideal_closure(g, {unit_vec(g.dim(), b)}).size() < g.dim()) return false;
    } else {
      big.insert(big.end(), members.begin(), members.end());
    }
  }
  if (big.size() == g.dim()) {
    std::vector<SparseMatrix> ads;
    std::vector<int> par;
    for (std::size_t b = 0; b < g.dim(); ++b) {
      ads.push_back(g.ad(b));
      par.push_back(g.parity(b));
    }
    return density_type(ads, par, g.space()).irreducible();
  }
  return largest_ideal_within(g, big).empty();
}

// ---------------------------------------------------------------------------
// Modules

struct LieModule {
  GradedSpace carrier;
  std::vector<SparseMatrix> action;  // one per Lie basis element
  std::vector<int> parities;
  // Joint eigenvalues of the toral elements per carrier basis vector, when the
  // carrier basis is a weight basis; empty otherwise.
  std::vector<Vec> weights;

  std::size_t dim() const { return carrier.dim(); }

  SparseMatrix act(const Vec& x) const {
    SparseMatrix m(dim(), dim());
    for (std::size_t k = 0; k < x.size(); ++k)
      if (!x[k].is_zero()) m = m + x[k] * action[k];
    return m;
  }

  /// Basis pairs with rho([x,y]) != rho(x)rho(y) - (-1)^{|x||y|} rho(y)rho(x),
  /// plus parity violations.
  std::size_t representation_failures(const LieSuper& g) const {
    std::size_t bad = 0;
    for (std::size_t k = 0; k < g.dim(); ++k)
      if (!action[k].is_zero() && matrix_parity(action[k], carrier, carrier) != g.parity(k)) ++bad;
    for (std::size_t i = 0; i < g.dim(); ++i)
      for (std::size_t j = i; j < g.dim(); ++j) {
        SparseMatrix lhs(dim(), dim());
        for (const auto& [k, c] : g.bracket(i, j)) lhs = lhs + c * action[k];
        bool plus = g.parity(i) && g.parity(j);
        SparseMatrix xy = action[i] * action[j], yx = action[j] * action[i];
        SparseMatrix rhs = plus ? xy + yx : xy - yx;
        if (!(lhs == rhs)) ++bad;
      }
    return bad;
  }
};

inline LieModule adjoint_module(const LieSuper& g) {
  LieModule m;
  m.carrier = g.space();
  for (std::size_t k = 0; k < g.dim(); ++k) {
    m.action.push_back(g.ad(k));
    m.parities.push_back(g.parity(k));
  }
  if (!g.toral().empty()) m.weights = toral_weights(g);
  return m;
}

/// Restricts an associative module to the associated Lie superalgebra.
inline LieModule from_assoc_module(const ModuleAction& a) {
  return LieModule{a.carrier, a.action, a.parities, {}};
}

struct SolvableModuleCheck {
  bool hypothesis = false;  // [g_1, g_1] inside [g_0, g_0]
  bool solvable = false;
  bool one_dimensional = false;
  bool consistent() const { return !(hypothesis && solvable) || one_dimensional; }
};

/// For a solvable g with [g_1, g_1] in [g_0, g_0], an irreducible module
/// (irreducibility certified by the caller) must be one-dimensional.
inline SolvableModuleCheck check_solvable_module_dim(const LieSuper& g, const LieModule& irreducible) {
  SolvableModuleCheck out;
  std::vector<Vec> ev, od;
  for (std::size_t k = 0; k < g.dim(); ++k) (g.parity(k) ? od : ev).push_back(unit_vec(g.dim(), k));
  RowEchelon g00(g.dim());
  for (const auto& v : bracket_span(g, ev, ev)) g00.add(v);
  out.hypothesis = true;
  for (const auto& v : bracket_span(g, od, od))
    if (!g00.contains(v)) out.hypothesis = false;
  out.solvable = is_solvable(g);
  out.one_dimensional = irreducible.dim() == 1;
  return out;
}

}  // namespace qsuper
