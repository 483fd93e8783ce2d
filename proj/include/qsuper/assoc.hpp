#pragma once

// Associative superalgebras given by structure constants, their modules, and
// the simple-algebra classification (matrix type M(m|n) or queer type Q(m)).

#include "qsuper/graded.hpp"

#include <cstdint>
#include <deque>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace qsuper {

class AssocSuper {
 public:
  AssocSuper() = default;
  AssocSuper(GradedSpace space, std::vector<std::string> labels)
      : space_(space), labels_(std::move(labels)), table_(space.dim() * space.dim()), unit_(space.dim()) {}

  const GradedSpace& space() const { return space_; }
  std::size_t dim() const { return space_.dim(); }
  int parity(std::size_t k) const { return space_.parity(k); }
  const std::vector<std::string>& labels() const { return labels_; }
  const Vec& unit() const { return unit_; }
  void set_unit(Vec u) { unit_ = std::move(u); }

  /// Coordinates of e_i e_j.
  const SparseRow& product(std::size_t i, std::size_t j) const { return table_[i * dim() + j]; }
  void set_product(std::size_t i, std::size_t j, SparseRow r) { table_[i * dim() + j] = std::move(r); }

  Vec mul(const Vec& a, const Vec& b) const {
    Vec out(dim());
    for (std::size_t i = 0; i < dim(); ++i) {
      if (a[i].is_zero()) continue;
      for (std::size_t j = 0; j < dim(); ++j) {
        if (b[j].is_zero()) continue;
        Scalar ab = a[i] * b[j];
        for (const auto& [k, c] : product(i, j)) out[k] += ab * c;
      }
    }
    return out;
  }

  /// Left multiplication by e_k as a matrix on the algebra.
  SparseMatrix left_mult(std::size_t k) const {
    SparseMatrix m(dim(), dim());
    for (std::size_t j = 0; j < dim(); ++j)
      for (const auto& [r, c] : product(k, j)) m.push(r, j, c);
    m.normalize();
    return m;
  }

  bool respects_parity() const {
    for (std::size_t i = 0; i < dim(); ++i)
      for (std::size_t j = 0; j < dim(); ++j)
        for (const auto& e : product(i, j))
          if (parity(e.first) != (parity(i) ^ parity(j))) return false;
    return true;
  }

  bool unit_law_holds() const {
    for (std::size_t j = 0; j < dim(); ++j) {
      Vec e = unit_vec(dim(), j);
      if (mul(unit_, e) != e || mul(e, unit_) != e) return false;
    }
    return true;
  }

  /// Zero iff (e_i e_j) e_k = e_i (e_j e_k) for all basis triples.
  std::size_t associativity_failures() const {
    std::size_t bad = 0;
    for (std::size_t i = 0; i < dim(); ++i)
      for (std::size_t j = 0; j < dim(); ++j)
        for (std::size_t k = 0; k < dim(); ++k) {
          Vec lhs(dim()), rhs(dim());
          for (const auto& [p, c] : product(i, j))
            for (const auto& [q, d] : product(p, k)) lhs[q] += c * d;
          for (const auto& [p, c] : product(j, k))
            for (const auto& [q, d] : product(i, p)) rhs[q] += c * d;
          if (lhs != rhs) ++bad;
        }
    return bad;
  }

 private:
  GradedSpace space_;
  std::vector<std::string> labels_;
  std::vector<SparseRow> table_;
  Vec unit_;
};

namespace detail {

inline SparseRow to_sparse(const Vec& v) {
  SparseRow r;
  for (std::size_t k = 0; k < v.size(); ++k)
    if (!v[k].is_zero()) r.emplace_back(k, v[k]);
  return r;
}

inline Vec flatten(const Matrix& m) {
  Vec v;
  v.reserve(m.rows() * m.cols());
  for (std::size_t r = 0; r < m.rows(); ++r)
    for (std::size_t c = 0; c < m.cols(); ++c) v.push_back(m(r, c));
  return v;
}

}  // namespace detail

/// Subalgebra of End(V) spanned by the given homogeneous matrices (evens first).
inline AssocSuper matrix_algebra(const std::vector<Matrix>& basis, GradedSpace space, std::vector<std::string> labels) {
  std::size_t n = basis.empty() ? 0 : basis.front().rows();
  std::vector<Vec> flat;
  for (const auto& b : basis) flat.push_back(detail::flatten(b));
  BasisCoordinates coords(flat, n * n);
  AssocSuper a(space, std::move(labels));
  for (std::size_t i = 0; i < basis.size(); ++i)
    for (std::size_t j = 0; j < basis.size(); ++j)
      a.set_product(i, j, detail::to_sparse(coords.coordinates(detail::flatten(basis[i] * basis[j]))));
  a.set_unit(coords.coordinates(detail::flatten(Matrix::identity(n))));
  return a;
}

/// End(C^{m|n}) with matrix units E_rc, even units first.
inline AssocSuper make_M(std::size_t m, std::size_t n) {
  if (m == 0) throw std::invalid_argument("make_M: m must be positive");
  GradedSpace v(m, n);
  std::size_t d = m + n;
  std::vector<Matrix> basis;
  std::vector<std::string> labels;
  std::size_t evens = 0;
  for (int want : {0, 1})
    for (std::size_t r = 0; r < d; ++r)
      for (std::size_t c = 0; c < d; ++c) {
        if ((v.parity(r) ^ v.parity(c)) != want) continue;
        Matrix e(d, d);
        e(r, c) = Scalar(1);
        basis.push_back(std::move(e));
        labels.push_back("E" + std::to_string(r + 1) + "," + std::to_string(c + 1));
        if (want == 0) ++evens;
      }
  return matrix_algebra(basis, GradedSpace(evens, basis.size() - evens), std::move(labels));
}

/// Q(m): block matrices (A B; B A) on C^{m|m}.  Basis: diagonal pairs D_rc,
/// then antidiagonal pairs O_rc.
inline AssocSuper make_Q(std::size_t m) {
  if (m == 0) throw std::invalid_argument("make_Q: m must be positive");
  std::vector<Matrix> basis;
  std::vector<std::string> labels;
  for (int odd : {0, 1})
    for (std::size_t r = 0; r < m; ++r)
      for (std::size_t c = 0; c < m; ++c) {
        Matrix e(2 * m, 2 * m);
        e(r, c + (odd ? m : 0)) = Scalar(1);
        e(r + m, c + (odd ? 0 : m)) = Scalar(1);
        basis.push_back(std::move(e));
        labels.push_back((odd ? "O" : "D") + std::to_string(r + 1) + "," + std::to_string(c + 1));
      }
  return matrix_algebra(basis, GradedSpace(m * m, m * m), std::move(labels));
}

/// The matrix P with blocks (0 I; -I 0) on C^{m|m}; Q(m) is its supercommutant.
inline Matrix queer_P(std::size_t m) {
  Matrix p(2 * m, 2 * m);
  for (std::size_t k = 0; k < m; ++k) {
    p(k, k + m) = Scalar(1);
    p(k + m, k) = Scalar(-1);
  }
  return p;
}

// ---------------------------------------------------------------------------
// Clifford algebras

struct QuadraticPair {
  std::size_t r = 0;
  Matrix f;  // symmetric r x r

  QuadraticPair() = default;
  explicit QuadraticPair(Matrix form) : r(form.rows()), f(std::move(form)) {
    if (f.rows() != f.cols() || f != f.transpose()) throw std::invalid_argument("QuadraticPair: form must be symmetric");
  }
  static QuadraticPair identity(std::size_t r) { return QuadraticPair(Matrix::identity(r)); }
};

/// Subsets of {0..r-1} as bitmasks: even-size subsets first, then odd-size,
/// each ordered by size and then lexicographically.
inline std::vector<std::uint32_t> clifford_monomials(std::size_t r) {
  std::vector<std::uint32_t> out;
  for (int want : {0, 1})
    for (std::size_t s = 0; s <= r; ++s) {
      if (static_cast<int>(s & 1) != want) continue;
      std::vector<std::uint32_t> level;
      for (std::uint32_t mask = 0; mask < (1u << r); ++mask)
        if (static_cast<std::size_t>(__builtin_popcount(mask)) == s) level.push_back(mask);
      std::sort(level.begin(), level.end(), [](std::uint32_t a, std::uint32_t b) {
        // lexicographic on the increasing index sequence
        while (a && b) {
          int la = __builtin_ctz(a), lb = __builtin_ctz(b);
          if (la != lb) return la < lb;
          a &= a - 1;
          b &= b - 1;
        }
        return b != 0;
      });
      out.insert(out.end(), level.begin(), level.end());
    }
  return out;
}

/// Rewrites words in the Clifford generators into sorted square-free monomials
/// using x_i x_i = f_ii and x_j x_i = -x_i x_j + 2 f_ij.
class CliffordStraightener {
 public:
  explicit CliffordStraightener(const Matrix& f) : f_(f) {}

  using Word = std::vector<int>;
  using Combination = std::map<std::uint32_t, Scalar>;

  const Combination& straighten(const Word& w) {
    auto it = memo_.find(w);
    if (it != memo_.end()) return it->second;
    Combination out;
    std::size_t k = 0;
    while (k + 1 < w.size() && w[k] < w[k + 1]) ++k;
    if (k + 1 >= w.size()) {
      std::uint32_t mask = 0;
      for (int g : w) mask |= 1u << g;
      out[mask] = Scalar(1);
    } else {
      int a = w[k], b = w[k + 1];
      Word shorter(w.begin(), w.begin() + static_cast<std::ptrdiff_t>(k));
      shorter.insert(shorter.end(), w.begin() + static_cast<std::ptrdiff_t>(k + 2), w.end());
      const Scalar& fab = f_(static_cast<std::size_t>(a), static_cast<std::size_t>(b));
      if (a == b) {
        if (!fab.is_zero()) accumulate(out, straighten(shorter), fab);
      } else {
        Word swapped = w;
        std::swap(swapped[k], swapped[k + 1]);
        accumulate(out, straighten(swapped), Scalar(-1));
        if (!fab.is_zero()) accumulate(out, straighten(shorter), Scalar(2) * fab);
      }
    }
    return memo_.emplace(w, std::move(out)).first->second;
  }

  static Word word_of(std::uint32_t mask) {
    Word w;
    for (int k = 0; mask; ++k, mask >>= 1)
      if (mask & 1) w.push_back(k);
    return w;
  }

 private:
  static void accumulate(Combination& out, const Combination& in, const Scalar& c) {
    for (const auto& [m, v] : in) {
      Scalar& slot = out[m];
      slot += c * v;
      if (slot.is_zero()) out.erase(m);
    }
  }

  Matrix f_;
  std::map<Word, Combination> memo_;
};

inline std::string clifford_label(std::uint32_t mask) {
  if (mask == 0) return "1";
  std::string s;
  for (int k : CliffordStraightener::word_of(mask)) s += "x" + std::to_string(k + 1);
  return s;
}

inline AssocSuper clifford(const QuadraticPair& q) {
  auto monos = clifford_monomials(q.r);
  std::map<std::uint32_t, std::size_t> index;
  std::vector<std::string> labels;
  std::size_t evens = 0;
  for (std::size_t k = 0; k < monos.size(); ++k) {
    index[monos[k]] = k;
    labels.push_back(clifford_label(monos[k]));
    if (__builtin_popcount(monos[k]) % 2 == 0) ++evens;
  }
  AssocSuper a(GradedSpace(evens, monos.size() - evens), std::move(labels));
  CliffordStraightener st(q.f);
  for (std::size_t i = 0; i < monos.size(); ++i)
    for (std::size_t j = 0; j < monos.size(); ++j) {
      auto w = CliffordStraightener::word_of(monos[i]);
      auto wj = CliffordStraightener::word_of(monos[j]);
      w.insert(w.end(), wj.begin(), wj.end());
      SparseRow row;
      for (const auto& [m, c] : st.straighten(w)) row.emplace_back(index.at(m), c);
      std::sort(row.begin(), row.end(), [](const auto& x, const auto& y) { return x.first < y.first; });
      a.set_product(i, j, std::move(row));
    }
  a.set_unit(unit_vec(monos.size(), index.at(0)));
  return a;
}

// ---------------------------------------------------------------------------
// Centers, ideals, classification

/// Elements of the given parity commuting (ungraded) with every basis element.
inline Subspace ungraded_center_part(const AssocSuper& a, int parity) {
  std::vector<std::size_t> cols;
  for (std::size_t k = 0; k < a.dim(); ++k)
    if (a.parity(k) == parity) cols.push_back(k);
  RowEchelon eqs(cols.size());
  for (std::size_t b = 0; b < a.dim() && !eqs.full(); ++b) {
    // sum_u z_u (e_u e_b - e_b e_u) = 0, one equation per output coordinate
    std::vector<Vec> rows(a.dim(), Vec(cols.size()));
    for (std::size_t u = 0; u < cols.size(); ++u) {
      for (const auto& [k, c] : a.product(cols[u], b)) rows[k][u] += c;
      for (const auto& [k, c] : a.product(b, cols[u])) rows[k][u] -= c;
    }
    for (auto& r : rows)
      if (!is_zero_vec(r)) eqs.add(std::move(r));
  }
  Subspace out;
  for (const auto& sol : eqs.nullspace()) {
    Vec z(a.dim());
    for (std::size_t u = 0; u < cols.size(); ++u) z[cols[u]] = sol[u];
    out.basis.push_back(std::move(z));
  }
  out.space = parity == 0 ? GradedSpace(out.basis.size(), 0) : GradedSpace(0, out.basis.size());
  return out;
}

/// Z(|A|) intersected with the odd part.
inline Subspace odd_center(const AssocSuper& a) { return ungraded_center_part(a, 1); }

/// Dimension of the two-sided ideal generated by a vector.
inline std::size_t ideal_dimension(const AssocSuper& a, const Vec& seed) {
  RowEchelon span(a.dim());
  std::deque<Vec> queue;
  if (span.add(seed)) queue.push_back(seed);
  while (!queue.empty() && !span.full()) {
    Vec v = std::move(queue.front());
    queue.pop_front();
    for (std::size_t b = 0; b < a.dim(); ++b) {
      Vec e = unit_vec(a.dim(), b);
      for (Vec w : {a.mul(e, v), a.mul(v, e)})
        if (span.add(w)) queue.push_back(std::move(w));
    }
  }
  return span.rank();
}

/// Jacobson radical via the trace form tr(L_{xy}) (valid in characteristic 0).
inline std::vector<Vec> radical(const AssocSuper& a) {
  std::size_t n = a.dim();
  Vec tr(n);
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t j = 0; j < n; ++j)
      for (const auto& [r, c] : a.product(k, j))
        if (r == j) tr[k] += c;
  Matrix gram(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      for (const auto& [k, c] : a.product(i, j)) gram(i, j) += c * tr[k];
  return kernel_basis(gram);
}

struct SimpleType {
  enum Kind { M, Q, NotSimple } kind = NotSimple;
  std::size_t m = 0;
  std::size_t n = 0;

  std::string str() const {
    switch (kind) {
      case M: return "M(" + std::to_string(m) + "|" + std::to_string(n) + ")";
      case Q: return "Q(" + std::to_string(m) + ")";
      default: return "not simple";
    }
  }
  friend bool operator==(const SimpleType& x, const SimpleType& y) {
    return x.kind == y.kind && x.m == y.m && x.n == y.n;
  }
};

namespace detail {
inline bool isqrt_exact(std::size_t v, std::size_t& r) {
  r = 0;
  while ((r + 1) * (r + 1) <= v) ++r;
  return r * r == v;
}
}  // namespace detail

/// Decides simplicity and the normal form of a finite-dimensional superalgebra.
/// Simple iff the radical vanishes and the even part of Z(|A|) is one-dimensional
/// (a semisimple superalgebra has one such dimension per simple factor).
inline SimpleType classify_simple(const AssocSuper& a) {
  SimpleType out;
  if (a.dim() == 0) return out;
  if (!radical(a).empty()) return out;
  if (ungraded_center_part(a, 0).dim() != 1) return out;

  std::size_t d0 = a.space().even_dim, d1 = a.space().odd_dim;
  if (odd_center(a).dim() > 0) {
    std::size_t m;
    if (d0 != d1 || !detail::isqrt_exact(d0, m)) throw std::logic_error("classify_simple: inconsistent queer dimensions");
    out.kind = SimpleType::Q;
    out.m = m;
    return out;
  }
  std::size_t s, t;
  if (!detail::isqrt_exact(a.dim(), s) || d0 < d1 || !detail::isqrt_exact(d0 - d1, t) || (s + t) % 2 != 0)
    throw std::logic_error("classify_simple: inconsistent matrix dimensions");
  out.kind = SimpleType::M;
  out.m = (s + t) / 2;
  out.n = (s - t) / 2;
  return out;
}

/// Graded tensor product of algebras: (a (x) b)(a' (x) b') = (-1)^{|b||a'|} aa' (x) bb'.
inline AssocSuper tensor_algebras(const AssocSuper& x, const AssocSuper& y) {
  TensorBasis tb(x.space(), y.space());
  std::size_t dy = y.dim();
  std::vector<std::string> labels;
  for (const auto& [i, j] : tb.pairs) labels.push_back(x.labels()[i] + "(x)" + y.labels()[j]);
  AssocSuper out(tb.space, std::move(labels));
  for (std::size_t p = 0; p < tb.pairs.size(); ++p)
    for (std::size_t q = 0; q < tb.pairs.size(); ++q) {
      auto [a, b] = tb.pairs[p];
      auto [a2, b2] = tb.pairs[q];
      bool neg = y.parity(b) && x.parity(a2);
      SparseRow row;
      for (const auto& [k, c] : x.product(a, a2))
        for (const auto& [l, d] : y.product(b, b2)) row.emplace_back(tb.at(k, l, dy), neg ? -(c * d) : c * d);
      std::sort(row.begin(), row.end(), [](const auto& u, const auto& v) { return u.first < v.first; });
      out.set_product(p, q, std::move(row));
    }
  Vec unit(tb.space.dim());
  for (std::size_t i = 0; i < x.dim(); ++i)
    for (std::size_t j = 0; j < dy; ++j)
      if (!x.unit()[i].is_zero() && !y.unit()[j].is_zero()) unit[tb.at(i, j, dy)] = x.unit()[i] * y.unit()[j];
  out.set_unit(std::move(unit));
  return out;
}

// ---------------------------------------------------------------------------
// Modules

struct ModuleAction {
  GradedSpace carrier;
  std::vector<SparseMatrix> action;  // one per algebra basis element
  std::vector<int> parities;

  /// Number of basis pairs (i, j) where rho(e_i) rho(e_j) != rho(e_i e_j),
  /// plus parity and unit violations.
  std::size_t homomorphism_failures(const AssocSuper& a) const {
    std::size_t bad = 0;
    std::size_t n = carrier.dim();
    for (std::size_t k = 0; k < a.dim(); ++k)
      if (matrix_parity(action[k], carrier, carrier) != a.parity(k) && !action[k].is_zero()) ++bad;
    SparseMatrix unit(n, n);
    for (std::size_t k = 0; k < a.dim(); ++k)
      if (!a.unit()[k].is_zero()) unit = unit + a.unit()[k] * action[k];
    if (!(unit == SparseMatrix::identity(n))) ++bad;
    for (std::size_t i = 0; i < a.dim(); ++i)
      for (std::size_t j = 0; j < a.dim(); ++j) {
        SparseMatrix rhs(n, n);
        for (const auto& [k, c] : a.product(i, j)) rhs = rhs + c * action[k];
        if (!(action[i] * action[j] == rhs)) ++bad;
      }
    return bad;
  }
};

/// Tautological action of a matrix algebra built from explicit matrices.
inline ModuleAction natural_module(const std::vector<Matrix>& basis, GradedSpace carrier) {
  ModuleAction m;
  m.carrier = carrier;
  for (const auto& b : basis) {
    m.action.push_back(SparseMatrix::from_dense(b));
    m.parities.push_back(matrix_parity(b, carrier, carrier));
  }
  return m;
}

/// Action of the basis of make_M(m, n) on C^{m|n}.
inline ModuleAction natural_module_M(std::size_t m, std::size_t n) {
  AssocSuper a = make_M(m, n);
  GradedSpace v(m, n);
  std::vector<Matrix> basis;
  for (const auto& lab : a.labels()) {
    auto comma = lab.find(',');
    std::size_t r = std::stoul(lab.substr(1, comma - 1)) - 1, c = std::stoul(lab.substr(comma + 1)) - 1;
    Matrix e(m + n, m + n);
    e(r, c) = Scalar(1);
    basis.push_back(std::move(e));
  }
  return natural_module(basis, v);
}

/// Action of the basis of make_Q(m) on C^{m|m}.
inline ModuleAction natural_module_Q(std::size_t m) {
  std::vector<Matrix> basis;
  for (int odd : {0, 1})
    for (std::size_t r = 0; r < m; ++r)
      for (std::size_t c = 0; c < m; ++c) {
        Matrix e(2 * m, 2 * m);
        e(r, c + (odd ? m : 0)) = Scalar(1);
        e(r + m, c + (odd ? 0 : m)) = Scalar(1);
        basis.push_back(std::move(e));
      }
  return natural_module(basis, GradedSpace(m, m));
}

/// rho(a (x) b) = rho1(a) (x) rho2(b) for the graded tensor product algebra.
inline ModuleAction tensor_modules(const AssocSuper& x, const ModuleAction& mx, const AssocSuper& y,
                                   const ModuleAction& my) {
  TensorBasis tb(x.space(), y.space());
  TensorBasis carrier(mx.carrier, my.carrier);
  ModuleAction out;
  out.carrier = carrier.space;
  for (const auto& [i, j] : tb.pairs) {
    out.action.push_back(graded_tensor_sparse(mx.action[i], mx.carrier, mx.carrier, mx.parities[i], my.action[j],
                                              my.carrier, my.carrier, my.parities[j]));
    out.parities.push_back((x.parity(i) + y.parity(j)) & 1);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Clifford irreducible module

struct CongruenceDiagonal {
  Matrix change;    // rows: new basis vectors y_k in terms of the x_j
  Vec diagonal;     // f(y_k, y_k)
};

/// Diagonalizes a symmetric form by congruence; throws if it is degenerate.
inline CongruenceDiagonal diagonalize_form(const Matrix& f) {
  std::size_t r = f.rows();
  std::vector<Vec> y;
  for (std::size_t k = 0; k < r; ++k) y.push_back(unit_vec(r, k));
  auto form = [&](const Vec& u, const Vec& v) {
    Scalar s;
    for (std::size_t i = 0; i < r; ++i) {
      if (u[i].is_zero()) continue;
      for (std::size_t j = 0; j < r; ++j)
        if (!v[j].is_zero() && !f(i, j).is_zero()) s += u[i] * f(i, j) * v[j];
    }
    return s;
  };
  CongruenceDiagonal out;
  for (std::size_t k = 0; k < r; ++k) {
    std::size_t p = k;
    while (p < r && form(y[p], y[p]).is_zero()) ++p;
    if (p == r) {
      bool found = false;
      for (std::size_t i = k; i < r && !found; ++i)
        for (std::size_t j = i + 1; j < r && !found; ++j)
          if (!form(y[i], y[j]).is_zero()) {
            for (std::size_t c = 0; c < r; ++c) y[i][c] += y[j][c];
            p = i;
            found = true;
          }
      if (!found) throw std::domain_error("quadratic form is degenerate");
    }
    std::swap(y[k], y[p]);
    Scalar d = form(y[k], y[k]);
    Scalar dinv = d.inverse();
    for (std::size_t l = k + 1; l < r; ++l) {
      Scalar c = form(y[l], y[k]) * dinv;
      if (c.is_zero()) continue;
      for (std::size_t t = 0; t < r; ++t) y[l][t] -= c * y[k][t];
    }
    out.diagonal.push_back(std::move(d));
  }
  out.change = Matrix::from_rows(y, r);
  return out;
}

namespace detail {

/// Operator acting by the 2x2 block x on tensor factor `factor` of (C^{1|1})^{(x)count},
/// with the Koszul sign from the parities of the preceding factors.  States are
/// bitmasks (bit set = odd vector in that factor).
inline SparseMatrix factor_operator(const Matrix& x, std::size_t factor, std::size_t count,
                                    const std::vector<std::size_t>& pos) {
  std::size_t n = std::size_t{1} << count;
  SparseMatrix m(n, n);
  for (std::uint32_t s = 0; s < n; ++s) {
    int bit = (s >> factor) & 1;
    bool neg = __builtin_popcount(s & ((1u << factor) - 1)) & 1;
    for (int out = 0; out < 2; ++out) {
      const Scalar& v = x(static_cast<std::size_t>(out), static_cast<std::size_t>(bit));
      if (v.is_zero()) continue;
      std::uint32_t t = (s & ~(1u << factor)) | (static_cast<std::uint32_t>(out) << factor);
      m.push(pos[t], pos[s], neg ? -v : v);
    }
  }
  m.normalize();
  return m;
}

}  // namespace detail

/// The irreducible module of C(V, f) for nondegenerate f, as an action of the
/// monomial basis of clifford(q).
inline ModuleAction clifford_irrep(const QuadraticPair& q) {
  std::size_t r = q.r;
  CongruenceDiagonal cd = diagonalize_form(q.f);
  std::size_t factors = (r + 1) / 2;
  std::size_t n = std::size_t{1} << factors;

  // even-first ordering of the bitmask states
  std::vector<std::size_t> pos(n);
  std::size_t next = 0;
  for (int want : {0, 1})
    for (std::uint32_t s = 0; s < n; ++s)
      if (__builtin_popcount(s) % 2 == want) pos[s] = next++;
  std::size_t evens = factors ? n / 2 : 1;

  std::vector<SparseMatrix> ys;
  for (std::size_t k = 0; k < r; ++k) {
    std::size_t factor = k / 2;
    const Scalar& da = cd.diagonal[2 * factor];
    Matrix x(2, 2);
    if (k % 2 == 0) {
      x(0, 1) = da;
      x(1, 0) = Scalar(1);
    } else {
      Scalar v = adjoin_sqrt(-cd.diagonal[k] / da);
      x(0, 1) = -(da * v);
      x(1, 0) = v;
    }
    ys.push_back(detail::factor_operator(x, factor, factors, pos));
  }

  // x_j = sum_k (P^{-1})_{jk} y_k
  Matrix pinv = r ? inverse(cd.change) : Matrix();
  std::vector<SparseMatrix> gens;
  for (std::size_t j = 0; j < r; ++j) {
    SparseMatrix g(n, n);
    for (std::size_t k = 0; k < r; ++k)
      if (!pinv(j, k).is_zero()) g = g + pinv(j, k) * ys[k];
    gens.push_back(std::move(g));
  }

  ModuleAction out;
  out.carrier = GradedSpace(evens, n - evens);
  for (std::uint32_t mask : clifford_monomials(r)) {
    SparseMatrix m = SparseMatrix::identity(n);
    for (int g : CliffordStraightener::word_of(mask)) m = m * gens[static_cast<std::size_t>(g)];
    out.action.push_back(std::move(m));
    out.parities.push_back(__builtin_popcount(mask) % 2);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Density oracle

struct DensityType {
  enum Kind { Full, QComm, Smaller } kind = Smaller;
  std::size_t closure_dim = 0;

  bool irreducible() const { return kind != Smaller; }
  std::string str() const {
    switch (kind) {
      case Full: return "Full";
      case QComm: return "QComm";
      default: return "Smaller(" + std::to_string(closure_dim) + ")";
    }
  }
};

/// Dimension of the unital associative algebra generated by the operators.
/// Projectors onto the joint eigenspaces of the diagonal generators lie in the
/// algebra (Lagrange interpolation), so A = ⊕ P_μ A P_ν and the closure is
/// computed one block pair at a time.
inline std::size_t span_closure_dimension(const std::vector<SparseMatrix>& ops, std::size_t n) {
  std::vector<std::vector<std::string>> keys(n);
  for (const auto& g : ops) {
    bool diagonal = true;
    for (std::size_t r = 0; r < n && diagonal; ++r)
      for (const auto& [c, x] : g.row(r)) diagonal = diagonal && c == r;
    if (!diagonal) continue;
    for (std::size_t r = 0; r < n; ++r) keys[r].push_back(g.row(r).empty() ? "0" : g.row(r).front().second.str());
  }
  std::map<std::vector<std::string>, std::size_t> ids;
  std::vector<std::size_t> cls(n), pos(n);
  std::vector<std::vector<std::size_t>> members;
  for (std::size_t r = 0; r < n; ++r) {
    auto [it, fresh] = ids.emplace(keys[r], members.size());
    if (fresh) members.emplace_back();
    cls[r] = it->second;
    pos[r] = members[cls[r]].size();
    members[cls[r]].push_back(r);
  }
  std::size_t nc = members.size();

  // pieces P_μ g P_ν as dense d_μ × d_ν blocks
  struct Piece {
    std::size_t mu, nu;
    Matrix m;
  };
  std::vector<std::vector<Piece>> by_source(nc);
  for (const auto& g : ops) {
    std::map<std::pair<std::size_t, std::size_t>, Matrix> blocks;
    for (std::size_t r = 0; r < n; ++r)
      for (const auto& [c, x] : g.row(r)) {
        auto key = std::make_pair(cls[r], cls[c]);
        auto it = blocks.find(key);
        if (it == blocks.end()) it = blocks.emplace(key, Matrix(members[cls[r]].size(), members[cls[c]].size())).first;
        it->second(pos[r], pos[c]) = x;
      }
    for (auto& [key, m] : blocks) by_source[key.second].push_back({key.first, key.second, std::move(m)});
  }

  std::vector<RowEchelon> span;
  for (std::size_t mu = 0; mu < nc; ++mu)
    for (std::size_t rho = 0; rho < nc; ++rho) span.emplace_back(members[mu].size() * members[rho].size());
  auto flat = [](const Matrix& m) {
    Vec v(m.rows() * m.cols());
    for (std::size_t r = 0; r < m.rows(); ++r)
      for (std::size_t c = 0; c < m.cols(); ++c) v[r * m.cols() + c] = m(r, c);
    return v;
  };
  struct Item {
    std::size_t nu, rho;
    Matrix m;
  };
  std::deque<Item> queue;
  for (std::size_t mu = 0; mu < nc; ++mu) {
    Matrix id = Matrix::identity(members[mu].size());
    span[mu * nc + mu].add(flat(id));
    queue.push_back({mu, mu, std::move(id)});
  }
  while (!queue.empty()) {
    Item it = std::move(queue.front());
    queue.pop_front();
    for (const auto& p : by_source[it.nu]) {
      RowEchelon& target = span[p.mu * nc + it.rho];
      if (target.full()) continue;
      Matrix prod = p.m * it.m;
      if (target.add(flat(prod))) queue.push_back({p.mu, it.rho, std::move(prod)});
    }
  }
  std::size_t dim = 0;
  for (const auto& e : span) dim += e.rank();
  return dim;
}

inline DensityType density_type(const std::vector<SparseMatrix>& ops, const std::vector<int>& parities,
                                const GradedSpace& carrier) {
  DensityType out;
  std::size_t n = carrier.dim();
  out.closure_dim = span_closure_dimension(ops, n);
  if (out.closure_dim == n * n) {
    out.kind = DensityType::Full;
    return out;
  }
  std::size_t m = carrier.even_dim;
  if (carrier.odd_dim == m && out.closure_dim == 2 * m * m) {
    for (const auto& phi : commutant(ops, parities, carrier, 1)) {
      Matrix sq = phi * phi;
      Scalar c = sq(0, 0);
      if (!c.is_zero() && sq == c * Matrix::identity(n)) {
        out.kind = DensityType::QComm;
        break;
      }
    }
  }
  return out;
}

inline DensityType density_type(const ModuleAction& act) {
  return density_type(act.action, act.parities, act.carrier);
}

}  // namespace qsuper
