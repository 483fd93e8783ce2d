#pragma once

// The queer Lie superalgebra q(n), realised on the traceless slice
// {(A, B) : tr A = tr B = 0} of q~(n) = {(A, B) : tr B = 0}, where (A, B) stands
// for the block matrix (A B; B A) of size 2(n+1).  Brackets are taken in q~(n)
// and projected back along C*I.

#include "qsuper/lie.hpp"

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace qsuper {

/// Element of the slice: (A, B) with both traces zero.
struct QueerElement {
  Matrix a;
  Matrix b;
};

/// Weight of h0-bar, in epsilon coordinates normalised to sum zero.
using Weight = std::vector<Scalar>;

inline Weight normalize_weight(Weight w) {
  if (w.empty()) return w;
  Scalar s;
  for (const auto& x : w) s += x;
  Scalar shift = s / Scalar(static_cast<std::int64_t>(w.size()));
  if (!shift.is_zero())
    for (auto& x : w) x -= shift;
  return w;
}

inline std::string weight_str(const Weight& w) {
  std::string s = "(";
  for (std::size_t k = 0; k < w.size(); ++k) s += (k ? "," : "") + w[k].str();
  return s + ")";
}

struct QueerBasisEntry {
  bool odd = false;
  bool cartan = false;
  std::size_t i = 0;  // 0-based; for Cartan entries: h_i = E_ii - E_{i+1,i+1}
  std::size_t j = 0;
};

class QueerAlgebra {
 public:
  explicit QueerAlgebra(std::size_t n) : n_(n), size_(n + 1) {
    if (n < 1) throw std::invalid_argument("q(n) needs n >= 1");
    for (int odd : {0, 1}) {
      for (std::size_t i = 0; i < n_; ++i) entries_.push_back({odd == 1, true, i, i + 1});
      for (std::size_t i = 0; i < size_; ++i)
        for (std::size_t j = i + 1; j < size_; ++j) entries_.push_back({odd == 1, false, i, j});
      for (std::size_t i = 0; i < size_; ++i)
        for (std::size_t j = 0; j < i; ++j) entries_.push_back({odd == 1, false, i, j});
    }
    std::size_t half = entries_.size() / 2;
    std::vector<std::string> labels;
    std::vector<Vec> flat;
    for (const auto& e : entries_) {
      labels.push_back(label(e));
      elements_.push_back(element_of(e));
      flat.push_back(flatten(elements_.back()));
    }
    coords_ = BasisCoordinates(flat, 2 * size_ * size_);
    g_ = LieSuper(GradedSpace(half, half), labels);
    for (std::size_t x = 0; x < entries_.size(); ++x)
      for (std::size_t y = 0; y < entries_.size(); ++y)
        g_.set_bracket(x, y, detail::to_sparse(coordinates(bracket(elements_[x], elements_[y]))));
    std::vector<Vec> toral;
    for (std::size_t k = 0; k < n_; ++k) toral.push_back(unit_vec(dim(), k));
    g_.set_toral(std::move(toral));
  }

  std::size_t n() const { return n_; }
  std::size_t dim() const { return entries_.size(); }
  const LieSuper& lie() const { return g_; }
  const std::vector<QueerBasisEntry>& entries() const { return entries_; }
  const QueerElement& element(std::size_t k) const { return elements_[k]; }

  /// Bracket in q~(n) followed by projection to the slice.
  QueerElement bracket(const QueerElement& x, const QueerElement& y) const {
    bool xo = !x.b.is_zero(), yo = !y.b.is_zero();
    if (!x.a.is_zero() && xo) throw std::invalid_argument("bracket: inhomogeneous element");
    if (!y.a.is_zero() && yo) throw std::invalid_argument("bracket: inhomogeneous element");
    QueerElement out{Matrix(size_, size_), Matrix(size_, size_)};
    if (!xo && !yo) {
      out.a = x.a * y.a - y.a * x.a;
    } else if (!xo && yo) {
      out.b = x.a * y.b - y.b * x.a;
    } else if (xo && !yo) {
      out.b = x.b * y.a - y.a * x.b;
    } else {
      out.a = x.b * y.b + y.b * x.b;
      project(out.a);
    }
    return out;
  }

  Vec coordinates(const QueerElement& x) const { return coords_.coordinates(flatten(x)); }

  QueerElement element_of(const Vec& coords) const {
    QueerElement out{Matrix(size_, size_), Matrix(size_, size_)};
    for (std::size_t k = 0; k < dim(); ++k) {
      if (coords[k].is_zero()) continue;
      out.a = out.a + coords[k] * elements_[k].a;
      out.b = out.b + coords[k] * elements_[k].b;
    }
    return out;
  }

  /// Index of e_ij (i != j) or e'_ij; 0-based.
  std::size_t index_of(std::size_t i, std::size_t j, bool odd) const {
    for (std::size_t k = 0; k < entries_.size(); ++k) {
      const auto& e = entries_[k];
      if (!e.cartan && e.odd == odd && e.i == i && e.j == j) return k;
    }
    throw std::out_of_range("no such root vector");
  }
  /// Index of h_i = E_ii - E_{i+1,i+1} (or its odd twin); 0-based i < n.
  std::size_t cartan_index(std::size_t i, bool odd) const { return (odd ? dim() / 2 : 0) + i; }

  /// Slice element for E_ii - E_jj (even) or its odd counterpart.
  Vec diagonal_difference(std::size_t i, std::size_t j, bool odd) const {
    QueerElement x{Matrix(size_, size_), Matrix(size_, size_)};
    Matrix& m = odd ? x.b : x.a;
    m(i, i) += Scalar(1);
    m(j, j) -= Scalar(1);
    return coordinates(x);
  }

  /// The automorphism (A, B) -> (g A g^{-1}, g B g^{-1}) as a matrix on the basis.
  Matrix conjugation(const Matrix& gm) const {
    Matrix ginv = inverse(gm);
    Matrix out(dim(), dim());
    for (std::size_t k = 0; k < dim(); ++k) {
      QueerElement y{gm * elements_[k].a * ginv, gm * elements_[k].b * ginv};
      Vec c = coordinates(y);
      for (std::size_t r = 0; r < dim(); ++r) out(r, k) = c[r];
    }
    return out;
  }

  // --- root data -------------------------------------------------------------

  /// epsilon_i - epsilon_j in coordinates.
  Weight root(std::size_t i, std::size_t j) const {
    Weight w(size_);
    w[i] += Scalar(1);
    w[j] -= Scalar(1);
    return w;
  }
  std::vector<Weight> positive_roots() const {
    std::vector<Weight> out;
    for (std::size_t i = 0; i < size_; ++i)
      for (std::size_t j = i + 1; j < size_; ++j) out.push_back(root(i, j));
    return out;
  }
  std::vector<Weight> simple_roots() const {
    std::vector<Weight> out;
    for (std::size_t i = 0; i < n_; ++i) out.push_back(root(i, i + 1));
    return out;
  }
  std::vector<Weight> roots() const {
    std::vector<Weight> out = positive_roots();
    for (std::size_t k = 0, m = out.size(); k < m; ++k) {
      Weight neg = out[k];
      for (auto& x : neg) x = -x;
      out.push_back(neg);
    }
    return out;
  }

  /// Weight of basis element k (zero for Cartan elements).
  Weight basis_weight(std::size_t k) const {
    const auto& e = entries_[k];
    return e.cartan ? Weight(size_) : root(e.i, e.j);
  }

  /// Basis indices spanning q_alpha (alpha = 0 gives the Cartan subalgebra).
  std::vector<std::size_t> root_space(const Weight& alpha) const {
    Weight a = normalize_weight(alpha);
    std::vector<std::size_t> out;
    for (std::size_t k = 0; k < dim(); ++k)
      if (basis_weight(k) == a) out.push_back(k);
    if (out.empty()) throw std::invalid_argument("not a root: " + weight_str(a));
    return out;
  }

  /// Weight of x under ad(h0-bar), or nullopt if x is not a weight vector.
  std::optional<Weight> weight_of(const Vec& x) const {
    if (is_zero_vec(x)) return std::nullopt;
    // evaluate on E_ii - E_{i+1,i+1}; recover coordinates with sum zero
    std::vector<Scalar> vals;
    for (std::size_t i = 0; i < n_; ++i) {
      Vec hx = g_.bracket(unit_vec(dim(), cartan_index(i, false)), x);
      std::size_t p = 0;
      while (x[p].is_zero()) ++p;
      Scalar c = hx[p] / x[p];
      Vec expect = x;
      for (auto& s : expect) s = s * c;
      if (expect != hx) return std::nullopt;
      vals.push_back(c);
    }
    // w_i - w_{i+1} = vals[i] with sum w = 0
    Weight w(size_);
    for (std::size_t i = 1; i < size_; ++i) w[i] = w[i - 1] - vals[i - 1];
    return normalize_weight(w);
  }

  /// Coefficients of alpha in the simple roots; nullopt if alpha is not in the root lattice.
  std::optional<std::vector<Scalar>> simple_root_coordinates(const Weight& alpha) const {
    Weight a = normalize_weight(alpha);
    std::vector<Scalar> c(n_);
    Scalar run;
    for (std::size_t i = 0; i < n_; ++i) {
      run += a[i];
      c[i] = run;
    }
    if (!(run + a[n_]).is_zero()) return std::nullopt;
    return c;
  }

  /// Height of an element of the positive root lattice Q+; nullopt otherwise.
  std::optional<std::int64_t> height(const Weight& alpha) const {
    auto c = simple_root_coordinates(alpha);
    if (!c) return std::nullopt;
    std::int64_t h = 0;
    for (const auto& x : *c) {
      if (!x.in_base_field()) return std::nullopt;
      Gauss g = x.base_coefficient();
      if (!g.im.is_zero() || g.re.sign() < 0) return std::nullopt;
      if (!g.re.is_integer()) return std::nullopt;
      h += g.re.to_int64();
    }
    return h;
  }

  // --- triangular decomposition ------------------------------------------------

  std::vector<std::size_t> cartan_indices() const { return select([](const QueerBasisEntry& e) { return e.cartan; }); }
  std::vector<std::size_t> positive_indices() const {
    return select([](const QueerBasisEntry& e) { return !e.cartan && e.i < e.j; });
  }
  std::vector<std::size_t> negative_indices() const {
    return select([](const QueerBasisEntry& e) { return !e.cartan && e.i > e.j; });
  }
  std::vector<std::size_t> borel_indices() const {
    return select([](const QueerBasisEntry& e) { return e.cartan || e.i < e.j; });
  }

  LieSuper subalgebra(const std::vector<std::size_t>& indices) const {
    std::vector<Vec> basis;
    std::vector<std::string> labels;
    for (auto k : indices) {
      basis.push_back(unit_vec(dim(), k));
      labels.push_back(g_.labels()[k]);
    }
    return restrict_to(g_, basis, labels);
  }

 private:
  template <class Pred>
  std::vector<std::size_t> select(Pred p) const {
    std::vector<std::size_t> out;
    for (std::size_t k = 0; k < entries_.size(); ++k)
      if (p(entries_[k])) out.push_back(k);
    return out;
  }

  static std::string label(const QueerBasisEntry& e) {
    std::string p = e.odd ? "'" : "";
    if (e.cartan) return "h" + p + std::to_string(e.i + 1);
    return "e" + p + std::to_string(e.i + 1) + std::to_string(e.j + 1);
  }

  QueerElement element_of(const QueerBasisEntry& e) const {
    QueerElement x{Matrix(size_, size_), Matrix(size_, size_)};
    Matrix& m = e.odd ? x.b : x.a;
    if (e.cartan) {
      m(e.i, e.i) = Scalar(1);
      m(e.j, e.j) = Scalar(-1);
    } else {
      m(e.i, e.j) = Scalar(1);
    }
    return x;
  }

  void project(Matrix& a) const {
    Scalar tr;
    for (std::size_t k = 0; k < size_; ++k) tr += a(k, k);
    if (tr.is_zero()) return;
    Scalar c = tr / Scalar(static_cast<std::int64_t>(size_));
    for (std::size_t k = 0; k < size_; ++k) a(k, k) -= c;
  }

  Vec flatten(const QueerElement& x) const {
    Vec v = detail::flatten(x.a);
    Vec w = detail::flatten(x.b);
    v.insert(v.end(), w.begin(), w.end());
    return v;
  }

  std::size_t n_;
  std::size_t size_;
  std::vector<QueerBasisEntry> entries_;
  std::vector<QueerElement> elements_;
  BasisCoordinates coords_;
  LieSuper g_;
};

struct CartanGenerationReport {
  bool identity_holds = true;  // e_ii - e_jj = 1/2 [e'_ii - e'_jj, e'_ii + e'_jj - 2 e'_kk]
  std::size_t triples_checked = 0;
  std::size_t odd_square_rank = 0;  // dim span [h1, h1]
  std::size_t even_cartan_dim = 0;  // dim h0
  bool spans() const { return odd_square_rank == even_cartan_dim; }
  bool ok() const { return identity_holds && spans(); }
};

inline CartanGenerationReport cartan_generation_check(const QueerAlgebra& q) {
  CartanGenerationReport r;
  std::size_t size = q.n() + 1;
  const LieSuper& g = q.lie();
  for (std::size_t i = 0; i < size; ++i)
    for (std::size_t j = 0; j < size; ++j)
      for (std::size_t k = 0; k < size; ++k) {
        if (i == j || k == i || k == j) continue;
        Vec lhs = q.diagonal_difference(i, j, false);
        Vec u = q.diagonal_difference(i, j, true);
        Vec w = q.diagonal_difference(i, k, true);
        Vec w2 = q.diagonal_difference(j, k, true);
        for (std::size_t t = 0; t < w.size(); ++t) w[t] += w2[t];  // e'_ii + e'_jj - 2 e'_kk
        Vec rhs = g.bracket(u, w);
        for (auto& s : rhs) s = s * Scalar(1, 2);
        if (rhs != lhs) r.identity_holds = false;
        ++r.triples_checked;
      }
  std::vector<Vec> h1;
  for (std::size_t i = 0; i < q.n(); ++i) h1.push_back(unit_vec(q.dim(), q.cartan_index(i, true)));
  r.odd_square_rank = bracket_span(g, h1, h1).size();
  r.even_cartan_dim = q.n();
  return r;
}

}  // namespace qsuper
