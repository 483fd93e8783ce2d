#pragma once

// Finite-dimensional commutative unital coefficient algebras with a declared
// maximal spectrum, their ideals, and finite abelian group actions.

#include "qsuper/lie.hpp"

#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

namespace qsuper {

/// A maximal ideal, stored as its character A -> C (values on the basis).
struct MaxIdeal {
  std::string label;
  Vec character;
};

class CoeffAlgebra {
 public:
  CoeffAlgebra() = default;
  CoeffAlgebra(std::vector<std::string> labels, std::string tag)
      : labels_(std::move(labels)), tag_(std::move(tag)), table_(labels_.size() * labels_.size()), unit_(labels_.size()) {}

  std::size_t dim() const { return labels_.size(); }
  const std::vector<std::string>& labels() const { return labels_; }
  const std::string& tag() const { return tag_; }
  const Vec& unit() const { return unit_; }
  void set_unit(Vec u) { unit_ = std::move(u); }
  const std::vector<MaxIdeal>& maxspec() const { return maxspec_; }
  void add_max_ideal(MaxIdeal m) { maxspec_.push_back(std::move(m)); }

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

  /// Multiplication by a as a matrix.
  Matrix mult_matrix(const Vec& a) const {
    Matrix m(dim(), dim());
    for (std::size_t j = 0; j < dim(); ++j) {
      Vec col = mul(a, unit_vec(dim(), j));
      for (std::size_t r = 0; r < dim(); ++r) m(r, j) = col[r];
    }
    return m;
  }

  Scalar evaluate(const MaxIdeal& m, const Vec& a) const {
    Scalar s;
    for (std::size_t k = 0; k < dim(); ++k)
      if (!a[k].is_zero()) s += a[k] * m.character[k];
    return s;
  }

  bool is_commutative() const {
    for (std::size_t i = 0; i < dim(); ++i)
      for (std::size_t j = 0; j < i; ++j)
        if (product(i, j) != product(j, i)) return false;
    return true;
  }

  std::size_t associativity_failures() const {
    std::size_t bad = 0;
    for (std::size_t i = 0; i < dim(); ++i)
      for (std::size_t j = 0; j < dim(); ++j)
        for (std::size_t k = 0; k < dim(); ++k) {
          Vec ei = unit_vec(dim(), i), ej = unit_vec(dim(), j), ek = unit_vec(dim(), k);
          if (mul(mul(ei, ej), ek) != mul(ei, mul(ej, ek))) ++bad;
        }
    return bad;
  }

  bool unit_law_holds() const {
    for (std::size_t j = 0; j < dim(); ++j)
      if (mul(unit_, unit_vec(dim(), j)) != unit_vec(dim(), j)) return false;
    return true;
  }

  /// Each declared character is a unital algebra homomorphism.
  bool maxspec_valid() const {
    for (const auto& m : maxspec_) {
      if (!evaluate(m, unit_).is_one()) return false;
      for (std::size_t i = 0; i < dim(); ++i)
        for (std::size_t j = 0; j < dim(); ++j)
          if (evaluate(m, mul(unit_vec(dim(), i), unit_vec(dim(), j))) != m.character[i] * m.character[j])
            return false;
    }
    return true;
  }

  std::size_t max_ideal_index(const std::string& label) const {
    for (std::size_t k = 0; k < maxspec_.size(); ++k)
      if (maxspec_[k].label == label) return k;
    throw std::out_of_range("no maximal ideal " + label);
  }

 private:
  std::vector<std::string> labels_;
  std::string tag_;
  std::vector<SparseRow> table_;
  Vec unit_;
  std::vector<MaxIdeal> maxspec_;
};

// ---------------------------------------------------------------------------
// Ideals

struct IdealRep {
  std::vector<Vec> basis;  // reduced echelon rows
  std::size_t dim() const { return basis.size(); }
};

inline IdealRep span_ideal(const CoeffAlgebra& a, const std::vector<Vec>& vs) {
  return IdealRep{span_basis(vs, a.dim())};
}

inline IdealRep ideal_generated(const CoeffAlgebra& a, const std::vector<Vec>& gens) {
  std::vector<Vec> all;
  for (const auto& g : gens)
    for (std::size_t k = 0; k < a.dim(); ++k) all.push_back(a.mul(unit_vec(a.dim(), k), g));
  return span_ideal(a, all);
}

inline IdealRep zero_ideal() { return IdealRep{}; }
inline IdealRep whole_algebra(const CoeffAlgebra& a) { return ideal_generated(a, {a.unit()}); }

inline bool ideal_contains(const IdealRep& i, const Vec& v, std::size_t dim) {
  RowEchelon e(dim);
  for (const auto& b : i.basis) e.add(b);
  return e.contains(v);
}

inline bool ideal_subset(const CoeffAlgebra& a, const IdealRep& i, const IdealRep& j) {
  RowEchelon e(a.dim());
  for (const auto& b : j.basis) e.add(b);
  for (const auto& b : i.basis)
    if (!e.contains(b)) return false;
  return true;
}

inline bool ideal_equal(const CoeffAlgebra& a, const IdealRep& i, const IdealRep& j) {
  return i.dim() == j.dim() && ideal_subset(a, i, j);
}

inline bool is_ideal(const CoeffAlgebra& a, const IdealRep& i) {
  RowEchelon e(a.dim());
  for (const auto& b : i.basis) e.add(b);
  for (const auto& b : i.basis)
    for (std::size_t k = 0; k < a.dim(); ++k)
      if (!e.contains(a.mul(unit_vec(a.dim(), k), b))) return false;
  return true;
}

inline IdealRep ideal_product(const CoeffAlgebra& a, const IdealRep& i, const IdealRep& j) {
  std::vector<Vec> all;
  for (const auto& x : i.basis)
    for (const auto& y : j.basis) all.push_back(a.mul(x, y));
  return span_ideal(a, all);
}

inline IdealRep ideal_sum(const CoeffAlgebra& a, const IdealRep& i, const IdealRep& j) {
  std::vector<Vec> all = i.basis;
  all.insert(all.end(), j.basis.begin(), j.basis.end());
  return span_ideal(a, all);
}

inline IdealRep ideal_power(const CoeffAlgebra& a, const IdealRep& i, std::size_t k) {
  IdealRep out = whole_algebra(a);
  for (std::size_t e = 0; e < k; ++e) out = ideal_product(a, out, i);
  return out;
}

inline IdealRep ideal_intersection(const CoeffAlgebra& a, const IdealRep& i, const IdealRep& j) {
  // x = sum c_k i_k = sum d_l j_l
  std::size_t n = a.dim();
  Matrix m(n, i.dim() + j.dim());
  for (std::size_t k = 0; k < i.dim(); ++k)
    for (std::size_t r = 0; r < n; ++r) m(r, k) = i.basis[k][r];
  for (std::size_t l = 0; l < j.dim(); ++l)
    for (std::size_t r = 0; r < n; ++r) m(r, i.dim() + l) = -j.basis[l][r];
  std::vector<Vec> out;
  for (const auto& sol : kernel_basis(m)) {
    Vec x(n);
    for (std::size_t k = 0; k < i.dim(); ++k)
      if (!sol[k].is_zero())
        for (std::size_t r = 0; r < n; ++r) x[r] += sol[k] * i.basis[k][r];
    out.push_back(std::move(x));
  }
  return span_ideal(a, out);
}

inline IdealRep max_ideal(const CoeffAlgebra& a, std::size_t k) {
  Matrix row = Matrix::from_rows({a.maxspec()[k].character}, a.dim());
  return span_ideal(a, kernel_basis(row));
}

/// Declared maximal ideals containing I.
inline std::vector<std::size_t> support(const CoeffAlgebra& a, const IdealRep& i) {
  std::vector<std::size_t> out;
  for (std::size_t k = 0; k < a.maxspec().size(); ++k) {
    bool inside = true;
    for (const auto& b : i.basis)
      if (!a.evaluate(a.maxspec()[k], b).is_zero()) inside = false;
    if (inside) out.push_back(k);
  }
  return out;
}

inline std::string support_str(const CoeffAlgebra& a, const std::vector<std::size_t>& s) {
  std::string out = "{";
  for (std::size_t k = 0; k < s.size(); ++k) out += (k ? "," : "") + a.maxspec()[s[k]].label;
  return out + "}";
}

/// A/I with the basis given by the non-pivot unit vectors of I's echelon form.
struct Quotient {
  CoeffAlgebra algebra;
  std::vector<std::size_t> kept;  // columns of A forming the quotient basis
  RowEchelon ideal;

  explicit Quotient(std::size_t n) : ideal(n) {}

  Vec project(Vec v) const {
    ideal.reduce(v);
    Vec out(kept.size());
    for (std::size_t k = 0; k < kept.size(); ++k) out[k] = v[kept[k]];
    return out;
  }
  Vec lift(const Vec& q, std::size_t n) const {
    Vec v(n);
    for (std::size_t k = 0; k < kept.size(); ++k) v[kept[k]] = q[k];
    return v;
  }
};

inline Quotient quotient_algebra(const CoeffAlgebra& a, const IdealRep& i) {
  Quotient q(a.dim());
  for (const auto& b : i.basis) q.ideal.add(b);
  std::vector<bool> pivot(a.dim(), false);
  for (auto p : q.ideal.pivots()) pivot[p] = true;
  std::vector<std::string> labels;
  for (std::size_t k = 0; k < a.dim(); ++k)
    if (!pivot[k]) {
      q.kept.push_back(k);
      labels.push_back(a.labels()[k]);
    }
  q.algebra = CoeffAlgebra(labels, a.tag() + "/I");
  for (std::size_t x = 0; x < q.kept.size(); ++x)
    for (std::size_t y = 0; y < q.kept.size(); ++y)
      q.algebra.set_product(
          x, y, detail::to_sparse(q.project(a.mul(unit_vec(a.dim(), q.kept[x]), unit_vec(a.dim(), q.kept[y])))));
  q.algebra.set_unit(q.project(a.unit()));
  for (auto k : support(a, i)) {
    MaxIdeal m{a.maxspec()[k].label, Vec(q.kept.size())};
    for (std::size_t x = 0; x < q.kept.size(); ++x) m.character[x] = a.maxspec()[k].character[q.kept[x]];
    q.algebra.add_max_ideal(std::move(m));
  }
  return q;
}

/// Nilradical of a commutative algebra: kernel of the trace form tr(L_{xy}).
inline IdealRep nilradical(const CoeffAlgebra& a) {
  std::size_t n = a.dim();
  std::vector<Matrix> l;
  for (std::size_t k = 0; k < n; ++k) l.push_back(a.mult_matrix(unit_vec(n, k)));
  Matrix gram(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      Matrix p = l[i] * l[j];
      for (std::size_t k = 0; k < n; ++k) gram(i, j) += p(k, k);
    }
  return span_ideal(a, kernel_basis(gram));
}

/// sqrt(I), computed in A/I and pulled back.
inline IdealRep radical(const CoeffAlgebra& a, const IdealRep& i) {
  Quotient q = quotient_algebra(a, i);
  std::vector<Vec> gens = i.basis;
  for (const auto& v : nilradical(q.algebra).basis) gens.push_back(q.lift(v, a.dim()));
  return span_ideal(a, gens);
}

/// Smallest k with radical(I)^k inside I (exists by finite dimensionality).
inline std::size_t radical_nilpotency(const CoeffAlgebra& a, const IdealRep& i) {
  IdealRep r = radical(a, i);
  for (std::size_t k = 1; k <= a.dim() + 1; ++k)
    if (ideal_subset(a, ideal_power(a, r, k), i)) return k;
  throw std::logic_error("radical power never entered the ideal");
}

// ---------------------------------------------------------------------------
// Chinese remainder splitting

struct CrtSplit {
  Quotient quotient;
  std::vector<std::size_t> points;    // indices into A's maxspec
  std::vector<Vec> idempotents;       // in A/I coordinates
  std::vector<std::size_t> local_dims;

  explicit CrtSplit(Quotient q) : quotient(std::move(q)) {}
};

/// Splits A/I into local pieces, one per declared maximal ideal containing I.
inline CrtSplit crt_split(const CoeffAlgebra& a, const IdealRep& i) {
  CrtSplit out(quotient_algebra(a, i));
  const CoeffAlgebra& b = out.quotient.algebra;
  out.points = support(a, i);
  std::size_t n = b.dim();
  Vec total(n);
  for (std::size_t p = 0; p < out.points.size(); ++p) {
    IdealRep piece = whole_algebra(b);
    for (std::size_t r = 0; r < b.maxspec().size(); ++r)
      if (r != p) piece = ideal_product(b, piece, ideal_power(b, max_ideal(b, r), n));
    // unit of the piece: e with e*x = x for every x in the piece
    std::size_t d = piece.dim();
    RowEchelon eqs(d + 1);
    for (const auto& x : piece.basis) {
      std::vector<Vec> cols;
      for (const auto& y : piece.basis) cols.push_back(b.mul(y, x));
      for (std::size_t r = 0; r < n; ++r) {
        Vec row(d + 1);
        for (std::size_t c = 0; c < d; ++c) row[c] = cols[c][r];
        row[d] = -x[r];
        eqs.add(std::move(row));
      }
    }
    Vec e(n);
    bool found = false;
    for (const auto& sol : eqs.nullspace())
      if (!sol[d].is_zero()) {
        Scalar s = sol[d].inverse();
        for (std::size_t c = 0; c < d; ++c)
          for (std::size_t r = 0; r < n; ++r) e[r] += s * sol[c] * piece.basis[c][r];
        found = true;
        break;
      }
    if (!found || b.mul(e, e) != e) throw std::domain_error("crt_split: idempotent solve failed (non-split input)");
    for (std::size_t r = 0; r < n; ++r) total[r] += e[r];
    out.idempotents.push_back(std::move(e));
    out.local_dims.push_back(d);
  }
  if (total != b.unit()) throw std::domain_error("crt_split: idempotents do not sum to 1 (undeclared points)");
  return out;
}

// ---------------------------------------------------------------------------
// Presets

struct Polynomial {
  std::vector<Scalar> coeffs;  // constant term first

  std::size_t degree() const { return coeffs.empty() ? 0 : coeffs.size() - 1; }
  Scalar operator()(const Scalar& x) const {
    Scalar acc;
    for (std::size_t k = coeffs.size(); k-- > 0;) acc = acc * x + coeffs[k];
    return acc;
  }
  /// Quotient by (t - a), assuming a is a root.
  Polynomial deflate(const Scalar& a) const {
    Polynomial q;
    q.coeffs.assign(degree(), Scalar());
    Scalar carry;
    for (std::size_t k = coeffs.size(); k-- > 1;) {
      carry = coeffs[k] + carry * a;
      q.coeffs[k - 1] = carry;
    }
    return q;
  }
};

inline std::string point_label(const Scalar& a) {
  if (a.is_zero()) return "(t)";
  Scalar m = -a;
  std::string s = m.str();
  if (!s.empty() && s[0] == '-') return "(t-" + s.substr(1) + ")";
  return "(t+" + s + ")";
}

inline std::string poly_str(const Polynomial& f) {
  std::string out;
  for (std::size_t k = f.coeffs.size(); k-- > 0;) {
    const Scalar& c = f.coeffs[k];
    if (c.is_zero()) continue;
    std::string mono = k == 0 ? "" : k == 1 ? "t" : "t^" + std::to_string(k);
    std::string s = c.str();
    bool simple = s.find_first_of("+*i", 1) == std::string::npos && s.find('-', 1) == std::string::npos;
    bool neg = simple && s[0] == '-';
    std::string mag = neg ? s.substr(1) : s;
    if (!simple) mag = "(" + s + ")";
    if (!mono.empty() && mag == "1") mag = "";
    else if (!mono.empty()) mag += "*";
    if (out.empty()) out = (neg ? "-" : "") + mag + mono;
    else out += (neg ? "-" : "+") + mag + mono;
  }
  return out.empty() ? "0" : out;
}

/// C[t]/(f) for a monic f whose roots are all declared; basis 1, t, ..., t^{d-1}.
inline CoeffAlgebra preset_truncated(const Polynomial& f, const std::vector<Scalar>& roots) {
  std::size_t d = f.degree();
  if (d == 0) throw std::invalid_argument("modulus must have positive degree");
  if (!f.coeffs.back().is_one()) throw std::invalid_argument("modulus must be monic");
  // multiplicities by repeated deflation
  Polynomial rest = f;
  std::vector<Scalar> distinct;
  for (const auto& r : roots) {
    bool seen = false;
    for (const auto& s : distinct) seen = seen || s == r;
    if (seen) continue;
    if (!f(r).is_zero()) throw std::invalid_argument("declared root " + r.str() + " is not a root of the modulus");
    distinct.push_back(r);
    while (rest.degree() > 0 && rest(r).is_zero()) rest = rest.deflate(r);
  }
  if (rest.degree() != 0) throw std::invalid_argument("modulus has undeclared roots");

  std::vector<std::string> labels;
  for (std::size_t k = 0; k < d; ++k) labels.push_back(k == 0 ? "1" : k == 1 ? "t" : "t^" + std::to_string(k));
  std::string tag = "C[t]/(" + poly_str(f) + ")";
  CoeffAlgebra a(labels, tag);
  // t^k reduced mod f for k < 2d - 1
  std::vector<Vec> power;
  for (std::size_t k = 0; k < d; ++k) power.push_back(unit_vec(d, k));
  for (std::size_t k = d; k + 1 < 2 * d; ++k) {
    Vec prev = power.back(), next(d);
    // t * prev, then replace t^d by -(f_0 + ... + f_{d-1} t^{d-1})
    Scalar top = prev[d - 1];
    for (std::size_t j = d - 1; j > 0; --j) next[j] = prev[j - 1];
    for (std::size_t j = 0; j < d; ++j) next[j] -= top * f.coeffs[j];
    power.push_back(std::move(next));
  }
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j) a.set_product(i, j, detail::to_sparse(power[i + j]));
  a.set_unit(unit_vec(d, 0));
  for (const auto& r : distinct) {
    MaxIdeal m{point_label(r), Vec(d)};
    Scalar p(1);
    for (std::size_t k = 0; k < d; ++k) {
      m.character[k] = p;
      p = p * r;
    }
    a.add_max_ideal(std::move(m));
  }
  return a;
}

/// The ground field as a coefficient algebra.
inline CoeffAlgebra preset_point() { return preset_truncated(Polynomial{{Scalar(0), Scalar(1)}}, {Scalar(0)}); }

/// C[t]/(t^k).
inline CoeffAlgebra preset_jet(std::size_t k) {
  Polynomial f;
  f.coeffs.assign(k + 1, Scalar());
  f.coeffs[k] = Scalar(1);
  return preset_truncated(f, {Scalar(0)});
}

/// Direct product A x B, with maximal ideals labelled by factor.
inline CoeffAlgebra preset_product(const CoeffAlgebra& a, const CoeffAlgebra& b) {
  std::size_t da = a.dim(), db = b.dim();
  std::vector<std::string> labels;
  for (const auto& l : a.labels()) labels.push_back("(" + l + ",0)");
  for (const auto& l : b.labels()) labels.push_back("(0," + l + ")");
  CoeffAlgebra p(labels, a.tag() + " x " + b.tag());
  for (std::size_t i = 0; i < da; ++i)
    for (std::size_t j = 0; j < da; ++j) p.set_product(i, j, a.product(i, j));
  for (std::size_t i = 0; i < db; ++i)
    for (std::size_t j = 0; j < db; ++j) {
      SparseRow r;
      for (const auto& [k, c] : b.product(i, j)) r.emplace_back(k + da, c);
      p.set_product(i + da, j + da, std::move(r));
    }
  Vec u(da + db);
  for (std::size_t k = 0; k < da; ++k) u[k] = a.unit()[k];
  for (std::size_t k = 0; k < db; ++k) u[da + k] = b.unit()[k];
  p.set_unit(u);
  for (const auto& m : a.maxspec()) {
    MaxIdeal x{"1:" + m.label, Vec(da + db)};
    for (std::size_t k = 0; k < da; ++k) x.character[k] = m.character[k];
    p.add_max_ideal(std::move(x));
  }
  for (const auto& m : b.maxspec()) {
    MaxIdeal x{"2:" + m.label, Vec(da + db)};
    for (std::size_t k = 0; k < db; ++k) x.character[da + k] = m.character[k];
    p.add_max_ideal(std::move(x));
  }
  return p;
}

/// Sum over declared points of local dimensions equals dim A.
inline bool maxspec_complete(const CoeffAlgebra& a) {
  try {
    CrtSplit s = crt_split(a, zero_ideal());
    std::size_t total = 0;
    for (auto d : s.local_dims) total += d;
    return total == a.dim();
  } catch (const std::domain_error&) {
    return false;
  }
}

/// The algebra automorphism t -> c t of C[t]/(f); validity is checked separately.
inline Matrix scaling_automorphism(const CoeffAlgebra& a, const Scalar& c) {
  Matrix m(a.dim(), a.dim());
  Scalar p(1);
  for (std::size_t k = 0; k < a.dim(); ++k) {
    m(k, k) = p;
    p = p * c;
  }
  return m;
}

inline bool is_algebra_automorphism(const CoeffAlgebra& a, const Matrix& s) {
  if (rank(s) != a.dim()) return false;
  if (s * a.unit() != a.unit()) return false;
  for (std::size_t i = 0; i < a.dim(); ++i)
    for (std::size_t j = 0; j < a.dim(); ++j)
      if (s * a.mul(unit_vec(a.dim(), i), unit_vec(a.dim(), j)) != a.mul(s.column(i), s.column(j))) return false;
  return true;
}

inline bool is_lie_automorphism(const LieSuper& g, const Matrix& s) {
  if (rank(s) != g.dim()) return false;
  if (matrix_parity(s, g.space(), g.space()) != 0) return false;
  for (std::size_t i = 0; i < g.dim(); ++i)
    for (std::size_t j = 0; j < g.dim(); ++j)
      if (s * g.bracket(unit_vec(g.dim(), i), unit_vec(g.dim(), j)) != g.bracket(s.column(i), s.column(j)))
        return false;
  return true;
}

// ---------------------------------------------------------------------------
// Finite abelian group actions

struct GammaAction {
  std::vector<std::size_t> orders;
  std::vector<Matrix> on_algebra;  // per generator
  std::vector<Matrix> on_lie;      // per generator

  /// All group elements as exponent tuples, identity first.
  std::vector<std::vector<std::size_t>> elements() const {
    std::vector<std::vector<std::size_t>> out{std::vector<std::size_t>(orders.size(), 0)};
    for (std::size_t g = 0; g < orders.size(); ++g) {
      std::vector<std::vector<std::size_t>> next;
      for (const auto& e : out)
        for (std::size_t p = 0; p < orders[g]; ++p) {
          auto f = e;
          f[g] = p;
          next.push_back(f);
        }
      out = std::move(next);
    }
    return out;
  }

  std::size_t order() const {
    std::size_t n = 1;
    for (auto o : orders) n *= o;
    return n;
  }

  static Matrix power(const Matrix& m, std::size_t e) {
    Matrix out = Matrix::identity(m.rows());
    for (std::size_t k = 0; k < e; ++k) out = out * m;
    return out;
  }
  Matrix algebra_matrix(const std::vector<std::size_t>& e) const { return apply(on_algebra, e); }
  Matrix lie_matrix(const std::vector<std::size_t>& e) const { return apply(on_lie, e); }

 private:
  static Matrix apply(const std::vector<Matrix>& gens, const std::vector<std::size_t>& e) {
    Matrix out = Matrix::identity(gens.front().rows());
    for (std::size_t g = 0; g < gens.size(); ++g) out = out * power(gens[g], e[g]);
    return out;
  }
};

/// Trivial action of the trivial group.
inline GammaAction trivial_gamma(const CoeffAlgebra& a, const LieSuper& g) {
  return GammaAction{{1}, {Matrix::identity(a.dim())}, {Matrix::identity(g.dim())}};
}

/// Index of the maximal ideal gamma(m), i.e. the character chi_m o gamma^{-1}.
inline std::optional<std::size_t> moved_point(const CoeffAlgebra& a, const Matrix& gamma, std::size_t m) {
  Matrix inv = inverse(gamma);
  Vec chi(a.dim());
  for (std::size_t k = 0; k < a.dim(); ++k)
    for (std::size_t r = 0; r < a.dim(); ++r)
      if (!inv(r, k).is_zero()) chi[k] += a.maxspec()[m].character[r] * inv(r, k);
  for (std::size_t p = 0; p < a.maxspec().size(); ++p)
    if (a.maxspec()[p].character == chi) return p;
  return std::nullopt;
}

struct GammaReport {
  bool relations = true;     // generator orders
  bool abelian = true;
  bool algebra_automorphisms = true;
  bool lie_automorphisms = true;
  bool maxspec_stable = true;
  bool free = true;
  std::string fixed_point;   // label of the first fixed maximal ideal, if not free
  std::vector<std::vector<std::size_t>> orbits;
  std::vector<std::string> failures;

  bool valid() const { return relations && abelian && algebra_automorphisms && lie_automorphisms && maxspec_stable; }
};

inline GammaReport gamma_validate(const GammaAction& act, const CoeffAlgebra& a, const LieSuper& g) {
  GammaReport r;
  std::size_t k = act.orders.size();
  if (act.on_algebra.size() != k || act.on_lie.size() != k)
    throw std::invalid_argument("group action: one matrix per generator is required");
  for (std::size_t i = 0; i < k; ++i) {
    if (act.orders[i] == 0) throw std::invalid_argument("group action: generator order must be positive");
    if (GammaAction::power(act.on_algebra[i], act.orders[i]) != Matrix::identity(a.dim()) ||
        GammaAction::power(act.on_lie[i], act.orders[i]) != Matrix::identity(g.dim())) {
      r.relations = false;
      r.failures.push_back("generator " + std::to_string(i + 1) + " does not have the declared order");
    }
    if (!is_algebra_automorphism(a, act.on_algebra[i])) {
      r.algebra_automorphisms = false;
      r.failures.push_back("generator " + std::to_string(i + 1) + " is not an algebra automorphism");
    }
    if (!is_lie_automorphism(g, act.on_lie[i])) {
      r.lie_automorphisms = false;
      r.failures.push_back("generator " + std::to_string(i + 1) + " is not a Lie superalgebra automorphism");
    }
    for (std::size_t j = 0; j < i; ++j)
      if (act.on_algebra[i] * act.on_algebra[j] != act.on_algebra[j] * act.on_algebra[i] ||
          act.on_lie[i] * act.on_lie[j] != act.on_lie[j] * act.on_lie[i]) {
        r.abelian = false;
        r.failures.push_back("generators " + std::to_string(j + 1) + " and " + std::to_string(i + 1) + " do not commute");
      }
  }
  if (!r.algebra_automorphisms) return r;
  std::size_t npts = a.maxspec().size();
  std::vector<bool> seen(npts, false);
  auto elems = act.elements();
  for (std::size_t p = 0; p < npts; ++p) {
    if (seen[p]) continue;
    std::set<std::size_t> orbit;
    for (const auto& e : elems) {
      auto q = moved_point(a, act.algebra_matrix(e), p);
      if (!q) {
        r.maxspec_stable = false;
        r.failures.push_back("the group moves " + a.maxspec()[p].label + " outside the declared spectrum");
        continue;
      }
      orbit.insert(*q);
      bool identity = std::all_of(e.begin(), e.end(), [](std::size_t x) { return x == 0; });
      if (!identity && *q == p && r.free) {
        r.free = false;
        r.fixed_point = a.maxspec()[p].label;
      }
    }
    for (auto q : orbit) seen[q] = true;
    r.orbits.emplace_back(orbit.begin(), orbit.end());
  }
  return r;
}

/// Gamma-invariance of an ideal.
inline bool is_invariant(const GammaAction& act, const CoeffAlgebra& a, const IdealRep& i) {
  RowEchelon e(a.dim());
  for (const auto& b : i.basis) e.add(b);
  for (const auto& m : act.on_algebra)
    for (const auto& b : i.basis)
      if (!e.contains(m * b)) return false;
  return true;
}

}  // namespace qsuper
