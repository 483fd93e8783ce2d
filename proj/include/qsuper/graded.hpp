#pragma once

// Z2-graded spaces and maps.  Basis convention everywhere: even basis vectors
// first, then odd ones, each in construction order.

#include "qsuper/matrix.hpp"

#include <map>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace qsuper {

/// Parity of a homogeneous map: 0 even, 1 odd, -1 inhomogeneous.
enum : int { kInhomogeneous = -1 };

inline int sign_of(int parity_product) { return (parity_product & 1) ? -1 : 1; }

struct GradedSpace {
  std::size_t even_dim = 0;
  std::size_t odd_dim = 0;

  GradedSpace() = default;
  GradedSpace(std::size_t e, std::size_t o) : even_dim(e), odd_dim(o) {}

  std::size_t dim() const { return even_dim + odd_dim; }
  int parity(std::size_t k) const { return k < even_dim ? 0 : 1; }
  std::vector<int> parities() const {
    std::vector<int> p(dim());
    for (std::size_t k = 0; k < dim(); ++k) p[k] = parity(k);
    return p;
  }
  friend bool operator==(const GradedSpace& a, const GradedSpace& b) {
    return a.even_dim == b.even_dim && a.odd_dim == b.odd_dim;
  }
};

/// Parity of a matrix acting between graded spaces, or kInhomogeneous.
/// The zero map reports parity 0.
inline int matrix_parity(const Matrix& m, const GradedSpace& src, const GradedSpace& tgt) {
  bool has_even = false, has_odd = false;
  for (std::size_t r = 0; r < m.rows(); ++r)
    for (std::size_t c = 0; c < m.cols(); ++c) {
      if (m(r, c).is_zero()) continue;
      ((tgt.parity(r) ^ src.parity(c)) ? has_odd : has_even) = true;
    }
  if (has_even && has_odd) return kInhomogeneous;
  return has_odd ? 1 : 0;
}

inline int matrix_parity(const SparseMatrix& m, const GradedSpace& src, const GradedSpace& tgt) {
  bool has_even = false, has_odd = false;
  for (std::size_t r = 0; r < m.rows(); ++r)
    for (const auto& e : m.row(r)) ((tgt.parity(r) ^ src.parity(e.first)) ? has_odd : has_even) = true;
  if (has_even && has_odd) return kInhomogeneous;
  return has_odd ? 1 : 0;
}

struct GradedMap {
  Matrix matrix;
  GradedSpace source;
  GradedSpace target;
  int parity = 0;

  GradedMap() = default;
  GradedMap(Matrix m, GradedSpace src, GradedSpace tgt)
      : matrix(std::move(m)), source(src), target(tgt), parity(matrix_parity(matrix, source, target)) {
    if (matrix.rows() != target.dim() || matrix.cols() != source.dim())
      throw std::invalid_argument("GradedMap: matrix shape does not match spaces");
  }
  GradedMap(Matrix m, GradedSpace space) : GradedMap(std::move(m), space, space) {}

  bool homogeneous() const { return parity != kInhomogeneous; }
};

/// Subspace given by an embedding; basis vectors are homogeneous when the
/// embedding reports a grading.
struct Subspace {
  GradedSpace space;       // grading of the subspace itself
  std::vector<Vec> basis;  // evens first, then odds, as vectors of the ambient space
  std::size_t dim() const { return basis.size(); }
};

/// Kernel of f.  For homogeneous f the result is graded with a homogeneous basis.
inline Subspace kernel(const GradedMap& f) {
  Subspace out;
  std::size_t n = f.source.dim();
  if (!f.homogeneous()) {
    out.basis = kernel_basis(f.matrix);
    out.space = GradedSpace(out.basis.size(), 0);
    return out;
  }
  for (int p : {0, 1}) {
    std::size_t lo = p == 0 ? 0 : f.source.even_dim;
    std::size_t hi = p == 0 ? f.source.even_dim : n;
    Matrix block(f.matrix.rows(), hi - lo);
    for (std::size_t r = 0; r < f.matrix.rows(); ++r)
      for (std::size_t c = lo; c < hi; ++c) block(r, c - lo) = f.matrix(r, c);
    for (auto& v : kernel_basis(block)) {
      Vec full(n);
      for (std::size_t c = lo; c < hi; ++c) full[c] = v[c - lo];
      out.basis.push_back(std::move(full));
    }
    if (p == 0) out.space.even_dim = out.basis.size();
  }
  out.space.odd_dim = out.basis.size() - out.space.even_dim;
  return out;
}

/// Basis ordering of V (x) W following the even-first convention.
struct TensorBasis {
  GradedSpace space;
  std::vector<std::pair<std::size_t, std::size_t>> pairs;  // position -> (i, j)
  std::vector<std::size_t> position;                       // i * dimW + j -> position

  TensorBasis(const GradedSpace& v, const GradedSpace& w) {
    std::size_t dw = w.dim();
    position.assign(v.dim() * dw, 0);
    for (int want : {0, 1})
      for (std::size_t i = 0; i < v.dim(); ++i)
        for (std::size_t j = 0; j < dw; ++j)
          if ((v.parity(i) ^ w.parity(j)) == want) {
            position[i * dw + j] = pairs.size();
            pairs.emplace_back(i, j);
          }
    space.even_dim = v.even_dim * w.even_dim + v.odd_dim * w.odd_dim;
    space.odd_dim = v.even_dim * w.odd_dim + v.odd_dim * w.even_dim;
  }
  std::size_t at(std::size_t i, std::size_t j, std::size_t dw) const { return position[i * dw + j]; }
};

/// (f (x) g)(v (x) w) = (-1)^{|g||v|} f(v) (x) g(w), sparse version.
inline SparseMatrix graded_tensor_sparse(const SparseMatrix& f, const GradedSpace& fv, const GradedSpace& fw,
                                         int f_parity, const SparseMatrix& g, const GradedSpace& gv,
                                         const GradedSpace& gw, int g_parity) {
  (void)f_parity;
  if (g_parity == kInhomogeneous || f_parity == kInhomogeneous)
    throw std::invalid_argument("graded_tensor: inputs must be homogeneous");
  TensorBasis src(fv, gv), tgt(fw, gw);
  SparseMatrix out(tgt.space.dim(), src.space.dim());
  std::size_t dgv = gv.dim(), dgw = gw.dim();
  for (std::size_t a = 0; a < f.rows(); ++a)
    for (std::size_t b = 0; b < g.rows(); ++b) {
      std::size_t row = tgt.at(a, b, dgw);
      for (const auto& [i, x] : f.row(a))
        for (const auto& [j, y] : g.row(b)) {
          Scalar v = x * y;
          if (g_parity && fv.parity(i)) v = -v;
          out.push(row, src.at(i, j, dgv), std::move(v));
        }
    }
  out.normalize();
  return out;
}

inline GradedMap graded_tensor(const GradedMap& f, const GradedMap& g) {
  if (!f.homogeneous() || !g.homogeneous()) throw std::invalid_argument("graded_tensor: inputs must be homogeneous");
  SparseMatrix m = graded_tensor_sparse(SparseMatrix::from_dense(f.matrix), f.source, f.target, f.parity,
                                        SparseMatrix::from_dense(g.matrix), g.source, g.target, g.parity);
  TensorBasis src(f.source, g.source), tgt(f.target, g.target);
  GradedMap out(m.to_dense(), src.space, tgt.space);
  out.parity = (f.parity + g.parity) & 1;
  return out;
}

/// Operators T of the given parity with T X - (-1)^{|T||X|} X T = 0 for every
/// (homogeneous) X in ops.  All ops act on `space`.
inline std::vector<Matrix> commutant(const std::vector<SparseMatrix>& ops, const std::vector<int>& op_parities,
                                     const GradedSpace& space, int parity) {
  std::size_t n = space.dim();
  // unknown index for each allowed (r, c)
  std::vector<long> unknown(n * n, -1);
  std::vector<std::pair<std::size_t, std::size_t>> cells;
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t c = 0; c < n; ++c)
      if ((space.parity(r) ^ space.parity(c)) == parity) {
        unknown[r * n + c] = static_cast<long>(cells.size());
        cells.emplace_back(r, c);
      }
  RowEchelon eqs(cells.size());
  for (std::size_t o = 0; o < ops.size() && !eqs.full(); ++o) {
    if (op_parities[o] == kInhomogeneous) throw std::invalid_argument("commutant: inhomogeneous operator");
    const SparseMatrix& x = ops[o];
    SparseMatrix xt = x.transpose();
    int s = sign_of(parity * op_parities[o]);
    // (T X)(i, j) = sum_k T(i,k) X(k,j);  (X T)(i, j) = sum_k X(i,k) T(k,j)
    for (std::size_t i = 0; i < n && !eqs.full(); ++i)
      for (std::size_t j = 0; j < n; ++j) {
        Vec row(cells.size());
        bool any = false;
        for (const auto& [k, v] : xt.row(j)) {
          long u = unknown[i * n + k];
          if (u >= 0) {
            row[static_cast<std::size_t>(u)] += v;
            any = true;
          }
        }
        for (const auto& [k, v] : x.row(i)) {
          long u = unknown[k * n + j];
          if (u >= 0) {
            row[static_cast<std::size_t>(u)] += s > 0 ? -v : v;
            any = true;
          }
        }
        if (any) eqs.add(std::move(row));
        if (eqs.full()) break;
      }
  }
  std::vector<Matrix> out;
  for (const auto& sol : eqs.nullspace()) {
    Matrix t(n, n);
    for (std::size_t u = 0; u < cells.size(); ++u) t(cells[u].first, cells[u].second) = sol[u];
    out.push_back(std::move(t));
  }
  return out;
}

inline std::vector<Matrix> commutant(const std::vector<GradedMap>& ops, const GradedSpace& space, int parity) {
  std::vector<SparseMatrix> sp;
  std::vector<int> par;
  for (const auto& g : ops) {
    sp.push_back(SparseMatrix::from_dense(g.matrix));
    par.push_back(g.parity);
  }
  return commutant(sp, par, space, parity);
}

}  // namespace qsuper
