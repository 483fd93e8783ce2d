#pragma once

// Dense and sparse exact matrices, row reduction, kernels.
//
// Row reduction is plain Gaussian elimination with first-nonzero pivoting;
// over an exact field no pivot-size heuristics are needed.

#include "qsuper/scalar.hpp"

#include <algorithm>
#include <cassert>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace qsuper {

using Vec = std::vector<Scalar>;

inline bool is_zero_vec(const Vec& v) {
  return std::all_of(v.begin(), v.end(), [](const Scalar& s) { return s.is_zero(); });
}

inline Vec unit_vec(std::size_t n, std::size_t k) {
  Vec v(n);
  v[k] = Scalar(1);
  return v;
}

class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}

  static Matrix identity(std::size_t n) {
    Matrix m(n, n);
    for (std::size_t k = 0; k < n; ++k) m(k, k) = Scalar(1);
    return m;
  }
  /// Matrix whose columns are the given vectors (all of length `rows`).
  static Matrix from_columns(const std::vector<Vec>& cols, std::size_t rows) {
    Matrix m(rows, cols.size());
    for (std::size_t c = 0; c < cols.size(); ++c)
      for (std::size_t r = 0; r < rows; ++r) m(r, c) = cols[c][r];
    return m;
  }
  static Matrix from_rows(const std::vector<Vec>& rs, std::size_t cols) {
    Matrix m(rs.size(), cols);
    for (std::size_t r = 0; r < rs.size(); ++r)
      for (std::size_t c = 0; c < cols; ++c) m(r, c) = rs[r][c];
    return m;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  Scalar& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const Scalar& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  Vec column(std::size_t c) const {
    Vec v(rows_);
    for (std::size_t r = 0; r < rows_; ++r) v[r] = (*this)(r, c);
    return v;
  }
  Vec row(std::size_t r) const { return Vec(data_.begin() + r * cols_, data_.begin() + (r + 1) * cols_); }
  std::vector<Vec> columns() const {
    std::vector<Vec> out;
    out.reserve(cols_);
    for (std::size_t c = 0; c < cols_; ++c) out.push_back(column(c));
    return out;
  }

  bool is_zero() const {
    return std::all_of(data_.begin(), data_.end(), [](const Scalar& s) { return s.is_zero(); });
  }

  Matrix transpose() const {
    Matrix t(cols_, rows_);
    for (std::size_t r = 0; r < rows_; ++r)
      for (std::size_t c = 0; c < cols_; ++c) t(c, r) = (*this)(r, c);
    return t;
  }

  friend Matrix operator*(const Matrix& a, const Matrix& b) {
    if (a.cols_ != b.rows_) throw std::invalid_argument("matrix product shape mismatch");
    Matrix m(a.rows_, b.cols_);
    for (std::size_t r = 0; r < a.rows_; ++r)
      for (std::size_t k = 0; k < a.cols_; ++k) {
        const Scalar& x = a(r, k);
        if (x.is_zero()) continue;
        for (std::size_t c = 0; c < b.cols_; ++c) {
          const Scalar& y = b(k, c);
          if (!y.is_zero()) m(r, c) += x * y;
        }
      }
    return m;
  }
  friend Vec operator*(const Matrix& a, const Vec& v) {
    if (a.cols_ != v.size()) throw std::invalid_argument("matrix-vector shape mismatch");
    Vec out(a.rows_);
    for (std::size_t k = 0; k < a.cols_; ++k) {
      if (v[k].is_zero()) continue;
      for (std::size_t r = 0; r < a.rows_; ++r) {
        const Scalar& x = a(r, k);
        if (!x.is_zero()) out[r] += x * v[k];
      }
    }
    return out;
  }
  friend Matrix operator+(const Matrix& a, const Matrix& b) {
    if (a.rows_ != b.rows_ || a.cols_ != b.cols_) throw std::invalid_argument("matrix sum shape mismatch");
    Matrix m = a;
    for (std::size_t k = 0; k < m.data_.size(); ++k)
      if (!b.data_[k].is_zero()) m.data_[k] += b.data_[k];
    return m;
  }
  friend Matrix operator-(const Matrix& a, const Matrix& b) { return a + (-b); }
  Matrix operator-() const {
    Matrix m = *this;
    for (auto& s : m.data_)
      if (!s.is_zero()) s = -s;
    return m;
  }
  friend Matrix operator*(const Scalar& s, const Matrix& a) {
    Matrix m = a;
    for (auto& x : m.data_)
      if (!x.is_zero()) x = s * x;
    return m;
  }
  friend bool operator==(const Matrix& a, const Matrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
  }
  friend bool operator!=(const Matrix& a, const Matrix& b) { return !(a == b); }

  /// Kronecker product (no signs).
  friend Matrix kron(const Matrix& a, const Matrix& b) {
    Matrix m(a.rows_ * b.rows_, a.cols_ * b.cols_);
    for (std::size_t i = 0; i < a.rows_; ++i)
      for (std::size_t j = 0; j < a.cols_; ++j) {
        if (a(i, j).is_zero()) continue;
        for (std::size_t k = 0; k < b.rows_; ++k)
          for (std::size_t l = 0; l < b.cols_; ++l)
            if (!b(k, l).is_zero()) m(i * b.rows_ + k, j * b.cols_ + l) = a(i, j) * b(k, l);
      }
    return m;
  }

  std::string str() const {
    std::string out;
    for (std::size_t r = 0; r < rows_; ++r) {
      out += "[";
      for (std::size_t c = 0; c < cols_; ++c) out += (c ? ", " : "") + (*this)(r, c).str();
      out += "]\n";
    }
    return out;
  }

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Scalar> data_;
};

/// Reduced row echelon form in place; returns pivot columns.
inline std::vector<std::size_t> rref(Matrix& m) {
  std::vector<std::size_t> pivots;
  std::size_t r = 0;
  for (std::size_t c = 0; c < m.cols() && r < m.rows(); ++c) {
    std::size_t p = r;
    while (p < m.rows() && m(p, c).is_zero()) ++p;
    if (p == m.rows()) continue;
    if (p != r)
      for (std::size_t k = 0; k < m.cols(); ++k) std::swap(m(p, k), m(r, k));
    Scalar inv = m(r, c).inverse();
    for (std::size_t k = c; k < m.cols(); ++k)
      if (!m(r, k).is_zero()) m(r, k) = m(r, k) * inv;
    for (std::size_t q = 0; q < m.rows(); ++q) {
      if (q == r || m(q, c).is_zero()) continue;
      Scalar f = m(q, c);
      for (std::size_t k = c; k < m.cols(); ++k)
        if (!m(r, k).is_zero()) m(q, k) -= f * m(r, k);
    }
    pivots.push_back(c);
    ++r;
  }
  return pivots;
}

inline std::size_t rank(Matrix m) { return rref(m).size(); }

/// Basis of the null space, as column vectors.
inline std::vector<Vec> kernel_basis(const Matrix& a) {
  Matrix m = a;
  auto piv = rref(m);
  std::vector<bool> is_pivot(m.cols(), false);
  for (auto p : piv) is_pivot[p] = true;
  std::vector<Vec> out;
  for (std::size_t f = 0; f < m.cols(); ++f) {
    if (is_pivot[f]) continue;
    Vec v(m.cols());
    v[f] = Scalar(1);
    for (std::size_t r = 0; r < piv.size(); ++r)
      if (!m(r, f).is_zero()) v[piv[r]] = -m(r, f);
    out.push_back(std::move(v));
  }
  return out;
}

/// Indices of a maximal linearly independent prefix-greedy subset of the vectors.
inline std::vector<std::size_t> independent_subset(const std::vector<Vec>& vs, std::size_t dim);

/// Incrementally maintained reduced row echelon basis of a row space.
class RowEchelon {
 public:
  explicit RowEchelon(std::size_t ncols) : ncols_(ncols) {}

  std::size_t ncols() const { return ncols_; }
  std::size_t rank() const { return rows_.size(); }
  bool full() const { return rows_.size() == ncols_; }
  const std::vector<Vec>& rows() const { return rows_; }
  const std::vector<std::size_t>& pivots() const { return pivots_; }

  /// Reduces v against the current rows (in place).
  void reduce(Vec& v) const {
    for (std::size_t k = 0; k < rows_.size(); ++k) {
      const Scalar& f = v[pivots_[k]];
      if (f.is_zero()) continue;
      Scalar fc = f;
      const Vec& row = rows_[k];
      for (std::size_t c = 0; c < ncols_; ++c)
        if (!row[c].is_zero()) v[c] -= fc * row[c];
    }
  }

  bool contains(Vec v) const {
    reduce(v);
    return is_zero_vec(v);
  }

  /// Adds v; returns true if the rank grew.
  bool add(Vec v) {
    if (v.size() != ncols_) throw std::invalid_argument("RowEchelon: wrong row length");
    reduce(v);
    std::size_t p = 0;
    while (p < ncols_ && v[p].is_zero()) ++p;
    if (p == ncols_) return false;
    Scalar inv = v[p].inverse();
    for (auto& x : v)
      if (!x.is_zero()) x = x * inv;
    for (auto& row : rows_) {
      if (row[p].is_zero()) continue;
      Scalar f = row[p];
      for (std::size_t c = 0; c < ncols_; ++c)
        if (!v[c].is_zero()) row[c] -= f * v[c];
    }
    auto it = std::lower_bound(pivots_.begin(), pivots_.end(), p);
    auto pos = static_cast<std::size_t>(it - pivots_.begin());
    pivots_.insert(it, p);
    rows_.insert(rows_.begin() + static_cast<std::ptrdiff_t>(pos), std::move(v));
    return true;
  }

  /// Basis of {x : row . x = 0 for all rows}.
  std::vector<Vec> nullspace() const {
    std::vector<bool> is_pivot(ncols_, false);
    for (auto p : pivots_) is_pivot[p] = true;
    std::vector<Vec> out;
    for (std::size_t f = 0; f < ncols_; ++f) {
      if (is_pivot[f]) continue;
      Vec v(ncols_);
      v[f] = Scalar(1);
      for (std::size_t r = 0; r < rows_.size(); ++r)
        if (!rows_[r][f].is_zero()) v[pivots_[r]] = -rows_[r][f];
      out.push_back(std::move(v));
    }
    return out;
  }

  /// Coordinates of v in terms of the stored rows, if v lies in their span.
  bool coordinates(const Vec& v, Vec& coords) const {
    coords.assign(rows_.size(), Scalar());
    for (std::size_t k = 0; k < rows_.size(); ++k) coords[k] = v[pivots_[k]];
    Vec check(ncols_);
    for (std::size_t k = 0; k < rows_.size(); ++k) {
      if (coords[k].is_zero()) continue;
      for (std::size_t c = 0; c < ncols_; ++c)
        if (!rows_[k][c].is_zero()) check[c] += coords[k] * rows_[k][c];
    }
    return check == v;
  }

 private:
  std::size_t ncols_;
  std::vector<Vec> rows_;
  std::vector<std::size_t> pivots_;
};

inline std::vector<std::size_t> independent_subset(const std::vector<Vec>& vs, std::size_t dim) {
  RowEchelon ech(dim);
  std::vector<std::size_t> out;
  for (std::size_t k = 0; k < vs.size(); ++k)
    if (ech.add(vs[k])) out.push_back(k);
  return out;
}

/// Basis (reduced) of the span of the given vectors.
inline std::vector<Vec> span_basis(const std::vector<Vec>& vs, std::size_t dim) {
  RowEchelon ech(dim);
  for (const auto& v : vs) ech.add(v);
  return ech.rows();
}

/// Expresses vectors in a fixed linearly independent family.
class BasisCoordinates {
 public:
  BasisCoordinates() = default;
  BasisCoordinates(const std::vector<Vec>& basis, std::size_t dim) : dim_(dim), count_(basis.size()) {
    Matrix aug(basis.size(), dim + basis.size());
    for (std::size_t r = 0; r < basis.size(); ++r) {
      for (std::size_t c = 0; c < dim; ++c) aug(r, c) = basis[r][c];
      aug(r, dim + r) = Scalar(1);
    }
    auto piv = rref(aug);
    for (std::size_t r = 0; r < piv.size(); ++r) {
      if (piv[r] >= dim) throw std::invalid_argument("BasisCoordinates: family is linearly dependent");
      pivots_.push_back(piv[r]);
      Vec t(count_);
      for (std::size_t c = 0; c < count_; ++c) t[c] = aug(r, dim + c);
      transforms_.push_back(std::move(t));
    }
    basis_ = basis;
  }

  std::size_t size() const { return count_; }

  /// Coordinates of v; returns false when v is outside the span.
  bool coordinates(const Vec& v, Vec& out) const {
    out.assign(count_, Scalar());
    for (std::size_t k = 0; k < pivots_.size(); ++k) {
      const Scalar& f = v[pivots_[k]];
      if (f.is_zero()) continue;
      for (std::size_t c = 0; c < count_; ++c)
        if (!transforms_[k][c].is_zero()) out[c] += f * transforms_[k][c];
    }
    Vec check(dim_);
    for (std::size_t c = 0; c < count_; ++c) {
      if (out[c].is_zero()) continue;
      for (std::size_t d = 0; d < dim_; ++d)
        if (!basis_[c][d].is_zero()) check[d] += out[c] * basis_[c][d];
    }
    return check == v;
  }

  Vec coordinates(const Vec& v) const {
    Vec out;
    if (!coordinates(v, out)) throw std::invalid_argument("vector outside the span of the basis");
    return out;
  }

 private:
  std::size_t dim_ = 0;
  std::size_t count_ = 0;
  std::vector<std::size_t> pivots_;
  std::vector<Vec> transforms_;
  std::vector<Vec> basis_;
};

/// Solves A x = b; returns false if inconsistent.  Picks free variables = 0.
inline bool solve(const Matrix& a, const Vec& b, Vec& x) {
  Matrix aug(a.rows(), a.cols() + 1);
  for (std::size_t r = 0; r < a.rows(); ++r) {
    for (std::size_t c = 0; c < a.cols(); ++c) aug(r, c) = a(r, c);
    aug(r, a.cols()) = b[r];
  }
  auto piv = rref(aug);
  x.assign(a.cols(), Scalar());
  for (std::size_t r = 0; r < piv.size(); ++r) {
    if (piv[r] == a.cols()) return false;
    x[piv[r]] = aug(r, a.cols());
  }
  return true;
}

inline Matrix inverse(const Matrix& a) {
  if (a.rows() != a.cols()) throw std::invalid_argument("inverse of non-square matrix");
  std::size_t n = a.rows();
  Matrix aug(n, 2 * n);
  for (std::size_t r = 0; r < n; ++r) {
    for (std::size_t c = 0; c < n; ++c) aug(r, c) = a(r, c);
    aug(r, n + r) = Scalar(1);
  }
  auto piv = rref(aug);
  if (piv.size() < n || piv[n - 1] != n - 1) throw std::domain_error("matrix is singular");
  Matrix inv(n, n);
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t c = 0; c < n; ++c) inv(r, c) = aug(r, n + c);
  return inv;
}

// ---------------------------------------------------------------------------
// Sparse matrices (row lists), used for module actions.

using SparseRow = std::vector<std::pair<std::size_t, Scalar>>;

class SparseMatrix {
 public:
  SparseMatrix() = default;
  SparseMatrix(std::size_t rows, std::size_t cols) : cols_(cols), rows_(rows) {}

  static SparseMatrix identity(std::size_t n) {
    SparseMatrix m(n, n);
    for (std::size_t k = 0; k < n; ++k) m.rows_[k].emplace_back(k, Scalar(1));
    return m;
  }
  static SparseMatrix from_dense(const Matrix& d) {
    SparseMatrix m(d.rows(), d.cols());
    for (std::size_t r = 0; r < d.rows(); ++r)
      for (std::size_t c = 0; c < d.cols(); ++c)
        if (!d(r, c).is_zero()) m.rows_[r].emplace_back(c, d(r, c));
    return m;
  }
  Matrix to_dense() const {
    Matrix d(rows_.size(), cols_);
    for (std::size_t r = 0; r < rows_.size(); ++r)
      for (const auto& [c, v] : rows_[r]) d(r, c) = v;
    return d;
  }

  std::size_t rows() const { return rows_.size(); }
  std::size_t cols() const { return cols_; }
  const SparseRow& row(std::size_t r) const { return rows_[r]; }
  SparseRow& row(std::size_t r) { return rows_[r]; }
  std::size_t nnz() const {
    std::size_t n = 0;
    for (const auto& r : rows_) n += r.size();
    return n;
  }
  bool is_zero() const { return nnz() == 0; }

  /// Sets entry; row must be filled in increasing column order, or call normalize().
  void push(std::size_t r, std::size_t c, Scalar v) {
    if (!v.is_zero()) rows_[r].emplace_back(c, std::move(v));
  }
  void normalize() {
    for (auto& row : rows_) {
      std::sort(row.begin(), row.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
      SparseRow merged;
      for (auto& e : row) {
        if (!merged.empty() && merged.back().first == e.first) merged.back().second += e.second;
        else merged.push_back(std::move(e));
      }
      merged.erase(std::remove_if(merged.begin(), merged.end(), [](const auto& e) { return e.second.is_zero(); }),
                   merged.end());
      row = std::move(merged);
    }
  }

  Vec apply(const Vec& v) const {
    Vec out(rows_.size());
    for (std::size_t r = 0; r < rows_.size(); ++r) {
      Scalar acc;
      for (const auto& [c, x] : rows_[r])
        if (!v[c].is_zero()) acc += x * v[c];
      out[r] = std::move(acc);
    }
    return out;
  }

  SparseMatrix transpose() const {
    SparseMatrix t(cols_, rows_.size());
    for (std::size_t r = 0; r < rows_.size(); ++r)
      for (const auto& [c, v] : rows_[r]) t.rows_[c].emplace_back(r, v);
    return t;
  }

  friend SparseMatrix operator*(const SparseMatrix& a, const SparseMatrix& b) {
    if (a.cols_ != b.rows()) throw std::invalid_argument("sparse product shape mismatch");
    SparseMatrix m(a.rows(), b.cols_);
    std::vector<Scalar> acc(b.cols_);
    std::vector<std::size_t> touched;
    std::vector<bool> mark(b.cols_, false);
    for (std::size_t r = 0; r < a.rows(); ++r) {
      touched.clear();
      for (const auto& [k, x] : a.rows_[r])
        for (const auto& [c, y] : b.rows_[k]) {
          if (!mark[c]) {
            mark[c] = true;
            touched.push_back(c);
          }
          acc[c] += x * y;
        }
      std::sort(touched.begin(), touched.end());
      for (auto c : touched) {
        if (!acc[c].is_zero()) m.rows_[r].emplace_back(c, std::move(acc[c]));
        acc[c] = Scalar();
        mark[c] = false;
      }
    }
    return m;
  }
  friend SparseMatrix operator+(const SparseMatrix& a, const SparseMatrix& b) {
    if (a.rows() != b.rows() || a.cols_ != b.cols_) throw std::invalid_argument("sparse sum shape mismatch");
    SparseMatrix m(a.rows(), a.cols_);
    for (std::size_t r = 0; r < a.rows(); ++r) {
      const auto& x = a.rows_[r];
      const auto& y = b.rows_[r];
      std::size_t i = 0, j = 0;
      auto& out = m.rows_[r];
      while (i < x.size() || j < y.size()) {
        if (j == y.size() || (i < x.size() && x[i].first < y[j].first)) {
          out.push_back(x[i++]);
        } else if (i == x.size() || y[j].first < x[i].first) {
          out.push_back(y[j++]);
        } else {
          Scalar s = x[i].second + y[j].second;
          if (!s.is_zero()) out.emplace_back(x[i].first, std::move(s));
          ++i;
          ++j;
        }
      }
    }
    return m;
  }
  friend SparseMatrix operator*(const Scalar& s, const SparseMatrix& a) {
    if (s.is_zero()) return SparseMatrix(a.rows(), a.cols_);
    SparseMatrix m = a;
    for (auto& row : m.rows_)
      for (auto& e : row) e.second = s * e.second;
    return m;
  }
  friend SparseMatrix operator-(const SparseMatrix& a, const SparseMatrix& b) { return a + Scalar(-1) * b; }
  friend bool operator==(const SparseMatrix& a, const SparseMatrix& b) {
    if (a.rows() != b.rows() || a.cols_ != b.cols_) return false;
    for (std::size_t r = 0; r < a.rows(); ++r) {
      if (a.rows_[r].size() != b.rows_[r].size()) return false;
      for (std::size_t k = 0; k < a.rows_[r].size(); ++k)
        if (a.rows_[r][k].first != b.rows_[r][k].first || a.rows_[r][k].second != b.rows_[r][k].second)
          return false;
    }
    return true;
  }

  /// Kronecker product with optional per-entry sign from the right factor's row
  /// parity (used for Koszul-signed tensor actions): entry (i,j)x(k,l) gets
  /// sign(k) when `signs` is non-empty.
  friend SparseMatrix kron(const SparseMatrix& a, const SparseMatrix& b, const std::vector<int>& signs = {}) {
    SparseMatrix m(a.rows() * b.rows(), a.cols_ * b.cols_);
    for (std::size_t i = 0; i < a.rows(); ++i)
      for (std::size_t k = 0; k < b.rows(); ++k) {
        auto& out = m.rows_[i * b.rows() + k];
        for (const auto& [j, x] : a.rows_[i])
          for (const auto& [l, y] : b.rows_[k]) {
            Scalar v = x * y;
            if (!signs.empty() && signs[k] < 0) v = -v;
            out.emplace_back(j * b.cols_ + l, std::move(v));
          }
      }
    return m;
  }

 private:
  std::size_t cols_ = 0;
  std::vector<SparseRow> rows_;
};

}  // namespace qsuper
