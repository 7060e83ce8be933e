#pragma once

#include <cassert>
#include <optional>
#include <vector>

#include "cdga/field.hpp"

namespace cdga {

template <class K>
using Vec = std::vector<K>;

/// Dense row-major matrix over an exact scalar field.
template <class K>
struct Matrix {
  int rows_ = 0, cols_ = 0;
  std::vector<K> a;

  Matrix() = default;
  Matrix(int r, int c) : rows_(r), cols_(c), a(static_cast<std::size_t>(r) * c, K(0)) {}

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  K& at(int r, int c) { return a[static_cast<std::size_t>(r) * cols_ + c]; }
  const K& at(int r, int c) const { return a[static_cast<std::size_t>(r) * cols_ + c]; }

  static Matrix identity(int n) {
    Matrix m(n, n);
    for (int i = 0; i < n; ++i) m.at(i, i) = K(1);
    return m;
  }

  static Matrix fromColumns(const std::vector<Vec<K>>& cols, int rows) {
    Matrix m(rows, static_cast<int>(cols.size()));
    for (int c = 0; c < m.cols_; ++c) {
      assert(static_cast<int>(cols[c].size()) == rows);
      for (int r = 0; r < rows; ++r) m.at(r, c) = cols[c][r];
    }
    return m;
  }

  Vec<K> column(int c) const {
    Vec<K> v(rows_, K(0));
    for (int r = 0; r < rows_; ++r) v[r] = at(r, c);
    return v;
  }

  std::vector<Vec<K>> columns() const {
    std::vector<Vec<K>> out;
    out.reserve(cols_);
    for (int c = 0; c < cols_; ++c) out.push_back(column(c));
    return out;
  }

  Matrix transpose() const {
    Matrix m(cols_, rows_);
    for (int r = 0; r < rows_; ++r)
      for (int c = 0; c < cols_; ++c) m.at(c, r) = at(r, c);
    return m;
  }

  Matrix hcat(const Matrix& o) const {
    assert(rows_ == o.rows_);
    Matrix m(rows_, cols_ + o.cols_);
    for (int r = 0; r < rows_; ++r) {
      for (int c = 0; c < cols_; ++c) m.at(r, c) = at(r, c);
      for (int c = 0; c < o.cols_; ++c) m.at(r, cols_ + c) = o.at(r, c);
    }
    return m;
  }

  friend Matrix operator*(const Matrix& x, const Matrix& y) {
    assert(x.cols_ == y.rows_);
    Matrix m(x.rows_, y.cols_);
    for (int r = 0; r < x.rows_; ++r)
      for (int k = 0; k < x.cols_; ++k) {
        const K& xv = x.at(r, k);
        if (isZero(xv)) continue;
        for (int c = 0; c < y.cols_; ++c) {
          const K& yv = y.at(k, c);
          if (!isZero(yv)) m.at(r, c) += xv * yv;
        }
      }
    return m;
  }

  friend Matrix operator+(const Matrix& x, const Matrix& y) {
    assert(x.rows_ == y.rows_ && x.cols_ == y.cols_);
    Matrix m(x.rows_, x.cols_);
    for (std::size_t i = 0; i < x.a.size(); ++i) m.a[i] = x.a[i] + y.a[i];
    return m;
  }

  friend Matrix operator-(const Matrix& x, const Matrix& y) {
    assert(x.rows_ == y.rows_ && x.cols_ == y.cols_);
    Matrix m(x.rows_, x.cols_);
    for (std::size_t i = 0; i < x.a.size(); ++i) m.a[i] = x.a[i] - y.a[i];
    return m;
  }

  Matrix scaled(const K& s) const {
    Matrix m(rows_, cols_);
    for (std::size_t i = 0; i < a.size(); ++i) m.a[i] = a[i] * s;
    return m;
  }

  Vec<K> apply(const Vec<K>& v) const {
    assert(static_cast<int>(v.size()) == cols_);
    Vec<K> out(rows_, K(0));
    for (int c = 0; c < cols_; ++c) {
      if (isZero(v[c])) continue;
      for (int r = 0; r < rows_; ++r) {
        const K& m = at(r, c);
        if (!isZero(m)) out[r] += m * v[c];
      }
    }
    return out;
  }

  bool isZeroMatrix() const {
    for (const K& x : a)
      if (!isZero(x)) return false;
    return true;
  }

  friend bool operator==(const Matrix& x, const Matrix& y) {
    if (x.rows_ != y.rows_ || x.cols_ != y.cols_) return false;
    for (std::size_t i = 0; i < x.a.size(); ++i)
      if (!(x.a[i] == y.a[i])) return false;
    return true;
  }
};

template <class K>
Vec<K> zeroVec(int n) { return Vec<K>(n, K(0)); }

template <class K>
bool isZeroVec(const Vec<K>& v) {
  for (const K& x : v)
    if (!isZero(x)) return false;
  return true;
}

template <class K>
Vec<K> addVec(const Vec<K>& x, const Vec<K>& y) {
  assert(x.size() == y.size());
  Vec<K> out(x.size(), K(0));
  for (std::size_t i = 0; i < x.size(); ++i) out[i] = x[i] + y[i];
  return out;
}

template <class K>
Vec<K> subVec(const Vec<K>& x, const Vec<K>& y) {
  assert(x.size() == y.size());
  Vec<K> out(x.size(), K(0));
  for (std::size_t i = 0; i < x.size(); ++i) out[i] = x[i] - y[i];
  return out;
}

template <class K>
Vec<K> scaleVec(const K& s, const Vec<K>& x) {
  Vec<K> out(x.size(), K(0));
  for (std::size_t i = 0; i < x.size(); ++i) out[i] = s * x[i];
  return out;
}

template <class K>
struct RrefResult {
  Matrix<K> reduced;
  std::vector<int> pivotCols;
  int rank = 0;
};

/// Gauss-Jordan reduction with the leftmost-pivot, topmost-row rule.
/// Deterministic: no magnitude-based pivoting.
template <class K>
RrefResult<K> rref(Matrix<K> m) {
  RrefResult<K> res;
  int row = 0;
  for (int col = 0; col < m.cols() && row < m.rows(); ++col) {
    int piv = -1;
    for (int r = row; r < m.rows(); ++r)
      if (!isZero(m.at(r, col))) { piv = r; break; }
    if (piv < 0) continue;
    if (piv != row)
      for (int c = 0; c < m.cols(); ++c) std::swap(m.at(piv, c), m.at(row, c));
    K inv = inverse(m.at(row, col));
    for (int c = col; c < m.cols(); ++c) m.at(row, c) = m.at(row, c) * inv;
    for (int r = 0; r < m.rows(); ++r) {
      if (r == row || isZero(m.at(r, col))) continue;
      K f = m.at(r, col);
      for (int c = col; c < m.cols(); ++c) m.at(r, c) = m.at(r, c) - f * m.at(row, c);
    }
    res.pivotCols.push_back(col);
    ++row;
  }
  res.rank = row;
  res.reduced = std::move(m);
  return res;
}

template <class K>
int rank(const Matrix<K>& m) { return rref(m).rank; }

/// Kernel basis in free-column normal form: one vector per free column, with
/// that free coordinate set to 1 and pivot coordinates back-substituted.
template <class K>
std::vector<Vec<K>> kernelBasis(const Matrix<K>& m) {
  RrefResult<K> r = rref(m);
  std::vector<bool> isPivot(m.cols(), false);
  for (int c : r.pivotCols) isPivot[c] = true;
  std::vector<Vec<K>> out;
  for (int f = 0; f < m.cols(); ++f) {
    if (isPivot[f]) continue;
    Vec<K> v(m.cols(), K(0));
    v[f] = K(1);
    for (int i = 0; i < static_cast<int>(r.pivotCols.size()); ++i)
      v[r.pivotCols[i]] = -r.reduced.at(i, f);
    out.push_back(std::move(v));
  }
  return out;
}

/// Particular solution of A x = b with free variables set to 0; nullopt when
/// the system is inconsistent.
template <class K>
std::optional<Vec<K>> solveLinear(const Matrix<K>& a, const Vec<K>& b) {
  Matrix<K> aug = a.hcat(Matrix<K>::fromColumns({b}, a.rows()));
  RrefResult<K> r = rref(aug);
  if (!r.pivotCols.empty() && r.pivotCols.back() == a.cols()) return std::nullopt;
  Vec<K> x(a.cols(), K(0));
  for (int i = 0; i < static_cast<int>(r.pivotCols.size()); ++i)
    x[r.pivotCols[i]] = r.reduced.at(i, a.cols());
  return x;
}

/// Columnwise solve of A X = B sharing one reduction; nullopt if any column is
/// inconsistent.
template <class K>
std::optional<Matrix<K>> solveColumns(const Matrix<K>& a, const Matrix<K>& b) {
  assert(a.rows() == b.rows());
  Matrix<K> aug = a.hcat(b);
  RrefResult<K> r = rref(aug);
  Matrix<K> x(a.cols(), b.cols());
  for (int i = 0; i < static_cast<int>(r.pivotCols.size()); ++i) {
    if (r.pivotCols[i] >= a.cols()) return std::nullopt;
    for (int c = 0; c < b.cols(); ++c)
      x.at(r.pivotCols[i], c) = r.reduced.at(i, a.cols() + c);
  }
  return x;
}

template <class K>
std::optional<Matrix<K>> inverseMatrix(const Matrix<K>& m) {
  assert(m.rows() == m.cols());
  std::optional<Matrix<K>> inv = solveColumns(m, Matrix<K>::identity(m.rows()));
  if (inv && rank(m) == m.rows()) return inv;
  return std::nullopt;
}

template <class K>
bool spanContains(const Matrix<K>& basisCols, const Vec<K>& v) {
  return solveLinear(basisCols, v).has_value();
}

/// Greedily extends `base` (columns) by those columns of `candidates` that are
/// independent of everything picked so far, scanning left to right.
template <class K>
std::vector<int> independentExtension(const Matrix<K>& base, const Matrix<K>& candidates) {
  Matrix<K> cur = base;
  int r = rank(cur);
  std::vector<int> picked;
  for (int c = 0; c < candidates.cols(); ++c) {
    Matrix<K> trial = cur.hcat(Matrix<K>::fromColumns({candidates.column(c)}, candidates.rows()));
    int tr = rank(trial);
    if (tr > r) {
      cur = std::move(trial);
      r = tr;
      picked.push_back(c);
    }
  }
  return picked;
}

/// Complement of span(sub) in K^dim by the first-independent-standard-vector
/// rule. Throws if the given vectors are dependent.
template <class K>
std::vector<Vec<K>> complementBasis(const std::vector<Vec<K>>& sub, int dim) {
  Matrix<K> s = Matrix<K>::fromColumns(sub, dim);
  if (rank(s) != s.cols())
    throw std::invalid_argument("complementBasis: input vectors are linearly dependent");
  std::vector<int> picked = independentExtension(s, Matrix<K>::identity(dim));
  std::vector<Vec<K>> out;
  for (int c : picked) {
    Vec<K> e(dim, K(0));
    e[c] = K(1);
    out.push_back(std::move(e));
  }
  return out;
}

/// Canonical basis of the column span: the RREF rows of the transpose,
/// re-read as vectors. Two sets of columns span the same subspace iff this
/// agrees.
template <class K>
Matrix<K> canonicalSpan(const Matrix<K>& cols) {
  RrefResult<K> r = rref(cols.transpose());
  Matrix<K> out(cols.rows(), r.rank);
  for (int i = 0; i < r.rank; ++i)
    for (int j = 0; j < cols.rows(); ++j) out.at(j, i) = r.reduced.at(i, j);
  return out;
}

template <class K>
bool sameSpan(const Matrix<K>& a, const Matrix<K>& b) {
  return canonicalSpan(a) == canonicalSpan(b);
}

}  // namespace cdga
