#pragma once

#include "mfhess/errors.hpp"
#include "mfhess/rational.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <optional>
#include <utility>
#include <vector>

namespace mfhess {

/// Dense row-major matrix over the rationals. Sizes here never exceed a few
/// dozen, so exact Gaussian elimination on dense storage is adequate.
class Matrix
{
public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}

  static Matrix identity(std::size_t n)
  {
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i)
      m(i, i) = 1;
    return m;
  }

  static Matrix from_rows(const std::vector<Vec> &rows, std::size_t cols)
  {
    Matrix m(rows.size(), cols);
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (rows[i].size() != cols)
        throw DimensionMismatch("row length differs from column count");
      for (std::size_t j = 0; j < cols; ++j)
        m(i, j) = rows[i][j];
    }
    return m;
  }

  static Matrix from_columns(const std::vector<Vec> &columns, std::size_t rows)
  {
    Matrix m(rows, columns.size());
    for (std::size_t j = 0; j < columns.size(); ++j) {
      if (columns[j].size() != rows)
        throw DimensionMismatch("column length differs from row count");
      for (std::size_t i = 0; i < rows; ++i)
        m(i, j) = columns[j][i];
    }
    return m;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  Rational &operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const Rational &operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  Vec row(std::size_t i) const { return Vec(data_.begin() + i * cols_, data_.begin() + (i + 1) * cols_); }

  Vec column(std::size_t j) const
  {
    Vec c(rows_);
    for (std::size_t i = 0; i < rows_; ++i)
      c[i] = (*this)(i, j);
    return c;
  }

  Matrix transpose() const
  {
    Matrix t(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j)
        t(j, i) = (*this)(i, j);
    return t;
  }

  Vec operator*(const Vec &v) const
  {
    if (v.size() != cols_)
      throw DimensionMismatch("matrix-vector size mismatch");
    Vec r = zero_vec(rows_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j)
        if (sgn((*this)(i, j)) != 0 && sgn(v[j]) != 0)
          r[i] += (*this)(i, j) * v[j];
    return r;
  }

  Matrix operator*(const Matrix &b) const
  {
    if (cols_ != b.rows_)
      throw DimensionMismatch("matrix product size mismatch");
    Matrix r(rows_, b.cols_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t k = 0; k < cols_; ++k) {
        const Rational &a = (*this)(i, k);
        if (sgn(a) == 0)
          continue;
        for (std::size_t j = 0; j < b.cols_; ++j)
          if (sgn(b(k, j)) != 0)
            r(i, j) += a * b(k, j);
      }
    return r;
  }

  bool operator==(const Matrix &o) const = default;

private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Rational> data_;
};

/// In-place reduced row echelon form; returns the pivot columns.
inline std::vector<std::size_t> rref(Matrix &m)
{
  std::vector<std::size_t> pivots;
  std::size_t r = 0;
  for (std::size_t c = 0; c < m.cols() && r < m.rows(); ++c) {
    std::size_t p = r;
    while (p < m.rows() && sgn(m(p, c)) == 0)
      ++p;
    if (p == m.rows())
      continue;
    if (p != r)
      for (std::size_t j = 0; j < m.cols(); ++j)
        std::swap(m(p, j), m(r, j));
    Rational inv = 1 / m(r, c);
    for (std::size_t j = c; j < m.cols(); ++j)
      m(r, j) *= inv;
    for (std::size_t i = 0; i < m.rows(); ++i) {
      if (i == r || sgn(m(i, c)) == 0)
        continue;
      Rational f = m(i, c);
      for (std::size_t j = c; j < m.cols(); ++j)
        if (sgn(m(r, j)) != 0)
          m(i, j) -= f * m(r, j);
    }
    pivots.push_back(c);
    ++r;
  }
  return pivots;
}

inline std::size_t rank(Matrix m) { return rref(m).size(); }

inline std::size_t rank_of(const std::vector<Vec> &vectors)
{
  if (vectors.empty())
    return 0;
  return rank(Matrix::from_rows(vectors, vectors.front().size()));
}

/// Basis of { v : m v = 0 }.
inline std::vector<Vec> nullspace(Matrix m)
{
  auto pivots = rref(m);
  std::vector<bool> is_pivot(m.cols(), false);
  for (auto c : pivots)
    is_pivot[c] = true;
  std::vector<Vec> basis;
  for (std::size_t f = 0; f < m.cols(); ++f) {
    if (is_pivot[f])
      continue;
    Vec v = zero_vec(m.cols());
    v[f] = 1;
    for (std::size_t i = 0; i < pivots.size(); ++i)
      v[pivots[i]] = -m(i, f);
    basis.push_back(std::move(v));
  }
  return basis;
}

/// Any solution of a x = b, or nullopt when the system is inconsistent.
inline std::optional<Vec> solve(const Matrix &a, const Vec &b)
{
  if (b.size() != a.rows())
    throw DimensionMismatch("right-hand side size mismatch");
  Matrix aug(a.rows(), a.cols() + 1);
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < a.cols(); ++j)
      aug(i, j) = a(i, j);
    aug(i, a.cols()) = b[i];
  }
  auto pivots = rref(aug);
  if (!pivots.empty() && pivots.back() == a.cols())
    return std::nullopt;
  Vec x = zero_vec(a.cols());
  for (std::size_t i = 0; i < pivots.size(); ++i)
    x[pivots[i]] = aug(i, a.cols());
  return x;
}

inline Rational determinant(Matrix m)
{
  if (m.rows() != m.cols())
    throw DimensionMismatch("determinant of a non-square matrix");
  Rational det = 1;
  const std::size_t n = m.rows();
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t p = c;
    while (p < n && sgn(m(p, c)) == 0)
      ++p;
    if (p == n)
      return 0;
    if (p != c) {
      for (std::size_t j = 0; j < n; ++j)
        std::swap(m(p, j), m(c, j));
      det = -det;
    }
    det *= m(c, c);
    for (std::size_t i = c + 1; i < n; ++i) {
      if (sgn(m(i, c)) == 0)
        continue;
      Rational f = m(i, c) / m(c, c);
      for (std::size_t j = c; j < n; ++j)
        m(i, j) -= f * m(c, j);
    }
  }
  return det;
}

inline Matrix inverse(const Matrix &a)
{
  if (a.rows() != a.cols())
    throw DimensionMismatch("inverse of a non-square matrix");
  const std::size_t n = a.rows();
  Matrix aug(n, 2 * n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j)
      aug(i, j) = a(i, j);
    aug(i, n + i) = 1;
  }
  auto pivots = rref(aug);
  if (pivots.size() < n || pivots[n - 1] != n - 1)
    throw SingularSystem("matrix is not invertible");
  Matrix inv(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      inv(i, j) = aug(i, n + j);
  return inv;
}

/// Row-reduced basis of the span of `vectors` (empty input gives an empty basis).
inline std::vector<Vec> span_basis(const std::vector<Vec> &vectors)
{
  if (vectors.empty())
    return {};
  Matrix m = Matrix::from_rows(vectors, vectors.front().size());
  auto pivots = rref(m);
  std::vector<Vec> basis;
  for (std::size_t i = 0; i < pivots.size(); ++i)
    basis.push_back(m.row(i));
  return basis;
}

inline bool in_span(const std::vector<Vec> &vectors, const Vec &v)
{
  if (vectors.empty())
    return is_zero(v);
  auto with = vectors;
  with.push_back(v);
  return rank_of(with) == rank_of(vectors);
}

inline bool same_span(const std::vector<Vec> &a, const std::vector<Vec> &b)
{
  std::size_t ra = rank_of(a);
  if (ra != rank_of(b))
    return false;
  auto both = a;
  both.insert(both.end(), b.begin(), b.end());
  return rank_of(both) == ra;
}

/// Floating-point rank estimate with partial pivoting. Used only to pre-screen
/// candidates in sampling loops; never a verdict.
inline std::size_t float_rank(const std::vector<Vec> &vectors, double tol = 1e-9)
{
  if (vectors.empty())
    return 0;
  const std::size_t rows = vectors.size(), cols = vectors.front().size();
  std::vector<std::vector<double>> a(rows, std::vector<double>(cols));
  double scale = 0;
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < cols; ++j) {
      a[i][j] = vectors[i][j].get_d();
      scale = std::max(scale, std::abs(a[i][j]));
    }
  if (scale == 0)
    return 0;
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t p = r;
    for (std::size_t i = r + 1; i < rows; ++i)
      if (std::abs(a[i][c]) > std::abs(a[p][c]))
        p = i;
    if (std::abs(a[p][c]) <= tol * scale)
      continue;
    std::swap(a[p], a[r]);
    for (std::size_t i = r + 1; i < rows; ++i) {
      double f = a[i][c] / a[r][c];
      for (std::size_t j = c; j < cols; ++j)
        a[i][j] -= f * a[r][j];
    }
    ++r;
  }
  return r;
}

/// Sparse row, sorted by column, no zero entries.
using SparseRow = std::vector<std::pair<std::size_t, Rational>>;

/// Incremental exact echelon form over sparse rows. Used for the large but very
/// sparse systems of the invariant solver.
class SparseEchelon
{
public:
  explicit SparseEchelon(std::size_t cols) : cols_(cols) {}

  std::size_t cols() const { return cols_; }
  std::size_t rank() const { return pivots_.size(); }

  /// Reduces `row` against the current pivots; the remainder is returned
  /// (empty when `row` is in the span).
  SparseRow reduce(SparseRow row) const
  {
    std::size_t start = 0;
    while (start < row.size()) {
      auto it = pivots_.find(row[start].first);
      if (it == pivots_.end()) {
        ++start;
        continue;
      }
      Rational factor = -row[start].second;
      row = axpy(row, factor, it->second);
    }
    return row;
  }

  /// Inserts a row; returns true when it increased the rank.
  bool insert(SparseRow row)
  {
    row = reduce(std::move(row));
    if (row.empty())
      return false;
    Rational inv = 1 / row.front().second;
    for (auto &e : row)
      e.second *= inv;
    std::size_t col = row.front().first;
    pivots_.emplace(col, std::move(row));
    return true;
  }

  /// Basis of the right nullspace of the inserted rows.
  std::vector<SparseRow> nullspace() const
  {
    // Back-substitute into reduced row echelon form.
    std::map<std::size_t, SparseRow> reduced = pivots_;
    for (auto it = reduced.rbegin(); it != reduced.rend(); ++it) {
      const std::size_t c = it->first;
      const SparseRow &p = it->second;
      for (auto jt = reduced.begin(); jt != reduced.end() && jt->first < c; ++jt) {
        const Rational *coef = find(jt->second, c);
        if (coef) {
          Rational factor = -*coef;
          jt->second = axpy(jt->second, factor, p);
        }
      }
    }
    std::vector<SparseRow> basis;
    for (std::size_t f = 0; f < cols_; ++f) {
      if (reduced.count(f))
        continue;
      SparseRow v;
      v.emplace_back(f, Rational(1));
      for (const auto &[c, row] : reduced) {
        const Rational *coef = find(row, f);
        if (coef)
          v.emplace_back(c, -*coef);
      }
      std::sort(v.begin(), v.end(), [](const auto &a, const auto &b) { return a.first < b.first; });
      basis.push_back(std::move(v));
    }
    return basis;
  }

  static SparseRow axpy(const SparseRow &x, const Rational &alpha, const SparseRow &y)
  {
    SparseRow out;
    out.reserve(x.size() + y.size());
    std::size_t i = 0, j = 0;
    while (i < x.size() || j < y.size()) {
      if (j == y.size() || (i < x.size() && x[i].first < y[j].first)) {
        out.push_back(x[i++]);
      } else if (i == x.size() || y[j].first < x[i].first) {
        out.emplace_back(y[j].first, alpha * y[j].second);
        ++j;
      } else {
        Rational s = x[i].second + alpha * y[j].second;
        if (sgn(s) != 0)
          out.emplace_back(x[i].first, std::move(s));
        ++i;
        ++j;
      }
    }
    return out;
  }

private:
  static const Rational *find(const SparseRow &row, std::size_t col)
  {
    auto it = std::lower_bound(row.begin(), row.end(), col,
                               [](const auto &e, std::size_t c) { return e.first < c; });
    if (it != row.end() && it->first == col)
      return &it->second;
    return nullptr;
  }

  std::size_t cols_;
  std::map<std::size_t, SparseRow> pivots_;
};

} // namespace mfhess
