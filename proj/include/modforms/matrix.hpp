#pragma once

// Exact rational matrices. Elimination always pivots on the first nonzero entry
// of the column scanning downward, so results are reproducible.

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "modforms/poly.hpp"
#include "modforms/rational.hpp"

namespace modforms {

class RatMatrix {
 public:
  RatMatrix() = default;
  RatMatrix(long rows, long cols) : rows_(rows), cols_(cols), a_(static_cast<std::size_t>(rows * cols), 0) {
    require(rows >= 0 && cols >= 0, Errc::bad_input, "negative matrix size");
  }

  static RatMatrix identity(long n) {
    RatMatrix m(n, n);
    for (long i = 0; i < n; ++i) m(i, i) = 1;
    return m;
  }

  static RatMatrix from_rows(const std::vector<std::vector<Rational>>& rows) {
    long r = static_cast<long>(rows.size());
    long c = r ? static_cast<long>(rows[0].size()) : 0;
    RatMatrix m(r, c);
    for (long i = 0; i < r; ++i) {
      require(static_cast<long>(rows[i].size()) == c, Errc::bad_input, "ragged matrix rows");
      for (long j = 0; j < c; ++j) m(i, j) = rows[i][j];
    }
    return m;
  }

  long rows() const { return rows_; }
  long cols() const { return cols_; }
  bool is_square() const { return rows_ == cols_; }

  Rational& operator()(long i, long j) { return a_[static_cast<std::size_t>(i * cols_ + j)]; }
  const Rational& operator()(long i, long j) const { return a_[static_cast<std::size_t>(i * cols_ + j)]; }

  const std::vector<Rational>& entries() const { return a_; }

  friend bool operator==(const RatMatrix& x, const RatMatrix& y) {
    return x.rows_ == y.rows_ && x.cols_ == y.cols_ && x.a_ == y.a_;
  }

  friend RatMatrix operator+(const RatMatrix& x, const RatMatrix& y) {
    require(x.rows_ == y.rows_ && x.cols_ == y.cols_, Errc::bad_input, "matrix size mismatch");
    RatMatrix out = x;
    for (std::size_t i = 0; i < out.a_.size(); ++i) out.a_[i] += y.a_[i];
    return out;
  }

  friend RatMatrix operator*(const Rational& s, const RatMatrix& x) {
    RatMatrix out = x;
    for (auto& v : out.a_) v *= s;
    return out;
  }

  friend RatMatrix operator-(const RatMatrix& x, const RatMatrix& y) { return x + Rational(-1) * y; }

  friend RatMatrix operator*(const RatMatrix& x, const RatMatrix& y) {
    require(x.cols_ == y.rows_, Errc::bad_input, "matrix size mismatch");
    RatMatrix out(x.rows_, y.cols_);
    for (long i = 0; i < x.rows_; ++i)
      for (long k = 0; k < x.cols_; ++k) {
        if (x(i, k) == 0) continue;
        for (long j = 0; j < y.cols_; ++j) out(i, j) += x(i, k) * y(k, j);
      }
    return out;
  }

  RatMatrix transpose() const {
    RatMatrix t(cols_, rows_);
    for (long i = 0; i < rows_; ++i)
      for (long j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    return t;
  }

  Rational trace() const {
    require(is_square(), Errc::bad_input, "trace of a non-square matrix");
    Rational t = 0;
    for (long i = 0; i < rows_; ++i) t += (*this)(i, i);
    return t;
  }

  std::vector<Rational> column(long j) const {
    std::vector<Rational> v(static_cast<std::size_t>(rows_));
    for (long i = 0; i < rows_; ++i) v[i] = (*this)(i, j);
    return v;
  }

 private:
  long rows_ = 0, cols_ = 0;
  std::vector<Rational> a_;
};

namespace detail {

/// Row reduction in place; returns pivot columns.
inline std::vector<long> row_reduce(RatMatrix& m, long ncols) {
  std::vector<long> pivots;
  long r = 0;
  for (long c = 0; c < ncols && r < m.rows(); ++c) {
    long p = r;
    while (p < m.rows() && m(p, c) == 0) ++p;
    if (p == m.rows()) continue;
    if (p != r)
      for (long j = 0; j < m.cols(); ++j) std::swap(m(p, j), m(r, j));
    Rational inv_piv = 1 / m(r, c);
    for (long j = c; j < m.cols(); ++j) m(r, j) *= inv_piv;
    for (long i = 0; i < m.rows(); ++i) {
      if (i == r || m(i, c) == 0) continue;
      Rational f = m(i, c);
      for (long j = c; j < m.cols(); ++j) m(i, j) -= f * m(r, j);
    }
    pivots.push_back(c);
    ++r;
  }
  return pivots;
}

}  // namespace detail

inline long rank(const RatMatrix& m) {
  RatMatrix w = m;
  return static_cast<long>(detail::row_reduce(w, w.cols()).size());
}

inline Rational determinant(const RatMatrix& m) {
  require(m.is_square(), Errc::bad_input, "determinant of a non-square matrix");
  RatMatrix w = m;
  Rational det = 1;
  long n = m.rows();
  for (long c = 0; c < n; ++c) {
    long p = c;
    while (p < n && w(p, c) == 0) ++p;
    if (p == n) return 0;
    if (p != c) {
      for (long j = 0; j < n; ++j) std::swap(w(p, j), w(c, j));
      det = -det;
    }
    det *= w(c, c);
    for (long i = c + 1; i < n; ++i) {
      if (w(i, c) == 0) continue;
      Rational f = w(i, c) / w(c, c);
      for (long j = c; j < n; ++j) w(i, j) -= f * w(c, j);
    }
  }
  return det;
}

/// Solves A x = b for a possibly overdetermined A with independent columns.
/// Errors: NotInSpan if the system is inconsistent, InsufficientPrecision if
/// the columns are dependent on the rows supplied.
inline std::vector<Rational> solve(const RatMatrix& A, const std::vector<Rational>& b) {
  require(static_cast<long>(b.size()) == A.rows(), Errc::bad_input, "right-hand side size mismatch");
  long n = A.cols();
  RatMatrix aug(A.rows(), n + 1);
  for (long i = 0; i < A.rows(); ++i) {
    for (long j = 0; j < n; ++j) aug(i, j) = A(i, j);
    aug(i, n) = b[i];
  }
  auto pivots = detail::row_reduce(aug, n + 1);
  if (!pivots.empty() && pivots.back() == n)
    fail(Errc::not_in_span, "target is not in the span of the given vectors");
  require(static_cast<long>(pivots.size()) == n, Errc::insufficient_precision,
          "not enough coefficients to separate the basis");
  std::vector<Rational> x(static_cast<std::size_t>(n));
  for (long i = 0; i < n; ++i) x[i] = aug(i, n);
  return x;
}

inline RatMatrix inverse(const RatMatrix& m) {
  require(m.is_square(), Errc::bad_input, "inverse of a non-square matrix");
  long n = m.rows();
  RatMatrix aug(n, 2 * n);
  for (long i = 0; i < n; ++i) {
    for (long j = 0; j < n; ++j) aug(i, j) = m(i, j);
    aug(i, n + i) = 1;
  }
  auto pivots = detail::row_reduce(aug, n);
  require(static_cast<long>(pivots.size()) == n, Errc::bad_matrix, "matrix is singular");
  RatMatrix out(n, n);
  for (long i = 0; i < n; ++i)
    for (long j = 0; j < n; ++j) out(i, j) = aug(i, n + j);
  return out;
}

/// Characteristic polynomial det(x I - M) by the Faddeev-LeVerrier recursion.
inline Poly charpoly(const RatMatrix& m) {
  require(m.is_square(), Errc::bad_input, "charpoly of a non-square matrix");
  long n = m.rows();
  std::vector<Rational> c(static_cast<std::size_t>(n + 1), 0);
  c[n] = 1;
  RatMatrix Mk(n, n);  // M_0 = 0
  RatMatrix I = RatMatrix::identity(n);
  for (long k = 1; k <= n; ++k) {
    Mk = m * Mk + c[n - k + 1] * I;
    RatMatrix AM = m * Mk;
    c[n - k] = -AM.trace() / k;
  }
  return Poly(std::move(c));
}

/// Basis of the null space of A as column vectors (free variables set to 1 in turn).
inline std::vector<std::vector<Rational>> nullspace(const RatMatrix& A) {
  RatMatrix w = A;
  auto pivots = detail::row_reduce(w, w.cols());
  std::vector<bool> is_pivot(static_cast<std::size_t>(A.cols()), false);
  for (long p : pivots) is_pivot[p] = true;
  std::vector<std::vector<Rational>> out;
  for (long f = 0; f < A.cols(); ++f) {
    if (is_pivot[f]) continue;
    std::vector<Rational> v(static_cast<std::size_t>(A.cols()), 0);
    v[f] = 1;
    for (std::size_t r = 0; r < pivots.size(); ++r) v[pivots[r]] = -w(static_cast<long>(r), f);
    out.push_back(std::move(v));
  }
  return out;
}

}  // namespace modforms
