#pragma once

#include <map>
#include <string>
#include <vector>

#include "geoalg/poly.hpp"

namespace geoalg {

/// Dense square-or-rectangular matrix over a commutative ring.
template <class T>
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols) : r_(rows), c_(cols), a_(rows * cols, T(0)) {}
  explicit Matrix(std::size_t n) : Matrix(n, n) {}
  Matrix(std::initializer_list<std::initializer_list<T>> rows) {
    r_ = rows.size();
    c_ = r_ ? rows.begin()->size() : 0;
    for (auto& row : rows) {
      if (row.size() != c_) throw AlgebraError("ragged matrix literal");
      for (auto& x : row) a_.push_back(x);
    }
  }

  static Matrix identity(std::size_t n) {
    Matrix m(n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = T(1);
    return m;
  }

  std::size_t rows() const { return r_; }
  std::size_t cols() const { return c_; }
  bool square() const { return r_ == c_; }
  T& operator()(std::size_t i, std::size_t j) { return a_[i * c_ + j]; }
  const T& operator()(std::size_t i, std::size_t j) const { return a_[i * c_ + j]; }

  friend bool operator==(const Matrix& x, const Matrix& y) {
    return x.r_ == y.r_ && x.c_ == y.c_ && x.a_ == y.a_;
  }
  friend bool operator!=(const Matrix& x, const Matrix& y) { return !(x == y); }

  friend Matrix operator+(const Matrix& x, const Matrix& y) {
    check_same(x, y);
    Matrix r = x;
    for (std::size_t i = 0; i < r.a_.size(); ++i) r.a_[i] = r.a_[i] + y.a_[i];
    return r;
  }
  friend Matrix operator-(const Matrix& x, const Matrix& y) {
    check_same(x, y);
    Matrix r = x;
    for (std::size_t i = 0; i < r.a_.size(); ++i) r.a_[i] = r.a_[i] - y.a_[i];
    return r;
  }
  Matrix operator-() const {
    Matrix r = *this;
    for (auto& x : r.a_) x = -x;
    return r;
  }
  friend Matrix operator*(const Matrix& x, const Matrix& y) {
    if (x.c_ != y.r_) throw AlgebraError("matrix dimension mismatch");
    Matrix r(x.r_, y.c_);
    for (std::size_t i = 0; i < x.r_; ++i)
      for (std::size_t k = 0; k < x.c_; ++k) {
        const T& xik = x(i, k);
        if (xik == T(0)) continue;
        for (std::size_t j = 0; j < y.c_; ++j) r(i, j) = r(i, j) + xik * y(k, j);
      }
    return r;
  }
  friend Matrix operator*(const T& s, const Matrix& m) {
    Matrix r = m;
    for (auto& x : r.a_) x = s * x;
    return r;
  }

  Matrix transpose() const {
    Matrix r(c_, r_);
    for (std::size_t i = 0; i < r_; ++i)
      for (std::size_t j = 0; j < c_; ++j) r(j, i) = (*this)(i, j);
    return r;
  }

  template <class F>
  auto map(F f) const {
    using U = decltype(f(a_[0]));
    Matrix<U> r(r_, c_);
    for (std::size_t i = 0; i < r_; ++i)
      for (std::size_t j = 0; j < c_; ++j) r(i, j) = f((*this)(i, j));
    return r;
  }

  Matrix block(std::size_t i0, std::size_t j0, std::size_t nr, std::size_t nc) const {
    Matrix r(nr, nc);
    for (std::size_t i = 0; i < nr; ++i)
      for (std::size_t j = 0; j < nc; ++j) r(i, j) = (*this)(i0 + i, j0 + j);
    return r;
  }

 private:
  std::size_t r_ = 0, c_ = 0;
  std::vector<T> a_;

  static void check_same(const Matrix& x, const Matrix& y) {
    if (x.r_ != y.r_ || x.c_ != y.c_) throw AlgebraError("matrix dimension mismatch");
  }
};

using PolyMatrix = Matrix<Poly>;
using QMatrix = Matrix<Rational>;

inline PolyMatrix mat_mul(const PolyMatrix& a, const PolyMatrix& b) {
  if (a.cols() != b.rows() || !a.square() || !b.square())
    throw AlgebraError("mat_mul: dimension mismatch");
  return a * b;
}

/// Determinant by Laplace expansion along rows with memoized column
/// subsets; division free, so it works over any commutative ring.
template <class T>
T det(const Matrix<T>& m) {
  if (!m.square()) throw AlgebraError("det of a non-square matrix");
  std::size_t n = m.rows();
  if (n == 0) return T(1);
  if (n > 20) throw AlgebraError("det: dimension too large");
  // minors[mask] = det of rows (n - popcount .. n-1) and the columns in mask
  std::vector<T> minors(std::size_t(1) << n, T(0));
  std::vector<bool> done(minors.size(), false);
  minors[0] = T(1);
  done[0] = true;
  for (std::size_t mask = 1; mask < minors.size(); ++mask) {
    int k = __builtin_popcountll(mask);
    std::size_t row = n - std::size_t(k);
    T acc(0);
    int sign = 1;
    for (std::size_t j = 0; j < n; ++j) {
      if (!(mask >> j & 1)) continue;
      const T& x = m(row, j);
      if (!(x == T(0))) {
        T term = x * minors[mask & ~(std::size_t(1) << j)];
        acc = sign > 0 ? T(acc + term) : T(acc - term);
      }
      sign = -sign;
    }
    minors[mask] = acc;
  }
  return minors.back();
}

inline Poly mat_det(const PolyMatrix& a) { return det(a); }

/// Inverse over a field by Gauss-Jordan elimination.
inline QMatrix inverse(const QMatrix& m) {
  if (!m.square()) throw AlgebraError("inverse of a non-square matrix");
  std::size_t n = m.rows();
  QMatrix a = m, inv = QMatrix::identity(n);
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t p = c;
    while (p < n && a(p, c) == 0) ++p;
    if (p == n) throw AlgebraError("singular matrix");
    if (p != c)
      for (std::size_t j = 0; j < n; ++j) {
        std::swap(a(p, j), a(c, j));
        std::swap(inv(p, j), inv(c, j));
      }
    Rational piv = a(c, c);
    for (std::size_t j = 0; j < n; ++j) {
      a(c, j) /= piv;
      inv(c, j) /= piv;
    }
    for (std::size_t i = 0; i < n; ++i) {
      if (i == c || a(i, c) == 0) continue;
      Rational f = a(i, c);
      for (std::size_t j = 0; j < n; ++j) {
        a(i, j) -= f * a(c, j);
        inv(i, j) -= f * inv(c, j);
      }
    }
  }
  return inv;
}

/// Rank over the rationals.
inline std::size_t rank(QMatrix a) {
  std::size_t r = 0;
  for (std::size_t c = 0; c < a.cols() && r < a.rows(); ++c) {
    std::size_t p = r;
    while (p < a.rows() && a(p, c) == 0) ++p;
    if (p == a.rows()) continue;
    for (std::size_t j = 0; j < a.cols(); ++j) std::swap(a(p, j), a(r, j));
    for (std::size_t i = r + 1; i < a.rows(); ++i) {
      if (a(i, c) == 0) continue;
      Rational f = a(i, c) / a(r, c);
      for (std::size_t j = c; j < a.cols(); ++j) a(i, j) -= f * a(r, j);
    }
    ++r;
  }
  return r;
}

template <class T>
Matrix<T> mat_pow(const Matrix<T>& m, int e) {
  if (e < 0) throw AlgebraError("mat_pow: negative exponent");
  Matrix<T> r = Matrix<T>::identity(m.rows()), b = m;
  while (e) {
    if (e & 1) r = r * b;
    e >>= 1;
    if (e) b = b * b;
  }
  return r;
}

inline PolyMatrix subst(const PolyMatrix& m, const Bindings& b) {
  return m.map([&](const Poly& p) { return poly_subst(p, b); });
}

/// Replace lam by lam^{-1} in every entry.
inline PolyMatrix invert_lam(const PolyMatrix& m) {
  return subst(m, {{Sym::lam(), lam(-1)}});
}

/// Coefficient matrix of lam^e.
inline PolyMatrix lam_coeff(const PolyMatrix& m, int e) {
  return m.map([&](const Poly& p) { return p.coeff(Sym::lam(), e); });
}

inline QMatrix to_rational(const PolyMatrix& m) {
  return m.map([](const Poly& p) { return p.constant_value(); });
}

inline PolyMatrix to_poly(const QMatrix& m) {
  return m.map([](const Rational& x) { return Poly(x); });
}

inline std::string to_string(const PolyMatrix& m) {
  std::string s = "[";
  for (std::size_t i = 0; i < m.rows(); ++i) {
    s += i ? ",[" : "[";
    for (std::size_t j = 0; j < m.cols(); ++j) s += (j ? "," : "") + to_string(m(i, j));
    s += "]";
  }
  return s + "]";
}

}  // namespace geoalg
