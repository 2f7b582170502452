#pragma once

// Small dense complex matrices: enough for monodromy matrices of order <= 6.

#include <algorithm>
#include <numeric>
#include <vector>

#include "hgreg/numerics/complex.hpp"

namespace hgreg {

class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), a_(rows * cols) {}

  static Matrix identity(std::size_t n) {
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = Complex(Real(1));
    return m;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  Complex& operator()(std::size_t i, std::size_t j) { return a_[i * cols_ + j]; }
  const Complex& operator()(std::size_t i, std::size_t j) const { return a_[i * cols_ + j]; }

  std::vector<Complex> column(std::size_t j) const {
    std::vector<Complex> c(rows_);
    for (std::size_t i = 0; i < rows_; ++i) c[i] = (*this)(i, j);
    return c;
  }
  void set_column(std::size_t j, const std::vector<Complex>& c) {
    for (std::size_t i = 0; i < rows_; ++i) (*this)(i, j) = c[i];
  }

 private:
  std::size_t rows_ = 0, cols_ = 0;
  std::vector<Complex> a_;
};

inline Matrix operator*(const Matrix& x, const Matrix& y) {
  if (x.cols() != y.rows()) throw Error(ErrorCode::invalid_argument, "matrix shape mismatch");
  Matrix r(x.rows(), y.cols());
  for (std::size_t i = 0; i < x.rows(); ++i)
    for (std::size_t j = 0; j < y.cols(); ++j) {
      Complex s;
      for (std::size_t k = 0; k < x.cols(); ++k) s += x(i, k) * y(k, j);
      r(i, j) = s;
    }
  return r;
}

inline Matrix operator+(const Matrix& x, const Matrix& y) {
  Matrix r = x;
  for (std::size_t i = 0; i < x.rows(); ++i)
    for (std::size_t j = 0; j < x.cols(); ++j) r(i, j) += y(i, j);
  return r;
}

inline Matrix operator-(const Matrix& x, const Matrix& y) {
  Matrix r = x;
  for (std::size_t i = 0; i < x.rows(); ++i)
    for (std::size_t j = 0; j < x.cols(); ++j) r(i, j) -= y(i, j);
  return r;
}

inline Matrix operator*(const Complex& s, const Matrix& x) {
  Matrix r = x;
  for (std::size_t i = 0; i < x.rows(); ++i)
    for (std::size_t j = 0; j < x.cols(); ++j) r(i, j) = s * x(i, j);
  return r;
}

inline Matrix power(const Matrix& x, unsigned e) {
  Matrix r = Matrix::identity(x.rows());
  for (unsigned k = 0; k < e; ++k) r = r * x;
  return r;
}

// Frobenius norm.
inline Real norm(const Matrix& x) {
  Real s = 0;
  for (std::size_t i = 0; i < x.rows(); ++i)
    for (std::size_t j = 0; j < x.cols(); ++j) s += norm(x(i, j));
  return sqrt(s);
}

inline Matrix inverse(const Matrix& m) {
  std::size_t n = m.rows();
  Matrix a = m, inv = Matrix::identity(n);
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t piv = c;
    for (std::size_t r = c + 1; r < n; ++r)
      if (abs(a(r, c)) > abs(a(piv, c))) piv = r;
    if (norm(a(piv, c)) == 0) throw Error(ErrorCode::invalid_argument, "singular matrix");
    if (piv != c)
      for (std::size_t j = 0; j < n; ++j) {
        std::swap(a(c, j), a(piv, j));
        std::swap(inv(c, j), inv(piv, j));
      }
    Complex p = inverse(a(c, c));
    for (std::size_t j = 0; j < n; ++j) {
      a(c, j) *= p;
      inv(c, j) *= p;
    }
    for (std::size_t r = 0; r < n; ++r) {
      if (r == c) continue;
      Complex f = a(r, c);
      if (norm(f) == 0) continue;
      for (std::size_t j = 0; j < n; ++j) {
        a(r, j) -= f * a(c, j);
        inv(r, j) -= f * inv(c, j);
      }
    }
  }
  return inv;
}

inline Complex determinant(Matrix a) {
  std::size_t n = a.rows();
  Complex det(Real(1));
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t piv = c;
    for (std::size_t r = c + 1; r < n; ++r)
      if (abs(a(r, c)) > abs(a(piv, c))) piv = r;
    if (norm(a(piv, c)) == 0) return Complex();
    if (piv != c) {
      for (std::size_t j = 0; j < n; ++j) std::swap(a(c, j), a(piv, j));
      det = -det;
    }
    det *= a(c, c);
    Complex p = inverse(a(c, c));
    for (std::size_t r = c + 1; r < n; ++r) {
      Complex f = a(r, c) * p;
      for (std::size_t j = c; j < n; ++j) a(r, j) -= f * a(c, j);
    }
  }
  return det;
}

// Rank by Gaussian elimination with complete pivoting; pivots below
// tol * max(1, |m|) count as zero.
inline std::size_t numeric_rank(Matrix a, const Real& tol) {
  std::size_t n = a.rows(), m = a.cols();
  Real scale = std::max(Real(1), norm(a));
  std::size_t rank = 0;
  for (std::size_t step = 0; step < std::min(n, m); ++step) {
    std::size_t pr = step, pc = step;
    Real best = -1;
    for (std::size_t i = step; i < n; ++i)
      for (std::size_t j = step; j < m; ++j)
        if (abs(a(i, j)) > best) {
          best = abs(a(i, j));
          pr = i;
          pc = j;
        }
    if (best <= tol * scale) break;
    for (std::size_t j = 0; j < m; ++j) std::swap(a(step, j), a(pr, j));
    for (std::size_t i = 0; i < n; ++i) std::swap(a(i, step), a(i, pc));
    Complex p = inverse(a(step, step));
    for (std::size_t i = step + 1; i < n; ++i) {
      Complex f = a(i, step) * p;
      for (std::size_t j = step; j < m; ++j) a(i, j) -= f * a(step, j);
    }
    ++rank;
  }
  return rank;
}

// Monic characteristic polynomial det(x I - m), coefficients from x^0 up to
// x^n, by Faddeev-LeVerrier.
inline std::vector<Complex> characteristic_polynomial(const Matrix& m) {
  std::size_t n = m.rows();
  std::vector<Complex> c(n + 1);
  c[n] = Complex(Real(1));
  Matrix mk(n, n);  // M_0 = 0
  for (std::size_t k = 1; k <= n; ++k) {
    Matrix t = m * mk;
    for (std::size_t i = 0; i < n; ++i) t(i, i) += c[n - k + 1];
    mk = t;
    Matrix am = m * mk;
    Complex tr;
    for (std::size_t i = 0; i < n; ++i) tr += am(i, i);
    c[n - k] = -tr / Real(static_cast<long>(k));
  }
  return c;
}

inline Complex eval_polynomial(const std::vector<Complex>& c, const Complex& x) {
  Complex r;
  for (std::size_t i = c.size(); i-- > 0;) r = r * x + c[i];
  return r;
}

// All roots of sum c_i x^i by Aberth-Ehrlich iteration. Clustered roots
// converge linearly, so the iteration cap is generous.
inline std::vector<Complex> polynomial_roots(const std::vector<Complex>& coeffs) {
  std::size_t n = coeffs.size() - 1;
  while (n > 0 && norm(coeffs[n]) == 0) --n;
  if (n == 0) return {};
  std::vector<Complex> c(coeffs.begin(), coeffs.begin() + static_cast<long>(n) + 1);
  Complex lead = c[n];
  for (auto& v : c) v = v / lead;
  std::vector<Complex> dc(n);
  for (std::size_t i = 1; i <= n; ++i) dc[i - 1] = c[i] * Real(static_cast<long>(i));

  Real radius = 0;
  for (std::size_t i = 0; i < n; ++i) radius = std::max(radius, abs(c[i]));
  radius = 1 + radius;
  std::vector<Complex> z(n);
  const auto& k = constants();
  for (std::size_t i = 0; i < n; ++i) z[i] = polar(radius / 2, 2 * k.pi * (Real(i) + Real(1) / 4) / n);

  Real tol = tolerance(2);
  for (int it = 0; it < 5000; ++it) {
    Real worst = 0;
    for (std::size_t i = 0; i < n; ++i) {
      Complex p = eval_polynomial(c, z[i]);
      if (norm(p) == 0) continue;
      Complex ratio = p / eval_polynomial(dc, z[i]);
      Complex rep;
      for (std::size_t j = 0; j < n; ++j)
        if (j != i) rep += inverse(z[i] - z[j]);
      Complex step = ratio / (Complex(Real(1)) - ratio * rep);
      z[i] -= step;
      worst = std::max(worst, abs(step) / std::max(Real(1), abs(z[i])));
    }
    if (worst < tol) break;
  }
  return z;
}

inline std::vector<Complex> eigenvalues(const Matrix& m) { return polynomial_roots(characteristic_polynomial(m)); }

// Max distance under the best one-to-one matching of two small multisets.
inline Real multiset_distance(std::vector<Complex> a, const std::vector<Complex>& b) {
  if (a.size() != b.size()) throw Error(ErrorCode::invalid_argument, "multiset size mismatch");
  std::vector<std::size_t> perm(a.size());
  std::iota(perm.begin(), perm.end(), 0);
  Real best = -1;
  do {
    Real worst = 0;
    for (std::size_t i = 0; i < a.size(); ++i) worst = std::max(worst, abs(a[perm[i]] - b[i]));
    if (best < 0 || worst < best) best = worst;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return best;
}

}  // namespace hgreg
