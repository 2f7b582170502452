#pragma once

#include <ostream>
#include <string>

#include "hgreg/numerics/real.hpp"

namespace hgreg {

// std::complex<T> is unspecified for non-arithmetic T, so the complex carrier
// is a plain pair with the handful of elementary functions the library needs.
struct Complex {
  Real re;
  Real im;

  Complex() : re(0), im(0) {}
  Complex(const Real& r) : re(r), im(0) {}  // NOLINT(google-explicit-constructor)
  Complex(int r) : re(r), im(0) {}           // NOLINT(google-explicit-constructor)
  Complex(const Real& r, const Real& i) : re(r), im(i) {}

  Complex& operator+=(const Complex& o) {
    re += o.re;
    im += o.im;
    return *this;
  }
  Complex& operator-=(const Complex& o) {
    re -= o.re;
    im -= o.im;
    return *this;
  }
  Complex& operator*=(const Complex& o) {
    Real r = re * o.re - im * o.im;
    im = re * o.im + im * o.re;
    re = std::move(r);
    return *this;
  }
  Complex& operator*=(const Real& s) {
    re *= s;
    im *= s;
    return *this;
  }
  Complex& operator/=(const Real& s) {
    re /= s;
    im /= s;
    return *this;
  }
  Complex& operator/=(const Complex& o);
};

inline Complex operator-(const Complex& a) { return {-a.re, -a.im}; }
inline Complex operator+(const Complex& a, const Complex& b) { return {a.re + b.re, a.im + b.im}; }
inline Complex operator-(const Complex& a, const Complex& b) { return {a.re - b.re, a.im - b.im}; }
inline Complex operator*(const Complex& a, const Complex& b) {
  return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
}
inline Complex operator*(const Complex& a, const Real& s) { return {a.re * s, a.im * s}; }
inline Complex operator*(const Real& s, const Complex& a) { return {a.re * s, a.im * s}; }
inline Complex operator*(const Complex& a, int s) { return {a.re * s, a.im * s}; }
inline Complex operator*(int s, const Complex& a) { return {a.re * s, a.im * s}; }
inline Complex operator/(const Complex& a, const Real& s) { return {a.re / s, a.im / s}; }
inline Complex operator/(const Complex& a, int s) { return {a.re / s, a.im / s}; }

inline Real norm(const Complex& z) { return z.re * z.re + z.im * z.im; }
inline Real abs(const Complex& z) { return boost::multiprecision::hypot(z.re, z.im); }
inline Real arg(const Complex& z) { return boost::multiprecision::atan2(z.im, z.re); }
inline Complex conj(const Complex& z) { return {z.re, -z.im}; }

inline Complex inverse(const Complex& z) {
  // Scale first so that |z|^2 cannot overflow for extreme exponents.
  Real n = norm(z);
  if (n == 0) throw Error(ErrorCode::invalid_argument, "division by zero");
  return {z.re / n, -z.im / n};
}

inline Complex operator/(const Complex& a, const Complex& b) {
  if (b.im == 0) return a / b.re;
  return a * inverse(b);
}
inline Complex operator/(const Real& a, const Complex& b) { return Complex(a) / b; }
inline Complex operator/(int a, const Complex& b) { return Complex(Real(a)) / b; }
inline Complex& Complex::operator/=(const Complex& o) { return *this = *this / o; }

inline bool operator==(const Complex& a, const Complex& b) { return a.re == b.re && a.im == b.im; }
inline bool operator!=(const Complex& a, const Complex& b) { return !(a == b); }

inline Complex I() { return {Real(0), Real(1)}; }

inline Complex polar(const Real& r, const Real& theta) {
  return {r * boost::multiprecision::cos(theta), r * boost::multiprecision::sin(theta)};
}

inline Complex exp(const Complex& z) { return polar(boost::multiprecision::exp(z.re), z.im); }

// Principal branch, arg in (-pi, pi].
inline Complex log(const Complex& z) {
  if (z.re == 0 && z.im == 0) throw Error(ErrorCode::pole, "log(0)");
  return {boost::multiprecision::log(abs(z)), arg(z)};
}

inline Complex sqrt(const Complex& z) {
  if (z.re == 0 && z.im == 0) return z;
  Real r = abs(z);
  Real a = boost::multiprecision::sqrt((r + boost::multiprecision::abs(z.re)) / 2);
  if (z.re >= 0) return {a, z.im / (2 * a)};
  Real b = z.im < 0 ? Real(-a) : a;
  return {boost::multiprecision::abs(z.im) / (2 * a), b};
}

// Principal power exp(w log z); 0^w = 0 for Re w > 0.
inline Complex pow(const Complex& z, const Complex& w) {
  if (z.re == 0 && z.im == 0) {
    if (w.re > 0) return Complex();
    throw Error(ErrorCode::pole, "0 raised to a power with non-positive real part");
  }
  return exp(w * log(z));
}

inline Complex pow(Complex z, long long n) {
  if (n < 0) return inverse(pow(z, -n));
  if (n == 0) return Complex(Real(1));
  while (!(n & 1)) {
    z *= z;
    n >>= 1;
  }
  Complex r = z;
  while (n >>= 1) {
    z *= z;
    if (n & 1) r *= z;
  }
  return r;
}

inline Complex sin(const Complex& z) {
  return {boost::multiprecision::sin(z.re) * boost::multiprecision::cosh(z.im),
          boost::multiprecision::cos(z.re) * boost::multiprecision::sinh(z.im)};
}

inline Complex cos(const Complex& z) {
  return {boost::multiprecision::cos(z.re) * boost::multiprecision::cosh(z.im),
          -boost::multiprecision::sin(z.re) * boost::multiprecision::sinh(z.im)};
}

inline Complex at_working(const Complex& z) { return {at_working(z.re), at_working(z.im)}; }

inline std::string to_string(const Complex& z, int digits = -1) {
  return to_string(z.re, digits) + (z.im < 0 ? " - " : " + ") +
         to_string(boost::multiprecision::abs(z.im), digits) + "i";
}

inline std::ostream& operator<<(std::ostream& os, const Complex& z) { return os << to_string(z); }

}  // namespace hgreg
