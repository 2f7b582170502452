#pragma once

#include <algorithm>
#include <vector>

#include "hgreg/numerics/complex.hpp"

namespace hgreg {

namespace detail {

inline bool is_nonpositive_integer(const Complex& z) {
  return z.im == 0 && z.re <= 0 && is_integer(z.re);
}

inline void check_pole(const Complex& z, const char* fn) {
  if (is_nonpositive_integer(z))
    throw Error(ErrorCode::pole, std::string(fn) + " at non-positive integer " + to_string(z.re, 10));
}

// Distance the argument is raised before the asymptotic series is used. With
// |w| >= P/2 + 5 the Stirling terms fall below 10^-(P+10) well before they
// start to grow again.
inline Real stirling_threshold() { return Real(working_digits() / 2 + 10); }

// Shift count n so that Re(z) + n >= stirling_threshold().
inline long stirling_shift(const Complex& z) {
  Real need = stirling_threshold() - z.re;
  if (need <= 0) return 0;
  return static_cast<long>(boost::multiprecision::ceil(need).convert_to<long>());
}

}  // namespace detail

// log Gamma, continuous on the plane cut along (-inf, 0]: the upward
// recurrence keeps every z + k in the half plane of z, so the principal logs
// add up to the principal branch.
inline Complex ln_gamma(const Complex& z) {
  detail::check_pole(z, "ln_gamma");
  const auto& k = constants();
  long n = detail::stirling_shift(z);
  Complex w = z + Complex(Real(n));
  Complex shift_sum;
  for (long j = 0; j < n; ++j) shift_sum += log(z + Complex(Real(j)));

  Complex lw = log(w);
  Complex s = (w - Complex(Real(1) / 2)) * lw - w + Complex(boost::multiprecision::log(2 * k.pi) / 2);
  Real tol = tolerance(-10);
  Complex winv = inverse(w);
  Complex winv2 = winv * winv;
  Complex pw = winv;
  std::size_t count = 8;
  for (std::size_t j = 1;; ++j) {
    if (j >= count) count *= 2;
    const auto& b = bernoulli_b2n_table(count);
    Complex term = pw * (b[j] / Real(2 * j * (2 * j - 1)));
    s += term;
    if (abs(term) < tol * (1 + abs(s))) break;
    if (j > 4 * working_digits() + 100)
      throw Error(ErrorCode::non_convergence, "ln_gamma asymptotic series");
    pw *= winv2;
  }
  return s - shift_sum;
}

inline Complex gamma(const Complex& z) {
  detail::check_pole(z, "gamma");
  const auto& k = constants();
  if (z.re < Real(1) / 2) {
    // Reflection keeps the exp(ln_gamma) route away from large negative Re z.
    Complex s = sin(z * k.pi);
    return Complex(k.pi) / (s * exp(ln_gamma(Complex(Real(1)) - z)));
  }
  return exp(ln_gamma(z));
}

inline Complex digamma(const Complex& z) {
  detail::check_pole(z, "digamma");
  const auto& k = constants();
  if (z.re < 0) {
    // psi(1-z) - psi(z) = pi cot(pi z)
    Complex pz = z * k.pi;
    return digamma(Complex(Real(1)) - z) - Complex(k.pi) * cos(pz) / sin(pz);
  }
  long n = detail::stirling_shift(z);
  Complex shift_sum;
  for (long j = 0; j < n; ++j) shift_sum += inverse(z + Complex(Real(j)));
  Complex w = z + Complex(Real(n));
  Complex winv = inverse(w);
  Complex winv2 = winv * winv;
  Complex s = log(w) - winv / 2;
  Complex pw = winv2;
  Real tol = tolerance(-10);
  std::size_t count = 8;
  for (std::size_t j = 1;; ++j) {
    if (j >= count) count *= 2;
    const auto& b = bernoulli_b2n_table(count);
    Complex term = pw * (b[j] / Real(2 * j));
    s -= term;
    if (abs(term) < tol * (1 + abs(s))) break;
    if (j > 4 * working_digits() + 100)
      throw Error(ErrorCode::non_convergence, "digamma asymptotic series");
    pw *= winv2;
  }
  return s - shift_sum;
}

inline Real digamma(const Real& x) { return digamma(Complex(x)).re; }

inline Complex pochhammer(const Complex& a, unsigned n) {
  Complex r(Real(1));
  for (unsigned k = 0; k < n; ++k) r *= a + Complex(Real(k));
  return r;
}

inline Real pochhammer(const Real& a, unsigned n) {
  Real r = 1;
  for (unsigned k = 0; k < n; ++k) r *= a + k;
  return r;
}

namespace detail {

// Gamma(s, x) for integer s = m <= 0 via E_1 and the downward recurrence
// Gamma(s, x) = (Gamma(s+1, x) - x^s e^-x) / s.
inline Real upper_gamma_nonpositive_integer(long m, const Real& x) {
  const auto& k = constants();
  Real e1;
  Real tol = tolerance(-5);
  if (x <= 2) {
    Real sum = 0, term = 1;
    for (long n = 1;; ++n) {
      term *= -x / n;
      Real add = term / n;
      sum += add;
      if (abs(add) < tol * abs(sum)) break;
    }
    e1 = -k.euler - log(x) - sum;
  } else {
    // Modified Lentz on E_1(x) = e^-x / (x + 1 - 1/(x + 3 - 4/(x + 5 - ...))).
    Real tiny = pow10(-static_cast<int>(3 * working_digits()));
    Real b = x + 1;
    Real c = 1 / tiny;
    Real d = 1 / b;
    Real h = d;
    for (long i = 1;; ++i) {
      Real an = -Real(i) * i;
      b += 2;
      d = an * d + b;
      if (d == 0) d = tiny;
      c = b + an / c;
      if (c == 0) c = tiny;
      d = 1 / d;
      Real delta = c * d;
      h *= delta;
      if (abs(delta - 1) < tol) break;
      if (i > 100000) throw Error(ErrorCode::non_convergence, "E1 continued fraction");
    }
    e1 = h * exp(-x);
  }
  Real g = e1;
  Real ex = exp(-x);
  for (long s = -1; s >= m; --s) g = (g - pow(x, Real(s)) * ex) / s;
  return g;
}

}  // namespace detail

// Gamma(s, x) for real x > 0. Continued fraction when x > |s| + 1, power
// series for gamma(s, x) otherwise. Near a non-positive integer the series
// cancels against Gamma(s); that loss is covered by guard digits.
inline Complex upper_incomplete_gamma(const Complex& s, const Real& x) {
  if (x <= 0) throw Error(ErrorCode::invalid_argument, "upper_incomplete_gamma needs x > 0");
  if (detail::is_nonpositive_integer(s))
    return Complex(detail::upper_gamma_nonpositive_integer(s.re.convert_to<long>(), x));
  if (s.im == 0 && s.re > 0 && is_integer(s.re) && s.re < 64) {
    // (m-1)! e^-x sum_{j<m} x^j / j!
    long m = s.re.convert_to<long>();
    Real term = 1, sum = 1;
    for (long j = 1; j < m; ++j) {
      term *= x / j;
      sum += term;
    }
    Real fact = 1;
    for (long j = 2; j < m; ++j) fact *= j;
    return Complex(fact * sum * exp(-x));
  }

  if (x > abs(s) + 1) {
    // Gamma(s,x) = x^s e^-x / (x+1-s - 1(1-s)/(x+3-s - 2(2-s)/(x+5-s - ...)))
    Real tol = tolerance(-5);
    Real tiny = pow10(-static_cast<int>(3 * working_digits()));
    Complex b = Complex(x + 1) - s;
    Complex c = Complex(1 / tiny);
    Complex d = inverse(b);
    Complex h = d;
    for (long i = 1;; ++i) {
      Complex an = -(Complex(Real(i)) - s) * Real(i);
      b += Complex(Real(2));
      d = an * d + b;
      if (norm(d) == 0) d = Complex(tiny);
      c = b + an / c;
      if (norm(c) == 0) c = Complex(tiny);
      d = inverse(d);
      Complex delta = c * d;
      h *= delta;
      if (abs(delta - Complex(Real(1))) < tol) break;
      if (i > 200000) throw Error(ErrorCode::non_convergence, "incomplete gamma continued fraction");
    }
    return h * exp(s * log(Complex(x)) - Complex(x));
  }

  // Distance to the nearest non-positive integer decides the guard digits.
  Real nearest = boost::multiprecision::round(s.re);
  unsigned guard = 10;
  if (nearest <= 0) {
    Real dist = abs(Complex(s.re - nearest, s.im));
    Real lost = -log10(dist);
    if (lost > 0) guard += static_cast<unsigned>(std::min(lost.convert_to<double>(), 4.0 * working_digits()));
  }
  unsigned p = working_digits();
  Complex result;
  {
    WorkingPrecision wp(p + guard);
    Complex sw = at_working(s);
    Real xw = at_working(x);
    Real tol = tolerance(-5);
    // gamma(s, x) = sum (-1)^n x^(s+n) / (n! (s+n))
    Complex sum;
    Real term = 1;
    for (long n = 0;; ++n) {
      if (n > 0) term *= -xw / n;
      Complex add = Complex(term) / (sw + Complex(Real(n)));
      sum += add;
      if (n > 2 && abs(add) < tol * abs(sum)) break;
      if (n > 100000) throw Error(ErrorCode::non_convergence, "incomplete gamma series");
    }
    Complex lower = sum * exp(sw * log(Complex(xw)));
    result = gamma(sw) - lower;
  }
  return {Real(result.re, p), Real(result.im, p)};
}

// e^{2 pi i m / n}; quarter turns are exact.
inline Complex root_of_unity(long m, long n) {
  if (n <= 0) throw Error(ErrorCode::invalid_argument, "root_of_unity needs n >= 1");
  long j = ((m % n) + n) % n;
  if ((4 * j) % n == 0) {
    switch ((4 * j) / n) {
      case 0: return {Real(1), Real(0)};
      case 1: return {Real(0), Real(1)};
      case 2: return {Real(-1), Real(0)};
      default: return {Real(0), Real(-1)};
    }
  }
  return polar(Real(1), 2 * constants().pi * j / n);
}

inline std::vector<Complex> roots_of_unity(unsigned n) {
  if (n == 0) throw Error(ErrorCode::invalid_argument, "roots_of_unity needs n >= 1");
  std::vector<Complex> out;
  out.reserve(n);
  for (unsigned j = 0; j < n; ++j) out.push_back(root_of_unity(j, n));
  return out;
}

}  // namespace hgreg
