#pragma once

// Generalized hypergeometric series pFq(a; b; t) with a-posteriori tail bounds.

#include <algorithm>
#include <vector>

#include "hgreg/hypergeom/params.hpp"
#include "hgreg/numerics/special.hpp"

namespace hgreg {

struct SeriesOptions {
  std::size_t term_cap = 10'000'000;
};

namespace detail {

// Coefficient expansion of W(x) = (1 + x) prod(1 + a_i x) / prod(1 + b_j x)
// up to x^order.
inline std::vector<Real> tail_weight_series(const std::vector<Real>& upper, const std::vector<Real>& lower_with_one,
                                            std::size_t order) {
  std::vector<Real> w(order + 1, Real(0));
  w[0] = 1;
  auto mul_linear = [&](const Real& c) {  // w *= (1 + c x)
    for (std::size_t k = order; k >= 1; --k) w[k] += c * w[k - 1];
  };
  auto div_linear = [&](const Real& c) {  // w /= (1 + c x)
    for (std::size_t k = 1; k <= order; ++k) w[k] -= c * w[k - 1];
  };
  mul_linear(Real(1));
  for (const auto& a : upper) mul_linear(a);
  for (const auto& b : lower_with_one) div_linear(b);
  return w;
}

// Asymptotic tail U_N = sum_{n>=N} T_n of a convergent balanced series
// (p = q + 1 at t = 1), where T_{n+1}/T_n = prod(n + a_i)/prod(n + b_j) with
// the n! denominator folded into the b's as a "1". Writing U_N = T_N g(N),
// g(N) - R(N) g(N+1) = 1; with g(N) = H(1/N) N this becomes
// H(x) - W(x) H(x/(1+x)) = x, solved order by order for H = sum h_k x^k.
inline std::vector<Real> tail_expansion(const std::vector<Real>& upper, const std::vector<Real>& lower_with_one,
                                        std::size_t order) {
  std::vector<Real> w = tail_weight_series(upper, lower_with_one, order + 2);
  // M[m][k]: coefficient of x^m in (x/(1+x))^k.
  std::vector<std::vector<Real>> M(order + 2, std::vector<Real>(order + 2, Real(0)));
  M[0][0] = 1;
  for (std::size_t m = 1; m <= order + 1; ++m) {
    Real binom = 1;  // C(m-1, m-k), k running down from m
    for (std::size_t k = m; k >= 1; --k) {
      std::size_t l = m - k;
      M[m][k] = (l % 2 ? -binom : binom);
      // next: C(m-1, l+1) = C(m-1, l) (m-1-l)/(l+1)
      binom = binom * Real(static_cast<long>(m - 1 - l)) / Real(static_cast<long>(l + 1));
    }
  }
  std::vector<Real> h(order + 1, Real(0));
  const Real& w1 = w[1];
  for (std::size_t m = 0; m <= order; ++m) {
    Real rhs = (m == 0) ? Real(1) : Real(0);
    std::size_t L = m + 1;
    for (std::size_t j = 0; j <= L; ++j)
      for (std::size_t k = 0; k + 1 <= m && k <= L - j; ++k) rhs += w[j] * M[L - j][k] * h[k];
    Real denom = Real(static_cast<long>(m)) - w1;
    if (denom == 0) throw Error(ErrorCode::slow_convergence, "degenerate tail expansion");
    h[m] = rhs / denom;
  }
  return h;
}

inline int nonpositive_integer_cutoff(const std::vector<Real>& upper) {
  int cut = -1;
  for (const auto& a : upper)
    if (a <= 0 && is_integer(a)) {
      int m = -a.convert_to<int>();
      if (cut < 0 || m < cut) cut = m;
    }
  return cut;
}

}  // namespace detail

// sum_n prod (a_i)_n / prod (b_j)_n t^n / n!
inline EvalResult pfq_series(const std::vector<Real>& upper, const std::vector<Real>& lower, const Complex& t,
                             const SeriesOptions& opt = {}) {
  for (const auto& b : lower)
    if (b <= 0 && is_integer(b)) throw Error(ErrorCode::invalid_argument, "lower parameter is a non-positive integer");
  const std::size_t p = upper.size(), q = lower.size();
  const Real tol = tolerance(0);
  const Real abs_t = abs(t);

  EvalResult res;
  res.method = Method::series;
  res.branch_note = "principal series";

  auto ratio = [&](std::size_t n) {
    Real r = 1;
    for (const auto& a : upper) r *= a + n;
    for (const auto& b : lower) r /= b + n;
    return r / Real(static_cast<long>(n + 1));
  };

  int cutoff = detail::nonpositive_integer_cutoff(upper);
  if (cutoff >= 0) {
    Complex sum(Real(1)), term(Real(1));
    for (int n = 0; n < cutoff; ++n) {
      term = term * t * ratio(static_cast<std::size_t>(n));
      sum += term;
    }
    res.value = sum;
    res.error_estimate = tol * abs(sum) * (cutoff + 1);
    return res;
  }

  const bool balanced = (p == q + 1);
  if (p > q + 1) throw Error(ErrorCode::divergence, "pFq with p > q + 1 diverges for t != 0");
  if (balanced && abs_t > 1) throw Error(ErrorCode::divergence, "|t| > 1 outside the disc of convergence");

  const bool on_circle = balanced && abs_t == 1;
  Real kappa = 0;  // Re(sum b - sum a)
  if (on_circle) {
    for (const auto& b : lower) kappa += b;
    for (const auto& a : upper) kappa -= a;
    if (kappa <= 0) throw Error(ErrorCode::divergence, "|t| = 1 needs Re(sum b - sum a) > 0");
  }

  if (on_circle && t == Complex(Real(1))) {
    // Direct sum up to N, then the asymptotic tail expansion; the tail terms
    // fall like (k / (2 pi e N))^k, so N of order P is plenty.
    std::size_t N = std::max<std::size_t>(60, 3 * working_digits());
    Real sum = 1, term = 1;
    for (std::size_t n = 0; n < N; ++n) {
      term *= ratio(n);
      if (n + 1 < N) sum += term;
    }
    // term is now T_N
    std::vector<Real> lower1 = lower;
    lower1.push_back(Real(1));
    std::size_t order = std::min<std::size_t>(N, 2 * working_digits() + 20);
    std::vector<Real> h = detail::tail_expansion(upper, lower1, order);
    Real invN = Real(1) / Real(static_cast<long>(N));
    Real series = 0, pw = 1, last = 0;
    bool converged = false;
    for (std::size_t k = 0; k <= order; ++k) {
      Real add = h[k] * pw;
      series += add;
      last = abs(add);
      if (k > 4 && last < tol * abs(series) * pow10(-5)) {
        converged = true;
        break;
      }
      pw *= invN;
    }
    if (!converged) throw Error(ErrorCode::slow_convergence, "asymptotic tail at t = 1 did not settle");
    Real tail = term * Real(static_cast<long>(N)) * series;
    res.value = Complex(sum + tail);
    res.error_estimate = abs(term) * N * last + tol * abs(sum) * 4;
    res.branch_note = "t = 1: direct sum plus asymptotic tail";
    return res;
  }

  Complex sum(Real(1)), term(Real(1));
  Real prev_ratio = 0, max_abs_sum = 1;
  const std::size_t warmup = [&] {
    Real m = 0;
    for (const auto& a : upper) m = std::max(m, abs(a));
    for (const auto& b : lower) m = std::max(m, abs(b));
    return static_cast<std::size_t>(m.convert_to<double>()) + 2;
  }();
  for (std::size_t n = 0;; ++n) {
    if (n >= opt.term_cap)
      throw Error(on_circle ? ErrorCode::slow_convergence : ErrorCode::non_convergence,
                  "pFq series exceeded the term cap");
    Real r = ratio(n);
    term = term * t * r;
    sum += term;
    max_abs_sum = std::max(max_abs_sum, abs(sum));
    Real rho = abs(r) * abs_t;
    if (norm(term) == 0) {
      res.value = sum;
      res.error_estimate = tol * max_abs_sum * (n + 1);
      return res;
    }
    if (n >= warmup) {
      Real bound;
      if (on_circle) {
        // |T_n| ~ C n^{-(kappa+1)}: tail <= |T_n| n / kappa
        bound = abs(term) * Real(static_cast<long>(n + 1)) / kappa;
      } else {
        Real rho_star = std::max(rho, prev_ratio);
        if (balanced) rho_star = std::max(rho_star, abs_t);
        bound = rho_star < 1 ? abs(term) * rho_star / (1 - rho_star) : Real(-1);
      }
      if (bound >= 0 && bound < tol * abs(sum)) {
        res.value = sum;
        // Rounding grows with the number of terms and with cancellation.
        res.error_estimate = bound + tol * max_abs_sum * boost::multiprecision::sqrt(Real(static_cast<long>(n + 1)));
        return res;
      }
    }
    prev_ratio = rho;
  }
}

// sum_n n^j c_n t^n for j = 0..order-1, where c_n t^n are the pFq terms. The
// theta-derivatives of the series, used as initial data for the ODE.
inline std::vector<Complex> pfq_theta_jet(const std::vector<Real>& upper, const std::vector<Real>& lower,
                                          const Complex& t, std::size_t order) {
  if (upper.size() != lower.size() + 1 || !(abs(t) < 1))
    throw Error(ErrorCode::invalid_argument, "pfq_theta_jet needs p = q + 1 and |t| < 1");
  std::vector<Complex> out(order);
  out[0] = Complex(Real(1));
  Complex term(Real(1));
  Real tol = tolerance(-5);
  Real abs_t = abs(t);
  for (std::size_t n = 0;; ++n) {
    Real r = 1;
    for (const auto& a : upper) r *= a + n;
    for (const auto& b : lower) r /= b + n;
    r /= Real(static_cast<long>(n + 1));
    term = term * t * r;
    Real np1 = Real(static_cast<long>(n + 1));
    Real pw = 1;
    for (std::size_t j = 0; j < order; ++j) {
      out[j] += term * pw;
      pw *= np1;
    }
    // n^{order-1} |T_n| decays geometrically with ratio -> |t|.
    Real rho = abs(r) * abs_t * boost::multiprecision::pow(Real(1) + Real(1) / np1, Real(static_cast<long>(order)));
    if (n > 20 && rho < 1 && abs(term) * pw / (1 - rho) < tol * abs(out[0])) break;
    if (n > 10'000'000) throw Error(ErrorCode::non_convergence, "theta jet series");
  }
  return out;
}

}  // namespace hgreg
