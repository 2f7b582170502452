#pragma once

// The regulator function
//   F_a(t) = sum_k (psi(a_k) + gamma) + log t + a_1...a_s t F_{s+2}F_{s+1}(a+1, 1, 1; 2, ..., 2; t)
// with t dF/dt = sFs-1(a; 1, ..., 1; t), by three independent routes: the power
// series, continuation of the ODE satisfied by F, and the connection formula
// at large argument.

#include <string>
#include <vector>

#include "hgreg/hypergeom/ode.hpp"
#include "hgreg/hypergeom/pfq.hpp"

namespace hgreg {

namespace detail {

inline Real digamma_constant(const std::vector<Real>& a) {
  Real s = 0;
  const auto& k = constants();
  for (const auto& x : a) s += digamma(x) + k.euler;
  return s;
}

inline std::vector<Real> ones(std::size_t n) { return std::vector<Real>(n, Real(1)); }

}  // namespace detail

inline EvalResult calF_series(const HGParams& params, const Complex& t) {
  if (t == Complex()) throw Error(ErrorCode::pole, "F has a logarithmic singularity at t = 0");
  std::vector<Real> a = params.values();
  const std::size_t s = a.size();
  std::vector<Real> upper, lower(s + 1, Real(2));
  for (const auto& x : a) upper.push_back(x + 1);
  upper.push_back(Real(1));
  upper.push_back(Real(1));
  EvalResult f = pfq_series(upper, lower, t);
  Real prod = 1;
  for (const auto& x : a) prod *= x;
  EvalResult r;
  r.method = Method::series;
  r.value = Complex(detail::digamma_constant(a)) + log(t) + t * f.value * prod;
  r.error_estimate = abs(t) * prod * f.error_estimate + tolerance(2) * (1 + abs(r.value));
  r.branch_note = "principal log t; " + f.branch_note;
  return r;
}

// F along an explicit path starting at t0 in (0, 0.3]. F solves the order s+1
// operator with upper (a_1..a_s, 0) and lower (1, ..., 1); its theta-jet at t0
// is (F, G, theta G, ..., theta^{s-1} G) with G = sFs-1(a; 1; t).
inline EvalResult calF_ode(const HGParams& params, const Complex& t_end, const PathSpec& path) {
  const Complex& t0 = path.start();
  if (!(t0.im == 0 && t0.re > 0 && t0.re <= Real(3) / 10))
    throw Error(ErrorCode::invalid_argument, "calF_ode paths must start on (0, 0.3]");
  if (abs(path.end() - t_end) > tolerance(5) * (1 + abs(t_end)))
    throw Error(ErrorCode::invalid_argument, "path does not end at t_end");
  std::vector<Real> a = params.values();
  const std::size_t s = a.size();
  std::vector<Real> upper = a;
  upper.push_back(Real(0));
  HypergeometricODE ode(upper, detail::ones(s));

  std::vector<Complex> jet(s + 1);
  EvalResult start = calF_series(params, t0);
  jet[0] = start.value;
  std::vector<Complex> g = pfq_theta_jet(a, detail::ones(s - 1), t0, s);
  for (std::size_t k = 0; k < s; ++k) jet[k + 1] = g[k];

  std::vector<std::vector<Complex>> jets{jet};
  Real rel = ode.transport(path, jets);
  Real scale = 0;
  for (const auto& v : jets[0]) scale = std::max(scale, abs(v));
  EvalResult r;
  r.method = Method::ode;
  r.value = jets[0][0];
  r.error_estimate = rel * scale + start.error_estimate;
  r.branch_note = "continued along the given path from t0 = " + to_string(t0.re, 6);
  return r;
}

inline EvalResult calF_ode(const HGParams& params, const Complex& t_end) {
  EvalResult r = calF_ode(params, t_end, PathSpec::canonical(t_end));
  r.branch_note = "canonical path: from 1/10, upper semicircles around 1 (radius 1/4) and 0 (radius 1/10)";
  return r;
}

// Pieces of  F(1/t) = pi i - sum_j C_j H_j(t).
struct ConnectionDecomposition {
  std::vector<Complex> C;
  std::vector<Complex> H;
  Complex constant;  // pi i
  Real error_estimate = 0;

  Complex assemble() const {
    Complex v = constant;
    for (std::size_t j = 0; j < C.size(); ++j) v -= C[j] * H[j];
    return v;
  }
};

// Generic parameters only (a_i, a_i - a_j not integers).
inline ConnectionDecomposition connection_decomposition(const std::vector<Real>& a, const Complex& t) {
  const std::size_t s = a.size();
  const auto& k = constants();
  ConnectionDecomposition d;
  d.constant = Complex(Real(0), k.pi);
  // (-t)^{a_j} with arg(-t) in (-pi, pi]
  Complex log_mt(log(abs(t)), arg(-t));
  for (std::size_t j = 0; j < s; ++j) {
    Complex gj = gamma(Complex(1 - a[j]));
    Complex c = inverse(pow(gj, static_cast<long long>(s) - 1));
    std::vector<Real> upper(s + 1, a[j]), lower;
    for (std::size_t m = 0; m < s; ++m) {
      if (m == j) continue;
      c *= gamma(Complex(a[m] - a[j])) / gamma(Complex(a[m]));
      lower.push_back(1 - a[m] + a[j]);
    }
    lower.push_back(1 + a[j]);
    EvalResult f = pfq_series(upper, lower, t);
    Complex h = exp(log_mt * a[j]) * f.value / a[j];
    d.C.push_back(c);
    d.H.push_back(h);
    d.error_estimate += abs(c) * abs(exp(log_mt * a[j])) * f.error_estimate / abs(a[j]);
  }
  return d;
}

struct ConnectionOptions {
  // Richardson levels for degenerate parameters; eps_k = eps_0 / 2^k.
  unsigned richardson_levels = 5;
};

namespace detail {

inline bool is_degenerate(const std::vector<Real>& a) {
  Real tol = tolerance(5);
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (abs(a[i] - boost::multiprecision::round(a[i])) < tol) return true;
    for (std::size_t j = i + 1; j < a.size(); ++j) {
      Real d = a[i] - a[j];
      if (abs(d - boost::multiprecision::round(d)) < tol) return true;
    }
  }
  return false;
}

}  // namespace detail

// F at the large argument t_inv = 1/t, |t| < 1.
inline EvalResult calF_connection(const HGParams& params, const Complex& t_inv, const ConnectionOptions& opt = {}) {
  if (!(abs(t_inv) > 1)) throw Error(ErrorCode::invalid_argument, "calF_connection needs |t_inv| > 1");
  std::vector<Real> a = params.values();
  const std::size_t s = a.size();
  Real sum_a = 0;
  for (const auto& x : a) sum_a += x;
  if (!(sum_a < s)) throw Error(ErrorCode::invalid_argument, "connection formula needs Re(sum a) < s");

  const unsigned P = working_digits();
  EvalResult r;
  r.method = Method::connection;
  r.branch_note = "(-t)^a with arg(-t) in (-pi, pi], constant pi i";

  if (!detail::is_degenerate(a)) {
    ConnectionDecomposition d;
    {
      WorkingPrecision wp(P + 10);
      d = connection_decomposition(params.values(), inverse(at_working(t_inv)));
    }
    Complex v = d.assemble();
    r.value = {Real(v.re, P), Real(v.im, P)};
    r.error_estimate = Real(d.error_estimate, P) + tolerance(2) * (1 + abs(r.value));
    return r;
  }

  // Shift a_j -> a_j + j eps. The C_j grow like eps^{-(s-1)}, so each evaluation
  // loses (s-1) log10(1/eps) digits; the extrapolation table costs a few more.
  const unsigned levels = std::max(2u, opt.richardson_levels);
  const int e0 = static_cast<int>(P) / 4;
  const unsigned guard = static_cast<unsigned>((s - 1) * (e0 + levels)) + 15;
  std::vector<std::vector<Complex>> table(levels);
  Complex result, previous;
  {
    WorkingPrecision wp(P + guard);
    Complex t = inverse(at_working(t_inv));
    std::vector<Real> base = params.values();
    Real eps = pow10(-e0);
    for (unsigned k = 0; k < levels; ++k) {
      std::vector<Real> shifted = base;
      for (std::size_t j = 0; j < s; ++j) shifted[j] += eps * static_cast<long>(j + 1);
      table[k].push_back(connection_decomposition(shifted, t).assemble());
      for (unsigned m = 1; m <= k; ++m) {
        Real f = pow(Real(2), static_cast<long>(m));
        table[k].push_back((table[k][m - 1] * f - table[k - 1][m - 1]) / (f - 1));
      }
      eps /= 2;
    }
    result = table[levels - 1][levels - 1];
    previous = table[levels - 1][levels - 2];
  }
  Real spread(abs(result - previous), P);
  r.value = {Real(result.re, P), Real(result.im, P)};
  r.error_estimate = spread + tolerance(2) * (1 + abs(r.value));
  if (spread > tolerance(10) * (1 + abs(r.value)))
    throw Error(ErrorCode::degeneracy_extrapolation,
                "epsilon extrapolation did not settle (spread " + to_string(spread, 5) + ")");
  r.branch_note += "; degenerate parameters, Richardson limit over eps = 10^-" + std::to_string(e0) + "/2^k";
  return r;
}

// Evaluate by the method suited to t, or the one named.
inline EvalResult calF(const HGParams& params, const Complex& t) {
  if (abs(t) < Real(95) / 100) return calF_series(params, t);
  return calF_ode(params, t);
}

}  // namespace hgreg
