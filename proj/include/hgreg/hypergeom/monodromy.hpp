#pragma once

// Numerical monodromy of D^s - t (D + a_1)...(D + a_s), D = t d/dt, in the
// jet basis (y, Dy, ..., D^{s-1} y) at a base point alpha.
//
// Loop conventions. T_0 and T_1 run counterclockwise around small circles of
// radius min(|alpha|, |alpha - 1|, 1)/2, reached by a straight tail from alpha
// (or, when that tail would pass the other singular point, by a tail through
// alpha + i). T_inf runs clockwise around a large circle centred at 1/2,
// reached by a vertical tail from alpha. For alpha in (0, 1) these choices
// satisfy T_inf T_1 T_0 = I; the report also gives the other ordering so that
// the relation can be read off for base points elsewhere.

#include <string>
#include <vector>

#include "hgreg/hypergeom/ode.hpp"
#include "hgreg/hypergeom/params.hpp"

namespace hgreg {

enum class Loop { zero, one, infinity };

inline const char* to_string(Loop l) {
  switch (l) {
    case Loop::zero: return "0";
    case Loop::one: return "1";
    case Loop::infinity: return "inf";
  }
  return "?";
}

struct MonodromyMatrix {
  Complex alpha;
  Loop loop = Loop::zero;
  Matrix T;
  Real error_estimate = 0;
};

inline HypergeometricODE hypergeometric_operator(const HGParams& params) {
  std::vector<Real> a = params.values();
  return HypergeometricODE(a, std::vector<Real>(a.size() - 1, Real(1)));
}

// Transport matrix of the s-th order operator along path.
inline Matrix hg_transport(const HGParams& params, const PathSpec& path, Real* err = nullptr) {
  return hypergeometric_operator(params).transport_matrix(path, err);
}

inline Real small_loop_radius(const Complex& alpha) {
  Real r = std::min({abs(alpha), abs(alpha - Complex(Real(1))), Real(1)});
  return r / 2;
}

// Based loop at alpha around the finite singular point p in {0, 1}.
inline PathSpec local_loop(const Complex& alpha, const Complex& p) {
  const Real r = small_loop_radius(alpha);
  const Real& pi = constants().pi;
  auto build = [&](const std::vector<Complex>& tail) {
    PathSpec path(alpha, r / 2);
    for (const auto& w : tail) path.line_to(w);
    Complex last = tail.empty() ? alpha : tail.back();
    Complex dir = last - p;
    Complex on_circle = p + dir * (r / abs(dir));
    path.line_to(on_circle).arc(p, 2 * pi);
    for (auto it = tail.rbegin(); it != tail.rend(); ++it) path.line_to(*it);
    path.line_to(alpha);
    return path;
  };
  PathSpec direct = build({});
  if (direct.min_distance() >= direct.clearance()) return direct;
  PathSpec detour = build({alpha + I()});
  detour.validate();
  return detour;
}

// Clockwise loop around both 0 and 1.
inline PathSpec infinity_loop(const Complex& alpha) {
  const Complex c(Real(1) / 2);
  const Real R = abs(alpha - c) + 1;
  const Real x = alpha.re - c.re;
  const Real y = boost::multiprecision::sqrt(R * R - x * x) + c.im;
  const Complex top(alpha.re, y);
  PathSpec path(alpha, small_loop_radius(alpha) / 2);
  path.line_to(top).arc(c, -2 * constants().pi).line_to(alpha);
  path.validate();
  return path;
}

inline PathSpec monodromy_loop(const Complex& alpha, Loop loop) {
  switch (loop) {
    case Loop::zero: return local_loop(alpha, Complex(Real(0)));
    case Loop::one: return local_loop(alpha, Complex(Real(1)));
    case Loop::infinity: return infinity_loop(alpha);
  }
  throw Error(ErrorCode::invalid_argument, "unknown loop");
}

inline MonodromyMatrix monodromy(const HGParams& params, const Complex& alpha, Loop loop) {
  if (alpha == Complex(Real(0)) || alpha == Complex(Real(1)))
    throw Error(ErrorCode::invalid_argument, "base point must avoid 0 and 1");
  MonodromyMatrix m;
  m.alpha = alpha;
  m.loop = loop;
  m.T = hg_transport(params, monodromy_loop(alpha, loop), &m.error_estimate);
  return m;
}

// log of a unipotent-looking matrix by the finite series in N = T - I.
inline Matrix log_unipotent(const Matrix& T, unsigned terms) {
  const std::size_t n = T.rows();
  Matrix N = T - Matrix::identity(n);
  Matrix acc(n, n), pw = N;
  for (unsigned k = 1; k <= terms; ++k) {
    Complex c(Real(k % 2 ? 1 : -1) / Real(static_cast<long>(k)));
    acc = acc + c * pw;
    pw = pw * N;
  }
  return acc;
}

struct MonodromyReport {
  HGParams params;
  Complex alpha;
  MonodromyMatrix T0, T1, Tinf;
  Real unipotency_residual;            // ||(T0 - I)^s||
  std::size_t rank_T0_minus_I = 0;     // at tolerance 10^(-P/2)
  std::size_t rank_log_T0 = 0;
  std::vector<Complex> Tinf_eigenvalues;
  std::vector<Complex> expected_Tinf_eigenvalues;  // e^{2 pi i a_j}
  Real Tinf_spectrum_distance;
  Real relation_residual;              // ||T_inf T_1 T_0 - I||
  Real relation_residual_swapped;      // ||T_inf T_0 T_1 - I||
  std::string convention;
};

inline MonodromyReport monodromy_report(const HGParams& params, const Complex& alpha) {
  MonodromyReport r{params, alpha, {}, {}, {}, 0, 0, 0, {}, {}, 0, 0, 0, ""};
  const std::size_t s = params.size();
  r.T0 = monodromy(params, alpha, Loop::zero);
  r.T1 = monodromy(params, alpha, Loop::one);
  const unsigned P = working_digits();
  {
    // Repeated exponents at infinity give defective eigenvalues whose error is
    // the cube (or s-th) root of the matrix error, so T_inf is computed with
    // half as many digits again.
    WorkingPrecision wp(P + P / 2 + 5);
    MonodromyMatrix hi = monodromy(params, at_working(alpha), Loop::infinity);
    std::vector<Complex> ev = eigenvalues(hi.T);
    const Real& pi = constants().pi;
    std::vector<Complex> expected;
    for (const auto& a : params.values()) expected.push_back(polar(Real(1), 2 * pi * a));
    Real dist = multiset_distance(ev, expected);
    WorkingPrecision back(P);
    r.Tinf.alpha = alpha;
    r.Tinf.loop = Loop::infinity;
    r.Tinf.T = Matrix(s, s);
    for (std::size_t i = 0; i < s; ++i)
      for (std::size_t j = 0; j < s; ++j) r.Tinf.T(i, j) = at_working(hi.T(i, j));
    r.Tinf.error_estimate = Real(hi.error_estimate, P);
    for (const auto& z : ev) r.Tinf_eigenvalues.push_back(at_working(z));
    for (const auto& z : expected) r.expected_Tinf_eigenvalues.push_back(at_working(z));
    r.Tinf_spectrum_distance = Real(dist, P);
  }
  const Matrix Id = Matrix::identity(s);
  const Real rank_tol = pow10(-static_cast<int>(working_digits()) / 2);

  Matrix N = r.T0.T - Id;
  r.unipotency_residual = norm(power(N, static_cast<unsigned>(s)));
  r.rank_T0_minus_I = numeric_rank(N, rank_tol);
  r.rank_log_T0 = numeric_rank(log_unipotent(r.T0.T, static_cast<unsigned>(s)), rank_tol);

  r.relation_residual = norm(r.Tinf.T * r.T1.T * r.T0.T - Id);
  r.relation_residual_swapped = norm(r.Tinf.T * r.T0.T * r.T1.T - Id);
  r.convention =
      "jet basis (y, Dy, ..., D^{s-1}y) at alpha; T0, T1 counterclockwise small circles; "
      "T_inf clockwise large circle with a vertical tail; relation T_inf T_1 T_0 = I";
  return r;
}

}  // namespace hgreg
