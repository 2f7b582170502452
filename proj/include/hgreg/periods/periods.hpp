#pragma once

// Period integrals computed by trapezoid quadrature on circles and tori, set
// against their hypergeometric closed forms.

#include <complex>
#include <functional>

#include "hgreg/hypergeom/pfq.hpp"
#include "hgreg/periods/scheme.hpp"

namespace hgreg {

struct QuadratureOptions {
  unsigned initial_log2 = 6;  // 2^6 nodes per axis to begin with
  unsigned max_log2 = 12;
  std::size_t max_total_nodes = std::size_t(1) << 24;
  int tolerance_offset = 10;  // successive refinements must agree to 10^(offset - P)
  Real target = 0;            // if positive, replaces 10^(offset - P)
};

struct QuadratureResult {
  Complex value;
  std::size_t nodes_per_axis = 0;
  Real last_change = 0;  // |I_N - I_{N/2}|
};

namespace detail {

// Trapezoid sum over [0, 2pi)^dim, refined by doubling until two levels agree.
// f(idx, N) is the integrand at the node with angles 2 pi idx_j / N, already
// multiplied by the Jacobian, so the level value is (2pi/N)^dim * sum f.
inline QuadratureResult periodic_trapezoid(
    std::size_t dim, const std::function<Complex(const std::vector<std::size_t>&, std::size_t)>& f,
    const QuadratureOptions& opt, const Real& scale_floor) {
  const Real& pi = constants().pi;
  const Real tol = opt.target > 0 ? opt.target : tolerance(opt.tolerance_offset);
  Complex sum, previous;
  std::size_t N_prev = 0;
  // The 2^(k0-1) grid is a subset of the 2^k0 grid, so the first comparison
  // (coarse against 2^k0 nodes) costs no extra evaluations.
  for (unsigned k = opt.initial_log2 - 1; k <= opt.max_log2; ++k) {
    const std::size_t N = std::size_t(1) << k;
    std::size_t total = 1;
    for (std::size_t j = 0; j < dim; ++j) total *= N;
    if (total > opt.max_total_nodes) break;
    std::vector<std::size_t> idx(dim, 0);
    const Real step = 2 * pi / Real(static_cast<long>(N));
    // Nodes already counted at the coarser level have every index even.
    for (std::size_t node = 0; node < total; ++node) {
      bool old = N_prev != 0;
      for (std::size_t j = 0; j < dim && old; ++j) old = idx[j] % 2 == 0;
      if (!old) sum += f(idx, N);
      for (std::size_t j = 0; j < dim; ++j) {
        if (++idx[j] < N) break;
        idx[j] = 0;
      }
    }
    Real w = boost::multiprecision::pow(step, static_cast<long>(dim));
    Complex value = sum * w;
    if (N_prev) {
      Real change = abs(value - previous);
      if (change <= tol * std::max(scale_floor, abs(value))) return {value, N, change};
    }
    previous = value;
    N_prev = N;
  }
  throw Error(ErrorCode::quadrature_not_converged, "trapezoid refinement did not settle");
}

}  // namespace detail

// (1/2 pi i) \oint_{|x-1|=eps} x^{c1-1} / (1 - x^{c2})^{n+1} dx with x^c on the
// branch near 1. The radius keeps the other zeros of 1 - x^{c2} (where
// |log x| >= 2 pi / |c2|) and the branch point at 0 well outside the circle.
inline QuadratureResult contour_pole_integral(const Complex& c1, const Complex& c2, unsigned n,
                                              const QuadratureOptions& opt = {}) {
  if (c2 == Complex()) throw Error(ErrorCode::invalid_argument, "c2 must be nonzero");
  const Real& pi = constants().pi;
  Real reach = 1 - boost::multiprecision::exp(-2 * pi / abs(c2));  // nearest competing zero, lower bound
  Real eps = std::min(Real(1) / 4, reach / 4);
  auto f = [&](const std::vector<std::size_t>& idx, std::size_t N) {
    Complex e = root_of_unity(static_cast<long>(idx[0]), static_cast<long>(N));
    Complex x = Complex(Real(1)) + e * eps;
    Complex lx = log(x);
    Complex num = exp((c1 - Complex(Real(1))) * lx);
    Complex den = Complex(Real(1)) - exp(c2 * lx);
    // dx / (2 pi i) = eps e^{i theta} d theta / (2 pi)
    return num * inverse(pow(den, static_cast<long long>(n) + 1)) * e * eps / (2 * pi);
  };
  QuadratureOptions o = opt;
  return detail::periodic_trapezoid(1, f, o, Real(1));
}

// -c2^{-1} (1 - c1/c2)_n / n!
inline Complex contour_pole_closed_form(const Complex& c1, const Complex& c2, unsigned n) {
  Complex a = Complex(Real(1)) - c1 / c2;
  Complex v = pochhammer(a, n);
  for (unsigned k = 2; k <= n; ++k) v /= Real(static_cast<long>(k));
  return -v / c2;
}

// Product torus |x_k - 1| = rho, k = 1..d. The orientation -1 runs every
// circle clockwise; with it the period of the d = 1, n = (2,2) form at t = 1/10
// carries the sign of (2 pi i)/4 2F1, which fixes the convention everywhere.
struct TorusCycle {
  Real rho;
  int orientation = -1;
  unsigned initial_log2 = 6;

  static TorusCycle standard(const SchemeDescriptor& s) {
    TorusCycle c;
    c.rho = boost::multiprecision::pow(abs(s.t), Real(1) / Real(static_cast<long>(s.d + 1)));
    return c;
  }
};

namespace detail {

// x_0 with x_0^{n_0} = v on the branch near 1: principal root in double
// precision as the seed, then Newton at working precision. The seed is good to
// about 15 digits and each step doubles that, so the step count is fixed.
struct X0Solver {
  long n0;
  int steps;
  Real inv_n0;

  explicit X0Solver(long n) : n0(n), steps(0), inv_n0(Real(1) / Real(n)) {
    for (double digits = 14; digits < working_digits() + 2; digits *= 2) ++steps;
  }

  Complex operator()(const Complex& v) const {
    std::complex<double> seed = std::pow(std::complex<double>(to_double(v.re), to_double(v.im)), 1.0 / n0);
    if (!(std::abs(seed - 1.0) < 0.5))
      throw Error(ErrorCode::branch_ambiguity, "x_0 left the branch near 1 on the torus");
    Complex x(Real(seed.real()), Real(seed.imag()));
    for (int it = 0; it < steps; ++it) {
      // x <- ((n0 - 1) x + v / x^{n0-1}) / n0
      x = (x * (n0 - 1) + v / pow(x, static_cast<long long>(n0 - 1))) * inv_n0;
    }
    return x;
  }
};

inline void check_torus(const SchemeDescriptor& s, const TorusCycle& c) {
  if (!(abs(s.t) <= Real(3) / 10))
    throw Error(ErrorCode::invalid_argument, "torus periods need |t| <= 0.3");
  if (!(c.rho > 0 && c.rho < 1)) throw Error(ErrorCode::invalid_argument, "torus radius must lie in (0, 1)");
}

// Hardware extended precision version of the torus sum, used when the
// requested agreement is no finer than 10^-15 (long double carries about 19
// digits). Same nodes, same refinement rule; compensated summation.
inline QuadratureResult torus_integral_extended(const SchemeDescriptor& s, const PeriodForm& form,
                                                const TorusCycle& cycle, const QuadratureOptions& opt,
                                                const Real& target, const Real& scale_floor) {
  using C = std::complex<long double>;
  const std::size_t d = s.d;
  const long n0 = s.n[0], i0 = form.i[0];
  const long double rho = cycle.rho.convert_to<long double>();
  const long double pi = constants().pi.convert_to<long double>();
  const C t(s.t.re.convert_to<long double>(), s.t.im.convert_to<long double>());
  const C idir = C(0, 1) * rho * static_cast<long double>(cycle.orientation);
  const long double tol = target.convert_to<long double>();
  const long double floor = scale_floor.convert_to<long double>();
  auto ipow = [](C z, long n) {
    C r(1, 0);
    for (; n > 0; n >>= 1, z *= z)
      if (n & 1) r *= z;
    return r;
  };
  C sum(0, 0), comp(0, 0), previous(0, 0);
  std::size_t N_prev = 0;
  std::vector<std::vector<C>> g(d), h(d);
  for (unsigned k = opt.initial_log2 - 1; k <= opt.max_log2; ++k) {
    const std::size_t N = std::size_t(1) << k;
    std::size_t total = 1;
    for (std::size_t j = 0; j < d; ++j) total *= N;
    if (total > opt.max_total_nodes) break;
    for (std::size_t a = 0; a < d; ++a) {
      g[a].resize(N);
      h[a].resize(N);
      for (std::size_t j = 0; j < N; ++j) {
        C e = std::polar(1.0L, 2 * pi * static_cast<long double>(j) / static_cast<long double>(N));
        C x = 1.0L + e * rho;
        g[a][j] = 1.0L - ipow(x, s.n[a + 1]);
        h[a][j] = ipow(x, form.i[a + 1] - 1) * idir * e / g[a][j];
      }
    }
    std::vector<std::size_t> idx(d, 0);
    for (std::size_t node = 0; node < total; ++node) {
      bool old = N_prev != 0;
      for (std::size_t j = 0; j < d && old; ++j) old = idx[j] % 2 == 0;
      if (!old) {
        C prod_g = g[0][idx[0]], factor = h[0][idx[0]];
        for (std::size_t a = 1; a < d; ++a) {
          prod_g *= g[a][idx[a]];
          factor *= h[a][idx[a]];
        }
        C u = t / prod_g;
        C x0n = 1.0L - u;
        C x0 = std::pow(x0n, 1.0L / static_cast<long double>(n0));
        if (!(std::abs(x0 - 1.0L) < 0.5L))
          throw Error(ErrorCode::branch_ambiguity, "x_0 left the branch near 1 on the torus");
        C w = ipow(x0, i0) * factor / (static_cast<long double>(n0) * x0n);
        if (form.r) w *= ipow(u / x0n, form.r);
        // Kahan
        C y = w - comp;
        C tt = sum + y;
        comp = (tt - sum) - y;
        sum = tt;
      }
      for (std::size_t j = 0; j < d; ++j) {
        if (++idx[j] < N) break;
        idx[j] = 0;
      }
    }
    const long double step = 2 * pi / static_cast<long double>(N);
    C value = sum * std::pow(step, static_cast<long double>(d));
    if (N_prev) {
      long double change = std::abs(value - previous);
      if (change <= tol * std::max(floor, std::abs(value)))
        return {Complex(Real(value.real()), Real(value.imag())), N, Real(change)};
    }
    previous = value;
    N_prev = N;
  }
  throw Error(ErrorCode::quadrature_not_converged, "trapezoid refinement did not settle");
}

}  // namespace detail

// \int_{Delta} omega^{(r)}_{i_0...i_d} by quadrature on the torus. Requests
// no finer than 10^-15 run in hardware extended precision; otherwise every
// node is evaluated at the working precision.
inline QuadratureResult torus_integral(const SchemeDescriptor& s, const PeriodForm& form, const TorusCycle& cycle,
                                       QuadratureOptions opt = {}) {
  s.validate();
  form.validate(s);
  detail::check_torus(s, cycle);
  opt.initial_log2 = cycle.initial_log2;
  const std::size_t d = s.d;
  const long n0 = s.n[0], i0 = form.i[0];
  const Real rho = cycle.rho;
  const Complex idir = I() * rho * Real(cycle.orientation);
  // Per-axis node data for the current level: g = 1 - x^n and
  // x^{i-1} dx / (1 - x^n) with dx = (+-) i rho e^{i theta} d theta.
  std::size_t cached_N = 0;
  std::vector<std::vector<Complex>> g(d), h(d);
  const detail::X0Solver solve(n0);
  const Real inv_n0 = Real(1) / Real(n0);
  auto f = [&](const std::vector<std::size_t>& idx, std::size_t N) {
    if (N != cached_N) {
      for (std::size_t k = 1; k <= d; ++k) {
        g[k - 1].resize(N);
        h[k - 1].resize(N);
        for (std::size_t j = 0; j < N; ++j) {
          Complex e = root_of_unity(static_cast<long>(j), static_cast<long>(N));
          Complex x = Complex(Real(1)) + e * rho;
          g[k - 1][j] = Complex(Real(1)) - pow(x, static_cast<long long>(s.n[k]));
          h[k - 1][j] = pow(x, static_cast<long long>(form.i[k] - 1)) * idir * e / g[k - 1][j];
        }
      }
      cached_N = N;
    }
    Complex prod_g = g[0][idx[0]], factor = h[0][idx[0]];
    for (std::size_t k = 1; k < d; ++k) {
      prod_g *= g[k][idx[k]];
      factor *= h[k][idx[k]];
    }
    Complex u = s.t / prod_g;
    Complex x0n = Complex(Real(1)) - u;
    Complex x0 = solve(x0n);
    // n_0^{-1} x_0^{i_0 - n_0} (u / x_0^{n_0})^r
    Complex w = pow(x0, static_cast<long long>(i0)) * factor * inv_n0 / x0n;
    if (form.r) w *= pow(u / x0n, static_cast<long long>(form.r));
    return w;
  };
  const Real& pi = constants().pi;
  Real floor = boost::multiprecision::pow(2 * pi, static_cast<long>(d));
  for (long v : s.n) floor /= v;
  const Real target = opt.target > 0 ? opt.target : tolerance(opt.tolerance_offset);
  if (target >= pow10(-15)) return detail::torus_integral_extended(s, form, cycle, opt, target, floor);
  return detail::periodic_trapezoid(d, f, opt, floor);
}

inline QuadratureResult torus_period(const SchemeDescriptor& s, const PeriodForm& form, const TorusCycle& cycle,
                                     const QuadratureOptions& opt = {}) {
  if (form.r != 0) throw Error(ErrorCode::invalid_argument, "torus_period integrates the r = 0 form");
  return torus_integral(s, form, cycle, opt);
}

// (2 pi i)^d / (n_0 ... n_d)
inline Complex period_prefactor(const SchemeDescriptor& s) {
  const Real& pi = constants().pi;
  Complex v = pow(Complex(Real(0), 2 * pi), static_cast<long long>(s.d));
  for (long n : s.n) v /= Real(n);
  return v;
}

// F^{(r)}(t) of (d+1)F_d(a; 1, ..., 1; t) via d^r/dt^r pFq = prod (a)_r / (1)_r^d pFq(a + r; 1 + r; t).
inline Complex hypergeometric_derivative(const std::vector<Real>& a, const Complex& t, unsigned r) {
  std::vector<Real> up, lo(a.size() - 1, Real(1 + r));
  Real c = 1;
  for (const auto& x : a) {
    up.push_back(x + r);
    c *= pochhammer(x, r);
  }
  Real fact = pochhammer(Real(1), r);
  for (std::size_t k = 0; k + 1 < a.size(); ++k) c /= fact;
  return pfq_series(up, lo, t).value * c;
}

// The closed form (2 pi i)^d / (n_0 ... n_d) (d+1)F_d(a; 1; t).
inline Complex period_closed_form(const SchemeDescriptor& s, const PeriodForm& form) {
  return period_prefactor(s) * hypergeometric_derivative(form.params(s).values(), s.t, 0);
}

struct LiftedPeriodCheck {
  Complex quadrature;
  Complex rising_candidate;   // t^r F^{(r)} / (a_0 (a_0+1) ... (a_0+r-1))
  Complex falling_candidate;  // t^r F^{(r)} / (a_0 (a_0-1) ... (a_0-r+1))
  Real rising_residual;       // relative
  Real falling_residual;
  std::string matches;        // "rising", "falling", "both" or "neither"
};

inline LiftedPeriodCheck lifted_period_check(const SchemeDescriptor& s, const PeriodForm& form, const TorusCycle& cycle,
                                             const QuadratureOptions& opt = {}) {
  if (form.r < 1 || form.r > 4) throw Error(ErrorCode::invalid_argument, "lifted periods are checked for 1 <= r <= 4");
  LiftedPeriodCheck c;
  c.quadrature = torus_integral(s, form, cycle, opt).value;
  std::vector<Real> a = form.params(s).values();
  Complex base = period_prefactor(s) * pow(s.t, static_cast<long long>(form.r)) *
                 hypergeometric_derivative(a, s.t, form.r);
  Real rising = 1, falling = 1;
  for (unsigned k = 0; k < form.r; ++k) {
    rising *= a[0] + k;
    falling *= a[0] - k;
  }
  c.rising_candidate = base / rising;
  c.falling_candidate = base / falling;
  Real scale = std::max(Real(1) / 1000, abs(c.quadrature));
  c.rising_residual = abs(c.quadrature - c.rising_candidate) / scale;
  c.falling_residual = abs(c.quadrature - c.falling_candidate) / scale;
  const Real tol = tolerance(10 + opt.tolerance_offset);
  bool r_ok = c.rising_residual <= tol, f_ok = c.falling_residual <= tol;
  c.matches = r_ok && f_ok ? "both" : r_ok ? "rising" : f_ok ? "falling" : "neither";
  return c;
}

// t d/dt \int omega^{(r)} - r \int omega^{(r)} - (a_0 + r) \int omega^{(r+1)} at
// each grid point, with the derivative by a central difference of step
// 10^(-P/4) |t| on a fixed torus. Returns the largest residual relative to the
// size of the terms.
inline Real omega_recurrence_check(const SchemeDescriptor& s, const PeriodForm& form, const std::vector<Complex>& grid,
                                   const QuadratureOptions& opt = {}) {
  if (form.r > 3) throw Error(ErrorCode::invalid_argument, "recurrence is checked for r <= 3");
  Real worst = 0;
  const Real a0 = form.params(s).values()[0];
  for (const auto& t : grid) {
    SchemeDescriptor at(s.n, t);
    TorusCycle cyc = TorusCycle::standard(at);
    Complex h = t * pow10(-static_cast<int>(working_digits()) / 4);
    auto integral = [&](const Complex& tt, unsigned r) {
      SchemeDescriptor st(s.n, tt);
      PeriodForm f{form.i, r};
      return torus_integral(st, f, cyc, opt).value;
    };
    Complex deriv = (integral(t + h, form.r) - integral(t - h, form.r)) / (2 * h) * t;
    Complex w_r = integral(t, form.r), w_r1 = integral(t, form.r + 1);
    Complex residual = deriv - w_r * Real(form.r) - w_r1 * (a0 + form.r);
    Real scale = std::max({abs(deriv), abs(w_r), Real(1) / 1000});
    worst = std::max(worst, abs(residual) / scale);
  }
  return worst;
}

}  // namespace hgreg
