#pragma once

// Higher Ross symbols {(1-x_0)/(1-nu_0 x_0), ..., (1-x_d)/(1-nu_d x_d)} on the
// family (1 - x_0^{n_0}) ... (1 - x_d^{n_d}) = t, handled at the dlog level:
// every identity is checked as an identity of top-degree forms evaluated on
// random tangent frames at random points of the total space.

#include <array>
#include <cstdint>
#include <random>
#include <vector>

#include "hgreg/numerics/linalg.hpp"
#include "hgreg/numerics/special.hpp"
#include "hgreg/periods/scheme.hpp"

namespace hgreg {

struct RossSymbol {
  SchemeDescriptor scheme;
  std::vector<long> m;  // nu_k = exp(2 pi i m_k / n_k)

  RossSymbol() = default;
  RossSymbol(SchemeDescriptor s, std::vector<long> exps) : scheme(std::move(s)), m(std::move(exps)) { validate(); }

  void validate() const {
    scheme.validate();
    if (m.size() != scheme.n.size()) throw Error(ErrorCode::invalid_argument, "one root of unity per coordinate");
    for (std::size_t k = 0; k < m.size(); ++k) {
      if (scheme.n[k] < 2) throw Error(ErrorCode::invalid_argument, "Ross symbols need every n_k > 1");
      if (((m[k] % scheme.n[k]) + scheme.n[k]) % scheme.n[k] == 0)
        throw Error(ErrorCode::invalid_argument, "nu_k must differ from 1");
    }
  }

  std::size_t d() const { return scheme.d; }
  Complex nu(std::size_t k) const { return root_of_unity(m[k], scheme.n[k]); }

  // (1 - nu_0^{i_0}) ... (1 - nu_d^{i_d})
  Complex coefficient(const std::vector<long>& i) const {
    Complex c(Real(1));
    for (std::size_t k = 0; k < i.size(); ++k) c *= Complex(Real(1)) - root_of_unity(m[k] * i[k], scheme.n[k]);
    return c;
  }
};

// Every index tuple 0 < i_k < n_k, first coordinate fastest.
inline std::vector<std::vector<long>> index_tuples(const std::vector<long>& n) {
  std::vector<std::vector<long>> out;
  std::vector<long> i(n.size(), 1);
  while (true) {
    out.push_back(i);
    std::size_t k = 0;
    for (; k < n.size(); ++k) {
      if (++i[k] < n[k]) break;
      i[k] = 1;
    }
    if (k == n.size()) break;
  }
  return out;
}

struct SurfacePoint {
  std::vector<Complex> x;  // x_0, ..., x_d
  Complex t;
  Real residual;           // |prod (1 - x_k^{n_k}) - t|
};

namespace detail {

// Independent generator for sample `index` under a master seed.
inline std::mt19937_64 derived_rng(std::uint64_t seed, std::uint64_t index) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(index), static_cast<std::uint32_t>(index >> 32)};
  return std::mt19937_64(seq);
}

inline Complex uniform_box(std::mt19937_64& rng, double half_width) {
  std::uniform_real_distribution<double> u(-half_width, half_width);
  double re = u(rng), im = u(rng);
  return Complex(Real(re), Real(im));
}

// Root of z^n = v near the seed, polished by Newton at working precision.
inline Complex newton_root(const Complex& v, long n, const Complex& seed) {
  Complex z = seed;
  for (int it = 0; it < 200; ++it) {
    Complex zn1 = pow(z, static_cast<long long>(n - 1));
    Complex step = (zn1 * z - v) / (zn1 * Real(n));
    z -= step;
    if (abs(step) <= tolerance(2) * abs(z)) return z;
  }
  throw Error(ErrorCode::non_convergence, "Newton iteration for an n-th root did not settle");
}

inline Complex double_seed_root(const Complex& v, long n, long branch) {
  double r = std::pow(std::hypot(to_double(v.re), to_double(v.im)), 1.0 / n);
  double th = (std::atan2(to_double(v.im), to_double(v.re)) + 2 * 3.14159265358979323846 * branch) / n;
  return Complex(Real(r * std::cos(th)), Real(r * std::sin(th)));
}

}  // namespace detail

// Draws x_1..x_d uniformly from the square |Re|, |Im| <= 3/2 and t from
// |Re|, |Im| <= 2, then solves for x_0 on a randomly chosen branch. A draw is
// kept when every x_k satisfies 1/10 <= |x_k| <= 10 and |1 - nu x_k| >= 1/20
// for all nu^{n_k} = 1, and 1/10 <= |t|, |1 - t| >= 1/10. The fiber parameter
// stored in the scheme is not used.
inline SurfacePoint random_surface_point(const SchemeDescriptor& scheme, std::uint64_t seed) {
  const std::size_t d = scheme.d;
  auto admissible = [&](const Complex& x, long n) {
    Real ax = abs(x);
    if (ax < Real(1) / 10 || ax > 10) return false;
    for (long j = 0; j < n; ++j)
      if (abs(Complex(Real(1)) - root_of_unity(j, n) * x) < Real(1) / 20) return false;
    return true;
  };
  for (std::uint64_t draw = 0; draw < 100; ++draw) {
    auto rng = detail::derived_rng(seed, draw);
    SurfacePoint p;
    p.x.resize(d + 1);
    Complex prod(Real(1));
    bool ok = true;
    for (std::size_t k = 1; k <= d && ok; ++k) {
      p.x[k] = detail::uniform_box(rng, 1.5);
      ok = admissible(p.x[k], scheme.n[k]);
      prod *= Complex(Real(1)) - pow(p.x[k], static_cast<long long>(scheme.n[k]));
    }
    p.t = detail::uniform_box(rng, 2.0);
    if (!ok || abs(p.t) < Real(1) / 10 || abs(p.t - Complex(Real(1))) < Real(1) / 10) continue;
    const long n0 = scheme.n[0];
    Complex v = Complex(Real(1)) - p.t / prod;  // x_0^{n_0}
    long branch = std::uniform_int_distribution<long>(0, n0 - 1)(rng);
    p.x[0] = detail::newton_root(v, n0, detail::double_seed_root(v, n0, branch));
    if (!admissible(p.x[0], n0)) continue;
    SchemeDescriptor at(scheme.n, p.t);
    p.residual = abs(at.equation(p.x));
    if (p.residual > tolerance(8)) continue;
    return p;
  }
  throw Error(ErrorCode::retry_exhausted, "no admissible surface point in 100 draws");
}

namespace detail {

// d+1 random tangent vectors of the total space at p, as rows of
// (v_{x_0}, ..., v_{x_d}, v_t) with v_t = sum_k (d t / d x_k) v_{x_k}.
inline Matrix tangent_frame(const SchemeDescriptor& s, const SurfacePoint& p, std::mt19937_64& rng) {
  const std::size_t d = s.d;
  Matrix F(d + 1, d + 2);
  for (std::size_t r = 0; r <= d; ++r) {
    Complex vt;
    for (std::size_t k = 0; k <= d; ++k) {
      F(r, k) = uniform_box(rng, 1.0);
      // d t / d x_k = -n_k x_k^{n_k - 1} t / (1 - x_k^{n_k})
      Complex xn1 = pow(p.x[k], static_cast<long long>(s.n[k] - 1));
      Complex dk = -xn1 * Real(s.n[k]) * p.t / (Complex(Real(1)) - xn1 * p.x[k]);
      vt += dk * F(r, k);
    }
    F(r, d + 1) = vt;
  }
  return F;
}

inline Matrix columns(const Matrix& F, const std::vector<std::size_t>& cols) {
  Matrix M(F.rows(), cols.size());
  for (std::size_t r = 0; r < F.rows(); ++r)
    for (std::size_t c = 0; c < cols.size(); ++c) M(r, c) = F(r, cols[c]);
  return M;
}

// |det| against the product of row norms (Hadamard ratio).
inline void check_frame(const Matrix& M) {
  Real rows = 1;
  for (std::size_t r = 0; r < M.rows(); ++r) {
    Real s = 0;
    for (std::size_t c = 0; c < M.cols(); ++c) s += norm(M(r, c));
    rows *= boost::multiprecision::sqrt(s);
  }
  if (abs(determinant(M)) <= pow10(-static_cast<int>(working_digits()) / 2) * rows)
    throw Error(ErrorCode::degenerate_tangent, "sampled tangent frame is numerically singular");
}

}  // namespace detail

// Both sides of
//   dlog xi = (-1)^d sum_i (1 - nu_0^{i_0}) ... (1 - nu_d^{i_d}) dt/t ^ omega_{i_0...i_d}
// on a tangent frame; returns the largest relative deviation over the samples.
// The sign (-1)^d goes with dt/t written first; with omega ^ dt/t the
// identity holds without it.
inline Real dlog_identity_residual(const RossSymbol& symbol, std::size_t samples, std::uint64_t seed = 1) {
  if (samples < 1) throw Error(ErrorCode::invalid_argument, "need at least one sample");
  const SchemeDescriptor& s = symbol.scheme;
  const std::size_t d = s.d;
  const auto tuples = index_tuples(s.n);
  std::vector<std::size_t> xcols(d + 1), tcols{d + 1};
  for (std::size_t k = 0; k <= d; ++k) xcols[k] = k;
  for (std::size_t k = 1; k <= d; ++k) tcols.push_back(k);
  const Complex one(Real(1));
  Real worst = 0;
  for (std::size_t j = 0; j < samples; ++j) {
    SurfacePoint p = random_surface_point(s, seed * 7919 + j);
    auto rng = detail::derived_rng(seed, 1000000 + j);
    Matrix F = detail::tangent_frame(s, p, rng);
    Matrix Mx = detail::columns(F, xcols), Mt = detail::columns(F, tcols);
    detail::check_frame(Mx);

    // dlog((1 - x)/(1 - nu x)) = (-1/(1 - x) + nu/(1 - nu x)) dx
    Complex lhs = determinant(Mx);
    for (std::size_t k = 0; k <= d; ++k) {
      Complex nu = symbol.nu(k);
      lhs *= -inverse(one - p.x[k]) + nu * inverse(one - nu * p.x[k]);
    }

    // omega = n_0^{-1} x_0^{i_0 - n_0} prod_{k>=1} x_k^{i_k - 1} / (1 - x_k^{n_k}) dx_1 ... dx_d
    Complex sum;
    for (const auto& i : tuples) {
      Complex g = pow(p.x[0], static_cast<long long>(i[0] - s.n[0])) / Real(s.n[0]);
      for (std::size_t k = 1; k <= d; ++k)
        g *= pow(p.x[k], static_cast<long long>(i[k] - 1)) / (one - pow(p.x[k], static_cast<long long>(s.n[k])));
      sum += symbol.coefficient(i) * g;
    }
    Complex rhs = sum * determinant(Mt) / p.t;
    if (d % 2) rhs = -rhs;
    worst = std::max(worst, abs(lhs - rhs) / std::max(abs(lhs), abs(rhs)));
  }
  return worst;
}

// On the curve z^{n_0} + w^{n_1} = 1 (the t = 1 fiber in z = 1/x_0, w = 1/x_1),
// sum over all nu_0, nu_1 of dlog xi(nu_0, nu_1) against
// n_0 n_1 dlog{1 - z, 1 - w}. A 2-form restricts to zero on a curve, so the
// check is made with 2-forms on the (z, w) plane, where the sum telescopes to
//   n_0 n_1 dlog{1-z, 1-w} - dlog{(z-1)^{n_0}, w^{n_1} - 1} - dlog{z^{n_0} - 1, B},
// B = (w-1)^{n_1}/(w^{n_1}-1). On the curve the two correction symbols become
// {(z-1)^{n_0}, -z^{n_0}} and {-w^{n_1}, B}, whose dlogs vanish identically
// (each pairs two functions of one variable), which is the 2-torsion step.
// Returns the largest of: the plane identity residual, the dlog of the two
// torsion symbols after substitution, and the substitution error on the curve.
inline Real ross_vs_classical_dlog(long n0, long n1, std::size_t samples = 50, std::uint64_t seed = 1) {
  if (n0 < 2 || n1 < 2) throw Error(ErrorCode::invalid_argument, "exponents must exceed 1");
  const Complex one(Real(1));
  Real worst = 0;
  for (std::size_t j = 0; j < samples; ++j) {
    auto rng = detail::derived_rng(seed, j);
    Complex z, w;
    bool found = false;
    for (int attempt = 0; attempt < 100 && !found; ++attempt) {
      z = detail::uniform_box(rng, 1.5);
      Complex wn = one - pow(z, static_cast<long long>(n0));
      long branch = std::uniform_int_distribution<long>(0, n1 - 1)(rng);
      if (abs(wn) < Real(1) / 100) continue;
      w = detail::newton_root(wn, n1, detail::double_seed_root(wn, n1, branch));
      found = abs(z) > Real(1) / 10 && abs(w) > Real(1) / 10 &&
              abs(one - pow(z, static_cast<long long>(n0))) > Real(1) / 20 &&
              abs(one - pow(w, static_cast<long long>(n1))) > Real(1) / 20;
    }
    if (!found) throw Error(ErrorCode::retry_exhausted, "no admissible curve point in 100 draws");
    Matrix frame(2, 2);
    for (std::size_t r = 0; r < 2; ++r)
      for (std::size_t c = 0; c < 2; ++c) frame(r, c) = detail::uniform_box(rng, 1.0);
    detail::check_frame(frame);
    // Gradient of log f in (z, w); dlog f ^ dlog g on the frame is the 2x2
    // determinant of the gradients paired with the two tangent vectors.
    using Grad = std::array<Complex, 2>;
    auto pair = [&](const Grad& f, const Grad& g) {
      Complex f1 = f[0] * frame(0, 0) + f[1] * frame(0, 1), g1 = g[0] * frame(0, 0) + g[1] * frame(0, 1);
      Complex f2 = f[0] * frame(1, 0) + f[1] * frame(1, 1), g2 = g[0] * frame(1, 0) + g[1] * frame(1, 1);
      return f1 * g2 - f2 * g1;
    };
    const Complex zero;
    Complex sum;
    for (long a = 0; a < n0; ++a)
      for (long b = 0; b < n1; ++b) {
        Grad f{inverse(z - one) - inverse(z - root_of_unity(a, n0)), zero};
        Grad g{zero, inverse(w - one) - inverse(w - root_of_unity(b, n1))};
        sum += pair(f, g);
      }
    Complex zn = pow(z, static_cast<long long>(n0)), wn = pow(w, static_cast<long long>(n1));
    Grad zm1{Real(n0) * inverse(z - one), zero};                                        // (z-1)^{n_0}
    Grad wn1{zero, Real(n1) * pow(w, static_cast<long long>(n1 - 1)) / (wn - one)};     // w^{n_1} - 1
    Grad zn1{Real(n0) * pow(z, static_cast<long long>(n0 - 1)) / (zn - one), zero};     // z^{n_0} - 1
    Grad B{zero, Real(n1) * inverse(w - one) - wn1[1]};
    Complex classical = pair(Grad{inverse(z - one), zero}, Grad{zero, inverse(w - one)}) * Real(n0 * n1);
    Complex plane = classical - pair(zm1, wn1) - pair(zn1, B);
    Real scale = std::max({abs(sum), abs(classical), tolerance(0)});
    Real r1 = abs(sum - plane) / scale;
    // after the substitutions w^{n_1} - 1 = -z^{n_0} and z^{n_0} - 1 = -w^{n_1}
    Grad minus_zn{Real(n0) / z, zero}, minus_wn{zero, Real(n1) / w};
    Real r2 = (abs(pair(zm1, minus_zn)) + abs(pair(minus_wn, B))) / scale;
    Real r3 = abs(wn - one + zn) / std::max(Real(1), abs(zn));
    worst = std::max({worst, r1, r2, r3});
  }
  return worst;
}

}  // namespace hgreg
