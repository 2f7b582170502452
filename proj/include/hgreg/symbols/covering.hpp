#pragma once

// Polynomial and differential identities of the explicit coverings between
// the hypergeometric K3 surfaces, the Ahlgren-Ono-Penniston model and the
// product of two quartic elliptic curves, checked by substitution at random
// points.

#include <array>
#include <string>

#include "hgreg/symbols/ross.hpp"

namespace hgreg {

enum class CoveringIdentity { k3_lemma, shioda_inose_1, shioda_inose_2, eta_differential };

inline const char* to_string(CoveringIdentity c) {
  switch (c) {
    case CoveringIdentity::k3_lemma: return "K3-lem";
    case CoveringIdentity::shioda_inose_1: return "shioda-inose-1";
    case CoveringIdentity::shioda_inose_2: return "shioda-inose-2";
    case CoveringIdentity::eta_differential: return "eta-differential";
  }
  return "?";
}

inline CoveringIdentity parse_covering_identity(const std::string& s) {
  for (auto c : {CoveringIdentity::k3_lemma, CoveringIdentity::shioda_inose_1, CoveringIdentity::shioda_inose_2,
                 CoveringIdentity::eta_differential})
    if (s == to_string(c)) return c;
  throw Error(ErrorCode::invalid_argument, "unknown covering identity '" + s + "'");
}

// First-order jet in two variables: value and the two partial derivatives.
struct Jet2 {
  Complex v;
  std::array<Complex, 2> d;

  Jet2() = default;
  Jet2(const Complex& value) : v(value) {}  // NOLINT(google-explicit-constructor)
  Jet2(const Complex& value, std::array<Complex, 2> grad) : v(value), d(std::move(grad)) {}
  static Jet2 variable(const Complex& value, std::size_t which) {
    Jet2 j(value);
    j.d[which] = Complex(Real(1));
    return j;
  }
};

inline Jet2 operator+(const Jet2& a, const Jet2& b) { return Jet2{a.v + b.v, {a.d[0] + b.d[0], a.d[1] + b.d[1]}}; }
inline Jet2 operator-(const Jet2& a, const Jet2& b) { return Jet2{a.v - b.v, {a.d[0] - b.d[0], a.d[1] - b.d[1]}}; }
inline Jet2 operator-(const Jet2& a) { return Jet2{-a.v, {-a.d[0], -a.d[1]}}; }
inline Jet2 operator*(const Jet2& a, const Jet2& b) {
  return Jet2{a.v * b.v, {a.d[0] * b.v + a.v * b.d[0], a.d[1] * b.v + a.v * b.d[1]}};
}
inline Jet2 operator/(const Jet2& a, const Jet2& b) {
  Complex inv = inverse(b.v);
  Complex q = a.v * inv;
  return Jet2{q, {(a.d[0] - q * b.d[0]) * inv, (a.d[1] - q * b.d[1]) * inv}};
}
inline Jet2 sqrt(const Jet2& a) {
  Complex s = sqrt(a.v);
  Complex h = inverse(s * Real(2));
  return Jet2{s, {a.d[0] * h, a.d[1] * h}};
}
inline Jet2 pow(const Jet2& a, long long n) {
  Jet2 r(Complex(Real(1)));
  for (long long k = 0; k < n; ++k) r = r * a;
  return r;
}

namespace detail {

inline Real relative_gap(const Complex& a, const Complex& b) {
  Real scale = std::max({abs(a), abs(b), tolerance(0)});
  return abs(a - b) / scale;
}

// rho: E_1 x E_2 -> Z, (z_1, w_1, z_2, w_2) -> (y_0, y_1, y_2)
template <class T>
std::array<T, 3> rho2(const T& z1, const T& w1, const T& z2, const T& w2) {
  const T one(Complex(Real(1))), two(Complex(Real(2)));
  return {z2 * w1 / (z1 * z1 - one), (-(w1 * w2) + two * z1 * z2) / (w1 * w2 + two * z1 * z2),
          z1 * w2 / (z2 * z2 + one)};
}

// rho_1: Z -> S, (y_0, y_1, y_2) -> (x_0, x_1, x_2)
template <class T>
std::array<T, 3> rho1(const std::array<T, 3>& y) {
  const T one(Complex(Real(1))), half(Complex(Real(1) / 2)), ihalf(Complex(Real(0), Real(1) / 2));
  return {half * (y[0] + one / y[0]), half * (y[1] + one / y[1]), ihalf * (y[2] - one / y[2])};
}

inline Complex random_quartic_z(std::mt19937_64& rng) {
  // keep 1 - z^4 and z^2 +- 1 away from zero so every map is finite
  for (int attempt = 0; attempt < 100; ++attempt) {
    Complex z = uniform_box(rng, 1.2);
    Complex z2 = z * z;
    if (abs(Complex(Real(1)) - z2 * z2) > Real(1) / 10 && abs(z2 - Complex(Real(1))) > Real(1) / 10 &&
        abs(z2 + Complex(Real(1))) > Real(1) / 10 && abs(z) > Real(1) / 10)
      return z;
  }
  throw Error(ErrorCode::retry_exhausted, "no admissible point on w^2 + z^4 = 1 in 100 draws");
}

}  // namespace detail

// Largest relative residual over `samples` random points.
//  k3_lemma: rho^*(y^N - z_1^n...(1-z_1)^{n_1}...(-t + z_1...z_d)^{N-n}) on U_t for
//    (N, n, n_1, n_2, d) = (2, 1, 1, 1, 2), together with the change of variables
//    u_1 = -z_1, u_2 = -1/z_2, w = y/z_2^2 onto w^2 = u_1 u_2 (1+u_1)(1+u_2)(u_1 - t u_2).
//  shioda_inose_1: rho_1 maps (y_0 - 1/y_0)(y_1 - 1/y_1)(y_2 + 1/y_2) = 8 into
//    (1-x_0^2)(1-x_1^2)(1-x_2^2) = 1.
//  shioda_inose_2: rho_2 maps E_1 x E_2 (w_i^2 + z_i^4 = 1) into that surface.
//  eta_differential: (rho_1 rho_2)^* dx_0 dx_1 / ((1-x_0^2)(1-x_1^2) x_2) = 4i dz_1 dz_2 / (w_1 w_2),
//    with the pullback computed from first-order jets.
inline Real covering_identity_check(CoveringIdentity which, std::size_t samples = 50, std::uint64_t seed = 1) {
  const Complex one(Real(1));
  Real worst = 0;
  for (std::size_t j = 0; j < samples; ++j) {
    auto rng = detail::derived_rng(seed, j);
    switch (which) {
      case CoveringIdentity::k3_lemma: {
        const long N = 2, n = 1;
        const std::vector<long> ni{1, 1};
        SurfacePoint p = random_surface_point(SchemeDescriptor({N, N, N}, Complex(Real(1) / 2)), seed * 104729 + j);
        Complex y = pow(p.x[0], N - n);
        std::vector<Complex> z(2);
        for (std::size_t i = 0; i < 2; ++i) {
          z[i] = one - pow(p.x[i + 1], N);
          y *= pow(p.x[i + 1], ni[i]) * z[i];
        }
        Complex rhs = pow(-p.t + z[0] * z[1], N - n);
        for (std::size_t i = 0; i < 2; ++i) rhs *= pow(z[i], n) * pow(one - z[i], ni[i]);
        worst = std::max(worst, detail::relative_gap(pow(y, N), rhs));
        Complex u1 = -z[0], u2 = -inverse(z[1]), w = y / (z[1] * z[1]);
        Complex ono = u1 * u2 * (one + u1) * (one + u2) * (u1 - p.t * u2);
        worst = std::max(worst, detail::relative_gap(w * w, ono));
        break;
      }
      case CoveringIdentity::shioda_inose_1: {
        // (y_1, y_2) random, y_0 - 1/y_0 = c from the equation of Z
        Complex y1, y2, a1, a2;
        for (int attempt = 0;; ++attempt) {
          if (attempt == 100) throw Error(ErrorCode::retry_exhausted, "no admissible point on Z in 100 draws");
          y1 = detail::uniform_box(rng, 2.0);
          y2 = detail::uniform_box(rng, 2.0);
          a1 = y1 - inverse(y1);
          a2 = y2 + inverse(y2);
          if (abs(a1) > Real(1) / 10 && abs(a2) > Real(1) / 10 && abs(y1) > Real(1) / 10 && abs(y2) > Real(1) / 10)
            break;
        }
        Complex c = Complex(Real(8)) / (a1 * a2);
        Complex y0 = (c + sqrt(c * c + Complex(Real(4)))) / Real(2);
        std::array<Complex, 3> y{y0, y1, y2};
        Complex z_eq = (y0 - inverse(y0)) * a1 * a2;
        worst = std::max(worst, detail::relative_gap(z_eq, Complex(Real(8))));
        auto x = detail::rho1(y);
        Complex s = one;
        for (const auto& xi : x) s *= one - xi * xi;
        worst = std::max(worst, detail::relative_gap(s, one));
        break;
      }
      case CoveringIdentity::shioda_inose_2: {
        Complex z1 = detail::random_quartic_z(rng), z2 = detail::random_quartic_z(rng);
        Complex w1 = sqrt(one - pow(z1, 4)), w2 = sqrt(one - pow(z2, 4));
        if (std::uniform_int_distribution<int>(0, 1)(rng)) w1 = -w1;
        if (std::uniform_int_distribution<int>(0, 1)(rng)) w2 = -w2;
        auto y = detail::rho2(z1, w1, z2, w2);
        Complex lhs = (y[0] - inverse(y[0])) * (y[1] - inverse(y[1])) * (y[2] + inverse(y[2]));
        worst = std::max(worst, detail::relative_gap(lhs, Complex(Real(8))));
        break;
      }
      case CoveringIdentity::eta_differential: {
        Complex z1v = detail::random_quartic_z(rng), z2v = detail::random_quartic_z(rng);
        Jet2 z1 = Jet2::variable(z1v, 0), z2 = Jet2::variable(z2v, 1);
        Jet2 w1 = sqrt(Jet2(one) - pow(z1, 4)), w2 = sqrt(Jet2(one) - pow(z2, 4));
        if (std::uniform_int_distribution<int>(0, 1)(rng)) w1 = -w1;
        if (std::uniform_int_distribution<int>(0, 1)(rng)) w2 = -w2;
        auto x = detail::rho1(detail::rho2(z1, w1, z2, w2));
        // dx_0 ^ dx_1 = (d_1 x_0 d_2 x_1 - d_2 x_0 d_1 x_1) dz_1 ^ dz_2
        Complex jac = x[0].d[0] * x[1].d[1] - x[0].d[1] * x[1].d[0];
        Complex lhs = jac / ((one - x[0].v * x[0].v) * (one - x[1].v * x[1].v) * x[2].v);
        Complex rhs = Complex(Real(0), Real(4)) / (w1.v * w2.v);
        worst = std::max(worst, detail::relative_gap(lhs, rhs));
        break;
      }
    }
  }
  return worst;
}

}  // namespace hgreg
