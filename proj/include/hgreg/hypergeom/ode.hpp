#pragma once

// Analytic continuation of solutions of the hypergeometric operator
//   theta prod_j (theta + b_j - 1) - t prod_i (theta + a_i),   theta = t d/dt,
// by Taylor re-expansion. A solution is carried as its theta-jet
// (y, theta y, ..., theta^{p-1} y). Each step re-expands at the current point c
// in the scaled variable tau = (u - c)/h, with |h| at most half the distance
// from c to {0, 1}, so Taylor coefficients decay at least like 2^-m.

#include <vector>

#include "hgreg/hypergeom/path.hpp"
#include "hgreg/numerics/linalg.hpp"

namespace hgreg {

class HypergeometricODE {
 public:
  HypergeometricODE(std::vector<Real> upper, std::vector<Real> lower)
      : upper_(std::move(upper)), lower_(std::move(lower)), p_(upper_.size()) {
    if (p_ == 0 || lower_.size() + 1 != p_)
      throw Error(ErrorCode::invalid_argument, "operator needs p upper and p - 1 lower parameters");
    stirling2_.assign(p_ + 1, std::vector<long long>(p_ + 1, 0));
    stirling1_.assign(p_ + 1, std::vector<long long>(p_ + 1, 0));
    stirling2_[0][0] = stirling1_[0][0] = 1;
    for (std::size_t n = 1; n <= p_; ++n)
      for (std::size_t k = 1; k <= n; ++k) {
        stirling2_[n][k] = static_cast<long long>(k) * stirling2_[n - 1][k] + stirling2_[n - 1][k - 1];
        // signed: s(n,k) = s(n-1,k-1) - (n-1) s(n-1,k)
        stirling1_[n][k] = stirling1_[n - 1][k - 1] - static_cast<long long>(n - 1) * stirling1_[n - 1][k];
      }
    // Q(theta) = theta prod (theta + b_j - 1), R(theta) = prod (theta + a_i).
    std::vector<Real> q{Real(0), Real(1)};
    for (const auto& b : lower_) q = mul_linear(q, b - 1);
    std::vector<Real> r{Real(1)};
    for (const auto& a : upper_) r = mul_linear(r, a);
    // theta^k = sum_j S(k,j) t^j d^j, so the operator is sum_j (A_j t^j - B_j t^{j+1}) d^j.
    A_.assign(p_ + 1, Real(0));
    B_.assign(p_ + 1, Real(0));
    for (std::size_t j = 0; j <= p_; ++j)
      for (std::size_t k = j; k <= p_; ++k) {
        A_[j] += q[k] * stirling2_[k][j];
        B_[j] += r[k] * stirling2_[k][j];
      }
  }

  std::size_t order() const { return p_; }

  // Transports each column (a theta-jet at path.start()) to path.end().
  // Returns the accumulated error estimate relative to the jet scale.
  Real transport(const PathSpec& path, std::vector<std::vector<Complex>>& jets, double step_fraction = 0.5) const {
    path.validate();
    Real err = 0;
    Complex c = path.start();
    for (const auto& seg : path.segments()) {
      Real s = 0;
      Real len = seg.length();
      if (len == 0) continue;
      while (s < 1) {
        Real dist = distance_to_singularities(c);
        if (dist < path.clearance() / 2)
          throw Error(ErrorCode::step_underflow, "continuation step collapsed near a singular point");
        Real ds = Real(step_fraction) * dist / len;
        Real s_next = s + ds >= 1 ? Real(1) : s + ds;
        Complex next = seg.point(s_next);
        err += step(c, next - c, jets);
        c = next;
        s = s_next;
      }
    }
    return err;
  }

  // Fundamental transport matrix: jet(end) = M jet(start).
  Matrix transport_matrix(const PathSpec& path, Real* err = nullptr) const {
    std::vector<std::vector<Complex>> jets(p_, std::vector<Complex>(p_));
    for (std::size_t k = 0; k < p_; ++k) jets[k][k] = Complex(Real(1));
    Real e = transport(path, jets);
    if (err) *err = e;
    Matrix m(p_, p_);
    for (std::size_t k = 0; k < p_; ++k) m.set_column(k, jets[k]);
    return m;
  }

  // One Taylor step from c to c + h applied to every jet; returns the local
  // truncation estimate relative to the jet scale.
  Real step(const Complex& c, const Complex& h, std::vector<std::vector<Complex>>& jets) const {
    const std::size_t p = p_;
    // Ptilde[j][i] = [tau^i] p_j(c + h tau) * h^{p-j}
    std::vector<std::vector<Complex>> P(p + 1, std::vector<Complex>(p + 2));
    std::vector<Complex> cpow(p + 2), hpow(2 * p + 3);
    cpow[0] = hpow[0] = Complex(Real(1));
    for (std::size_t k = 1; k < cpow.size(); ++k) cpow[k] = cpow[k - 1] * c;
    for (std::size_t k = 1; k < hpow.size(); ++k) hpow[k] = hpow[k - 1] * h;
    for (std::size_t j = 0; j <= p; ++j) {
      long long binom_a = 1, binom_b = 1;  // C(j, i), C(j+1, i)
      for (std::size_t i = 0; i <= j + 1; ++i) {
        Complex v = (i <= j ? cpow[j - i] * (A_[j] * binom_a) : Complex()) - cpow[j + 1 - i] * (B_[j] * binom_b);
        P[j][i] = v * hpow[p - j + i];
        binom_a = binom_a * static_cast<long long>(j - i) / static_cast<long long>(i + 1);
        binom_b = binom_b * static_cast<long long>(j + 1 - i) / static_cast<long long>(i + 1);
      }
    }
    const Complex lead_inv = inverse(P[p][0]);

    const Real tol = tolerance(-5);
    Complex cn = c + h;
    Real worst = 0;
    for (auto& jet : jets) {
      // ordinary derivatives at c: y^(k) = c^-k sum_m s(k,m) theta^m y
      std::vector<Complex> G;
      G.reserve(4 * working_digits() + 64);
      Complex cinv = inverse(c);
      Complex cinv_k(Real(1));
      Real fact = 1;
      Real scale = 0;
      for (std::size_t k = 0; k < p; ++k) {
        Complex d;
        for (std::size_t m = 0; m <= k; ++m)
          if (stirling1_[k][m]) d += jet[m] * Real(stirling1_[k][m]);
        if (k > 0) fact *= Real(static_cast<long>(k));
        G.push_back(d * cinv_k * hpow[k] / fact);
        cinv_k *= cinv;
        scale = std::max(scale, abs(G.back()));
      }
      for (const auto& v : jet) scale = std::max(scale, abs(v));
      if (scale == 0) continue;

      // Recurrence for G_{n+p}.
      Real tail = 0;
      std::size_t small_run = 0;
      for (std::size_t n = 0;; ++n) {
        Complex acc;
        for (std::size_t j = 0; j <= p; ++j)
          for (std::size_t i = 0; i <= j + 1 && i <= n; ++i) {
            if (j == p && i == 0) continue;
            std::size_t idx = n - i + j;
            acc += P[j][i] * G[idx] * falling(idx, j);
          }
        Complex g = -acc * lead_inv / falling(n + p, p);
        G.push_back(g);
        std::size_t m = n + p;
        // derivatives up to order p-1 weigh the coefficient by up to m^{p-1}
        Real weight = boost::multiprecision::pow(Real(static_cast<long>(m)), static_cast<long>(p - 1));
        Real mag = abs(g) * weight;
        if (mag < tol * scale) {
          if (++small_run >= p + 2) {
            tail = mag;
            break;
          }
        } else {
          small_run = 0;
        }
        if (m > 40 * working_digits() + 2000)
          throw Error(ErrorCode::tolerance_not_met, "Taylor step did not converge");
      }
      // tau-derivatives at tau = 1, then t-derivatives at c + h, then theta-jet.
      std::vector<Complex> deriv(p);
      for (std::size_t j = 0; j < p; ++j) {
        Complex s;
        for (std::size_t m = j; m < G.size(); ++m) s += G[m] * falling(m, j);
        deriv[j] = s / hpow[j];
      }
      std::vector<Complex> cnp(p);
      cnp[0] = Complex(Real(1));
      for (std::size_t k = 1; k < p; ++k) cnp[k] = cnp[k - 1] * cn;
      for (std::size_t k = 0; k < p; ++k) {
        Complex v;
        for (std::size_t j = 0; j <= k; ++j)
          if (stirling2_[k][j]) v += deriv[j] * cnp[j] * Real(stirling2_[k][j]);
        jet[k] = v;
      }
      worst = std::max(worst, 2 * tail / scale + tolerance(0) * G.size());
    }
    return worst;
  }

 private:
  static std::vector<Real> mul_linear(const std::vector<Real>& poly, const Real& c) {
    // poly * (theta + c)
    std::vector<Real> out(poly.size() + 1, Real(0));
    for (std::size_t k = 0; k < poly.size(); ++k) {
      out[k + 1] += poly[k];
      out[k] += poly[k] * c;
    }
    return out;
  }

  // m (m-1) ... (m-j+1)
  static Real falling(std::size_t m, std::size_t j) {
    if (j > m) return Real(0);
    Real f = 1;
    for (std::size_t k = 0; k < j; ++k) f *= static_cast<long>(m - k);
    return f;
  }

  std::vector<Real> upper_, lower_;
  std::size_t p_;
  std::vector<std::vector<long long>> stirling2_, stirling1_;
  std::vector<Real> A_, B_;
};

}  // namespace hgreg
