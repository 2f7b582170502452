#pragma once

// Completed L-functions Lambda(s) = (sqrt(N)/(2 pi))^s Gamma(s) L(s) with
// Lambda(s) = w Lambda(k - s), evaluated by the smoothed sum split at c:
//   Lambda(s) = T(s, c) + w T(k - s, 1/c),
//   T(s, x)   = sum_n a_n (A/n)^s Gamma(s, n x / A),  A = sqrt(N)/(2 pi).
// The value does not depend on c when (N, w, a_n) are right, which is what the
// functional-equation residual and the conductor search measure. Since
// Gamma(s) has a pole at 0, L(0) = 0 and L'(0) = Lambda(0).

#include <complex>
#include <functional>
#include <map>
#include <set>
#include <string>

#include "hgreg/lfunctions/arith.hpp"
#include "hgreg/numerics/special.hpp"

namespace hgreg {

struct LSeries {
  std::vector<long long> a;  // a[0] unused, a[1] = 1
  int k = 2;
  long N = 1;
  int w = 1;
  std::string label;

  long available() const { return static_cast<long>(a.size()) - 1; }
  Real A() const { return boost::multiprecision::sqrt(Real(N)) / (2 * constants().pi); }

  void validate() const {
    if (available() < 1 || a[1] != 1) throw Error(ErrorCode::invalid_argument, "L-series needs a_1 = 1");
    if (w != 1 && w != -1) throw Error(ErrorCode::invalid_argument, "sign must be +1 or -1");
    if (N < 1) throw Error(ErrorCode::invalid_argument, "conductor must be positive");
  }
};

// Split point of the second evaluation in the functional-equation test.
inline Real default_split() { return Real(6) / 5; }

// Number of coefficients T(s, x) needs for `digits` correct digits: the terms
// fall like n^{k/2} e^{-n x / A}.
inline long required_terms(long N, int k, double x, unsigned digits) {
  const double A = std::sqrt(static_cast<double>(N)) / (2 * 3.14159265358979323846);
  const double target = (digits + 5) * std::log(10.0) + std::log(2.0);
  double y = target;
  for (int it = 0; it < 5; ++it) y = target + (k / 2.0 + 1) * std::log(std::max(1.0, y * A / x));
  return static_cast<long>(std::ceil(y * A / x)) + 1;
}

inline Complex smoothed_half(const LSeries& L, const Complex& s, const Real& x) {
  const long n_max = required_terms(L.N, L.k, to_double(x), working_digits());
  if (n_max > L.available())
    throw Error(ErrorCode::insufficient_coefficients, "need " + std::to_string(n_max) + " coefficients, have " +
                                                          std::to_string(L.available()));
  const Real A = L.A();
  Complex sum;
  for (long n = 1; n <= n_max; ++n) {
    if (!L.a[n]) continue;
    Real ratio = A / n;
    Complex term = exp(s * Complex(boost::multiprecision::log(ratio))) * upper_incomplete_gamma(s, x / ratio);
    sum += term * Real(L.a[n]);
  }
  return sum;
}

inline Complex lambda_completed(const LSeries& L, const Complex& s, const Real& c = Real(1)) {
  L.validate();
  Complex ks = Complex(Real(L.k)) - s;
  return smoothed_half(L, s, c) + smoothed_half(L, ks, 1 / c) * Real(L.w);
}

// |Lambda(s) at c = 1 - Lambda(s) at c| relative to the size of the two halves;
// equivalently |Lambda(s) - w Lambda(k - s)| with the halves split differently.
inline Real fe_residual(const LSeries& L, const Complex& s, const Real& c = default_split()) {
  L.validate();
  Complex ks = Complex(Real(L.k)) - s;
  Complex t1 = smoothed_half(L, s, Real(1)), t2 = smoothed_half(L, ks, Real(1));
  Complex lam1 = t1 + t2 * Real(L.w);
  Complex lamc = smoothed_half(L, s, c) + smoothed_half(L, ks, 1 / c) * Real(L.w);
  return abs(lam1 - lamc) / std::max(abs(t1) + abs(t2), tolerance(0));
}

// Five points used to certify a finalized series.
inline std::vector<Complex> fe_test_grid(int k) {
  Real h = Real(k) / 2;
  return {Complex(h, Real(3) / 10), Complex(h, Real(7) / 10), Complex(h + Real(1) / 4, Real(1) / 2),
          Complex(h - Real(1) / 3, Real(6) / 5), Complex(h + Real(1) / 2, Real(-2) / 5)};
}

// L'(0) = Lambda(0) = T(0, 1) + w T(k, 1).
inline Real lprime_at_0(const LSeries& L) { return lambda_completed(L, Complex(Real(0))).re; }

struct LPrimeCrossCheck {
  Real lambda0;         // T(0,1) + w T(k,1)
  Real lambda0_split;   // same with the halves split at c
  Real lambda_k;        // Lambda(k) from the smoothed sum at c
  Real fe_gap;          // |lambda0 - w lambda_k|
  Real direct_partial;  // A^k Gamma(k) sum_{n <= M} a_n n^{-k}
  Real tail_bound;      // bound on the omitted part, times A^k Gamma(k)
  bool bracketed = false;
};

namespace detail {

// sup_n d(n) / n^eps = prod_p max_j (j + 1) / p^{j eps}
inline Real divisor_bound_constant(const Real& eps) {
  Real c = 1;
  for (long p : primes_up_to(1 << 16)) {
    Real best = 1;
    for (long j = 1; j < 64; ++j) {
      Real v = Real(j + 1) / boost::multiprecision::pow(Real(p), eps * j);
      if (v > best) best = v;
      else if (j > 4) break;
    }
    if (best == 1) break;
    c *= best;
  }
  return c;
}

}  // namespace detail

// Lambda(0) against w Lambda(k), and Lambda(k) against the direct sum
// sum_{n <= M} a_n n^{-k} with the tail bounded through |a_n| <= d(n) n^{(k-1)/2}
// and d(n) <= C n^{1/4}. The bracket is only informative for k >= 3.
inline LPrimeCrossCheck lprime_crosscheck(const LSeries& L, long M = 0) {
  L.validate();
  LPrimeCrossCheck r;
  const Real c = default_split();
  r.lambda0 = lprime_at_0(L);
  r.lambda0_split = lambda_completed(L, Complex(Real(0)), c).re;
  r.lambda_k = lambda_completed(L, Complex(Real(L.k)), c).re;
  r.fe_gap = abs(r.lambda0 - r.lambda_k * L.w);
  if (M <= 0 || M > L.available()) M = L.available();
  Real partial = 0;
  for (long n = 1; n <= M; ++n)
    if (L.a[n]) partial += Real(L.a[n]) / boost::multiprecision::pow(Real(n), L.k);
  const Real eps = Real(1) / 4;
  const Real expo = Real(L.k - 1) / 2 + eps - L.k;  // a_n n^{-k} <= C n^expo
  Real factor = boost::multiprecision::pow(L.A(), L.k) * boost::multiprecision::tgamma(Real(L.k));
  r.direct_partial = partial * factor;
  if (expo < -1)
    r.tail_bound = detail::divisor_bound_constant(eps) * boost::multiprecision::pow(Real(M), expo + 1) / (-expo - 1) *
                   factor;
  else
    r.tail_bound = std::numeric_limits<double>::infinity();
  r.bracketed = abs(r.lambda_k - r.direct_partial) <= r.tail_bound;
  return r;
}

// a_1..a_{n_max} of an Euler product from prime data: for good p,
// a_{p^{j+1}} = a_p a_{p^j} - chi(p) p^{k-1} a_{p^{j-1}}; for bad p, a_{p^j} = a_p^j.
inline std::vector<long long> coefficients_from_euler(const std::function<long(long)>& ap,
                                                      const std::function<bool(long)>& is_bad,
                                                      const std::function<int(long)>& chi, int k, long n_max) {
  std::vector<long long> a(static_cast<std::size_t>(n_max) + 1, 0);
  if (n_max < 1) return a;
  a[1] = 1;
  const auto spf = smallest_prime_factors(n_max);
  for (long n = 2; n <= n_max; ++n) {
    long p = spf[n], m = n, q = 1;
    while (m % p == 0) {
      m /= p;
      q *= p;
    }
    if (m > 1) {
      a[n] = a[q] * a[m];
      continue;
    }
    // n = q = p^j
    if (q == p) {
      a[n] = ap(p);
    } else if (is_bad(p)) {
      a[n] = a[p] * a[q / p];
    } else {
      long long pk = 1;
      for (int i = 0; i < k - 1; ++i) pk *= p;
      a[n] = a[p] * a[q / p] - chi(p) * pk * a[q / p / p];
    }
  }
  return a;
}

// a_n -> chi_d(n) a_n with chi_d the Kronecker symbol of discriminant d.
inline std::vector<long long> twist_coefficients(const std::vector<long long>& a, long d) {
  std::vector<long long> out(a.size(), 0);
  for (std::size_t n = 1; n < a.size(); ++n) out[n] = kronecker(d, static_cast<long>(n)) * a[n];
  return out;
}

// ---------------------------------------------------------------------------
// Conductor and sign search.

struct ConductorCandidate {
  long N = 1;
  int w = 1;
  std::map<long, long> bad_ap;  // a_p at primes dividing N

  std::string describe() const {
    std::string s = "N=" + std::to_string(N) + " w=" + (w > 0 ? "+1" : "-1");
    for (const auto& [p, v] : bad_ap) s += " a_" + std::to_string(p) + "=" + std::to_string(v);
    return s;
  }
};

struct CandidateScore {
  ConductorCandidate candidate;
  double screen = 0;  // extended-precision residual
  Real verified = -1; // residual at the verification precision; -1 if not verified
};

struct ConductorSearchResult {
  ConductorCandidate best;
  Real residual;
  Real threshold;
  bool ambiguous = true;
  std::vector<CandidateScore> ranked;  // by screening residual, best first
  std::size_t candidates = 0;
};

using CoefficientProvider = std::function<std::vector<long long>(const ConductorCandidate&, long n_max)>;

namespace detail {

using CLD = std::complex<long double>;

// Gamma(s, y) in extended precision; gamma_s = Gamma(s).
inline CLD incomplete_gamma_ld(const CLD& s, long double y, const CLD& gamma_s) {
  if (y > std::abs(s) + 1) {
    const long double tiny = 1e-4000L;
    CLD b = y + 1.0L - s, c = 1.0L / tiny, d = 1.0L / b, h = d;
    for (int i = 1; i < 100000; ++i) {
      CLD an = -(static_cast<long double>(i) - s) * static_cast<long double>(i);
      b += 2.0L;
      d = an * d + b;
      if (std::abs(d) == 0) d = tiny;
      c = b + an / c;
      if (std::abs(c) == 0) c = tiny;
      d = 1.0L / d;
      CLD delta = c * d;
      h *= delta;
      if (std::abs(delta - 1.0L) < 1e-19L) break;
    }
    return h * std::exp(s * std::log(y) - y);
  }
  // gamma(s, y) = y^s e^{-y} sum_j y^j / (s (s+1) ... (s+j))
  CLD term = 1.0L / s, sum = term;
  for (int j = 1; j < 100000; ++j) {
    term *= y / (s + static_cast<long double>(j));
    sum += term;
    if (std::abs(term) < 1e-21L * std::abs(sum)) break;
  }
  return gamma_s - sum * std::exp(s * std::log(y) - y);
}

// T(s, x) in extended precision for a block of coefficient vectors.
inline std::vector<CLD> smoothed_half_ld(const std::vector<const std::vector<long long>*>& coeffs, long N, const CLD& s,
                                         long double x, const CLD& gamma_s, long n_max) {
  const long double A = std::sqrt(static_cast<long double>(N)) / (2 * 3.14159265358979323846264338L);
  std::vector<CLD> sums(coeffs.size());
  for (long n = 1; n <= n_max; ++n) {
    long double ratio = A / n;
    CLD g = std::exp(s * std::log(ratio)) * incomplete_gamma_ld(s, x / ratio, gamma_s);
    for (std::size_t i = 0; i < coeffs.size(); ++i)
      if ((*coeffs[i])[n]) sums[i] += g * static_cast<long double>((*coeffs[i])[n]);
  }
  return sums;
}

inline std::string bad_key(const std::map<long, long>& m) {
  std::string s;
  for (const auto& [p, v] : m) s += std::to_string(p) + ":" + std::to_string(v) + ";";
  return s;
}

}  // namespace detail

// Picks the candidate whose functional equation closes best at
// s = k/2 + 0.3i and k/2 + 0.7i. Every candidate is screened in extended
// precision; those within a factor 100 of the best (at most six) are re-scored
// at max(20, P/2 + 10) digits. The winner must reach 10^(6 - P/2) and be the
// only candidate that does, otherwise the result is flagged ambiguous.
inline ConductorSearchResult conductor_sign_search(int k, const std::vector<ConductorCandidate>& candidates,
                                                   const CoefficientProvider& provider) {
  if (candidates.empty()) throw Error(ErrorCode::invalid_argument, "no conductor candidates");
  const unsigned P = working_digits();
  ConductorSearchResult out;
  out.candidates = candidates.size();
  out.threshold = pow10(6 - static_cast<int>(P) / 2);
  const long double c = 1.2L;
  const std::vector<Complex> points{Complex(Real(k) / 2, Real(3) / 10), Complex(Real(k) / 2, Real(7) / 10)};

  long N_max = 0;
  for (const auto& cand : candidates) N_max = std::max(N_max, cand.N);
  const long screen_terms = required_terms(N_max, k, 1 / 1.2, 18);

  // coefficient vectors, shared between candidates with the same bad data
  std::map<std::string, std::vector<long long>> coeff_cache;
  auto coeffs_for = [&](const ConductorCandidate& cand) -> const std::vector<long long>& {
    std::string key = detail::bad_key(cand.bad_ap);
    auto it = coeff_cache.find(key);
    if (it == coeff_cache.end()) it = coeff_cache.emplace(key, provider(cand, screen_terms)).first;
    return it->second;
  };

  std::map<long, std::vector<std::size_t>> by_N;
  for (std::size_t i = 0; i < candidates.size(); ++i) by_N[candidates[i].N].push_back(i);

  // Gamma(s) for each test point and its reflection
  std::vector<std::pair<detail::CLD, detail::CLD>> gammas;
  std::vector<std::pair<detail::CLD, detail::CLD>> svals;
  for (const auto& s : points) {
    Complex ks = Complex(Real(k)) - s;
    Complex g1 = gamma(s), g2 = gamma(ks);
    auto ld = [](const Complex& z) {
      return detail::CLD(z.re.convert_to<long double>(), z.im.convert_to<long double>());
    };
    gammas.emplace_back(ld(g1), ld(g2));
    svals.emplace_back(ld(s), ld(ks));
  }

  std::vector<CandidateScore> scores(candidates.size());
  for (const auto& [N, idx] : by_N) {
    const long n_max = required_terms(N, k, 1 / 1.2, 18);
    std::vector<const std::vector<long long>*> block;
    std::vector<std::string> keys;
    std::map<std::string, std::size_t> slot;
    for (std::size_t i : idx) {
      std::string key = detail::bad_key(candidates[i].bad_ap);
      if (slot.emplace(key, block.size()).second) block.push_back(&coeffs_for(candidates[i]));
    }
    std::vector<double> worst(idx.size(), 0);
    for (std::size_t j = 0; j < points.size(); ++j) {
      const auto& [s, ks] = svals[j];
      const auto& [gs, gks] = gammas[j];
      auto t1 = detail::smoothed_half_ld(block, N, s, 1.0L, gs, n_max);
      auto t2 = detail::smoothed_half_ld(block, N, ks, 1.0L, gks, n_max);
      auto t3 = detail::smoothed_half_ld(block, N, s, c, gs, n_max);
      auto t4 = detail::smoothed_half_ld(block, N, ks, 1.0L / c, gks, n_max);
      for (std::size_t q = 0; q < idx.size(); ++q) {
        std::size_t b = slot[detail::bad_key(candidates[idx[q]].bad_ap)];
        long double w = candidates[idx[q]].w;
        detail::CLD lam1 = t1[b] + w * t2[b], lamc = t3[b] + w * t4[b];
        long double scale = std::max(std::abs(t1[b]) + std::abs(t2[b]), 1e-300L);
        worst[q] = std::max(worst[q], static_cast<double>(std::abs(lam1 - lamc) / scale));
      }
    }
    for (std::size_t q = 0; q < idx.size(); ++q) scores[idx[q]] = {candidates[idx[q]], worst[q], Real(-1)};
  }
  std::stable_sort(scores.begin(), scores.end(),
                   [](const CandidateScore& a, const CandidateScore& b) { return a.screen < b.screen; });

  // verification at reduced working precision
  const unsigned Pv = std::max(20u, P / 2 + 10);
  std::size_t passing = 0;
  Real best_res = -1;
  {
    WorkingPrecision wp(Pv);
    for (std::size_t i = 0; i < scores.size() && i < 6; ++i) {
      if (i > 0 && scores[i].screen > 100 * std::max(scores[0].screen, 1e-17)) break;
      LSeries L;
      L.k = k;
      L.N = scores[i].candidate.N;
      L.w = scores[i].candidate.w;
      L.a = provider(scores[i].candidate, required_terms(L.N, k, 1 / 1.2, Pv));
      Real worst = 0;
      for (const auto& s : points) worst = std::max(worst, fe_residual(L, at_working(s)));
      scores[i].verified = worst;
    }
  }
  for (std::size_t i = 0; i < scores.size(); ++i) {
    if (scores[i].verified < 0) continue;
    Real v(scores[i].verified, P);
    if (v <= out.threshold) ++passing;
    if (best_res < 0 || v < best_res) {
      best_res = v;
      out.best = scores[i].candidate;
    }
  }
  out.residual = best_res;
  out.ambiguous = passing != 1;
  scores.resize(std::min<std::size_t>(scores.size(), 10));
  out.ranked = std::move(scores);
  return out;
}

}  // namespace hgreg
