#pragma once

// Frobenius traces of the genus-one curves attached to the family: the quartic
// model of X_alpha, Y^2 = (1 - x^2)(1 - alpha - x^2), the pair E_alpha, E'_alpha
// related by the (1 - alpha) quadratic twist, and the quartic w^2 = 1 - z^4
// behind the K3 surface S.

#include <algorithm>
#include <map>
#include <string>

#include "hgreg/lfunctions/arith.hpp"

namespace hgreg {

// Y^2 = x^4 + c2 x^2 + c0 with c2 = -(2 - alpha), c0 = 1 - alpha.
struct QuarticCurve {
  Rational alpha, c2, c0;

  explicit QuarticCurve(const Rational& a) : alpha(a), c2(a - 2), c0(1 - a) {
    if (a == 0 || a == 1) throw Error(ErrorCode::invalid_argument, "alpha must avoid 0 and 1");
  }

  // disc(x^4 + c2 x^2 + c0) = 16 c0 (c2^2 - 4 c0)^2 = 16 (1 - alpha) alpha^4
  Rational discriminant() const {
    Rational inner = c2 * c2 - 4 * c0;
    return 16 * c0 * inner * inner;
  }

  // Odd primes dividing a numerator or denominator of alpha or 1 - alpha, plus
  // 2: the places where this model has bad reduction.
  std::vector<long> model_bad_primes() const {
    std::vector<long> out{2};
    for (const BigInt& n : {boost::multiprecision::numerator(alpha), boost::multiprecision::denominator(alpha),
                            boost::multiprecision::numerator(c0), boost::multiprecision::denominator(c0)})
      for (long p : prime_factors(n))
        if (std::find(out.begin(), out.end(), p) == out.end()) out.push_back(p);
    std::sort(out.begin(), out.end());
    return out;
  }

  bool is_good(long p) const {
    for (long q : model_bad_primes())
      if (q == p) return false;
    return true;
  }
};

// a_p = -1 - sum_x chi_p(f(x)); the two points above x = infinity are rational
// because f is monic.
inline long ec_ap(const QuarticCurve& curve, long p) {
  if (p == 2 || !is_prime(p) || !curve.is_good(p))
    throw Error(ErrorCode::bad_prime, "ec_ap needs an odd prime of good reduction, got " + std::to_string(p));
  const long c2 = reduce_mod(curve.c2, p), c0 = reduce_mod(curve.c0, p);
  const auto chi = quadratic_character_table(p);
  long s = 0;
  for (long x = 0; x < p; ++x) {
    long x2 = mulmod(x, x, p);
    long f = (mulmod(x2, x2, p) + mulmod(c2, x2, p) + c0) % p;
    s += chi[f];
  }
  return -1 - s;
}

// E_alpha: y^2 = x (x^2 + 2x - alpha/(1 - alpha)); E'_alpha multiplies the
// left side by 1 - alpha.
struct TwistPair {
  Rational alpha;
  explicit TwistPair(const Rational& a) : alpha(a) {
    if (a == 0 || a == 1) throw Error(ErrorCode::invalid_argument, "alpha must avoid 0 and 1");
  }
  Rational c() const { return alpha / (1 - alpha); }
  bool is_good(long p) const {
    if (p == 2) return false;
    Rational one_minus = 1 - alpha;
    for (const BigInt& n : {boost::multiprecision::numerator(alpha), boost::multiprecision::denominator(alpha),
                            boost::multiprecision::numerator(one_minus)})
      if (divides(p, n)) return false;
    // disc of x (x^2 + 2x - c) is (4 + 4c) c^2, nonzero here once the above hold
    return true;
  }
};

// a_p(E_alpha) from the character sum.
inline long twist_pair_ap(const TwistPair& E, long p) {
  if (!E.is_good(p)) throw Error(ErrorCode::bad_prime, "bad prime for E_alpha");
  const long c = reduce_mod(E.c(), p);
  const auto chi = quadratic_character_table(p);
  long s = 0;
  for (long x = 0; x < p; ++x) {
    long q = (mulmod(x, x, p) + 2 * x + p - c) % p;
    s += chi[mulmod(x, q, p)];
  }
  return -s;
}

// a_p(E'_alpha) by counting pairs (x, y) with (1 - alpha) y^2 = cubic(x)
// directly, without characters.
inline long twisted_ap_by_count(const TwistPair& E, long p) {
  if (!E.is_good(p)) throw Error(ErrorCode::bad_prime, "bad prime for E'_alpha");
  const long c = reduce_mod(E.c(), p), lead = reduce_mod(1 - E.alpha, p);
  std::vector<long> tally(static_cast<std::size_t>(p), 0);
  for (long y = 0; y < p; ++y) ++tally[mulmod(lead, mulmod(y, y, p), p)];
  long affine = 0;
  for (long x = 0; x < p; ++x) {
    long q = (mulmod(x, x, p) + 2 * x + p - c) % p;
    affine += tally[mulmod(x, q, p)];
  }
  return p + 1 - (affine + 1);
}

struct TwistReport {
  Rational alpha;
  long p_bound = 0;
  std::size_t checked = 0;
  std::size_t split = 0;  // chi(p) = +1
  std::size_t inert = 0;  // chi(p) = -1
  std::vector<long> failures;
  bool holds() const { return failures.empty() && checked > 0; }
};

// a_p(E'_alpha) = chi_{1-alpha}(p) a_p(E_alpha) for good p < p_bound.
inline TwistReport twist_relation_check(const Rational& alpha, long p_bound) {
  TwistPair E(alpha);
  TwistReport r;
  r.alpha = alpha;
  r.p_bound = p_bound;
  for (long p : primes_up_to(p_bound - 1)) {
    if (!E.is_good(p)) continue;
    int chi = quadratic_field_character(1 - alpha, p);
    long a = twist_pair_ap(E, p), b = twisted_ap_by_count(E, p);
    ++r.checked;
    (chi > 0 ? r.split : r.inert) += 1;
    if (b != chi * a) r.failures.push_back(p);
  }
  return r;
}

// a_p of w^2 = 1 - z^4: the leading coefficient -1 puts chi(-1) + 1 points at
// infinity, so a_p = -sum_z chi(1 - z^4) - chi(-1).
inline long quartic_fermat_ap(long p) {
  if (p == 2 || !is_prime(p)) throw Error(ErrorCode::bad_prime, "need an odd prime");
  const auto chi = quadratic_character_table(p);
  long s = 0;
  for (long z = 0; z < p; ++z) {
    long z2 = mulmod(z, z, p);
    s += chi[mod(1 - mulmod(z2, z2, p), p)];
  }
  return -s - chi[p - 1];
}

// S mode: the trace of Frobenius on the transcendental part of H^2 of S,
// a_p(E)^2 - 2p for p = 1 mod 4 and 0 for p = 3 mod 4.
inline long surface_trace_S(long p) {
  if (p == 2 || !is_prime(p)) throw Error(ErrorCode::bad_prime, "need an odd prime");
  if (p % 4 == 3) return 0;
  long a = quartic_fermat_ap(p);
  return a * a - 2 * p;
}

// Affine point count of (1 - x0^2)(1 - x1^2)(1 - x2^2) = alpha over F_p.
inline long surface_point_count(const Rational& alpha, long p) {
  if (p == 2 || !is_prime(p)) throw Error(ErrorCode::bad_prime, "need an odd prime");
  const long a = reduce_mod(alpha, p);
  if (a == 0) throw Error(ErrorCode::bad_prime, "alpha vanishes mod p");
  const auto chi = quadratic_character_table(p);
  std::vector<long> one_minus_sq(static_cast<std::size_t>(p));
  for (long x = 0; x < p; ++x) one_minus_sq[x] = mod(1 - mulmod(x, x, p), p);
  long count = 0;
  for (long x0 = 0; x0 < p; ++x0)
    for (long x1 = 0; x1 < p; ++x1) {
      long u = mulmod(one_minus_sq[x0], one_minus_sq[x1], p);
      if (u == 0) continue;
      // 1 - x2^2 = a / u has 1 + chi(1 - a/u) solutions
      long v = mod(1 - mulmod(a, invmod(u, p), p), p);
      count += 1 + chi[v];
    }
  return count;
}

}  // namespace hgreg
