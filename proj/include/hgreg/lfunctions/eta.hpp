#pragma once

// q-expansions of eta products prod eta(m z)^e from the sparse series
//   eta(mz)   = sum_{j in Z} (-1)^j q^{m (6j+1)^2 / 24}
//   eta(mz)^3 = sum_{j >= 0} (-1)^j (2j+1) q^{m (2j+1)^2 / 8}
// combined by sparse-times-dense convolution in exact integers.

#include <map>
#include <optional>
#include <string>
#include <utility>

#include "hgreg/lfunctions/arith.hpp"

namespace hgreg {

struct EtaProductSpec {
  std::vector<std::pair<long, long>> factors;  // (m, e)
  long level = 0;
  std::optional<long> character;  // discriminant D of the nebentypus chi_D, if known

  long twice_weight() const {
    long s = 0;
    for (const auto& f : factors) s += f.second;
    return s;
  }
  int weight() const { return static_cast<int>(twice_weight() / 2); }

  void validate() const {
    if (factors.empty()) throw Error(ErrorCode::invalid_argument, "empty eta product");
    long me = 0;
    for (const auto& [m, e] : factors) {
      if (m < 1 || e < 1) throw Error(ErrorCode::invalid_argument, "eta factors need m, e >= 1");
      me += m * e;
    }
    if (me % 24) throw Error(ErrorCode::non_integral_exponent, "sum m e must be divisible by 24");
    if (twice_weight() % 2) throw Error(ErrorCode::invalid_argument, "half-integral weight is not supported");
    int k = weight();
    if (k != 2 && k != 3) throw Error(ErrorCode::invalid_argument, "only weights 2 and 3 are supported");
  }

  std::string to_string() const {
    std::string s;
    for (const auto& [m, e] : factors) s += "eta(" + std::to_string(m) + "z)^" + std::to_string(e);
    return s;
  }
};

// The four weight-3 forms of level 16, 8, 12, 7.
inline EtaProductSpec eta_form_A() { return {{{4, 6}}, 16, -4}; }
inline EtaProductSpec eta_form_B() { return {{{1, 2}, {2, 1}, {4, 1}, {8, 2}}, 8, -8}; }
inline EtaProductSpec eta_form_C() { return {{{2, 3}, {6, 3}}, 12, -3}; }
inline EtaProductSpec eta_form_D() { return {{{1, 3}, {7, 3}}, 7, -7}; }

namespace detail {

using SparseSeries = std::vector<std::pair<long, long long>>;  // (exponent, coefficient)

// eta(mz) / q^{m/24} up to q^limit.
inline SparseSeries eta_series(long m, long limit) {
  SparseSeries s;
  for (long j = 0;; ++j) {
    bool any = false;
    for (long jj : {j, -j - 1}) {
      long r = 6 * jj + 1;
      long e = m * (r * r - 1) / 24;
      if (e > limit) continue;
      any = true;
      s.emplace_back(e, jj % 2 ? -1 : 1);
    }
    if (!any) break;
  }
  return s;
}

// eta(mz)^3 / q^{m/8} up to q^limit.
inline SparseSeries eta_cubed_series(long m, long limit) {
  SparseSeries s;
  for (long j = 0;; ++j) {
    long r = 2 * j + 1;
    long e = m * (r * r - 1) / 8;
    if (e > limit) break;
    s.emplace_back(e, (j % 2 ? -1 : 1) * r);
  }
  return s;
}

inline void multiply_into(std::vector<long long>& acc, const SparseSeries& s) {
  const long limit = static_cast<long>(acc.size()) - 1;
  std::vector<long long> out(acc.size(), 0);
  for (long n = 0; n <= limit; ++n) {
    if (!acc[n]) continue;
    for (const auto& [e, c] : s) {
      if (n + e > limit) continue;
      long long prod, sum;
      if (__builtin_mul_overflow(acc[n], c, &prod) || __builtin_add_overflow(out[n + e], prod, &sum))
        throw Error(ErrorCode::invalid_argument, "eta product coefficient overflows 64 bits");
      out[n + e] = sum;
    }
  }
  acc.swap(out);
}

}  // namespace detail

// a_0, ..., a_{n_max} of the q-expansion.
inline std::vector<long long> eta_coeffs(const EtaProductSpec& spec, long n_max) {
  spec.validate();
  if (n_max < 1 || n_max > 10'000'000) throw Error(ErrorCode::invalid_argument, "n_max must lie in [1, 10^7]");
  long offset = 0;
  for (const auto& [m, e] : spec.factors) offset += m * e;
  offset /= 24;
  std::vector<long long> out(static_cast<std::size_t>(n_max) + 1, 0);
  if (offset > n_max) return out;
  const long limit = n_max - offset;
  std::vector<long long> acc(static_cast<std::size_t>(limit) + 1, 0);
  acc[0] = 1;
  for (const auto& [m, e] : spec.factors) {
    for (long c = 0; c < e / 3; ++c) detail::multiply_into(acc, detail::eta_cubed_series(m, limit));
    for (long c = 0; c < e % 3; ++c) detail::multiply_into(acc, detail::eta_series(m, limit));
  }
  for (long n = 0; n <= limit; ++n) out[n + offset] = acc[n];
  return out;
}

struct HeckeReport {
  long n_max = 0;
  int weight = 0;
  std::map<long, int> inferred_character;  // chi(p) from a_{p^2} = a_p^2 - chi(p) p^{k-1}
  std::optional<long> character;           // matching discriminant D, chi = (D / .)
  std::size_t multiplicative_checked = 0, recursion_checked = 0, weil_checked = 0;
  std::vector<std::string> failures;
  bool holds() const { return failures.empty() && character.has_value(); }
};

namespace detail {

inline long long ipow(long long b, int e) {
  long long r = 1;
  while (e-- > 0) r *= b;
  return r;
}

inline long gcd(long a, long b) { return std::gcd(a, b); }

}  // namespace detail

// Exact Hecke relations of a normalized newform of weight k and level N on
// a_1..a_{n_max}: a_{mn} = a_m a_n for coprime m, n; the prime-power recursion
// a_{p^{j+1}} = a_p a_{p^j} - chi(p) p^{k-1} a_{p^{j-1}} for p not dividing N
// and a_{p^j} = a_p^j for p | N; the Weil bound a_p^2 <= 4 p^{k-1}. chi is
// inferred from the coefficients at primes with p^2 <= n_max and matched
// against the quadratic characters of small discriminant.
inline HeckeReport hecke_check(const std::vector<long long>& a, int k, long level) {
  HeckeReport r;
  const long n_max = static_cast<long>(a.size()) - 1;
  r.n_max = n_max;
  r.weight = k;
  if (n_max < 1 || a[1] != 1) {
    r.failures.push_back("a_1 != 1");
    return r;
  }
  const auto primes = primes_up_to(n_max);
  for (long p : primes) {
    if (level % p == 0 || p * p > n_max) continue;
    long long pk = detail::ipow(p, k - 1);
    long long diff = a[p] * a[p] - a[p * p];
    if (diff == pk)
      r.inferred_character[p] = 1;
    else if (diff == -pk)
      r.inferred_character[p] = -1;
    else if (diff == 0)
      r.inferred_character[p] = 0;
    else
      r.failures.push_back("a_{p^2} pattern not of the form a_p^2 -+ p^{k-1} at p = " + std::to_string(p));
  }
  for (long D : {1L, -3L, -4L, -7L, -8L, 5L, 8L, 12L, -11L, -15L, -19L, -20L, -24L, 13L, 17L}) {
    bool match = true;
    for (const auto& [p, c] : r.inferred_character)
      if (kronecker(D, p) != c) {
        match = false;
        break;
      }
    if (match) {
      r.character = D;
      break;
    }
  }
  if (!r.character) r.failures.push_back("no quadratic character matches the a_{p^2} pattern");
  const long D = r.character.value_or(1);

  for (long m = 2; m <= n_max; ++m)
    for (long n = m + 1; m * n <= n_max; ++n) {
      if (detail::gcd(m, n) != 1) continue;
      ++r.multiplicative_checked;
      if (a[m * n] != a[m] * a[n])
        r.failures.push_back("a_mn != a_m a_n at (" + std::to_string(m) + ", " + std::to_string(n) + ")");
    }
  for (long p : primes) {
    if (level % p == 0) {
      long long pw = a[p];
      for (long q = p * p; q <= n_max; q *= p) {
        pw *= a[p];
        ++r.recursion_checked;
        if (a[q] != pw) r.failures.push_back("a_{p^j} != a_p^j at p = " + std::to_string(p));
        if (q > n_max / p) break;
      }
      continue;
    }
    ++r.weil_checked;
    if (a[p] * a[p] > 4 * detail::ipow(p, k - 1)) r.failures.push_back("Weil bound fails at p = " + std::to_string(p));
    const long long chi_pk = kronecker(D, p) * detail::ipow(p, k - 1);
    long prev = 1, cur = p;
    while (cur <= n_max / p) {
      long next = cur * p;
      ++r.recursion_checked;
      if (a[next] != a[p] * a[cur] - chi_pk * a[prev])
        r.failures.push_back("prime-power recursion fails at " + std::to_string(next));
      prev = cur;
      cur = next;
    }
  }
  return r;
}

}  // namespace hgreg
