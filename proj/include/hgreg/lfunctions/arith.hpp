#pragma once

// Small exact arithmetic over Z and F_p used by point counting and the
// coefficient sieves.

#include <cstdint>
#include <numeric>
#include <vector>

#include "hgreg/numerics/real.hpp"

namespace hgreg {

inline std::vector<long> primes_up_to(long n) {
  std::vector<long> out;
  if (n < 2) return out;
  std::vector<bool> comp(static_cast<std::size_t>(n) + 1, false);
  for (long p = 2; p <= n; ++p) {
    if (comp[p]) continue;
    out.push_back(p);
    for (long q = p * p; q <= n; q += p) comp[q] = true;
  }
  return out;
}

inline bool is_prime(long n) {
  if (n < 2) return false;
  for (long d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

// Smallest prime factor for every n <= limit.
inline std::vector<long> smallest_prime_factors(long limit) {
  std::vector<long> spf(static_cast<std::size_t>(limit) + 1, 0);
  for (long p = 2; p <= limit; ++p) {
    if (spf[p]) continue;
    for (long q = p; q <= limit; q += p)
      if (!spf[q]) spf[q] = p;
  }
  return spf;
}

inline long mod(long a, long p) {
  long r = a % p;
  return r < 0 ? r + p : r;
}

inline long mulmod(long a, long b, long p) { return static_cast<long>((static_cast<__int128>(a) * b) % p); }

inline long powmod(long a, long e, long p) {
  long r = 1 % p;
  a = mod(a, p);
  for (; e > 0; e >>= 1, a = mulmod(a, a, p))
    if (e & 1) r = mulmod(r, a, p);
  return r;
}

inline long invmod(long a, long p) {
  a = mod(a, p);
  if (a == 0) throw Error(ErrorCode::invalid_argument, "no inverse of 0 mod p");
  return powmod(a, p - 2, p);
}

// Rational q reduced mod p; p must not divide the denominator.
inline long reduce_mod(const Rational& q, long p) {
  BigInt num = boost::multiprecision::numerator(q), den = boost::multiprecision::denominator(q);
  long n = static_cast<long>(((num % p) + p) % p), d = static_cast<long>(((den % p) + p) % p);
  if (d == 0) throw Error(ErrorCode::bad_prime, "p divides a denominator");
  return mulmod(n, invmod(d, p), p);
}

inline bool divides(long p, const BigInt& n) { return n % p == 0; }

// Quadratic character table on F_p: chi[v] in {-1, 0, 1}.
inline std::vector<int> quadratic_character_table(long p) {
  std::vector<int> chi(static_cast<std::size_t>(p), -1);
  chi[0] = 0;
  for (long y = 1; y < p; ++y) chi[mulmod(y, y, p)] = 1;
  return chi;
}

// Kronecker symbol (a/n) for n > 0, by the reciprocity algorithm. Kept
// separate from the character tables so that the two can be compared.
inline int kronecker(long a, long n) {
  if (n <= 0) throw Error(ErrorCode::invalid_argument, "kronecker needs n > 0");
  int result = 1;
  while (n % 2 == 0) {
    n /= 2;
    long am8 = mod(a, 8);
    if (am8 % 2 == 0) return 0;
    if (am8 == 3 || am8 == 5) result = -result;
  }
  a = mod(a, n);
  while (a != 0) {
    while (a % 2 == 0) {
      a /= 2;
      long n8 = n % 8;
      if (n8 == 3 || n8 == 5) result = -result;
    }
    std::swap(a, n);
    if (a % 4 == 3 && n % 4 == 3) result = -result;
    a %= n;
  }
  return n == 1 ? result : 0;
}

// Kronecker symbol of Q(sqrt(q)) at an odd prime p not dividing q's numerator
// or denominator: (num * den / p).
inline int quadratic_field_character(const Rational& q, long p) {
  BigInt num = boost::multiprecision::numerator(q), den = boost::multiprecision::denominator(q);
  long a = static_cast<long>(((num % p) + p) % p), b = static_cast<long>(((den % p) + p) % p);
  return kronecker(mulmod(a, b, p), p);
}

// Prime factors of |n| for a nonzero integer.
inline std::vector<long> prime_factors(BigInt n) {
  std::vector<long> out;
  if (n < 0) n = -n;
  for (long p = 2; BigInt(p) * p <= n; ++p) {
    if (n % p == 0) {
      out.push_back(p);
      while (n % p == 0) n /= p;
    }
  }
  if (n > 1) out.push_back(static_cast<long>(n));
  return out;
}

}  // namespace hgreg
