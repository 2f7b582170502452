#pragma once

// Configurable-precision reals. Precision is a property of the evaluation
// context: WorkingPrecision sets the number of decimal digits that newly
// created values carry, and restores the previous setting on exit.

#include <boost/math/constants/constants.hpp>
#include <boost/multiprecision/gmp.hpp>
#include <boost/multiprecision/mpfr.hpp>

#include <cmath>
#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <sstream>
#include <string>
#include <vector>

#include "hgreg/error.hpp"

namespace hgreg {

// Expression templates off: values behave like ordinary arithmetic types.
using Real = boost::multiprecision::number<boost::multiprecision::mpfr_float_backend<0>, boost::multiprecision::et_off>;
using Rational = boost::multiprecision::mpq_rational;
using BigInt = boost::multiprecision::mpz_int;

inline constexpr unsigned default_digits = 64;

inline unsigned working_digits() { return Real::default_precision(); }

// The Boost default precision is process-wide, so evaluations at different
// precisions must not run concurrently. Nesting is fine.
class WorkingPrecision {
 public:
  explicit WorkingPrecision(unsigned digits) : saved_(Real::default_precision()) {
    Real::default_precision(digits);
  }
  ~WorkingPrecision() { Real::default_precision(saved_); }
  WorkingPrecision(const WorkingPrecision&) = delete;
  WorkingPrecision& operator=(const WorkingPrecision&) = delete;

 private:
  unsigned saved_;
};

// Copy of x carried at the current working precision. Mixed-precision Boost
// arithmetic keeps the precision of the operands, so inputs are re-created
// with this before an internal precision raise.
inline Real at_working(const Real& x) { return Real(x, working_digits()); }

inline Real pow10(int e) { return boost::multiprecision::pow(Real(10), e); }

// 10^(offset - P) at the current working precision P.
inline Real tolerance(int offset) { return pow10(offset - static_cast<int>(working_digits())); }

inline Real real_from_string(const std::string& s) { return Real(s); }

inline Real real_from_rational(const Rational& q) {
  return Real(boost::multiprecision::numerator(q)) / Real(boost::multiprecision::denominator(q));
}

// Parses "p/q", an integer, or a decimal literal.
inline Real parse_real(const std::string& s) {
  auto slash = s.find('/');
  if (slash == std::string::npos) return Real(s);
  return Real(s.substr(0, slash)) / Real(s.substr(slash + 1));
}

inline Rational parse_rational(const std::string& s) {
  auto slash = s.find('/');
  if (slash == std::string::npos) {
    if (s.find_first_of(".eE") != std::string::npos)
      throw Error(ErrorCode::invalid_argument, "not a rational literal: " + s);
    return Rational(BigInt(s));
  }
  BigInt den(s.substr(slash + 1));
  if (den == 0) throw Error(ErrorCode::invalid_argument, "zero denominator in " + s);
  return Rational(BigInt(s.substr(0, slash)), den);
}

inline std::string to_string(const Real& x, int digits = -1) {
  std::ostringstream os;
  os.precision(digits > 0 ? digits : static_cast<int>(working_digits()));
  os << x;
  return os.str();
}

inline double to_double(const Real& x) { return x.convert_to<double>(); }

inline bool is_integer(const Real& x) { return boost::multiprecision::floor(x) == x; }

struct SpecialConstants {
  unsigned digits;
  Real pi;
  Real euler;
  Real log2;
};

namespace detail {

inline std::mutex& constants_mutex() {
  static std::mutex m;
  return m;
}

// Exact B_0, B_2, B_4, ... from the recurrence sum_{j<=m} C(m+1,j) B_j = 0.
inline const std::vector<Rational>& bernoulli_even_exact(std::size_t count) {
  static std::vector<Rational> all{Rational(1)};  // B_0, B_1, B_2, ...
  static std::vector<Rational> even{Rational(1)};
  std::size_t need_m = 2 * (count - 1);
  while (all.size() <= need_m) {
    std::size_t m = all.size();
    Rational acc = 0;
    BigInt binom = 1;  // C(m+1, j)
    for (std::size_t j = 0; j < m; ++j) {
      acc += Rational(binom) * all[j];
      binom = binom * BigInt(m + 1 - j) / BigInt(j + 1);
    }
    all.push_back(-acc / Rational(BigInt(m + 1)));
    if (m % 2 == 0) even.push_back(all.back());
  }
  return even;
}

}  // namespace detail

// gamma, pi and log 2 for the current precision, computed once and cached.
inline const SpecialConstants& constants() {
  static std::map<unsigned, std::unique_ptr<SpecialConstants>> cache;
  std::lock_guard<std::mutex> lock(detail::constants_mutex());
  unsigned p = working_digits();
  auto it = cache.find(p);
  if (it != cache.end()) return *it->second;
  auto c = std::make_unique<SpecialConstants>();
  c->digits = p;
  c->pi = boost::math::constants::pi<Real>();
  c->euler = boost::math::constants::euler<Real>();
  c->log2 = boost::math::constants::ln_two<Real>();
  return *cache.emplace(p, std::move(c)).first->second;
}

// B_0, B_2, ..., B_{2(count-1)} as Reals at the current precision.
inline const std::vector<Real>& bernoulli_b2n_table(std::size_t count) {
  static std::map<unsigned, std::vector<Real>> cache;
  std::lock_guard<std::mutex> lock(detail::constants_mutex());
  auto& table = cache[working_digits()];
  if (table.size() < count) {
    const auto& exact = detail::bernoulli_even_exact(count);
    for (std::size_t k = table.size(); k < count; ++k) table.push_back(real_from_rational(exact[k]));
  }
  return table;
}

}  // namespace hgreg
