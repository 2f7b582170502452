#pragma once

#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "hgreg/numerics/complex.hpp"

namespace hgreg {

// a_k = 1 - i_k / n_k
struct Provenance {
  long n;
  long i;
};

// Parameter tuple (a_1, ..., a_s). Exact rationals are kept when available so
// that values can be regenerated at whatever precision is current.
class HGParams {
 public:
  static HGParams from_rationals(std::vector<Rational> a) {
    HGParams p;
    p.exact_ = std::move(a);
    p.validate();
    return p;
  }

  static HGParams from_reals(std::vector<Real> a) {
    HGParams p;
    p.approx_ = std::move(a);
    p.validate();
    return p;
  }

  static HGParams from_indices(const std::vector<long>& n, const std::vector<long>& i) {
    if (n.size() != i.size() || n.empty())
      throw Error(ErrorCode::invalid_argument, "n and i must have the same nonzero length");
    std::vector<Rational> a;
    std::vector<Provenance> prov;
    for (std::size_t k = 0; k < n.size(); ++k) {
      if (!(0 < i[k] && i[k] < n[k]))
        throw Error(ErrorCode::invalid_argument, "index i_k must satisfy 0 < i_k < n_k");
      a.push_back(Rational(1) - Rational(BigInt(i[k]), BigInt(n[k])));
      prov.push_back({n[k], i[k]});
    }
    HGParams p = from_rationals(std::move(a));
    p.provenance_ = std::move(prov);
    return p;
  }

  // "1/2,1/2,1/3" or decimal literals.
  static HGParams parse(const std::string& list) {
    std::vector<std::string> items;
    std::stringstream ss(list);
    std::string item;
    while (std::getline(ss, item, ','))
      if (!item.empty()) items.push_back(item);
    if (items.empty()) throw Error(ErrorCode::invalid_argument, "empty parameter list");
    bool exact = true;
    for (const auto& it : items)
      if (it.find_first_of(".eE") != std::string::npos) exact = false;
    if (exact) {
      std::vector<Rational> a;
      for (const auto& it : items) a.push_back(parse_rational(it));
      return from_rationals(std::move(a));
    }
    std::vector<Real> a;
    for (const auto& it : items) a.push_back(parse_real(it));
    return from_reals(std::move(a));
  }

  std::size_t size() const { return exact_ ? exact_->size() : approx_.size(); }
  bool is_exact() const { return exact_.has_value(); }
  const std::optional<std::vector<Rational>>& exact() const { return exact_; }
  const std::optional<std::vector<Provenance>>& provenance() const { return provenance_; }

  // Values at the current working precision.
  std::vector<Real> values() const {
    std::vector<Real> out;
    if (exact_) {
      for (const auto& q : *exact_) out.push_back(real_from_rational(q));
    } else {
      for (const auto& x : approx_) out.push_back(at_working(x));
    }
    return out;
  }

  std::string to_string() const {
    std::string s;
    for (std::size_t k = 0; k < size(); ++k) {
      if (k) s += ",";
      if (exact_) {
        std::ostringstream os;
        os << (*exact_)[k];
        s += os.str();
      } else {
        s += hgreg::to_string(approx_[k], 20);
      }
    }
    return s;
  }

 private:
  void validate() const {
    for (const auto& a : values())
      if (a <= 0 && is_integer(a))
        throw Error(ErrorCode::invalid_argument, "parameter is a non-positive integer");
  }

  std::optional<std::vector<Rational>> exact_;
  std::vector<Real> approx_;
  std::optional<std::vector<Provenance>> provenance_;
};

enum class Method { series, connection, ode };

inline const char* to_string(Method m) {
  switch (m) {
    case Method::series: return "series";
    case Method::connection: return "connection";
    case Method::ode: return "ode";
  }
  return "?";
}

struct EvalResult {
  Complex value;
  Real error_estimate = 0;
  Method method = Method::series;
  std::string branch_note;
};

}  // namespace hgreg
