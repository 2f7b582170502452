#pragma once

// The family (1 - x_0^{n_0}) ... (1 - x_d^{n_d}) = t and the rational forms
// on it that the period checks integrate.

#include <string>
#include <vector>

#include "hgreg/hypergeom/params.hpp"
#include "hgreg/numerics/complex.hpp"

namespace hgreg {

struct SchemeDescriptor {
  std::size_t d = 1;
  std::vector<long> n;  // n_0, ..., n_d
  Complex t;

  SchemeDescriptor() = default;
  SchemeDescriptor(std::vector<long> exps, const Complex& fiber) : d(exps.size() - 1), n(std::move(exps)), t(fiber) {
    validate();
  }

  void validate() const {
    if (n.size() < 2 || n.size() != d + 1)
      throw Error(ErrorCode::invalid_argument, "a scheme needs d + 1 >= 2 exponents");
    for (long v : n)
      if (v < 1) throw Error(ErrorCode::invalid_argument, "exponents must be positive");
    if (t == Complex() || t == Complex(Real(1)))
      throw Error(ErrorCode::invalid_argument, "fiber parameter must avoid 0 and 1");
  }

  // prod (1 - x_k^{n_k}) - t
  Complex equation(const std::vector<Complex>& x) const {
    Complex p(Real(1));
    for (std::size_t k = 0; k <= d; ++k) p *= Complex(Real(1)) - pow(x[k], static_cast<long long>(n[k]));
    return p - t;
  }
};

// omega^{(r)}_{i_0...i_d}; r = 0 is the form itself.
struct PeriodForm {
  std::vector<long> i;
  unsigned r = 0;

  void validate(const SchemeDescriptor& s) const {
    if (i.size() != s.n.size()) throw Error(ErrorCode::invalid_argument, "form indices do not match the scheme");
    for (std::size_t k = 0; k < i.size(); ++k)
      if (!(0 < i[k] && i[k] < s.n[k]))
        throw Error(ErrorCode::invalid_argument, "form index i_k must satisfy 0 < i_k < n_k");
  }

  // a_k = 1 - i_k / n_k, exact
  HGParams params(const SchemeDescriptor& s) const {
    validate(s);
    return HGParams::from_indices(s.n, i);
  }
};

}  // namespace hgreg
