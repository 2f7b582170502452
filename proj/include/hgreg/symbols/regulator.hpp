#pragma once

// The Betti regulator of a higher Ross symbol paired with the vanishing
// cycle,
//   sum_{0<i_k<n_k} (1 - nu_0^{i_0}) ... (1 - nu_d^{i_d}) (2 pi i)^d / (n_0...n_d) F_{a(i)}(alpha),
// a(i)_k = 1 - i_k/n_k. The value is defined modulo (2 pi i)^{d+1} Q; what is
// returned is the representative obtained by continuing F along the given (or
// canonical) path. The overall sign is +, the sign for which the torus periods
// match (2 pi i)^d / prod n times the hypergeometric series.

#include <optional>

#include "hgreg/hypergeom/calf.hpp"
#include "hgreg/periods/periods.hpp"
#include "hgreg/symbols/ross.hpp"

namespace hgreg {

inline constexpr const char* regulator_sign_convention =
    "sign +, fixed by the torus period orientation; value modulo (2 pi i)^(d+1) Q, canonical-path representative";

namespace detail {

inline EvalResult regulator_sum(const RossSymbol& symbol, const std::vector<long>* twist, const Complex& alpha,
                                const std::optional<PathSpec>& path) {
  symbol.validate();
  if (alpha == Complex()) throw Error(ErrorCode::invalid_argument, "the regulator pairing needs alpha != 0");
  // At the degenerate fibre alpha = 1 the series for F still converges
  // (sum a_k < s), and it is the only route there.
  const bool at_one = alpha == Complex(Real(1));
  if (at_one && path) throw Error(ErrorCode::invalid_argument, "no continuation path ends at alpha = 1");
  const SchemeDescriptor& s = symbol.scheme;
  const Complex pre = period_prefactor(s);
  EvalResult out;
  out.value = Complex();
  bool first = true;
  for (const auto& i : index_tuples(s.n)) {
    Complex c = symbol.coefficient(i);
    if (twist)
      for (std::size_t k = 0; k < i.size(); ++k) c *= root_of_unity((*twist)[k] * i[k], s.n[k]);
    if (c == Complex()) continue;
    HGParams params = HGParams::from_indices(s.n, i);
    EvalResult f = at_one ? calF_series(params, alpha) : path ? calF_ode(params, alpha, *path) : calF(params, alpha);
    out.value += c * pre * f.value;
    out.error_estimate += abs(c * pre) * f.error_estimate;
    if (first) {
      out.method = f.method;
      out.branch_note = f.branch_note;
      first = false;
    }
  }
  out.branch_note += std::string("; ") + regulator_sign_convention;
  return out;
}

}  // namespace detail

inline EvalResult regulator_value(const RossSymbol& symbol, const Complex& alpha,
                                  const std::optional<PathSpec>& path = std::nullopt) {
  return detail::regulator_sum(symbol, nullptr, alpha, path);
}

// The same sum with eps_0^{i_0} ... eps_d^{i_d} inserted, eps_k = exp(2 pi i e_k / n_k).
inline EvalResult regulator_value_twisted(const RossSymbol& symbol, const std::vector<long>& eps, const Complex& alpha,
                                          const std::optional<PathSpec>& path = std::nullopt) {
  if (eps.size() != symbol.scheme.n.size()) throw Error(ErrorCode::invalid_argument, "one twist per coordinate");
  return detail::regulator_sum(symbol, &eps, alpha, path);
}

}  // namespace hgreg
