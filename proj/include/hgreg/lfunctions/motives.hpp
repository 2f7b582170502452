#pragma once

// Finalized L-series for the two families of motives: the quartic curves
// X_alpha, whose conductor and sign come out of the search, and eta-product
// newforms of known level.

#include <fstream>
#include <memory>
#include <optional>

#include "hgreg/lfunctions/curves.hpp"
#include "hgreg/lfunctions/eta.hpp"
#include "hgreg/lfunctions/lseries.hpp"

namespace hgreg {

struct FrobeniusData {
  int k = 2;
  std::map<long, long> ap;  // good primes only

  std::vector<long> weil_violations() const {
    std::vector<long> out;
    for (const auto& [p, a] : ap) {
      long double bound = 4.0L * std::pow(static_cast<long double>(p), k - 1);
      if (static_cast<long double>(a) * a > bound) out.push_back(p);
    }
    return out;
  }
};

inline FrobeniusData quartic_frobenius(const QuarticCurve& curve, long p_bound) {
  FrobeniusData f;
  for (long p : primes_up_to(p_bound - 1))
    if (curve.is_good(p)) f.ap[p] = ec_ap(curve, p);
  return f;
}

// Candidates N = prod p^e over the primes where the model is bad: e_2 in 1..8,
// e_3 in 1..5, e in {1, 2} otherwise. Multiplicative reduction (e = 1) has
// a_p = +-1, additive reduction a_p = 0. Both signs are tried.
inline std::vector<ConductorCandidate> quartic_candidates(const QuarticCurve& curve) {
  std::vector<ConductorCandidate> partial{{1, 1, {}}};
  for (long p : curve.model_bad_primes()) {
    int e_max = p == 2 ? 8 : p == 3 ? 5 : 2;
    std::vector<ConductorCandidate> next;
    for (const auto& base : partial) {
      long pe = 1;
      for (int e = 1; e <= e_max; ++e) {
        pe *= p;
        std::vector<long> choices = e == 1 ? std::vector<long>{1, -1} : std::vector<long>{0};
        for (long a : choices) {
          ConductorCandidate c = base;
          c.N *= pe;
          c.bad_ap[p] = a;
          next.push_back(c);
        }
      }
    }
    partial = std::move(next);
  }
  std::vector<ConductorCandidate> out;
  for (const auto& c : partial)
    for (int w : {1, -1}) {
      ConductorCandidate x = c;
      x.w = w;
      out.push_back(x);
    }
  return out;
}

// Coefficients from good-prime point counts (memoized across calls) and the
// candidate's bad-prime data.
inline CoefficientProvider quartic_provider(const QuarticCurve& curve) {
  auto cache = std::make_shared<std::map<long, long>>();
  return [curve, cache](const ConductorCandidate& cand, long n_max) {
    auto ap = [&](long p) -> long {
      if (auto it = cand.bad_ap.find(p); it != cand.bad_ap.end()) return it->second;
      if (!curve.is_good(p)) return 0;
      auto it = cache->find(p);
      if (it == cache->end()) it = cache->emplace(p, ec_ap(curve, p)).first;
      return it->second;
    };
    auto bad = [&](long p) { return cand.bad_ap.count(p) > 0 || !curve.is_good(p); };
    return coefficients_from_euler(ap, bad, [](long) { return 1; }, 2, n_max);
  };
}

struct FinalizedLSeries {
  LSeries L;
  ConductorSearchResult search;
};

// Runs the search and, when it is unambiguous, builds the series with enough
// coefficients for the working precision with the split at 1/1.2.
inline FinalizedLSeries quartic_lseries(const Rational& alpha) {
  QuarticCurve curve(alpha);
  auto provider = quartic_provider(curve);
  FinalizedLSeries out;
  out.search = conductor_sign_search(2, quartic_candidates(curve), provider);
  if (out.search.ambiguous)
    throw Error(ErrorCode::ambiguous_conductor, "no unique conductor for alpha = " + alpha.str() +
                                                    " (best " + out.search.best.describe() + ")");
  out.L.k = 2;
  out.L.N = out.search.best.N;
  out.L.w = out.search.best.w;
  out.L.label = "X_alpha, alpha = " + alpha.str();
  out.L.a = provider(out.search.best, required_terms(out.L.N, 2, 1 / 1.2, working_digits()));
  return out;
}

// The level is given; the search over w (and over alternative levels, if any
// are passed) confirms it.
inline FinalizedLSeries eta_lseries(const EtaProductSpec& spec, std::vector<long> levels = {}) {
  spec.validate();
  if (levels.empty()) levels.push_back(spec.level);
  std::vector<ConductorCandidate> candidates;
  for (long N : levels)
    for (int w : {1, -1}) candidates.push_back({N, w, {}});
  auto cache = std::make_shared<std::vector<long long>>();
  CoefficientProvider provider = [spec, cache](const ConductorCandidate&, long n_max) {
    if (static_cast<long>(cache->size()) <= n_max) *cache = eta_coeffs(spec, n_max);
    return std::vector<long long>(cache->begin(), cache->begin() + n_max + 1);
  };
  FinalizedLSeries out;
  out.search = conductor_sign_search(spec.weight(), candidates, provider);
  if (out.search.ambiguous)
    throw Error(ErrorCode::ambiguous_conductor, "eta product " + spec.to_string() + " fails its functional equation");
  out.L.k = spec.weight();
  out.L.N = out.search.best.N;
  out.L.w = out.search.best.w;
  out.L.label = spec.to_string();
  out.L.a = provider(out.search.best, required_terms(out.L.N, out.L.k, 1 / 1.2, working_digits()));
  return out;
}

// ---------------------------------------------------------------------------
// Coefficient cache: a CSV file whose first line is the format version, the
// second the label, then one "n,a_n" line per coefficient.

inline constexpr const char* coefficient_cache_version = "hgreg-coefficients-v1";

inline void save_coefficients(const std::string& path, const std::string& label, const std::vector<long long>& a) {
  std::ofstream f(path);
  if (!f) throw Error(ErrorCode::invalid_argument, "cannot write " + path);
  f << coefficient_cache_version << "\n" << label << "\n";
  for (std::size_t n = 1; n < a.size(); ++n) f << n << "," << a[n] << "\n";
}

// Returns nothing when the file is missing, of another version or label, or
// malformed.
inline std::optional<std::vector<long long>> load_coefficients(const std::string& path, const std::string& label) {
  std::ifstream f(path);
  if (!f) return std::nullopt;
  std::string line;
  if (!std::getline(f, line) || line != coefficient_cache_version) return std::nullopt;
  if (!std::getline(f, line) || line != label) return std::nullopt;
  std::vector<long long> a{0};
  while (std::getline(f, line)) {
    auto comma = line.find(',');
    if (comma == std::string::npos) return std::nullopt;
    try {
      if (std::stol(line.substr(0, comma)) != static_cast<long>(a.size())) return std::nullopt;
      a.push_back(std::stoll(line.substr(comma + 1)));
    } catch (const std::exception&) {
      return std::nullopt;
    }
  }
  return a;
}

}  // namespace hgreg
