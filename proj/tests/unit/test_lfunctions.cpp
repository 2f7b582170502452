#include <gtest/gtest.h>

#include <cstdio>

#include "hgreg/lfunctions/motives.hpp"

using namespace hgreg;

namespace {

class LFunctions : public ::testing::Test {
 protected:
  WorkingPrecision wp_{40};
};

// #{(x, y) in F_p^2 : y^2 = f(x)} by brute force over all pairs.
long affine_count(long p, const std::function<long(long)>& f) {
  long count = 0;
  for (long x = 0; x < p; ++x)
    for (long y = 0; y < p; ++y)
      if (mod(y * y - f(x), p) == 0) ++count;
  return count;
}

// eta(4z)^6 = (sum (-1)^j (2j+1) q^{(2j+1)^2/2})^2
long long eta4_sixth_oracle(long n) {
  long long s = 0;
  for (long a = 1; a * a < 2 * n; a += 2)
    for (long b = 1; a * a + b * b <= 2 * n; b += 2)
      if (a * a + b * b == 2 * n) s += ((a / 2 + b / 2) % 2 ? -1 : 1) * a * b;
  return s;
}

const char* samart_S = "1.428001974526322504658836463058635380498";

}  // namespace

TEST_F(LFunctions, QuarticTracesAgainstPointCounts) {
  QuarticCurve curve(Rational(2));
  EXPECT_EQ(ec_ap(curve, 5), -2);
  EXPECT_EQ(ec_ap(curve, 3), 0);
  // y^2 = x^3 + 4x is isomorphic to y^2 = x^4 - 1; its projective count is 8 at p = 5
  EXPECT_EQ(5 + 1 - (affine_count(5, [](long x) { return x * x * x + 4 * x; }) + 1), ec_ap(curve, 5));
  for (long p : {7L, 11L, 13L, 17L, 19L, 23L}) {
    long count = affine_count(p, [p](long x) { return mod(x * x * x * x - 1, p); }) + 2;
    EXPECT_EQ(ec_ap(curve, p), p + 1 - count) << p;
    EXPECT_LE(ec_ap(curve, p) * ec_ap(curve, p), 4 * p);
  }
  EXPECT_THROW(ec_ap(curve, 2), Error);
  EXPECT_THROW(ec_ap(QuarticCurve(Rational(4)), 3), Error);
  EXPECT_THROW(QuarticCurve(Rational(1)), Error);
}

TEST_F(LFunctions, FrobeniusDataSatisfiesWeil) {
  for (const char* a : {"2", "-1/8", "64"}) {
    auto f = quartic_frobenius(QuarticCurve(parse_rational(a)), 2000);
    EXPECT_GT(f.ap.size(), 250u);
    EXPECT_TRUE(f.weil_violations().empty()) << a;
  }
}

TEST_F(LFunctions, TwistRelation) {
  for (const char* a : {"4", "2", "64"}) {
    auto r = twist_relation_check(parse_rational(a), 1000);
    EXPECT_TRUE(r.holds()) << a;
    EXPECT_GT(r.split, 0u);
    EXPECT_GT(r.inert, 0u);
  }
  // 1 - (-8) = 9: no prime is inert
  auto r = twist_relation_check(Rational(-8), 1000);
  EXPECT_TRUE(r.holds());
  EXPECT_EQ(r.inert, 0u);
  // 1 - alpha = 4 is a square: the traces agree outright
  TwistPair E(Rational(-3));
  for (long p : primes_up_to(300))
    if (E.is_good(p)) {
      EXPECT_EQ(twisted_ap_by_count(E, p), twist_pair_ap(E, p)) << p;
    }
}

TEST_F(LFunctions, TwistCharacterIsLegendre) {
  const Rational q(-3);
  for (long p : primes_up_to(500)) {
    if (p <= 3) continue;
    long e = powmod(mod(-3, p), (p - 1) / 2, p);
    EXPECT_EQ(quadratic_field_character(q, p), e == 1 ? 1 : -1) << p;
  }
}

TEST_F(LFunctions, EtaCoefficients) {
  auto a = eta_coeffs(eta_form_A(), 400);
  EXPECT_EQ(a[1], 1);
  EXPECT_EQ(a[5], -6);
  EXPECT_EQ(a[9], 9);
  EXPECT_EQ(a[13], 10);
  for (long n = 1; n <= 400; ++n) EXPECT_EQ(a[n], eta4_sixth_oracle(n)) << n;
  EXPECT_EQ(eta_coeffs(eta_form_C(), 10)[1], 1);
  auto d = eta_coeffs(eta_form_D(), 2500);
  EXPECT_EQ(d[1], 1);
  for (long m = 1; m <= 50; ++m)
    for (long n = 1; n <= 50; ++n)
      if (std::gcd(m, n) == 1) {
        EXPECT_EQ(d[m * n], d[m] * d[n]);
      }
}

TEST_F(LFunctions, EtaSpecValidation) {
  EXPECT_THROW(eta_coeffs(EtaProductSpec{{{1, 1}}, 1, {}}, 10), Error);
  try {
    eta_coeffs(EtaProductSpec{{{1, 4}, {2, 1}}, 1, {}}, 10);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::non_integral_exponent);
  }
  EXPECT_THROW(eta_coeffs(eta_form_A(), 20'000'000), Error);
}

TEST_F(LFunctions, HeckeRelations) {
  for (const auto& spec : {eta_form_A(), eta_form_B(), eta_form_C(), eta_form_D()}) {
    auto r = hecke_check(eta_coeffs(spec, 2000), 3, spec.level);
    EXPECT_TRUE(r.holds()) << spec.to_string() << (r.failures.empty() ? "" : r.failures.front());
    ASSERT_TRUE(r.character.has_value());
    EXPECT_EQ(*r.character, *spec.character);
    EXPECT_GT(r.multiplicative_checked, 1000u);
  }
  auto broken = eta_coeffs(eta_form_A(), 200);
  broken[45] += 1;
  EXPECT_FALSE(hecke_check(broken, 3, 16).holds());
}

TEST_F(LFunctions, SieveReproducesNewformCoefficients) {
  auto a = eta_coeffs(eta_form_A(), 3000);
  auto sieved = coefficients_from_euler([&](long p) { return static_cast<long>(a[p]); },
                                        [](long p) { return p == 2; }, [](long p) { return kronecker(-4, p); }, 3,
                                        3000);
  EXPECT_EQ(sieved, a);
}

TEST_F(LFunctions, TwistTwiceIsIdentity) {
  auto a = eta_coeffs(eta_form_C(), 500);
  auto back = twist_coefficients(twist_coefficients(a, -3), -3);
  for (long n = 1; n <= 500; ++n)
    if (n % 3) {
      EXPECT_EQ(back[n], a[n]);
    }
}

TEST_F(LFunctions, SurfaceTraceMode) {
  EXPECT_EQ(surface_trace_S(5), -6);
  EXPECT_EQ(surface_trace_S(3), 0);
  EXPECT_EQ(quartic_fermat_ap(5), -2);
  long a13 = quartic_fermat_ap(13);
  EXPECT_EQ(a13 * a13, 36);
  auto A = eta_coeffs(eta_form_A(), 500);
  for (long p : primes_up_to(499))
    if (p > 2) {
      EXPECT_EQ(surface_trace_S(p), A[p]) << p;
    }
  EXPECT_THROW(surface_trace_S(2), Error);
}

TEST_F(LFunctions, SurfacePointCountIsPlausible) {
  // (1 - x^2) takes each value v with multiplicity 1 + chi(1 - v); the count
  // sums these multiplicities over triples with product alpha.
  const long p = 11;
  const Rational alpha(3);
  long brute = 0;
  for (long x = 0; x < p; ++x)
    for (long y = 0; y < p; ++y)
      for (long z = 0; z < p; ++z)
        if (mod((1 - x * x) * (1 - y * y) % p * (1 - z * z), p) == 3) ++brute;
  EXPECT_EQ(surface_point_count(alpha, p), brute);
}

TEST_F(LFunctions, FunctionalEquationClosesForEtaForms) {
  for (const auto& spec : {eta_form_A(), eta_form_C(), eta_form_D()}) {
    auto f = eta_lseries(spec);
    EXPECT_EQ(f.L.w, 1);
    for (const auto& s : fe_test_grid(3)) EXPECT_LE(fe_residual(f.L, s), tolerance(10)) << spec.to_string();
    // recomputing the two halves separately at s = k/2 + 0.3i
    Complex s(Real(3) / 2, Real(3) / 10), ks = Complex(Real(3)) - s;
    Complex lam = smoothed_half(f.L, s, Real(1)) + smoothed_half(f.L, ks, Real(1));
    Complex refl = smoothed_half(f.L, ks, Real(11) / 10) + smoothed_half(f.L, s, Real(10) / 11);
    EXPECT_LE(abs(lam - refl), tolerance(10) * abs(lam));
  }
}

TEST_F(LFunctions, LambdaIsRealOnTheCriticalLine) {
  auto f = eta_lseries(eta_form_A());
  Complex v = lambda_completed(f.L, Complex(Real(3) / 2));
  EXPECT_LE(abs(v.im), tolerance(10));
  EXPECT_GT(abs(v.re), Real(1) / 100);
}

TEST_F(LFunctions, DirectSumAtEdgeOfConvergence) {
  auto f = eta_lseries(eta_form_C());
  auto cc = lprime_crosscheck(f.L);
  EXPECT_LE(cc.fe_gap, tolerance(8));
  EXPECT_TRUE(cc.bracketed);
  EXPECT_GT(cc.lambda_k, 0);
  // L(C, 3) = Lambda(3) / (A^3 Gamma(3)) against the plain partial sum
  Real A = f.L.A();
  Real L3 = cc.lambda_k / (A * A * A * 2);
  Real partial = 0;
  for (long n = 1; n <= 2000 && n <= f.L.available(); ++n) partial += Real(f.L.a[n]) / (Real(n) * n * n);
  EXPECT_LT(abs(L3 - partial), Real(1) / 100);
}

TEST_F(LFunctions, LPrimeValues) {
  EXPECT_LT(abs(lprime_at_0(eta_lseries(eta_form_C()).L) - Real("0.30161498741294074646905293114776839989")),
            tolerance(8));
  EXPECT_LT(abs(lprime_at_0(eta_lseries(eta_form_D()).L) - Real("0.10267160777890201121045659489829291400")),
            tolerance(8));
  Real expect_A = (log(Real(64)) - Real(samart_S) / 8) / 8;
  EXPECT_LT(abs(lprime_at_0(eta_lseries(eta_form_A()).L) - expect_A), tolerance(8));
}

TEST_F(LFunctions, InsufficientCoefficients) {
  auto f = eta_lseries(eta_form_C());
  f.L.a.resize(20);
  try {
    lprime_at_0(f.L);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::insufficient_coefficients);
  }
}

TEST_F(LFunctions, ConductorSearchForTheCMCurve) {
  auto f = quartic_lseries(Rational(2));
  EXPECT_EQ(f.L.N, 32);
  EXPECT_EQ(f.L.w, 1);
  EXPECT_FALSE(f.search.ambiguous);
  EXPECT_LE(f.search.residual, f.search.threshold);
  for (long p : primes_up_to(f.L.available()))
    if (p % 4 == 3) {
      EXPECT_EQ(f.L.a[p], 0) << p;
    }
  EXPECT_LT(abs(lprime_at_0(f.L) - Real("0.743333246644")), pow10(-11));
}

TEST_F(LFunctions, EtaLevelBeatsNeighbours) {
  auto spec = eta_form_A();
  auto f = eta_lseries(spec, {8, 16, 32});
  EXPECT_EQ(f.search.best.N, 16);
  for (const auto& r : f.search.ranked)
    if (r.candidate.N != 16) {
      EXPECT_GT(r.screen, 1e-4);
    }
}

TEST_F(LFunctions, WrongConductorIsRejected) {
  QuarticCurve curve(Rational(2));
  std::vector<ConductorCandidate> wrong{{64, 1, {{2, 0}}}, {64, -1, {{2, 0}}}};
  auto r = conductor_sign_search(2, wrong, quartic_provider(curve));
  EXPECT_TRUE(r.ambiguous);
  EXPECT_GT(r.residual, r.threshold);
  EXPECT_THROW(eta_lseries(eta_form_A(), {32}), Error);
}

TEST_F(LFunctions, CoefficientCacheRoundTrip) {
  std::string path = ::testing::TempDir() + "hgreg_coeff_cache.csv";
  auto a = eta_coeffs(eta_form_D(), 300);
  save_coefficients(path, "D", a);
  auto back = load_coefficients(path, "D");
  ASSERT_TRUE(back.has_value());
  EXPECT_EQ(*back, a);
  EXPECT_FALSE(load_coefficients(path, "C").has_value());
  EXPECT_FALSE(load_coefficients(path + ".missing", "D").has_value());
  std::remove(path.c_str());
}
