#include <gtest/gtest.h>

#include <random>

#include "hgreg/hypergeom/calf.hpp"
#include "hgreg/hypergeom/monodromy.hpp"

using namespace hgreg;

namespace {

class Hypergeom : public ::testing::Test {
 protected:
  WorkingPrecision wp_{40};
};

Real R(long p, long q = 1) { return Real(p) / Real(q); }

Real rel_err(const Complex& x, const Complex& y) { return abs(x - y) / std::max(Real(1), abs(y)); }

const HGParams& half2() {
  static const HGParams h = HGParams::parse("1/2,1/2");
  return h;
}
const HGParams& half3() {
  static const HGParams h = HGParams::parse("1/2,1/2,1/2");
  return h;
}

}  // namespace

TEST_F(Hypergeom, SeriesAtZeroIsOne) {
  auto r = pfq_series({R(1), R(1)}, {R(2)}, Complex(R(0)));
  EXPECT_EQ(r.value, Complex(R(1)));
}

TEST_F(Hypergeom, SeriesMatchesLogClosedForm) {
  // 2F1(1,1;2;t) = -log(1-t)/t
  for (Real t : {R(1, 2), R(-9, 10), R(3, 10)}) {
    auto r = pfq_series({R(1), R(1)}, {R(2)}, Complex(t));
    Real expect = -boost::multiprecision::log1p(-t) / t;
    EXPECT_LT(rel_err(r.value, expect), tolerance(10));
    EXPECT_GE(r.error_estimate, 0);
  }
  auto half = pfq_series({R(1), R(1)}, {R(2)}, Complex(R(1, 2)));
  EXPECT_LT(abs(half.value - 2 * constants().log2), tolerance(10));
}

TEST_F(Hypergeom, SeriesOnUnitCircleMatchesGauss) {
  // Gauss: 2F1(a,b;c;1) = G(c)G(c-a-b)/(G(c-a)G(c-b))
  Real a = R(1, 3), b = R(1, 4), c = R(2);
  auto r = pfq_series({a, b}, {c}, Complex(R(1)));
  Complex g = gamma(Complex(c)) * gamma(Complex(c - a - b)) / (gamma(Complex(c - a)) * gamma(Complex(c - b)));
  EXPECT_LT(rel_err(r.value, g), tolerance(10));
}

TEST_F(Hypergeom, SeriesTerminatesOnNegativeInteger) {
  // 2F1(-3, 1; 1; t) = (1 - t)^3
  Complex t(R(7, 10), R(1, 5));
  auto r = pfq_series({R(-3), R(1)}, {R(1)}, t);
  Complex one_minus = Complex(R(1)) - t;
  EXPECT_LT(rel_err(r.value, one_minus * one_minus * one_minus), tolerance(5));
}

TEST_F(Hypergeom, SeriesRejectsOutsideDisc) {
  EXPECT_THROW(pfq_series({R(1, 2), R(1, 2)}, {R(1)}, Complex(R(2))), Error);
  try {
    pfq_series({R(1, 2), R(1, 2)}, {R(1)}, Complex(R(11, 10)));
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::divergence);
  }
  // kappa = 0 on the circle
  EXPECT_THROW(pfq_series({R(1, 2), R(1, 2)}, {R(1)}, Complex(R(1))), Error);
  EXPECT_THROW(pfq_series({R(1)}, {R(-2)}, Complex(R(1, 2))), Error);
}

TEST_F(Hypergeom, CalFNearZeroApproachesDigammaConstant) {
  Real t = pow10(-30);
  auto r = calF_series(half2(), Complex(t));
  Real c = 2 * (digamma(R(1, 2)) + constants().euler);
  EXPECT_LT(abs(r.value - Complex(c) - Complex(boost::multiprecision::log(t))), pow10(-28));
}

TEST_F(Hypergeom, CalFThetaDerivativeIsHypergeometric) {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> ua(0.1, 0.9), ur(0.05, 0.8), uth(-3.1, 3.1);
  const Real h = pow10(-static_cast<int>(working_digits()) / 3);
  for (int trial = 0; trial < 20; ++trial) {
    std::size_t s = 2 + trial % 2;
    std::vector<Real> a;
    for (std::size_t k = 0; k < s; ++k) a.push_back(Real(ua(rng)));
    HGParams p = HGParams::from_reals(a);
    Complex t = polar(Real(ur(rng)), Real(uth(rng)));
    // t F'(t) by a five-point central difference in log t. The stencil is
    // evaluated with P/3 extra digits so that rounding over h stays below 10^-P.
    Complex deriv;
    {
      WorkingPrecision extra(working_digits() + working_digits() / 3 + 10);
      std::vector<Real> ax;
      for (const auto& x : a) ax.push_back(at_working(x));
      HGParams px = HGParams::from_reals(ax);
      Complex tx = at_working(t);
      Real hx = at_working(h);
      auto f = [&](int k) { return calF_series(px, tx * exp(Complex(hx * k))).value; };
      deriv = (f(-2) - f(2) + 8 * (f(1) - f(-1))) / (12 * hx);
    }
    Complex direct = pfq_series(a, std::vector<Real>(s - 1, R(1)), t).value;
    EXPECT_LT(abs(at_working(deriv) - direct), tolerance(8))
        << "trial " << trial;
  }
}

TEST_F(Hypergeom, CalFHalfTableEntry) {
  auto r = calF_series(half2(), Complex(R(1, 2)));
  EXPECT_LT(abs(r.value.re - Real("-3.3173289967")), pow10(-10));
}

TEST_F(Hypergeom, OdeAgreesWithSeriesInsideDisc) {
  PathSpec path(Complex(R(1, 10)));
  path.line_to(Complex(R(1, 2)));
  auto ode = calF_ode(half3(), Complex(R(1, 2)), path);
  auto ser = calF_series(half3(), Complex(R(1, 2)));
  EXPECT_EQ(ode.method, Method::ode);
  EXPECT_LT(abs(ode.value - ser.value), tolerance(10));
  // a complex endpoint reached by a bent path
  Complex z(R(-3, 10), R(6, 10));
  PathSpec bent(Complex(R(1, 5)));
  bent.line_to(Complex(R(1, 5), R(1, 2))).line_to(z);
  EXPECT_LT(abs(calF_ode(half2(), z, bent).value - calF_series(half2(), z).value), tolerance(10));
}

TEST_F(Hypergeom, OdeHomotopicPathsAgree) {
  Complex end(R(3));
  auto canonical = calF_ode(half2(), end);
  PathSpec other(Complex(R(3, 10)));
  other.line_to(Complex(R(1, 2), R(1))).line_to(Complex(R(2), R(1))).line_to(end);
  auto alt = calF_ode(half2(), end, other);
  EXPECT_LT(abs(canonical.value - alt.value), tolerance(10));
}

TEST_F(Hypergeom, OdeTableValues) {
  auto r2 = calF_ode(half2(), Complex(R(2)));
  // the printed entry carries 9 reliable significant digits
  EXPECT_LT(abs(r2.value.re - Real("-1.4866664931")), pow10(-9));
  auto r64 = calF_ode(half3(), Complex(R(64)));
  EXPECT_LT(abs(r64.value.re - Real("-0.821372862231216089683652759186")), pow10(-29));
}

TEST_F(Hypergeom, ConnectionMatchesOde) {
  for (const HGParams* p : {&half2(), &half3()})
    for (long alpha : {2L, 4L, 8L, 64L}) {
      Complex t(R(alpha));
      auto c = calF_connection(*p, t);
      auto o = calF_ode(*p, t);
      EXPECT_LT(abs(c.value - o.value), tolerance(10)) << p->to_string() << " at " << alpha;
    }
  auto f4 = calF_connection(half3(), Complex(R(4)));
  EXPECT_LT(abs(f4.value.re - Real("-2.41291989930352597175242344918")), pow10(-29));
}

TEST_F(Hypergeom, ConnectionGenericParameters) {
  HGParams p = HGParams::parse("1/3,1/4");
  for (const Complex& t : {Complex(R(5, 2)), Complex(R(-3)), Complex(R(1, 2), R(3, 2))}) {
    auto c = calF_connection(p, t);
    auto o = calF_ode(p, t);
    EXPECT_LT(abs(c.value - o.value), tolerance(10)) << to_string(t, 5);
  }
}

TEST_F(Hypergeom, ConnectionClosedFormForTwoHalves) {
  // Re F_{1/2,1/2}(t) = -2 t^{-1/2} 3F2(1/2,1/2,1/2; 1, 3/2; 1/t) for t > 1
  for (long t : {2L, 5L, 64L}) {
    Real x = R(t);
    auto f = pfq_series({R(1, 2), R(1, 2), R(1, 2)}, {R(1), R(3, 2)}, Complex(1 / x));
    Real closed = -2 * f.value.re / boost::multiprecision::sqrt(x);
    EXPECT_LT(abs(calF_connection(half2(), Complex(x)).value.re - closed), tolerance(10));
  }
}

TEST_F(Hypergeom, NegativeArgumentHasImaginaryPartPi) {
  auto o = calF_ode(half2(), Complex(R(-2)));
  auto c = calF_connection(half2(), Complex(R(-2)));
  EXPECT_LT(abs(o.value - c.value), tolerance(10));
  EXPECT_LT(abs(o.value.im - constants().pi), tolerance(10));
}

TEST_F(Hypergeom, DispatchPicksMethod) {
  EXPECT_EQ(calF(half2(), Complex(R(1, 2))).method, Method::series);
  EXPECT_EQ(calF(half2(), Complex(R(2))).method, Method::ode);
}

TEST_F(Hypergeom, PrecisionDoublingStaysWithinEstimate) {
  auto lo = calF_ode(half3(), Complex(R(4)));
  Complex hi_value;
  {
    WorkingPrecision wp(80);
    hi_value = calF_ode(half3(), Complex(Real(4))).value;
  }
  EXPECT_LT(abs(lo.value - hi_value), lo.error_estimate + tolerance(1));
}

TEST_F(Hypergeom, PathClearanceIsEnforced) {
  PathSpec bad(Complex(R(1, 10)));
  bad.line_to(Complex(R(2)));
  EXPECT_THROW(bad.validate(), Error);
  EXPECT_THROW(PathSpec::canonical(Complex(R(101, 100))), Error);
}

TEST_F(Hypergeom, ContractibleLoopIsIdentity) {
  PathSpec loop(Complex(R(1, 4)));
  loop.line_to(Complex(R(1, 4), R(1, 5)))
      .line_to(Complex(R(-1, 5), R(1, 5)))
      .line_to(Complex(R(-1, 5), R(-1, 5)))
      .line_to(Complex(R(1, 4), R(-1, 5)))
      .line_to(Complex(R(1, 4)));
  // the square above encloses 0; this triangle encloses nothing
  PathSpec trivial(Complex(R(1, 4), R(1, 4)));
  trivial.line_to(Complex(R(3, 4), R(1, 4))).line_to(Complex(R(1, 2), R(3, 4))).line_to(Complex(R(1, 4), R(1, 4)));
  Matrix T = hg_transport(half3(), trivial);
  EXPECT_LT(norm(T - Matrix::identity(3)), tolerance(10));
  Matrix T0 = hg_transport(half3(), loop);
  EXPECT_GT(norm(T0 - Matrix::identity(3)), Real(1) / 10);
}

TEST_F(Hypergeom, MonodromyTwoHalves) {
  auto r = monodromy_report(half2(), Complex(R(1, 4)));
  const Real tol = pow10(-static_cast<int>(working_digits()) / 2);
  EXPECT_LT(r.unipotency_residual, tol);
  EXPECT_EQ(r.rank_T0_minus_I, 1u);
  EXPECT_EQ(r.rank_log_T0, 1u);
  EXPECT_LT(r.Tinf_spectrum_distance, tol);
  EXPECT_LT(r.relation_residual, tol);
}

TEST_F(Hypergeom, MonodromyThreeHalvesAndGeneric) {
  const Real tol = pow10(-static_cast<int>(working_digits()) / 2);
  for (const char* p : {"1/2,1/2,1/2", "1/3,1/4,2/5"}) {
    auto r = monodromy_report(HGParams::parse(p), Complex(R(1, 4)));
    EXPECT_LT(r.unipotency_residual, tol) << p;
    EXPECT_EQ(r.rank_T0_minus_I, 2u) << p;
    EXPECT_EQ(r.rank_log_T0, 2u) << p;
    EXPECT_LT(r.Tinf_spectrum_distance, tol) << p;
    EXPECT_LT(r.relation_residual, tol) << p;
    for (const auto* m : {&r.T0, &r.T1, &r.Tinf}) EXPECT_GT(abs(determinant(m->T)), Real(1) / 2);
  }
}

TEST_F(Hypergeom, MonodromyOffAxisBasePoint) {
  auto r = monodromy_report(half3(), Complex(R(2)));
  EXPECT_LT(r.relation_residual, pow10(-20));
  EXPECT_EQ(r.rank_T0_minus_I, 2u);
}
