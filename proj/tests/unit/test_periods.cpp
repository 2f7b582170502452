#include <gtest/gtest.h>

#include <random>

#include "hgreg/periods/periods.hpp"

using namespace hgreg;

namespace {

class Periods : public ::testing::Test {
 protected:
  WorkingPrecision wp_{40};
};

Real R(long p, long q = 1) { return Real(p) / Real(q); }

Real rel(const Complex& x, const Complex& y) { return abs(x - y) / abs(y); }

// value of the trapezoid rule with exactly 2^k nodes per axis
Complex trapezoid_at(const SchemeDescriptor& s, const PeriodForm& f, unsigned k) {
  TorusCycle c = TorusCycle::standard(s);
  c.initial_log2 = k;
  QuadratureOptions o;
  o.max_log2 = k;
  o.target = Real(1e100);
  return torus_integral(s, f, c, o).value;
}

}  // namespace

TEST_F(Periods, ContourLowestOrderIsMinusInverse) {
  for (const auto& c2 : {Complex(R(2)), Complex(R(-3, 2), R(1, 2)), Complex(R(7))}) {
    Complex c1(R(1, 3), R(2));
    EXPECT_LT(abs(contour_pole_integral(c1, c2, 0).value + inverse(c2)), tolerance(10));
  }
}

TEST_F(Periods, ContourSpecificValues) {
  EXPECT_LT(abs(contour_pole_integral(Complex(1), Complex(2), 1).value - Complex(R(-1, 4))), tolerance(10));
  EXPECT_LT(abs(contour_pole_integral(Complex(1), Complex(3), 2).value - Complex(R(-5, 27))), tolerance(10));
}

TEST_F(Periods, ContourMatchesClosedFormAtRandomExponents) {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> u(-4, 4);
  for (int trial = 0; trial < 10; ++trial) {
    Complex c1(Real(u(rng)), Real(u(rng)) / 4);
    Complex c2(Real(u(rng)), Real(u(rng)) / 4);
    if (abs(c2) < Real(1) / 2) c2 += Complex(R(1));
    for (unsigned n = 0; n <= 6; ++n) {
      auto q = contour_pole_integral(c1, c2, n);
      Complex cf = contour_pole_closed_form(c1, c2, n);
      EXPECT_LT(abs(q.value - cf), tolerance(10) * std::max(Real(1), abs(cf))) << trial << " n=" << n;
    }
  }
}

TEST_F(Periods, TorusTwoByTwoMatchesGaussSeries) {
  SchemeDescriptor s({2, 2}, Complex(R(1, 10)));
  PeriodForm f{{1, 1}, 0};
  auto q = torus_period(s, f, TorusCycle::standard(s));
  Complex expect = Complex(Real(0), 2 * constants().pi) / 4 *
                   pfq_series({R(1, 2), R(1, 2)}, {R(1)}, Complex(R(1, 10))).value;
  EXPECT_LT(rel(q.value, expect), tolerance(10));
  // the orientation calibration: same sign, not merely same modulus
  EXPECT_GT(q.value.im, 0);
}

TEST_F(Periods, TorusDimensionTwo) {
  SchemeDescriptor s({2, 3, 4}, Complex(R(1, 5)));
  PeriodForm f{{1, 2, 3}, 0};
  auto q = torus_period(s, f, TorusCycle::standard(s));
  Complex pre = pow(Complex(Real(0), 2 * constants().pi), 2) / 24;
  Complex expect = pre * pfq_series({R(1, 2), R(1, 3), R(1, 4)}, {R(1), R(1)}, Complex(R(1, 5))).value;
  EXPECT_LT(rel(q.value, expect), tolerance(10));
  EXPECT_LT(rel(q.value, period_closed_form(s, f)), tolerance(10));
}

TEST_F(Periods, SmallFiberApproachesLeadingCoefficient) {
  SchemeDescriptor s({3, 4}, Complex(pow10(-12)));
  PeriodForm f{{2, 1}, 0};
  auto q = torus_period(s, f, TorusCycle::standard(s));
  Complex ratio = q.value / Complex(Real(0), 2 * constants().pi);
  EXPECT_LT(abs(ratio - Complex(R(1, 12))), pow10(-11));
}

TEST_F(Periods, TrapezoidConvergesGeometrically) {
  SchemeDescriptor s({2, 2}, Complex(R(3, 10)));
  PeriodForm f{{1, 1}, 0};
  Complex exact = period_closed_form(s, f);
  Real e8 = rel(trapezoid_at(s, f, 3), exact);
  Real e16 = rel(trapezoid_at(s, f, 4), exact);
  Real e32 = rel(trapezoid_at(s, f, 5), exact);
  using boost::multiprecision::log;
  EXPECT_GE(log(e16) / log(e8), Real(18) / 10);
  EXPECT_GE(log(e32) / log(e16), Real(18) / 10);
}

TEST_F(Periods, RadiusIndependence) {
  SchemeDescriptor s({3, 2, 2}, Complex(R(-1, 5), R(1, 10)));
  PeriodForm f{{2, 1, 1}, 0};
  TorusCycle base = TorusCycle::standard(s);
  Complex v = torus_period(s, f, base).value;
  for (Real scale : {R(9, 10), R(11, 10)}) {
    TorusCycle c = base;
    c.rho = base.rho * scale;
    EXPECT_LT(abs(torus_period(s, f, c).value - v), tolerance(10) * abs(v));
  }
}

TEST_F(Periods, PermutingTrailingFactorsKeepsModulus) {
  Complex t(R(1, 7));
  SchemeDescriptor a({2, 3, 5}, t), b({2, 5, 3}, t);
  auto va = torus_period(a, PeriodForm{{1, 1, 4}, 0}, TorusCycle::standard(a)).value;
  auto vb = torus_period(b, PeriodForm{{1, 4, 1}, 0}, TorusCycle::standard(b)).value;
  EXPECT_LT(abs(abs(va) - abs(vb)), tolerance(10) * abs(va));
}

TEST_F(Periods, ExtendedPrecisionPathAgrees) {
  SchemeDescriptor s({2, 3, 4}, Complex(R(1, 5)));
  PeriodForm f{{1, 2, 3}, 0};
  QuadratureOptions fast;
  fast.target = pow10(-14);
  auto q = torus_period(s, f, TorusCycle::standard(s), fast);
  EXPECT_LT(rel(q.value, period_closed_form(s, f)), pow10(-14));
}

TEST_F(Periods, TorusRejectsLargeFiber) {
  SchemeDescriptor s({2, 2}, Complex(R(1, 2)));
  EXPECT_THROW(torus_period(s, PeriodForm{{1, 1}, 0}, TorusCycle::standard(s)), Error);
  EXPECT_THROW(PeriodForm({{0, 1}, 0}).validate(s), Error);
}

TEST_F(Periods, LiftedFirstOrderBothCandidates) {
  SchemeDescriptor s({2, 2}, Complex(R(1, 10)));
  auto c = lifted_period_check(s, PeriodForm{{1, 1}, 1}, TorusCycle::standard(s));
  EXPECT_EQ(c.matches, "both");
  EXPECT_LT(c.rising_residual, tolerance(10));
}

TEST_F(Periods, LiftedSecondOrderIsRisingFactorial) {
  SchemeDescriptor s22({2, 2}, Complex(R(1, 10)));
  auto c = lifted_period_check(s22, PeriodForm{{1, 1}, 2}, TorusCycle::standard(s22));
  EXPECT_EQ(c.matches, "rising");
  EXPECT_LT(c.rising_residual, tolerance(10));
  EXPECT_GT(c.falling_residual, Real(1) / 10);
  SchemeDescriptor s33({3, 3}, Complex(R(1, 10)));
  auto c3 = lifted_period_check(s33, PeriodForm{{1, 2}, 2}, TorusCycle::standard(s33));
  EXPECT_EQ(c3.matches, "rising");
}

TEST_F(Periods, OmegaRecurrence) {
  const Real bound = pow10(6 - static_cast<int>(working_digits()) / 2);
  std::vector<Complex> grid{Complex(R(1, 10)), Complex(R(1, 5)), Complex(R(-1, 5), R(1, 10))};
  SchemeDescriptor s22({2, 2}, Complex(R(1, 10)));
  EXPECT_LT(omega_recurrence_check(s22, PeriodForm{{1, 1}, 0}, grid), bound);
  EXPECT_LT(omega_recurrence_check(s22, PeriodForm{{1, 1}, 1}, grid), bound);
  SchemeDescriptor s222({2, 2, 2}, Complex(R(1, 10)));
  EXPECT_LT(omega_recurrence_check(s222, PeriodForm{{1, 1, 1}, 0}, {Complex(R(1, 10))}), bound);
}
