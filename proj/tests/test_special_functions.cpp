#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "stickygap/special_functions.hpp"

using namespace stickygap;

namespace {

struct Frozen {
  int m;
  double x;
  double j, jp, jpp;
};

// Reference values from a 30-digit mpmath evaluation.
const Frozen kFrozen[] = {
    {0, 1.0, 0.76519768655796655, -0.44005058574493352, -0.32514710081303304},
    {1, 2.5, 0.49709410246427404, -0.24722141745390761, -0.31867047908842715},
    {5, 10.0, -0.23406152818679364, -0.10257192200861171, 0.1858033383409564},
    {20, 5.0, 2.7703300521289417e-11, 1.0746938209840448e-10, 3.9405563139966036e-10},
    {0, 30.0, -0.086367983581040211, 0.11875106261662294, 0.08240961482715278},
    {3, 100.0, 0.076284201720331943, -0.023817283396115324, -0.075977373104822491},
    {50, 60.0, -0.13798273148535212, -0.0011110876724694528, 0.042179908303954305},
    {2, 0.5, 0.030604023458682641, 0.11985236384014332, 0.21935562419995298},
};

double rel_or_abs(double got, double want) {
  return std::abs(got - want) / std::max(1.0, std::abs(want));
}

}  // namespace

TEST(Bessel, FrozenValues) {
  for (const auto& f : kFrozen) {
    const BesselOrder m{f.m};
    EXPECT_LT(rel_or_abs(bessel_j(m, f.x), f.j), 1e-13) << "m=" << f.m << " x=" << f.x;
    EXPECT_LT(rel_or_abs(bessel_j_prime(m, f.x), f.jp), 1e-13) << "m=" << f.m << " x=" << f.x;
    EXPECT_LT(rel_or_abs(bessel_j_second(m, f.x), f.jpp), 1e-12) << "m=" << f.m << " x=" << f.x;
  }
}

TEST(Bessel, TinyValuesKeepRelativeAccuracy) {
  const double v = bessel_j(BesselOrder{20}, 5.0);
  EXPECT_NEAR(v / 2.7703300521289417e-11, 1.0, 1e-12);
  const double w = bessel_j(BesselOrder{10}, 1e-3);
  EXPECT_NEAR(w / 2.6911443943049993e-40, 1.0, 1e-12);
}

TEST(Bessel, ValuesAtZero) {
  EXPECT_EQ(bessel_j(BesselOrder{0}, 0.0), 1.0);
  for (int m = 1; m <= 10; ++m) EXPECT_EQ(bessel_j(BesselOrder{m}, 0.0), 0.0);
  EXPECT_DOUBLE_EQ(bessel_j_prime(BesselOrder{1}, 0.0), 0.5);
  EXPECT_EQ(bessel_j_prime(BesselOrder{0}, 0.0), 0.0);
}

TEST(Bessel, RejectsBadInput) {
  EXPECT_THROW(BesselOrder{-1}, DomainError);
  EXPECT_THROW(BesselOrder{201}, DomainError);
  EXPECT_THROW(bessel_j(BesselOrder{0}, std::nan("")), DomainError);
  EXPECT_THROW(bessel_j(BesselOrder{0}, -1.0), DomainError);
  EXPECT_THROW(bessel_j(BesselOrder{0}, 2e4), DomainError);
  EXPECT_THROW(bessel_j_second(BesselOrder{1}, 0.0), DomainError);
  EXPECT_THROW(bessel_j_quadrature(BesselOrder{1}, 1.0, 63), DomainError);
  EXPECT_THROW(bessel_j_quadrature(BesselOrder{1}, 1.0, 32), DomainError);
}

TEST(Bessel, MatchesQuadratureOracle) {
  for (int m = 0; m <= 10; ++m) {
    for (int i = 0; i <= 300; i += 7) {
      const double x = 0.1 * i;
      EXPECT_NEAR(bessel_j(BesselOrder{m}, x), bessel_j_quadrature(BesselOrder{m}, x, 1024),
                  1e-10)
          << "m=" << m << " x=" << x;
    }
  }
}

TEST(Bessel, SatisfiesBesselEquation) {
  // x^2 J'' + x J' + (x^2 - m^2) J = 0, with J'' from a central difference.
  const double h = 1e-4;
  for (int m : {0, 1, 4, 9}) {
    for (double x : {0.7, 2.0, 6.5, 13.0}) {
      const BesselOrder o{m};
      const double jpp =
          (bessel_j(o, x + h) - 2.0 * bessel_j(o, x) + bessel_j(o, x - h)) / (h * h);
      const double residual =
          x * x * jpp + x * bessel_j_prime(o, x) + (x * x - m * m) * bessel_j(o, x);
      EXPECT_NEAR(residual, 0.0, 1e-5 * std::max(1.0, x * x)) << "m=" << m << " x=" << x;
    }
  }
}

TEST(Bessel, DerivativeMatchesFiniteDifference) {
  std::mt19937 rng(7);
  std::uniform_real_distribution<double> xs(0.2, 40.0);
  std::uniform_int_distribution<int> ms(0, 30);
  for (int k = 0; k < 200; ++k) {
    const BesselOrder m{ms(rng)};
    const double x = xs(rng);
    const double h = 1e-5;
    const double fd = (bessel_j(m, x + h) - bessel_j(m, x - h)) / (2.0 * h);
    EXPECT_NEAR(bessel_j_prime(m, x), fd, 1e-8);
  }
}

TEST(Bessel, NeumannAdditionTheorem) {
  // J_0(x)^2 + 2 sum_{k>=1} J_k(x)^2 = 1.
  for (double x : {0.5, 3.0, 17.0, 45.0}) {
    double s = bessel_j(BesselOrder{0}, x) * bessel_j(BesselOrder{0}, x);
    for (int k = 1; k <= 120; ++k) {
      const double v = bessel_j(BesselOrder{k}, x);
      s += 2.0 * v * v;
    }
    EXPECT_NEAR(s, 1.0, 1e-13) << "x=" << x;
  }
}

TEST(Bessel, SeriesAndRecurrenceAgreeAtSwitch) {
  // x = 4 is where the evaluator changes method for small orders.
  for (int m = 0; m <= 3; ++m) {
    const BesselOrder o{m};
    EXPECT_NEAR(bessel_j(o, 4.0 - 1e-12), bessel_j(o, 4.0 + 1e-12), 1e-12);
  }
}
