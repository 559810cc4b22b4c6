#include <gtest/gtest.h>

#include <cmath>
#include <cstdlib>
#include <random>

#include "stickygap/disk_exact.hpp"

using namespace stickygap;

namespace {

// Independent scipy.special / brentq reference values.
constexpr double kSigmaRef = 3.389957716671889;
constexpr double kFirstExtremumJ1 = 1.841183781340659;

struct GapRef {
  double alpha;
  double lambda;
};

const GapRef kGapRefs[] = {
    {0.25, 1.4154801406559145},
    {0.5, 1.940418513869175},
    {1e-6, 1.0000014777721424},
    {1.0 - 1e-6, 3.389954326714881},
};

}  // namespace

TEST(NeumannGap, FirstExtremumOfJ1) {
  const NeumannGap g = neumann_disk_gap_detail();
  EXPECT_EQ(g.m_star, 1);
  EXPECT_NEAR(g.root.root, kFirstExtremumJ1, 1e-11);
  EXPECT_NEAR(g.sigma, kSigmaRef, 1e-10);
  EXPECT_NEAR(neumann_disk_gap(), g.sigma, 0.0);
  EXPECT_NEAR(g.sigma, 3.39, 0.005);
}

TEST(NeumannGap, DerivativeVanishesPerQuadrature) {
  // Difference quotient of the integral representation at the computed root.
  const double x = neumann_disk_gap_detail().root.root;
  const double h = 1e-4;
  const double d = (bessel_j_quadrature(BesselOrder{1}, x + h, 1024) -
                    bessel_j_quadrature(BesselOrder{1}, x - h, 1024)) /
                   (2.0 * h);
  EXPECT_NEAR(d, 0.0, 1e-8);
}

TEST(SecularFunction, ReducedAndFullFormsAgree) {
  std::mt19937 rng(9);
  std::uniform_real_distribution<double> lam(0.05, 200.0);
  std::uniform_real_distribution<double> al(0.0, 0.99);
  std::uniform_int_distribution<int> ms(0, 12);
  for (int k = 0; k < 500; ++k) {
    const BesselOrder m{ms(rng)};
    const Alpha a{al(rng)};
    const double l = lam(rng);
    const double reduced = disk_secular_fn(m, a, l);
    const double full = disk_secular_fn_full(m, a, l);
    EXPECT_NEAR(reduced, full, 1e-11 * std::max(1.0, std::abs(reduced)));
  }
}

TEST(SecularFunction, RejectsAlphaOne) {
  EXPECT_THROW(disk_secular_fn(BesselOrder{1}, Alpha{1.0}, 2.0), DomainError);
  EXPECT_THROW(disk_secular_fn(BesselOrder{1}, Alpha{0.5}, 0.0), DomainError);
  EXPECT_THROW(disk_exact_gap(Alpha{1.0}), DomainError);
}

TEST(DiskExactGap, FrozenValues) {
  for (const auto& ref : kGapRefs) {
    const DiskGap g = disk_exact_gap(Alpha{ref.alpha});
    EXPECT_NEAR(g.lambda_star, ref.lambda, 1e-10) << "alpha=" << ref.alpha;
    EXPECT_EQ(g.m_star, 1);
    EXPECT_TRUE(g.root.converged);
  }
}

TEST(DiskExactGap, AlphaZeroGivesOne) {
  // With alpha = 0 the equation reduces to (m^2 - lambda) J_m = 0.
  EXPECT_NEAR(disk_exact_gap(Alpha{0.0}).lambda_star, 1.0, 1e-10);
}

TEST(DiskExactGap, ApproachesNeumannAsAlphaToOne) {
  const double l = disk_exact_gap(Alpha{1.0 - 1e-9}).lambda_star;
  EXPECT_NEAR(l, kSigmaRef, 1e-6);
}

TEST(DiskExactGap, IncreasesWithAlpha) {
  double prev = 0.0;
  for (double a = 0.05; a < 1.0; a += 0.05) {
    const double l = disk_exact_gap(Alpha{a}).lambda_star;
    EXPECT_GT(l, prev) << "alpha=" << a;
    prev = l;
  }
}

TEST(DiskExactGap, StrictScanAgrees) {
  DiskEigenConfig strict;
  strict.strict_scan = true;
  strict.m_max = 30;
  for (double a : {0.1, 0.5, 0.9}) {
    EXPECT_DOUBLE_EQ(disk_exact_gap(Alpha{a}, strict).lambda_star,
                     disk_exact_gap(Alpha{a}).lambda_star);
  }
}

TEST(DiskExactGap, RootIsSmallestAmongModes) {
  // Brute force: every mode's first root on a finer grid is no smaller.
  const Alpha a{0.4};
  const DiskGap best = disk_exact_gap(a);
  for (int m = 0; m <= 8; ++m) {
    RootSearchConfig rc;
    rc.x_min = 1e-6;
    rc.x_max = 40.0;
    rc.step = 5e-4;
    const auto roots =
        all_roots_in([&](double l) { return disk_secular_fn(BesselOrder{m}, a, l); }, rc);
    if (!roots.empty()) {
      // Compare brackets: both roots are only known to bisection tolerance.
      EXPECT_GE(roots.front().bracket.second, best.root.bracket.first) << "m=" << m;
    }
  }
}

TEST(DiskExactGap, ConfigValidation) {
  DiskEigenConfig cfg;
  cfg.m_max = 1;
  EXPECT_THROW(disk_exact_gap(Alpha{0.5}, cfg), DomainError);
  cfg = {};
  cfg.lambda_max = 3.0;
  EXPECT_THROW(disk_exact_gap(Alpha{0.5}, cfg), DomainError);
}

TEST(DiskExactGap, EnvOverride) {
  ::setenv("STICKYGAP_M_MAX", "7", 1);
  EXPECT_EQ(apply_env_overrides({}).m_max, 7);
  ::setenv("STICKYGAP_M_MAX", "abc", 1);
  EXPECT_THROW(apply_env_overrides({}), DomainError);
  ::setenv("STICKYGAP_M_MAX", "500", 1);
  EXPECT_THROW(apply_env_overrides({}), DomainError);
  ::unsetenv("STICKYGAP_M_MAX");
  EXPECT_EQ(apply_env_overrides({}).m_max, 50);
}

TEST(ClosedForm, ExactCurveStaysBelowBound) {
  const BoundCurve c = exact_curve(99);
  ASSERT_TRUE(c.exact.has_value());
  EXPECT_NO_THROW(c.validate());
  for (std::size_t i = 0; i < c.alphas.size(); ++i) {
    EXPECT_GE(c.upper_bounds[i] - (*c.exact)[i], -1e-9) << "alpha=" << c.alphas[i];
  }
}

TEST(ClosedForm, Endpoints) {
  const double s = neumann_disk_gap();
  EXPECT_NEAR(disk_closed_form_bound(Alpha{1e-9}, s), 1.0, 1e-8);
  EXPECT_NEAR(disk_closed_form_bound(Alpha{1.0 - 1e-9}, s), 1.0 / s, 1e-8);
  EXPECT_THROW(disk_closed_form_bound(Alpha{0.0}, s), DomainError);
}
