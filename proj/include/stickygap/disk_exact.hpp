#pragma once

// Exact spectral gap of Brownian motion on the unit disk with sticky
// boundary diffusion (beta = 1).
//
// Separating variables, f = J_m(sqrt(lambda) r) cos(m theta) is an eigenfunction
// with eigenvalue lambda iff
//   sqrt(lambda) J_m''(sqrt(lambda)) + (1 + alpha)/(1 - alpha) J_m'(sqrt(lambda)) = 0.
// Eliminating J'' with the Bessel equation gives the form used on the hot path
//   (m^2 - lambda)/sqrt(lambda) J_m(sqrt(lambda)) + 2 alpha/(1 - alpha) J_m'(sqrt(lambda)) = 0.
// The optimal constant is C_alpha = 1 / min_{m,l} lambda_{m,l}.

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <limits>
#include <string>
#include <utility>
#include <vector>

#include "stickygap/error.hpp"
#include "stickygap/interpolation.hpp"
#include "stickygap/root_finding.hpp"
#include "stickygap/special_functions.hpp"

namespace stickygap {

struct DiskEigenConfig {
  int m_max = 50;
  double lambda_max = 400.0;
  RootSearchConfig root_cfg{};
  // Scan every mode up to m_max instead of stopping once m^2 exceeds the best
  // eigenvalue found so far.
  bool strict_scan = false;

  void validate() const {
    detail::require(m_max >= 2 && m_max <= BesselOrder::kMax, "m_max must lie in [2, 200]");
    detail::require(std::isfinite(lambda_max) && lambda_max > 4.0, "lambda_max must exceed 4");
    detail::require(root_cfg.x_min > 0.0 && root_cfg.step > 0.0 && root_cfg.tol > 0.0 &&
                        root_cfg.max_iter > 0,
                    "invalid root search configuration");
  }
};

/// Reduced secular function (no J''). Admits alpha = 0.
inline double disk_secular_fn(BesselOrder m, Alpha alpha, double lambda) {
  detail::require(alpha.value() < 1.0, "the disk secular equation needs alpha < 1");
  detail::require(std::isfinite(lambda) && lambda > 0.0, "lambda must be > 0");
  const double x = std::sqrt(lambda);
  const double m2 = static_cast<double>(m.value()) * m.value();
  const double coupling = 2.0 * alpha.value() / (1.0 - alpha.value());
  return (m2 - lambda) / x * bessel_j(m, x) + coupling * bessel_j_prime(m, x);
}

/// Secular function as it comes out of the boundary condition, with J''.
inline double disk_secular_fn_full(BesselOrder m, Alpha alpha, double lambda) {
  detail::require(alpha.value() < 1.0, "the disk secular equation needs alpha < 1");
  detail::require(std::isfinite(lambda) && lambda > 0.0, "lambda must be > 0");
  const double x = std::sqrt(lambda);
  const double ratio = (1.0 + alpha.value()) / (1.0 - alpha.value());
  return x * bessel_j_second(m, x) + ratio * bessel_j_prime(m, x);
}

struct DiskGap {
  double lambda_star;
  int m_star;
  RootResult root;  // in lambda
};

namespace detail {

// Scans modes 0..m_max for the smallest root of mode_fn(m, .) on
// [lower, upper]. Each mode's search is capped at the best root so far, which
// never changes the answer. Ties keep the smaller m.
template <typename ModeFn>
bool min_over_modes(ModeFn&& mode_fn, double lower, double upper, const DiskEigenConfig& cfg,
                    DiskGap& best) {
  bool found = false;
  best.lambda_star = std::numeric_limits<double>::infinity();
  for (int m = 0; m <= cfg.m_max; ++m) {
    const double m2 = static_cast<double>(m) * m;
    if (found && !cfg.strict_scan && m2 > best.lambda_star) break;

    RootSearchConfig rc = cfg.root_cfg;
    rc.x_min = lower;
    rc.x_max = found ? std::min(upper, best.lambda_star) : upper;
    if (rc.x_max - rc.x_min < 10.0 * rc.step) rc.x_max = rc.x_min + 10.0 * rc.step;

    const BesselOrder order{m};
    try {
      const RootResult r = smallest_positive_root([&](double v) { return mode_fn(order, v); }, rc);
      if (r.root < best.lambda_star) {
        best = DiskGap{r.root, m, r};
        found = true;
      }
    } catch (const NoRootFound&) {
    }
  }
  return found;
}

}  // namespace detail

/// Reads STICKYGAP_M_MAX if set; otherwise keeps cfg.m_max.
inline DiskEigenConfig apply_env_overrides(DiskEigenConfig cfg) {
  if (const char* env = std::getenv("STICKYGAP_M_MAX")) {
    char* end = nullptr;
    const long v = std::strtol(env, &end, 10);
    detail::require(end != env && *end == '\0' && v >= 2 && v <= BesselOrder::kMax,
                    "STICKYGAP_M_MAX must be an integer in [2, 200]");
    cfg.m_max = static_cast<int>(v);
  }
  return cfg;
}

/// lambda_star = min over (m, l) of the secular roots, searched on
/// [root_cfg.x_min^2, lambda_max].
inline DiskGap disk_exact_gap(Alpha alpha, const DiskEigenConfig& cfg = {}) {
  cfg.validate();
  detail::require(alpha.value() < 1.0, "the exact disk gap needs alpha < 1");
  DiskGap best{};
  const double lower = cfg.root_cfg.x_min * cfg.root_cfg.x_min;
  const bool ok = detail::min_over_modes(
      [&](BesselOrder m, double lambda) { return disk_secular_fn(m, alpha, lambda); }, lower,
      cfg.lambda_max, cfg, best);
  if (!ok) {
    throw NoRootFound("no disk eigenvalue below lambda_max = " + std::to_string(cfg.lambda_max));
  }
  return best;
}

struct NeumannGap {
  double sigma;     // smallest positive Neumann eigenvalue
  int m_star;       // mode attaining it
  RootResult root;  // first root of J_m' in x = sqrt(sigma)
};

/// Smallest gamma > 0 with J_m'(sqrt(gamma)) = 0 for some m. Roots are found in
/// x = sqrt(gamma) and squared.
inline NeumannGap neumann_disk_gap_detail(const DiskEigenConfig& cfg = {}) {
  cfg.validate();
  // j'_{m,1} >= m, so modes with m^2 above the best sigma cannot win.
  DiskGap best{};
  bool found = false;
  best.lambda_star = std::numeric_limits<double>::infinity();
  const double x_upper = std::sqrt(cfg.lambda_max);
  for (int m = 0; m <= cfg.m_max; ++m) {
    const double m2 = static_cast<double>(m) * m;
    if (found && !cfg.strict_scan && m2 > best.lambda_star) break;
    RootSearchConfig rc = cfg.root_cfg;
    rc.x_max = found ? std::min(x_upper, best.root.root) : x_upper;
    if (rc.x_max - rc.x_min < 10.0 * rc.step) rc.x_max = rc.x_min + 10.0 * rc.step;
    const BesselOrder order{m};
    try {
      const RootResult r =
          smallest_positive_root([&](double x) { return bessel_j_prime(order, x); }, rc);
      if (r.root * r.root < best.lambda_star) {
        best = DiskGap{r.root * r.root, m, r};
        found = true;
      }
    } catch (const NoRootFound&) {
    }
  }
  if (!found) throw NoRootFound("no Neumann eigenvalue below lambda_max");
  return {best.lambda_star, best.m_star, best.root};
}

/// sigma_Omega for the unit disk, computed once with default settings.
inline double neumann_disk_gap() {
  static const double sigma = neumann_disk_gap_detail().sigma;
  return sigma;
}

/// Full-disk interpolation bound at d = 2, beta = 1, in closed form:
///   (8 (1-a) s + 16 a + 3 a (1-a) s) / (8 (1+a) s),  s = sigma_Omega.
inline double disk_closed_form_bound(Alpha alpha, double sigma) {
  detail::require(alpha.interior(), "alpha must lie in (0, 1)");
  detail::require(std::isfinite(sigma) && sigma > 0.0, "sigma must be > 0");
  const double a = alpha.value();
  return (8.0 * (1.0 - a) * sigma + 16.0 * a + 3.0 * a * (1.0 - a) * sigma) /
         (8.0 * (1.0 + a) * sigma);
}

/// C_alpha = 1 / lambda_star next to the closed-form bound on a uniform grid.
inline BoundCurve exact_curve(int n_samples, const DiskEigenConfig& cfg = {}) {
  const double sigma = neumann_disk_gap();
  BoundCurve curve =
      sample_curve(n_samples, [&](Alpha a) { return disk_closed_form_bound(a, sigma); });
  std::vector<double> exact;
  exact.reserve(curve.alphas.size());
  for (double a : curve.alphas) exact.push_back(1.0 / disk_exact_gap(Alpha{a}, cfg).lambda_star);
  curve.exact = std::move(exact);
  return curve;
}

}  // namespace stickygap
