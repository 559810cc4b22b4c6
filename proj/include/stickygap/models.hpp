#pragma once

// Worked geometries. Each one supplies the five BoundConstants for the
// generic interpolation bound, plus the bound written out in closed form;
// the two must agree.

#include <algorithm>
#include <cmath>
#include <numbers>
#include <optional>
#include <string>

#include "stickygap/disk_exact.hpp"
#include "stickygap/error.hpp"
#include "stickygap/interpolation.hpp"
#include "stickygap/root_finding.hpp"

namespace stickygap {

// ---------------------------------------------------------------------------
// Unit ball in R^d, whole boundary sticky.

struct BallSpec {
  int d = 2;
  double beta = 1.0;   // tangential diffusivity on the sphere
  double gamma = 1.0;  // sticky-reflection rate

  void validate() const {
    detail::require(d >= 2, "ball dimension d must be >= 2");
    detail::require(std::isfinite(beta) && beta > 0.0, "ball beta must be > 0");
    detail::require(std::isfinite(gamma) && gamma > 0.0, "ball gamma must be > 0");
  }

  /// alpha = gamma / (d + gamma).
  Alpha alpha() const { return Alpha{gamma / (d + gamma)}; }
};

namespace detail {

inline double resolve_ball_c_omega(int d, std::optional<double> c_omega) {
  if (c_omega) {
    require(std::isfinite(*c_omega) && *c_omega > 0.0, "C_Omega must be > 0");
    return *c_omega;
  }
  if (d == 2) return 1.0 / neumann_disk_gap();
  throw MissingConstant("C_Omega must be supplied for balls of dimension d >= 3");
}

}  // namespace detail

/// C_Sigma = 1/(beta (d-1)), K_{Sigma,Omega} = 1/d, K_1 = (d+1)/(4 d^2), K_2 = 0.
/// C_Omega defaults to 1/sigma_Omega in d = 2 and is required otherwise.
inline BoundConstants ball_constants(const BallSpec& spec,
                                     std::optional<double> c_omega = std::nullopt) {
  spec.validate();
  const double d = spec.d;
  return BoundConstants{detail::resolve_ball_c_omega(spec.d, c_omega),
                        1.0 / (spec.beta * (d - 1.0)), 1.0 / d, (d + 1.0) / (4.0 * d * d), 0.0};
}

/// Ball bound written out for arbitrary alpha:
///   max(C_Omega + (1-a)(d+1)/(4d^2),
///       (4(1-a)d + 4 a d^2 C_Omega + a(1-a)(d+1)) / (4d(a d + (1-a) beta (d-1)))).
inline double ball_bound_formula(int d, double beta, double c_omega, Alpha alpha) {
  detail::require(d >= 2 && beta > 0.0 && c_omega > 0.0, "invalid ball parameters");
  detail::require(alpha.interior(), "alpha must lie in (0, 1)");
  const double a = alpha.value();
  const double dd = d;
  const double first = c_omega + (1.0 - a) * (dd + 1.0) / (4.0 * dd * dd);
  const double second = (4.0 * (1.0 - a) * dd + 4.0 * a * dd * dd * c_omega +
                         a * (1.0 - a) * (dd + 1.0)) /
                        (4.0 * dd * (a * dd + (1.0 - a) * beta * (dd - 1.0)));
  return std::max(first, second);
}

inline double ball_bound(const BallSpec& spec, std::optional<double> c_omega = std::nullopt) {
  spec.validate();
  return ball_bound_formula(spec.d, spec.beta, detail::resolve_ball_c_omega(spec.d, c_omega),
                            spec.alpha());
}

// ---------------------------------------------------------------------------
// Manifold with Ric >= k_R and second fundamental form >= k_2.

struct ManifoldSpec {
  int d = 2;
  double k_r = 1.0;
  double k_2 = 1.0;
  double c_omega = 1.0;
  double c_sigma = 1.0;
  double vol_ratio = 1.0;  // |Omega| / |boundary|

  void validate() const {
    detail::require(d >= 2, "manifold dimension d must be >= 2");
    auto positive = [](double v) { return std::isfinite(v) && v > 0.0; };
    detail::require(positive(k_r), "manifold k_R must be > 0");
    detail::require(positive(k_2), "manifold k_2 must be > 0");
    detail::require(positive(c_omega), "manifold C_Omega must be > 0");
    detail::require(positive(c_sigma), "manifold C_Sigma must be > 0");
    detail::require(positive(vol_ratio), "manifold vol_ratio must be > 0");
  }
};

/// K_{Sigma,Omega} = 2/k_2 (Steklov bound), K_1 = (d-1)/(d k_R), K_2 = 0.
inline BoundConstants manifold_constants(const ManifoldSpec& spec) {
  spec.validate();
  const double d = spec.d;
  return BoundConstants{spec.c_omega, spec.c_sigma, 2.0 / spec.k_2, (d - 1.0) / (d * spec.k_r),
                        0.0};
}

/// Interpolation route, written out.
inline double manifold_m1(const ManifoldSpec& spec, Alpha alpha) {
  spec.validate();
  detail::require(alpha.interior(), "alpha must lie in (0, 1)");
  const double a = alpha.value();
  const double d = spec.d;
  const double kr = spec.k_r;
  const double k2 = spec.k_2;
  const double first = spec.c_omega + (1.0 - a) * (d - 1.0) / (d * kr);
  const double second =
      spec.c_sigma / (d * kr) *
      (2.0 * (1.0 - a) * d * kr + a * d * k2 * kr * spec.c_omega + a * (1.0 - a) * (d - 1.0) * k2) /
      (2.0 * (1.0 - a) + a * k2 * spec.c_sigma);
  return std::max(first, second);
}

/// Direct Reilly route:
///   max((3d-1)(1-a)/(d a k_2) |Omega|/|boundary|, (d-1)/(d k_R)).
inline double manifold_m2(const ManifoldSpec& spec, Alpha alpha) {
  spec.validate();
  detail::require(alpha.interior(), "alpha must lie in (0, 1)");
  const double a = alpha.value();
  const double d = spec.d;
  const double first = (3.0 * d - 1.0) * (1.0 - a) / (d * a * spec.k_2) * spec.vol_ratio;
  const double second = (d - 1.0) / (d * spec.k_r);
  return std::max(first, second);
}

inline double manifold_bound(const ManifoldSpec& spec, Alpha alpha) {
  return std::min(manifold_m1(spec, alpha), manifold_m2(spec, alpha));
}

// ---------------------------------------------------------------------------
// Unit disk, sticky only on the arc |theta| <= delta pi.

struct PartialDiskSpec {
  double delta = 0.5;

  void validate() const {
    detail::require(std::isfinite(delta) && delta > 0.0 && delta < 1.0,
                    "partial-disk delta must lie in (0, 1)");
  }
};

/// K_1(delta) = (sqrt(1 - delta) pi + sqrt(3/delta) / 4)^2.
inline double partial_disk_k1(double delta) {
  PartialDiskSpec{delta}.validate();
  const double s = std::sqrt(1.0 - delta) * std::numbers::pi + 0.25 * std::sqrt(3.0 / delta);
  return s * s;
}

inline BoundConstants partial_disk_constants(const PartialDiskSpec& spec) {
  spec.validate();
  const double delta = spec.delta;
  return BoundConstants{1.0 / neumann_disk_gap(), 4.0 * delta * delta, 1.0 / (2.0 * delta),
                        partial_disk_k1(delta), 0.0};
}

inline double partial_disk_bound(const PartialDiskSpec& spec, Alpha alpha) {
  spec.validate();
  detail::require(alpha.interior(), "alpha must lie in (0, 1)");
  const double a = alpha.value();
  const double dl = spec.delta;
  const double dl2 = dl * dl;
  const double dl3 = dl2 * dl;
  const double c_omega = 1.0 / neumann_disk_gap();
  const double k1 = partial_disk_k1(dl);
  const double first = c_omega + (1.0 - a) * k1;
  const double second =
      (4.0 * (1.0 - a) * dl2 + 8.0 * a * dl3 * c_omega + 8.0 * a * (1.0 - a) * dl3 * k1) /
      ((1.0 - a) + 8.0 * a * dl3);
  return std::max(first, second);
}

/// C_Sigma(delta) > C_Omega + K_1(delta): sufficient for continuity at alpha = 0.
inline bool partial_disk_continuous_at_zero(double delta) {
  return 4.0 * delta * delta > 1.0 / neumann_disk_gap() + partial_disk_k1(delta);
}

/// Smallest delta with 4 delta^2 = 1/sigma_Omega + K_1(delta).
inline RootResult partial_disk_continuity_threshold() {
  const double c_omega = 1.0 / neumann_disk_gap();
  RootSearchConfig cfg;
  cfg.x_min = 1e-3;
  cfg.x_max = 1.0 - 1e-9;
  cfg.step = 1e-4;
  return smallest_positive_root(
      [&](double delta) { return 4.0 * delta * delta - c_omega - partial_disk_k1(delta); }, cfg);
}

// ---------------------------------------------------------------------------
// Unit disk with a needle of length L attached at (1, 0); Sigma is the circle
// plus the needle.

struct NeedleSpec {
  double length = 2.0 * std::numbers::pi;
  double beta = 1.0;

  void validate() const {
    detail::require(std::isfinite(length) && length > 0.0, "needle length L must be > 0");
    detail::require(std::isfinite(beta) && beta > 0.0, "needle beta must be > 0");
  }
};

/// 2 cos(s L)(1 - cos(2 pi s)) + sin(s L) sin(2 pi s), s = sqrt(gamma).
inline double needle_secular_fn(double gamma, double length) {
  detail::require(std::isfinite(gamma) && gamma > 0.0, "gamma must be > 0");
  detail::require(std::isfinite(length) && length > 0.0, "needle length L must be > 0");
  const double s = std::sqrt(gamma);
  const double two_pi_s = 2.0 * std::numbers::pi * s;
  return 2.0 * std::cos(s * length) * (1.0 - std::cos(two_pi_s)) +
         std::sin(s * length) * std::sin(two_pi_s);
}

/// gamma = 1 always solves the needle equation, so the search stops just past it.
inline RootSearchConfig needle_root_config() {
  RootSearchConfig cfg;
  cfg.x_min = 1e-6;
  cfg.x_max = 1.0 + 1e-6;
  cfg.step = 1e-3;
  cfg.tol = 1e-13;
  return cfg;
}

inline RootResult needle_gamma_root(const NeedleSpec& spec,
                                    const RootSearchConfig& cfg = needle_root_config()) {
  spec.validate();
  RootResult r = smallest_positive_root(
      [&](double g) { return needle_secular_fn(g, spec.length); }, cfg);
  if (r.root > 1.0 + 1e-9) {
    throw InvariantViolation("needle gamma_L = " + std::to_string(r.root) + " exceeds 1");
  }
  return r;
}

/// Smallest positive root gamma_L of the needle equation; independent of beta.
inline double needle_gamma(const NeedleSpec& spec,
                           const RootSearchConfig& cfg = needle_root_config()) {
  return needle_gamma_root(spec, cfg).root;
}

inline double needle_k2(const NeedleSpec& spec) {
  const double L = spec.length;
  const double pi = std::numbers::pi;
  return L * L * (pi + L) / (spec.beta * (2.0 * pi + L));
}

/// C_Sigma = 1/(beta gamma_L), K_1 = 3/8, K_2 = L^2(pi+L)/(beta(2pi+L)),
/// K_{Sigma,Omega} = +inf.
inline BoundConstants needle_constants(const NeedleSpec& spec) {
  spec.validate();
  return BoundConstants{1.0 / neumann_disk_gap(), 1.0 / (spec.beta * needle_gamma(spec)),
                        kInfinity, 3.0 / 8.0, needle_k2(spec)};
}

inline double needle_bound(const NeedleSpec& spec, Alpha alpha) {
  spec.validate();
  detail::require(alpha.interior(), "alpha must lie in (0, 1)");
  const double a = alpha.value();
  const double bulk = 1.0 / neumann_disk_gap() + 3.0 / 8.0 * (1.0 - a);
  const double boundary = 1.0 / (spec.beta * needle_gamma(spec)) + a * needle_k2(spec);
  return std::max(bulk, boundary);
}

enum class NeedleRegime { BulkDominates, BoundaryDominates, Mixed };

inline const char* to_string(NeedleRegime r) {
  switch (r) {
    case NeedleRegime::BulkDominates:
      return "bulk-dominates";
    case NeedleRegime::BoundaryDominates:
      return "boundary-dominates";
    case NeedleRegime::Mixed:
      break;
  }
  return "mixed";
}

struct NeedleThresholds {
  double bulk_beta;      // beta >= this: bulk term wins for every alpha
  double boundary_beta;  // beta <= this: boundary term wins for every alpha
};

inline NeedleThresholds needle_thresholds(double length) {
  const NeedleSpec unit{length, 1.0};
  const double sigma = neumann_disk_gap();
  const double g = needle_gamma(unit);
  const double pi = std::numbers::pi;
  return {sigma * (1.0 / g + length * length * (pi + length) / (2.0 * pi + length)),
          (1.0 / g) / (1.0 / sigma + 3.0 / 8.0)};
}

inline NeedleRegime needle_regime(const NeedleSpec& spec) {
  spec.validate();
  const NeedleThresholds t = needle_thresholds(spec.length);
  if (spec.beta >= t.bulk_beta) return NeedleRegime::BulkDominates;
  if (spec.beta <= t.boundary_beta) return NeedleRegime::BoundaryDominates;
  return NeedleRegime::Mixed;
}

}  // namespace stickygap
