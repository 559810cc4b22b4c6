#pragma once

// Interpolation bound for the Poincare constant C_alpha of the mixed measure
//   lambda_alpha = alpha * lambda_Omega + (1 - alpha) * lambda_Sigma.
//
// Given the bulk constant C_Omega, the boundary constant C_Sigma and the
// coupling constants
//   Var_Sigma f                  <= K_{Sigma,Omega} E_Omega(f)
//   (mean_Omega f - mean_Sigma f)^2 <= K_1 E_Omega(f) + K_2 E_Sigma(f),
// C_alpha is bounded by the max of three terms (see interpolation_bound).
// The same value is reachable by minimising over t in [0, 1] the max of two
// affine functions; both routes are kept and must agree.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <numbers>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "stickygap/error.hpp"

namespace stickygap {

inline constexpr double kInfinity = std::numeric_limits<double>::infinity();

struct BoundConstants {
  double c_omega = 0.0;
  double c_sigma = 0.0;
  double k_sigma_omega = kInfinity;  // +inf means "no such inequality"
  double k1 = 0.0;
  double k2 = 0.0;

  void validate() const {
    detail::require(std::isfinite(c_omega) && c_omega > 0.0, "C_Omega must be finite and > 0");
    detail::require(std::isfinite(c_sigma) && c_sigma > 0.0, "C_Sigma must be finite and > 0");
    detail::require(!std::isnan(k_sigma_omega) && k_sigma_omega > 0.0,
                    "K_{Sigma,Omega} must be > 0 (may be +inf)");
    detail::require(std::isfinite(k1) && k1 >= 0.0, "K_1 must be finite and >= 0");
    detail::require(std::isfinite(k2) && k2 >= 0.0, "K_2 must be finite and >= 0");
  }
};

/// Weight of the bulk measure. Closed [0, 1]; the bound itself needs (0, 1).
class Alpha {
 public:
  explicit Alpha(double value) : value_(value) {
    detail::require(std::isfinite(value) && value >= 0.0 && value <= 1.0,
                    "alpha must lie in [0, 1]");
  }

  double value() const noexcept { return value_; }
  bool interior() const noexcept { return value_ > 0.0 && value_ < 1.0; }

 private:
  double value_;
};

struct BoundCurve {
  std::vector<double> alphas;
  std::vector<double> upper_bounds;
  std::optional<std::vector<double>> exact;

  void validate() const {
    detail::require(alphas.size() == upper_bounds.size(), "curve columns differ in length");
    for (std::size_t i = 0; i < alphas.size(); ++i) {
      detail::require(alphas[i] >= 0.0 && alphas[i] <= 1.0, "curve alpha outside [0, 1]");
      detail::require(i == 0 || alphas[i] > alphas[i - 1], "curve alphas must increase strictly");
      detail::require(std::isfinite(upper_bounds[i]) && upper_bounds[i] > 0.0,
                      "curve bounds must be finite and positive");
    }
    if (exact) {
      detail::require(exact->size() == alphas.size(), "exact column differs in length");
      for (std::size_t i = 0; i < alphas.size(); ++i) {
        detail::require((*exact)[i] <= upper_bounds[i] + 1e-9, "exact value exceeds the bound");
      }
    }
  }
};

enum class Continuity { Continuous, Discontinuous, Unknown };

inline const char* to_string(Continuity c) {
  switch (c) {
    case Continuity::Continuous:
      return "continuous";
    case Continuity::Discontinuous:
      return "discontinuous";
    case Continuity::Unknown:
      break;
  }
  return "unknown";
}

/// inf over t in [0, 1] of max(a + b t, c - d t), in closed form.
///
/// b = +inf is accepted and gives the limit (a if c < a, otherwise c).
/// Case boundaries c - a = 0 and c - a = b + d fall in the middle case.
inline double inf_max_affine(double a, double b, double c, double d) {
  detail::require(a > 0.0 && b > 0.0 && c > 0.0 && d > 0.0 && std::isfinite(a) &&
                      std::isfinite(c) && std::isfinite(d) && !std::isnan(b),
                  "inf_max_affine needs positive a, b, c, d (b may be +inf)");
  const double gap = c - a;
  if (gap < 0.0) return a;
  if (std::isinf(b)) return c;
  if (gap > b + d) return c - d;
  return (b * c + a * d) / (b + d);
}

namespace detail {

inline void require_open_alpha(Alpha alpha) {
  require(alpha.interior(), "the interpolation bound needs alpha in the open interval (0, 1)");
}

}  // namespace detail

inline double interpolation_bound(const BoundConstants& k, Alpha alpha) {
  k.validate();
  detail::require_open_alpha(alpha);
  const double a = alpha.value();
  const double bulk = k.c_omega + (1.0 - a) * k.k1;
  const double tangential = a * k.k2;
  double mixed = 0.0;
  if (std::isinf(k.k_sigma_omega)) {
    mixed = k.c_sigma + a * k.k2;
  } else {
    const double kso = k.k_sigma_omega;
    const double num = (1.0 - a) * kso * k.c_sigma + a * k.c_omega * k.c_sigma +
                       a * (1.0 - a) * (kso * k.k2 + k.c_sigma * k.k1);
    const double den = (1.0 - a) * kso + a * k.c_sigma;
    mixed = num / den;
  }
  return std::max({bulk, tangential, mixed});
}

/// Same bound, evaluated as inf_t max(a + b t, c - d t) with
/// a = C_Omega + (1 - alpha) K_1, b = (1 - alpha) / alpha * K_{Sigma,Omega},
/// c = C_Sigma + alpha K_2 and d = C_Sigma.
inline double interpolation_bound_via_infmax(const BoundConstants& k, Alpha alpha) {
  k.validate();
  detail::require_open_alpha(alpha);
  const double al = alpha.value();
  const double a = k.c_omega + (1.0 - al) * k.k1;
  const double b = std::isinf(k.k_sigma_omega) ? kInfinity : (1.0 - al) / al * k.k_sigma_omega;
  const double c = k.c_sigma + al * k.k2;
  const double d = k.c_sigma;
  return inf_max_affine(a, b, c, d);
}

/// Continuity of alpha -> C_alpha at alpha = 0.
///
/// Discontinuous when C_Sigma < c_tilde_zero (the inverse gap with killing on
/// Sigma), continuous when C_Sigma >= C_Omega + K_1. There is no verdict in
/// between.
inline Continuity continuity_at_zero(const BoundConstants& k,
                                     std::optional<double> c_tilde_zero = std::nullopt) {
  if (c_tilde_zero && k.c_sigma < *c_tilde_zero) return Continuity::Discontinuous;
  if (k.c_sigma >= k.c_omega + k.k1) return Continuity::Continuous;
  return Continuity::Unknown;
}

inline Continuity continuity_at_one(const BoundConstants& k) {
  return k.c_omega >= k.k2 ? Continuity::Continuous : Continuity::Unknown;
}

struct RectangleLimit {
  double limit_value;
  bool discontinuous_at_zero;
};

/// Rectangle (0, b) x (0, 1) with Sigma the bottom edge: lim_{alpha->0}
/// C_alpha = max(C_Sigma, 4/pi^2) where C_Sigma = b^2/pi^2.
inline RectangleLimit rectangle_limit(double b) {
  detail::require(std::isfinite(b) && b > 0.0, "rectangle width b must be > 0");
  const double pi2 = std::numbers::pi * std::numbers::pi;
  return {std::max(b * b / pi2, 4.0 / pi2), b < 2.0};
}

/// alpha_i = (i + 1/2) / n, i = 0..n-1.
inline std::vector<double> alpha_grid(int n_samples) {
  detail::require(n_samples >= 2, "a curve needs at least 2 samples");
  std::vector<double> grid(static_cast<std::size_t>(n_samples));
  for (int i = 0; i < n_samples; ++i) grid[static_cast<std::size_t>(i)] = (i + 0.5) / n_samples;
  return grid;
}

template <typename BoundFn>
BoundCurve sample_curve(int n_samples, BoundFn&& bound) {
  BoundCurve curve;
  curve.alphas = alpha_grid(n_samples);
  curve.upper_bounds.reserve(curve.alphas.size());
  for (double a : curve.alphas) curve.upper_bounds.push_back(bound(Alpha{a}));
  return curve;
}

inline BoundCurve bound_curve(const BoundConstants& k, int n_samples) {
  return sample_curve(n_samples, [&](Alpha a) { return interpolation_bound(k, a); });
}

// Discrete measures, used to check the variance split behind the bound.

inline double weighted_mean(std::span<const double> weights, std::span<const double> f) {
  detail::require(weights.size() == f.size(), "weights and values differ in length");
  double s = 0.0;
  for (std::size_t i = 0; i < f.size(); ++i) s += weights[i] * f[i];
  return s;
}

inline double weighted_variance(std::span<const double> weights, std::span<const double> f) {
  const double mean = weighted_mean(weights, f);
  double s = 0.0;
  for (std::size_t i = 0; i < f.size(); ++i) s += weights[i] * (f[i] - mean) * (f[i] - mean);
  return s;
}

struct VarianceSplit {
  double bulk;      // alpha Var_mu f
  double boundary;  // (1 - alpha) Var_nu f
  double cross;     // alpha (1 - alpha) (mean_mu f - mean_nu f)^2

  double total() const { return bulk + boundary + cross; }
};

/// Var_{alpha mu + (1 - alpha) nu} f split into its three parts.
inline VarianceSplit mixture_variance_split(double alpha, std::span<const double> mu,
                                            std::span<const double> nu,
                                            std::span<const double> f) {
  detail::require(alpha >= 0.0 && alpha <= 1.0, "alpha must lie in [0, 1]");
  const double gap = weighted_mean(mu, f) - weighted_mean(nu, f);
  return {alpha * weighted_variance(mu, f), (1.0 - alpha) * weighted_variance(nu, f),
          alpha * (1.0 - alpha) * gap * gap};
}

}  // namespace stickygap
