#pragma once

// Grid bracketing plus bisection for real roots of scalar functions.
//
// f is sampled on x_min, x_min + step, ..., x_max (last point clamped to
// x_max). A root is reported for
//   * every sign change between consecutive samples, refined by bisection;
//   * every sample that is exactly zero and has non-zero neighbours;
//   * every interior sample with 0 < |f| < kTangentialThreshold that is a
//     strict local minimum of |f| without a sign change. These are candidate
//     double roots and carry converged = false.
// Runs of exact zeros (e.g. underflow plateaus) are not roots.

#include <algorithm>
#include <cmath>
#include <concepts>
#include <cstddef>
#include <functional>
#include <limits>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "stickygap/error.hpp"

namespace stickygap {

inline constexpr double kTangentialThreshold = 1e-10;

struct RootSearchConfig {
  double x_min = 1e-4;
  double x_max = 10.0;
  double step = 1e-3;
  double tol = 1e-12;
  int max_iter = 200;

  void validate() const {
    detail::require(std::isfinite(x_min) && std::isfinite(x_max) && x_min > 0.0 && x_min < x_max,
                    "root search range must satisfy 0 < x_min < x_max");
    detail::require(step > 0.0 && step <= (x_max - x_min) / 10.0,
                    "root search step must satisfy 0 < step <= (x_max - x_min) / 10");
    detail::require(tol > 0.0, "root search tol must be positive");
    detail::require(max_iter > 0, "root search max_iter must be positive");
  }
};

struct RootResult {
  double root = 0.0;
  std::pair<double, double> bracket{0.0, 0.0};
  double residual = 0.0;
  bool converged = false;
};

namespace detail {

template <typename F>
double eval_finite(F& f, double x) {
  const double v = static_cast<double>(std::invoke(f, x));
  if (!std::isfinite(v)) {
    std::ostringstream msg;
    msg << "function evaluated to a non-finite value at x = " << x;
    throw NonFinite(msg.str());
  }
  return v;
}

template <typename F>
RootResult bisect(F& f, double lo, double hi, double f_lo, const RootSearchConfig& cfg) {
  int iter = 0;
  bool at_resolution = false;
  while (0.5 * (hi - lo) > cfg.tol && iter < cfg.max_iter) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) {
      at_resolution = true;
      break;
    }
    const double f_mid = eval_finite(f, mid);
    if (f_mid == 0.0) {
      return RootResult{mid, {mid, mid}, 0.0, true};
    }
    if ((f_mid < 0.0) == (f_lo < 0.0)) {
      lo = mid;
      f_lo = f_mid;
    } else {
      hi = mid;
    }
    ++iter;
  }
  const double root = 0.5 * (lo + hi);
  const bool converged = at_resolution || 0.5 * (hi - lo) <= cfg.tol;
  return RootResult{root, {lo, hi}, std::abs(eval_finite(f, root)), converged};
}

inline std::vector<double> make_grid(const RootSearchConfig& cfg) {
  const auto intervals = static_cast<std::size_t>(std::ceil((cfg.x_max - cfg.x_min) / cfg.step));
  std::vector<double> xs;
  xs.reserve(intervals + 1);
  for (std::size_t i = 0; i < intervals; ++i) {
    xs.push_back(cfg.x_min + static_cast<double>(i) * cfg.step);
  }
  xs.push_back(cfg.x_max);
  return xs;
}

// Walks the grid left to right and hands each root to `emit` in ascending
// order. Stops early when `emit` returns false.
template <typename F, typename Emit>
void scan_roots(F& f, const RootSearchConfig& cfg, Emit&& emit) {
  cfg.validate();
  const std::vector<double> xs = make_grid(cfg);
  const std::size_t n = xs.size();

  // Values are computed lazily so an early stop does not pay for the full grid.
  std::vector<double> fx;
  fx.reserve(n);
  auto value = [&](std::size_t i) {
    while (fx.size() <= i) fx.push_back(eval_finite(f, xs[fx.size()]));
    return fx[i];
  };

  for (std::size_t i = 0; i < n; ++i) {
    const double here = value(i);
    const bool has_left = i > 0;
    const bool has_right = i + 1 < n;
    const double left = has_left ? value(i - 1) : 0.0;
    const double right = has_right ? value(i + 1) : 0.0;

    if (here == 0.0) {
      const bool left_ok = !has_left || left != 0.0;
      const bool right_ok = !has_right || right != 0.0;
      if (left_ok && right_ok && (has_left || has_right)) {
        if (!emit(RootResult{xs[i], {xs[i], xs[i]}, 0.0, true})) return;
      }
      continue;
    }

    if (has_left && has_right && right != 0.0 && left != 0.0 &&
        std::abs(here) < kTangentialThreshold && std::abs(here) < std::abs(left) &&
        std::abs(here) < std::abs(right) && (left > 0.0) == (here > 0.0) &&
        (right > 0.0) == (here > 0.0)) {
      if (!emit(RootResult{xs[i], {xs[i - 1], xs[i + 1]}, std::abs(here), false})) return;
    }

    if (has_right && right != 0.0 && (here < 0.0) != (right < 0.0)) {
      if (!emit(bisect(f, xs[i], xs[i + 1], here, cfg))) return;
    }
  }
}

inline std::string describe_scan(const RootSearchConfig& cfg) {
  std::ostringstream msg;
  msg << "no root found scanning [" << cfg.x_min << ", " << cfg.x_max << "] with step "
      << cfg.step;
  return msg.str();
}

}  // namespace detail

/// Leftmost root of f on [cfg.x_min, cfg.x_max].
///
/// Throws NoRootFound when the scan finds neither a sign change nor a
/// tangential candidate, and NonFinite if f returns inf or NaN anywhere it is
/// sampled.
template <typename F>
  requires std::invocable<F&, double>
RootResult smallest_positive_root(F&& f, const RootSearchConfig& cfg = {}) {
  RootResult found;
  bool any = false;
  detail::scan_roots(f, cfg, [&](const RootResult& r) {
    found = r;
    any = true;
    return false;
  });
  if (!any) throw NoRootFound(detail::describe_scan(cfg));
  return found;
}

/// Every root on [cfg.x_min, cfg.x_max], sorted ascending. Roots closer than
/// step / 2 to their predecessor are merged into it.
template <typename F>
  requires std::invocable<F&, double>
std::vector<RootResult> all_roots_in(F&& f, const RootSearchConfig& cfg = {}) {
  std::vector<RootResult> roots;
  detail::scan_roots(f, cfg, [&](const RootResult& r) {
    if (roots.empty() || r.root - roots.back().root >= 0.5 * cfg.step) {
      roots.push_back(r);
    } else if (r.converged && !roots.back().converged) {
      roots.back() = r;
    }
    return true;
  });
  return roots;
}

}  // namespace stickygap
