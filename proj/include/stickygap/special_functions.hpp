#pragma once

// Bessel functions of the first kind J_m for integer order m >= 0 and real
// argument x >= 0.
//
// J_m(x) is the minimal solution of the three-term recurrence
//   J_{n-1}(x) + J_{n+1}(x) = (2n / x) J_n(x),
// so it is evaluated by the ascending series while the terms decrease
// monotonically (x^2/4 <= m+1, or x small), and by Miller's backward
// recurrence normalised with J_0 + 2 sum_k J_{2k} = 1 otherwise.
//
// bessel_j_quadrature() integrates the defining integral
//   J_m(x) = (1/pi) int_0^pi cos(m t - x sin t) dt
// with composite Simpson. It is the independent check on the fast path and is
// never used by it.

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "stickygap/error.hpp"

namespace stickygap {

class BesselOrder {
 public:
  static constexpr int kMax = 200;

  explicit BesselOrder(int m) : m_(m) {
    detail::require(m >= 0 && m <= kMax,
                    "Bessel order must satisfy 0 <= m <= 200, got " + std::to_string(m));
  }

  int value() const noexcept { return m_; }

 private:
  int m_;
};

inline constexpr double kBesselMaxArgument = 1e4;

namespace detail {

inline void check_bessel_argument(double x) {
  require(std::isfinite(x), "Bessel argument must be finite");
  require(x >= 0.0, "Bessel argument must be non-negative");
  require(x <= kBesselMaxArgument, "Bessel argument must not exceed 1e4");
}

inline double bessel_j_series(int m, double x) {
  const double half = 0.5 * x;
  double term = 1.0;
  for (int k = 1; k <= m; ++k) term *= half / k;
  if (term == 0.0) return 0.0;

  const double q = half * half;
  double sum = term;
  for (int k = 1; k < 1000; ++k) {
    term *= -q / (static_cast<double>(k) * static_cast<double>(k + m));
    sum += term;
    if (std::abs(term) <= 1e-17 * std::abs(sum)) break;
  }
  return sum;
}

inline double bessel_j_miller(int m, double x) {
  const int top = std::max(m, static_cast<int>(std::ceil(x)));
  int start = top + 32 + static_cast<int>(std::sqrt(80.0 * top));
  if (start % 2 != 0) ++start;

  constexpr double kBig = 1e250;
  constexpr double kRescale = 1e-250;

  const double two_over_x = 2.0 / x;
  double above = 0.0;   // J_{n+1}, unnormalised
  double here = 1e-30;  // J_n
  double result = 0.0;
  double norm = 2.0 * here;  // start is even

  for (int n = start; n >= 1; --n) {
    const double below = n * two_over_x * here - above;
    above = here;
    here = below;
    const int index = n - 1;
    if (index == m) result = here;
    if (index == 0) {
      norm += here;
    } else if (index % 2 == 0) {
      norm += 2.0 * here;
    }
    if (std::abs(here) > kBig) {
      here *= kRescale;
      above *= kRescale;
      result *= kRescale;
      norm *= kRescale;
    }
  }
  return result / norm;
}

// No order or range checks; m may exceed BesselOrder::kMax by one for the
// derivative identity.
inline double bessel_j_unchecked(int m, double x) {
  if (x == 0.0) return m == 0 ? 1.0 : 0.0;
  if (x <= 4.0 || x * x <= 4.0 * (m + 1)) return bessel_j_series(m, x);
  return bessel_j_miller(m, x);
}

inline double bessel_j_prime_unchecked(int m, double x) {
  if (m == 0) return -bessel_j_unchecked(1, x);
  return 0.5 * (bessel_j_unchecked(m - 1, x) - bessel_j_unchecked(m + 1, x));
}

}  // namespace detail

inline double bessel_j(BesselOrder m, double x) {
  detail::check_bessel_argument(x);
  return detail::bessel_j_unchecked(m.value(), x);
}

/// J_m'(x), from J_0' = -J_1 and J_m' = (J_{m-1} - J_{m+1}) / 2 for m >= 1.
inline double bessel_j_prime(BesselOrder m, double x) {
  detail::check_bessel_argument(x);
  return detail::bessel_j_prime_unchecked(m.value(), x);
}

/// J_m''(x) from the Bessel equation x^2 J'' + x J' + (x^2 - m^2) J = 0.
/// Undefined at x = 0.
inline double bessel_j_second(BesselOrder m, double x) {
  detail::check_bessel_argument(x);
  detail::require(x > 0.0, "bessel_j_second requires x > 0");
  const int n = m.value();
  const double j = detail::bessel_j_unchecked(n, x);
  const double jp = detail::bessel_j_prime_unchecked(n, x);
  const double m2 = static_cast<double>(n) * n;
  return ((m2 - x * x) * j - x * jp) / (x * x);
}

inline double bessel_j_quadrature(BesselOrder m, double x, int n_panels) {
  detail::check_bessel_argument(x);
  detail::require(n_panels >= 64 && n_panels % 2 == 0,
                  "quadrature panel count must be even and at least 64");
  const double order = m.value();
  const double h = std::numbers::pi / n_panels;
  auto integrand = [&](double t) { return std::cos(order * t - x * std::sin(t)); };

  double odd = 0.0;
  double even = 0.0;
  for (int i = 1; i < n_panels; ++i) {
    const double v = integrand(i * h);
    if (i % 2 == 1) {
      odd += v;
    } else {
      even += v;
    }
  }
  const double s = integrand(0.0) + integrand(std::numbers::pi) + 4.0 * odd + 2.0 * even;
  return s * h / 3.0 / std::numbers::pi;
}

}  // namespace stickygap
