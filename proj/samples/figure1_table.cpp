// Prints the exact sticky constant of the unit disk next to the interpolation
// bound for a handful of alphas.

#include <cstdio>

#include "stickygap/disk_exact.hpp"
#include "stickygap/models.hpp"

int main() {
  using namespace stickygap;
  const double sigma = neumann_disk_gap();
  std::printf("sigma_Omega = %.10f\n\n", sigma);
  std::printf("%6s  %12s  %12s  %8s\n", "alpha", "exact", "bound", "m_star");
  for (double a : {0.05, 0.1, 0.25, 1.0 / 3.0, 0.5, 0.75, 0.9, 0.95}) {
    const DiskGap gap = disk_exact_gap(Alpha{a});
    const double bound = ball_bound(BallSpec{2, 1.0, 2.0 * a / (1.0 - a)});
    std::printf("%6.3f  %12.8f  %12.8f  %8d\n", a, 1.0 / gap.lambda_star, bound, gap.m_star);
  }
  return 0;
}
