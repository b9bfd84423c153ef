#include "smoothci/inference.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace smoothci {

double normal_cdf(double x) noexcept
{
  return 0.5 * std::erfc(-x / std::numbers::sqrt2);
}

double normal_quantile(double p)
{
  if (!(p > 0.0 && p < 1.0))
    throw std::invalid_argument("normal_quantile: p must lie in (0, 1)");

  // Acklam's rational approximation (relative error ~1e-9)
  static constexpr double a[] = { -3.969683028665376e+01, 2.209460984245205e+02,
                                  -2.759285104469687e+02, 1.383577518672690e+02,
                                  -3.066479806614716e+01, 2.506628277459239e+00 };
  static constexpr double b[] = { -5.447609879822406e+01, 1.615858368580409e+02,
                                  -1.556989798598866e+02, 6.680131188771972e+01,
                                  -1.328068155288572e+01 };
  static constexpr double c[] = { -7.784894002430293e-03, -3.223964580411365e-01,
                                  -2.400758277161838e+00, -2.549732539343734e+00,
                                  4.374664141464968e+00,  2.938163982698783e+00 };
  static constexpr double d[] = { 7.784695709041462e-03, 3.224671290700398e-01,
                                  2.445134137142996e+00, 3.754408661907416e+00 };
  constexpr double p_low = 0.02425;

  double x;
  if (p < p_low) {
    const double q = std::sqrt(-2.0 * std::log(p));
    x = (((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
        ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
  } else if (p <= 1.0 - p_low) {
    const double q = p - 0.5;
    const double r = q * q;
    x = (((((a[0] * r + a[1]) * r + a[2]) * r + a[3]) * r + a[4]) * r + a[5]) * q /
        (((((b[0] * r + b[1]) * r + b[2]) * r + b[3]) * r + b[4]) * r + 1.0);
  } else {
    const double q = std::sqrt(-2.0 * std::log1p(-p));
    x = -(((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
        ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
  }

  // Halley refinement; the residual uses the tail that is not 1-cancelled.
  const double e = (p < 0.5) ? normal_cdf(x) - p
                             : (1.0 - p) - 0.5 * std::erfc(x / std::numbers::sqrt2);
  const double u = e * std::sqrt(2.0 * std::numbers::pi) * std::exp(0.5 * x * x);
  return x - u / (1.0 + 0.5 * x * u);
}

ConfidenceInterval confidence_interval(double rHat,
                                       double ySqBar,
                                       std::size_t n,
                                       double h,
                                       const Kernel& k,
                                       double f0,
                                       double level)
{
  if (!(level > 0.0 && level < 1.0))
    throw std::invalid_argument("confidence level must lie in (0, 1)");
  if (n == 0)
    throw std::invalid_argument("sample size n must be at least 1");
  detail::check_bandwidth(h);
  detail::check_density(f0);
  if (!(ySqBar >= 0.0))
    throw std::invalid_argument("ySqBar must be nonnegative");

  ConfidenceInterval ci;
  ci.level = level;
  ci.center = rHat;
  if (ySqBar == 0.0) {
    ci.halfWidth = 0.0;
    ci.degenerate = true;
  } else {
    const double z = normal_quantile(0.5 + 0.5 * level);
    const double b = kernel_constants(k).B;
    ci.halfWidth = z * std::sqrt(ySqBar * b / (static_cast<double>(n) * h * f0));
  }
  ci.lower = rHat - ci.halfWidth;
  ci.upper = rHat + ci.halfWidth;
  return ci;
}

}  // namespace smoothci
