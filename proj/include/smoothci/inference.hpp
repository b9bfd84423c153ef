#pragma once

#include "smoothci/estimator.hpp"
#include "smoothci/kernels.hpp"
#include "smoothci/smoothing.hpp"

#include <Eigen/Core>

#include <cstddef>

namespace smoothci {

struct ConfidenceInterval
{
  double lower;
  double upper;
  double level;
  double halfWidth;
  double center;
  bool degenerate = false;  // zero second moment: interval collapsed to a point

  bool contains(double value) const noexcept { return lower <= value && value <= upper; }
};

//! Standard normal CDF via erfc.
double normal_cdf(double x) noexcept;

//! Inverse of the standard normal CDF, absolute error below 1e-8 (rational
//! approximation followed by one Halley step). Throws std::invalid_argument
//! unless 0 < p < 1.
double normal_quantile(double p);

//! Interval centred at rHat with half width
//!   z_{(1+level)/2} * sqrt(ySqBar * B / (n h f0)).
//! ySqBar == 0 gives a degenerate point interval (flagged, not an error).
ConfidenceInterval confidence_interval(double rHat,
                                       double ySqBar,
                                       std::size_t n,
                                       double h,
                                       const Kernel& k,
                                       double f0,
                                       double level);

struct PracticalInterval
{
  EstimateResult estimate;
  ConfidenceInterval interval;
};

//! Gaussian kernel with standard normal smoothing, composed from estimate()
//! and confidence_interval(); half width z sqrt(sum Y_i^2 / (sqrt(2) n^2 h)).
template <typename DY, typename DX>
PracticalInterval practical_interval(const Eigen::DenseBase<DY>& Y,
                                     const Eigen::DenseBase<DX>& X,
                                     double h,
                                     double level)
{
  const Kernel k = Kernel::gaussian();
  const double f0 = density_at_zero(SmoothingDistribution::std_normal());
  PracticalInterval out;
  out.estimate = estimate(Y, X, k, f0, h);
  out.interval = confidence_interval(out.estimate.rHat, out.estimate.ySqBar, out.estimate.n,
                                     h, k, f0, level);
  return out;
}

}  // namespace smoothci
