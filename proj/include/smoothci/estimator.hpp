#pragma once

#include "smoothci/errors.hpp"
#include "smoothci/kernels.hpp"
#include "smoothci/smoothing.hpp"
#include "smoothci/summation.hpp"

#include <Eigen/Core>

#include <cmath>
#include <cstddef>
#include <limits>
#include <stdexcept>

namespace smoothci {

struct SampleMoments
{
  double yBar;    // (1/n) sum Y_i
  double ySqBar;  // (1/n) sum Y_i^2
};

//! Everything computed from one (Y, X) pair at bandwidth h.
struct EstimateResult
{
  double rHat;      // smoothed mean with known f(0)
  double mHat;      // Nadaraya-Watson form; NaN when all kernel weights vanish
  double fHatZero;  // kernel density estimate of f(0)
  double yBar;
  double ySqBar;
  std::size_t n;
  double h;
};

//! Prefix-sum processes r_n(t), m_n(t) on a grid of t in [0, 1].
struct PartialSumPath
{
  Eigen::VectorXd grid;
  Eigen::VectorXd rPath;
  Eigen::VectorXd mPath;
};

namespace detail {

template <typename DY, typename DX>
void check_pair(const Eigen::DenseBase<DY>& Y, const Eigen::DenseBase<DX>& X)
{
  if (Y.size() == 0)
    throw std::invalid_argument("empty sample");
  if (Y.size() != X.size())
    throw std::invalid_argument("Y and X must have the same length");
}

inline void check_density(double f0)
{
  if (!(f0 > 0.0) || !std::isfinite(f0))
    throw std::invalid_argument("f(0) must be positive and finite");
}

//! Kernel-weighted sums sum Y_i K(X_i/h) and sum K(X_i/h).
struct WeightedSums
{
  double yk;
  double k;
};

template <typename DY, typename DX>
WeightedSums weighted_sums(const Eigen::DenseBase<DY>& Y,
                           const Eigen::DenseBase<DX>& X,
                           const Kernel& kernel,
                           double h)
{
  CompensatedSum yk;
  CompensatedSum mass;
  for (Eigen::Index i = 0; i < Y.size(); ++i) {
    const double w = kernel(static_cast<double>(X.derived().coeff(i)) / h);
    yk += static_cast<double>(Y.derived().coeff(i)) * w;
    mass += w;
  }
  return { yk.value(), mass.value() };
}

}  // namespace detail

template <typename DY>
SampleMoments sample_moments(const Eigen::DenseBase<DY>& Y)
{
  if (Y.size() == 0)
    throw std::invalid_argument("sample_moments: empty sample");
  CompensatedSum s1;
  CompensatedSum s2;
  for (Eigen::Index i = 0; i < Y.size(); ++i) {
    const double y = static_cast<double>(Y.derived().coeff(i));
    s1 += y;
    s2 += y * y;
  }
  const double n = static_cast<double>(Y.size());
  return { s1.value() / n, s2.value() / n };
}

//! r_n = (1 / (n h f0)) sum_i Y_i K(X_i / h), the smoothed mean with the
//! true density of the auxiliary sample at zero.
template <typename DY, typename DX>
double smoothed_mean(const Eigen::DenseBase<DY>& Y,
                     const Eigen::DenseBase<DX>& X,
                     const Kernel& k,
                     double f0,
                     double h)
{
  detail::check_pair(Y, X);
  detail::check_bandwidth(h);
  detail::check_density(f0);
  const auto sums = detail::weighted_sums(Y, X, k, h);
  return sums.yk / (static_cast<double>(Y.size()) * h * f0);
}

//! sum Y_i K(X_i/h) / sum K(X_i/h). Throws StatisticalError when every
//! weight vanishes.
template <typename DY, typename DX>
double nw_mean(const Eigen::DenseBase<DY>& Y,
               const Eigen::DenseBase<DX>& X,
               const Kernel& k,
               double h)
{
  detail::check_pair(Y, X);
  detail::check_bandwidth(h);
  const auto sums = detail::weighted_sums(Y, X, k, h);
  if (!(sums.k > 0.0))
    throw StatisticalError("nw_mean: degenerate weights (no X_i inside the kernel support)");
  return sums.yk / sums.k;
}

template <typename DY, typename DX>
EstimateResult estimate(const Eigen::DenseBase<DY>& Y,
                        const Eigen::DenseBase<DX>& X,
                        const Kernel& k,
                        double f0,
                        double h)
{
  detail::check_pair(Y, X);
  detail::check_bandwidth(h);
  detail::check_density(f0);
  const auto sums = detail::weighted_sums(Y, X, k, h);
  const auto moments = sample_moments(Y);
  const double n = static_cast<double>(Y.size());
  EstimateResult r;
  r.rHat = sums.yk / (n * h * f0);
  r.mHat = sums.k > 0.0 ? sums.yk / sums.k : std::numeric_limits<double>::quiet_NaN();
  r.fHatZero = sums.k / (n * h);
  r.yBar = moments.yBar;
  r.ySqBar = moments.ySqBar;
  r.n = static_cast<std::size_t>(Y.size());
  r.h = h;
  return r;
}

//! Evaluates both processes at each grid point t, summing the first
//! floor(n t) terms. The m-path divides by the kernel mass of the FULL
//! sample. rPath at t = 1 equals smoothed_mean bit for bit.
template <typename DY, typename DX, typename DG>
PartialSumPath partial_sum_paths(const Eigen::DenseBase<DY>& Y,
                                 const Eigen::DenseBase<DX>& X,
                                 const Kernel& k,
                                 double f0,
                                 double h,
                                 const Eigen::DenseBase<DG>& grid)
{
  detail::check_pair(Y, X);
  detail::check_bandwidth(h);
  detail::check_density(f0);
  const Eigen::Index n = Y.size();
  for (Eigen::Index j = 0; j < grid.size(); ++j) {
    const double t = static_cast<double>(grid.derived().coeff(j));
    if (!(t >= 0.0 && t <= 1.0))
      throw std::invalid_argument("partial_sum_paths: grid values must lie in [0, 1]");
    if (j > 0 && t < static_cast<double>(grid.derived().coeff(j - 1)))
      throw std::invalid_argument("partial_sum_paths: grid must be nondecreasing");
  }

  Eigen::VectorXd terms(n);
  CompensatedSum mass;
  for (Eigen::Index i = 0; i < n; ++i) {
    const double w = k(static_cast<double>(X.derived().coeff(i)) / h);
    terms[i] = static_cast<double>(Y.derived().coeff(i)) * w;
    mass += w;
  }
  const double total_mass = mass.value();
  const double nd = static_cast<double>(n);

  PartialSumPath path;
  path.grid = grid.derived().template cast<double>();
  path.rPath.resize(grid.size());
  path.mPath.resize(grid.size());

  CompensatedSum prefix;
  Eigen::Index consumed = 0;
  for (Eigen::Index j = 0; j < grid.size(); ++j) {
    const double t = path.grid[j];
    // tiny slack so that e.g. t = 0.29, n = 100 counts 29 terms
    const auto upto = std::min<Eigen::Index>(
      n, static_cast<Eigen::Index>(std::floor(nd * t + 1e-9)));
    for (; consumed < upto; ++consumed)
      prefix += terms[consumed];
    const double s = prefix.value();
    path.rPath[j] = s / (nd * h * f0);
    path.mPath[j] = total_mass > 0.0 ? s / total_mass
                                     : std::numeric_limits<double>::quiet_NaN();
  }
  return path;
}

}  // namespace smoothci
