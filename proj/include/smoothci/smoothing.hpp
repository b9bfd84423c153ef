#pragma once

#include "smoothci/kernels.hpp"
#include "smoothci/random.hpp"
#include "smoothci/summation.hpp"

#include <Eigen/Core>

#include <cmath>
#include <cstddef>
#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace smoothci {

enum class SmoothingFamily
{
  StdNormal,
  Uniform,
  Custom
};

//! Law of the auxiliary i.i.d. sequence X_i drawn by the statistician.
//! Needs a bounded density, continuous and nonzero at the origin.
class SmoothingDistribution
{
public:
  using Sampler = std::function<double(Rng&)>;

  static SmoothingDistribution std_normal();
  //! Uniform on (a, b); requires a < 0 < b.
  static SmoothingDistribution uniform(double a, double b);
  static SmoothingDistribution custom(Sampler sampler,
                                      std::optional<double> density_at_zero,
                                      std::optional<double> second_derivative_at_zero,
                                      std::string name = "custom");

  double sample(Rng& rng) const;

  SmoothingFamily family() const noexcept { return family_; }
  const std::string& name() const noexcept { return name_; }
  double lower() const noexcept { return lower_; }
  double upper() const noexcept { return upper_; }
  const std::optional<double>& supplied_density_at_zero() const noexcept { return f0_; }
  const std::optional<double>& supplied_second_derivative() const noexcept { return f2_; }

private:
  SmoothingDistribution() = default;

  SmoothingFamily family_ = SmoothingFamily::StdNormal;
  std::string name_;
  double lower_ = 0.0;
  double upper_ = 0.0;
  std::optional<double> f0_;
  std::optional<double> f2_;
  Sampler sampler_;
};

//! n i.i.d. draws; throws std::invalid_argument for n == 0.
Eigen::VectorXd sample_smoothing(const SmoothingDistribution& d, std::size_t n, Rng& rng);

//! f(0). Throws std::invalid_argument for a custom law without a value.
double density_at_zero(const SmoothingDistribution& d);

//! f''(0), needed only by the plug-in bandwidth. Throws
//! std::invalid_argument for the uniform law (flat density, the plug-in
//! formula degenerates) and for a custom law without a value.
double second_derivative_at_zero(const SmoothingDistribution& d);

//! "normal", "uniform" (= uniform on (-0.5, 0.5)) or "uniform:a,b".
SmoothingDistribution parse_smoothing(std::string_view spec);

namespace detail {

inline void check_bandwidth(double h)
{
  if (!(h > 0.0) || !std::isfinite(h))
    throw std::invalid_argument("bandwidth h must be positive and finite");
}

}  // namespace detail

//! Kernel density estimate at the origin, (1/(n h)) sum_i K(X_i / h).
template <typename Derived>
double estimate_density_at_zero(const Eigen::DenseBase<Derived>& X, const Kernel& k, double h)
{
  if (X.size() == 0)
    throw std::invalid_argument("estimate_density_at_zero: empty sample");
  detail::check_bandwidth(h);
  CompensatedSum mass;
  for (Eigen::Index i = 0; i < X.size(); ++i)
    mass += k(static_cast<double>(X.derived().coeff(i)) / h);
  return mass.value() / (static_cast<double>(X.size()) * h);
}

}  // namespace smoothci
