#include "smoothci/kernels.hpp"

#include "smoothci/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>

namespace smoothci {

namespace {

constexpr double inv_sqrt_2pi = 0.3989422804014327;
constexpr double tail_cut = 10.0;

}  // namespace

Kernel::Kernel(KernelFamily family,
               std::string name,
               double sup_bound,
               std::optional<Interval> support,
               std::function<double(double)> fn)
  : family_(family)
  , name_(std::move(name))
  , sup_bound_(sup_bound)
  , support_(support)
  , fn_(std::move(fn))
{
}

Kernel Kernel::gaussian()
{
  return Kernel(KernelFamily::Gaussian, "gaussian", inv_sqrt_2pi, std::nullopt);
}

Kernel Kernel::epanechnikov()
{
  return Kernel(KernelFamily::Epanechnikov, "epanechnikov", 0.75, Interval{ -1.0, 1.0 });
}

Kernel Kernel::uniform()
{
  return Kernel(KernelFamily::Uniform, "uniform", 0.5, Interval{ -1.0, 1.0 });
}

Kernel Kernel::custom(std::function<double(double)> fn,
                      double sup_bound,
                      std::optional<Interval> support,
                      std::string name)
{
  if (!fn)
    throw std::invalid_argument("custom kernel: empty function");
  if (!(sup_bound > 0.0) || !std::isfinite(sup_bound))
    throw std::invalid_argument("custom kernel: sup bound must be positive and finite");
  if (support && !(support->lower < support->upper))
    throw std::invalid_argument("custom kernel: support must be a nonempty interval");
  return Kernel(KernelFamily::Custom, std::move(name), sup_bound, support, std::move(fn));
}

double Kernel::operator()(double u) const
{
  switch (family_) {
    case KernelFamily::Gaussian:
      return inv_sqrt_2pi * std::exp(-0.5 * u * u);
    case KernelFamily::Epanechnikov:
      return std::abs(u) <= 1.0 ? 0.75 * (1.0 - u * u) : 0.0;
    case KernelFamily::Uniform:
      return std::abs(u) <= 1.0 ? 0.5 : 0.0;
    case KernelFamily::Custom:
      if (support_ && (u < support_->lower || u > support_->upper))
        return 0.0;
      return fn_(u);
  }
  return 0.0;
}

Interval Kernel::integration_range() const noexcept
{
  return support_.value_or(Interval{ -tail_cut, tail_cut });
}

KernelConstants kernel_constants_by_quadrature(const Kernel& k)
{
  const Interval range = k.integration_range();
  if (!k.support()) {
    for (double edge : { range.lower, range.upper }) {
      const double kv = std::abs(k(edge));
      if (edge * edge * kv > 1e-12) {
        std::ostringstream msg;
        msg << "kernel " << k.name() << ": tail not negligible at u=" << edge
            << " (u^2 K(u) = " << edge * edge * kv << ")";
        throw QuadratureError(msg.str());
      }
    }
  }
  const double a = integrate([&](double u) { return u * u * k(u); }, range.lower, range.upper);
  const double b = integrate([&](double u) {
    const double v = k(u);
    return v * v;
  }, range.lower, range.upper);
  return { a, b };
}

KernelConstants kernel_constants(const Kernel& k)
{
  switch (k.family()) {
    case KernelFamily::Gaussian:
      return { 1.0, 0.5 / std::sqrt(std::numbers::pi) };
    case KernelFamily::Epanechnikov:
      return { 0.2, 0.6 };
    case KernelFamily::Uniform:
      return { 1.0 / 3.0, 0.5 };
    case KernelFamily::Custom:
      break;
  }
  return kernel_constants_by_quadrature(k);
}

bool KernelValidation::violates(KernelProperty p) const noexcept
{
  return std::any_of(violations.begin(), violations.end(),
                     [p](const KernelViolation& v) { return v.property == p; });
}

KernelValidation validate_kernel(const Kernel& k)
{
  KernelValidation report;
  const Interval range = k.integration_range();
  const double half = std::max(std::abs(range.lower), std::abs(range.upper));

  constexpr int grid_points = 1001;
  double max_asym = 0.0;
  double max_value = 0.0;
  double min_value = 0.0;
  for (int i = 0; i < grid_points; ++i) {
    const double u = -half + 2.0 * half * i / (grid_points - 1);
    double kp = 0.0;
    double km = 0.0;
    try {
      kp = k(u);
      km = k(-u);
    } catch (const std::exception& e) {
      report.violations.push_back({ KernelProperty::Bounded,
                                    std::string("evaluation threw: ") + e.what() });
      return report;
    }
    if (!std::isfinite(kp)) {
      report.violations.push_back({ KernelProperty::Bounded, "non-finite value on grid" });
      return report;
    }
    max_asym = std::max(max_asym, std::abs(kp - km));
    max_value = std::max(max_value, kp);
    min_value = std::min(min_value, kp);
  }

  const double scale = std::max(max_value, 1.0);
  if (max_asym > 1e-12 * scale) {
    std::ostringstream msg;
    msg << "max |K(u) - K(-u)| on grid is " << max_asym;
    report.violations.push_back({ KernelProperty::Symmetry, msg.str() });
  }
  if (min_value < 0.0) {
    std::ostringstream msg;
    msg << "negative value " << min_value << " on grid";
    report.violations.push_back({ KernelProperty::Nonnegative, msg.str() });
  }
  if (max_value > k.sup_bound()) {
    std::ostringstream msg;
    msg << "value " << max_value << " exceeds declared bound " << k.sup_bound();
    report.violations.push_back({ KernelProperty::Bounded, msg.str() });
  }

  try {
    const double mass = integrate([&](double u) { return k(u); }, range.lower, range.upper);
    if (std::abs(mass - 1.0) > 1e-8) {
      std::ostringstream msg;
      msg << "integral is " << mass;
      report.violations.push_back({ KernelProperty::UnitIntegral, msg.str() });
    }
  } catch (const std::exception& e) {
    report.violations.push_back({ KernelProperty::UnitIntegral,
                                  std::string("quadrature failed: ") + e.what() });
  }
  return report;
}

Kernel parse_kernel(std::string_view name)
{
  if (name == "gaussian")
    return Kernel::gaussian();
  if (name == "epanechnikov")
    return Kernel::epanechnikov();
  if (name == "uniform")
    return Kernel::uniform();
  throw std::invalid_argument("kernel must be one of gaussian, epanechnikov, uniform");
}

}  // namespace smoothci
