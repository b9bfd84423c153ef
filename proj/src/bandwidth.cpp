#include "smoothci/bandwidth.hpp"

#include "smoothci/errors.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace smoothci {

namespace {

template <class... Ts>
struct overloaded : Ts...
{
  using Ts::operator()...;
};

void check_n(std::size_t n)
{
  if (n == 0)
    throw std::invalid_argument("sample size n must be at least 1");
}

double curvature(const Kernel& k, const SmoothingDistribution& d)
{
  const double f2 = second_derivative_at_zero(d);
  const double a = kernel_constants(k).A;
  const double c = f2 * a;
  if (c == 0.0)
    throw std::invalid_argument("plug-in bandwidth unavailable: f''(0) A is zero");
  return c;
}

}  // namespace

double optimal_bandwidth(double ySqBar,
                         double yBar,
                         std::size_t n,
                         const Kernel& k,
                         const SmoothingDistribution& d)
{
  check_n(n);
  if (ySqBar == 0.0)
    throw StatisticalError("plug-in bandwidth undefined: all observations are zero");
  if (yBar == 0.0)
    throw StatisticalError("plug-in bandwidth undefined: sample mean is zero");
  if (!(ySqBar > 0.0) || !std::isfinite(ySqBar) || !std::isfinite(yBar))
    throw std::invalid_argument("plug-in bandwidth: moments must be finite, ySqBar > 0");
  const double c = curvature(k, d);
  const double f0 = density_at_zero(d);
  const double b = kernel_constants(k).B;
  const double ratio =
    f0 * b * ySqBar / (static_cast<double>(n) * c * c * yBar * yBar);
  return std::pow(ratio, 0.2);
}

double power_law_bandwidth(std::size_t n, double exponent, double scale)
{
  check_n(n);
  if (!(exponent > 0.0 && exponent < 1.0))
    throw std::invalid_argument("power-law exponent must lie in (0, 1) so that h -> 0 and n h -> infinity");
  if (!(scale > 0.0) || !std::isfinite(scale))
    throw std::invalid_argument("power-law scale must be positive");
  return scale * std::pow(static_cast<double>(n), -exponent);
}

bool check_plug_in_admissible(double beta)
{
  if (!(beta > 0.0))
    throw std::invalid_argument("variance decay exponent beta must be positive");
  return beta > 0.8;
}

MseMainTerm mse_main_term(double h,
                          std::size_t n,
                          double ySqBar,
                          double yBar,
                          const Kernel& k,
                          const SmoothingDistribution& d)
{
  detail::check_bandwidth(h);
  check_n(n);
  const double f0 = density_at_zero(d);
  const double c = curvature(k, d);
  const double b = kernel_constants(k).B;
  MseMainTerm m;
  m.varianceTerm = ySqBar * b * f0 / (static_cast<double>(n) * h) / (f0 * f0);
  m.biasTerm = std::pow(h, 4) / 4.0 * yBar * yBar * c * c / (f0 * f0);
  m.total = m.varianceTerm + m.biasTerm;
  return m;
}

void validate_policy(const BandwidthPolicy& policy, std::optional<double> beta)
{
  std::visit(overloaded{
               [&](const PlugInOptimal&) {
                 if (beta && !check_plug_in_admissible(*beta)) {
                   std::ostringstream msg;
                   msg << "plug-in bandwidth refused: variance of the sample mean decays like n^-"
                       << *beta << ", but the plug-in rule needs var(mean) = o(n^-4/5) (beta > 0.8); "
                       << "use an explicit power-law bandwidth";
                   throw std::invalid_argument(msg.str());
                 }
               },
               [](const PowerLaw& p) { power_law_bandwidth(1, p.exponent, p.scale); },
               [](const FixedBandwidth& f) { detail::check_bandwidth(f.h); },
             },
             policy);
}

double resolve_bandwidth(const BandwidthPolicy& policy,
                         const SampleMoments& moments,
                         std::size_t n,
                         const Kernel& k,
                         const SmoothingDistribution& d)
{
  return std::visit(overloaded{
                      [&](const PlugInOptimal&) {
                        return optimal_bandwidth(moments.ySqBar, moments.yBar, n, k, d);
                      },
                      [&](const PowerLaw& p) { return power_law_bandwidth(n, p.exponent, p.scale); },
                      [](const FixedBandwidth& f) {
                        detail::check_bandwidth(f.h);
                        return f.h;
                      },
                    },
                    policy);
}

std::string describe(const BandwidthPolicy& policy)
{
  return std::visit(overloaded{
                      [](const PlugInOptimal&) { return std::string("plug-in"); },
                      [](const PowerLaw&) { return std::string("power-law"); },
                      [](const FixedBandwidth&) { return std::string("fixed"); },
                    },
                    policy);
}

}  // namespace smoothci
