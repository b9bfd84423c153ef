#include "smoothci/smoothing.hpp"

#include <charconv>
#include <numbers>
#include <sstream>

namespace smoothci {

namespace {

constexpr double inv_sqrt_2pi = 0.3989422804014327;

double parse_double(std::string_view text)
{
  double value = 0.0;
  const auto* end = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(text.data(), end, value);
  if (ec != std::errc() || ptr != end)
    throw std::invalid_argument("smoothing: malformed number '" + std::string(text) + "'");
  return value;
}

}  // namespace

SmoothingDistribution SmoothingDistribution::std_normal()
{
  SmoothingDistribution d;
  d.family_ = SmoothingFamily::StdNormal;
  d.name_ = "normal";
  d.f0_ = inv_sqrt_2pi;
  d.f2_ = -inv_sqrt_2pi;
  return d;
}

SmoothingDistribution SmoothingDistribution::uniform(double a, double b)
{
  if (!(a < 0.0 && 0.0 < b) || !std::isfinite(a) || !std::isfinite(b))
    throw std::invalid_argument("uniform smoothing law needs a < 0 < b");
  SmoothingDistribution d;
  d.family_ = SmoothingFamily::Uniform;
  std::ostringstream name;
  name.precision(17);
  name << "uniform:" << a << "," << b;
  d.name_ = name.str();
  d.lower_ = a;
  d.upper_ = b;
  d.f0_ = 1.0 / (b - a);
  return d;
}

SmoothingDistribution SmoothingDistribution::custom(Sampler sampler,
                                                    std::optional<double> density_at_zero,
                                                    std::optional<double> second_derivative_at_zero,
                                                    std::string name)
{
  if (!sampler)
    throw std::invalid_argument("custom smoothing law: empty sampler");
  if (density_at_zero && !(*density_at_zero > 0.0))
    throw std::invalid_argument("custom smoothing law: f(0) must be positive");
  SmoothingDistribution d;
  d.family_ = SmoothingFamily::Custom;
  d.name_ = std::move(name);
  d.f0_ = density_at_zero;
  d.f2_ = second_derivative_at_zero;
  d.sampler_ = std::move(sampler);
  return d;
}

double SmoothingDistribution::sample(Rng& rng) const
{
  switch (family_) {
    case SmoothingFamily::StdNormal:
      return rng.normal();
    case SmoothingFamily::Uniform:
      return lower_ + (upper_ - lower_) * rng.uniform();
    case SmoothingFamily::Custom:
      return sampler_(rng);
  }
  return 0.0;
}

Eigen::VectorXd sample_smoothing(const SmoothingDistribution& d, std::size_t n, Rng& rng)
{
  if (n == 0)
    throw std::invalid_argument("sample_smoothing: n must be at least 1");
  Eigen::VectorXd x(static_cast<Eigen::Index>(n));
  for (Eigen::Index i = 0; i < x.size(); ++i)
    x[i] = d.sample(rng);
  return x;
}

double density_at_zero(const SmoothingDistribution& d)
{
  if (!d.supplied_density_at_zero())
    throw std::invalid_argument("smoothing law '" + d.name() + "': f(0) not supplied");
  return *d.supplied_density_at_zero();
}

double second_derivative_at_zero(const SmoothingDistribution& d)
{
  if (d.family() == SmoothingFamily::Uniform)
    throw std::invalid_argument("plug-in bandwidth unavailable: f'' undefined at 0 for the uniform smoothing law");
  if (!d.supplied_second_derivative())
    throw std::invalid_argument("smoothing law '" + d.name() + "': f''(0) not supplied");
  return *d.supplied_second_derivative();
}

SmoothingDistribution parse_smoothing(std::string_view spec)
{
  if (spec == "normal")
    return SmoothingDistribution::std_normal();
  if (spec == "uniform")
    return SmoothingDistribution::uniform(-0.5, 0.5);
  constexpr std::string_view prefix = "uniform:";
  if (spec.starts_with(prefix)) {
    spec.remove_prefix(prefix.size());
    const auto comma = spec.find(',');
    if (comma == std::string_view::npos)
      throw std::invalid_argument("smoothing: expected uniform:a,b");
    return SmoothingDistribution::uniform(parse_double(spec.substr(0, comma)),
                                          parse_double(spec.substr(comma + 1)));
  }
  throw std::invalid_argument("smoothing must be normal, uniform or uniform:a,b");
}

}  // namespace smoothci
