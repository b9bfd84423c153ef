#include "smoothci/processes.hpp"

#include "smoothci/parallel.hpp"
#include "smoothci/quadrature.hpp"
#include "smoothci/summation.hpp"

#include <algorithm>
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

void check_d(double d)
{
  if (!(d > 0.0 && d < 0.5))
    throw std::invalid_argument("ARFIMA memory parameter d must lie in (0, 0.5)");
}

void check_alpha(double alpha)
{
  if (!(alpha > 1.0 && alpha < 2.0))
    throw std::invalid_argument("chain tail exponent must lie in (1, 2)");
}

void check_n(std::size_t n)
{
  if (n == 0)
    throw std::invalid_argument("series length n must be at least 1");
}

}  // namespace

void validate(const ProcessSpec& spec)
{
  std::visit(overloaded{
               [](const Iid& p) {
                 if (!std::isfinite(p.shift))
                   throw std::invalid_argument("shift must be finite");
               },
               [](const Arfima& p) {
                 check_d(p.d);
                 if (!std::isfinite(p.shift))
                   throw std::invalid_argument("shift must be finite");
               },
               [](const LinearProcess& p) {
                 if (p.coeffs.size() == 0)
                   throw std::invalid_argument("linear process needs at least one coefficient");
                 if (!p.coeffs.allFinite() || !std::isfinite(p.shift))
                   throw std::invalid_argument("linear process coefficients and shift must be finite");
               },
               [](const SignedParetoChain& p) { check_alpha(p.alphaTail); },
             },
             spec);
}

double true_mean(const ProcessSpec& spec)
{
  return std::visit(overloaded{
                      [](const Iid& p) { return p.shift; },
                      [](const Arfima& p) { return p.shift; },
                      [](const LinearProcess& p) { return p.shift; },
                      [](const SignedParetoChain&) { return 0.0; },
                    },
                    spec);
}

double variance_decay_exponent(const ProcessSpec& spec)
{
  return std::visit(overloaded{
                      [](const Iid&) { return 1.0; },
                      [](const Arfima& p) { return 1.0 - 2.0 * p.d; },
                      [](const LinearProcess&) { return 1.0; },
                      // var(S_n) ~ c n^(2/alpha)
                      [](const SignedParetoChain& p) { return 2.0 - 2.0 / p.alphaTail; },
                    },
                    spec);
}

std::string describe(const ProcessSpec& spec)
{
  return std::visit(overloaded{
                      [](const Iid&) { return std::string("iid"); },
                      [](const Arfima&) { return std::string("arfima"); },
                      [](const LinearProcess&) { return std::string("linear"); },
                      [](const SignedParetoChain&) { return std::string("signed-pareto-chain"); },
                    },
                    spec);
}

Eigen::VectorXd arfima_coefficients(double d, std::size_t m)
{
  check_d(d);
  Eigen::VectorXd a(static_cast<Eigen::Index>(m) + 1);
  a[0] = 1.0;
  for (Eigen::Index i = 1; i < a.size(); ++i)
    a[i] = a[i - 1] * (static_cast<double>(i - 1) + d) / static_cast<double>(i);
  return a;
}

Eigen::VectorXd gen_linear(const Eigen::VectorXd& coeffs,
                           InnovationDist innovation,
                           std::size_t n,
                           double shift,
                           Rng& rng)
{
  if (coeffs.size() == 0)
    throw std::invalid_argument("gen_linear: coefficient vector is empty");
  check_n(n);
  const Eigen::Index len = static_cast<Eigen::Index>(n);
  const Eigen::Index m = coeffs.size() - 1;
  Eigen::VectorXd xi(len + m);
  for (Eigen::Index j = 0; j < xi.size(); ++j)
    xi[j] = draw_innovation(innovation, rng);
  // Y_k = shift + sum_i c_i xi_{k+m-i}; xi[m] pairs with Y_0
  Eigen::VectorXd y = Eigen::VectorXd::Zero(len);
  for (Eigen::Index i = 0; i <= m; ++i)
    y.noalias() += coeffs[i] * xi.segment(m - i, len);
  y.array() += shift;
  return y;
}

Eigen::VectorXd gen_arfima(const Arfima& spec, std::size_t n, Rng& rng)
{
  return gen_linear(arfima_coefficients(spec.d, spec.truncation), spec.innovation, n, spec.shift, rng);
}

SignedParetoSampler::SignedParetoSampler(double alphaTail) : alpha_(alphaTail)
{
  check_alpha(alphaTail);
}

double SignedParetoSampler::draw_stationary(Rng& rng) const
{
  const double sign = rng.uniform() < 0.5 ? -1.0 : 1.0;
  return sign * std::pow(rng.uniform(), -1.0 / (alpha_ - 1.0));
}

double SignedParetoSampler::stay_probability(double x) noexcept
{
  return std::exp(-1.0 / std::abs(x));
}

double SignedParetoSampler::draw_regeneration(Rng& rng, std::size_t* proposals) const
{
  static const double envelope = -std::expm1(-1.0);
  for (;;) {
    const double x = draw_stationary(rng);
    if (proposals)
      ++*proposals;
    const double leave = -std::expm1(-1.0 / std::abs(x));
    if (rng.uniform() * envelope < leave)
      return x;
  }
}

double pareto_gamma(double alphaTail)
{
  check_alpha(alphaTail);
  // y = t^e with e = 1/(alpha-1) turns y^(alpha-2) dy into e dt
  const double e = 1.0 / (alphaTail - 1.0);
  auto integrand = [e](double t) { return -std::expm1(-std::pow(t, e)); };
  return e * integrate(integrand, 0.0, 1.0, 1e-13);
}

double SignedParetoSampler::acceptance_rate() const
{
  return (alpha_ - 1.0) * pareto_gamma(alpha_) / -std::expm1(-1.0);
}

Eigen::VectorXd gen_signed_pareto_states(double alphaTail, std::size_t n, Rng& rng)
{
  check_n(n);
  const SignedParetoSampler sampler(alphaTail);
  Eigen::VectorXd x(static_cast<Eigen::Index>(n));
  double state = sampler.draw_stationary(rng);
  x[0] = state;
  for (Eigen::Index i = 1; i < x.size(); ++i) {
    if (!(rng.uniform() < SignedParetoSampler::stay_probability(state)))
      state = sampler.draw_regeneration(rng);
    x[i] = state;
  }
  return x;
}

Eigen::VectorXd gen_signed_pareto_chain(double alphaTail, std::size_t n, Rng& rng)
{
  Eigen::VectorXd states = gen_signed_pareto_states(alphaTail, n, rng);
  return states.unaryExpr([](double v) { return v < 0.0 ? -1.0 : 1.0; });
}

Eigen::VectorXd generate(const ProcessSpec& spec, std::size_t n, Rng& rng)
{
  validate(spec);
  check_n(n);
  return std::visit(overloaded{
                      [&](const Iid& p) {
                        return gen_linear(Eigen::VectorXd::Ones(1), p.innovation, n, p.shift, rng);
                      },
                      [&](const Arfima& p) { return gen_arfima(p, n, rng); },
                      [&](const LinearProcess& p) {
                        return gen_linear(p.coeffs, p.innovation, n, p.shift, rng);
                      },
                      [&](const SignedParetoChain& p) {
                        return gen_signed_pareto_chain(p.alphaTail, n, rng);
                      },
                    },
                    spec);
}

Eigen::VectorXd sample_autocovariance(const Eigen::VectorXd& Y, std::size_t maxLag)
{
  const Eigen::Index n = Y.size();
  if (static_cast<Eigen::Index>(maxLag) >= n)
    throw std::invalid_argument("sample_autocovariance: maxLag must be smaller than the series length");
  CompensatedSum total;
  for (Eigen::Index i = 0; i < n; ++i)
    total += Y[i];
  const Eigen::VectorXd centred = Y.array() - total.value() / static_cast<double>(n);
  Eigen::VectorXd gamma(static_cast<Eigen::Index>(maxLag) + 1);
  for (Eigen::Index k = 0; k < gamma.size(); ++k) {
    CompensatedSum s;
    for (Eigen::Index i = 0; i + k < n; ++i)
      s += centred[i] * centred[i + k];
    gamma[k] = s.value() / static_cast<double>(n);
  }
  return gamma;
}

ScalingProbeResult variance_scaling_probe(const ProcessSpec& spec,
                                          const std::vector<std::size_t>& sampleSizes,
                                          std::size_t M,
                                          MasterSeed master,
                                          unsigned workers)
{
  validate(spec);
  if (sampleSizes.size() < 3)
    throw std::invalid_argument("scaling probe needs at least 3 sample sizes");
  for (std::size_t s : sampleSizes)
    if (s < 64)
      throw std::invalid_argument("scaling probe sample sizes must be at least 64");
  if (M < 50)
    throw std::invalid_argument("scaling probe needs at least 50 replicates");

  const bool sum_statistic = std::holds_alternative<SignedParetoChain>(spec);
  const std::size_t n_max = *std::max_element(sampleSizes.begin(), sampleSizes.end());
  const std::size_t k = sampleSizes.size();

  // stats(r, s): statistic of replicate r at size index s
  Eigen::MatrixXd stats(static_cast<Eigen::Index>(M), static_cast<Eigen::Index>(k));
  parallel_for(M, workers, [&](std::size_t r) {
    Rng rng = replicate_seed(master, r);
    const Eigen::VectorXd y = generate(spec, n_max, rng);
    for (std::size_t s = 0; s < k; ++s) {
      CompensatedSum sum;
      for (std::size_t i = 0; i < sampleSizes[s]; ++i)
        sum += y[static_cast<Eigen::Index>(i)];
      const double value =
        sum_statistic ? sum.value() : sum.value() / static_cast<double>(sampleSizes[s]);
      stats(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(s)) = value;
    }
  });

  ScalingProbeResult result;
  result.sampleSizes = sampleSizes;
  result.sumStatistic = sum_statistic;
  result.varianceEstimates.resize(static_cast<Eigen::Index>(k));
  const double md = static_cast<double>(M);
  for (Eigen::Index s = 0; s < static_cast<Eigen::Index>(k); ++s) {
    CompensatedSum mean;
    for (Eigen::Index r = 0; r < stats.rows(); ++r)
      mean += stats(r, s);
    const double mu = mean.value() / md;
    CompensatedSum ss;
    for (Eigen::Index r = 0; r < stats.rows(); ++r) {
      const double dev = stats(r, s) - mu;
      ss += dev * dev;
    }
    result.varianceEstimates[s] = ss.value() / (md - 1.0);
  }

  Eigen::VectorXd lx(static_cast<Eigen::Index>(k));
  for (std::size_t s = 0; s < k; ++s)
    lx[static_cast<Eigen::Index>(s)] = std::log(static_cast<double>(sampleSizes[s]));
  const Eigen::VectorXd ly = result.varianceEstimates.array().log();
  if (!ly.allFinite())
    throw std::runtime_error("scaling probe: a variance estimate is zero; cannot fit on log scale");
  const double mx = lx.mean();
  const double my = ly.mean();
  const Eigen::VectorXd dx = lx.array() - mx;
  const Eigen::VectorXd dy = ly.array() - my;
  const double sxx = dx.squaredNorm();
  if (!(sxx > 0.0))
    throw std::invalid_argument("scaling probe: sample sizes must not all be equal");
  result.logLogSlope = dx.dot(dy) / sxx;
  result.intercept = my - result.logLogSlope * mx;
  const double sse = (dy - result.logLogSlope * dx).squaredNorm();
  result.slopeStdErr = std::sqrt(sse / (static_cast<double>(k) - 2.0) / sxx);
  return result;
}

}  // namespace smoothci
