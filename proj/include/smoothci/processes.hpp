#pragma once

#include "smoothci/random.hpp"

#include <Eigen/Core>

#include <cstddef>
#include <string>
#include <variant>
#include <vector>

namespace smoothci {

//! ARFIMA(0, d, 0) plus a constant, generated as a causal moving average
//! truncated after `truncation` lags.
struct Arfima
{
  double d;
  InnovationDist innovation = InnovationDist::StdNormal;
  std::size_t truncation = 10000;
  double shift = 0.0;
};

//! Y_k = shift + sum_{i=0}^{m} coeffs[i] xi_{k-i}.
struct LinearProcess
{
  Eigen::VectorXd coeffs;
  InnovationDist innovation = InnovationDist::StdNormal;
  double shift = 0.0;
};

//! Signs of the sticky reversible chain with heavy-tailed stationary law
//! pi(dx) = (alphaTail - 1) / (2 |x|^alphaTail) dx on |x| > 1.
struct SignedParetoChain
{
  double alphaTail;
};

struct Iid
{
  InnovationDist innovation = InnovationDist::StdNormal;
  double shift = 0.0;
};

using ProcessSpec = std::variant<Iid, Arfima, LinearProcess, SignedParetoChain>;

//! Throws std::invalid_argument for out-of-range parameters.
void validate(const ProcessSpec& spec);

//! Known mean of the process (shift; 0 for the sign chain).
double true_mean(const ProcessSpec& spec);

//! beta such that var(mean of n observations) decays like n^-beta.
double variance_decay_exponent(const ProcessSpec& spec);

std::string describe(const ProcessSpec& spec);

//! MA(infinity) weights of (1 - B)^-d, a_0 .. a_m, by the recurrence
//! a_i = a_{i-1} (i - 1 + d) / i.
Eigen::VectorXd arfima_coefficients(double d, std::size_t m);

Eigen::VectorXd gen_linear(const Eigen::VectorXd& coeffs,
                           InnovationDist innovation,
                           std::size_t n,
                           double shift,
                           Rng& rng);

Eigen::VectorXd gen_arfima(const Arfima& spec, std::size_t n, Rng& rng);

//! Samplers for the signed-Pareto chain with stay probability
//! p(x) = exp(-1/|x|).
class SignedParetoSampler
{
public:
  explicit SignedParetoSampler(double alphaTail);

  double alpha_tail() const noexcept { return alpha_; }

  //! Stationary law pi by inverse CDF: |X| = U^(-1/(alpha-1)), random sign.
  double draw_stationary(Rng& rng) const;

  //! Regeneration law nu by rejection from pi with acceptance
  //! (1 - p(x)) / (1 - e^-1). If `proposals` is given it is incremented by
  //! the number of pi draws used.
  double draw_regeneration(Rng& rng, std::size_t* proposals = nullptr) const;

  static double stay_probability(double x) noexcept;

  //! Expected acceptance rate of draw_regeneration: (alpha-1) gamma_alpha / (1 - e^-1).
  double acceptance_rate() const;

private:
  double alpha_;
};

//! gamma_alpha = int_0^1 y^(alpha-2) (1 - e^-y) dy, by quadrature.
double pareto_gamma(double alphaTail);

//! Chain states X_0 .. X_{n-1}, X_0 drawn from pi.
Eigen::VectorXd gen_signed_pareto_states(double alphaTail, std::size_t n, Rng& rng);

//! sign(X_i) of the chain; entries are exactly +-1.
Eigen::VectorXd gen_signed_pareto_chain(double alphaTail, std::size_t n, Rng& rng);

Eigen::VectorXd generate(const ProcessSpec& spec, std::size_t n, Rng& rng);

//! gamma(k) = (1/n) sum_{i=1}^{n-k} (Y_i - mean)(Y_{i+k} - mean), k = 0..maxLag.
Eigen::VectorXd sample_autocovariance(const Eigen::VectorXd& Y, std::size_t maxLag);

struct ScalingProbeResult
{
  std::vector<std::size_t> sampleSizes;
  Eigen::VectorXd varianceEstimates;
  double logLogSlope;
  double slopeStdErr;
  double intercept;
  bool sumStatistic;  // true: var(S_n) (sign chain); false: var(mean)
};

//! Monte Carlo var(mean_n) (var(S_n) for the sign chain) at each sample
//! size over M replicates, then least-squares slope of log var on log n.
//! Replicate r draws one series of the largest size from
//! replicate_seed(master, r) and reads every size off its prefixes.
ScalingProbeResult variance_scaling_probe(const ProcessSpec& spec,
                                          const std::vector<std::size_t>& sampleSizes,
                                          std::size_t M,
                                          MasterSeed master,
                                          unsigned workers = 1);

}  // namespace smoothci
