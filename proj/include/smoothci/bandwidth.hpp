#pragma once

#include "smoothci/estimator.hpp"
#include "smoothci/kernels.hpp"
#include "smoothci/smoothing.hpp"

#include <cstddef>
#include <optional>
#include <string>
#include <variant>

namespace smoothci {

//! Data-driven minimiser of the leading mean-square-error terms.
struct PlugInOptimal
{
};

//! h = scale * n^(-exponent), exponent in (0, 1).
struct PowerLaw
{
  double exponent;
  double scale = 1.0;
};

struct FixedBandwidth
{
  double h;
};

using BandwidthPolicy = std::variant<PlugInOptimal, PowerLaw, FixedBandwidth>;

struct MseMainTerm
{
  double varianceTerm;
  double biasTerm;
  double total;
};

//! h_o = [f(0) B ySqBar / (n (f''(0) A)^2 yBar^2)]^(1/5).
//!
//! Throws StatisticalError when ySqBar == 0 (all-zero data) or yBar == 0,
//! and std::invalid_argument when the smoothing law has no usable f''(0).
double optimal_bandwidth(double ySqBar,
                         double yBar,
                         std::size_t n,
                         const Kernel& k,
                         const SmoothingDistribution& d);

double power_law_bandwidth(std::size_t n, double exponent, double scale = 1.0);

//! Whether the plug-in bandwidth is usable when var(mean of n) decays like
//! n^(-beta): requires beta > 4/5.
bool check_plug_in_admissible(double beta);

//! The two leading terms of MSE(r_n) with E(Y^2), mu_Y replaced by the
//! sample moments.
MseMainTerm mse_main_term(double h,
                          std::size_t n,
                          double ySqBar,
                          double yBar,
                          const Kernel& k,
                          const SmoothingDistribution& d);

//! Checks the policy's own parameters; for PlugInOptimal with a declared
//! beta, also the admissibility restriction. Throws std::invalid_argument.
void validate_policy(const BandwidthPolicy& policy, std::optional<double> beta = std::nullopt);

double resolve_bandwidth(const BandwidthPolicy& policy,
                         const SampleMoments& moments,
                         std::size_t n,
                         const Kernel& k,
                         const SmoothingDistribution& d);

std::string describe(const BandwidthPolicy& policy);

}  // namespace smoothci
