#pragma once

#include "smoothci/bandwidth.hpp"
#include "smoothci/estimator.hpp"
#include "smoothci/inference.hpp"
#include "smoothci/kernels.hpp"
#include "smoothci/processes.hpp"
#include "smoothci/random.hpp"
#include "smoothci/smoothing.hpp"

#include <Eigen/Core>

#include <array>
#include <cstddef>
#include <string>
#include <vector>

namespace smoothci {

struct CoverageExperiment
{
  ProcessSpec process = Iid{};
  std::size_t n = 1000;
  double level = 0.95;
  BandwidthPolicy bandwidth = PlugInOptimal{};
  Kernel kernel = Kernel::gaussian();
  SmoothingDistribution smoothing = SmoothingDistribution::std_normal();
  std::size_t replicates = 100;
  MasterSeed masterSeed{};
  //! Replicate indices run are [firstReplicate, firstReplicate + replicates).
  std::size_t firstReplicate = 0;

  double trueMean() const { return true_mean(process); }
};

struct ReplicateRecord
{
  std::size_t index = 0;
  bool valid = false;
  std::string invalidReason;
  EstimateResult estimate{};
  ConfidenceInterval interval{};
  bool hit = false;
};

struct BinomialInterval
{
  double lower;
  double upper;
};

struct CoverageReport
{
  double level = 0.0;
  std::size_t M = 0;
  std::size_t validCount = 0;
  std::size_t hits = 0;
  double coverage = 0.0;  // hits / M; invalid replicates count as misses
  BinomialInterval coverageCI{};
  double meanHalfWidth = 0.0;  // over valid replicates
  std::vector<ReplicateRecord> perReplicate;
};

struct NormalityReport
{
  Eigen::VectorXd standardizedStats;
  double ksStatistic = 0.0;
  std::array<double, 9> decileDeviations{};  // empirical minus normal quantile at 0.1 .. 0.9
  double mean = 0.0;
  double variance = 0.0;
  std::size_t validCount = 0;
  std::size_t M = 0;
};

//! Throws std::invalid_argument for an unusable configuration, including a
//! plug-in bandwidth for a process whose memory violates the n^-4/5 rule.
void validate_experiment(const CoverageExperiment& e);

//! One replicate: series and auxiliary sample from replicate_seed(master,
//! index), bandwidth from that replicate's moments, estimate and interval.
ReplicateRecord run_replicate(const CoverageExperiment& e, std::size_t index);

std::vector<ReplicateRecord> run_replicates(const CoverageExperiment& e, unsigned workers = 1);

//! Pure fold over records in index order.
CoverageReport aggregate_coverage(std::vector<ReplicateRecord> records, double level);

CoverageReport run_coverage(const CoverageExperiment& e, unsigned workers = 1);

//! Report over the union of two disjoint replicate ranges; identical to a
//! single run over the combined range.
CoverageReport merge_reports(const CoverageReport& a, const CoverageReport& b);

NormalityReport run_normality_check(const CoverageExperiment& e, unsigned workers = 1);

//! Wilson score interval for hits out of M at the given level, clipped to [0, 1].
BinomialInterval coverage_binomial_interval(std::size_t hits, std::size_t M, double level);

//! Kolmogorov-Smirnov distance between the empirical law of `values` and N(0, 1).
double ks_statistic_normal(const Eigen::VectorXd& values);

//! Type-7 (linear interpolation) sample quantile.
double sample_quantile(Eigen::VectorXd values, double p);

}  // namespace smoothci
