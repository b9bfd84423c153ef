#include "smoothci/montecarlo.hpp"

#include "smoothci/errors.hpp"
#include "smoothci/parallel.hpp"
#include "smoothci/summation.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace smoothci {

void validate_experiment(const CoverageExperiment& e)
{
  if (e.replicates < 1)
    throw std::invalid_argument("experiment needs at least one replicate");
  if (e.n < 1)
    throw std::invalid_argument("experiment sample size n must be at least 1");
  if (!(e.level > 0.0 && e.level < 1.0))
    throw std::invalid_argument("confidence level must lie in (0, 1)");
  validate(e.process);
  validate_policy(e.bandwidth, variance_decay_exponent(e.process));
  if (std::holds_alternative<PlugInOptimal>(e.bandwidth))
    second_derivative_at_zero(e.smoothing);
  density_at_zero(e.smoothing);
}

ReplicateRecord run_replicate(const CoverageExperiment& e, std::size_t index)
{
  ReplicateRecord rec;
  rec.index = index;
  Rng rng = replicate_seed(e.masterSeed, index);
  const Eigen::VectorXd y = generate(e.process, e.n, rng);
  const Eigen::VectorXd x = sample_smoothing(e.smoothing, e.n, rng);
  const double f0 = density_at_zero(e.smoothing);
  try {
    const double h = resolve_bandwidth(e.bandwidth, sample_moments(y), e.n, e.kernel, e.smoothing);
    rec.estimate = estimate(y, x, e.kernel, f0, h);
  } catch (const StatisticalError& err) {
    rec.invalidReason = err.what();
    return rec;
  }
  rec.interval = confidence_interval(rec.estimate.rHat, rec.estimate.ySqBar, rec.estimate.n,
                                     rec.estimate.h, e.kernel, f0, e.level);
  rec.valid = true;
  rec.hit = rec.interval.contains(e.trueMean());
  return rec;
}

std::vector<ReplicateRecord> run_replicates(const CoverageExperiment& e, unsigned workers)
{
  validate_experiment(e);
  std::vector<ReplicateRecord> records(e.replicates);
  parallel_for(e.replicates, workers, [&](std::size_t i) {
    records[i] = run_replicate(e, e.firstReplicate + i);
  });
  return records;
}

CoverageReport aggregate_coverage(std::vector<ReplicateRecord> records, double level)
{
  std::sort(records.begin(), records.end(),
            [](const ReplicateRecord& a, const ReplicateRecord& b) { return a.index < b.index; });
  CoverageReport report;
  report.level = level;
  report.M = records.size();
  CompensatedSum widths;
  for (const auto& r : records) {
    if (!r.valid)
      continue;
    ++report.validCount;
    if (r.hit)
      ++report.hits;
    widths += r.interval.halfWidth;
  }
  if (report.M > 0) {
    report.coverage = static_cast<double>(report.hits) / static_cast<double>(report.M);
    report.coverageCI = coverage_binomial_interval(report.hits, report.M, level);
  }
  if (report.validCount > 0)
    report.meanHalfWidth = widths.value() / static_cast<double>(report.validCount);
  report.perReplicate = std::move(records);
  return report;
}

CoverageReport run_coverage(const CoverageExperiment& e, unsigned workers)
{
  return aggregate_coverage(run_replicates(e, workers), e.level);
}

CoverageReport merge_reports(const CoverageReport& a, const CoverageReport& b)
{
  if (a.level != b.level)
    throw std::invalid_argument("merge_reports: reports have different levels");
  std::vector<ReplicateRecord> all = a.perReplicate;
  all.insert(all.end(), b.perReplicate.begin(), b.perReplicate.end());
  std::vector<std::size_t> idx;
  for (const auto& r : all)
    idx.push_back(r.index);
  std::sort(idx.begin(), idx.end());
  if (std::adjacent_find(idx.begin(), idx.end()) != idx.end())
    throw std::invalid_argument("merge_reports: replicate ranges overlap");
  return aggregate_coverage(std::move(all), a.level);
}

NormalityReport run_normality_check(const CoverageExperiment& e, unsigned workers)
{
  const auto records = run_replicates(e, workers);
  const double b = kernel_constants(e.kernel).B;
  const double f0 = density_at_zero(e.smoothing);
  const double mu = e.trueMean();

  std::vector<double> stats;
  for (const auto& r : records) {
    if (!r.valid || !(r.estimate.ySqBar > 0.0))
      continue;
    const auto& est = r.estimate;
    const double scale = std::sqrt(static_cast<double>(est.n) * est.h);
    stats.push_back(scale * (est.rHat - mu) / std::sqrt(est.ySqBar * b / f0));
  }

  NormalityReport report;
  report.M = records.size();
  report.validCount = stats.size();
  report.standardizedStats = Eigen::Map<const Eigen::VectorXd>(stats.data(), static_cast<Eigen::Index>(stats.size()));
  if (stats.empty())
    return report;

  CompensatedSum s1;
  for (double t : stats)
    s1 += t;
  report.mean = s1.value() / static_cast<double>(stats.size());
  if (stats.size() > 1) {
    CompensatedSum s2;
    for (double t : stats)
      s2 += (t - report.mean) * (t - report.mean);
    report.variance = s2.value() / static_cast<double>(stats.size() - 1);
  }
  report.ksStatistic = ks_statistic_normal(report.standardizedStats);
  for (int i = 0; i < 9; ++i) {
    const double p = 0.1 * (i + 1);
    report.decileDeviations[static_cast<std::size_t>(i)] =
      sample_quantile(report.standardizedStats, p) - normal_quantile(p);
  }
  return report;
}

BinomialInterval coverage_binomial_interval(std::size_t hits, std::size_t M, double level)
{
  if (M < 1)
    throw std::invalid_argument("binomial interval: M must be at least 1");
  if (hits > M)
    throw std::invalid_argument("binomial interval: hits cannot exceed M");
  const double z = normal_quantile(0.5 + 0.5 * level);
  const double m = static_cast<double>(M);
  const double p = static_cast<double>(hits) / m;
  const double z2 = z * z;
  const double denom = 1.0 + z2 / m;
  const double centre = (p + z2 / (2.0 * m)) / denom;
  const double half = z / denom * std::sqrt(p * (1.0 - p) / m + z2 / (4.0 * m * m));
  const double lower = hits == 0 ? 0.0 : std::max(0.0, centre - half);
  const double upper = hits == M ? 1.0 : std::min(1.0, centre + half);
  return { lower, upper };
}

double ks_statistic_normal(const Eigen::VectorXd& values)
{
  if (values.size() == 0)
    throw std::invalid_argument("ks_statistic_normal: empty sample");
  std::vector<double> sorted(values.data(), values.data() + values.size());
  std::sort(sorted.begin(), sorted.end());
  const double m = static_cast<double>(sorted.size());
  double d = 0.0;
  for (std::size_t i = 0; i < sorted.size(); ++i) {
    const double cdf = normal_cdf(sorted[i]);
    d = std::max({ d, static_cast<double>(i + 1) / m - cdf, cdf - static_cast<double>(i) / m });
  }
  return d;
}

double sample_quantile(Eigen::VectorXd values, double p)
{
  if (values.size() == 0)
    throw std::invalid_argument("sample_quantile: empty sample");
  if (!(p >= 0.0 && p <= 1.0))
    throw std::invalid_argument("sample_quantile: p must lie in [0, 1]");
  std::sort(values.data(), values.data() + values.size());
  const double pos = p * static_cast<double>(values.size() - 1);
  const auto lo = static_cast<Eigen::Index>(std::floor(pos));
  const auto hi = std::min<Eigen::Index>(lo + 1, values.size() - 1);
  const double frac = pos - static_cast<double>(lo);
  return values[lo] + frac * (values[hi] - values[lo]);
}

}  // namespace smoothci
