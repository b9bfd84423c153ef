#include "smoothci/report.hpp"

#include <cstdio>
#include <vector>

namespace smoothci {

using nlohmann::json;

namespace {

template <class... Ts>
struct overloaded : Ts...
{
  using Ts::operator()...;
};

json vector_json(const Eigen::VectorXd& v)
{
  return std::vector<double>(v.data(), v.data() + v.size());
}

}  // namespace

json to_json(const EstimateResult& e)
{
  return json{ { "rHat", e.rHat },   { "mHat", e.mHat },     { "fHatZero", e.fHatZero },
               { "yBar", e.yBar },   { "ySqBar", e.ySqBar }, { "n", e.n },
               { "h", e.h } };
}

json to_json(const ConfidenceInterval& ci)
{
  return json{ { "lower", ci.lower },         { "upper", ci.upper },   { "level", ci.level },
               { "halfWidth", ci.halfWidth }, { "center", ci.center }, { "degenerate", ci.degenerate } };
}

json to_json(const ProcessSpec& spec)
{
  return std::visit(
    overloaded{
      [](const Iid& p) {
        return json{ { "type", "iid" }, { "innovation", to_string(p.innovation) }, { "shift", p.shift } };
      },
      [](const Arfima& p) {
        return json{ { "type", "arfima" },
                     { "d", p.d },
                     { "innovation", to_string(p.innovation) },
                     { "truncation", p.truncation },
                     { "shift", p.shift } };
      },
      [](const LinearProcess& p) {
        return json{ { "type", "linear" },
                     { "coeffs", vector_json(p.coeffs) },
                     { "innovation", to_string(p.innovation) },
                     { "shift", p.shift } };
      },
      [](const SignedParetoChain& p) {
        return json{ { "type", "signed-pareto-chain" }, { "alphaTail", p.alphaTail } };
      },
    },
    spec);
}

json to_json(const BandwidthPolicy& policy)
{
  return std::visit(overloaded{
                      [](const PlugInOptimal&) { return json{ { "type", "plug-in" } }; },
                      [](const PowerLaw& p) {
                        return json{ { "type", "power-law" }, { "exponent", p.exponent }, { "scale", p.scale } };
                      },
                      [](const FixedBandwidth& f) { return json{ { "type", "fixed" }, { "h", f.h } }; },
                    },
                    policy);
}

json to_json(MasterSeed seed)
{
  char hex[32];
  std::snprintf(hex, sizeof(hex), "0x%016llx", static_cast<unsigned long long>(seed.value));
  return json{ { "value", seed.value }, { "hex", hex }, { "algorithm", Rng::algorithm } };
}

json to_json(const CoverageExperiment& e)
{
  return json{ { "process", to_json(e.process) },
               { "trueMean", e.trueMean() },
               { "n", e.n },
               { "level", e.level },
               { "bandwidth", to_json(e.bandwidth) },
               { "kernel", e.kernel.name() },
               { "smoothing", e.smoothing.name() },
               { "replicates", e.replicates },
               { "firstReplicate", e.firstReplicate },
               { "seed", to_json(e.masterSeed) } };
}

json to_json(const CoverageReport& r, bool include_replicates)
{
  json out{ { "level", r.level },
            { "M", r.M },
            { "validCount", r.validCount },
            { "hits", r.hits },
            { "coverage", r.coverage },
            { "coverageCI", { { "lower", r.coverageCI.lower }, { "upper", r.coverageCI.upper },
                              { "method", "wilson" } } },
            { "meanHalfWidth", r.meanHalfWidth } };
  json invalid = json::array();
  for (const auto& rec : r.perReplicate)
    if (!rec.valid)
      invalid.push_back({ { "index", rec.index }, { "reason", rec.invalidReason } });
  out["invalid"] = std::move(invalid);
  if (include_replicates) {
    json reps = json::array();
    for (const auto& rec : r.perReplicate) {
      json item{ { "index", rec.index }, { "valid", rec.valid } };
      if (rec.valid) {
        item["h"] = rec.estimate.h;
        item["rHat"] = rec.estimate.rHat;
        item["interval"] = to_json(rec.interval);
        item["hit"] = rec.hit;
      }
      reps.push_back(std::move(item));
    }
    out["perReplicate"] = std::move(reps);
  }
  return out;
}

json to_json(const NormalityReport& r)
{
  return json{ { "M", r.M },
               { "validCount", r.validCount },
               { "ksStatistic", r.ksStatistic },
               { "mean", r.mean },
               { "variance", r.variance },
               { "decileDeviations", std::vector<double>(r.decileDeviations.begin(), r.decileDeviations.end()) },
               { "standardizedStats", vector_json(r.standardizedStats) } };
}

json to_json(const ScalingProbeResult& r)
{
  return json{ { "statistic", r.sumStatistic ? "var(S_n)" : "var(mean)" },
               { "sampleSizes", r.sampleSizes },
               { "varianceEstimates", vector_json(r.varianceEstimates) },
               { "logLogSlope", r.logLogSlope },
               { "slopeStdErr", r.slopeStdErr },
               { "intercept", r.intercept } };
}

}  // namespace smoothci
