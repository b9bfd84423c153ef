#pragma once

#include "smoothci/bandwidth.hpp"
#include "smoothci/estimator.hpp"
#include "smoothci/inference.hpp"
#include "smoothci/montecarlo.hpp"
#include "smoothci/processes.hpp"

#include <json.hpp>

namespace smoothci {

//! Version of every JSON document emitted by the library and the CLI.
inline constexpr int schema_version = 1;

nlohmann::json to_json(const EstimateResult& e);
nlohmann::json to_json(const ConfidenceInterval& ci);
nlohmann::json to_json(const ProcessSpec& spec);
nlohmann::json to_json(const BandwidthPolicy& policy);
nlohmann::json to_json(MasterSeed seed);
//! Resolved configuration echo.
nlohmann::json to_json(const CoverageExperiment& e);
nlohmann::json to_json(const CoverageReport& r, bool include_replicates = false);
nlohmann::json to_json(const NormalityReport& r);
nlohmann::json to_json(const ScalingProbeResult& r);

}  // namespace smoothci
