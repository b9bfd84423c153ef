#include "cli.hpp"

#include "smoothci/bandwidth.hpp"
#include "smoothci/csv.hpp"
#include "smoothci/errors.hpp"
#include "smoothci/estimator.hpp"
#include "smoothci/inference.hpp"
#include "smoothci/montecarlo.hpp"
#include "smoothci/processes.hpp"
#include "smoothci/random.hpp"
#include "smoothci/report.hpp"
#include "smoothci/smoothing.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <chrono>
#include <cmath>
#include <charconv>
#include <ctime>
#include <fstream>
#include <optional>
#include <ostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

namespace smoothci::cli {

namespace {

using nlohmann::json;

std::vector<double> parse_number_list(const std::string& text, const char* what)
{
  std::vector<double> values;
  std::string_view rest = text;
  while (!rest.empty()) {
    const auto comma = rest.find(',');
    std::string_view item = rest.substr(0, comma);
    while (!item.empty() && item.front() == ' ')
      item.remove_prefix(1);
    while (!item.empty() && item.back() == ' ')
      item.remove_suffix(1);
    double v = 0.0;
    auto [ptr, ec] = std::from_chars(item.data(), item.data() + item.size(), v);
    if (item.empty() || ec != std::errc() || ptr != item.data() + item.size())
      throw std::invalid_argument(std::string(what) + ": malformed number '" + std::string(item) + "'");
    values.push_back(v);
    if (comma == std::string_view::npos)
      break;
    rest.remove_prefix(comma + 1);
  }
  if (values.empty())
    throw std::invalid_argument(std::string(what) + ": empty list");
  return values;
}

std::string utc_timestamp()
{
  const auto now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

void emit(const json& doc, const std::string& out_path, std::ostream& out)
{
  const std::string text = doc.dump(2) + "\n";
  if (out_path.empty()) {
    out << text;
    return;
  }
  std::ofstream file(out_path, std::ios::binary);
  if (!file)
    throw std::invalid_argument("cannot write '" + out_path + "'");
  file << text;
}

struct SeedFlags
{
  std::string seed = "0";
  bool entropy = false;

  void add(CLI::App* app)
  {
    app->add_option("--seed", seed, "master seed, decimal or 0x-hex")->capture_default_str();
    app->add_flag("--entropy-seed", entropy, "draw the seed from the OS (recorded in the report)");
  }

  MasterSeed resolve() const
  {
    if (entropy) {
      std::random_device rd;
      return MasterSeed{ (static_cast<std::uint64_t>(rd()) << 32) ^ rd() };
    }
    return parse_seed(seed);
  }
};

struct ProcessFlags
{
  double arfimaD = 0.0;
  double chainAlpha = 0.0;
  std::string coeffs;
  std::string innovation = "normal";
  double shift = 0.0;
  std::size_t truncation = 10000;
  CLI::Option* dOpt = nullptr;
  CLI::Option* alphaOpt = nullptr;
  CLI::Option* coeffOpt = nullptr;
  CLI::Option* innovOpt = nullptr;
  CLI::Option* shiftOpt = nullptr;
  CLI::Option* truncOpt = nullptr;

  void add(CLI::App* app)
  {
    dOpt = app->add_option("--arfima-d", arfimaD, "ARFIMA(0,d,0) memory parameter in (0, 0.5)");
    alphaOpt = app->add_option("--chain-alpha", chainAlpha, "signed-Pareto chain tail exponent in (1, 2)");
    coeffOpt = app->add_option("--coeffs", coeffs, "linear process coefficients a_0,a_1,...");
    innovOpt = app->add_option("--innovation", innovation, "normal | uniform | chisq2")->capture_default_str();
    shiftOpt = app->add_option("--shift", shift, "additive mean of the series")->capture_default_str();
    truncOpt = app->add_option("--truncation", truncation, "ARFIMA moving-average truncation lag")->capture_default_str();
    dOpt->excludes(alphaOpt)->excludes(coeffOpt);
    alphaOpt->excludes(coeffOpt);
  }

  bool any() const
  {
    return dOpt->count() || alphaOpt->count() || coeffOpt->count() || innovOpt->count() ||
           shiftOpt->count() || truncOpt->count();
  }

  ProcessSpec build() const
  {
    const InnovationDist innov = parse_innovation(innovation);
    ProcessSpec spec;
    if (dOpt->count()) {
      spec = Arfima{ arfimaD, innov, truncation, shift };
    } else if (alphaOpt->count()) {
      if (shiftOpt->count() || innovOpt->count())
        throw std::invalid_argument("--shift/--innovation do not apply to the sign chain");
      spec = SignedParetoChain{ chainAlpha };
    } else if (coeffOpt->count()) {
      const auto c = parse_number_list(coeffs, "--coeffs");
      spec = LinearProcess{ Eigen::Map<const Eigen::VectorXd>(c.data(), static_cast<Eigen::Index>(c.size())),
                            innov, shift };
    } else {
      spec = Iid{ innov, shift };
    }
    validate(spec);
    return spec;
  }
};

struct BandwidthFlags
{
  double h = 0.0;
  double powerLawExp = 0.0;
  double powerLawScale = 1.0;
  bool plugIn = false;
  CLI::Option* hOpt = nullptr;
  CLI::Option* expOpt = nullptr;
  CLI::Option* scaleOpt = nullptr;
  CLI::Option* plugOpt = nullptr;

  void add(CLI::App* app)
  {
    // "--h" would clash with the short help flag
    app->set_help_flag("--help", "Print this help message and exit");
    hOpt = app->add_option("--h", h, "fixed bandwidth");
    expOpt = app->add_option("--power-law-exp", powerLawExp, "bandwidth h = scale * n^-exp, exp in (0, 1)");
    scaleOpt = app->add_option("--power-law-scale", powerLawScale, "scale of the power-law bandwidth");
    plugOpt = app->add_flag("--plug-in", plugIn, "plug-in MSE-optimal bandwidth");
    hOpt->excludes(expOpt)->excludes(plugOpt);
    expOpt->excludes(plugOpt);
    scaleOpt->needs(expOpt);
  }

  bool any() const { return hOpt->count() || expOpt->count() || plugOpt->count(); }

  std::optional<BandwidthPolicy> explicit_policy() const
  {
    if (hOpt->count())
      return FixedBandwidth{ h };
    if (expOpt->count())
      return PowerLaw{ powerLawExp, powerLawScale };
    if (plugOpt->count())
      return PlugInOptimal{};
    return std::nullopt;
  }
};

struct SmootherFlags
{
  std::string kernel = "gaussian";
  std::string smoothing = "normal";
  CLI::Option* kOpt = nullptr;
  CLI::Option* sOpt = nullptr;

  void add(CLI::App* app)
  {
    kOpt = app->add_option("--kernel", kernel, "gaussian | epanechnikov | uniform")->capture_default_str();
    sOpt = app->add_option("--smoothing", smoothing, "normal | uniform | uniform:a,b")->capture_default_str();
  }
};

void check_level(double level)
{
  if (!(level > 0.0 && level < 1.0))
    throw std::invalid_argument("--level must lie in (0, 1)");
}

//! Default used when no bandwidth flag is given: plug-in when the memory
//! allows it, n^-2d for ARFIMA otherwise.
BandwidthPolicy default_policy(const ProcessSpec& spec)
{
  if (check_plug_in_admissible(variance_decay_exponent(spec)))
    return PlugInOptimal{};
  if (const auto* a = std::get_if<Arfima>(&spec))
    return PowerLaw{ 2.0 * a->d, 1.0 };
  throw std::invalid_argument(
    "plug-in bandwidth inadmissible for this process (var(mean) is not o(n^-4/5)); "
    "pass --h or --power-law-exp");
}

// ---- JSON configuration for `coverage --config` ---------------------------

ProcessSpec process_from_json(const json& j)
{
  const std::string type = j.at("type").get<std::string>();
  const InnovationDist innov = parse_innovation(j.value("innovation", std::string("normal")));
  const double shift = j.value("shift", 0.0);
  if (type == "iid")
    return Iid{ innov, shift };
  if (type == "arfima")
    return Arfima{ j.at("d").get<double>(), innov, j.value("truncation", std::size_t{ 10000 }), shift };
  if (type == "linear") {
    const auto c = j.at("coeffs").get<std::vector<double>>();
    return LinearProcess{ Eigen::Map<const Eigen::VectorXd>(c.data(), static_cast<Eigen::Index>(c.size())),
                          innov, shift };
  }
  if (type == "signed-pareto-chain")
    return SignedParetoChain{ j.at("alphaTail").get<double>() };
  throw std::invalid_argument("config: unknown process type '" + type + "'");
}

BandwidthPolicy policy_from_json(const json& j)
{
  const std::string type = j.at("type").get<std::string>();
  if (type == "plug-in")
    return PlugInOptimal{};
  if (type == "power-law")
    return PowerLaw{ j.at("exponent").get<double>(), j.value("scale", 1.0) };
  if (type == "fixed")
    return FixedBandwidth{ j.at("h").get<double>() };
  throw std::invalid_argument("config: unknown bandwidth type '" + type + "'");
}

MasterSeed seed_from_json(const json& j)
{
  if (j.is_number_unsigned())
    return MasterSeed{ j.get<std::uint64_t>() };
  if (j.is_string())
    return parse_seed(j.get<std::string>());
  if (j.is_object())
    return seed_from_json(j.at("value"));
  throw std::invalid_argument("config: seed must be an unsigned integer or a string");
}

//! Reads a config document; accepts both hand-written files and the
//! `config` echo of an earlier coverage report.
CoverageExperiment experiment_from_json(const json& j, std::optional<BandwidthPolicy>& policy)
{
  CoverageExperiment e;
  if (j.contains("process"))
    e.process = process_from_json(j.at("process"));
  e.n = j.value("n", e.n);
  e.level = j.value("level", e.level);
  if (j.contains("bandwidth"))
    policy = policy_from_json(j.at("bandwidth"));
  if (j.contains("kernel"))
    e.kernel = parse_kernel(j.at("kernel").get<std::string>());
  if (j.contains("smoothing"))
    e.smoothing = parse_smoothing(j.at("smoothing").get<std::string>());
  e.replicates = j.value("replicates", e.replicates);
  e.firstReplicate = j.value("firstReplicate", e.firstReplicate);
  if (j.contains("seed"))
    e.masterSeed = seed_from_json(j.at("seed"));
  return e;
}

// ---- subcommands -----------------------------------------------------------

struct CiCommand
{
  std::string input;
  double level = 0.95;
  double beta = 0.0;
  CLI::Option* betaOpt = nullptr;
  std::string out;
  SeedFlags seed;
  BandwidthFlags bw;
  SmootherFlags sm;

  void add(CLI::App& app)
  {
    auto* sub = app.add_subcommand("ci", "confidence interval for the mean of a series in a CSV file");
    sub->add_option("--input", input, "CSV file with header 'y'")->required();
    sub->add_option("--level", level, "confidence level")->capture_default_str();
    betaOpt = sub->add_option("--beta", beta, "declared variance decay exponent of the mean");
    sub->add_option("--out", out, "write the JSON report here instead of stdout");
    seed.add(sub);
    bw.add(sub);
    sm.add(sub);
  }

  int run(std::ostream& os) const
  {
    check_level(level);
    const Kernel k = parse_kernel(sm.kernel);
    const SmoothingDistribution d = parse_smoothing(sm.smoothing);
    const BandwidthPolicy policy = bw.explicit_policy().value_or(PlugInOptimal{});
    std::optional<double> declared;
    if (betaOpt->count())
      declared = beta;
    validate_policy(policy, declared);

    const Eigen::VectorXd y = read_series_csv_file(input);
    const std::size_t n = static_cast<std::size_t>(y.size());
    const MasterSeed master = seed.resolve();
    Rng rng = replicate_seed(master, 0);
    const Eigen::VectorXd x = sample_smoothing(d, n, rng);
    const double f0 = density_at_zero(d);
    const double h = resolve_bandwidth(policy, sample_moments(y), n, k, d);
    const EstimateResult est = estimate(y, x, k, f0, h);
    const ConfidenceInterval ci = confidence_interval(est.rHat, est.ySqBar, n, h, k, f0, level);

    json config{ { "input", input },
                 { "n", n },
                 { "level", level },
                 { "bandwidth", to_json(policy) },
                 { "kernel", k.name() },
                 { "smoothing", d.name() },
                 { "seed", to_json(master) } };
    if (declared)
      config["beta"] = *declared;
    const json doc{ { "schemaVersion", schema_version },
                    { "command", "ci" },
                    { "config", config },
                    { "estimate", to_json(est) },
                    { "interval", to_json(ci) } };
    emit(doc, out, os);
    return ok;
  }
};

struct SimulateCommand
{
  std::size_t n = 0;
  std::string out;
  SeedFlags seed;
  ProcessFlags process;

  void add(CLI::App& app)
  {
    auto* sub = app.add_subcommand("simulate", "write a simulated series as CSV with header 'y'");
    sub->add_option("--n", n, "series length")->required();
    sub->add_option("--out", out, "output CSV path (stdout if omitted)");
    seed.add(sub);
    process.add(sub);
  }

  int run(std::ostream& os) const
  {
    if (n < 1)
      throw std::invalid_argument("--n must be at least 1");
    const ProcessSpec spec = process.build();
    Rng rng = replicate_seed(seed.resolve(), 0);
    const Eigen::VectorXd y = generate(spec, n, rng);
    if (out.empty()) {
      write_series_csv(os, y);
      return ok;
    }
    std::ofstream file(out, std::ios::binary);
    if (!file)
      throw std::invalid_argument("cannot write '" + out + "'");
    write_series_csv(file, y);
    return ok;
  }
};

struct CoverageCommand
{
  std::string config;
  std::size_t n = 1000;
  std::size_t replicates = 100;
  std::size_t first = 0;
  double level = 0.95;
  unsigned workers = 1;
  bool perReplicate = false;
  std::string out;
  CLI::Option* nOpt = nullptr;
  CLI::Option* repOpt = nullptr;
  CLI::Option* firstOpt = nullptr;
  CLI::Option* levelOpt = nullptr;
  CLI::Option* seedOpt = nullptr;
  SeedFlags seed;
  ProcessFlags process;
  BandwidthFlags bw;
  SmootherFlags sm;

  void add(CLI::App& app)
  {
    auto* sub = app.add_subcommand("coverage", "Monte Carlo coverage of the confidence interval");
    sub->add_option("--config", config, "JSON experiment file; flags given explicitly override it");
    nOpt = sub->add_option("--n", n, "series length")->capture_default_str();
    repOpt = sub->add_option("--replicates", replicates, "number of replicates M")->capture_default_str();
    firstOpt = sub->add_option("--first-replicate", first, "index of the first replicate")->capture_default_str();
    levelOpt = sub->add_option("--level", level, "nominal confidence level")->capture_default_str();
    sub->add_option("--workers", workers, "worker threads (does not change the output)")->capture_default_str();
    sub->add_flag("--per-replicate", perReplicate, "include every replicate in the report");
    sub->add_option("--out", out, "write the JSON report here instead of stdout");
    seed.add(sub);
    seedOpt = sub->get_option("--seed");
    process.add(sub);
    bw.add(sub);
    sm.add(sub);
  }

  CoverageExperiment experiment() const
  {
    CoverageExperiment e;
    std::optional<BandwidthPolicy> policy;
    if (!config.empty()) {
      std::ifstream in(config);
      if (!in)
        throw std::invalid_argument("cannot open config '" + config + "'");
      json j;
      try {
        in >> j;
      } catch (const json::exception& ex) {
        throw std::invalid_argument(std::string("config: ") + ex.what());
      }
      try {
        e = experiment_from_json(j.contains("config") ? j.at("config") : j, policy);
      } catch (const json::exception& ex) {
        throw std::invalid_argument(std::string("config: ") + ex.what());
      }
    }
    if (process.any() || config.empty())
      e.process = process.build();
    if (nOpt->count() || config.empty())
      e.n = n;
    if (repOpt->count() || config.empty())
      e.replicates = replicates;
    if (firstOpt->count() || config.empty())
      e.firstReplicate = first;
    if (levelOpt->count() || config.empty())
      e.level = level;
    if (seedOpt->count() || seed.entropy || config.empty())
      e.masterSeed = seed.resolve();
    if (sm.kOpt->count())
      e.kernel = parse_kernel(sm.kernel);
    if (sm.sOpt->count())
      e.smoothing = parse_smoothing(sm.smoothing);
    if (auto p = bw.explicit_policy())
      policy = p;
    e.bandwidth = policy ? *policy : default_policy(e.process);
    check_level(e.level);
    return e;
  }

  int run(std::ostream& os) const
  {
    const CoverageExperiment e = experiment();
    const CoverageReport report = run_coverage(e, workers);
    const json doc{ { "schemaVersion", schema_version },
                    { "command", "coverage" },
                    { "config", to_json(e) },
                    { "report", to_json(report, perReplicate) },
                    { "timestamp", utc_timestamp() } };
    emit(doc, out, os);
    return ok;
  }
};

struct BandwidthCommand
{
  std::string input;
  double beta = 0.0;
  CLI::Option* betaOpt = nullptr;
  std::string out;
  SmootherFlags sm;

  void add(CLI::App& app)
  {
    auto* sub = app.add_subcommand("bandwidth", "plug-in optimal bandwidth for a series in a CSV file");
    sub->add_option("--input", input, "CSV file with header 'y'")->required();
    betaOpt = sub->add_option("--beta", beta, "declared variance decay exponent of the mean");
    sub->add_option("--out", out, "write the JSON report here instead of stdout");
    sm.add(sub);
  }

  int run(std::ostream& os) const
  {
    const Kernel k = parse_kernel(sm.kernel);
    const SmoothingDistribution d = parse_smoothing(sm.smoothing);
    second_derivative_at_zero(d);
    const Eigen::VectorXd y = read_series_csv_file(input);
    const std::size_t n = static_cast<std::size_t>(y.size());
    const SampleMoments m = sample_moments(y);
    const double h = optimal_bandwidth(m.ySqBar, m.yBar, n, k, d);

    json doc{ { "schemaVersion", schema_version },
              { "command", "bandwidth" },
              { "input", input },
              { "n", n },
              { "yBar", m.yBar },
              { "ySqBar", m.ySqBar },
              { "kernel", k.name() },
              { "smoothing", d.name() },
              { "h", h } };
    if (betaOpt->count()) {
      const bool admissible = check_plug_in_admissible(beta);
      doc["beta"] = beta;
      doc["admissible"] = admissible;
      doc["verdict"] = admissible ? "admissible" : "inadmissible: var(mean) is not o(n^-4/5); use a power-law bandwidth";
    } else {
      doc["admissible"] = nullptr;
      doc["verdict"] = "unchecked: pass --beta to check the n^-4/5 restriction";
    }
    emit(doc, out, os);
    return ok;
  }
};

struct ProbeCommand
{
  std::string sizes = "256,512,1024,2048,4096,8192";
  std::size_t replicates = 200;
  unsigned workers = 1;
  std::string out;
  SeedFlags seed;
  ProcessFlags process;

  void add(CLI::App& app)
  {
    auto* sub = app.add_subcommand("probe", "log-log scaling of the variance of the mean (or of S_n for the chain)");
    sub->add_option("--sizes", sizes, "comma-separated sample sizes (each >= 64)")->capture_default_str();
    sub->add_option("--replicates", replicates, "replicates per size (>= 50)")->capture_default_str();
    sub->add_option("--workers", workers, "worker threads (does not change the output)")->capture_default_str();
    sub->add_option("--out", out, "write the JSON report here instead of stdout");
    seed.add(sub);
    process.add(sub);
  }

  int run(std::ostream& os) const
  {
    const ProcessSpec spec = process.build();
    std::vector<std::size_t> ns;
    for (double v : parse_number_list(sizes, "--sizes")) {
      if (!(v >= 1.0) || v != std::floor(v))
        throw std::invalid_argument("--sizes: sample sizes must be positive integers");
      ns.push_back(static_cast<std::size_t>(v));
    }
    const MasterSeed master = seed.resolve();
    const ScalingProbeResult result = variance_scaling_probe(spec, ns, replicates, master, workers);
    double expected = -variance_decay_exponent(spec);
    if (const auto* c = std::get_if<SignedParetoChain>(&spec))
      expected = 2.0 / c->alphaTail;
    const json doc{ { "schemaVersion", schema_version },
                    { "command", "probe" },
                    { "config", { { "process", to_json(spec) },
                                  { "sampleSizes", ns },
                                  { "replicates", replicates },
                                  { "seed", to_json(master) } } },
                    { "result", to_json(result) },
                    { "theoreticalSlope", expected },
                    { "timestamp", utc_timestamp() } };
    emit(doc, out, os);
    return ok;
  }
};

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err)
{
  CLI::App app{ "smoothci: normal confidence intervals for the mean of dependent series "
                "by auxiliary kernel smoothing" };
  app.require_subcommand(1);

  CiCommand ci;
  SimulateCommand simulate;
  CoverageCommand coverage;
  BandwidthCommand bandwidth;
  ProbeCommand probe;
  ci.add(app);
  simulate.add(app);
  coverage.add(app);
  bandwidth.add(app);
  probe.add(app);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return ok;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return ok;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return config_error;
  }

  try {
    if (app.got_subcommand("ci"))
      return ci.run(out);
    if (app.got_subcommand("simulate"))
      return simulate.run(out);
    if (app.got_subcommand("coverage"))
      return coverage.run(out);
    if (app.got_subcommand("bandwidth"))
      return bandwidth.run(out);
    if (app.got_subcommand("probe"))
      return probe.run(out);
  } catch (const StatisticalError& e) {
    err << "error: " << e.what() << "\n";
    return statistical_error;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << "\n";
    return config_error;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << "\n";
    return internal_error;
  }
  return config_error;
}

}  // namespace smoothci::cli
