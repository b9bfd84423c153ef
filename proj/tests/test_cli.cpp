#include "../tools/cli.hpp"

#include <doctest.h>
#include <json.hpp>

#include <fstream>
#include <sstream>
#include <string>
#include <vector>

namespace {

struct Result
{
  int code;
  std::string out;
  std::string err;
};

Result run(std::vector<std::string> args)
{
  args.insert(args.begin(), "smoothci");
  std::vector<const char*> argv;
  for (const auto& a : args)
    argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = smoothci::cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
  return { code, out.str(), err.str() };
}

std::string temp_path(const std::string& name)
{
  return std::string(SMOOTHCI_TEST_TMPDIR) + "/" + name;
}

std::string write_file(const std::string& name, const std::string& content)
{
  const auto path = temp_path(name);
  std::ofstream(path) << content;
  return path;
}

std::string repeated(const std::string& value, int count)
{
  std::string s = "y\n";
  for (int i = 0; i < count; ++i)
    s += value + "\n";
  return s;
}

std::string read_file(const std::string& path)
{
  std::ifstream in(path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

nlohmann::json without_timestamp(const std::string& text)
{
  auto j = nlohmann::json::parse(text);
  j.erase("timestamp");
  return j;
}

}  // namespace

TEST_SUITE("cli")
{
  TEST_CASE("ci on constant data covers the constant at the nominal rate")
  {
    const auto path = write_file("const3.csv", repeated("3.0", 1000));
    int covered = 0;
    for (int seed = 0; seed < 100; ++seed) {
      const auto r = run({ "ci", "--input", path, "--h", "0.1", "--seed", std::to_string(seed) });
      REQUIRE(r.code == 0);
      const auto j = nlohmann::json::parse(r.out);
      const auto& iv = j.at("interval");
      covered += iv.at("lower").get<double>() <= 3.0 && 3.0 <= iv.at("upper").get<double>();
      const auto& est = j.at("estimate");
      CHECK(est.at("rHat").get<double>() ==
            doctest::Approx(3.0 * est.at("fHatZero").get<double>() / 0.3989422804014327).epsilon(1e-12));
    }
    // the auxiliary sample alone makes rHat random: coverage is near 0.95, not near 1
    CHECK(covered >= 88);
  }

  TEST_CASE("ci output layout")
  {
    const auto path = write_file("small.csv", "y\n1\n2\n3\n4\n");
    const auto r = run({ "ci", "--input", path, "--h", "0.5", "--level", "0.9" });
    REQUIRE(r.code == 0);
    const auto j = nlohmann::json::parse(r.out);
    CHECK(j.at("schemaVersion") == 1);
    CHECK(j.at("command") == "ci");
    CHECK(j.at("config").at("level") == 0.9);
    CHECK(j.at("config").at("seed").at("algorithm") == "xoshiro256**/splitmix64");
    CHECK(j.at("estimate").at("n") == 4);
    CHECK(run({ "ci", "--input", path, "--h", "0.5", "--level", "0.9" }).out == r.out);
  }

  TEST_CASE("ci exit codes")
  {
    const auto empty = write_file("empty.csv", "");
    auto r = run({ "ci", "--input", empty });
    CHECK(r.code == 2);
    CHECK_FALSE(r.err.empty());

    const auto good = write_file("good.csv", "y\n1\n2\n");
    CHECK(run({ "ci", "--input", good, "--level", "1.5" }).code == 2);
    CHECK(run({ "ci", "--input", temp_path("missing.csv") }).code == 2);

    const auto bad = write_file("bad.csv", "y\n1\nfoo\n2\n\n");
    r = run({ "ci", "--input", bad, "--h", "0.3" });
    CHECK(r.code == 2);
    CHECK(r.err.find('3') != std::string::npos);
    CHECK(r.err.find('5') != std::string::npos);

    const auto zeros = write_file("zeros.csv", repeated("0", 20));
    CHECK(run({ "ci", "--input", zeros, "--plug-in" }).code == 3);
    const auto centred = write_file("centred.csv", "y\n-1\n1\n");
    CHECK(run({ "ci", "--input", centred }).code == 3);
    CHECK(run({ "ci", "--input", zeros, "--h", "0.2" }).code == 0);

    CHECK(run({ "ci", "--input", good, "--h", "0.2", "--plug-in" }).code == 2);
    CHECK(run({ "nonsense" }).code == 2);
  }

  TEST_CASE("simulate")
  {
    const auto a = temp_path("sim_a.csv");
    const auto b = temp_path("sim_b.csv");
    for (const auto& p : { a, b })
      REQUIRE(run({ "simulate", "--arfima-d", "0.09", "--shift", "3", "--n", "100", "--seed", "7", "--out", p }).code == 0);
    CHECK(read_file(a) == read_file(b));

    const auto r = run({ "simulate", "--chain-alpha", "1.5", "--n", "50" });
    REQUIRE(r.code == 0);
    std::istringstream lines(r.out);
    std::string line;
    std::getline(lines, line);
    CHECK(line == "y");
    int rows = 0;
    while (std::getline(lines, line)) {
      CHECK((line == "1" || line == "-1"));
      ++rows;
    }
    CHECK(rows == 50);

    CHECK(run({ "simulate", "--arfima-d", "0.6", "--n", "10" }).code == 2);
    CHECK(run({ "simulate", "--arfima-d", "0.2", "--chain-alpha", "1.5", "--n", "10" }).code == 2);
    CHECK(run({ "simulate", "--n", "0" }).code == 2);
  }

  TEST_CASE("bandwidth command")
  {
    // ySqBar = 2, yBar = 1 over n = 1000
    std::string s = "y\n";
    for (int i = 0; i < 1000; ++i)
      s += (i % 2 ? "0\n" : "2\n");
    const auto path = write_file("bw.csv", s);
    auto r = run({ "bandwidth", "--input", path });
    REQUIRE(r.code == 0);
    auto j = nlohmann::json::parse(r.out);
    CHECK(std::abs(j.at("h").get<double>() - 0.269216) < 2e-6);
    CHECK(j.at("yBar") == 1.0);
    CHECK(j.at("ySqBar") == 2.0);

    r = run({ "bandwidth", "--input", path, "--beta", "0.5" });
    REQUIRE(r.code == 0);
    j = nlohmann::json::parse(r.out);
    CHECK(j.at("admissible") == false);
    CHECK(j.at("verdict").get<std::string>().rfind("inadmissible", 0) == 0);

    r = run({ "bandwidth", "--input", path, "--beta", "1" });
    CHECK(nlohmann::json::parse(r.out).at("admissible") == true);

    const auto zeros = write_file("bw_zeros.csv", repeated("0", 10));
    CHECK(run({ "bandwidth", "--input", zeros }).code == 3);
  }

  TEST_CASE("coverage command")
  {
    auto r = run({ "coverage", "--plug-in", "--arfima-d", "0.49", "--n", "100", "--replicates", "5" });
    CHECK(r.code == 2);
    CHECK(r.err.find("n^-4/5") != std::string::npos);

    const std::vector<std::string> base{ "coverage", "--arfima-d", "0.09", "--shift", "3", "--truncation", "300",
                                         "--n", "200", "--replicates", "12", "--seed", "0x2a" };
    auto one = base;
    one.insert(one.end(), { "--workers", "1" });
    auto eight = base;
    eight.insert(eight.end(), { "--workers", "8", "--per-replicate" });
    auto eight_plain = base;
    eight_plain.insert(eight_plain.end(), { "--workers", "8" });
    const auto r1 = run(one);
    const auto r8 = run(eight_plain);
    REQUIRE(r1.code == 0);
    REQUIRE(r8.code == 0);
    CHECK(without_timestamp(r1.out).dump() == without_timestamp(r8.out).dump());
    const auto j = nlohmann::json::parse(r1.out);
    CHECK(j.at("config").at("bandwidth").at("type") == "plug-in");
    CHECK(j.at("config").at("seed").at("value") == 42);
    CHECK(j.at("report").at("M") == 12);
    CHECK(j.contains("timestamp"));
    CHECK(nlohmann::json::parse(run(eight).out).at("report").at("perReplicate").size() == 12);

    // long memory without an explicit bandwidth falls back to n^-2d
    r = run({ "coverage", "--arfima-d", "0.49", "--truncation", "200", "--n", "100", "--replicates", "3" });
    REQUIRE(r.code == 0);
    const auto fb = nlohmann::json::parse(r.out).at("config").at("bandwidth");
    CHECK(fb.at("type") == "power-law");
    CHECK(fb.at("exponent").get<double>() == doctest::Approx(0.98));

    // a saved config echo reproduces the run
    const auto cfg = write_file("cfg.json", j.at("config").dump());
    const auto again = run({ "coverage", "--config", cfg });
    REQUIRE(again.code == 0);
    CHECK(without_timestamp(again.out).dump() == without_timestamp(r1.out).dump());

    CHECK(run({ "coverage", "--level", "0", "--n", "10" }).code == 2);
  }

  TEST_CASE("probe command")
  {
    auto r = run({ "probe", "--sizes", "64,128,256,512", "--replicates", "100" });
    REQUIRE(r.code == 0);
    const auto j = nlohmann::json::parse(r.out);
    CHECK(std::abs(j.at("result").at("logLogSlope").get<double>() + 1.0) < 0.25);
    CHECK(j.at("theoreticalSlope") == -1.0);
    CHECK(run({ "probe", "--sizes", "64,128", "--replicates", "100" }).code == 2);
    CHECK(run({ "probe", "--sizes", "64,128,256", "--replicates", "10" }).code == 2);
  }
}
