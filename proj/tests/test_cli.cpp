#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <numeric>
#include <sstream>

#include <nlohmann/json.hpp>

#include "cli.hpp"
#include "lrd/series.hpp"

namespace fs = std::filesystem;

namespace {

struct Result {
  int status;
  std::string out;
  std::string err;
};

Result lrd_run(std::vector<std::string> args) {
  args.insert(args.begin(), "lrd");
  std::ostringstream out, err;
  const int status = lrd::cli::run(args, out, err);
  return {status, out.str(), err.str()};
}

fs::path scratch(const std::string& name) {
  const auto dir = fs::temp_directory_path() / ("lrd_cli_test_" + name);
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

std::string write(const fs::path& path, const std::string& text) {
  std::ofstream(path) << text;
  return path.string();
}

std::string slurp(const fs::path& path) {
  std::ifstream f(path, std::ios::binary);
  return {std::istreambuf_iterator<char>(f), {}};
}

std::vector<double> values_of(const std::string& csv) {
  std::istringstream in(csv);
  const auto s = lrd::load_csv(in);
  return {s.values().begin(), s.values().end()};
}

}  // namespace

TEST_CASE("generate is deterministic and fbm integrates fgn") {
  const std::vector<std::string> args{"generate", "--kind", "fgn", "--h", "0.5", "--n", "1024", "--seed", "7"};
  const auto a = lrd_run(args);
  const auto b = lrd_run(args);
  REQUIRE(a.status == 0);
  CHECK(a.out == b.out);
  CHECK(a.out.rfind("timestamp,value\n", 0) == 0);

  auto fgn = values_of(lrd_run({"generate", "--kind", "fgn", "--h", "0.3", "--n", "500", "--seed", "9"}).out);
  const auto fbm = values_of(lrd_run({"generate", "--kind", "fbm", "--h", "0.3", "--n", "500", "--seed", "9"}).out);
  std::partial_sum(fgn.begin(), fgn.end(), fgn.begin());
  REQUIRE(fbm.size() == fgn.size());
  for (std::size_t i = 0; i < fbm.size(); ++i) CHECK(fbm[i] == doctest::Approx(fgn[i]).epsilon(1e-12));
}

TEST_CASE("describe: constant input flags undefined tests and succeeds") {
  const auto dir = scratch("const");
  std::string text = "t,v\n";
  for (int i = 0; i < 30; ++i) text += std::to_string(3600 * i) + ",5\n";
  const auto r = lrd_run({"describe", write(dir / "const.csv", text), "--diff"});
  REQUIRE(r.status == 0);
  const auto j = nlohmann::json::parse(r.out);
  CHECK(j["levels"]["stats"]["sd"] == 0);
  CHECK(j["levels"]["stats"]["degenerate"] == true);
  for (const auto& t : j["levels"]["tests"]) CHECK(t.contains("error"));
  CHECK(j.contains("differences"));
}

TEST_CASE("describe: a gap under the reject policy fails with its position") {
  const auto dir = scratch("gap");
  const auto r = lrd_run({"describe", write(dir / "missing.csv", "t,v\n0,1\n3600,2\n10800,4\n"), "--gaps=reject"});
  CHECK(r.status != 0);
  const auto e = nlohmann::json::parse(r.err);
  CHECK(e["error"]["kind"] == "gap");
  CHECK(e["error"]["stage"] == "ingest");
  CHECK(e["error"]["message"].get<std::string>().find("1970-01-01T01:00:00Z") != std::string::npos);
}

TEST_CASE("usage errors") {
  CHECK(lrd_run({}).status == lrd::cli::kUsage);
  CHECK(lrd_run({"frobnicate"}).status == lrd::cli::kUsage);
  CHECK(lrd_run({"generate", "--kind", "levy"}).status == lrd::cli::kUsage);
  const auto dir = scratch("usage");
  const auto input = write(dir / "short.csv", "t,v\n0,1\n3600,2\n7200,3\n10800,1\n14400,0\n");
  const auto r = lrd_run({"dfa", input});
  CHECK(r.status == lrd::cli::kUsage);
  CHECK(nlohmann::json::parse(r.err)["error"]["kind"] == "invalid_config");
  CHECK(lrd_run({"describe", (dir / "absent.csv").string()}).status == lrd::cli::kFailed);
}

TEST_CASE("dfa on generated fgn: single regime near the true exponent") {
  const auto dir = scratch("dfa");
  const auto input = write(dir / "fgn.csv", lrd_run({"generate", "--kind", "fgn", "--h", "0.7", "--n", "16384", "--seed", "11"}).out);
  const auto r = lrd_run({"dfa", input, "--q=-2,2", "--out-dir", (dir / "out").string()});
  REQUIRE(r.status == 0);
  const auto j = nlohmann::json::parse(r.out);
  CHECK(j["crossover"]["material"] == false);
  CHECK(std::abs(j["hurst"]["h"].get<double>() - 0.7) < 0.05);
  CHECK(j["forced_splits"].size() == 2);
  CHECK(j["generalized_hurst"].size() == 2);
  CHECK(fs::exists(dir / "out" / "curve.csv"));
  CHECK(fs::exists(dir / "out" / "scaling.csv"));
}

TEST_CASE("report is byte-identical across runs and reproducible from its config echo") {
  const auto dir = scratch("report");
  const auto input = write(dir / "in.csv", lrd_run({"generate", "--kind", "fgn", "--h", "0.8", "--n", "20000", "--seed", "2",
                                                    "--start", "2009-06-01T00:00:00Z"}).out);
  const auto a = lrd_run({"report", input, "--out-dir", (dir / "a").string(), "--s-min", "8", "--period", "hour,dow"});
  const auto b = lrd_run({"report", input, "--out-dir", (dir / "b").string(), "--s-min", "8", "--period", "hour,dow"});
  REQUIRE(a.status == 0);
  REQUIRE(b.status == 0);
  CHECK(a.out == b.out);
  for (const auto& entry : fs::directory_iterator(dir / "a"))
    CHECK(slurp(entry.path()) == slurp(dir / "b" / entry.path().filename()));

  const auto c = lrd_run({"report", input, "--out-dir", (dir / "c").string(), "--config", (dir / "a" / "report.json").string()});
  REQUIRE(c.status == 0);
  CHECK(slurp(dir / "c" / "report.json") == slurp(dir / "a" / "report.json"));

  const auto j = nlohmann::json::parse(a.out);
  for (const char* key : {"tool", "config", "input", "levels", "differences", "dfa", "spectral", "files"}) CHECK(j.contains(key));
  CHECK(j["dfa"]["per_year"].size() == 3);  // 2009, 2010, 2011
  CHECK(j["dfa"]["per_year"][1].contains("skipped") == false);
}

TEST_CASE("report names the failing stage") {
  const auto dir = scratch("stage");
  std::string text = "t,v\n";
  for (int i = 0; i < 400; ++i) text += std::to_string(3600 * i) + ",1\n";
  const auto r = lrd_run({"report", write(dir / "flat.csv", text), "--out-dir", (dir / "o").string()});
  CHECK(r.status == lrd::cli::kFailed);
  CHECK(nlohmann::json::parse(r.err)["error"]["stage"] == "dfa");
}
