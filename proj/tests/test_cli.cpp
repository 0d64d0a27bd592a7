#include <doctest.h>

#include "mcnet/cli.hpp"
#include "mcnet/io.hpp"

#include <filesystem>
#include <sstream>

using namespace mcnet;
namespace fs = std::filesystem;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = run_cli(args, out, err);
  return {code, out.str(), err.str()};
}

fs::path scratch(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / ("mcnet_cli_" + name);
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

}  // namespace

TEST_CASE("usage errors exit with 2") {
  CHECK(run({}).code == kExitUsage);
  CHECK(run({"bogus"}).code == kExitUsage);
  CHECK(run({"steady", "--graph", "x"}).code == kExitUsage);
  CHECK(run({"verify", "--suite", "nope"}).code == kExitUsage);
  const Run missing = run({"steady", "--graph", "/nonexistent.txt", "--params", "/nonexistent.json"});
  CHECK(missing.code == kExitUsage);
  CHECK(missing.err.find("error:") != std::string::npos);
}

TEST_CASE("help exits with 0") {
  const Run r = run({"--help"});
  CHECK(r.code == kExitOk);
  CHECK(r.out.find("simulate") != std::string::npos);
}

TEST_CASE("malformed graph reports its line") {
  const fs::path dir = scratch("badgraph");
  write_text_file((dir / "g.txt").string(), "3\n0 1 1\n1 1 1\n");
  write_text_file((dir / "p.json").string(), R"({"alpha": 1, "beta": 1, "gamma01": 1, "gamma10": 0})");
  const Run r = run({"steady", "--graph", (dir / "g.txt").string(), "--params", (dir / "p.json").string()});
  CHECK(r.code == kExitUsage);
  CHECK(r.err.find("g.txt:3") != std::string::npos);
}

TEST_CASE("preset then steady reproduces the SIS equilibrium") {
  const fs::path dir = scratch("sis");
  REQUIRE(run({"preset", "sis", "--out-dir", dir.string()}).code == kExitOk);
  const Run r = run({"steady", "--graph", (dir / "graph.txt").string(), "--params",
                     (dir / "params.json").string(), "--method", "ode"});
  REQUIRE(r.code == kExitOk);
  const Json j = Json::parse(r.out);
  for (const auto& x : j["p_bar"]) CHECK(x.get<double>() == doctest::Approx(0.5).epsilon(1e-8));
  CHECK(j["method"] == "ode");
  CHECK(j.contains("extremum_check"));
}

TEST_CASE("presets write valid instances") {
  for (const char* name : {"homogeneous", "gamma-hat-zero"}) {
    const fs::path dir = scratch(name);
    REQUIRE(run({"preset", name, "--out-dir", dir.string()}).code == kExitOk);
    const Run r = run({"steady", "--graph", (dir / "graph.txt").string(), "--params",
                       (dir / "params.json").string()});
    CHECK(r.code == kExitOk);
    const Json j = Json::parse(r.out);
    CHECK(j["residual"].get<double>() < 1e-10);
  }
  CHECK(run({"preset", "sis", "--alpha", "1", "--out-dir", scratch("sisbad").string()}).code == kExitUsage);
  CHECK(run({"preset", "unknown", "--out-dir", scratch("unknown").string()}).code == kExitUsage);
}

TEST_CASE("simulate writes a trajectory and a summary") {
  const fs::path dir = scratch("simulate");
  REQUIRE(run({"preset", "homogeneous", "--out-dir", dir.string()}).code == kExitOk);
  const std::string g = (dir / "graph.txt").string();
  const std::string p = (dir / "params.json").string();
  const std::string ref = (dir / "steady.json").string();
  REQUIRE(run({"steady", "--graph", g, "--params", p, "--out", ref}).code == kExitOk);
  const std::string csv = (dir / "traj.csv").string();
  const Run r = run({"simulate", "--graph", g, "--params", p, "--t-end", "0.5", "--dt", "0.01",
                     "--p0", "0.9", "--reference", ref, "--out", csv, "--record-every", "10"});
  REQUIRE(r.code == kExitOk);
  const Json s = Json::parse(r.out);
  CHECK(s["samples"] == 6);
  CHECK(s["final_time"].get<double>() == doctest::Approx(0.5));
  CHECK(s["has_entropy"] == true);
  const std::string text = read_text_file(csv);
  CHECK(text.rfind("t,p_0,", 0) == 0);
  CHECK(text.find(",residual,entropy\n") != std::string::npos);

  CHECK(run({"simulate", "--graph", g, "--params", p, "--t-end", "1", "--p0", "1.5", "--out", csv}).code ==
        kExitUsage);
  CHECK(run({"simulate", "--graph", g, "--params", p, "--t-end", "1", "--p0", "0.1,0.2", "--out", csv})
            .code == kExitUsage);
}

TEST_CASE("numerical failure exits with 3") {
  const fs::path dir = scratch("numerical");
  write_text_file((dir / "g.txt").string(), "4\n0 1 1\n1 2 1\n2 3 1\n3 0 1\n");
  write_text_file((dir / "p.json").string(),
                  R"({"alpha": 1, "beta": 1, "gamma01": 1e100, "gamma10": 0})");
  const Run r = run({"simulate", "--graph", (dir / "g.txt").string(), "--params",
                     (dir / "p.json").string(), "--t-end", "1", "--p0", "0.3,0.6,0.2,0.9", "--out",
                     (dir / "t.csv").string()});
  CHECK(r.code == kExitNumerical);
}

TEST_CASE("verify output is deterministic for a fixed seed") {
  const Run a = run({"verify", "--suite", "all", "--trials", "5", "--seed", "7"});
  const Run b = run({"verify", "--suite", "all", "--trials", "5", "--seed", "7"});
  CHECK(a.code == b.code);
  CHECK(a.out == b.out);
  const Json j = Json::parse(a.out);
  CHECK(j["seed"] == 7);
  CHECK(j["ok"] == (a.code == kExitOk));
  const Run c = run({"verify", "--suite", "all", "--trials", "5", "--seed", "8"});
  CHECK(c.out != a.out);
}

TEST_CASE("verify exit status follows the violation count") {
  const Run ok = run({"verify", "--suite", "embedding", "--trials", "20", "--seed", "3"});
  CHECK(ok.code == kExitOk);
  CHECK(Json::parse(ok.out)["violation_count"] == 0);
  // The lemma31 inequality fails for some interior pairs; the suite reports them.
  const Run lem = run({"verify", "--suite", "lemmas", "--trials", "200", "--seed", "7"});
  const Json j = Json::parse(lem.out);
  CHECK(lem.code == kExitViolation);
  CHECK(j["properties"]["lemma31_nonpositive"]["status"] == "fail");
  CHECK(j["properties"]["lemma42_nonnegative"]["status"] == "pass");
  CHECK(j["violations"].size() <= 20);
  CHECK(j["violations"][0].contains("instance"));
}

TEST_CASE("verify on a fixed instance") {
  const fs::path dir = scratch("verify_fixed");
  REQUIRE(run({"preset", "gamma-hat-zero", "--out-dir", dir.string()}).code == kExitOk);
  const Run r = run({"verify", "--suite", "bounds", "--trials", "2", "--graph",
                     (dir / "graph.txt").string(), "--params", (dir / "params.json").string()});
  REQUIRE(r.code == kExitOk);
  const Json j = Json::parse(r.out);
  CHECK(j["instance"] == "fixed");
  CHECK(j["properties"]["variance_bound"]["status"] == "not applicable");
  CHECK(run({"verify", "--graph", (dir / "graph.txt").string()}).code == kExitUsage);
}
