#include "cli.hpp"

#include <doctest.h>
#include <json.hpp>

#include <filesystem>
#include <fstream>
#include <sstream>

namespace fs = std::filesystem;
using mdgm::cli::run;

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result call(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = run(args, out, err);
  return {code, out.str(), err.str()};
}

fs::path scratch(const std::string& name) {
  const fs::path p = fs::temp_directory_path() / ("mdgm_cli_test_" + name);
  fs::remove_all(p);
  fs::create_directories(p);
  return p;
}

std::string slurp(const fs::path& p) {
  std::ifstream f(p);
  std::stringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

void spit(const fs::path& p, const std::string& text) {
  std::ofstream f(p);
  f << text;
}

std::size_t lines(const std::string& s) { return std::count(s.begin(), s.end(), '\n'); }

}  // namespace

TEST_CASE("version and usage") {
  CHECK(call({"--version"}).code == 0);
  CHECK(call({"--version"}).out.find("mdgm") != std::string::npos);
  CHECK(call({}).code == 2);
  CHECK(call({"frobnicate"}).code == 2);
  CHECK(call({"simulate", "--order", "third"}).code == 2);
  CHECK(call({"simulate", "--no-such-flag"}).code == 2);
  CHECK(call({"simulate", "--cftp-method", "gibbs"}).code == 2);
  CHECK(call({"count", "--help"}).code == 0);
}

TEST_CASE("count") {
  CHECK(call({"count", "--rows", "3", "--cols", "3", "--what", "trees"}).out == "192\n");
  const auto dir = scratch("count");
  spit(dir / "c4.csv", "0,1\n1,2\n2,3\n3,0\n");
  spit(dir / "tree.csv", "0,1\n1,2\n1,3\n");
  CHECK(call({"count", "--graph", (dir / "c4.csv").string(), "--what", "orientations"}).out == "14\n");
  CHECK(call({"count", "--graph", (dir / "tree.csv").string()}).out == "1\n");
  CHECK(call({"count", "--graph", (dir / "c4.csv").string(), "--rows", "2"}).code == 2);
  CHECK(call({"count"}).code == 2);
  CHECK(call({"count", "--rows", "4", "--cols", "4", "--order", "second", "--what", "orientations"})
            .code == 1);
  CHECK(call({"count", "--graph", (dir / "missing.csv").string()}).code == 1);
}

TEST_CASE("simulate is byte-identical across runs and thread counts") {
  const std::vector<std::string> base{"simulate", "--rows", "3", "--cols", "3", "--order", "second",
                                      "--beta-grid", "0.1", "--eta", "0.05", "--obs", "fixed:2",
                                      "--reps", "2", "--models", "mdgm-st", "--seed", "7",
                                      "--iters", "100", "--burnin", "50"};
  const auto a = call(base);
  REQUIRE(a.code == 0);
  CHECK(lines(a.out) == 2);
  CHECK(call(base).out == a.out);
  auto threaded = base;
  threaded.insert(threaded.end(), {"--threads", "2"});
  CHECK(call(threaded).out == a.out);

  const auto dir = scratch("simulate");
  auto to_dir = base;
  to_dir.insert(to_dir.end(), {"--out", dir.string()});
  REQUIRE(call(to_dir).code == 0);
  CHECK(slurp(dir / "study.csv") == a.out);
  const auto manifest = nlohmann::json::parse(slurp(dir / "manifest.json"));
  CHECK(manifest["command"] == "simulate");
  CHECK(manifest["resolved"]["seed"] == "7");
  CHECK(manifest["resolved"]["order"] == "second");

  CHECK(call({"simulate", "--eta", "0.6", "--reps", "1"}).code == 2);
  CHECK(call({"simulate", "--obs", "poisson:-2"}).code == 2);
  CHECK(call({"simulate", "--models", "mdgm-xx"}).code == 2);
  CHECK(call({"simulate", "--iters", "10", "--burnin", "10"}).code == 2);
}

TEST_CASE("config file with flag overrides") {
  const auto dir = scratch("config");
  spit(dir / "cfg.json", R"({"rows": 3, "cols": 3, "order": "second", "beta-grid": [0.1, 0.2],
                               "eta": 0.05, "reps": 1, "models": ["amrf"], "seed": 3,
                               "iters": 60, "burnin": 20})");
  const auto a = call({"simulate", "--config", (dir / "cfg.json").string()});
  REQUIRE(a.code == 0);
  CHECK(lines(a.out) == 3);
  const auto b = call({"simulate", "--config", (dir / "cfg.json").string(), "--beta-grid", "0.1"});
  REQUIRE(b.code == 0);
  CHECK(lines(b.out) == 2);

  spit(dir / "bad.json", R"({"rows": 3, "colour": "blue"})");
  const auto c = call({"simulate", "--config", (dir / "bad.json").string()});
  CHECK(c.code == 2);
  CHECK(c.err.find("colour") != std::string::npos);
  spit(dir / "broken.json", "{rows: 3");
  CHECK(call({"simulate", "--config", (dir / "broken.json").string()}).code == 2);
}

TEST_CASE("fit writes samples and summaries") {
  const auto dir = scratch("fit");
  std::string data = "unit_id,value\n";
  for (int i = 0; i < 9; ++i) data += std::to_string(i) + "," + std::to_string(i % 2) + "\n";
  data += "4,1\n";
  spit(dir / "ratings.csv", data);
  for (const char* model : {"amrf", "mdgm-st"}) {
    const auto out = dir / model;
    const auto r = call({"fit", "--rows", "3", "--cols", "3", "--data", (dir / "ratings.csv").string(),
                         "--model", model, "--iters", "500", "--burnin", "100", "--seed", "1",
                         "--out", out.string()});
    REQUIRE_MESSAGE(r.code == 0, r.err);
    const std::string samples = slurp(out / "samples.jsonl");
    CHECK(lines(samples) == 401);
    CHECK(lines(slurp(out / "posterior_mean_z.csv")) == 10);
    CHECK(lines(slurp(out / "id_map.csv")) == 10);
    CHECK(fs::exists(out / "manifest.json"));
  }
  CHECK(call({"fit", "--rows", "3", "--cols", "3", "--out", dir.string()}).code == 2);
  CHECK(call({"fit", "--rows", "3", "--cols", "3", "--data", (dir / "ratings.csv").string()}).code == 2);

  spit(dir / "stray.csv", "0,1\n12,0\nabc,1\n");
  const auto bad = call({"fit", "--rows", "3", "--cols", "3", "--data", (dir / "stray.csv").string(),
                         "--out", (dir / "x").string()});
  CHECK(bad.code == 1);
  CHECK(bad.err.find("12") != std::string::npos);
  CHECK(bad.err.find("abc") != std::string::npos);
}

TEST_CASE("fit with named units") {
  const auto dir = scratch("named");
  spit(dir / "graph.csv", "0,1\n1,2\n2,0\n");
  spit(dir / "ids.csv", "unit_id,index\nA,0\nB,1\nC,2\n");
  spit(dir / "ratings.csv", "A,1\nA,1\nC,0\n");
  const auto r = call({"fit", "--graph", (dir / "graph.csv").string(), "--id-map",
                       (dir / "ids.csv").string(), "--data", (dir / "ratings.csv").string(),
                       "--iters", "50", "--burnin", "10", "--out", (dir / "o").string()});
  REQUIRE_MESSAGE(r.code == 0, r.err);
  CHECK(slurp(dir / "o" / "id_map.csv") == "unit_id,index\nA,0\nB,1\nC,2\n");
  CHECK(slurp(dir / "o" / "posterior_mean_z.csv").find("\nB,1,") != std::string::npos);

  spit(dir / "ratings2.csv", "A,1\nZ,0\n");
  const auto bad = call({"fit", "--graph", (dir / "graph.csv").string(), "--id-map",
                         (dir / "ids.csv").string(), "--data", (dir / "ratings2.csv").string(),
                         "--out", (dir / "o2").string()});
  CHECK(bad.code == 1);
  CHECK(bad.err.find("Z") != std::string::npos);
}

TEST_CASE("crossval") {
  const auto dir = scratch("cv");
  std::string data;
  for (int i = 0; i < 16; ++i) data += std::to_string(i) + "," + std::to_string(i < 8) + "\n";
  spit(dir / "ratings.csv", data);
  const std::vector<std::string> base{"crossval", "--rows", "4", "--cols", "4", "--data",
                                      (dir / "ratings.csv").string(), "--holdout", "1",
                                      "--iterations", "1", "--iters", "100", "--burnin", "20"};
  const auto a = call(base);
  REQUIRE_MESSAGE(a.code == 0, a.err);
  CHECK(a.out.rfind("iteration,model,mae\n", 0) == 0);
  CHECK(lines(a.out) == 3);
  CHECK(call(base).out == a.out);
  auto too_many = base;
  too_many[8] = "17";
  CHECK(call(too_many).code == 1);
}
