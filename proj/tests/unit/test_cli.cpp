#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "commands.hpp"
#include "config.hpp"
#include "doctest.h"
#include "fsum/error.hpp"
#include "json.hpp"

using namespace fsum::cli;
namespace fs = std::filesystem;

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = run_cli(args, out, err);
  return {code, out.str(), err.str()};
}

fs::path scratch(const std::string& name) {
  const auto dir = fs::temp_directory_path() / "fsum_cli_test" / name;
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

nlohmann::json report(const fs::path& dir) { return nlohmann::json::parse(slurp(dir / "report.json")); }

}  // namespace

TEST_CASE("usage errors exit 2") {
  CHECK(run({}).code == kExitUsage);
  CHECK(run({"bogus"}).code == kExitUsage);
  CHECK(run({"rates", "--p", "0.5", "--out", scratch("badp").string()}).code == kExitUsage);
  const auto r = run({"rates", "--p", "2", "--beta", "0.7", "--out", scratch("badbeta").string()});
  CHECK(r.code == kExitUsage);
  CHECK(r.err.find("beta") != std::string::npos);

  const auto dir = scratch("badconfig");
  {
    std::ofstream(dir / "c.json") << "{\"matrix\": \"fejer\", \"no_such_key\": 1}";
  }
  CHECK(run({"classify", "--config", (dir / "c.json").string(), "--out", dir.string()}).code == kExitUsage);
  {
    std::ofstream(dir / "broken.json") << "{not json";
  }
  CHECK(run({"classify", "--config", (dir / "broken.json").string(), "--out", dir.string()}).code == kExitUsage);
}

TEST_CASE("classify") {
  const auto dir = scratch("classify");
  const auto r = run({"classify", "--matrix", "fejer", "--n", "64", "--class", "mrbvs", "--out", dir.string()});
  CHECK(r.code == kExitPass);
  const auto j = report(dir);
  CHECK(j["anchor"] == "class-mrbvs");
  CHECK(j["result"]["max_constant"] == 0.0);
  CHECK(fs::exists(dir / "table.csv"));

  const auto w = scratch("witness");
  const auto wr = run({"classify", "--witness", "mrbvs-not-rbvs", "--len", "8", "--out", w.string()});
  CHECK(wr.code == kExitPass);
  CHECK(wr.out.find("witness") != std::string::npos);
  CHECK(report(w)["anchor"] == "mrbvs-not-rbvs");
}

TEST_CASE("kernel") {
  const auto d1 = scratch("lemma1");
  CHECK(run({"kernel", "--lemma", "1", "--kmax", "64", "--grid", "2000", "--out", d1.string()}).code == kExitPass);
  CHECK(report(d1)["anchor"] == "lemma1");

  const auto d2 = scratch("lemma2");
  CHECK(run({"kernel", "--lemma", "2", "--matrix", "fejer", "--n", "16..512", "--out", d2.string()}).code ==
        kExitPass);
  CHECK(slurp(d2 / "table.csv").rfind("n,", 0) == 0);

  // A matrix whose last row has an interior gap is outside the mean-rest class.
  const auto d3 = scratch("lemma2_bad");
  {
    std::ofstream m(d3 / "gap.csv");
    m << "n,k,a\n0,0,1\n1,0,0.5\n1,1,0.5\n2,0,0.5\n2,1,0\n2,2,0.5\n";
  }
  const auto bad = run({"kernel", "--lemma", "2", "--matrix", (d3 / "gap.csv").string(), "--n", "2", "--out",
                        d3.string()});
  CHECK(bad.code == kExitFail);
}

TEST_CASE("rates") {
  const auto d = scratch("corollary");
  const auto r = run({"rates", "--corollary", "--alpha", "0.5", "--p", "2", "--out", d.string()});
  CHECK(r.code == kExitPass);
  CHECK(fs::exists(d / "plot.svg"));
  CHECK(slurp(d / "plot.svg").find("<svg") == 0);
  CHECK(report(d)["anchor"] == "corollary");

  const auto c = scratch("constant");
  CHECK(run({"rates", "--function", "constant", "--n", "16..64", "--out", c.string()}).code == kExitPass);
  const auto j = report(c);
  CHECK(j["result"]["degenerate"] == true);
}

TEST_CASE("conditions") {
  const auto d = scratch("conditions");
  CHECK(run({"conditions", "--function", "constant", "--n", "8..64", "--out", d.string()}).code == kExitPass);
  CHECK(report(d)["anchor"] == "lemma3");
  CHECK(run({"conditions", "--gamma", "5", "--out", d.string()}).code == kExitUsage);
}

TEST_CASE("config round trip and flag precedence") {
  RunConfig c;
  c.matrix = "lal";
  c.p = 3.0;
  c.n = {8, 16};
  c.x = 0.5;
  const auto j = c.normalized();
  const auto back = config_from_json(j);
  CHECK(back.normalized() == j);
  CHECK(j.dump() == back.normalized().dump());

  CHECK_THROWS_AS(config_from_json(nlohmann::ordered_json{{"unknown", 1}}), fsum::Error);
  CHECK(parse_n_spec("16..128") == std::vector<std::size_t>{16, 32, 64, 128});
  CHECK(parse_n_spec("3,5") == std::vector<std::size_t>{3, 5});

  const auto dir = scratch("precedence");
  {
    std::ofstream(dir / "c.json") << R"({"matrix": "lal", "p_weights": "harmonic", "n": "32", "class": "mrbvs"})";
  }
  CHECK(run({"classify", "--config", (dir / "c.json").string(), "--n", "16", "--out", dir.string()}).code ==
        kExitPass);
  const auto rep = report(dir);
  CHECK(rep["config"]["matrix"] == "lal");
  CHECK(rep["result"]["n_max"] == 16);
}

TEST_CASE("identical runs give identical bytes") {
  const std::vector<std::vector<std::string>> commands = {
      {"classify", "--witness", "mhbvs-not-hbvs", "--len", "8", "--seed", "3"},
      {"kernel", "--lemma", "2", "--matrix", "lal", "--n", "16..128"},
      {"rates", "--matrix", "lal", "--p-weights", "ones", "--function", "absx:0.5", "--n", "16..128"},
      {"conditions", "--function", "absx:0.5", "--n", "8..64"},
  };
  int i = 0;
  for (auto args : commands) {
    const auto a = scratch("det_a" + std::to_string(i));
    const auto b = scratch("det_b" + std::to_string(i));
    ++i;
    auto args_a = args, args_b = args;
    for (auto* v : {&args_a, &args_b}) v->insert(v->end(), {"--threads", "1"});
    args_a.insert(args_a.end(), {"--out", a.string()});
    args_b.insert(args_b.end(), {"--out", b.string()});
    REQUIRE(run(args_a).code == kExitPass);
    REQUIRE(run(args_b).code == kExitPass);
    CHECK(slurp(a / "report.json") == slurp(b / "report.json"));
    CHECK(slurp(a / "table.csv") == slurp(b / "table.csv"));
  }
}
