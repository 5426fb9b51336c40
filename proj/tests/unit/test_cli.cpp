#include <cstdlib>
#include <sstream>
#include <string>
#include <vector>

#include "cli.hpp"
#include "doctest.h"
#include "weylaw/report.hpp"

using namespace weylaw;

namespace {

struct Run {
  int code;
  std::string out, err;
};

Run run(std::vector<std::string> args) {
  args.insert(args.begin(), "weylaw");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

Json run_json(std::vector<std::string> args) {
  args.push_back("--json");
  const auto r = run(args);
  REQUIRE(r.code == 0);
  return Json::parse(r.out);
}

}  // namespace

TEST_CASE("empty reports") {
  CHECK(emit_report(Report{}, ReportFormat::Json) == "{}");
  CHECK(dump_csv({"a", "b"}, Json::array()) == "a,b\n");
  CHECK(format_double(0.1) == "0.10000000000000001");
  CHECK(to_json(Rational(3, 6)) == "1/2");
}

TEST_CASE("CSV quotes structured cells") {
  const Json rows = Json::array({{{"a", Json::array({1, 2})}, {"b", "x,y"}}});
  CHECK(dump_csv({"a", "b"}, rows) == "a,b\n\"[1,2]\",\"x,y\"\n");
}

TEST_CASE("parabolic row for B3") {
  const auto j = run_json({"table1", "--family", "B", "--rank", "3"});
  CHECK(j["schema_version"] == kSchemaVersion);
  CHECK(j["d_min"] == 4);
  CHECK(j["R"] == 5);
  CHECK(j["root"] == "alpha1");
  CHECK(j["abelian"] == true);
  CHECK(j["manifest"]["subcommand"] == "table1");
  CHECK(j["manifest"]["input_digest"].get<std::string>().size() == 16);
}

TEST_CASE("dominance suite with zero trials through the CLI") {
  const auto j = run_json({"verify-appendix-b", "--family", "A", "--rank", "3", "--trials", "0"});
  CHECK(j["pass"] == true);
  CHECK(j["instances"] == 0);
  CHECK(j["violations"] == Json::array());
}

TEST_CASE("weyl-law fit") {
  const auto j = run_json({"weyl-law", "--family", "A", "--rank", "1", "--fit", "10,20,40,80", "--seed", "1"});
  CHECK(j["slope"].get<double>() == doctest::Approx(2.0).epsilon(0.025));
}

TEST_CASE("dtilde report carries the minimizer and exact factors") {
  const auto j = run_json({"dtilde", "--family", "B", "--rank", "3", "--im", "3,1,1/2"});
  CHECK(j["minimizer"].contains("label"));
  CHECK(j["factors_exact"].is_array());
  CHECK(j["squared_exact"] == "945/8");
}

TEST_CASE("usage errors exit with 2") {
  CHECK(run({}).code == cli::kUsageError);
  CHECK(run({"frobnicate"}).code == cli::kUsageError);
  CHECK(run({"info", "--family", "Q", "--rank", "2"}).code == cli::kUsageError);
  CHECK(run({"info", "--family", "E", "--rank", "4"}).code == cli::kUsageError);
  CHECK(run({"info"}).code == cli::kUsageError);
  CHECK(run({"table1", "--family", "A", "--rank", "two"}).code == cli::kUsageError);
  CHECK(run({"dtilde", "--family", "A", "--rank", "2", "--im", "1,2"}).code == cli::kUsageError);
  const auto guard = run({"spherical", "--n", "3", "--points", "4", "eval", "--nu", "2", "--X", "0.3,0,-0.3"});
  CHECK(guard.code == cli::kUsageError);
  CHECK(guard.err.find("required points") != std::string::npos);
  CHECK(run({"--help"}).code == cli::kSuccess);
}

TEST_CASE("environment fallback and flag precedence") {
  setenv("WS_FAMILY", "C", 1);
  setenv("WS_RANK", "3", 1);
  const auto from_env = run_json({"table1"});
  CHECK(from_env["family"] == "C3");
  const auto flag = run_json({"table1", "--family", "B"});
  CHECK(flag["family"] == "B3");
  unsetenv("WS_FAMILY");
  unsetenv("WS_RANK");
}

TEST_CASE("output does not depend on the thread count") {
  setenv("SOURCE_DATE_EPOCH", "0", 1);
  auto body = [](const std::string& threads) {
    auto j = run_json({"weyl-law", "--family", "A", "--rank", "3", "--t", "5", "--samples", "20000", "--threads", threads});
    j["manifest"]["flags"].erase("threads");
    j["manifest"].erase("input_digest");
    return dump_json(j);
  };
  CHECK(body("1") == body("4"));
  unsetenv("SOURCE_DATE_EPOCH");
}

TEST_CASE("identical manifests give identical bytes") {
  setenv("SOURCE_DATE_EPOCH", "1700000000", 1);
  const std::vector<std::string> args{"plancherel", "--family", "G", "--rank", "2", "--ratio-scan", "--samples", "3000", "--json"};
  const auto a = run(args), b = run(args);
  CHECK(a.code == 0);
  CHECK(a.out == b.out);
  CHECK(Json::parse(a.out)["manifest"]["timestamp"] == "2023-11-14T22:13:20Z");
  unsetenv("SOURCE_DATE_EPOCH");
}

TEST_CASE("spherical subcommands") {
  const auto e = run_json({"spherical", "eval", "--nu", "0", "--X", "0,0"});
  CHECK(e["abs_phi"].get<double>() == doctest::Approx(1.0));
  const auto d = run({"spherical", "decay", "--nu", "1,2", "--X-norms", "0.1,0.2", "--csv"});
  CHECK(d.code == 0);
  CHECK(d.out.rfind("nu,X_norm,abs_phi,ratio_sqrt_bound,ratio_dtilde_bound", 0) == 0);
  const auto r = run({"roundtrip", "--profile", "zero"});
  CHECK(r.code == 0);
}

TEST_CASE("verification subcommands report pass") {
  CHECK(run({"verify-root-lemma", "--family", "B", "--rank", "3"}).code == 0);
  CHECK(run({"verify-cone-ids", "--family", "F", "--rank", "4"}).code == 0);
  CHECK(run({"info", "--family", "E", "--rank", "6"}).code == 0);
  CHECK(run({"table1", "--all", "--csv"}).out.rfind("family,d_min,R,root,abelian", 0) == 0);
}
