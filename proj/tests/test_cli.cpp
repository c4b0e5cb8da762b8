#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <fstream>
#include <sstream>

#include "hyperval/cli.hpp"

using namespace hyperval;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  const int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

TEST_CASE("quotient then iso") {
  const std::string path = "cli_quotient_f7.json";
  CHECK(run({"quotient", "--field", "7", "--subgroup", "squares", "--output", path}).code == 0);
  CHECK(run({"iso", path, "builtin:W"}).code == 0);
  CHECK(run({"iso", path, "builtin:K"}).code == 1);
  std::remove(path.c_str());
}

TEST_CASE("exit codes") {
  CHECK(run({"axioms", "builtin:K"}).code == 0);
  CHECK(run({"axioms", "builtin:Q"}).code == 2);
  CHECK(run({"axioms", "no/such/file.json"}).code == 2);
  CHECK(run({"frobnicate"}).code == 2);
  CHECK(run({}).code == 2);
  CHECK(run({"scenario", "nope"}).code == 2);
  CHECK(run({"quotient", "--field", "6"}).code == 2);
  CHECK(run({"krasner", "--backend", "tropical"}).code == 1);
  CHECK(run({"krasner", "--backend", "tropical-strict"}).code == 0);
  CHECK(run({"krasner", "--backend", "nokraval"}).code == 1);
  CHECK(run({"residue", "--backend", "lt", "--q", "2", "--gamma", "0", "--bound", "1"}).code == 0);
  CHECK(run({"coarsen", "--backend", "composite", "--delta", "1"}).code == 0);
  CHECK(run({"coarsen", "--backend", "composite", "--delta", "5"}).code == 2);
}

TEST_CASE("reports carry the envelope") {
  const auto r = run({"classify", "builtin:W"});
  REQUIRE(r.code == 0);
  const auto j = nlohmann::json::parse(r.out);
  CHECK(j["report_version"] == 1);
  CHECK(j["tool"] == "hyperval");
  CHECK(j["command"] == "classify");
  CHECK(j["classification"]["superiorly_canonical"] == false);
}

TEST_CASE("enumerate and hyperideals") {
  const auto e = nlohmann::json::parse(run({"enumerate", "--order", "4"}).out);
  CHECK(e["count"] == 7);
  CHECK(run({"enumerate", "--order", "9"}).code == 2);
  const auto h = nlohmann::json::parse(run({"hyperideals", "builtin:F5"}).out);
  CHECK(h["hyperideals"].size() == 2);
  CHECK(h["non_quotient_certificate"].is_null());
  const auto c = nlohmann::json::parse(run({"hyperideals", std::string(HYPERVAL_TEST_DATA) + "/h7_nonquotient.json"}).out);
  CHECK_FALSE(c["non_quotient_certificate"].is_null());
}

TEST_CASE("example-last names its witness") {
  const auto r = run({"scenario", "example-last", "--p", "2", "--bound", "3"});
  REQUIRE(r.code == 0);
  const auto j = nlohmann::json::parse(r.out);
  bool seen = false;
  for (const auto& c : j["claims"]) {
    if (c["id"] == "witness_in_O_u_not_O_w") {
      seen = true;
      CHECK(c["passed"] == true);
      CHECK(c["detail"]["witness"]["n"] == 0);
      CHECK(c["detail"]["witness"]["c"] == "1/2");
    }
  }
  CHECK(seen);
}

TEST_CASE("scenario reports match golden files") {
  for (const auto& name : cli::scenario_names()) {
    CAPTURE(name);
    const auto r = run({"scenario", name});
    CHECK(r.code == 0);
    CHECK(r.out == slurp(std::string(HYPERVAL_GOLDEN_DIR) + "/" + name + ".json"));
  }
}
