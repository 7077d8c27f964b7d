#include "doctest.h"

#include "bscycles/cli.hpp"

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

using namespace bscycles;

namespace {

struct Run {
  int code;
  std::string out, err;
};

Run run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = run_cli(args, out, err);
  return {code, out.str(), err.str()};
}

const std::string kCorpus = std::string(BSCYCLES_SOURCE_DIR) + "/corpus/catalog.jsonl";

}  // namespace

TEST_CASE("parse_budget") {
  CHECK(parse_budget("500").max_pairs == 500);
  const auto b = parse_budget("max_pairs=7,max_coefficient_bits=99");
  CHECK(b.max_pairs == 7);
  CHECK(b.max_coefficient_bits == 99);
  CHECK(parse_budget("max_coefficient_bits=12").max_pairs == GroebnerBudget{}.max_pairs);
  CHECK_THROWS_AS(parse_budget("pairs=3"), std::invalid_argument);
  CHECK_THROWS_AS(parse_budget("-3"), std::invalid_argument);
  CHECK_THROWS_AS(parse_budget("0"), std::invalid_argument);
}

TEST_CASE("exit codes") {
  auto r = run({"bfunction", "--f", "x^2"});
  CHECK(r.code == kExitOk);
  const auto j = nlohmann::json::parse(r.out);
  CHECK(j["b"] == nlohmann::json({"1/2", "3/2", "1"}));
  CHECK(j["verified"] == true);

  r = run({"nearby", "--f", "x", "--alpha", "0"});
  CHECK(r.code == kExitOk);
  CHECK(nlohmann::json::parse(r.out)["nonzero"] == true);
  CHECK(nlohmann::json::parse(r.out)["N"] == 1);

  CHECK(run({"bfunction", "--f", "x +"}).code == kExitInput);
  CHECK(run({"bfunction", "--f", "x +"}).err.find("position 3") != std::string::npos);
  CHECK(run({"nearby", "--f", "7", "--alpha", "0"}).code == kExitInput);
  CHECK(run({"nearby", "--f", "x", "--alpha", "1/0"}).code == kExitInput);
  CHECK(run({"frobnicate"}).code == kExitInput);
  CHECK(run({}).code == kExitInput);
  CHECK(run({"jordan", "--alpha", "0", "--m", "0"}).code == kExitInput);
  CHECK(run({"corpus", "run", "--file", "/nonexistent.jsonl"}).code == kExitInput);
  CHECK(run({"--help"}).code == kExitOk);

  // budget exhaustion, by flag and by environment
  CHECK(run({"--budget", "max_pairs=1", "bfunction", "--f", "x^2 + y^3", "--check-groebner"})
            .code == kExitBudget);
  setenv("BSCYCLES_BUDGET", "max_pairs=1", 1);
  CHECK(run({"nearby", "--f", "x*y", "--alpha", "0"}).code == kExitBudget);
  setenv("BSCYCLES_BUDGET", "nonsense", 1);
  CHECK(run({"nearby", "--f", "x", "--alpha", "0"}).code == kExitInput);
  unsetenv("BSCYCLES_BUDGET");
  CHECK(run({"nearby", "--f", "x", "--alpha", "0"}).code == kExitOk);
}

TEST_CASE("text output") {
  auto r = run({"nearby", "--f", "x", "--alpha", "1/2", "--output", "text"});
  CHECK(r.out == "Psi_1/2 of x: zero\n");
  r = run({"bfunction", "--f", "x", "--output", "text"});
  CHECK(r.out == "b(s) = s + 1\n");
}

TEST_CASE("determinism: identical invocations give identical bytes") {
  for (const auto& job : std::vector<std::vector<std::string>>{
           {"bfunction", "--f", "x^2 + y^3"},
           {"nearby", "--f", "x*y", "--alpha", "0"},
           {"vanishing", "--f", "x^2"},
           {"jordan", "--alpha", "5/6", "--m", "4", "--f", "x^2 + y^3"},
           {"corpus", "run", "--file", kCorpus, "--output", "json"}}) {
    const auto a = run(job), b = run(job);
    CHECK(a.code == kExitOk);
    CHECK(a.out == b.out);
    CHECK(!a.out.empty());
  }
}

TEST_CASE("corpus run re-verifies certificates") {
  auto r = run({"corpus", "run", "--file", kCorpus});
  CHECK(r.code == kExitOk);
  CHECK(r.out.find("7/7 entries pass") != std::string::npos);

  // tamper with one stored operator coefficient: the entry must fail
  std::ifstream in(kCorpus);
  const auto tmp = std::filesystem::temp_directory_path() / "bscycles_tampered.jsonl";
  std::ofstream out(tmp);
  std::string line;
  bool first = true;
  while (std::getline(in, line)) {
    auto rec = nlohmann::json::parse(line);
    if (first) rec["certificate"]["P"][0]["c"] = "2";
    first = false;
    out << rec.dump() << "\n";
  }
  out.close();
  r = run({"corpus", "run", "--file", tmp.string(), "--output", "json"});
  CHECK(r.code == kExitInput);
  const auto j = nlohmann::json::parse(r.out);
  CHECK(j["summary"]["failed"] == 1);
  CHECK(j["entries"][0]["checks"]["certificate_verified"] == false);
  std::filesystem::remove(tmp);
}
