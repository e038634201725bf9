#include <doctest.h>

#include <json.hpp>
#include <sstream>

#include "qcf/cli.hpp"

using namespace qcf;

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

std::string data(const std::string& name) { return std::string(QCF_DATA_DIR) + "/" + name; }

}  // namespace

TEST_CASE("finite universes") {
  Run r = run({"finite", "--file", data("chain.cfu"), "--formula", "A would B"});
  CHECK(r.code == 0);
  CHECK(r.out.rfind("RESULT holds (bounded=no)\n", 0) == 0);
  CHECK(r.out.find("witness 1 a") != std::string::npos);

  r = run({"finite", "--file", data("fork.cfu"), "--formula", "A might B"});
  CHECK(r.code == 1);
  CHECK(r.out.rfind("RESULT fails", 0) == 0);

  r = run({"finite", "--file", data("chain.cfu"), "--formula", "A would B", "--ref", "a"});
  CHECK(r.code == 2);
}

TEST_CASE("json lines output") {
  Run r = run({"finite", "--file", data("chain.cfu"), "--formula", "A would B", "--formula", "A might !A",
               "--format", "json-lines"});
  CHECK(r.code == 1);
  std::istringstream lines(r.out);
  std::string line;
  std::vector<nlohmann::json> objs;
  while (std::getline(lines, line)) objs.push_back(nlohmann::json::parse(line));
  REQUIRE(objs.size() == 2);
  CHECK(objs[0]["formula"] == "A would B");
  CHECK(objs[0]["result"] == "holds");
  CHECK(objs[0]["bounded"] == false);
  CHECK(objs[0].contains("bounds"));
  CHECK(objs[0]["witnesses"].is_array());
  CHECK(objs[1]["result"] == "fails");
}

TEST_CASE("lasso universes") {
  const std::vector<std::string> base = {"eval", "--universe-formula", data("elevator.ltl"), "--ref-trace",
                                         "|{b,u}{m,d}", "--mutable", "u,d", "--window", "4", "--max-prefix", "4",
                                         "--loops", "2"};
  auto with = [&](const std::string& f) {
    auto args = base;
    args.push_back("--formula");
    args.push_back(f);
    return run(args);
  };
  Run r = with("F (u & X u) would F top");
  CHECK(r.code == 0);
  CHECK(r.out.rfind("RESULT holds (bounded=yes)", 0) == 0);
  CHECK(with("F (u & X u) might X X top").code == 1);
  CHECK(with("b").code == 0);
  CHECK(with("F (").code == 2);
}

TEST_CASE("cause checks") {
  Run r = run({"cause", "--sem", data("fire.sem"), "--effect", "f"});
  CHECK(r.code == 0);
  CHECK(r.out.find("causes: f; m") != std::string::npos);
  CHECK(r.out.find("agree=true") != std::string::npos);
  r = run({"cause", "--sem", data("fire_conj.sem"), "--effect", "f"});
  CHECK(r.out.find("causes: f; l; m") != std::string::npos);
  CHECK(run({"cause", "--sem", data("missing.sem"), "--effect", "f"}).code == 2);
}

TEST_CASE("emission") {
  Run r = run({"emit", "--mode", "trace-check", "--sem", data("fire.sem"), "--effect", "f"});
  CHECK(r.code == 0);
  CHECK(r.out.find("forall p. exists p1. forall p2. exists p3. forall p4. ") != std::string::npos);
  r = run({"emit", "--universe-formula", "G (a -> X b)", "--mutable", "a", "--formula", "a would b"});
  CHECK(r.code == 0);
  CHECK(r.out.find("exists p. exists p1. forall p2. ") != std::string::npos);
  CHECK(run({"emit", "--universe-formula", "true", "--formula", "a would b"}).code == 2);
}

TEST_CASE("oracle suite and usage errors") {
  Run r = run({"oracle", "--suite", "duality", "--count", "5"});
  CHECK(r.code == 0);
  CHECK(run({}).code == 2);
  CHECK(run({"bogus"}).code == 2);
  CHECK(run({"finite", "--file", data("chain.cfu")}).code == 2);
}
