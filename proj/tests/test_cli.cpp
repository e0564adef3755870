#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "doctest.h"
#include "mvl/cli.hpp"
#include "mvl/io.hpp"
#include "mvl/registry.hpp"
#include "oracle.hpp"

using namespace mvl;

namespace {

struct Outcome {
  int code;
  std::string out;
  std::string err;
};

Outcome run(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

Json run_json(std::vector<std::string> args, int expected_code) {
  args.insert(args.begin(), "--json");
  Outcome o = run(args);
  CHECK(o.code == expected_code);
  return Json::parse(o.out);
}

}  // namespace

TEST_CASE("split_formulas splits at top-level commas only") {
  CHECK(cli::split_formulas("p, q") == std::vector<std::string>{"p", "q"});
  CHECK(cli::split_formulas("wimp(p, q), r") == std::vector<std::string>{"wimp(p, q)", "r"});
  CHECK(cli::split_formulas("  (p | q) => p ,q ") == std::vector<std::string>{"(p | q) => p", "q"});
  CHECK(cli::split_formulas("").empty());
  CHECK(cli::split_formulas("   ").empty());
}

TEST_CASE("prove") {
  SUBCASE("De Morgan law in R_B") {
    Outcome o = run({"prove", "--calculus", "r-b", "--premises", "~(p & q)", "--goal", "~p | ~q"});
    CHECK(o.code == cli::kPositive);
    CHECK(o.out.find("Proved") != std::string::npos);
  }
  SUBCASE("JSON tree of a proof") {
    Json j = run_json({"prove", "--calculus", "r-b", "--premises", "p & q", "--goal", "q & p"}, cli::kPositive);
    CHECK(j["status"] == "Proved");
    CHECK(j["tree"]["nodes"][0]["label"] == Json::array({"p & q"}));
  }
  SUBCASE("refutation with a countermodel that the oracle confirms") {
    Json j = run_json({"prove", "--calculus", "r-leq", "--goal", "(p | q) => p, q"}, cli::kNegative);
    CHECK(j["status"] == "Refuted");
    PNMatrix m = registry::matrix(j["countermodel"]["matrix"].get<std::string>());
    std::map<std::string, int> asg;
    for (auto& [k, v] : j["countermodel"]["valuation"].items()) asg[k] = m.alg().value_index(v.get<std::string>());
    for (const char* g : {"(p | q) => p", "q"})
      CHECK_FALSE(oracle::designated(m, oracle::eval(m.alg(), parse_formula(g), asg)));
  }
  SUBCASE("budget exhaustion") {
    Outcome o = run({"prove", "--calculus", "r-leq", "--premises", "p => (q => r)", "--goal",
                     "(p => q) => (p => r)", "--budget-nodes", "1"});
    CHECK(o.code == cli::kBudget);
  }
  SUBCASE("Set-Fmla translation is printed and validated") {
    Outcome o = run({"prove", "--calculus", "r-b", "--premises", "p & q", "--goal", "q & p", "--set-fmla"});
    CHECK(o.code == cli::kPositive);
    CHECK(o.out.find("Set-Fmla derivation in r-b-or (6 steps, checked: ok)") != std::string::npos);
  }
  SUBCASE("DOT export") {
    auto path = std::filesystem::temp_directory_path() / "mvl_cli_test.dot";
    Outcome o = run({"prove", "--calculus", "r-b", "--premises", "~~p", "--goal", "p", "--dot", path.string()});
    CHECK(o.code == cli::kPositive);
    std::ifstream in(path);
    std::string first;
    std::getline(in, first);
    CHECK(first.rfind("digraph", 0) == 0);
    std::filesystem::remove(path);
  }
}

TEST_CASE("usage errors exit with code 2") {
  CHECK(run({"prove", "--calculus", "unknown", "--goal", "p"}).code == cli::kUsage);
  CHECK(run({"prove", "--calculus", "r-b", "--premises", "p &", "--goal", "q"}).code == cli::kUsage);
  CHECK(run({"frobnicate"}).code == cli::kUsage);
  CHECK(run({}).code == cli::kUsage);
  CHECK(run({"check", "--matrix", "dm4-bt", "--premises", "@p", "--conclusions", "p"}).code == cli::kUsage);
  CHECK(run({"export", "--kind", "matrix", "--name", "@/nonexistent/file.json"}).code == cli::kUsage);
  Outcome o = run({"prove", "--calculus", "unknown", "--goal", "p"});
  CHECK(o.err.find("error") != std::string::npos);
}

TEST_CASE("check") {
  Json j = run_json({"check", "--class", "pp6h-order", "--premises", "", "--conclusions", "(p | q) => p, q"},
                    cli::kNegative);
  CHECK(j["holds"] == false);
  PNMatrix m = registry::matrix(j["matrix"].get<std::string>());
  std::map<std::string, int> asg;
  for (auto& [k, v] : j["valuation"].items()) asg[k] = m.alg().value_index(v.get<std::string>());
  CHECK_FALSE(oracle::designated(m, oracle::eval(m.alg(), parse_formula("(p | q) => p"), asg)));
  CHECK_FALSE(oracle::designated(m, asg.at("q")));
  CHECK(run({"check", "--matrix", "pp6h-ub", "--premises", "p | q", "--conclusions", "p, q"}).code == cli::kPositive);
}

TEST_CASE("soundness") {
  CHECK(run({"soundness", "--calculus", "r-leq"}).code == cli::kPositive);
  Outcome o = run({"soundness", "--calculus", "r-leq", "--class", "pp6h-ut"});
  CHECK(o.code == cli::kNegative);
  CHECK(o.out.find("d_not_up_t: Unsound on pp6h-ut at p=n, q=b, r=t") != std::string::npos);
  CHECK(run({"soundness", "--calculus", "r-leq", "--rule", "d_id", "--class", "pp6h-ut"}).code == cli::kPositive);
}

TEST_CASE("components") {
  Json j = run_json({"components", "--matrix", "m-leq"}, cli::kPositive);
  CHECK(j["components"].size() == 3);
  for (const auto& c : j["components"]) CHECK(c.size() == 6);
}

TEST_CASE("axiomatize") {
  Json mon = run_json({"axiomatize", "--base", "dm4-bt"}, cli::kPositive);
  CHECK(mon["status"] == "Monadic");
  CHECK(mon["discriminator"]["n"]["neg"] == Json::array({"p", "~p"}));
  Json not_mon = run_json({"axiomatize", "--base", "m-up"}, cli::kNegative);
  CHECK(not_mon["status"] == "NotMonadic");
  CHECK(not_mon["isomorphic_witness"] == true);
}

TEST_CASE("algebra") {
  Json cong = run_json({"algebra", "congruences", "--algebra", "pp6"}, cli::kPositive);
  CHECK(cong["congruences"].size() == 3);
  Json chk = run_json({"algebra", "check", "--algebra", "pp6h", "--lhs", "p | ~p", "--rhs", "top"}, cli::kNegative);
  CHECK(chk["counterexample"]["p"] == "f");
  CHECK(run({"algebra", "check", "--algebra", "pp6h", "--lhs", "p & q", "--rhs", "p", "--leq"}).code ==
        cli::kPositive);
  CHECK(run({"algebra", "clone", "--algebra", "pp6h"}).code == cli::kPositive);
  CHECK(run({"algebra", "nonsense", "--algebra", "pp6h"}).code == cli::kUsage);
}

TEST_CASE("interpolate") {
  Json cip = run_json({"interpolate", "--mode", "cip"}, cli::kPositive);
  CHECK(cip["functions"] == 192);
  CHECK(cip["passing_both"] == 0);
  Outcome eip = run({"interpolate", "--mode", "eip", "--logic", "pp-leq", "--phi", "p & q", "--psi", "q => r",
                     "--goal", "r"});
  CHECK(eip.code == cli::kPositive);
  CHECK(eip.out.find("(q => r) => r") != std::string::npos);
}

TEST_CASE("export and reload through @file") {
  auto dir = std::filesystem::temp_directory_path();
  for (const char* kind : {"matrix", "calculus"}) {
    const char* name = std::string(kind) == "matrix" ? "pp6h-ub" : "r-b";
    Outcome o = run({"export", "--kind", kind, "--name", name});
    REQUIRE(o.code == cli::kPositive);
    CHECK(o.out == run({"export", "--kind", kind, "--name", name}).out);
    auto path = dir / (std::string("mvl_cli_") + kind + ".json");
    std::ofstream(path) << o.out;
    Outcome again = run({"export", "--kind", kind, "--name", "@" + path.string()});
    CHECK(again.code == cli::kPositive);
    CHECK(Json::parse(again.out) == Json::parse(o.out));
    std::filesystem::remove(path);
  }
  SUBCASE("a loaded matrix answers like the registry one") {
    auto path = dir / "mvl_cli_matrix_check.json";
    std::ofstream(path) << matrix_to_json(registry::matrix("pp6h-ub")).dump();
    Outcome a = run({"check", "--matrix", "@" + path.string(), "--conclusions", "(p | q) => p, q"});
    Outcome b = run({"check", "--matrix", "pp6h-ub", "--conclusions", "(p | q) => p, q"});
    CHECK(a.code == b.code);
    CHECK(a.out == b.out);
    std::filesystem::remove(path);
  }
}

TEST_CASE("list") {
  Json j = run_json({"list"}, cli::kPositive);
  CHECK(j["calculi"].size() == 20);
  CHECK(j["matrices"].size() == 16);
}

TEST_CASE("the installed binary forwards exit codes") {
  auto status = [](const std::string& args) {
    int raw = std::system((std::string(MVL_CLI_PATH) + " " + args + " >/dev/null 2>&1").c_str());
    return WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
  };
  CHECK(status("prove --calculus r-b --premises '~(p & q)' --goal '~p | ~q'") == cli::kPositive);
  CHECK(status("check --class pp6h-order --premises '' --conclusions '(p | q) => p, q'") == cli::kNegative);
  CHECK(status("prove --calculus unknown") == cli::kUsage);
  CHECK(status("--json list") == cli::kPositive);
}
