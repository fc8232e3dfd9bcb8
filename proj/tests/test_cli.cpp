#include <gtest/gtest.h>

#include <sstream>

#include "cli.hpp"
#include "oqa/invariant.hpp"
#include "oqa/structure_io.hpp"

using namespace oqa;
using nlohmann::json;

namespace {

struct Run {
  int code;
  std::string out, err;
};

Run run(std::vector<std::string> args) {
  std::ostringstream out, err;
  int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

std::string data(const std::string& f) { return std::string(OQA_DATA) + "/" + f; }

}  // namespace

TEST(Cli, CheckAxioms) {
  auto ok = run({"check-axioms", "--structure", data("balanced_m2.json")});
  EXPECT_EQ(ok.code, 0) << ok.err;
  EXPECT_NE(ok.out.find("qa3 ok"), std::string::npos);
  auto bad = run({"check-axioms", "--structure", data("tampered_m2.json")});
  EXPECT_EQ(bad.code, 1);
  EXPECT_NE(bad.out.find("qa3 FAIL"), std::string::npos);
  EXPECT_NE(bad.out.find("qa3: "), std::string::npos);  // witness slot
  auto js = json::parse(run({"check-axioms", "--structure", data("tampered_m2.json"), "--format", "json"}).out);
  EXPECT_FALSE(js["qa3"].get<bool>());
  EXPECT_EQ(js["witnesses"][0]["axiom"], "qa3");
}

TEST(Cli, CheckAxiomsOtherStructures) {
  EXPECT_EQ(run({"check-axioms", "--structure", data("sweedler.json")}).code, 0);
  EXPECT_EQ(run({"check-axioms", "--structure", data("balanced_m3.json"), "--bind", "a=2", "--bind", "bc=3"}).code, 0);
  auto p = run({"check-axioms", "--structure", data("single_block_m3.json")});
  EXPECT_EQ(p.code, 0) << p.out << p.err;
  EXPECT_NE(p.out.find("clause a ok"), std::string::npos);
}

TEST(Cli, InputErrors) {
  EXPECT_EQ(run({"check-axioms", "--structure", data("malformed.json")}).code, 2);
  EXPECT_EQ(run({"check-axioms", "--structure", data("missing.json")}).code, 2);
  EXPECT_EQ(run({"check-axioms"}).code, 2);
  EXPECT_EQ(run({"frobnicate"}).code, 2);
  EXPECT_EQ(run({}).code, 2);
  EXPECT_EQ(run({"conway", "--diagram", "builtin:trefoil_knot", "--format", "yaml"}).code, 2);
  EXPECT_EQ(run({"conway", "--diagram", "builtin:nope"}).code, 2);
  EXPECT_EQ(run({"conway", "--diagram", data("missing.txt")}).code, 2);
  EXPECT_EQ(run({"conway", "--diagram", "builtin:curl"}).code, 2);
  EXPECT_EQ(run({"invariant", "--structure", data("balanced_m2.json"), "--diagram", "builtin:hopf", "--bind", "zz=1"}).code, 2);
  EXPECT_EQ(run({"invariant", "--structure", data("balanced_m2.json"), "--diagram", "builtin:hopf", "--bind", "a"}).code, 2);
  EXPECT_EQ(run({"invariant", "--structure", data("balanced_m2.json"), "--diagram", "builtin:hopf", "--bind", "a=1",
                 "--bind", "bc=1"})
                .code,
            2);
  auto bad_word = run({"conway", "--diagram", data("balanced_m2.json")});
  EXPECT_EQ(bad_word.code, 2);
  EXPECT_FALSE(bad_word.err.empty());
}

TEST(Cli, Help) {
  auto h = run({"--help"});
  EXPECT_EQ(h.code, 0);
  EXPECT_NE(h.out.find("verify-skein"), std::string::npos);
}

TEST(Cli, InvariantClosed) {
  auto r = run({"invariant", "--structure", data("balanced_m2.json"), "--diagram", "builtin:hopf", "--format", "json"});
  ASSERT_EQ(r.code, 0) << r.err;
  auto j = json::parse(r.out);
  auto L = load_structure_file(data("balanced_m2.json"));
  EXPECT_EQ(j["value"], evaluate_link(L.structure, builtin("hopf"), L.trace).str(L.symbols));
  EXPECT_EQ(j["writhe"], 2);
  EXPECT_EQ(j["whitney"], json({-1, 1}));
  EXPECT_EQ(j["algebra"], "M2");
  EXPECT_EQ(j["diagram"], word(builtin("hopf")));
}

TEST(Cli, InvariantOpen) {
  auto r = run({"invariant", "--structure", data("balanced_m2.json"), "--diagram", "builtin:curl"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(r.out, "E1_1: a^3 / bc\nE2_2: a\n");
}

TEST(Cli, InvariantNeedsTwist) {
  auto r = run({"invariant", "--structure", data("sweedler.json"), "--diagram", "builtin:hopf"});
  EXPECT_EQ(r.code, 1);
  EXPECT_NE(r.err.find("twist element G"), std::string::npos);
  EXPECT_EQ(run({"invariant", "--structure", data("sweedler.json"), "--diagram", "builtin:curl"}).code, 0);
}

TEST(Cli, Bindings) {
  auto sym = run({"invariant", "--structure", data("balanced_m2.json"), "--diagram", "builtin:trefoil_knot"});
  auto num = run({"invariant", "--structure", data("balanced_m2.json"), "--diagram", "builtin:trefoil_knot", "--bind",
                  "a=2", "--bind", "bc=symbolic", "--bind", "b12=1/3"});
  ASSERT_EQ(num.code, 0) << num.err;
  SymbolTable st{{"a", "bc", "b12"}};
  auto v = parse_scalar(sym.out.substr(0, sym.out.size() - 1), st);
  EXPECT_EQ(num.out, substitute(v, {{0, Scalar(2)}, {2, Scalar(mpq_class(1, 3))}}).str(st) + "\n");
}

TEST(Cli, Polynomials) {
  EXPECT_EQ(run({"conway", "--diagram", "builtin:trefoil_knot"}).out, "z^2 + 1\n");
  EXPECT_EQ(run({"conway", "--diagram", data("trefoil.txt")}).out, "z^2 + 1\n");
  EXPECT_EQ(run({"conway", "--diagram", "builtin:unknot_cw"}).out, "1\n");
  EXPECT_EQ(run({"homfly", "--diagram", "builtin:unknot_ccw"}).out, "1\n");
  EXPECT_EQ(run({"homfly", "--diagram", "builtin:hopf"}).out, "alpha*z + alpha*z^-1 - alpha^-1*z^-1\n");
  auto j = json::parse(run({"homfly", "--diagram", "builtin:c_r_plus(2)", "--format", "json"}).out);
  EXPECT_EQ(j["homfly"], "alpha^2");
  EXPECT_EQ(j["writhe"], 2);
}

TEST(Cli, VerifySkeinHomflyBranch) {
  auto r = run({"verify-skein", "--structure", data("single_block_m2.json")});
  EXPECT_EQ(r.code, 0) << r.out;
  EXPECT_NE(r.out.find("all checks pass"), std::string::npos);
  auto n3 = run({"verify-skein", "--structure", data("single_block_m3.json"), "--format", "json"});
  EXPECT_EQ(n3.code, 0) << n3.out;
  EXPECT_FALSE(json::parse(n3.out)["alexander_branch"].get<bool>());
}

TEST(Cli, VerifySkeinNumeric) {
  auto r = run({"verify-skein", "--structure", data("single_block_m3.json"), "--bind", "a=2", "--bind", "sbc=3",
                "--bind", "x12=5", "--bind", "x13=-1/2", "--bind", "x23=7"});
  EXPECT_EQ(r.code, 0) << r.out << r.err;
  EXPECT_EQ(r.out.find("homogeneous"), std::string::npos);
}

TEST(Cli, VerifySkeinAlexanderBranch) {
  auto r = run({"verify-skein", "--structure", data("alexander_m2.json"), "--format", "json", "--diagram",
                "builtin:trefoil_knot", "--diagram", data("figure8_left.txt")});
  auto j = json::parse(r.out);
  EXPECT_TRUE(j["alexander_branch"].get<bool>());
  EXPECT_EQ(j["tr_g"], "0");
  for (const auto& row : j["diagrams"]) {
    EXPECT_EQ(row["identify"]["lhs"], "0");  // every closed value vanishes
    EXPECT_TRUE(row["cut_open"]["pass"].get<bool>()) << row["diagram"];
    for (const auto& s : row["skein"]) EXPECT_TRUE(s["pass"].get<bool>());
  }
  EXPECT_EQ(j["diagrams"][0]["identify"]["poly"], "z^2 + 1");
  EXPECT_EQ(r.code, 1);  // the closed identification does not hold here
}

TEST(Cli, VerifySkeinNeedsSingleBlock) {
  EXPECT_EQ(run({"verify-skein", "--structure", data("balanced_m2.json")}).code, 2);
}

TEST(Cli, CheckMovesIsReproducible) {
  std::vector<std::string> args = {"check-moves", "--structure", data("balanced_m2.json"), "--diagram",
                                   "builtin:figure8_knot", "--seed", "7", "--steps", "8", "--format", "json"};
  auto a = run(args), b = run(args);
  EXPECT_EQ(a.code, 0) << a.out;
  EXPECT_EQ(a.out, b.out);
  EXPECT_EQ(json::parse(a.out)["steps"].size(), 8u);
  args[6] = "8";
  EXPECT_NE(run(args).out, a.out);
  auto open = run({"check-moves", "--structure", data("sweedler.json"), "--diagram", "builtin:trefoil_tangle",
                   "--steps", "6"});
  EXPECT_EQ(open.code, 0) << open.out;
}

TEST(Cli, OutputIsDeterministic) {
  std::vector<std::string> args = {"invariant", "--structure", data("balanced_m3.json"), "--diagram",
                                   "builtin:trefoil_knot", "--format", "json"};
  EXPECT_EQ(run(args).out, run(args).out);
}

TEST(Cli, ShowRoundTrip) {
  auto r = run({"show", "--structure", data("balanced_m2.json")});
  ASSERT_EQ(r.code, 0);
  auto back = load_structure(json::parse(r.out));
  auto L = load_structure_file(data("balanced_m2.json"));
  EXPECT_EQ(back.structure.rho, L.structure.rho);
  EXPECT_EQ(back.structure.twist, L.structure.twist);
}
