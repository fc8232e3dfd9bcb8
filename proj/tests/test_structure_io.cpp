#include <gtest/gtest.h>

#include "oqa/invariant.hpp"
#include "oqa/structure_io.hpp"

using namespace oqa;
using nlohmann::json;

namespace {

json balanced2() {
  return json::parse(R"({"kind": "balanced_mn", "symbols": ["a", "bc", "b12"], "n": 2,
                         "a": "a", "bc": "bc", "b": {"1,2": "b12"}, "omega1_sq": "1"})");
}

void expect_round_trip(const LoadedStructure& L) {
  auto j = structure_to_json(L.structure, L.symbols, L.trace);
  auto back = load_structure(j);
  EXPECT_EQ(back.structure.rho, L.structure.rho);
  EXPECT_EQ(back.structure.rho_inv, L.structure.rho_inv);
  EXPECT_EQ(back.structure.t_d, L.structure.t_d);
  EXPECT_EQ(back.structure.t_u, L.structure.t_u);
  EXPECT_EQ(back.structure.twist, L.structure.twist);
  EXPECT_EQ(back.structure.twist_inv, L.structure.twist_inv);
  EXPECT_EQ(back.trace, L.trace);
  EXPECT_EQ(structure_to_json(back.structure, back.symbols, back.trace), j);
}

}  // namespace

TEST(StructureIo, BalancedRoundTrip) {
  auto L = load_structure(balanced2());
  EXPECT_EQ(L.kind, "balanced_mn");
  EXPECT_TRUE(L.structure.twist.has_value());
  EXPECT_EQ(L.trace, matrix_trace(2));
  expect_round_trip(L);
}

TEST(StructureIo, FormalRootsRoundTrip) {
  // bc not a square: t_d carries a formal root
  auto j = json::parse(R"({"kind": "params", "n": 2, "blocks": [[1, 2]], "bc": ["bc"], "a": ["a", "a"],
                           "off": {"1,2": "x", "2,1": "bc/x"}, "omega_sq": ["1", "a^2/bc"]})");
  auto L = load_structure(j);
  ASSERT_FALSE(L.structure.roots.empty());
  expect_round_trip(L);
  auto back = load_structure(structure_to_json(L.structure, L.symbols, L.trace));
  auto tr = matrix_trace(2);
  EXPECT_EQ(evaluate_link(back.structure, builtin("trefoil_knot"), tr),
            evaluate_link(L.structure, builtin("trefoil_knot"), tr));
}

TEST(StructureIo, SingleBlockAndSweedler) {
  auto sb = load_structure(json::parse(
      R"({"kind": "single_block", "n": 2, "a": "a", "sbc": "sbc", "same": [true, false], "x": {"1,2": "x12"}})"));
  ASSERT_TRUE(sb.single_block.has_value());
  EXPECT_TRUE(sb.single_block->tr_g.is_zero());
  expect_round_trip(sb);
  auto sw = load_structure(json::parse(R"({"kind": "sweedler", "alpha": "alpha"})"));
  EXPECT_EQ(sw.structure.algebra.name, "H4");
  EXPECT_FALSE(sw.structure.twist.has_value());
  expect_round_trip(sw);
}

TEST(StructureIo, OppositeAlgebraName) {
  auto L = load_structure(balanced2());
  L.structure = opposite(L.structure);
  expect_round_trip(L);
}

TEST(StructureIo, Bindings) {
  auto L = load_structure(balanced2(), {{"a", "2"}, {"bc", "symbolic"}});
  auto tr = matrix_trace(2);
  auto sym = load_structure(balanced2());
  const int a = *sym.symbols.find("a");
  auto v = evaluate_link(L.structure, builtin("hopf"), tr);
  EXPECT_EQ(v, substitute(evaluate_link(sym.structure, builtin("hopf"), tr), {{a, Scalar(2)}}));
  EXPECT_THROW(load_structure(balanced2(), {{"nope", "1"}}), InputError);
  EXPECT_THROW(load_structure(balanced2(), {{"a", "1"}, {"bc", "1"}}), InputError);  // a^2 = bc
  EXPECT_THROW(load_structure(balanced2(), {{"a", "1/"}}), InputError);
}

TEST(StructureIo, Errors) {
  EXPECT_THROW(load_structure(json::parse(R"({"kind": "nope"})")), InputError);
  EXPECT_THROW(load_structure(json::parse(R"({"kind": "balanced_mn", "n": 2})")), InputError);
  EXPECT_THROW(load_structure(json::parse(R"([1, 2])")), InputError);
  EXPECT_THROW(load_structure(json::parse(R"({"algebra": "Q7", "rho": []})")), InputError);
  EXPECT_THROW(load_structure(json::parse(R"({"algebra": "M2", "rho": [{"i": "E9_9", "j": "E1_1", "c": "1"}]})")),
               InputError);
  EXPECT_THROW(load_structure_file("/nonexistent/structure.json"), InputError);
  EXPECT_THROW(load_structure(json::parse(R"({"kind": "single_block", "n": 2, "a": "a", "sbc": "sbc",
                                              "same": [true, true], "x": {}})")),
               InputError);
}
