#include <gtest/gtest.h>

#include <random>

#include "mn_params.hpp"
#include "oracles.hpp"
#include "oqa/oqa.hpp"

using namespace oqa;

namespace {

struct Symbolic : ::testing::Test {
  SymbolTable st{{"a", "sbc", "b12", "b13", "b23", "w1"}};
  Scalar a = Scalar::var(0), sbc = Scalar::var(1), bc = sbc * sbc, w1 = Scalar::var(5);
  PairTable b() const {
    return {{{1, 2}, Scalar::var(2)}, {{1, 3}, Scalar::var(3)}, {{2, 3}, Scalar::var(4)}};
  }
};

int E(int n, int i, int j) { return mat_index(n, i, j); }

MnParams balanced_params(int n, const Scalar& a, const Scalar& bc, const PairTable& b, const Scalar& w1) {
  MnParams p;
  p.n = n;
  std::vector<int> blk;
  for (int i = 1; i <= n; ++i) blk.push_back(i);
  p.blocks = {blk};
  p.bc = {bc};
  p.a.assign(n, a);
  for (int i = 1; i <= n; ++i) {
    p.omega_sq.push_back((a * a / bc).pow(i - 1) * w1);
    for (int l = i + 1; l <= n; ++l) {
      p.off[{i, l}] = b.at({i, l});
      p.off[{l, i}] = bc / b.at({i, l});
    }
  }
  return p;
}

}  // namespace

TEST_F(Symbolic, RhoAbcSlots) {
  auto rho = build_rho_abc(2, a, bc, b());
  EXPECT_EQ(rho.size(), 5u);
  EXPECT_EQ(rho.get(E(2, 1, 2), E(2, 2, 1)), a - bc / a);
  EXPECT_EQ(rho.get(E(2, 1, 1), E(2, 1, 1)), a);
  EXPECT_EQ(rho.get(E(2, 2, 2), E(2, 2, 2)), a);
  EXPECT_EQ(rho.get(E(2, 1, 1), E(2, 2, 2)), Scalar::var(2));
  EXPECT_EQ(rho.get(E(2, 2, 2), E(2, 1, 1)), bc / Scalar::var(2));

  PairTable one{{{1, 2}, Scalar(1)}};
  auto num = build_rho_abc(2, Scalar(2), Scalar(1), one);
  EXPECT_EQ(num.get(E(2, 1, 2), E(2, 2, 1)), Scalar(mpq_class(3, 2)));
}

TEST_F(Symbolic, RhoAbcSatisfiesQybe) {
  for (int n = 2; n <= 3; ++n) {
    auto rho = build_rho_abc(n, a, bc, b());
    EXPECT_TRUE(qybe_check(matrix_algebra(n), rho)) << n;
  }
}

TEST_F(Symbolic, InverseMatchesClosedForm) {
  for (int n = 2; n <= 3; ++n) {
    auto A = matrix_algebra(n);
    auto rho = build_rho_abc(n, a, bc, b());
    auto q = tensor_invert(A, rho);
    EXPECT_EQ(q, testkit::closed_form_q(n, rho)) << n;
    EXPECT_EQ(tensor_mul(A, rho, q), TensorSquareElement::one(A));
    EXPECT_EQ(tensor_mul(A, q, rho), TensorSquareElement::one(A));
    EXPECT_EQ(tensor_invert(A, q), rho);
    EXPECT_TRUE(qybe_check(A, q));
  }
}

TEST_F(Symbolic, BalancedStructureAxioms) {
  for (int n = 2; n <= 3; ++n) {
    auto s = build_balanced_mn(n, a, bc, b(), w1, st);
    auto rep = check_axioms(s);
    EXPECT_TRUE(rep.qa1 && rep.qa2 && rep.qa3) << n;
    EXPECT_EQ((*s.twist)[E(n, 2, 2)], a * a / bc * w1);
    // (t_d o t_u)(E12) = G E12 G^-1 = (w1^2/w2^2) E12
    auto e12 = AlgebraElement::basis(n * n, E(n, 1, 2));
    auto conj = mul(s.algebra, mul(s.algebra, *s.twist, e12), *s.twist_inv);
    EXPECT_EQ(s.reduce(s.t_d.compose(s.t_u).apply(e12)), conj);
    EXPECT_EQ(conj[E(n, 1, 2)], bc / (a * a));
  }
}

TEST_F(Symbolic, SwappedAutomorphismBreaksQa1) {
  auto s = build_balanced_mn(2, a, bc, b(), w1, st);
  s.t_d = s.t_d.inverse(&s.roots);
  auto rep = check_axioms(s);
  EXPECT_FALSE(rep.qa1);
  EXPECT_TRUE(rep.qa3);
  ASSERT_FALSE(rep.witnesses.empty());
  EXPECT_EQ(rep.witnesses[0].axiom, "qa1");
}

TEST_F(Symbolic, TensorMapOnRho) {
  auto s = build_balanced_mn(2, a, bc, b(), w1, st);
  EXPECT_EQ(s.reduce(apply_map_tensor(s.t_d, s.t_d, s.rho)), s.rho);
  TensorSquareElement u;
  u.add(E(2, 1, 2), E(2, 1, 1), Scalar(1));
  auto id = AlgebraMap::identity(4);
  // w2^2 = (a/sbc)^2 w1 so w1/w2 = sbc/a whatever branch of sqrt(w1) is taken
  EXPECT_EQ(s.reduce(apply_map_tensor(s.t_d, id, u)).get(E(2, 1, 2), E(2, 1, 1)), sbc / a);
}

TEST(Sweedler, AxiomsSymbolic) {
  SymbolTable st{{"alpha"}};
  auto s = sweedler_oqa(Scalar::var(0));
  auto rep = check_axioms(s);
  EXPECT_TRUE(rep.ok());
  EXPECT_EQ(apply_map_tensor(s.t_u, s.t_u, s.rho), s.rho);
  EXPECT_TRUE(check_axioms(sweedler_oqa(Scalar(0))).ok());
  EXPECT_TRUE(check_axioms(sweedler_oqa(Scalar(3))).ok());
}

TEST(Sweedler, WrongAutomorphismFails) {
  auto s = sweedler_oqa(Scalar(1));
  s.t_u = AlgebraMap::identity(4);
  // t_u = 1 is fine for qa.2 but qa.1 then needs rho^-1 = rho^-1 twisted, which fails
  auto rep = check_axioms(s);
  EXPECT_TRUE(rep.qa2);
  EXPECT_TRUE(rep.qa3);
  EXPECT_FALSE(rep.qa1);
}

TEST(Sweedler, MinimalSubalgebra) {
  SymbolTable st{{"alpha"}};
  EXPECT_EQ(minimal_subalgebra(sweedler_oqa(Scalar::var(0))).size(), 4u);
  EXPECT_EQ(minimal_subalgebra(sweedler_oqa(Scalar(0))).size(), 2u);
}

TEST_F(Symbolic, MinimalSubalgebraOfMn) {
  auto s = build_balanced_mn(2, a, bc, b(), w1, st);
  auto basis = minimal_subalgebra(s);
  EXPECT_EQ(basis.size(), 4u);
  RrefSpan span(4);
  for (const auto& x : basis) span.insert(x);
  for (const auto& x : basis) {
    EXPECT_TRUE(span.contains(s.reduce(s.t_d.apply(x))));
    EXPECT_TRUE(span.contains(s.reduce(s.t_u.apply(x))));
  }

  Structure trivial = s;
  trivial.rho = TensorSquareElement::one(s.algebra);
  trivial.rho_inv = trivial.rho;
  auto tb = minimal_subalgebra(trivial);
  ASSERT_EQ(tb.size(), 1u);
  EXPECT_EQ(tb[0], AlgebraElement::one(s.algebra));
}

TEST_F(Symbolic, StandardizeAndOpposite) {
  auto s = build_balanced_mn(2, a, bc, b(), w1, st);
  auto sd = standardize(s);
  EXPECT_TRUE(sd.t_d.is_identity());
  EXPECT_EQ(sd.t_u, s.t_d.compose(s.t_d).reduced(s.roots));
  EXPECT_TRUE(check_axioms(sd).ok());
  auto sdd = standardize(sd);
  EXPECT_EQ(sdd.t_d, sd.t_d);
  EXPECT_EQ(sdd.t_u, sd.t_u);
  EXPECT_EQ(sdd.rho, sd.rho);
  EXPECT_NO_THROW(attach_twist(sd, *sd.twist));

  auto op = opposite(s);
  EXPECT_TRUE(check_axioms(op).ok());
  EXPECT_EQ(*op.twist, *s.twist_inv);
  EXPECT_NO_THROW(attach_twist(op, *op.twist));
  auto back = opposite(op);
  EXPECT_EQ(back.name, s.name);
  EXPECT_EQ(back.algebra.mult.size(), s.algebra.mult.size());
  EXPECT_EQ(*back.twist, *s.twist);
  EXPECT_TRUE(check_axioms(opposite(sweedler_oqa(Scalar(2)))).ok());
}

TEST_F(Symbolic, AttachTwist) {
  auto s = build_balanced_mn(2, a, bc, b(), w1, st);
  EXPECT_NO_THROW(attach_twist(s, *s.twist));
  EXPECT_NO_THROW(attach_twist(s, s.twist->scaled(Scalar(7) * a)));
  auto e11 = AlgebraElement::basis(4, E(2, 1, 1));
  try {
    attach_twist(s, e11);
    FAIL();
  } catch (const std::invalid_argument& e) {
    EXPECT_NE(std::string(e.what()).find("not invertible"), std::string::npos);
  }
  auto wrong = s.twist->scaled(1);
  wrong[E(2, 1, 1)] = Scalar(5);
  EXPECT_THROW(attach_twist(s, wrong), std::invalid_argument);
  auto offdiag = AlgebraElement::one(s.algebra) + AlgebraElement::basis(4, E(2, 1, 2));
  EXPECT_THROW(attach_twist(s, offdiag), std::invalid_argument);
}

TEST_F(Symbolic, TraceChecks) {
  auto s = build_balanced_mn(2, a, bc, b(), w1, st);
  EXPECT_NO_THROW(check_trace(s, matrix_trace(2)));
  std::vector<Scalar> bad(4);
  bad[E(2, 1, 1)] = Scalar(1);
  EXPECT_THROW(check_trace(s, bad), std::invalid_argument);
}

TEST_F(Symbolic, ClassificationOfBalancedParams) {
  for (int n = 2; n <= 3; ++n) {
    auto p = balanced_params(n, a, bc, b(), w1);
    auto rep = classify_params(p);
    EXPECT_TRUE(rep.pass()) << n;
    EXPECT_TRUE(rep.warnings.empty());
    auto s = build_from_params(p, st);
    auto e = build_balanced_mn(n, a, bc, b(), w1, st);
    EXPECT_EQ(s.rho, e.rho);
    EXPECT_EQ(s.rho_inv, e.rho_inv);
    EXPECT_EQ(*s.twist, *e.twist);
    EXPECT_TRUE(check_axioms(s).ok());
  }
}

TEST_F(Symbolic, TamperedCrossTermFailsClause) {
  auto p = balanced_params(2, a, bc, b(), w1);
  p.cross[{1, 2}] = a;
  auto rep = classify_params(p);
  EXPECT_FALSE(rep.clause("d-iii").pass);
  EXPECT_TRUE(rep.clause("d-i").pass);
  EXPECT_THROW(build_from_params(p, st), std::invalid_argument);
  EXPECT_FALSE(check_axioms(assemble_params(p, st)).ok());
}

TEST_F(Symbolic, TamperedOmegaFailsQa1) {
  auto p = balanced_params(2, a, bc, b(), w1);
  p.omega_sq[1] = p.omega_sq[1] * 2;
  auto rep = classify_params(p);
  EXPECT_FALSE(rep.clause("d-i").pass);
  auto ax = check_axioms(assemble_params(p, st));
  EXPECT_FALSE(ax.qa1);
  EXPECT_TRUE(ax.qa2);
  EXPECT_TRUE(ax.qa3);
}

TEST_F(Symbolic, SingletonBlocks) {
  MnParams p;
  p.n = 2;
  p.blocks = {{1}, {2}};
  p.bc = {bc, bc};
  p.a = {a, Scalar(3)};
  p.off = {{{1, 2}, Scalar::var(2)}, {{2, 1}, Scalar(5)}};
  p.omega_sq = {w1, Scalar(7)};
  auto rep = classify_params(p);
  EXPECT_TRUE(rep.pass());
  auto s = build_from_params(p, st);
  EXPECT_EQ(s.rho.get(E(2, 1, 2), E(2, 2, 1)), Scalar());
  EXPECT_TRUE(check_axioms(s).ok());
}

TEST_F(Symbolic, SecondBranchOfDiagonal) {
  auto p = balanced_params(2, a, bc, b(), w1);
  p.a[1] = -bc / a;
  p.omega_sq[1] = a * p.a[1] / bc * w1;  // = -w1
  EXPECT_TRUE(classify_params(p).pass());
  EXPECT_TRUE(check_axioms(build_from_params(p, st)).ok());
}

TEST_F(Symbolic, BranchChoiceOfRootsIsIrrelevantToAxioms) {
  MnParams p;
  p.n = 2;
  p.blocks = {{1}, {2}};
  p.bc = {bc, bc};
  p.a = {a, a};
  p.off = {{{1, 2}, Scalar(2)}, {{2, 1}, Scalar(3)}};
  p.omega_sq = {Scalar(2), Scalar(3)};
  for (std::vector<int> flip : {std::vector<int>{}, {1}, {2}, {1, 2}}) {
    SymbolTable local{{"a", "sbc"}};
    auto s = build_from_params(p, local, flip);
    EXPECT_FALSE(s.roots.empty());
    EXPECT_TRUE(check_axioms(s).ok());
  }
}

TEST_F(Symbolic, DeclaredPartitionMismatchIsOnlyAWarning) {
  auto p = balanced_params(2, a, bc, b(), w1);
  p.blocks = {{2, 1}};
  p.cross[{2, 1}] = Scalar(0);
  p.cross[{1, 2}] = a - bc / a;
  auto rep = classify_params(p);
  EXPECT_TRUE(rep.pass());
  EXPECT_FALSE(rep.warnings.empty());
}

TEST(Classification, AgreesWithAxiomsOnRandomTables) {
  std::mt19937 rng(20240601);
  int agree = 0, passing = 0, failing = 0;
  for (int trial = 0; trial < 60; ++trial) {
    SymbolTable st;
    int n = 2 + trial % 2;
    auto p = testkit::random_valid_params(rng, n);
    std::string what = "none";
    if (trial % 3 != 0) what = testkit::tamper(rng, p);
    bool classified = classify_params(p).pass();
    bool axioms = false;
    try {
      axioms = check_axioms(assemble_params(p, st)).ok();
    } catch (const std::domain_error&) {
      axioms = false;  // singular rho
    }
    EXPECT_EQ(classified, axioms) << "trial " << trial << " tamper " << what;
    agree += classified == axioms;
    (classified ? passing : failing)++;
  }
  EXPECT_EQ(agree, 60);
  EXPECT_GT(passing, 10);
  EXPECT_GT(failing, 10);
}

TEST(Classification, ErrorsOnMalformedParams) {
  MnParams p;
  p.n = 2;
  p.blocks = {{1}};
  p.bc = {Scalar(1)};
  p.a = {Scalar(1), Scalar(1)};
  p.omega_sq = {Scalar(1), Scalar(1)};
  EXPECT_THROW(classify_params(p), std::invalid_argument);
  p.blocks = {{1, 2}};
  EXPECT_THROW(classify_params(p), std::invalid_argument);  // missing off entries
}
