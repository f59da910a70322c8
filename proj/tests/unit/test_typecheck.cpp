#include <gtest/gtest.h>

#include "helpers.hpp"
#include "ila/oracle/probes.hpp"
#include "ila/typecheck.hpp"

using namespace ila;

namespace {

Type cipher(long inf, long sup, long eps, int level) { return type_of(BgvCipherBound{inf, sup, eps, level}); }

}  // namespace

TEST(Subtype, Examples) {
  EXPECT_TRUE(subtype(cipher(1, 2, 5, 1), cipher(0, 3, 7, 1)));
  EXPECT_FALSE(subtype(cipher(0, 3, 7, 1), cipher(1, 2, 5, 1)));
  EXPECT_FALSE(subtype(type_of(PlainBound{0, 1}), cipher(0, 1, 1, 1)));
  EXPECT_TRUE(subtype(cipher(0, 1, 1, 1), cipher(0, 1, 1, 1)));
  EXPECT_FALSE(subtype(cipher(0, 1, 1, 1), cipher(0, 1, 1, 2)));
}

TEST(TypeExpr, AdditionOfCiphers) {
  auto m = make_model(test::bgv_params(16, 1, {30, 40}));
  Context ctx{{"a", cipher(0, 3, 2, 1)}, {"b", cipher(1, 4, 3, 1)}};
  auto r = type_expr(*m, ctx, *make_op(OpCode::Add, {make_var("a"), make_var("b")}));
  ASSERT_TRUE(r);
  EXPECT_EQ(*r, cipher(1, 7, 5, 1));
}

TEST(TypeExpr, MessageConstant) {
  auto m = make_model(test::bgv_params(16, 1, {30}));
  auto r = type_expr(*m, {}, *make_msg(3));
  ASSERT_TRUE(r);
  EXPECT_EQ(r->sort, Sort::Msg);
  EXPECT_TRUE(std::holds_alternative<MsgBound>(r->bound));
}

TEST(TypeExpr, NoiseDiagnosis) {
  auto p = test::bgv_params(16, 1, {30});
  p.estimator = "worst_case";
  auto m = make_model(p);
  Rational kappa = Rational(p.q(0)) / 2;
  long big = 1L << 20;
  Context ctx{{"a", cipher(0, 1, big, 0)}, {"b", cipher(0, 1, big, 0)}};
  auto r = type_expr(*m, ctx, *make_op(OpCode::Mul, {make_var("a"), make_var("b")}, {}, {3, 6}));
  ASSERT_FALSE(r);
  const auto& d = r.error();
  EXPECT_EQ(d.kind, FailureKind::Noise);
  EXPECT_EQ(*d.measured, Rational(big) * big);
  EXPECT_EQ(*d.threshold, kappa);
  ASSERT_TRUE(d.budget_bits);
  EXPECT_NEAR(*d.budget_bits, log2_of(kappa) - 40.0, 1e-9);
  EXPECT_LT(*d.budget_bits, 0);
  EXPECT_EQ(d.op, "(*)");
  EXPECT_EQ(d.pos.line, 3);
}

TEST(TypeExpr, ValueDiagnosisAtHalfT) {
  auto m = make_model(test::bgv_params(16, 1, {30}));
  Context ctx{{"a", cipher(0, 4, 1, 0)}, {"b", cipher(0, 4, 1, 0)}};
  auto r = type_expr(*m, ctx, *make_op(OpCode::Add, {make_var("a"), make_var("b")}));
  ASSERT_FALSE(r);
  EXPECT_EQ(r.error().kind, FailureKind::Value);
}

TEST(TypeExpr, UnboundVariable) {
  auto m = make_model(test::bgv_params(16, 1, {30}));
  auto r = type_expr(*m, {}, *make_var("nope"));
  ASSERT_FALSE(r);
  EXPECT_EQ(r.error().kind, FailureKind::Sort);
}

TEST(TypeCmd, SkipKeepsContext) {
  auto m = make_model(test::bgv_params(16, 1, {30}));
  Context ctx{{"a", cipher(0, 1, 1, 0)}};
  auto r = type_cmd(*m, ctx, *make_skip());
  ASSERT_TRUE(r);
  EXPECT_EQ(r->ctx, ctx);
}

TEST(TypeCmd, GuardMustBeMsg) {
  auto m = make_model(test::bgv_params(16, 1, {30}));
  Context ctx{{"a", cipher(0, 1, 1, 0)}};
  auto c = make_if(make_var("a"), make_skip(), make_skip());
  EXPECT_FALSE(type_cmd(*m, ctx, *c));
  c = make_if(make_op(OpCode::True, {}), make_skip(), make_skip());
  EXPECT_TRUE(type_cmd(*m, ctx, *c));
}

TEST(TypeCmd, BranchesMerge) {
  auto m = make_model(test::bgv_params(16, 1, {30}));
  Context ctx{{"a", cipher(0, 1, 2, 0)}, {"g", type_of(MsgBound{})}};
  auto c = make_if(make_var("g"), make_assign("x", make_var("a"), 0),
                   make_assign("x", make_op(OpCode::Add, {make_var("a"), make_var("a")}), 1));
  auto r = type_cmd(*m, ctx, *c);
  ASSERT_TRUE(r);
  EXPECT_EQ(r->ctx.at("x"), cipher(0, 2, 4, 0));
  EXPECT_EQ(r->stmt_types.size(), 2u);
}

TEST(Merge, Examples) {
  Context g1{{"x", cipher(0, 1, 2, 3)}}, g2{{"x", cipher(2, 3, 4, 3)}};
  EXPECT_EQ(merge_contexts(g1, g2).at("x"), cipher(0, 3, 4, 3));
  EXPECT_TRUE(merge_contexts(g1, {}).empty());
  EXPECT_EQ(merge_contexts(g1, g1), g1);
  Context g3{{"x", cipher(0, 1, 2, 2)}};
  EXPECT_TRUE(merge_contexts(g1, g3).empty());
}

TEST(CheckProgram, PsiIsWellTypedUnderGenerousPreset) {
  auto m = make_model(test::preset("psi-generous"));
  std::ifstream in(test::source_path("circuits/psi.ila"));
  std::string src((std::istreambuf_iterator<char>(in)), {});
  auto r = check_program(*m, test::core(src));
  ASSERT_TRUE(r) << describe(r.error());
  EXPECT_EQ(r->ctx.at("result").sort, Sort::Cipher);
}

TEST(CheckProgram, RejectsOneMultiplyPastStaticDepth) {
  // The depth the oracle script derives for this modulus; the multiply
  // after it is the one rejected.
  for (const auto& row : test::frozen()["depth"]) {
    if (row["scheme"] != "bgv" || row["bits"] != 50) continue;
    auto p = oracle::with_single_modulus(test::preset("bgv-toy"), 50);
    auto m = make_model(p);
    int depth = row["cipher"].get<int>();
    EXPECT_TRUE(check_program(*m, oracle::product_chain(depth, false)));
    auto r = check_program(*m, oracle::product_chain(depth + 1, false));
    ASSERT_FALSE(r);
    EXPECT_EQ(r.error().stmt, depth);
    EXPECT_EQ(r.error().kind, FailureKind::Noise);
  }
}

TEST(CheckProgram, InputsAreTyped) {
  auto m = make_model(test::bgv_params(16, 1, {30, 40}));
  auto ctx = initial_context(*m, test::core("x := cipher_input(-1, 2)\nn := msg_input(3)\n"));
  ASSERT_TRUE(ctx);
  EXPECT_EQ(ctx->at("x"), type_of(BgvCipherBound{-1, 2, fresh_noise_for(m->params()), 1}));
  EXPECT_EQ(ctx->at("n").sort, Sort::Msg);
}

TEST(Budget, BitsLeft) {
  auto p = test::bgv_params(16, 1, {30});
  auto m = make_model(p);
  auto bits = budget_bits(*m, cipher(0, 1, 1024, 0));
  ASSERT_TRUE(bits);
  EXPECT_NEAR(*bits, log2_of(Rational(p.q(0)) / 2) - 10.0, 1e-9);
  EXPECT_FALSE(budget_bits(*m, type_of(MsgBound{})));
}
