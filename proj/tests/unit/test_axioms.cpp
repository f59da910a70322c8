#include <gtest/gtest.h>

#include "helpers.hpp"
#include "ila/oracle/axioms.hpp"
#include "mutants.hpp"

using namespace ila;
using namespace ila::oracle;

namespace {

SchemeParams params16() {
  auto p = test::bgv_params(16, 16, {40, 60});
  p.seed = 2;
  return p;
}

AxiomSuiteOptions quick(std::uint64_t seed = 1) {
  AxiomSuiteOptions o;
  o.comm_defined = 100;
  o.dc_samples = 500;
  o.dc_defined = 100;
  o.seed = seed;
  return o;
}

bool all_passed(const std::vector<OpAxiomStats>& stats) {
  return std::all_of(stats.begin(), stats.end(), [](const auto& s) { return s.passed(); });
}

}  // namespace

TEST(Commutativity, BgvAdditionOfTwoAndThree) {
  auto m = make_model(params16());
  SecretModel sm(*m, 1);
  Rng rng(2);
  Value args[2] = {sm.encrypt(2, CipherKind::Lwe, rng), sm.encrypt(3, CipherKind::Lwe, rng)};
  auto v = check_commutativity(sm, OpCode::Add, args);
  EXPECT_TRUE(v.holds) << v.detail;
  EXPECT_TRUE(v.defined);
  Value sum = sm.apply(OpCode::Add, args);
  EXPECT_EQ(sm.interp(sum), (Message{zt::constant(5, 16, 16)}));
  EXPECT_EQ(sm.toy()->decrypt(std::get<ToyCiphertext>(sum)), zt::constant(5, 16, 16));
}

TEST(Commutativity, MessageOperatorsHoldTrivially) {
  auto m = make_model(params16());
  SecretModel sm(*m, 1);
  Value args[2] = {Message{zt::broadcast(3, 16, 16)}, Message{zt::broadcast(4, 16, 16)}};
  auto v = check_commutativity(sm, OpCode::MsgAdd, args);
  EXPECT_TRUE(v.holds) << v.detail;
}

TEST(Commutativity, CorruptedBoundsMapFails) {
  fuzz::UnsoundBgvModel m(params16());
  SecretModel sm(m, 1);
  Rng rng(3);
  bool failed = false;
  for (int i = 0; i < 50 && !failed; ++i) {
    Value args[2] = {sm.encrypt(1, CipherKind::Lwe, rng), sm.encrypt(1, CipherKind::Lwe, rng)};
    failed = !check_commutativity(sm, OpCode::Mul, args).holds;
  }
  EXPECT_TRUE(failed);
}

TEST(DownwardsClosed, BgvAdditionExample) {
  auto m = make_model(params16());
  std::vector<Bound> big = {BgvCipherBound{0, 1, 3, 1}, BgvCipherBound{0, 1, 4, 1}};
  std::vector<Bound> small = {BgvCipherBound{0, 1, 1, 1}, BgvCipherBound{0, 1, 2, 1}};
  auto v = check_downwards_closed(*m, OpCode::Add, big, small);
  EXPECT_TRUE(v.holds) << v.detail;
  EXPECT_TRUE(v.defined);
  v = check_downwards_closed(*m, OpCode::Add, big, big);
  EXPECT_TRUE(v.holds);
}

TEST(DownwardsClosed, NonMonotoneModelCaught) {
  fuzz::NonMonotoneBgvModel m(test::bgv_params(16, 16, {40}));
  Rational near_cap = Rational(m.params().q(0)) / 4;
  std::vector<Bound> big = {BgvCipherBound{0, 1, near_cap, 0}, BgvCipherBound{0, 1, 1, 0}};
  std::vector<Bound> small = {BgvCipherBound{0, 1, 1, 0}, BgvCipherBound{0, 1, 1, 0}};
  EXPECT_FALSE(check_downwards_closed(m, OpCode::Add, big, small).holds);
}

TEST(Suite, EveryOperatorOfEveryPresetPasses) {
  for (const char* name : {"bgv-toy", "bfv-toy", "tfhe-toy"}) {
    auto m = make_model(test::preset(name));
    SecretModel sm(*m, 9);
    auto stats = run_axiom_suite(sm, quick());
    EXPECT_EQ(stats.size(), model_operators(*m).size());
    for (const auto& s : stats) {
      EXPECT_TRUE(s.passed()) << name << " " << op_info(s.op).name << ": " << s.first_failure;
      EXPECT_GE(s.comm_defined, 100) << name << " " << op_info(s.op).name;
      EXPECT_GE(s.dc_defined, 100) << name << " " << op_info(s.op).name;
    }
  }
}

TEST(Suite, MutantsFail) {
  fuzz::UnsoundBgvModel unsound(params16());
  SecretModel sm1(unsound, 1);
  EXPECT_FALSE(all_passed(run_axiom_suite(sm1, quick())));
  fuzz::NonMonotoneBgvModel nonmono(params16());
  SecretModel sm2(nonmono, 1);
  EXPECT_FALSE(all_passed(run_axiom_suite(sm2, quick())));
}

TEST(Signatures, OperatorsMatchSupport) {
  auto tfhe = make_model(test::preset("tfhe-toy"));
  auto ops = model_operators(*tfhe);
  EXPECT_NE(std::find(ops.begin(), ops.end(), OpCode::Cmux), ops.end());
  EXPECT_EQ(std::find(ops.begin(), ops.end(), OpCode::ModSwitch), ops.end());
  for (auto op : ops) EXPECT_FALSE(signatures(*tfhe, op).empty()) << op_info(op).name;
}
