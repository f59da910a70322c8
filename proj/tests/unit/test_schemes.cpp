#include <gtest/gtest.h>

#include "helpers.hpp"
#include "ila/model.hpp"
#include "ila/schemes.hpp"

using namespace ila;

namespace {

BoundResult apply(const Model& m, OpCode op, std::vector<Bound> args, std::vector<std::int64_t> imms = {}) {
  return m.apply_bounds(op, args, imms);
}

}  // namespace

TEST(Params, PresetsLoadAndValidate) {
  for (const char* name : {"bgv-toy", "bgv-wide", "bfv-toy", "tfhe-toy", "psi-generous", "psi-tight"}) {
    auto p = test::preset(name);
    EXPECT_NO_THROW(validate_params(p)) << name;
    EXPECT_EQ(p.name, name);
    auto again = params_from_json(params_to_json(p));
    EXPECT_EQ(again.moduli, p.moduli) << name;
  }
  auto p = test::preset("bgv-toy");
  ASSERT_EQ(p.moduli.size(), 5u);
  EXPECT_LT(p.moduli.front(), p.moduli.back());  // stored low to high
}

TEST(Params, StructuralErrors) {
  nlohmann::json base = {{"scheme", "bgv"}, {"t", 16}, {"d", 16}, {"modulus_chain", {"1000001", "100001"}}};
  EXPECT_NO_THROW(params_from_json(base));
  auto j = base;
  j["d"] = 12;
  EXPECT_THROW(params_from_json(j), ParamsError);
  j = base;
  j["modulus_chain"] = {"100001", "1000001"};  // must be listed top first
  EXPECT_THROW(params_from_json(j), ParamsError);
  j = base;
  j["modulus_chain"] = {"1000000"};  // even, shares a factor with t
  EXPECT_THROW(params_from_json(j), ParamsError);
  j = base;
  j["scheme"] = "bfv";
  j["modulus_chain"] = {"1000001"};  // not a multiple of t
  EXPECT_THROW(params_from_json(j), ParamsError);
  j["modulus_chain"] = {"1048576"};
  EXPECT_NO_THROW(params_from_json(j));
  j = base;
  j["scheme"] = "tfhe";
  j["d"] = 1;
  j["t"] = 12;
  j["modulus_chain"] = {"4294967296"};
  EXPECT_THROW(params_from_json(j), ParamsError);
  j = base;
  j["scheme"] = "ckks";
  EXPECT_THROW(params_from_json(j), ParamsError);
  j = base;
  j.erase("t");
  EXPECT_THROW(params_from_json(j), ParamsError);
}

TEST(Params, FreshNoiseMatchesOracle) {
  const auto& o = test::frozen()["fresh"];
  EXPECT_EQ(fresh_noise_for(test::bgv_params(16, 16, {60})), parse_rational(o["bgv_t16_d16"].get<std::string>()));
  EXPECT_EQ(fresh_noise_for(test::preset("bgv-toy")), parse_rational(o["bgv_t257_d16"].get<std::string>()));
  EXPECT_EQ(fresh_noise_for(test::preset("bfv-toy")), parse_rational(o["bfv_toy"].get<std::string>()));
}

TEST(Intervals, ProductUsesAllFourEndpoints) {
  auto [lo, hi] = product_interval(-1, 2, -3, 1);
  EXPECT_EQ(lo, -6);
  EXPECT_EQ(hi, 3);
  auto [a, b] = scaled_interval(1, 2, -3);
  EXPECT_EQ(a, -6);
  EXPECT_EQ(b, -3);
}

TEST(Bgv, AddAndValueOverflow) {
  auto m = make_model(test::bgv_params(16, 1, {40, 60}));
  auto r = apply(*m, OpCode::Add, {BgvCipherBound{0, 3, 2, 1}, BgvCipherBound{1, 4, 3, 1}});
  ASSERT_TRUE(r);
  EXPECT_EQ(std::get<BgvCipherBound>(*r), (BgvCipherBound{1, 7, 5, 1}));
  // sup = t/2 is already out of range
  r = apply(*m, OpCode::Add, {BgvCipherBound{0, 4, 2, 1}, BgvCipherBound{1, 4, 3, 1}});
  ASSERT_FALSE(r);
  EXPECT_EQ(r.error().kind, FailureKind::Value);
  EXPECT_EQ(r.error().measured, 8);
}

TEST(Bgv, LevelMismatchAndPlainOperands) {
  auto m = make_model(test::bgv_params(16, 1, {40, 60}));
  auto r = apply(*m, OpCode::Mul, {BgvCipherBound{0, 1, 2, 1}, BgvCipherBound{0, 1, 2, 0}});
  ASSERT_FALSE(r);
  EXPECT_EQ(r.error().kind, FailureKind::Level);
  r = apply(*m, OpCode::Add, {PlainBound{-2, 1}, BgvCipherBound{0, 1, 10, 1}});
  ASSERT_TRUE(r);
  EXPECT_EQ(std::get<BgvCipherBound>(*r), (BgvCipherBound{-2, 2, 12, 1}));
  r = apply(*m, OpCode::Mul, {BgvCipherBound{-1, 2, 10, 1}, PlainBound{-3, 1}});
  ASSERT_TRUE(r);
  const auto& c = std::get<BgvCipherBound>(*r);
  EXPECT_EQ(c.inf, -6);
  EXPECT_EQ(c.sup, 3);
  EXPECT_EQ(c.eps, m->estimator().g(10));
}

TEST(Bgv, ModSwitchScalesNoise) {
  auto p = test::bgv_params(16, 1, {40, 60});
  auto m = make_model(p);
  Rational eps = Rational(1) << 30;
  auto r = apply(*m, OpCode::ModSwitch, {BgvCipherBound{0, 1, eps, 1}});
  ASSERT_TRUE(r);
  const auto& c = std::get<BgvCipherBound>(*r);
  EXPECT_EQ(c.level, 0);
  EXPECT_EQ(c.eps, Rational(p.q(0)) / Rational(p.q(1)) * eps + m->estimator().b_r);
  r = apply(*m, OpCode::ModSwitch, {c});
  ASSERT_FALSE(r);
  EXPECT_EQ(r.error().kind, FailureKind::Level);
}

TEST(Bgv, NoiseOverflowNamesCondition) {
  auto p = test::bgv_params(16, 1, {20});
  auto m = make_model(p);
  Rational big = Rational(p.q(0)) / 4;
  auto r = apply(*m, OpCode::Mul, {BgvCipherBound{0, 1, big, 0}, BgvCipherBound{0, 1, 3, 0}});
  ASSERT_FALSE(r);
  EXPECT_EQ(r.error().kind, FailureKind::Noise);
  EXPECT_EQ(r.error().threshold, Rational(p.q(0)) / 2);
  EXPECT_NE(r.error().condition.find("f(eps1, eps2)"), std::string::npos);
}

TEST(Bgv, TfheOperatorsUnsupported) {
  auto m = make_model(test::bgv_params(16, 1, {40}));
  EXPECT_FALSE(m->supports(OpCode::Cmux));
  auto r = apply(*m, OpCode::Pbs, {BgvCipherBound{0, 1, 1, 0}, BgvCipherBound{0, 1, 1, 0}});
  ASSERT_FALSE(r);
  EXPECT_EQ(r.error().kind, FailureKind::Sort);
}

TEST(Bfv, NoiseIsAFractionOfOne) {
  SchemeParams p;
  p.scheme = SchemeKind::Bfv;
  p.t = 16;
  p.d = 1;
  p.moduli = {BigInt(1) << 40};
  p.estimator = "worst_case";
  auto m = make_model(p);
  EXPECT_TRUE(apply(*m, OpCode::Add, {BfvCipherBound{0, 1, Rational(1, 5)}, BfvCipherBound{0, 1, Rational(1, 5)}}));
  auto r = apply(*m, OpCode::Add, {BfvCipherBound{0, 1, Rational(3, 10)}, BfvCipherBound{0, 1, Rational(3, 10)}});
  ASSERT_FALSE(r);
  EXPECT_EQ(r.error().kind, FailureKind::Noise);
  EXPECT_EQ(r.error().threshold, Rational(1, 2));
  EXPECT_FALSE(m->supports(OpCode::ModSwitch));
  r = apply(*m, OpCode::ModSwitch, {BfvCipherBound{0, 1, Rational(1, 5)}});
  ASSERT_FALSE(r);
  EXPECT_EQ(r.error().kind, FailureKind::Sort);
}

TEST(Tfhe, ScaleAndPbs) {
  auto m = make_model(test::tfhe_params(16));
  auto r = apply(*m, OpCode::Scale, {TfheCipherBound{CipherKind::Lwe, 1, 2, 7}}, {-3});
  ASSERT_TRUE(r);
  EXPECT_EQ(std::get<TfheCipherBound>(*r), (TfheCipherBound{CipherKind::Lwe, -6, -3, 21}));
  r = apply(*m, OpCode::Pbs, {TfheCipherBound{CipherKind::Rgsw, 0, 1, 99}, TfheCipherBound{CipherKind::Lwe, -2, 3, 12345}});
  ASSERT_TRUE(r);
  EXPECT_EQ(std::get<TfheCipherBound>(*r).eps, m->estimator().eps_b);
  EXPECT_EQ(std::get<TfheCipherBound>(*r).sup, 3);
}

TEST(Tfhe, KindDiscipline) {
  auto m = make_model(test::tfhe_params(16));
  TfheCipherBound lwe{CipherKind::Lwe, 0, 1, 4}, rgsw{CipherKind::Rgsw, 0, 1, 4};
  auto r = apply(*m, OpCode::ExtProd, {lwe, lwe});
  ASSERT_FALSE(r);
  EXPECT_EQ(r.error().kind, FailureKind::Sort);
  r = apply(*m, OpCode::ExtProd, {rgsw, lwe});
  ASSERT_TRUE(r);
  EXPECT_EQ(std::get<TfheCipherBound>(*r).id, CipherKind::Rlwe);
  EXPECT_EQ(std::get<TfheCipherBound>(*r).eps, 16);
  EXPECT_FALSE(apply(*m, OpCode::IntProd, {rgsw, lwe}));
  EXPECT_FALSE(apply(*m, OpCode::Mul, {lwe, lwe}));
  EXPECT_FALSE(m->supports(OpCode::ModSwitch));
}

TEST(Tfhe, AdditionRejectsAtHalfT) {
  auto m = make_model(test::tfhe_params(16));
  TfheCipherBound acc{CipherKind::Lwe, -8, -8, 1}, one{CipherKind::Lwe, 1, 1, 1};
  int additions = 0;
  BoundResult r = Bound{acc};
  while (r) {
    ++additions;
    r = apply(*m, OpCode::Add, {*r, one});
  }
  EXPECT_EQ(additions, 16);
  EXPECT_EQ(r.error().kind, FailureKind::Value);
}

TEST(Tfhe, ThresholdsAndFreshInputs) {
  auto m = make_model(test::tfhe_params(16));
  auto* tm = dynamic_cast<TfheModel*>(m.get());
  ASSERT_NE(tm, nullptr);
  EXPECT_EQ(tm->add_threshold(), Rational(BigInt(1) << 59));
  EXPECT_EQ(tm->product_threshold(), Rational(BigInt(1) << 60));
  auto b = m->input_bound(InputDecl{"x", Sort::Cipher, CipherKind::Rgsw, 0, 1, std::nullopt, {}});
  ASSERT_TRUE(b);
  EXPECT_EQ(std::get<TfheCipherBound>(*b).eps, 1024);
}

TEST(Model, EncodedInputsIncludeZeroWhenDIsLarge) {
  auto m = make_model(test::bgv_params(257, 16, {60}));
  auto b = m->input_bound(InputDecl{"x", Sort::Cipher, CipherKind::Lwe, 2, 5, std::nullopt, {}});
  ASSERT_TRUE(b);
  EXPECT_EQ(interval_of(*b)->first, 0);
  EXPECT_EQ(interval_of(*b)->second, 5);
  auto m1 = make_model(test::bgv_params(257, 1, {60}));
  b = m1->input_bound(InputDecl{"x", Sort::Cipher, CipherKind::Lwe, 2, 5, std::nullopt, {}});
  EXPECT_EQ(interval_of(*b)->first, 2);
}

TEST(Model, MessageSemantics) {
  auto m = make_model(test::bgv_params(16, 2, {40}));
  Message a{{3, 7}}, b{{5, 12}};
  std::vector<Message> args = {a, b};
  EXPECT_EQ(m->apply_message(OpCode::MsgAdd, args).slots, (zt::Vec{8, 3}));
  EXPECT_EQ(m->apply_message(OpCode::MsgLt, args).slots, (zt::Vec{1, 0}));  // 7 vs -4
  std::vector<Message> one = {a};
  EXPECT_EQ(m->apply_message(OpCode::ModSwitch, one), a);
  EXPECT_EQ(m->apply_message(OpCode::Scale, one, std::vector<std::int64_t>{2}).slots, (zt::Vec{6, 14}));
}
