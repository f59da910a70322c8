#include <gtest/gtest.h>

#include "helpers.hpp"
#include "ila/oracle/toy_rlwe.hpp"

using namespace ila;
using namespace ila::oracle;

namespace {

Poly poly(const nlohmann::json& j) {
  Poly p;
  for (const auto& v : j) p.push_back(BigInt(v.get<long>()));
  return p;
}

SchemeParams small_bgv() {
  auto p = test::bgv_params(16, 16, {40, 60});
  p.seed = 3;
  return p;
}

zt::Vec constant(std::int64_t v, const SchemeParams& p) { return zt::constant(v, p.d, p.t); }

}  // namespace

TEST(Ring, NegacyclicMatchesOracle) {
  const auto& o = test::frozen()["negacyclic"];
  EXPECT_EQ(ring::mul(poly(o["a"]), poly(o["b"]), BigInt(17)), poly(o["out"]));
}

TEST(Ring, CenteredRepresentatives) {
  EXPECT_EQ(ring::centered(BigInt(9), BigInt(17)), BigInt(-8));
  EXPECT_EQ(ring::centered(BigInt(8), BigInt(17)), BigInt(8));
  EXPECT_EQ(ring::centered(BigInt(8), BigInt(16)), BigInt(8));
  EXPECT_EQ(ring::mod(BigInt(-1), BigInt(17)), BigInt(16));
  EXPECT_EQ(ring::inf_norm(ring::from_ints({3, -7, 2})), BigInt(7));
}

TEST(Ring, SamplersStayInRange) {
  Rng rng(1);
  for (const auto& c : ring::ternary(64, rng)) EXPECT_TRUE(c >= -1 && c <= 1);
  for (const auto& c : ring::binomial(64, 2, rng)) EXPECT_TRUE(c >= -2 && c <= 2);
  for (const auto& c : ring::uniform(64, BigInt(97), rng)) EXPECT_TRUE(c >= 0 && c < 97);
}

TEST(Rng, DeterministicPerSeed) {
  Rng a(9), b(9), c(10);
  bool differs = false;
  for (int i = 0; i < 100; ++i) {
    auto x = a.uniform(0, 1000);
    EXPECT_EQ(x, b.uniform(0, 1000));
    differs = differs || x != c.uniform(0, 1000);
  }
  EXPECT_TRUE(differs);
}

TEST(Toy, KeysDeterministicPerSeed) {
  ToyScheme a(small_bgv(), 4), b(small_bgv(), 4), c(small_bgv(), 5);
  EXPECT_EQ(a.keys().sk, b.keys().sk);
  EXPECT_EQ(a.keys().levels[1].pk0, b.keys().levels[1].pk0);
  EXPECT_NE(a.keys().levels[1].pk0, c.keys().levels[1].pk0);
  EXPECT_EQ(a.dump_keys(), b.dump_keys());
}

TEST(Toy, RoundTripAndFreshNoise) {
  auto p = small_bgv();
  ToyScheme s(p, 1);
  Rng rng(2);
  Rational fresh = fresh_noise_for(p);
  for (int i = 0; i < 50; ++i) {
    zt::Vec m(p.d);
    for (auto& x : m) x = rng.uniform(0, p.t - 1);
    auto ct = s.encrypt(m, 1, rng);
    EXPECT_EQ(s.decrypt(ct), m);
    EXPECT_LE(s.noise(ct), fresh);
  }
}

TEST(Toy, ZeroErrorsLeaveTheMessage) {
  auto p = small_bgv();
  ToyScheme s(p, 1);
  Poly z = ring::zero(p.d);
  auto ct = s.encrypt_with(constant(5, p), 1, z, z, z);
  zt::Vec five = constant(5, p);
  EXPECT_EQ(s.residual(ct), ring::from_ints(std::vector<std::int64_t>(five.begin(), five.end())));
  EXPECT_EQ(s.noise(ct), 5);
}

TEST(Toy, HomomorphicAddAndMultiply) {
  for (auto scheme : {SchemeKind::Bgv, SchemeKind::Bfv}) {
    SchemeParams p;
    if (scheme == SchemeKind::Bgv) {
      p = small_bgv();
    } else {
      p = test::preset("bfv-toy");
      p.t = 16;
      p.moduli = {BigInt(1) << 100};
    }
    ToyScheme s(p, 7);
    Rng rng(8);
    int top = p.top_level();
    auto a = s.encrypt(constant(2, p), top, rng);
    auto b = s.encrypt(constant(3, p), top, rng);
    EXPECT_EQ(s.decrypt(s.add(a, b)), constant(5, p));
    EXPECT_EQ(s.decrypt(s.mul(a, b)), constant(6, p));
    EXPECT_EQ(s.decrypt(s.scale(a, -3)), constant(-6, p));
    EXPECT_EQ(s.decrypt(s.add_plain(a, constant(4, p))), constant(6, p));
    EXPECT_EQ(s.decrypt(s.mul_plain(b, constant(-1, p))), constant(-3, p));
    auto t3 = s.tensor(a, b);
    EXPECT_EQ(t3.c.size(), 3u);
    EXPECT_EQ(s.decrypt(t3), constant(6, p));
  }
}

TEST(Toy, ModSwitchReducesNoise) {
  auto p = small_bgv();
  ToyScheme s(p, 1);
  Rng rng(3);
  auto a = s.encrypt(constant(3, p), 1, rng);
  auto sq = s.mul(a, a);
  auto low = s.modswitch(sq);
  EXPECT_EQ(low.level, 0);
  EXPECT_EQ(s.decrypt(low), constant(9, p));
  EXPECT_LT(s.noise(low), s.noise(sq));
  EXPECT_THROW(s.modswitch(low), std::invalid_argument);
}

TEST(Toy, ModSwitchMatchesOracle) {
  const auto& o = test::frozen()["bgv_modswitch"];
  SchemeParams p;
  p.scheme = SchemeKind::Bgv;
  p.t = o["t"];
  p.d = o["d"];
  p.moduli = {BigInt(o["moduli"][0].get<long>()), BigInt(o["moduli"][1].get<long>())};
  ToyScheme s(p, 1);
  ToyCiphertext ct{{poly(o["c0"]), poly(o["c1"])}, 1};
  auto out = s.modswitch(ct);
  EXPECT_EQ(out.c[0], poly(o["out0"]));
  EXPECT_EQ(out.c[1], poly(o["out1"]));
}

TEST(Toy, BfvTensorMatchesOracle) {
  const auto& o = test::frozen()["bfv_tensor"];
  SchemeParams p;
  p.scheme = SchemeKind::Bfv;
  p.t = o["t"];
  p.d = o["d"];
  p.moduli = {BigInt(o["q"].get<long>())};
  ToyScheme s(p, 1);
  ToyCiphertext a{{poly(o["a"][0]), poly(o["a"][1])}, 0}, b{{poly(o["b"][0]), poly(o["b"][1])}, 0};
  auto out = s.tensor(a, b);
  ASSERT_EQ(out.c.size(), 3u);
  for (int i = 0; i < 3; ++i) EXPECT_EQ(out.c[static_cast<std::size_t>(i)], poly(o["out"][i])) << i;
}

TEST(Toy, RepeatedSquaringCorrupts) {
  auto p = test::bgv_params(16, 16, {40});
  ToyScheme s(p, 2);
  Rng rng(4);
  auto ct = s.encrypt(constant(1, p), 0, rng);
  int ok = 0;
  for (; ok < 20; ++ok) {
    auto next = s.mul(ct, ct);
    if (s.decrypt(next) != constant(1, p)) break;
    ct = next;
  }
  EXPECT_LT(ok, 20);
  EXPECT_GT(ok, 0);
}

TEST(Toy, BfvNoiseAgainstExpectedMessage) {
  auto p = test::preset("bfv-toy");
  ToyScheme s(p, 1);
  Rng rng(5);
  auto ct = s.encrypt(constant(7, p), 0, rng);
  EXPECT_EQ(s.noise_against(ct, constant(7, p)), s.noise(ct));
  EXPECT_LT(s.noise(ct), Rational(1, 2));
  EXPECT_GT(s.noise_against(ct, constant(8, p)), Rational(1, 2));
  EXPECT_THROW(s.modswitch(ct), std::invalid_argument);
}

TEST(Toy, LevelMismatchRejected) {
  auto p = small_bgv();
  ToyScheme s(p, 1);
  Rng rng(6);
  auto a = s.encrypt(constant(1, p), 1, rng), b = s.encrypt(constant(1, p), 0, rng);
  EXPECT_THROW(s.add(a, b), std::invalid_argument);
}
