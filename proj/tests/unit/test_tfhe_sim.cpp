#include <gtest/gtest.h>

#include "helpers.hpp"
#include "ila/oracle/tfhe_sim.hpp"

using namespace ila;
using namespace ila::oracle;

namespace {

struct Fixture {
  std::unique_ptr<Model> model;
  TfheSim sim;
  explicit Fixture(std::int64_t t, unsigned q_bits = 64) : model(make_model(test::tfhe_params(t, q_bits))), sim(*model) {}
};

}  // namespace

TEST(TfheSim, RejectsOtherSchemes) {
  auto m = make_model(test::bgv_params(16, 1, {40}));
  EXPECT_THROW(TfheSim{*m}, std::invalid_argument);
}

TEST(TfheSim, FreshNoiseWithinConfiguredBound) {
  Fixture f(16);
  Rng rng(1);
  for (int i = 0; i < 200; ++i) {
    auto v = f.sim.encrypt(CipherKind::Lwe, 3, rng);
    EXPECT_GE(v.noise, 1);
    EXPECT_LE(v.noise, 1024);
    EXPECT_EQ(f.sim.decrypt(v), 3);
  }
}

TEST(TfheSim, WrapsExactlyAtTwoToThePForEveryP) {
  for (int p = 2; p <= 12; ++p) {
    std::int64_t t = std::int64_t{1} << p;
    Fixture f(t);
    Rng rng(static_cast<std::uint64_t>(p));
    auto acc = f.sim.encrypt(CipherKind::Lwe, -t / 2, rng);
    auto one = f.sim.encrypt(CipherKind::Lwe, 1, rng);
    std::int64_t wrapped_at = -1;
    for (std::int64_t n = 1; n <= t + 1 && wrapped_at < 0; ++n) {
      acc = f.sim.add(acc, one);
      if (acc.wrapped) wrapped_at = n;
      EXPECT_FALSE(acc.corrupted);
    }
    EXPECT_EQ(wrapped_at, test::frozen()["tfhe_rejected_at"][std::to_string(p)].get<std::int64_t>()) << "p=" << p;
  }
}

TEST(TfheSim, ScaleByZero) {
  Fixture f(16);
  Rng rng(2);
  auto v = f.sim.scale(f.sim.encrypt(CipherKind::Lwe, 5, rng), 0);
  EXPECT_EQ(f.sim.decrypt(v), 0);
  EXPECT_EQ(v.noise, 0);
  EXPECT_FALSE(v.wrapped);
}

TEST(TfheSim, ScaleNegative) {
  Fixture f(16);
  Rng rng(3);
  auto x = f.sim.encrypt(CipherKind::Lwe, 2, rng);
  auto v = f.sim.scale(x, -3);
  EXPECT_EQ(zt::centered(f.sim.decrypt(v), 16), -6);
  EXPECT_EQ(v.noise, 3 * x.noise);
}

TEST(TfheSim, ProductsAndCmux) {
  Fixture f(16);
  Rng rng(4);
  auto b1 = f.sim.encrypt(CipherKind::Rgsw, 1, rng);
  auto b0 = f.sim.encrypt(CipherKind::Rgsw, 0, rng);
  auto x0 = f.sim.encrypt(CipherKind::Lwe, 3, rng);
  auto x1 = f.sim.encrypt(CipherKind::Lwe, -2, rng);
  EXPECT_EQ(f.sim.decrypt(f.sim.cmux(b1, x0, x1)), zt::reduce(-2, 16));
  EXPECT_EQ(f.sim.decrypt(f.sim.cmux(b0, x0, x1)), 3);
  auto e = f.sim.ext_prod(b1, x0);
  EXPECT_EQ(e.id, CipherKind::Rlwe);
  EXPECT_EQ(e.noise, b1.noise * x0.noise);
  EXPECT_EQ(f.sim.int_prod(b1, b0).id, CipherKind::Rgsw);
  EXPECT_THROW(f.sim.ext_prod(x0, x1), std::invalid_argument);
  EXPECT_THROW(f.sim.add(b1, x0), std::invalid_argument);
}

TEST(TfheSim, PbsResetsNoise) {
  Fixture f(16);
  Rng rng(5);
  auto lut = f.sim.encrypt(CipherKind::Rgsw, 1, rng);
  auto x = f.sim.scale(f.sim.encrypt(CipherKind::Lwe, 1, rng), 5);
  auto y = f.sim.pbs(lut, x);
  EXPECT_EQ(y.noise, f.model->estimator().eps_b);
  EXPECT_EQ(f.sim.decrypt(y), 5);
}

TEST(TfheSim, NoiseCorruptionFlipsTheValue) {
  Fixture f(16, 20);  // q/2t = 2^15
  Rng rng(6);
  auto x = f.sim.encrypt(CipherKind::Lwe, 1, rng);
  auto zero = f.sim.scale(x, 0);
  TfheValue acc = x;
  int n = 0;
  while (!acc.corrupted && n < 1000) {
    acc = f.sim.add(acc, f.sim.encrypt(CipherKind::Lwe, 0, rng));
    ++n;
  }
  EXPECT_TRUE(acc.corrupted);
  EXPECT_GT(acc.noise, f.sim.add_threshold());
  EXPECT_NE(f.sim.decrypt(acc), 1);
  EXPECT_EQ(f.sim.decrypt(zero), 0);
}
