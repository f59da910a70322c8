#include <gtest/gtest.h>

#include "helpers.hpp"
#include "ila/bounds.hpp"
#include "ila/estimator.hpp"
#include "ila/oracle/rng.hpp"

using namespace ila;

namespace {

Bound bgv(long inf, long sup, long eps, int level) { return BgvCipherBound{inf, sup, eps, level}; }

EstimatorContext bgv_ctx() {
  EstimatorContext ctx;
  ctx.scheme = SchemeKind::Bgv;
  ctx.t = 16;
  ctx.d = 16;
  ctx.q_max = BigInt(1) << 60;
  ctx.fresh_eps = 536;
  return ctx;
}

}  // namespace

TEST(Bounds, CipherOrdering) {
  EXPECT_EQ(compare_bounds(bgv(1, 2, 5, 1), bgv(0, 3, 7, 1)), Order::Le);
  EXPECT_EQ(compare_bounds(bgv(0, 3, 7, 1), bgv(1, 2, 5, 1)), Order::Ge);
  EXPECT_EQ(compare_bounds(bgv(0, 3, 5, 1), bgv(0, 3, 5, 2)), Order::Incomparable);
  EXPECT_EQ(compare_bounds(bgv(0, 3, 5, 1), bgv(0, 3, 5, 1)), Order::Eq);
  // wider interval but smaller noise
  EXPECT_EQ(compare_bounds(bgv(0, 3, 1, 1), bgv(1, 2, 5, 1)), Order::Incomparable);
}

TEST(Bounds, CrossSortThrowsButLeIsFalse) {
  Bound plain = PlainBound{0, 1};
  EXPECT_THROW(compare_bounds(plain, bgv(0, 1, 1, 0)), std::invalid_argument);
  EXPECT_FALSE(bound_le(plain, bgv(0, 1, 1, 0)));
  EXPECT_EQ(compare_bounds(Bound{MsgBound{}}, Bound{MsgBound{}}), Order::Eq);
}

TEST(Bounds, TfheKindsAreIncomparable) {
  Bound a = TfheCipherBound{CipherKind::Lwe, 0, 1, 1};
  Bound b = TfheCipherBound{CipherKind::Rlwe, 0, 1, 1};
  EXPECT_EQ(compare_bounds(a, b), Order::Incomparable);
  EXPECT_FALSE(join(a, b).has_value());
}

TEST(Bounds, JoinIsHullAndMaxNoise) {
  auto j = join(bgv(0, 1, 2, 3), bgv(2, 3, 4, 3));
  ASSERT_TRUE(j);
  EXPECT_EQ(*j, bgv(0, 3, 4, 3));
  EXPECT_FALSE(join(bgv(0, 1, 2, 3), bgv(0, 1, 2, 2)).has_value());
}

TEST(Bounds, PosetLawsOnRandomTriples) {
  oracle::Rng rng(7);
  auto draw = [&]() -> Bound {
    long a = rng.uniform(-3, 3), b = rng.uniform(-3, 3);
    return BgvCipherBound{std::min(a, b), std::max(a, b), rng.uniform(1, 4), static_cast<int>(rng.uniform(0, 1))};
  };
  for (int i = 0; i < 10000; ++i) {
    Bound x = draw(), y = draw(), z = draw();
    EXPECT_TRUE(bound_le(x, x));
    if (bound_le(x, y) && bound_le(y, x)) EXPECT_EQ(x, y);
    if (bound_le(x, y) && bound_le(y, z)) EXPECT_TRUE(bound_le(x, z));
    if (auto j = join(x, y)) {
      EXPECT_TRUE(bound_le(x, *j));
      EXPECT_TRUE(bound_le(y, *j));
    }
  }
}

TEST(Bounds, Accessors) {
  Bound b = bgv(-1, 2, 9, 4);
  EXPECT_EQ(bound_sort(b), Sort::Cipher);
  EXPECT_EQ(interval_of(b)->first, -1);
  EXPECT_EQ(*noise_of(b), 9);
  EXPECT_EQ(*level_of(b), 4);
  EXPECT_FALSE(noise_of(PlainBound{0, 1}).has_value());
  EXPECT_FALSE(interval_of(MsgBound{}).has_value());
}

TEST(Estimator, WorstCaseIsAProduct) {
  auto est = make_estimator("worst_case", nlohmann::json::object(), bgv_ctx());
  EXPECT_EQ(est.f(3, 5), 15);
  EXPECT_EQ(est.f(1, 77), 77);
  EXPECT_EQ(est.add(3, 5), 8);
  EXPECT_EQ(est.g(2), Rational(16 * 16 * 2));  // default c_pc = t d
  EXPECT_EQ(est.b_r, Rational(16 * 9));         // t (1 + d/2)
}

TEST(Estimator, ScaledWorstCaseBgv) {
  auto ctx = bgv_ctx();
  auto est = make_estimator("scaled_worst_case", nlohmann::json::object(), ctx);
  // d a b + t * bits(q_max) * d * eta
  EXPECT_EQ(est.f(3, 5), Rational(16 * 15 + 16 * 61 * 16));
}

TEST(Estimator, OptionsOverrideDefaults) {
  auto est = make_estimator("worst_case", {{"c_pc", 4}, {"b_r", "1/2"}, {"eps_b", 9}}, bgv_ctx());
  EXPECT_EQ(est.g(3), 12);
  EXPECT_EQ(est.b_r, Rational(1, 2));
  EXPECT_EQ(est.eps_b, 9);
}

TEST(Estimator, CustomTableMonotoneAccepted) {
  nlohmann::json opts = {{"points", {1, 10}}, {"f", {{1, 10}, {10, 100}}}, {"g", {2, 20}}};
  auto est = make_estimator("custom-table", opts, bgv_ctx());
  EXPECT_EQ(est.f(1, 10), 10);
  EXPECT_EQ(est.f(5, 5), 100);  // rounds up to the next grid point
  EXPECT_EQ(est.g(20), 40);     // linear past the last point
}

TEST(Estimator, CustomTableNonMonotoneRejected) {
  nlohmann::json opts = {{"points", {1, 10}}, {"f", {{5, 10}, {3, 100}}}, {"g", {2, 20}}};
  EXPECT_THROW(make_estimator("custom-table", opts, bgv_ctx()), EstimatorError);
  nlohmann::json bad_g = {{"points", {1, 10}}, {"f", {{1, 10}, {10, 100}}}, {"g", {20, 2}}};
  EXPECT_THROW(make_estimator("custom-table", bad_g, bgv_ctx()), EstimatorError);
}

TEST(Estimator, CheckMonotoneCatchesHandWrittenViolation) {
  auto est = make_estimator("worst_case", nlohmann::json::object(), bgv_ctx());
  est.f = [](const Rational& a, const Rational& b) { return a < 100 ? a * b : Rational(1); };
  EXPECT_THROW(check_monotone(est, bgv_ctx()), EstimatorError);
}

TEST(Estimator, UnknownName) {
  EXPECT_THROW(make_estimator("optimistic", nlohmann::json::object(), bgv_ctx()), EstimatorError);
}
