#include <gtest/gtest.h>

#include "helpers.hpp"
#include "ila/oracle/probes.hpp"

using namespace ila;
using namespace ila::oracle;

TEST(Probes, SingleModulusShape) {
  auto bgv = with_single_modulus(test::preset("bgv-toy"), 40);
  ASSERT_EQ(bgv.moduli.size(), 1u);
  EXPECT_EQ(bit_length(bgv.moduli[0]), 40u);
  EXPECT_EQ(bgv.moduli[0] % 257, 1);
  EXPECT_NO_THROW(validate_params(bgv));
  auto bfv = with_single_modulus(test::preset("bfv-toy"), 40);
  EXPECT_EQ(bfv.moduli[0] % 257, 0);
  EXPECT_NO_THROW(validate_params(bfv));
}

TEST(Probes, StaticDepthMatchesOracleTable) {
  for (const auto& row : test::frozen()["depth"]) {
    std::string scheme = row["scheme"];
    int bits = row["bits"];
    auto p = with_single_modulus(test::preset(scheme == "bgv" ? "bgv-toy" : "bfv-toy"), static_cast<std::size_t>(bits));
    EXPECT_EQ(to_string(p.moduli[0]), row["q"].get<std::string>()) << scheme << " " << bits;
    auto m = make_model(p);
    EXPECT_EQ(static_depth(*m, false, 64), row["cipher"].get<int>()) << scheme << " " << bits;
    EXPECT_EQ(static_depth(*m, true, 64), row["plain"].get<int>()) << scheme << " " << bits;
  }
}

TEST(Probes, StaticNeverExceedsOracleDepth) {
  DepthProbeOptions o;
  o.q_bits = {30, 40, 50, 60};
  o.trials = 2;
  o.max_depth = 16;
  for (const char* name : {"bgv-toy", "bfv-toy"}) {
    for (const auto& r : depth_probe(test::preset(name), o)) {
      EXPECT_LE(r.d_static, r.d_max) << name << " " << r.q_bits;
      EXPECT_GE(r.d_static, r.d_max - 2) << name << " " << r.q_bits;
    }
  }
}

TEST(Probes, ProductChainShape) {
  auto p = product_chain(3, false);
  EXPECT_EQ(p.inputs.size(), 4u);
  EXPECT_EQ(assignments(*p.body).size(), 3u);
  auto q = product_chain(3, true);
  EXPECT_EQ(q.inputs.size(), 1u);
}

TEST(Probes, TfheOverflowAtTwoToTheP) {
  auto rows = tfhe_overflow_probe(test::preset("tfhe-toy"), {2, 3, 4, 5, 6, 12}, 1);
  for (const auto& r : rows) {
    std::int64_t want = test::frozen()["tfhe_rejected_at"][std::to_string(r.p)];
    EXPECT_EQ(r.rejected_at, want) << "p=" << r.p;
    EXPECT_EQ(r.kind, "value");
    EXPECT_EQ(r.dynamic_wrap_at, want);
  }
}

TEST(Probes, PowerSourceParses) {
  auto p = test::core(power_source(3));
  EXPECT_EQ(assignments(*p.body).size(), 3u);
}

TEST(Probes, MedianOfRuns) {
  int calls = 0;
  double ms = median_ms([&] { ++calls; }, 5);
  EXPECT_EQ(calls, 5);
  EXPECT_GE(ms, 0);
}
