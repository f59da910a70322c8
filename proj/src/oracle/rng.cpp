#include "ila/oracle/rng.hpp"

namespace ila::oracle {

Rng::Rng(std::uint64_t seed) : engine_(seed), big_(gmp_randinit_mt) {
  big_.seed(static_cast<unsigned long>(seed ^ 0x9e3779b97f4a7c15ULL));
}

std::int64_t Rng::uniform(std::int64_t lo, std::int64_t hi) {
  return std::uniform_int_distribution<std::int64_t>(lo, hi)(engine_);
}

BigInt Rng::uniform_below(const BigInt& q) { return big_.get_z_range(q); }

double Rng::real() { return std::uniform_real_distribution<double>(0.0, 1.0)(engine_); }

std::int64_t Rng::binomial(std::int64_t eta) {
  std::int64_t v = 0;
  for (std::int64_t i = 0; i < eta; ++i) {
    std::uint64_t w = engine_();
    v += static_cast<std::int64_t>(w & 1) - static_cast<std::int64_t>((w >> 1) & 1);
  }
  return v;
}

}  // namespace ila::oracle
