#pragma once

#include <cstdint>
#include <random>

#include "ila/numeric.hpp"

namespace ila::oracle {

// Seeded randomness for key generation, encryption and sampling. Two
// instances with the same seed produce the same stream.
class Rng {
 public:
  explicit Rng(std::uint64_t seed);

  std::int64_t uniform(std::int64_t lo, std::int64_t hi);  // inclusive
  BigInt uniform_below(const BigInt& q);                    // [0, q)
  double real();                                            // [0, 1)
  bool coin() { return uniform(0, 1) == 1; }
  // Centered binomial with parameter eta: values in [-eta, eta].
  std::int64_t binomial(std::int64_t eta);
  std::int64_t ternary() { return uniform(-1, 1); }

  // Seed for an independent child stream.
  std::uint64_t fork() { return engine_(); }

 private:
  std::mt19937_64 engine_;
  gmp_randclass big_;
};

}  // namespace ila::oracle
