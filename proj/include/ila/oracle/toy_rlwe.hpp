#pragma once

// INSECURE textbook BGV and BFV over Z_q[x]/(x^d + 1). Small dimension,
// small errors, no parameter validation for hardness. It exists so that the
// secret key can measure exact noise.

#include <cstdint>
#include <vector>

#include "ila/message.hpp"
#include "ila/model.hpp"
#include "ila/oracle/ring.hpp"
#include "json.hpp"

namespace ila::oracle {

// Components live in [0, q_level). Two components after encryption, three
// after a tensor product without relinearization.
struct ToyCiphertext {
  std::vector<Poly> c;
  int level = 0;
};

struct LevelKeys {
  Poly pk0, pk1;
  std::vector<std::pair<Poly, Poly>> relin;  // base-2 gadget, one pair per bit of q
};

struct KeyMaterial {
  Poly sk;  // ternary
  std::vector<LevelKeys> levels;
  std::uint64_t seed = 0;
};

class ToyScheme {
 public:
  // Key generation; deterministic per seed. BGV or BFV only.
  ToyScheme(const SchemeParams& params, std::uint64_t seed);

  const SchemeParams& params() const { return params_; }
  const KeyMaterial& keys() const { return keys_; }
  bool bfv() const { return params_.scheme == SchemeKind::Bfv; }

  // m holds plaintext coefficients (reduced mod t); missing ones are zero.
  ToyCiphertext encrypt(const zt::Vec& m, int level, Rng& rng) const;
  // Encryption with chosen randomness and errors; zero errors give a
  // ciphertext whose noise is the message alone.
  ToyCiphertext encrypt_with(const zt::Vec& m, int level, const Poly& u, const Poly& e1, const Poly& e2) const;

  zt::Vec decrypt(const ToyCiphertext& ct) const;  // coefficients in [0, t)
  // Centered [c0 + c1 s + c2 s^2]_q.
  Poly residual(const ToyCiphertext& ct) const;
  // BGV: infinity norm of the residual (message included), against q/2.
  // BFV: largest distance of t*r/q from an integer, against 1/2.
  Rational noise(const ToyCiphertext& ct) const;
  // BFV noise relative to the message the ciphertext should hold, so that
  // an overflowed ciphertext shows noise above 1/2. BGV: same as noise().
  Rational noise_against(const ToyCiphertext& ct, const zt::Vec& expected) const;

  ToyCiphertext add(const ToyCiphertext& a, const ToyCiphertext& b) const;
  ToyCiphertext add_plain(const ToyCiphertext& a, const zt::Vec& p) const;
  ToyCiphertext tensor(const ToyCiphertext& a, const ToyCiphertext& b) const;
  ToyCiphertext relinearize(const ToyCiphertext& a) const;
  ToyCiphertext mul(const ToyCiphertext& a, const ToyCiphertext& b) const;  // tensor, then relinearize
  ToyCiphertext mul_plain(const ToyCiphertext& a, const zt::Vec& p) const;
  ToyCiphertext scale(const ToyCiphertext& a, std::int64_t n) const;
  ToyCiphertext modswitch(const ToyCiphertext& a) const;  // BGV only

  // Debug export of all key material. INSECURE.
  nlohmann::json dump_keys() const;

 private:
  const BigInt& q(int level) const;
  Poly plain_poly(const zt::Vec& p) const;  // centered, padded to d
  void require_same_level(const ToyCiphertext& a, const ToyCiphertext& b) const;

  SchemeParams params_;
  BigInt delta_;  // q / t for BFV
  KeyMaterial keys_;
};

}  // namespace ila::oracle
