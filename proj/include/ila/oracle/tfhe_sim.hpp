#pragma once

// Simulated TFHE: tracks the decrypted value, the exact integer the
// operations should have produced, and a noise counter. No lattice
// arithmetic; this is the dynamic baseline for the TFHE model.

#include <cstdint>

#include "ila/model.hpp"
#include "ila/oracle/rng.hpp"

namespace ila::oracle {

struct TfheValue {
  CipherKind id = CipherKind::Lwe;
  std::int64_t value = 0;  // what decryption returns, in [0, t)
  BigInt exact = 0;        // true integer result, never reduced
  bool wrapped = false;    // exact left [-t/2, t/2) at some point
  bool corrupted = false;  // noise crossed a decryption threshold
  Rational noise = 0;
};

class TfheSim {
 public:
  explicit TfheSim(const Model& model);

  // Fresh noise is drawn from [1, fresh].
  TfheValue encrypt(CipherKind id, std::int64_t v, Rng& rng) const;
  std::int64_t decrypt(const TfheValue& v) const { return v.value; }

  TfheValue add(const TfheValue& a, const TfheValue& b) const;
  TfheValue add_plain(const TfheValue& a, std::int64_t p) const;
  TfheValue ext_prod(const TfheValue& sel, const TfheValue& x) const;
  TfheValue int_prod(const TfheValue& a, const TfheValue& b) const;
  TfheValue scale(const TfheValue& a, std::int64_t n) const;
  TfheValue pbs(const TfheValue& lut, const TfheValue& x) const;
  TfheValue cmux(const TfheValue& b, const TfheValue& x0, const TfheValue& x1) const;

  Rational add_threshold() const;
  Rational product_threshold() const;

 private:
  TfheValue make(CipherKind id, const BigInt& exact, std::int64_t decrypted, bool wrapped, bool corrupted,
                 Rational noise, const Rational& threshold) const;
  TfheValue negate_plus_one(const TfheValue& b) const;

  const Model& model_;
  std::int64_t t_;
  BigInt q_;
};

}  // namespace ila::oracle
