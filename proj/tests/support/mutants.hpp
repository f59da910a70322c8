#pragma once

// Deliberately broken BGV models, used as negative controls for the axiom
// harness.

#include "ila/schemes.hpp"

namespace ila::fuzz {

// (*) claims 2^16 times less noise than it produces.
class UnsoundBgvModel : public BgvModel {
 public:
  using BgvModel::BgvModel;

 protected:
  BoundResult scheme_bounds(OpCode op, std::span<const Bound> args,
                            std::span<const std::int64_t> imms) const override {
    auto r = BgvModel::scheme_bounds(op, args, imms);
    if (!r || op != OpCode::Mul) return r;
    auto b = std::get<BgvCipherBound>(*r);
    b.eps = std::max(Rational(1), Rational(b.eps / 65536));
    return Bound{b};
  }
};

// (+) reports max(s, 2^40 / s) for s = eps1 + eps2: never below the true
// growth, but larger for smaller inputs, so smaller operands can fail.
class NonMonotoneBgvModel : public BgvModel {
 public:
  using BgvModel::BgvModel;

 protected:
  BoundResult scheme_bounds(OpCode op, std::span<const Bound> args,
                            std::span<const std::int64_t> imms) const override {
    auto r = BgvModel::scheme_bounds(op, args, imms);
    if (!r || op != OpCode::Add || !std::holds_alternative<BgvCipherBound>(*r)) return r;
    auto b = std::get<BgvCipherBound>(*r);
    BigInt k = 1;
    mpz_mul_2exp(k.get_mpz_t(), k.get_mpz_t(), 40);
    b.eps = std::max(b.eps, Rational(Rational(k) / b.eps));
    Rational cap = noise_threshold(Bound{b});
    if (b.eps > cap) return unexpected(BoundFailure{FailureKind::Noise, "(+): eps <= q_w/2", b.eps, cap});
    return Bound{b};
  }
};

}  // namespace ila::fuzz
