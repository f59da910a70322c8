#include "ila/oracle/axioms.hpp"

#include <cmath>

namespace ila::oracle {

AxiomVerdict check_commutativity(const SecretModel& sm, OpCode op, std::span<const Value> args,
                                 std::span<const std::int64_t> imms) {
  const Model& model = sm.model();
  AxiomVerdict v;
  std::vector<Bound> measured;
  std::vector<Message> msgs;
  for (const auto& a : args) {
    msgs.push_back(sm.interp(a));
    measured.push_back(sm.measure(a, &msgs.back()));
  }
  auto b = model.apply_bounds(op, measured, imms);
  if (!b) return v;
  v.defined = true;
  Value result;
  try {
    result = sm.apply(op, args, imms);
  } catch (const StuckError& e) {
    v.holds = false;
    v.detail = std::string("native semantics stuck: ") + e.what();
    return v;
  }
  Message expected = model.apply_message(op, msgs, imms);
  Bound got = sm.measure(result, &expected);
  if (!bound_le(got, *b)) {
    v.holds = false;
    v.detail = "measured " + describe(got) + " exceeds bound " + describe(*b);
    return v;
  }
  if (!(sm.interp(result) == expected)) {
    v.holds = false;
    v.detail = "interpretation " + describe(sm.interp(result), model.t()) + " differs from message result " +
               describe(expected, model.t());
  }
  return v;
}

AxiomVerdict check_downwards_closed(const Model& model, OpCode op, std::span<const Bound> bounds,
                                    std::span<const Bound> smaller, std::span<const std::int64_t> imms) {
  AxiomVerdict v;
  if (bounds.size() != smaller.size()) {
    v.holds = false;
    v.detail = "argument count mismatch";
    return v;
  }
  for (std::size_t i = 0; i < bounds.size(); ++i)
    if (!bound_le(smaller[i], bounds[i])) {
      v.holds = false;
      v.detail = "precondition: argument " + std::to_string(i) + " is not smaller";
      return v;
    }
  auto big = model.apply_bounds(op, bounds, imms);
  if (!big) return v;
  v.defined = true;
  auto small = model.apply_bounds(op, smaller, imms);
  if (!small) {
    v.holds = false;
    v.detail = "undefined on smaller inputs: " + small.error().condition;
    return v;
  }
  if (!bound_le(*small, *big)) {
    v.holds = false;
    v.detail = "result " + describe(*small) + " is not below " + describe(*big);
  }
  return v;
}

std::vector<OpCode> model_operators(const Model& model) {
  std::vector<OpCode> out;
  for (int i = 0; i <= static_cast<int>(OpCode::MsgNe); ++i) {
    auto op = static_cast<OpCode>(i);
    if (model.supports(op)) out.push_back(op);
  }
  return out;
}

std::vector<Signature> signatures(const Model& model, OpCode op) {
  const ArgSpec msg{Sort::Msg, {}}, plain{Sort::Plain, {}};
  const bool tfhe = model.scheme() == SchemeKind::Tfhe;
  const ArgSpec cipher = tfhe ? ArgSpec{Sort::Cipher, {CipherKind::Lwe, CipherKind::Rlwe}} : ArgSpec{};
  const ArgSpec rgsw{Sort::Cipher, {CipherKind::Rgsw}};
  const ArgSpec lwe{Sort::Cipher, {CipherKind::Lwe}};
  if (op == OpCode::True) return {{}};
  if (is_message_op(op)) return op_info(op).arity == 1 ? std::vector<Signature>{{msg}} : std::vector<Signature>{{msg, msg}};
  switch (op) {
    case OpCode::Add: return {{cipher, cipher}, {cipher, plain}, {plain, cipher}, {plain, plain}};
    case OpCode::Mul:
      if (tfhe) return {{plain, plain}};
      return {{cipher, cipher}, {cipher, plain}, {plain, cipher}, {plain, plain}};
    case OpCode::Scale:
      if (tfhe) return {{ArgSpec{Sort::Cipher, {CipherKind::Lwe, CipherKind::Rlwe, CipherKind::Rgsw}}}, {plain}};
      return {{cipher}, {plain}};
    case OpCode::ModSwitch: return {{cipher}};
    case OpCode::ExtProd: return {{rgsw, cipher}};
    case OpCode::IntProd: return {{rgsw, rgsw}};
    case OpCode::Pbs: return {{rgsw, lwe}};
    case OpCode::Cmux: return {{rgsw, cipher, cipher}};
    default: return {};
  }
}

namespace {

CipherKind pick_kind(const ArgSpec& spec, Rng& rng) {
  return spec.kinds.at(static_cast<std::size_t>(rng.uniform(0, static_cast<std::int64_t>(spec.kinds.size()) - 1)));
}

// 2^k * m / 1024 with m in [1024, 2047].
Rational log_uniform(int lo_bits, int hi_bits, Rng& rng) {
  int k = static_cast<int>(rng.uniform(lo_bits, hi_bits));
  Rational r(rng.uniform(1024, 2047), 1024);
  BigInt p = 1;
  mpz_mul_2exp(p.get_mpz_t(), p.get_mpz_t(), static_cast<mp_bitcnt_t>(std::abs(k)));
  return k >= 0 ? Rational(r * p) : Rational(r / p);
}

Rational fraction(Rng& rng) { return Rational(rng.uniform(0, 8), 8); }

std::pair<Rational, Rational> sample_interval(const Model& model, Rng& rng) {
  std::int64_t t = model.t();
  std::int64_t s = 1;
  std::int64_t target = rng.uniform(0, 16);
  while (s < t && target-- > 0) s *= 2;
  std::int64_t lo = rng.uniform(-s, s);
  std::int64_t hi = rng.uniform(lo, s);
  return {Rational(lo), Rational(hi)};
}

}  // namespace

Value sample_value(const SecretModel& sm, const ArgSpec& spec, std::int64_t magnitude, Rng& rng) {
  const Model& model = sm.model();
  const std::int64_t t = model.t();
  if (spec.sort == Sort::Msg) {
    zt::Vec v(model.d());
    for (auto& s : v) s = rng.uniform(0, t - 1);
    return Message{v};
  }
  std::int64_t v = rng.uniform(-magnitude, magnitude);
  if (spec.sort == Sort::Plain) return Plaintext{zt::constant(v, model.d(), t)};
  CipherKind kind = pick_kind(spec, rng);
  if (model.scheme() == SchemeKind::Tfhe) return sm.encrypt(v, kind, rng);
  int level = static_cast<int>(rng.uniform(0, model.params().top_level()));
  Value x = sm.encrypt(v, kind, rng, level);
  // Vary the noise: add an encryption of 0 or multiply by one of 1.
  std::int64_t extra = rng.uniform(0, 2);
  if (extra == 0) return x;
  Value other = sm.encrypt(extra == 1 ? 0 : 1, kind, rng, level);
  Value args[2] = {x, other};
  Value y = sm.apply(extra == 1 ? OpCode::Add : OpCode::Mul, args);
  Message want{zt::constant(v, model.d(), t)};
  auto eps = noise_of(sm.measure(y, &want));
  if (!(sm.interp(y) == want) || *eps > model.noise_threshold(sm.measure(y))) return x;
  return y;
}

Bound sample_bound(const Model& model, const ArgSpec& spec, Rng& rng, int level) {
  if (spec.sort == Sort::Msg) return MsgBound{};
  auto [inf, sup] = sample_interval(model, rng);
  if (spec.sort == Sort::Plain) return PlainBound{inf, sup};
  const auto& p = model.params();
  int bits = static_cast<int>(bit_length(p.q(level)));
  switch (model.scheme()) {
    case SchemeKind::Bgv: return BgvCipherBound{inf, sup, log_uniform(0, bits, rng), level};
    case SchemeKind::Bfv: return BfvCipherBound{inf, sup, log_uniform(-bits, 0, rng)};
    case SchemeKind::Tfhe: return TfheCipherBound{pick_kind(spec, rng), inf, sup, log_uniform(0, bits, rng)};
  }
  return MsgBound{};
}

Bound sample_smaller(const Model&, const Bound& b, Rng& rng) {
  auto shrink = [&](const Rational& inf, const Rational& sup) {
    Rational lo = inf + (sup - inf) * fraction(rng);
    Rational hi = lo + (sup - lo) * fraction(rng);
    return std::pair<Rational, Rational>{lo, hi};
  };
  auto smaller_eps = [&](const Rational& eps, bool at_least_one) {
    Rational e = eps * Rational(rng.uniform(1, 8), 8);
    if (at_least_one && e < 1) e = std::min(eps, Rational(1));
    return e;
  };
  return std::visit(
      [&](const auto& x) -> Bound {
        using T = std::decay_t<decltype(x)>;
        if constexpr (std::is_same_v<T, MsgBound>) {
          return x;
        } else if constexpr (std::is_same_v<T, PlainBound>) {
          auto [lo, hi] = shrink(x.inf, x.sup);
          return PlainBound{lo, hi};
        } else if constexpr (std::is_same_v<T, BgvCipherBound>) {
          auto [lo, hi] = shrink(x.inf, x.sup);
          return BgvCipherBound{lo, hi, smaller_eps(x.eps, true), x.level};
        } else if constexpr (std::is_same_v<T, BfvCipherBound>) {
          auto [lo, hi] = shrink(x.inf, x.sup);
          return BfvCipherBound{lo, hi, smaller_eps(x.eps, false)};
        } else {
          auto [lo, hi] = shrink(x.inf, x.sup);
          return TfheCipherBound{x.id, lo, hi, smaller_eps(x.eps, true)};
        }
      },
      b);
}

namespace {

std::int64_t isqrt(std::int64_t v) {
  std::int64_t r = static_cast<std::int64_t>(std::sqrt(static_cast<double>(std::max<std::int64_t>(v, 0))));
  while (r * r > v) --r;
  while ((r + 1) * (r + 1) <= v) ++r;
  return r;
}

// Largest operand magnitude for which the operator keeps values in range.
std::int64_t operand_magnitude(const Model& model, OpCode op) {
  std::int64_t half = model.t() / 2 - 1;
  switch (op) {
    case OpCode::Add: return std::max<std::int64_t>(0, half / 2);
    case OpCode::Scale: return std::max<std::int64_t>(0, half / 3);
    case OpCode::Cmux: return std::max<std::int64_t>(0, half / 3);
    case OpCode::Pbs: return std::max<std::int64_t>(0, half);
    case OpCode::ModSwitch: return std::max<std::int64_t>(0, half);
    default: return isqrt(half);
  }
}

}  // namespace

std::vector<OpAxiomStats> run_axiom_suite(const SecretModel& sm, const AxiomSuiteOptions& opts) {
  const Model& model = sm.model();
  Rng rng(opts.seed);
  std::vector<OpAxiomStats> out;
  const int top = model.params().top_level();
  for (OpCode op : model_operators(model)) {
    OpAxiomStats st;
    st.op = op;
    auto sigs = signatures(model, op);
    if (sigs.empty()) continue;
    auto pick_sig = [&]() -> const Signature& {
      return sigs[static_cast<std::size_t>(rng.uniform(0, static_cast<std::int64_t>(sigs.size()) - 1))];
    };
    auto imms_for = [&]() {
      std::vector<std::int64_t> imms;
      for (int i = 0; i < op_info(op).imms; ++i) imms.push_back(rng.uniform(-3, 3));
      return imms;
    };
    auto note = [&](const std::string& what) {
      if (st.first_failure.empty()) st.first_failure = what;
    };

    const std::int64_t mag = operand_magnitude(model, op);
    const int max_attempts = opts.comm_defined * 20;
    while (st.comm_defined < opts.comm_defined && st.comm_samples < max_attempts) {
      const Signature& sig = pick_sig();
      std::vector<Value> args;
      for (std::size_t i = 0; i < sig.size(); ++i) {
        // cmux selectors are bits
        if (op == OpCode::Cmux && i == 0) {
          Value b = sm.encrypt(rng.uniform(0, 1), CipherKind::Rgsw, rng);
          args.push_back(b);
        } else {
          args.push_back(sample_value(sm, sig[i], mag, rng));
        }
      }
      // Cipher operands of one call share a level.
      if (model.scheme() != SchemeKind::Tfhe) {
        int level = top;
        for (const auto& a : args)
          if (auto* ct = std::get_if<ToyCiphertext>(&a)) level = std::min(level, ct->level);
        for (auto& a : args)
          while (std::holds_alternative<ToyCiphertext>(a) && std::get<ToyCiphertext>(a).level > level) {
            Value next = sm.toy()->modswitch(std::get<ToyCiphertext>(a));
            a = std::move(next);
          }
      }
      auto imms = imms_for();
      AxiomVerdict v = check_commutativity(sm, op, args, imms);
      ++st.comm_samples;
      if (v.defined) ++st.comm_defined;
      if (!v.holds) {
        ++st.comm_failures;
        note("commutativity: " + v.detail);
      }
    }
    if (st.comm_defined < opts.comm_defined) {
      ++st.comm_failures;
      note("commutativity: only " + std::to_string(st.comm_defined) + " defined samples");
    }

    const int dc_max_attempts = std::max(opts.dc_samples, opts.dc_defined) * 50;
    while ((st.dc_samples < opts.dc_samples || st.dc_defined < opts.dc_defined) && st.dc_samples < dc_max_attempts) {
      const Signature& sig = pick_sig();
      int lo_level = op == OpCode::ModSwitch ? std::min(1, top) : 0;
      int level = static_cast<int>(rng.uniform(lo_level, top));
      std::vector<Bound> big, small;
      for (const auto& spec : sig) {
        big.push_back(sample_bound(model, spec, rng, level));
        small.push_back(rng.uniform(0, 9) == 0 ? big.back() : sample_smaller(model, big.back(), rng));
      }
      auto imms = imms_for();
      AxiomVerdict v = check_downwards_closed(model, op, big, small, imms);
      ++st.dc_samples;
      if (v.defined) ++st.dc_defined;
      if (!v.holds) {
        ++st.dc_failures;
        note("downwards closed: " + v.detail);
      }
    }
    if (st.dc_defined < opts.dc_defined) {
      ++st.dc_failures;
      note("downwards closed: only " + std::to_string(st.dc_defined) + " defined samples");
    }
    out.push_back(std::move(st));
  }
  return out;
}

}  // namespace ila::oracle
