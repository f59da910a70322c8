#include "ila/model.hpp"

#include <algorithm>

namespace ila {

Rational fresh_noise_for(const SchemeParams& p) {
  Rational t(p.t), d(static_cast<long>(p.d)), eta(p.eta);
  switch (p.scheme) {
    case SchemeKind::Bgv: return t / 2 + t * eta * (2 * d + 1);
    case SchemeKind::Bfv: return t * eta * (2 * d + 1) / Rational(p.moduli.back());
    case SchemeKind::Tfhe: return p.tfhe_fresh_noise;
  }
  return 0;
}

EstimatorContext estimator_context(const SchemeParams& p) {
  EstimatorContext ctx;
  ctx.scheme = p.scheme;
  ctx.t = p.t;
  ctx.d = p.d;
  ctx.q_max = p.moduli.empty() ? BigInt(0) : p.moduli.back();
  ctx.eta = p.eta;
  ctx.fresh_eps = fresh_noise_for(p);
  return ctx;
}

Model::Model(SchemeParams params)
    : params_(std::move(params)),
      fresh_(fresh_noise_for(params_)),
      estimator_(make_estimator(params_.estimator, params_.estimator_options, estimator_context(params_))) {}

std::pair<Rational, Rational> product_interval(const Rational& inf1, const Rational& sup1, const Rational& inf2,
                                               const Rational& sup2) {
  Rational p[4] = {inf1 * inf2, inf1 * sup2, sup1 * inf2, sup1 * sup2};
  return {*std::min_element(p, p + 4), *std::max_element(p, p + 4)};
}

std::pair<Rational, Rational> scaled_interval(const Rational& inf, const Rational& sup, std::int64_t n) {
  Rational a = inf * Rational(n), b = sup * Rational(n);
  return {std::min(a, b), std::max(a, b)};
}

std::optional<BoundFailure> Model::value_check(const Rational& inf, const Rational& sup, std::string_view op) const {
  Rational half = Rational(t()) / 2;
  if (inf < -half)
    return BoundFailure{FailureKind::Value, std::string(op) + ": -t/2 <= inf", inf, -half};
  if (sup >= half)
    return BoundFailure{FailureKind::Value, std::string(op) + ": sup < t/2", sup, half};
  return std::nullopt;
}

BoundFailure Model::sort_failure(std::string condition) const {
  return BoundFailure{FailureKind::Sort, std::move(condition), 0, 0};
}

std::pair<Rational, Rational> Model::encoded_interval(std::int64_t lo, std::int64_t hi) const {
  if (d() > 1) return {Rational(std::min<std::int64_t>(0, lo)), Rational(std::max<std::int64_t>(0, hi))};
  return {Rational(lo), Rational(hi)};
}

BoundResult Model::apply_bounds(OpCode op, std::span<const Bound> args, std::span<const std::int64_t> imms) const {
  const OpInfo& info = op_info(op);
  std::string name(info.name);
  if (static_cast<int>(args.size()) != info.arity)
    return unexpected(sort_failure("'" + name + "' takes " + std::to_string(info.arity) + " operands"));
  if (static_cast<int>(imms.size()) != info.imms)
    return unexpected(sort_failure("'" + name + "' takes " + std::to_string(info.imms) + " immediates"));
  if (!supports(op))
    return unexpected(sort_failure("operator '" + name + "' is not available in the " +
                                   std::string(scheme_kind_name(scheme())) + " model"));
  if (op == OpCode::True) return Bound{MsgBound{}};
  if (is_message_op(op)) {
    for (const auto& a : args)
      if (!std::holds_alternative<MsgBound>(a))
        return unexpected(sort_failure("'" + name + "' expects msg operands, got " +
                                       std::string(sort_name(bound_sort(a)))));
    return Bound{MsgBound{}};
  }
  bool any_cipher = false;
  for (const auto& a : args) {
    if (std::holds_alternative<MsgBound>(a))
      return unexpected(sort_failure("'" + name + "' expects plain or cipher operands, got msg"));
    any_cipher = any_cipher || bound_sort(a) == Sort::Cipher;
  }
  if (any_cipher) return scheme_bounds(op, args, imms);

  // Plain-only arithmetic.
  std::pair<Rational, Rational> iv;
  switch (op) {
    case OpCode::Add: {
      const auto& a = std::get<PlainBound>(args[0]);
      const auto& b = std::get<PlainBound>(args[1]);
      iv = {a.inf + b.inf, a.sup + b.sup};
      break;
    }
    case OpCode::Mul: {
      const auto& a = std::get<PlainBound>(args[0]);
      const auto& b = std::get<PlainBound>(args[1]);
      iv = product_interval(a.inf, a.sup, b.inf, b.sup);
      break;
    }
    case OpCode::Scale: {
      const auto& a = std::get<PlainBound>(args[0]);
      iv = scaled_interval(a.inf, a.sup, imms[0]);
      break;
    }
    default:
      return unexpected(sort_failure("'" + name + "' expects ciphertext operands"));
  }
  if (auto f = value_check(iv.first, iv.second, name)) return unexpected(*f);
  return Bound{PlainBound{iv.first, iv.second}};
}

Message Model::apply_message(OpCode op, std::span<const Message> args, std::span<const std::int64_t> imms) const {
  const std::int64_t t = this->t();
  auto slots = [&](std::size_t i) -> const zt::Vec& { return args[i].slots; };
  auto compare = [&](auto pred) {
    zt::Vec out(d());
    for (std::size_t i = 0; i < d(); ++i)
      out[i] = pred(zt::centered(slots(0)[i], t), zt::centered(slots(1)[i], t)) ? 1 : 0;
    return Message{out};
  };
  switch (op) {
    case OpCode::Add:
    case OpCode::MsgAdd: return {zt::add(slots(0), slots(1), t)};
    case OpCode::MsgSub: return {zt::sub(slots(0), slots(1), t)};
    case OpCode::Mul:
    case OpCode::ExtProd:
    case OpCode::IntProd: return {zt::mul_negacyclic(slots(0), slots(1), t)};
    case OpCode::MsgMul: return {zt::mul_pointwise(slots(0), slots(1), t)};
    case OpCode::MsgNeg: return {zt::neg(slots(0), t)};
    case OpCode::Scale: return {zt::scale(slots(0), imms[0], t)};
    case OpCode::ModSwitch: return args[0];
    case OpCode::Pbs: return args[1];
    case OpCode::Cmux: {
      zt::Vec not_b = zt::sub(zt::constant(1, d(), t), slots(0), t);
      return {zt::add(zt::mul_negacyclic(slots(0), slots(2), t), zt::mul_negacyclic(not_b, slots(1), t), t)};
    }
    case OpCode::True: return true_message();
    case OpCode::MsgLt: return compare([](auto a, auto b) { return a < b; });
    case OpCode::MsgLe: return compare([](auto a, auto b) { return a <= b; });
    case OpCode::MsgGt: return compare([](auto a, auto b) { return a > b; });
    case OpCode::MsgGe: return compare([](auto a, auto b) { return a >= b; });
    case OpCode::MsgEq: return compare([](auto a, auto b) { return a == b; });
    case OpCode::MsgNe: return compare([](auto a, auto b) { return a != b; });
  }
  return true_message();
}

BoundResult Model::const_bound(const ConstLit& c) const {
  if (c.values.empty()) return unexpected(sort_failure("empty literal"));
  if (c.sort == Sort::Msg) {
    if (!c.broadcast && c.values.size() > d())
      return unexpected(sort_failure("msg_vec has " + std::to_string(c.values.size()) + " entries but d = " +
                                     std::to_string(d())));
    return Bound{MsgBound{}};
  }
  std::int64_t v = zt::centered(zt::reduce(c.values[0], t()), t());
  auto [lo, hi] = encoded_interval(v, v);
  return Bound{PlainBound{lo, hi}};
}

Message Model::interp_const(const ConstLit& c) const {
  if (c.sort == Sort::Msg) {
    if (c.broadcast) return {zt::broadcast(c.values.at(0), d(), t())};
    zt::Vec v(d(), 0);
    for (std::size_t i = 0; i < c.values.size() && i < d(); ++i) v[i] = zt::reduce(c.values[i], t());
    return {v};
  }
  return {zt::constant(c.values.at(0), d(), t())};
}

BoundResult Model::input_bound(const InputDecl& in) const {
  if (in.sort == Sort::Msg) return Bound{MsgBound{}};
  if (in.lo > in.hi) return unexpected(sort_failure("input '" + in.name + "' has an empty range"));
  return fresh_bound(in.lo, in.hi, in.kind);
}

Message Model::true_message() const { return {zt::broadcast(1, d(), t())}; }

}  // namespace ila
