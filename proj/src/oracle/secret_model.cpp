#include "ila/oracle/secret_model.hpp"

#include <algorithm>

namespace ila::oracle {

Sort value_sort(const Value& v) {
  switch (v.index()) {
    case 0: return Sort::Msg;
    case 1: return Sort::Plain;
    default: return Sort::Cipher;
  }
}

SecretModel::SecretModel(const Model& model, std::uint64_t key_seed) : model_(model) {
  if (model.scheme() == SchemeKind::Tfhe) tfhe_ = std::make_unique<TfheSim>(model);
  else toy_ = std::make_unique<ToyScheme>(model.params(), key_seed);
}

Value SecretModel::encrypt(std::int64_t v, CipherKind kind, Rng& rng, int level) const {
  if (tfhe_) return tfhe_->encrypt(kind, v, rng);
  if (kind != CipherKind::Lwe) throw StuckError({}, "RLWE/RGSW ciphertexts exist only in the tfhe model");
  int l = level < 0 ? model_.params().top_level() : level;
  return toy_->encrypt(zt::constant(v, model_.d(), model_.t()), l, rng);
}

Value SecretModel::encrypt_input(const InputDecl& in, std::int64_t v, Rng& rng) const {
  if (in.sort == Sort::Msg) return Message{zt::broadcast(v, model_.d(), model_.t())};
  return encrypt(v, in.kind, rng);
}

Value SecretModel::constant(const ConstLit& c) const {
  if (c.sort == Sort::Msg) return model_.interp_const(c);
  return Plaintext{zt::constant(c.values.at(0), model_.d(), model_.t())};
}

namespace {

[[noreturn]] void stuck(const std::string& what) { throw StuckError({}, what); }

}  // namespace

Value SecretModel::apply(OpCode op, std::span<const Value> args, std::span<const std::int64_t> imms) const {
  const OpInfo& info = op_info(op);
  const std::string name(info.name);
  if (static_cast<int>(args.size()) != info.arity || static_cast<int>(imms.size()) != info.imms)
    stuck("'" + name + "': wrong number of operands");
  if (!model_.supports(op)) stuck("'" + name + "' is not available in this model");
  const std::int64_t t = model_.t();

  if (op == OpCode::True) return model_.true_message();
  if (is_message_op(op)) {
    std::vector<Message> msgs;
    for (const auto& a : args) {
      auto* m = std::get_if<Message>(&a);
      if (!m) stuck("'" + name + "' expects msg operands");
      msgs.push_back(*m);
    }
    return model_.apply_message(op, msgs, imms);
  }
  for (const auto& a : args)
    if (std::holds_alternative<Message>(a)) stuck("'" + name + "' expects plain or cipher operands, got msg");

  bool any_cipher = std::any_of(args.begin(), args.end(), [](const Value& v) { return value_sort(v) == Sort::Cipher; });
  if (!any_cipher) {
    auto p = [&](std::size_t i) -> const zt::Vec& { return std::get<Plaintext>(args[i]).coeffs; };
    switch (op) {
      case OpCode::Add: return Plaintext{zt::add(p(0), p(1), t)};
      case OpCode::Mul: return Plaintext{zt::mul_negacyclic(p(0), p(1), t)};
      case OpCode::Scale: return Plaintext{zt::scale(p(0), imms[0], t)};
      default: stuck("'" + name + "' expects ciphertext operands");
    }
  }

  try {
    if (toy_) {
      auto ct = [&](std::size_t i) -> const ToyCiphertext* { return std::get_if<ToyCiphertext>(&args[i]); };
      for (const auto& a : args)
        if (std::holds_alternative<TfheValue>(a)) stuck("'" + name + "': ciphertext of another scheme");
      switch (op) {
        case OpCode::Add:
        case OpCode::Mul: {
          const ToyCiphertext* a = ct(0);
          const ToyCiphertext* b = ct(1);
          if (a && b) return op == OpCode::Add ? toy_->add(*a, *b) : toy_->mul(*a, *b);
          const ToyCiphertext& c = a ? *a : *b;
          const zt::Vec& p = std::get<Plaintext>(a ? args[1] : args[0]).coeffs;
          return op == OpCode::Add ? toy_->add_plain(c, p) : toy_->mul_plain(c, p);
        }
        case OpCode::Scale: return toy_->scale(*ct(0), imms[0]);
        case OpCode::ModSwitch: return toy_->modswitch(*ct(0));
        default: stuck("'" + name + "' is not an operator of this scheme");
      }
    }
    auto tv = [&](std::size_t i) -> const TfheValue& {
      auto* v = std::get_if<TfheValue>(&args[i]);
      if (!v) stuck("'" + name + "' expects TFHE ciphertext operands");
      return *v;
    };
    switch (op) {
      case OpCode::Add: {
        auto* a = std::get_if<TfheValue>(&args[0]);
        auto* b = std::get_if<TfheValue>(&args[1]);
        if (a && b) return tfhe_->add(*a, *b);
        const TfheValue& c = a ? *a : *b;
        const auto& p = std::get<Plaintext>(a ? args[1] : args[0]).coeffs;
        return tfhe_->add_plain(c, p.at(0));
      }
      case OpCode::ExtProd: return tfhe_->ext_prod(tv(0), tv(1));
      case OpCode::IntProd: return tfhe_->int_prod(tv(0), tv(1));
      case OpCode::Scale: return tfhe_->scale(tv(0), imms[0]);
      case OpCode::Pbs: return tfhe_->pbs(tv(0), tv(1));
      case OpCode::Cmux: return tfhe_->cmux(tv(0), tv(1), tv(2));
      default: stuck("'" + name + "' is not an operator of this scheme");
    }
  } catch (const std::invalid_argument& e) {
    stuck("'" + name + "': " + e.what());
  } catch (const std::bad_variant_access&) {
    stuck("'" + name + "': operand sorts do not match the operator");
  }
}

Bound SecretModel::measure(const Value& v, const Message* expected) const {
  const std::int64_t t = model_.t();
  auto span_of = [&](const zt::Vec& coeffs) {
    std::int64_t lo = 0, hi = 0;
    for (std::size_t i = 0; i < coeffs.size(); ++i) {
      std::int64_t c = zt::centered(coeffs[i], t);
      if (i == 0 || c < lo) lo = c;
      if (i == 0 || c > hi) hi = c;
    }
    return std::pair<Rational, Rational>{lo, hi};
  };
  if (std::holds_alternative<Message>(v)) return MsgBound{};
  if (auto* p = std::get_if<Plaintext>(&v)) {
    auto [lo, hi] = span_of(p->coeffs);
    return PlainBound{lo, hi};
  }
  if (auto* tv = std::get_if<TfheValue>(&v)) return TfheCipherBound{tv->id, Rational(tv->exact), Rational(tv->exact), tv->noise};
  const auto& ct = std::get<ToyCiphertext>(v);
  auto [lo, hi] = span_of(toy_->decrypt(ct));
  Rational eps = expected ? toy_->noise_against(ct, expected->slots) : toy_->noise(ct);
  if (toy_->bfv()) return BfvCipherBound{lo, hi, eps};
  return BgvCipherBound{lo, hi, eps, ct.level};
}

Message SecretModel::interp(const Value& v) const {
  if (auto* m = std::get_if<Message>(&v)) return *m;
  if (auto* p = std::get_if<Plaintext>(&v)) return Message{p->coeffs};
  if (auto* tv = std::get_if<TfheValue>(&v)) return Message{{tv->value}};
  return Message{toy_->decrypt(std::get<ToyCiphertext>(v))};
}

nlohmann::json SecretModel::dump_keys() const {
  if (toy_) return toy_->dump_keys();
  return {{"warning", "INSECURE"}, {"scheme", "tfhe"}, {"note", "the simulated TFHE model has no key material"}};
}

}  // namespace ila::oracle
