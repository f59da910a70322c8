#include "ila/schemes.hpp"

#include <fstream>
#include <sstream>

#include "ila/json_util.hpp"

namespace ila {

// ---------------------------------------------------------------------------
// Parameters

SchemeParams params_from_json(const nlohmann::json& j) {
  SchemeParams p;
  try {
    std::string scheme = j.at("scheme").get<std::string>();
    if (scheme == "bgv") p.scheme = SchemeKind::Bgv;
    else if (scheme == "bfv") p.scheme = SchemeKind::Bfv;
    else if (scheme == "tfhe") p.scheme = SchemeKind::Tfhe;
    else throw ParamsError("unknown scheme '" + scheme + "'");
    p.name = j.value("name", scheme);
    p.t = j.at("t").get<std::int64_t>();
    p.d = j.value("d", std::size_t{1});
    const auto& chain = j.at("modulus_chain");
    if (!chain.is_array() || chain.empty()) throw ParamsError("modulus_chain must be a non-empty array");
    // The file lists q_L first.
    for (auto it = chain.rbegin(); it != chain.rend(); ++it) p.moduli.push_back(json_bigint(*it));
    if (j.contains("estimator")) {
      const auto& e = j.at("estimator");
      if (e.is_string()) {
        p.estimator = e.get<std::string>();
      } else {
        p.estimator = e.at("name").get<std::string>();
        if (e.contains("options")) p.estimator_options = e.at("options");
      }
    }
    p.eta = j.value("eta", std::int64_t{1});
    p.seed = j.value("seed", std::uint64_t{1});
    if (j.contains("tfhe_fresh_noise")) p.tfhe_fresh_noise = json_rational(j.at("tfhe_fresh_noise"));
  } catch (const nlohmann::json::exception& e) {
    throw ParamsError(std::string("bad scheme parameters: ") + e.what());
  } catch (const std::invalid_argument& e) {
    throw ParamsError(std::string("bad scheme parameters: ") + e.what());
  }
  validate_params(p);
  return p;
}

SchemeParams load_params(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParamsError("cannot read '" + path + "'");
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw ParamsError(path + ": " + e.what());
  }
  return params_from_json(j);
}

nlohmann::json params_to_json(const SchemeParams& p) {
  nlohmann::json chain = nlohmann::json::array();
  for (auto it = p.moduli.rbegin(); it != p.moduli.rend(); ++it) chain.push_back(to_string(*it));
  nlohmann::json j = {{"scheme", scheme_kind_name(p.scheme)},
                      {"name", p.name},
                      {"t", p.t},
                      {"d", p.d},
                      {"modulus_chain", chain},
                      {"estimator", {{"name", p.estimator}, {"options", p.estimator_options}}},
                      {"eta", p.eta},
                      {"seed", p.seed}};
  if (p.scheme == SchemeKind::Tfhe) j["tfhe_fresh_noise"] = rational_json(p.tfhe_fresh_noise);
  return j;
}

void validate_params(const SchemeParams& p) {
  auto fail = [](const std::string& m) { throw ParamsError(m); };
  if (p.t < 1 || (p.t < 2 && p.scheme != SchemeKind::Tfhe)) fail("t must be at least 2");
  if (p.d == 0 || (p.d & (p.d - 1)) != 0) fail("d must be a power of two");
  if (p.eta < 0) fail("eta must be non-negative");
  if (p.moduli.empty()) fail("modulus_chain is empty");
  for (std::size_t i = 0; i < p.moduli.size(); ++i) {
    if (p.moduli[i] <= p.t) fail("every modulus must exceed t");
    if (i > 0 && !(p.moduli[i - 1] < p.moduli[i])) fail("modulus_chain must be strictly decreasing from q_L to q_0");
  }
  switch (p.scheme) {
    case SchemeKind::Bgv:
      for (const auto& q : p.moduli) {
        BigInt g;
        mpz_gcd(g.get_mpz_t(), q.get_mpz_t(), BigInt(p.t).get_mpz_t());
        if (g != 1) fail("BGV moduli must be coprime to t (q = " + to_string(q) + ")");
      }
      break;
    case SchemeKind::Bfv:
      if (p.moduli.size() != 1) fail("BFV uses a single modulus");
      if (!mpz_divisible_ui_p(p.moduli[0].get_mpz_t(), static_cast<unsigned long>(p.t)))
        fail("BFV modulus must be a multiple of t");
      break;
    case SchemeKind::Tfhe:
      if (p.moduli.size() != 1) fail("TFHE uses a single modulus");
      if (p.d != 1) fail("TFHE parameters use d = 1");
      if ((p.t & (p.t - 1)) != 0) fail("TFHE t must be a power of two");
      if (p.tfhe_fresh_noise <= 0) fail("tfhe_fresh_noise must be positive");
      break;
  }
}

// ---------------------------------------------------------------------------
// Shared helpers

namespace {

std::optional<BoundFailure> noise_check(const Rational& eps, const Rational& cap, std::string condition) {
  if (eps > cap) return BoundFailure{FailureKind::Noise, std::move(condition), eps, cap};
  return std::nullopt;
}

Rational magnitude(const Rational& inf, const Rational& sup) { return std::max(abs(inf), abs(sup)); }

std::pair<Rational, Rational> combine(OpCode op, const Rational& inf1, const Rational& sup1, const Rational& inf2,
                                      const Rational& sup2) {
  if (op == OpCode::Add) return {inf1 + inf2, sup1 + sup2};
  return product_interval(inf1, sup1, inf2, sup2);
}

template <class C>
bool foreign_cipher(std::span<const Bound> args) {
  for (const auto& a : args)
    if (bound_sort(a) == Sort::Cipher && !std::holds_alternative<C>(a)) return true;
  return false;
}

}  // namespace

// ---------------------------------------------------------------------------
// BGV

BgvModel::BgvModel(SchemeParams p) : Model(std::move(p)) {}

bool BgvModel::supports(OpCode op) const {
  switch (op) {
    case OpCode::ExtProd:
    case OpCode::IntProd:
    case OpCode::Pbs:
    case OpCode::Cmux: return false;
    default: return true;
  }
}

Rational BgvModel::kappa(int level) const { return Rational(params_.q(level)) / 2; }
Rational BgvModel::switch_cap(int level) const { return Rational(params_.q(level)) / 2; }

Rational BgvModel::noise_threshold(const Bound& b) const {
  auto lvl = level_of(b);
  return kappa(lvl ? *lvl : params_.top_level());
}

BoundResult BgvModel::fresh_bound(std::int64_t lo, std::int64_t hi, CipherKind kind) const {
  if (kind != CipherKind::Lwe) return unexpected(sort_failure("RLWE/RGSW ciphertext kinds exist only in the tfhe model"));
  auto [inf, sup] = encoded_interval(lo, hi);
  if (auto f = value_check(inf, sup, "input")) return unexpected(*f);
  int top = params_.top_level();
  if (auto f = noise_check(fresh_noise(), kappa(top), "input: fresh noise <= q_L/2")) return unexpected(*f);
  return Bound{BgvCipherBound{inf, sup, fresh_noise(), top}};
}

BoundResult BgvModel::scheme_bounds(OpCode op, std::span<const Bound> args, std::span<const std::int64_t> imms) const {
  std::string name(op_info(op).name);
  if (foreign_cipher<BgvCipherBound>(args)) return unexpected(sort_failure("'" + name + "': ciphertext of another scheme"));
  auto cipher = [](const Bound& b) { return std::get_if<BgvCipherBound>(&b); };
  switch (op) {
    case OpCode::Add:
    case OpCode::Mul: {
      const auto* c1 = cipher(args[0]);
      const auto* c2 = cipher(args[1]);
      if (c1 && c2) {
        if (c1->level != c2->level)
          return unexpected(BoundFailure{FailureKind::Level, name + ": operands at equal levels", c1->level, c2->level});
        auto [inf, sup] = combine(op, c1->inf, c1->sup, c2->inf, c2->sup);
        if (auto f = value_check(inf, sup, name)) return unexpected(*f);
        Rational eps = op == OpCode::Add ? estimator_.add(c1->eps, c2->eps) : estimator_.f(c1->eps, c2->eps);
        std::string cond = op == OpCode::Add ? name + ": eps1 + eps2 <= q_w/2" : name + ": f(eps1, eps2) <= q_w/2";
        if (auto f = noise_check(eps, kappa(c1->level), cond)) return unexpected(*f);
        return Bound{BgvCipherBound{inf, sup, eps, c1->level}};
      }
      const auto& c = c1 ? *c1 : *c2;
      const auto& p = std::get<PlainBound>(c1 ? args[1] : args[0]);
      auto [inf, sup] = combine(op, c.inf, c.sup, p.inf, p.sup);
      if (auto f = value_check(inf, sup, name)) return unexpected(*f);
      // The noise measure is the whole decryption residual, so an added
      // plaintext contributes its magnitude.
      Rational eps = op == OpCode::Add ? Rational(c.eps + magnitude(p.inf, p.sup)) : estimator_.g(c.eps);
      std::string cond = op == OpCode::Add ? name + ": eps + |p| <= q_w/2" : name + ": g(eps) <= q_w/2";
      if (auto f = noise_check(eps, kappa(c.level), cond)) return unexpected(*f);
      return Bound{BgvCipherBound{inf, sup, eps, c.level}};
    }
    case OpCode::ModSwitch: {
      const auto& c = std::get<BgvCipherBound>(args[0]);
      if (c.level == 0)
        return unexpected(BoundFailure{FailureKind::Level, name + ": chain exhausted (0 <= w - 1)", 0, 1});
      int lower = c.level - 1;
      Rational eps = Rational(params_.q(lower)) / Rational(params_.q(c.level)) * c.eps + estimator_.b_r;
      if (auto f = noise_check(eps, switch_cap(lower), name + ": q_{w-1}/q_w eps + B_r <= l_{w-1}"))
        return unexpected(*f);
      return Bound{BgvCipherBound{c.inf, c.sup, eps, lower}};
    }
    case OpCode::Scale: {
      const auto& c = std::get<BgvCipherBound>(args[0]);
      auto [inf, sup] = scaled_interval(c.inf, c.sup, imms[0]);
      if (auto f = value_check(inf, sup, name)) return unexpected(*f);
      Rational eps = abs(Rational(imms[0])) * c.eps;
      if (auto f = noise_check(eps, kappa(c.level), name + ": |n| eps <= q_w/2")) return unexpected(*f);
      return Bound{BgvCipherBound{inf, sup, eps, c.level}};
    }
    default:
      return unexpected(sort_failure("'" + name + "' is not a BGV operator"));
  }
}

// ---------------------------------------------------------------------------
// BFV

BfvModel::BfvModel(SchemeParams p) : Model(std::move(p)) {}

bool BfvModel::supports(OpCode op) const {
  switch (op) {
    case OpCode::ModSwitch:
    case OpCode::ExtProd:
    case OpCode::IntProd:
    case OpCode::Pbs:
    case OpCode::Cmux: return false;
    default: return true;
  }
}

Rational BfvModel::noise_threshold(const Bound&) const { return Rational(1, 2); }

BoundResult BfvModel::fresh_bound(std::int64_t lo, std::int64_t hi, CipherKind kind) const {
  if (kind != CipherKind::Lwe) return unexpected(sort_failure("RLWE/RGSW ciphertext kinds exist only in the tfhe model"));
  auto [inf, sup] = encoded_interval(lo, hi);
  if (auto f = value_check(inf, sup, "input")) return unexpected(*f);
  if (auto f = noise_check(fresh_noise(), Rational(1, 2), "input: fresh noise <= 1/2")) return unexpected(*f);
  return Bound{BfvCipherBound{inf, sup, fresh_noise()}};
}

BoundResult BfvModel::scheme_bounds(OpCode op, std::span<const Bound> args, std::span<const std::int64_t> imms) const {
  std::string name(op_info(op).name);
  if (foreign_cipher<BfvCipherBound>(args)) return unexpected(sort_failure("'" + name + "': ciphertext of another scheme"));
  const Rational half(1, 2);
  auto cipher = [](const Bound& b) { return std::get_if<BfvCipherBound>(&b); };
  switch (op) {
    case OpCode::Add:
    case OpCode::Mul: {
      const auto* c1 = cipher(args[0]);
      const auto* c2 = cipher(args[1]);
      if (c1 && c2) {
        auto [inf, sup] = combine(op, c1->inf, c1->sup, c2->inf, c2->sup);
        if (auto f = value_check(inf, sup, name)) return unexpected(*f);
        Rational eps = op == OpCode::Add ? estimator_.add(c1->eps, c2->eps) : estimator_.f(c1->eps, c2->eps);
        std::string cond = op == OpCode::Add ? name + ": eps1 + eps2 <= 1/2" : name + ": f(eps1, eps2) <= 1/2";
        if (auto f = noise_check(eps, half, cond)) return unexpected(*f);
        return Bound{BfvCipherBound{inf, sup, eps}};
      }
      const auto& c = c1 ? *c1 : *c2;
      const auto& p = std::get<PlainBound>(c1 ? args[1] : args[0]);
      auto [inf, sup] = combine(op, c.inf, c.sup, p.inf, p.sup);
      if (auto f = value_check(inf, sup, name)) return unexpected(*f);
      // Adding a scaled plaintext is exact; multiplying scales the noise.
      Rational eps = op == OpCode::Add ? c.eps : estimator_.g(c.eps);
      if (auto f = noise_check(eps, half, name + ": g(eps) <= 1/2")) return unexpected(*f);
      return Bound{BfvCipherBound{inf, sup, eps}};
    }
    case OpCode::Scale: {
      const auto& c = std::get<BfvCipherBound>(args[0]);
      auto [inf, sup] = scaled_interval(c.inf, c.sup, imms[0]);
      if (auto f = value_check(inf, sup, name)) return unexpected(*f);
      Rational eps = abs(Rational(imms[0])) * c.eps;
      if (auto f = noise_check(eps, half, name + ": |n| eps <= 1/2")) return unexpected(*f);
      return Bound{BfvCipherBound{inf, sup, eps}};
    }
    default:
      return unexpected(sort_failure("'" + name + "' is not a BFV operator"));
  }
}

// ---------------------------------------------------------------------------
// TFHE

TfheModel::TfheModel(SchemeParams p) : Model(std::move(p)) {}

bool TfheModel::supports(OpCode op) const { return op != OpCode::ModSwitch; }

Rational TfheModel::add_threshold() const { return Rational(params_.q(0)) / (2 * Rational(t())); }
Rational TfheModel::product_threshold() const { return Rational(params_.q(0)) / Rational(t()); }

Rational TfheModel::noise_threshold(const Bound&) const { return product_threshold(); }

BoundResult TfheModel::fresh_bound(std::int64_t lo, std::int64_t hi, CipherKind kind) const {
  Rational inf(lo), sup(hi);
  if (auto f = value_check(inf, sup, "input")) return unexpected(*f);
  return Bound{TfheCipherBound{kind, inf, sup, fresh_noise()}};
}

BoundResult TfheModel::add(const TfheCipherBound& a, const TfheCipherBound& b, std::string_view op) const {
  std::string name(op);
  if (a.id == CipherKind::Rgsw || b.id == CipherKind::Rgsw)
    return unexpected(sort_failure(name + ": operands must be LWE or RLWE"));
  Rational inf = a.inf + b.inf, sup = a.sup + b.sup;
  if (auto f = value_check(inf, sup, name)) return unexpected(*f);
  Rational eps = estimator_.add(a.eps, b.eps);
  if (auto f = noise_check(eps, add_threshold(), name + ": eps1 + eps2 <= q/2t")) return unexpected(*f);
  return Bound{TfheCipherBound{std::max(a.id, b.id), inf, sup, eps}};
}

BoundResult TfheModel::ext_prod(const TfheCipherBound& sel, const TfheCipherBound& x, std::string_view op) const {
  std::string name(op);
  if (sel.id != CipherKind::Rgsw) return unexpected(sort_failure(name + ": first operand must be RGSW"));
  if (x.id == CipherKind::Rgsw) return unexpected(sort_failure(name + ": second operand must be LWE or RLWE"));
  auto [inf, sup] = product_interval(sel.inf, sel.sup, x.inf, x.sup);
  if (auto f = value_check(inf, sup, name)) return unexpected(*f);
  Rational eps = x.id == CipherKind::Lwe ? estimator_.g_ext(sel.eps, x.eps) : estimator_.g_ext_rlwe(sel.eps, x.eps);
  if (auto f = noise_check(eps, product_threshold(), name + ": g(eps1, eps2) <= q/t")) return unexpected(*f);
  return Bound{TfheCipherBound{CipherKind::Rlwe, inf, sup, eps}};
}

BoundResult TfheModel::scheme_bounds(OpCode op, std::span<const Bound> args, std::span<const std::int64_t> imms) const {
  std::string name(op_info(op).name);
  if (foreign_cipher<TfheCipherBound>(args)) return unexpected(sort_failure("'" + name + "': ciphertext of another scheme"));
  auto cipher = [](const Bound& b) { return std::get_if<TfheCipherBound>(&b); };
  for (std::size_t i = 0; i < args.size(); ++i)
    if (op != OpCode::Add && !cipher(args[i]))
      return unexpected(sort_failure("'" + name + "' expects ciphertext operands"));
  switch (op) {
    case OpCode::Add: {
      const auto* c1 = cipher(args[0]);
      const auto* c2 = cipher(args[1]);
      if (c1 && c2) return add(*c1, *c2, name);
      const auto& c = c1 ? *c1 : *c2;
      const auto& p = std::get<PlainBound>(c1 ? args[1] : args[0]);
      if (c.id == CipherKind::Rgsw) return unexpected(sort_failure(name + ": operands must be LWE or RLWE"));
      Rational inf = c.inf + p.inf, sup = c.sup + p.sup;
      if (auto f = value_check(inf, sup, name)) return unexpected(*f);
      if (auto f = noise_check(c.eps, add_threshold(), name + ": eps <= q/2t")) return unexpected(*f);
      return Bound{TfheCipherBound{c.id, inf, sup, c.eps}};
    }
    case OpCode::Mul:
      return unexpected(sort_failure("'(*)' on TFHE ciphertexts: use extprod or intprod"));
    case OpCode::IntProd: {
      const auto& a = *cipher(args[0]);
      const auto& b = *cipher(args[1]);
      if (a.id != CipherKind::Rgsw || b.id != CipherKind::Rgsw)
        return unexpected(sort_failure(name + ": operands must be RGSW"));
      auto [inf, sup] = product_interval(a.inf, a.sup, b.inf, b.sup);
      if (auto f = value_check(inf, sup, name)) return unexpected(*f);
      Rational eps = estimator_.f(a.eps, b.eps);
      if (auto f = noise_check(eps, product_threshold(), name + ": f'(eps1, eps2) <= q/t")) return unexpected(*f);
      return Bound{TfheCipherBound{CipherKind::Rgsw, inf, sup, eps}};
    }
    case OpCode::ExtProd:
      return ext_prod(*cipher(args[0]), *cipher(args[1]), name);
    case OpCode::Scale: {
      const auto& c = *cipher(args[0]);
      auto [inf, sup] = scaled_interval(c.inf, c.sup, imms[0]);
      if (auto f = value_check(inf, sup, name)) return unexpected(*f);
      Rational eps = abs(Rational(imms[0])) * c.eps;
      if (auto f = noise_check(eps, product_threshold(), name + ": |n eps| <= q/t")) return unexpected(*f);
      return Bound{TfheCipherBound{c.id, inf, sup, eps}};
    }
    case OpCode::Pbs: {
      const auto& lut = *cipher(args[0]);
      const auto& x = *cipher(args[1]);
      if (lut.id != CipherKind::Rgsw) return unexpected(sort_failure(name + ": lookup table must be RGSW"));
      if (x.id != CipherKind::Lwe) return unexpected(sort_failure(name + ": input must be LWE"));
      if (auto f = value_check(lut.inf, lut.sup, name + " table")) return unexpected(*f);
      Rational half = Rational(t()) / 2;
      Rational mag = magnitude(x.inf, x.sup);
      if (mag > half)
        return unexpected(BoundFailure{FailureKind::Value, name + ": max(|inf|, |sup|) <= t/2", mag, half});
      return Bound{TfheCipherBound{CipherKind::Lwe, x.inf, x.sup, estimator_.eps_b}};
    }
    case OpCode::Cmux: {
      // b * x1 + (1 - b) * x0 through two external products.
      const auto& b = *cipher(args[0]);
      TfheCipherBound not_b{b.id, 1 - b.sup, 1 - b.inf, b.eps};
      if (auto f = value_check(not_b.inf, not_b.sup, name + " (1 - b)")) return unexpected(*f);
      auto hi = ext_prod(b, *cipher(args[2]), name);
      if (!hi) return hi;
      auto lo = ext_prod(not_b, *cipher(args[1]), name);
      if (!lo) return lo;
      return add(std::get<TfheCipherBound>(*hi), std::get<TfheCipherBound>(*lo), name);
    }
    default:
      return unexpected(sort_failure("'" + name + "' is not a TFHE operator"));
  }
}

// ---------------------------------------------------------------------------

std::unique_ptr<Model> make_model(const SchemeParams& p) {
  validate_params(p);
  switch (p.scheme) {
    case SchemeKind::Bgv: return std::make_unique<BgvModel>(p);
    case SchemeKind::Bfv: return std::make_unique<BfvModel>(p);
    case SchemeKind::Tfhe: return std::make_unique<TfheModel>(p);
  }
  return nullptr;
}

}  // namespace ila
