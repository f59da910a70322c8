#include "ila/oracle/tfhe_sim.hpp"

#include <stdexcept>

#include "ila/message.hpp"

namespace ila::oracle {

TfheSim::TfheSim(const Model& model) : model_(model), t_(model.t()), q_(model.params().q(0)) {
  if (model.scheme() != SchemeKind::Tfhe) throw std::invalid_argument("TfheSim needs a tfhe model");
}

Rational TfheSim::add_threshold() const { return Rational(q_) / (2 * Rational(t_)); }
Rational TfheSim::product_threshold() const { return Rational(q_) / Rational(t_); }

TfheValue TfheSim::make(CipherKind id, const BigInt& exact, std::int64_t decrypted, bool wrapped, bool corrupted,
                        Rational noise, const Rational& threshold) const {
  TfheValue v;
  v.id = id;
  v.exact = exact;
  v.value = zt::reduce(decrypted, t_);
  BigInt twice = 2 * exact;
  v.wrapped = wrapped || twice < -t_ || twice >= t_;
  v.corrupted = corrupted;
  if (!corrupted && noise > threshold) {
    v.corrupted = true;
    v.value = zt::reduce(v.value + std::max<std::int64_t>(1, t_ / 2), t_);
  }
  v.noise = std::move(noise);
  return v;
}

TfheValue TfheSim::encrypt(CipherKind id, std::int64_t v, Rng& rng) const {
  const Rational& fresh = model_.fresh_noise();
  Rational noise = 1 + (fresh - 1) * Rational(rng.uniform(0, 1000), 1000);
  return make(id, BigInt(static_cast<long>(v)), v, false, false, noise, add_threshold());
}

static void lwe_or_rlwe(const TfheValue& v, const char* op) {
  if (v.id == CipherKind::Rgsw) throw std::invalid_argument(std::string(op) + ": operand must be LWE or RLWE");
}

TfheValue TfheSim::add(const TfheValue& a, const TfheValue& b) const {
  lwe_or_rlwe(a, "(+)");
  lwe_or_rlwe(b, "(+)");
  return make(std::max(a.id, b.id), a.exact + b.exact, a.value + b.value, a.wrapped || b.wrapped,
              a.corrupted || b.corrupted, model_.estimator().add(a.noise, b.noise), add_threshold());
}

TfheValue TfheSim::add_plain(const TfheValue& a, std::int64_t p) const {
  lwe_or_rlwe(a, "(+)");
  std::int64_t pc = zt::centered(zt::reduce(p, t_), t_);
  return make(a.id, a.exact + BigInt(static_cast<long>(pc)), a.value + pc, a.wrapped, a.corrupted, a.noise,
              add_threshold());
}

TfheValue TfheSim::ext_prod(const TfheValue& sel, const TfheValue& x) const {
  if (sel.id != CipherKind::Rgsw) throw std::invalid_argument("extprod: first operand must be RGSW");
  lwe_or_rlwe(x, "extprod");
  const auto& est = model_.estimator();
  Rational noise = x.id == CipherKind::Lwe ? est.g_ext(sel.noise, x.noise) : est.g_ext_rlwe(sel.noise, x.noise);
  std::int64_t dec = zt::reduce(zt::centered(sel.value, t_) * zt::centered(x.value, t_), t_);
  return make(CipherKind::Rlwe, sel.exact * x.exact, dec, sel.wrapped || x.wrapped, sel.corrupted || x.corrupted,
              noise, product_threshold());
}

TfheValue TfheSim::int_prod(const TfheValue& a, const TfheValue& b) const {
  if (a.id != CipherKind::Rgsw || b.id != CipherKind::Rgsw)
    throw std::invalid_argument("intprod: operands must be RGSW");
  std::int64_t dec = zt::reduce(zt::centered(a.value, t_) * zt::centered(b.value, t_), t_);
  return make(CipherKind::Rgsw, a.exact * b.exact, dec, a.wrapped || b.wrapped, a.corrupted || b.corrupted,
              model_.estimator().f(a.noise, b.noise), product_threshold());
}

TfheValue TfheSim::scale(const TfheValue& a, std::int64_t n) const {
  std::int64_t dec = zt::reduce(a.value * zt::reduce(n, t_), t_);
  return make(a.id, a.exact * BigInt(static_cast<long>(n)), dec, a.wrapped, a.corrupted,
              abs(Rational(n)) * a.noise, product_threshold());
}

TfheValue TfheSim::pbs(const TfheValue& lut, const TfheValue& x) const {
  if (lut.id != CipherKind::Rgsw) throw std::invalid_argument("pbs: lookup table must be RGSW");
  if (x.id != CipherKind::Lwe) throw std::invalid_argument("pbs: input must be LWE");
  // Bootstrapping re-encrypts whatever x decrypts to, with fresh noise.
  TfheValue out = x;
  out.noise = model_.estimator().eps_b;
  return out;
}

TfheValue TfheSim::negate_plus_one(const TfheValue& b) const {
  return make(b.id, 1 - b.exact, 1 - b.value, b.wrapped, b.corrupted, b.noise, product_threshold());
}

TfheValue TfheSim::cmux(const TfheValue& b, const TfheValue& x0, const TfheValue& x1) const {
  return add(ext_prod(b, x1), ext_prod(negate_plus_one(b), x0));
}

}  // namespace ila::oracle
