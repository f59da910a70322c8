#include "ila/oracle/toy_rlwe.hpp"

#include <stdexcept>

namespace ila::oracle {

ToyScheme::ToyScheme(const SchemeParams& params, std::uint64_t seed) : params_(params) {
  if (params_.scheme == SchemeKind::Tfhe) throw std::invalid_argument("the toy RLWE scheme covers BGV and BFV only");
  if (bfv()) delta_ = params_.moduli.back() / BigInt(static_cast<long>(params_.t));
  Rng rng(seed);
  const std::size_t d = params_.d;
  const BigInt t(static_cast<long>(params_.t));
  keys_.seed = seed;
  keys_.sk = ring::ternary(d, rng);
  Poly s2 = ring::mul(keys_.sk, keys_.sk);
  // BGV errors carry the factor t; BFV errors do not.
  const BigInt err_scale = bfv() ? BigInt(1) : t;
  for (int level = 0; level <= params_.top_level(); ++level) {
    const BigInt& ql = params_.q(level);
    LevelKeys k;
    Poly a = ring::uniform(d, ql, rng);
    Poly e = ring::binomial(d, params_.eta, rng);
    k.pk0 = ring::reduce(ring::neg(ring::add(ring::mul(a, keys_.sk), ring::scale(e, err_scale))), ql);
    k.pk1 = a;
    BigInt pow = 1;
    for (std::size_t i = 0; i < bit_length(ql); ++i, pow *= 2) {
      Poly ai = ring::uniform(d, ql, rng);
      Poly ei = ring::binomial(d, params_.eta, rng);
      Poly b = ring::add(ring::neg(ring::add(ring::mul(ai, keys_.sk), ring::scale(ei, err_scale))),
                         ring::scale(s2, pow));
      k.relin.emplace_back(ring::reduce(b, ql), ai);
    }
    keys_.levels.push_back(std::move(k));
  }
}

const BigInt& ToyScheme::q(int level) const {
  if (level < 0 || level > params_.top_level()) throw std::invalid_argument("ciphertext level out of range");
  return params_.q(level);
}

Poly ToyScheme::plain_poly(const zt::Vec& p) const {
  if (p.size() > params_.d) throw std::invalid_argument("plaintext longer than d");
  Poly out = ring::zero(params_.d);
  for (std::size_t i = 0; i < p.size(); ++i) out[i] = BigInt(static_cast<long>(zt::centered(p[i], params_.t)));
  return out;
}

void ToyScheme::require_same_level(const ToyCiphertext& a, const ToyCiphertext& b) const {
  if (a.level != b.level)
    throw std::invalid_argument("ciphertext levels differ (" + std::to_string(a.level) + " vs " +
                                std::to_string(b.level) + ")");
}

ToyCiphertext ToyScheme::encrypt(const zt::Vec& m, int level, Rng& rng) const {
  const std::size_t d = params_.d;
  Poly u = ring::ternary(d, rng);
  Poly e1 = ring::binomial(d, params_.eta, rng);
  Poly e2 = ring::binomial(d, params_.eta, rng);
  return encrypt_with(m, level, u, e1, e2);
}

ToyCiphertext ToyScheme::encrypt_with(const zt::Vec& m, int level, const Poly& u, const Poly& e1,
                                      const Poly& e2) const {
  const BigInt& ql = q(level);
  const LevelKeys& k = keys_.levels.at(static_cast<std::size_t>(level));
  Poly mp = plain_poly(m);
  Poly msg = bfv() ? ring::scale(ring::reduce(mp, BigInt(static_cast<long>(params_.t))), delta_) : mp;
  const BigInt err_scale = bfv() ? BigInt(1) : BigInt(static_cast<long>(params_.t));
  Poly c0 = ring::add(ring::add(ring::mul(k.pk0, u), ring::scale(e1, err_scale)), msg);
  Poly c1 = ring::add(ring::mul(k.pk1, u), ring::scale(e2, err_scale));
  return ToyCiphertext{{ring::reduce(c0, ql), ring::reduce(c1, ql)}, level};
}

Poly ToyScheme::residual(const ToyCiphertext& ct) const {
  const BigInt& ql = q(ct.level);
  Poly acc = ring::zero(params_.d);
  Poly power = ring::zero(params_.d);
  power[0] = 1;
  for (const auto& c : ct.c) {
    acc = ring::add(acc, ring::mul(c, power), ql);
    power = ring::mul(power, keys_.sk);
  }
  return ring::center(acc, ql);
}

zt::Vec ToyScheme::decrypt(const ToyCiphertext& ct) const {
  Poly r = residual(ct);
  zt::Vec out(params_.d);
  const BigInt t(static_cast<long>(params_.t));
  for (std::size_t i = 0; i < r.size(); ++i) {
    BigInt m = bfv() ? round_of(Rational(t * r[i], q(ct.level))) : r[i];
    out[i] = ring::mod(m, t).get_si();
  }
  return out;
}

Rational ToyScheme::noise(const ToyCiphertext& ct) const {
  Poly r = residual(ct);
  if (!bfv()) return Rational(ring::inf_norm(r));
  const BigInt t(static_cast<long>(params_.t));
  Rational worst = 0;
  for (const auto& c : r) {
    Rational x(t * c, q(ct.level));
    x.canonicalize();
    Rational dist = abs(x - Rational(round_of(x)));
    if (dist > worst) worst = dist;
  }
  return worst;
}

Rational ToyScheme::noise_against(const ToyCiphertext& ct, const zt::Vec& expected) const {
  if (!bfv()) return noise(ct);
  Poly r = residual(ct);
  const Rational t(params_.t);
  Rational worst = 0;
  for (std::size_t i = 0; i < r.size(); ++i) {
    Rational x(BigInt(static_cast<long>(params_.t)) * r[i], q(ct.level));
    x.canonicalize();
    std::int64_t m = i < expected.size() ? zt::centered(expected[i], params_.t) : 0;
    Rational diff = x - Rational(m);
    diff -= t * Rational(round_of(diff / t));  // the message is only defined mod t
    if (abs(diff) > worst) worst = abs(diff);
  }
  return worst;
}

ToyCiphertext ToyScheme::add(const ToyCiphertext& a, const ToyCiphertext& b) const {
  require_same_level(a, b);
  const BigInt& ql = q(a.level);
  ToyCiphertext out{{}, a.level};
  std::size_t n = std::max(a.c.size(), b.c.size());
  for (std::size_t i = 0; i < n; ++i) {
    if (i >= a.c.size()) out.c.push_back(b.c[i]);
    else if (i >= b.c.size()) out.c.push_back(a.c[i]);
    else out.c.push_back(ring::add(a.c[i], b.c[i], ql));
  }
  return out;
}

ToyCiphertext ToyScheme::add_plain(const ToyCiphertext& a, const zt::Vec& p) const {
  const BigInt& ql = q(a.level);
  Poly pp = plain_poly(p);
  if (bfv()) pp = ring::scale(ring::reduce(pp, BigInt(static_cast<long>(params_.t))), delta_);
  ToyCiphertext out = a;
  out.c[0] = ring::add(out.c[0], pp, ql);
  return out;
}

ToyCiphertext ToyScheme::tensor(const ToyCiphertext& a, const ToyCiphertext& b) const {
  require_same_level(a, b);
  if (a.c.size() != 2 || b.c.size() != 2) throw std::invalid_argument("tensor product needs degree-1 ciphertexts");
  const BigInt& ql = q(a.level);
  if (!bfv()) {
    Poly t0 = ring::mul(a.c[0], b.c[0], ql);
    Poly t1 = ring::add(ring::mul(a.c[0], b.c[1]), ring::mul(a.c[1], b.c[0]), ql);
    Poly t2 = ring::mul(a.c[1], b.c[1], ql);
    return ToyCiphertext{{t0, t1, t2}, a.level};
  }
  // BFV: multiply centered representatives over the integers, then scale
  // by t/q and round.
  Poly a0 = ring::center(a.c[0], ql), a1 = ring::center(a.c[1], ql);
  Poly b0 = ring::center(b.c[0], ql), b1 = ring::center(b.c[1], ql);
  Poly parts[3] = {ring::mul(a0, b0), ring::add(ring::mul(a0, b1), ring::mul(a1, b0)), ring::mul(a1, b1)};
  const BigInt t(static_cast<long>(params_.t));
  ToyCiphertext out{{}, a.level};
  for (auto& p : parts) {
    for (auto& c : p) c = round_of(Rational(t * c, ql));
    out.c.push_back(ring::reduce(p, ql));
  }
  return out;
}

ToyCiphertext ToyScheme::relinearize(const ToyCiphertext& a) const {
  if (a.c.size() == 2) return a;
  if (a.c.size() != 3) throw std::invalid_argument("relinearization needs a degree-2 ciphertext");
  const BigInt& ql = q(a.level);
  const LevelKeys& k = keys_.levels.at(static_cast<std::size_t>(a.level));
  const std::size_t d = params_.d;
  Poly c0 = a.c[0], c1 = a.c[1];
  for (std::size_t i = 0; i < k.relin.size(); ++i) {
    Poly digit = ring::zero(d);
    bool any = false;
    for (std::size_t j = 0; j < d; ++j)
      if (mpz_tstbit(a.c[2][j].get_mpz_t(), i)) {
        digit[j] = 1;
        any = true;
      }
    if (!any) continue;
    c0 = ring::add(c0, ring::mul(digit, k.relin[i].first));
    c1 = ring::add(c1, ring::mul(digit, k.relin[i].second));
  }
  return ToyCiphertext{{ring::reduce(c0, ql), ring::reduce(c1, ql)}, a.level};
}

ToyCiphertext ToyScheme::mul(const ToyCiphertext& a, const ToyCiphertext& b) const {
  return relinearize(tensor(relinearize(a), relinearize(b)));
}

ToyCiphertext ToyScheme::mul_plain(const ToyCiphertext& a, const zt::Vec& p) const {
  const BigInt& ql = q(a.level);
  Poly pp = plain_poly(p);
  ToyCiphertext out{{}, a.level};
  for (const auto& c : a.c) out.c.push_back(ring::mul(c, pp, ql));
  return out;
}

ToyCiphertext ToyScheme::scale(const ToyCiphertext& a, std::int64_t n) const {
  const BigInt& ql = q(a.level);
  ToyCiphertext out{{}, a.level};
  for (const auto& c : a.c) out.c.push_back(ring::scale(c, BigInt(static_cast<long>(n)), ql));
  return out;
}

ToyCiphertext ToyScheme::modswitch(const ToyCiphertext& a) const {
  if (bfv()) throw std::invalid_argument("modswitch is not a BFV operation");
  if (a.level == 0) throw std::invalid_argument("modswitch below level 0");
  const BigInt& from = q(a.level);
  const BigInt& to = q(a.level - 1);
  const BigInt t(static_cast<long>(params_.t));
  ToyCiphertext out{{}, a.level - 1};
  for (const auto& poly : a.c) {
    Poly p(poly.size());
    for (std::size_t i = 0; i < poly.size(); ++i) {
      // Nearest integer to c * to / from that is congruent to c mod t.
      const BigInt& c = poly[i];
      Rational target(c * to, from);
      target.canonicalize();
      Rational steps = (target - Rational(c)) / Rational(t);
      p[i] = c + round_of(steps) * t;
    }
    out.c.push_back(ring::reduce(p, to));
  }
  return out;
}

nlohmann::json ToyScheme::dump_keys() const {
  auto poly_json = [](const Poly& p) {
    nlohmann::json a = nlohmann::json::array();
    for (const auto& c : p) a.push_back(to_string(c));
    return a;
  };
  nlohmann::json levels = nlohmann::json::array();
  for (std::size_t l = 0; l < keys_.levels.size(); ++l) {
    const auto& k = keys_.levels[l];
    nlohmann::json relin = nlohmann::json::array();
    for (const auto& [b, a] : k.relin) relin.push_back({poly_json(b), poly_json(a)});
    levels.push_back({{"level", l}, {"pk", {poly_json(k.pk0), poly_json(k.pk1)}}, {"relin", relin}});
  }
  return {{"warning", "INSECURE toy key material, for debugging only"},
          {"scheme", scheme_kind_name(params_.scheme)},
          {"seed", keys_.seed},
          {"sk", poly_json(keys_.sk)},
          {"levels", levels}};
}

}  // namespace ila::oracle
