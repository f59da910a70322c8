#include "ila/oracle/ring.hpp"

#include <stdexcept>

namespace ila::oracle::ring {

Poly zero(std::size_t d) { return Poly(d, BigInt(0)); }

Poly from_ints(const std::vector<std::int64_t>& v) {
  Poly out(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) out[i] = BigInt(static_cast<long>(v[i]));
  return out;
}

BigInt mod(const BigInt& v, const BigInt& q) {
  BigInt r;
  mpz_fdiv_r(r.get_mpz_t(), v.get_mpz_t(), q.get_mpz_t());
  return r;
}

BigInt centered(const BigInt& v, const BigInt& q) {
  BigInt r = mod(v, q);
  if (2 * r > q) r -= q;
  return r;
}

Poly reduce(const Poly& a, const BigInt& q) {
  Poly out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = mod(a[i], q);
  return out;
}

Poly center(const Poly& a, const BigInt& q) {
  Poly out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = centered(a[i], q);
  return out;
}

static void same_degree(const Poly& a, const Poly& b) {
  if (a.size() != b.size()) throw std::invalid_argument("polynomial degree mismatch");
}

Poly add(const Poly& a, const Poly& b) {
  same_degree(a, b);
  Poly out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] + b[i];
  return out;
}

Poly sub(const Poly& a, const Poly& b) {
  same_degree(a, b);
  Poly out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] - b[i];
  return out;
}

Poly neg(const Poly& a) {
  Poly out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = -a[i];
  return out;
}

Poly mul(const Poly& a, const Poly& b) {
  same_degree(a, b);
  const std::size_t d = a.size();
  Poly out = zero(d);
  BigInt prod;
  for (std::size_t i = 0; i < d; ++i) {
    if (a[i] == 0) continue;
    for (std::size_t j = 0; j < d; ++j) {
      prod = a[i] * b[j];
      std::size_t k = i + j;
      if (k < d) out[k] += prod;
      else out[k - d] -= prod;  // x^d = -1
    }
  }
  return out;
}

Poly scale(const Poly& a, const BigInt& n) {
  Poly out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] * n;
  return out;
}

Poly add(const Poly& a, const Poly& b, const BigInt& q) { return reduce(add(a, b), q); }
Poly sub(const Poly& a, const Poly& b, const BigInt& q) { return reduce(sub(a, b), q); }
Poly mul(const Poly& a, const Poly& b, const BigInt& q) { return reduce(mul(a, b), q); }
Poly scale(const Poly& a, const BigInt& n, const BigInt& q) { return reduce(scale(a, n), q); }

BigInt inf_norm(const Poly& a) {
  BigInt m = 0;
  for (const auto& c : a) {
    BigInt v = abs(c);
    if (v > m) m = v;
  }
  return m;
}

Poly uniform(std::size_t d, const BigInt& q, Rng& rng) {
  Poly out(d);
  for (auto& c : out) c = rng.uniform_below(q);
  return out;
}

Poly ternary(std::size_t d, Rng& rng) {
  Poly out(d);
  for (auto& c : out) c = BigInt(static_cast<long>(rng.ternary()));
  return out;
}

Poly binomial(std::size_t d, std::int64_t eta, Rng& rng) {
  Poly out(d);
  for (auto& c : out) c = BigInt(static_cast<long>(rng.binomial(eta)));
  return out;
}

}  // namespace ila::oracle::ring
