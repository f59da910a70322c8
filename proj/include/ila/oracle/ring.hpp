#pragma once

// Polynomials in Z[x]/(x^d + 1), optionally reduced modulo q.

#include <cstdint>
#include <vector>

#include "ila/numeric.hpp"
#include "ila/oracle/rng.hpp"

namespace ila::oracle {

using Poly = std::vector<BigInt>;

namespace ring {

Poly zero(std::size_t d);
Poly from_ints(const std::vector<std::int64_t>& v);

// Representative in [0, q) and in (-q/2, q/2].
BigInt mod(const BigInt& v, const BigInt& q);
BigInt centered(const BigInt& v, const BigInt& q);

Poly reduce(const Poly& a, const BigInt& q);
Poly center(const Poly& a, const BigInt& q);

// Exact arithmetic over the integers, negacyclic wraparound.
Poly add(const Poly& a, const Poly& b);
Poly sub(const Poly& a, const Poly& b);
Poly neg(const Poly& a);
Poly mul(const Poly& a, const Poly& b);
Poly scale(const Poly& a, const BigInt& n);

// The same, reduced modulo q into [0, q).
Poly add(const Poly& a, const Poly& b, const BigInt& q);
Poly sub(const Poly& a, const Poly& b, const BigInt& q);
Poly mul(const Poly& a, const Poly& b, const BigInt& q);
Poly scale(const Poly& a, const BigInt& n, const BigInt& q);

BigInt inf_norm(const Poly& a);  // of the coefficients as given

Poly uniform(std::size_t d, const BigInt& q, Rng& rng);
Poly ternary(std::size_t d, Rng& rng);
Poly binomial(std::size_t d, std::int64_t eta, Rng& rng);

}  // namespace ring
}  // namespace ila::oracle
