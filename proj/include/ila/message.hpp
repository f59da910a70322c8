#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace ila {

// Arithmetic in R_t = Z_t[x]/(x^d + 1), coefficients stored in [0, t).
namespace zt {

using Vec = std::vector<std::int64_t>;

std::int64_t reduce(std::int64_t v, std::int64_t t);
// Representative in [-t/2, t/2): for even t that is [-t/2, t/2 - 1],
// for odd t [-(t-1)/2, (t-1)/2].
std::int64_t centered(std::int64_t v, std::int64_t t);

Vec add(const Vec& a, const Vec& b, std::int64_t t);
Vec sub(const Vec& a, const Vec& b, std::int64_t t);
Vec neg(const Vec& a, std::int64_t t);
Vec scale(const Vec& a, std::int64_t n, std::int64_t t);
Vec mul_negacyclic(const Vec& a, const Vec& b, std::int64_t t);
Vec mul_pointwise(const Vec& a, const Vec& b, std::int64_t t);
Vec broadcast(std::int64_t v, std::size_t d, std::int64_t t);
Vec constant(std::int64_t v, std::size_t d, std::int64_t t);

}  // namespace zt

// A message: an element of Z_t^d. Scalars of the surface language are
// broadcast to every slot.
struct Message {
  zt::Vec slots;
  bool operator==(const Message&) const = default;
};

// An encoded plaintext polynomial (coefficient encoding).
struct Plaintext {
  zt::Vec coeffs;
  bool operator==(const Plaintext&) const = default;
};

std::string describe(const Message& m, std::int64_t t);
std::string describe(const Plaintext& p, std::int64_t t);

}  // namespace ila
