#include "ila/message.hpp"

#include <sstream>
#include <stdexcept>

namespace ila {
namespace zt {

std::int64_t reduce(std::int64_t v, std::int64_t t) {
  std::int64_t r = v % t;
  return r < 0 ? r + t : r;
}

std::int64_t centered(std::int64_t v, std::int64_t t) {
  std::int64_t r = reduce(v, t);
  return r >= (t + 1) / 2 ? r - t : r;
}

static void same_length(const Vec& a, const Vec& b) {
  if (a.size() != b.size()) throw std::invalid_argument("message length mismatch");
}

Vec add(const Vec& a, const Vec& b, std::int64_t t) {
  same_length(a, b);
  Vec out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = reduce(a[i] + b[i], t);
  return out;
}

Vec sub(const Vec& a, const Vec& b, std::int64_t t) {
  same_length(a, b);
  Vec out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = reduce(a[i] - b[i], t);
  return out;
}

Vec neg(const Vec& a, std::int64_t t) {
  Vec out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = reduce(-a[i], t);
  return out;
}

Vec scale(const Vec& a, std::int64_t n, std::int64_t t) {
  std::int64_t k = reduce(n, t);
  Vec out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i)
    out[i] = static_cast<std::int64_t>((static_cast<__int128>(a[i]) * k) % t);
  return out;
}

Vec mul_negacyclic(const Vec& a, const Vec& b, std::int64_t t) {
  same_length(a, b);
  const std::size_t d = a.size();
  std::vector<__int128> acc(d, 0);
  for (std::size_t i = 0; i < d; ++i) {
    if (a[i] == 0) continue;
    for (std::size_t j = 0; j < d; ++j) {
      __int128 p = static_cast<__int128>(a[i]) * b[j];
      std::size_t k = i + j;
      if (k >= d) acc[k - d] -= p;
      else acc[k] += p;
    }
  }
  Vec out(d);
  for (std::size_t i = 0; i < d; ++i) {
    __int128 r = acc[i] % t;
    if (r < 0) r += t;
    out[i] = static_cast<std::int64_t>(r);
  }
  return out;
}

Vec mul_pointwise(const Vec& a, const Vec& b, std::int64_t t) {
  same_length(a, b);
  Vec out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i)
    out[i] = static_cast<std::int64_t>((static_cast<__int128>(a[i]) * b[i]) % t);
  return out;
}

Vec broadcast(std::int64_t v, std::size_t d, std::int64_t t) { return Vec(d, reduce(v, t)); }

Vec constant(std::int64_t v, std::size_t d, std::int64_t t) {
  Vec out(d, 0);
  if (d > 0) out[0] = reduce(v, t);
  return out;
}

}  // namespace zt

static std::string join_centered(const zt::Vec& v, std::int64_t t) {
  std::ostringstream os;
  os << '[';
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) os << ", ";
    os << zt::centered(v[i], t);
  }
  os << ']';
  return os.str();
}

std::string describe(const Message& m, std::int64_t t) { return join_centered(m.slots, t); }
std::string describe(const Plaintext& p, std::int64_t t) { return join_centered(p.coeffs, t); }

}  // namespace ila
