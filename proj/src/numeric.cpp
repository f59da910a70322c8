#include "ila/numeric.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace ila {

BigInt parse_bigint(std::string_view text) {
  std::string s(text);
  bool neg = false;
  std::size_t i = 0;
  if (i < s.size() && (s[i] == '-' || s[i] == '+')) {
    neg = s[i] == '-';
    ++i;
  }
  int base = 10;
  if (s.size() > i + 1 && s[i] == '0' && (s[i + 1] == 'x' || s[i + 1] == 'X')) {
    base = 16;
    i += 2;
  }
  std::string digits = s.substr(i);
  if (digits.empty()) throw std::invalid_argument("not an integer: '" + s + "'");
  BigInt out;
  if (out.set_str(digits, base) != 0) throw std::invalid_argument("not an integer: '" + s + "'");
  return neg ? BigInt(-out) : out;
}

Rational parse_rational(std::string_view text) {
  std::string s(text);
  if (auto slash = s.find('/'); slash != std::string::npos) {
    BigInt num = parse_bigint(s.substr(0, slash));
    BigInt den = parse_bigint(s.substr(slash + 1));
    if (den == 0) throw std::invalid_argument("zero denominator in '" + s + "'");
    Rational r(num, den);
    r.canonicalize();
    return r;
  }
  if (auto dot = s.find('.'); dot != std::string::npos) {
    std::string whole = s.substr(0, dot);
    std::string frac = s.substr(dot + 1);
    bool neg = !whole.empty() && whole[0] == '-';
    if (whole.empty() || whole == "-" || whole == "+") whole += "0";
    if (frac.empty()) frac = "0";
    for (char c : frac)
      if (c < '0' || c > '9') throw std::invalid_argument("not a number: '" + s + "'");
    BigInt den;
    mpz_ui_pow_ui(den.get_mpz_t(), 10, frac.size());
    BigInt w = parse_bigint(whole);
    BigInt f = parse_bigint(frac);
    BigInt num = abs(w) * den + f;
    Rational r(neg ? BigInt(-num) : num, den);
    r.canonicalize();
    return r;
  }
  return Rational(parse_bigint(s));
}

std::string to_string(const BigInt& v) { return v.get_str(); }

std::string to_string(const Rational& v) {
  Rational c = v;
  c.canonicalize();
  return c.get_str();
}

double log2_of(const BigInt& v) {
  if (v <= 0) return -std::numeric_limits<double>::infinity();
  long exp = 0;
  double mant = mpz_get_d_2exp(&exp, v.get_mpz_t());
  return std::log2(mant) + static_cast<double>(exp);
}

double log2_of(const Rational& v) {
  if (v <= 0) return -std::numeric_limits<double>::infinity();
  return log2_of(BigInt(v.get_num())) - log2_of(BigInt(v.get_den()));
}

BigInt floor_of(const Rational& v) {
  BigInt out;
  mpz_fdiv_q(out.get_mpz_t(), v.get_num_mpz_t(), v.get_den_mpz_t());
  return out;
}

BigInt ceil_of(const Rational& v) {
  BigInt out;
  mpz_cdiv_q(out.get_mpz_t(), v.get_num_mpz_t(), v.get_den_mpz_t());
  return out;
}

BigInt round_of(const Rational& v) {
  Rational half(1, 2);
  if (v >= 0) return floor_of(v + half);
  return -floor_of(-v + half);
}

std::size_t bit_length(const BigInt& v) {
  if (v == 0) return 0;
  return mpz_sizeinbase(v.get_mpz_t(), 2);
}

}  // namespace ila
