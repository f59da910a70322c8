#pragma once

#include <stdexcept>
#include <string>

#include "ila/numeric.hpp"
#include "json.hpp"

namespace ila {

// Big numbers may be written as JSON integers or as strings ("2^40" is not
// accepted; write the digits or a 0x literal).
inline BigInt json_bigint(const nlohmann::json& j) {
  if (j.is_number_integer()) return BigInt(std::to_string(j.get<long long>()));
  if (j.is_number_unsigned()) return BigInt(std::to_string(j.get<unsigned long long>()));
  if (j.is_string()) return parse_bigint(j.get<std::string>());
  throw std::invalid_argument("expected an integer or an integer string, got " + j.dump());
}

inline Rational json_rational(const nlohmann::json& j) {
  if (j.is_number_integer() || j.is_number_unsigned()) return Rational(json_bigint(j));
  if (j.is_number_float()) return Rational(j.get<double>());
  if (j.is_string()) return parse_rational(j.get<std::string>());
  throw std::invalid_argument("expected a number or a rational string, got " + j.dump());
}

inline nlohmann::json rational_json(const Rational& r) {
  if (r.get_den() == 1 && r.get_num().fits_slong_p()) return r.get_num().get_si();
  return to_string(r);
}

}  // namespace ila
