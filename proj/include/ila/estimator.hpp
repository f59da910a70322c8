#pragma once

#include <cstdint>
#include <functional>
#include <stdexcept>
#include <string>
#include <string_view>

#include "ila/numeric.hpp"
#include "json.hpp"

namespace ila {

enum class SchemeKind { Bgv, Bfv, Tfhe };
std::string_view scheme_kind_name(SchemeKind k);

class EstimatorError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Public quantities an estimator may depend on.
struct EstimatorContext {
  SchemeKind scheme = SchemeKind::Bgv;
  std::int64_t t = 2;
  std::size_t d = 1;
  BigInt q_max = 0;  // largest modulus of the chain
  std::int64_t eta = 1;  // error distribution bound
  Rational fresh_eps;  // fresh-encryption noise of the model
};

using NoiseFn2 = std::function<Rational(const Rational&, const Rational&)>;
using NoiseFn1 = std::function<Rational(const Rational&)>;

struct NoiseEstimator {
  std::string name;
  NoiseFn2 add;  // cipher (+) cipher
  NoiseFn2 f;    // cipher (*) cipher; TFHE internal product f'
  NoiseFn1 g;    // plain (*) cipher
  NoiseFn2 g_ext;       // TFHE external product with an LWE operand
  NoiseFn2 g_ext_rlwe;  // TFHE external product with an RLWE operand
  Rational b_r;    // modswitch rounding correction
  Rational eps_b;  // TFHE noise after bootstrapping
};

// name in {worst_case, scaled_worst_case, custom-table}. Options:
//   worst_case / scaled_worst_case: c_pc, b_r, eps_b (all optional)
//   custom-table: points [p0 < p1 < ...], f [[...]] (n x n), g [...] (n)
// Every estimator is checked for monotonicity before it is returned.
NoiseEstimator make_estimator(std::string_view name, const nlohmann::json& options,
                              const EstimatorContext& ctx);

// Throws EstimatorError naming the first violation found on a sample grid.
void check_monotone(const NoiseEstimator& est, const EstimatorContext& ctx);

}  // namespace ila
