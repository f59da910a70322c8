#pragma once

// Public half of an ILA model: sorts, bounds maps and message-level
// operator semantics. Everything here is computable from public parameters.

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "ila/ast.hpp"
#include "ila/bounds.hpp"
#include "ila/estimator.hpp"
#include "ila/expected.hpp"
#include "ila/message.hpp"

namespace ila {

struct SchemeParams {
  std::string name;
  SchemeKind scheme = SchemeKind::Bgv;
  std::int64_t t = 16;
  std::size_t d = 16;
  std::vector<BigInt> moduli;  // indexed by level: moduli[0] = q_0 < ... < moduli[L] = q_L
  std::string estimator = "scaled_worst_case";
  nlohmann::json estimator_options = nlohmann::json::object();
  std::int64_t eta = 1;      // error coefficients are drawn from [-eta, eta]
  Rational tfhe_fresh_noise = 1024;  // TFHE only
  std::uint64_t seed = 1;

  int top_level() const { return static_cast<int>(moduli.size()) - 1; }
  const BigInt& q(int level) const { return moduli.at(static_cast<std::size_t>(level)); }
};

using BoundResult = Expected<Bound, BoundFailure>;

class Model {
 public:
  explicit Model(SchemeParams params);
  virtual ~Model() = default;
  Model(const Model&) = delete;
  Model& operator=(const Model&) = delete;

  const SchemeParams& params() const { return params_; }
  SchemeKind scheme() const { return params_.scheme; }
  std::int64_t t() const { return params_.t; }
  std::size_t d() const { return params_.d; }
  const NoiseEstimator& estimator() const { return estimator_; }

  virtual bool supports(OpCode op) const = 0;

  // The bounds map of an operator; a failure names the violated condition.
  BoundResult apply_bounds(OpCode op, std::span<const Bound> args, std::span<const std::int64_t> imms = {}) const;

  // Message-level semantics of an operator.
  Message apply_message(OpCode op, std::span<const Message> args, std::span<const std::int64_t> imms = {}) const;

  // |v|^pp for constants, and their decoding.
  BoundResult const_bound(const ConstLit& c) const;
  Message interp_const(const ConstLit& c) const;

  // Bound of a program input: a fresh encryption of a value in [lo, hi],
  // or a message.
  BoundResult input_bound(const InputDecl& in) const;

  Message true_message() const;

  // Noise of a fresh encryption (the model's epsilon for inputs).
  const Rational& fresh_noise() const { return fresh_; }

  // Largest noise a value with this bound may carry; used for budgets.
  virtual Rational noise_threshold(const Bound& b) const = 0;

 protected:
  // Operators touching ciphertexts. Plain-only and message operators are
  // handled by the base class.
  virtual BoundResult scheme_bounds(OpCode op, std::span<const Bound> args,
                                    std::span<const std::int64_t> imms) const = 0;
  virtual BoundResult fresh_bound(std::int64_t lo, std::int64_t hi, CipherKind kind) const = 0;

  // -t/2 <= inf <= sup < t/2
  std::optional<BoundFailure> value_check(const Rational& inf, const Rational& sup, std::string_view op) const;
  BoundFailure sort_failure(std::string condition) const;
  // Encoded constants and fresh inputs include zero coefficients when d > 1.
  std::pair<Rational, Rational> encoded_interval(std::int64_t lo, std::int64_t hi) const;

  SchemeParams params_;
  Rational fresh_;
  NoiseEstimator estimator_;
};

// Interval of a product: min/max over the four endpoint products.
std::pair<Rational, Rational> product_interval(const Rational& inf1, const Rational& sup1, const Rational& inf2,
                                               const Rational& sup2);
std::pair<Rational, Rational> scaled_interval(const Rational& inf, const Rational& sup, std::int64_t n);

// BGV: t/2 + t*eta*(2d+1), the residual norm bound of a public-key
// encryption with ternary secret and randomness. BFV: the same error scaled
// by t/q. TFHE: configured.
Rational fresh_noise_for(const SchemeParams& p);
EstimatorContext estimator_context(const SchemeParams& p);

}  // namespace ila
