#pragma once

#include <memory>
#include <stdexcept>
#include <string>

#include "ila/model.hpp"

namespace ila {

class ParamsError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// JSON document:
//   {"scheme": "bgv"|"bfv"|"tfhe", "t": 16, "d": 16,
//    "modulus_chain": [q_L, ..., q_0],
//    "estimator": "scaled_worst_case" | {"name": ..., "options": {...}},
//    "eta": 1, "seed": 1, "name": "...", "tfhe_fresh_noise": 1024}
// Moduli may be integers or decimal/hex strings.
SchemeParams params_from_json(const nlohmann::json& j);
SchemeParams load_params(const std::string& path);
nlohmann::json params_to_json(const SchemeParams& p);

// Structural checks: d a power of two, chain strictly increasing, q coprime
// to t (BGV), t dividing q (BFV), a single modulus and d = 1 (TFHE).
void validate_params(const SchemeParams& p);

class BgvModel : public Model {
 public:
  explicit BgvModel(SchemeParams p);
  bool supports(OpCode op) const override;
  Rational noise_threshold(const Bound& b) const override;
  Rational kappa(int level) const;      // q_level / 2
  Rational switch_cap(int level) const;  // l_level = q_level / 2

 protected:
  BoundResult scheme_bounds(OpCode op, std::span<const Bound> args, std::span<const std::int64_t> imms) const override;
  BoundResult fresh_bound(std::int64_t lo, std::int64_t hi, CipherKind kind) const override;
};

class BfvModel : public Model {
 public:
  explicit BfvModel(SchemeParams p);
  bool supports(OpCode op) const override;
  Rational noise_threshold(const Bound& b) const override;

 protected:
  BoundResult scheme_bounds(OpCode op, std::span<const Bound> args, std::span<const std::int64_t> imms) const override;
  BoundResult fresh_bound(std::int64_t lo, std::int64_t hi, CipherKind kind) const override;
};

class TfheModel : public Model {
 public:
  explicit TfheModel(SchemeParams p);
  bool supports(OpCode op) const override;
  Rational noise_threshold(const Bound& b) const override;
  Rational add_threshold() const;      // q / 2t
  Rational product_threshold() const;  // q / t

 protected:
  BoundResult scheme_bounds(OpCode op, std::span<const Bound> args, std::span<const std::int64_t> imms) const override;
  BoundResult fresh_bound(std::int64_t lo, std::int64_t hi, CipherKind kind) const override;

 private:
  BoundResult ext_prod(const TfheCipherBound& sel, const TfheCipherBound& x, std::string_view op) const;
  BoundResult add(const TfheCipherBound& a, const TfheCipherBound& b, std::string_view op) const;
};

std::unique_ptr<Model> make_model(const SchemeParams& p);

}  // namespace ila
