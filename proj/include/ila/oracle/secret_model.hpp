#pragma once

// The secret half of an ILA model: runtime values, native operator
// semantics, and the measurement |v|^sp and interpretation interp^sp that
// need the secret key.

#include <memory>
#include <span>
#include <stdexcept>
#include <variant>

#include "ila/model.hpp"
#include "ila/oracle/tfhe_sim.hpp"
#include "ila/oracle/toy_rlwe.hpp"

namespace ila::oracle {

using Value = std::variant<Message, Plaintext, ToyCiphertext, TfheValue>;

Sort value_sort(const Value& v);

// A runtime sort or signature violation.
class StuckError : public std::runtime_error {
 public:
  StuckError(SourcePos pos, const std::string& what) : std::runtime_error(what), pos_(pos) {}
  SourcePos pos() const { return pos_; }

 private:
  SourcePos pos_;
};

class SecretModel {
 public:
  // Generates keys from key_seed. The public model must outlive this.
  SecretModel(const Model& model, std::uint64_t key_seed);

  const Model& model() const { return model_; }
  const ToyScheme* toy() const { return toy_.get(); }
  const TfheSim* tfhe() const { return tfhe_.get(); }

  // Fresh encryption (or message) for a program input holding v.
  Value encrypt_input(const InputDecl& in, std::int64_t v, Rng& rng) const;
  Value encrypt(std::int64_t v, CipherKind kind, Rng& rng, int level = -1) const;  // -1: top level
  Value constant(const ConstLit& c) const;

  // Native semantics of an operator. Throws StuckError (with an empty
  // position) on a sort or signature mismatch.
  Value apply(OpCode op, std::span<const Value> args, std::span<const std::int64_t> imms = {}) const;

  // |v|^sp. When the message the value should decrypt to is known, BFV
  // noise is measured against it; otherwise against the nearest message.
  Bound measure(const Value& v, const Message* expected = nullptr) const;
  Message interp(const Value& v) const;

  nlohmann::json dump_keys() const;

 private:
  const Model& model_;
  std::unique_ptr<ToyScheme> toy_;
  std::unique_ptr<TfheSim> tfhe_;
};

}  // namespace ila::oracle
