#pragma once

// Randomized checkers for the two model validity axioms.

#include <span>
#include <string>
#include <vector>

#include "ila/oracle/secret_model.hpp"

namespace ila::oracle {

struct AxiomVerdict {
  bool holds = true;
  bool defined = false;  // the bounds map was defined on the inputs
  std::string detail;
};

// When the bounds map is defined on the measured argument bounds with
// result b: the measured bound of the native result is <= b, and its
// interpretation equals the message-level result. Vacuous otherwise.
AxiomVerdict check_commutativity(const SecretModel& sm, OpCode op, std::span<const Value> args,
                                 std::span<const std::int64_t> imms = {});

// Requires smaller[i] <= bounds[i]. If the bounds map is defined on bounds,
// it must be defined on smaller with a result no larger.
AxiomVerdict check_downwards_closed(const Model& model, OpCode op, std::span<const Bound> bounds,
                                    std::span<const Bound> smaller, std::span<const std::int64_t> imms = {});

// One way to call an operator: operand sorts (and TFHE kinds).
struct ArgSpec {
  Sort sort = Sort::Cipher;
  std::vector<CipherKind> kinds = {CipherKind::Lwe};  // one is picked at random
};
using Signature = std::vector<ArgSpec>;

std::vector<OpCode> model_operators(const Model& model);
std::vector<Signature> signatures(const Model& model, OpCode op);

// Samplers. Values are valid (decrypt correctly, noise under threshold).
Value sample_value(const SecretModel& sm, const ArgSpec& spec, std::int64_t magnitude, Rng& rng);
Bound sample_bound(const Model& model, const ArgSpec& spec, Rng& rng, int level);
Bound sample_smaller(const Model& model, const Bound& b, Rng& rng);

struct OpAxiomStats {
  OpCode op = OpCode::Add;
  int comm_samples = 0, comm_defined = 0, comm_failures = 0;
  int dc_samples = 0, dc_defined = 0, dc_failures = 0;
  std::string first_failure;
  bool passed() const { return comm_failures == 0 && dc_failures == 0; }
};

struct AxiomSuiteOptions {
  int comm_defined = 1000;  // defined commutativity samples wanted per operator
  int dc_samples = 10000;   // comparable pairs drawn per operator, at least
  int dc_defined = 1000;    // of which defined on the larger bounds, at least
  std::uint64_t seed = 1;
};

std::vector<OpAxiomStats> run_axiom_suite(const SecretModel& sm, const AxiomSuiteOptions& opts);

}  // namespace ila::oracle
