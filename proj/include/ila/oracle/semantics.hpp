#pragma once

// Native (homomorphic) and message-level big-step interpreters for core
// programs, an interpreter for surface programs, and the harnesses that
// compare them.

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "ila/oracle/secret_model.hpp"
#include "ila/typecheck.hpp"

namespace ila::oracle {

using Substitution = std::map<std::string, Value>;
using MsgSubstitution = std::map<std::string, Message>;

struct TraceEntry {
  int stmt = -1;
  std::string var;
  SourcePos pos;
  Value value;
};
using EvalTrace = std::vector<TraceEntry>;

// Throws StuckError on unbound variables and operator/sort mismatches.
Substitution eval_native(const SecretModel& sm, Substitution gamma, const Cmd& c, EvalTrace* trace = nullptr);
// Message semantics; modswitch and pbs act as the identity on messages.
MsgSubstitution eval_msg(const Model& model, MsgSubstitution gamma, const Cmd& c,
                         std::map<int, Message>* per_stmt = nullptr);

MsgSubstitution interp_substitution(const SecretModel& sm, const Substitution& gamma);

// Input values: the declared value when known, else uniform in [lo, hi].
std::map<std::string, std::int64_t> choose_inputs(const CoreProgram& p, Rng& rng);
Substitution encrypt_inputs(const SecretModel& sm, const CoreProgram& p,
                            const std::map<std::string, std::int64_t>& values, Rng& rng);
// The messages those inputs encrypt, without any key.
MsgSubstitution message_inputs(const Model& model, const CoreProgram& p,
                               const std::map<std::string, std::int64_t>& values);

struct EquivalenceResult {
  bool holds = true;
  std::string witness;  // first variable whose interpretation differs
  Substitution native;
  MsgSubstitution msg;
};

// Runs c natively on gamma and at message level on interp(gamma), then
// compares interp of every native output with the message output.
EquivalenceResult check_message_equivalence(const SecretModel& sm, const Substitution& gamma, const Cmd& c,
                                            EvalTrace* trace = nullptr,
                                            std::map<int, Message>* per_stmt = nullptr);

struct SafetyViolation {
  int stmt = -1;
  std::string var;
  Bound measured;
  Bound static_bound;
};

// Compares every traced runtime value with its statement's static type.
// expected holds the message-level value of each statement.
std::vector<SafetyViolation> check_semantic_safety(const SecretModel& sm, const std::map<int, Type>& static_types,
                                                   const EvalTrace& trace,
                                                   const std::map<int, Message>& expected);

// Message-level interpretation of a surface program, with loops executed
// directly. Vector elements are named as in lowering (A_0, A_1, ...).
// cipher_input values come from inputs (default: lo).
MsgSubstitution eval_surface(const Model& model, const SurfaceProgram& p,
                             const std::map<std::string, std::int64_t>& inputs = {},
                             std::size_t step_limit = 1'000'000);

nlohmann::json trace_json(const SecretModel& sm, const TraceEntry& e);

}  // namespace ila::oracle
