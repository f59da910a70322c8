#pragma once

#include <map>
#include <optional>
#include <string>

#include "ila/ast.hpp"
#include "ila/bounds.hpp"
#include "ila/expected.hpp"
#include "ila/model.hpp"

namespace ila {

struct Type {
  Sort sort = Sort::Msg;
  Bound bound;
  bool operator==(const Type&) const = default;
};

Type type_of(Bound b);
std::string describe(const Type& t);

// Same sort and bound(a) <= bound(b).
bool subtype(const Type& a, const Type& b);

using Context = std::map<std::string, Type>;

// A rejection. Exactly one violated condition.
struct Diagnosis {
  SourcePos pos;
  int stmt = -1;    // statement id, -1 for inputs
  std::string var;  // variable being assigned or declared
  std::string op;   // operator whose bounds map is undefined, if any
  FailureKind kind = FailureKind::Sort;
  std::string condition;
  std::optional<Rational> measured;
  std::optional<Rational> threshold;
  // log2(threshold) - log2(measured) for noise failures: the remaining
  // budget, negative at the point of overflow.
  std::optional<double> budget_bits;
};

std::string describe(const Diagnosis& d);

Expected<Type, Diagnosis> type_expr(const Model& model, const Context& ctx, const Expr& e);

struct CmdTyping {
  Context ctx;
  std::map<int, Type> stmt_types;  // type of each assignment's right-hand side
};

Expected<CmdTyping, Diagnosis> type_cmd(const Model& model, const Context& ctx, const Cmd& c);

// Variables present in both with a join; cipher variables at different
// levels or TFHE ids are dropped.
Context merge_contexts(const Context& g1, const Context& g2);

Expected<Context, Diagnosis> initial_context(const Model& model, const CoreProgram& program);

// initial_context followed by type_cmd.
Expected<CmdTyping, Diagnosis> check_program(const Model& model, const CoreProgram& program);

// Remaining noise budget in bits for a cipher type, nullopt otherwise.
std::optional<double> budget_bits(const Model& model, const Type& t);

}  // namespace ila
