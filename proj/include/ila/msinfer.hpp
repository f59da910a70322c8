#pragma once

// Modulus-switch inference: find a placement of modswitch operations that
// makes a program typecheck, switching at the shallowest multiplicative
// depth first.

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "ila/ssa.hpp"
#include "ila/typecheck.hpp"

namespace ila {

struct DefList {
  std::vector<std::pair<std::string, ExprPtr>> defs;  // program order
  std::map<std::string, std::size_t> index;
  std::set<std::string> ciphers;  // variables (defined or input) of cipher sort

  const Expr* def(const std::string& v) const;
};

// Sorts are inferred syntactically from the inputs, so this works on
// programs that do not typecheck.
DefList build_deflist(const SsaProgram& p);

// Variables used as cipher operands of a multiplication, either directly in
// e or inside its additive operands (expanded through their definitions).
std::set<std::string> mulops(const Expr& e, const DefList& defs);

struct MDTree {
  std::string var;
  std::vector<MDTree> children;
  int height = 0;  // longest root-to-leaf path in edges
};

// Node limit guards against DAG blow-up when expanded into a tree.
MDTree build_mdtree(const std::string& node, const DefList& defs, std::size_t node_limit = 100000);

// Multiplicative height of every defined variable (0 for leaves).
std::map<std::string, int> md_heights(const DefList& defs);

// Equalizes cipher operand levels of every operator by wrapping the
// higher-level operands in modswitch. initial holds input levels.
// Returns nullopt if some level would drop below 0.
std::optional<std::vector<std::pair<std::string, ExprPtr>>> mslevel(
    const std::vector<std::pair<std::string, ExprPtr>>& defs, const std::map<std::string, int>& initial,
    const std::set<std::string>& ciphers, int* inserted = nullptr);

struct InferResult {
  bool success = false;
  bool changed = false;
  CoreProgram program;      // transformed program (original when unchanged or failed)
  int inserted = 0;         // modswitch operations added
  int multiplies = 0;       // multiplicative operations in the program
  int chain_length = 0;     // number of moduli
  std::vector<std::string> log;
  std::string failure;      // reason when !success
  std::optional<Diagnosis> diagnosis;  // last typing failure
};

InferResult infer_modswitch(const Model& model, const CoreProgram& program);

int count_ops(const Cmd& c, OpCode op);
int count_multiplies(const Cmd& c);

}  // namespace ila
