#pragma once

#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "ila/ast.hpp"

namespace ila {

class SsaError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct SsaDef {
  std::string var;
  ExprPtr expr;
  SourcePos pos;
  int id = -1;
};

struct SsaProgram {
  std::vector<InputDecl> inputs;
  std::vector<SsaDef> defs;
  // Original variable -> SSA name holding its final value.
  std::map<std::string, std::string> final_names;
  std::string root;  // last definition
};

// Straight-line programs only. Variables assigned more than once (or that
// shadow an input) get numbered names x1, x2, ...
SsaProgram to_ssa(const CoreProgram& program);

// Back to a core program. With restore_names, copies `x := x3` are appended
// so every original variable holds its final value under its own name.
CoreProgram from_ssa(const SsaProgram& program, bool restore_names = false);

}  // namespace ila
