#pragma once

#include <string>

#include "ila/ast.hpp"

namespace ila {

std::string print(const SExpr& e);
std::string print(const SurfaceProgram& p);

std::string print(const Expr& e);
// Core programs print as valid surface text: inputs become declarations.
std::string print(const CoreProgram& p);
std::string print_cmd(const Cmd& c, int indent = 0);

}  // namespace ila
