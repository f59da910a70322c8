#pragma once

// Diagnostics and results as JSON lines or human-readable text.

#include <cstdio>
#include <string>

#include "ila/typecheck.hpp"
#include "json.hpp"

namespace ila {

nlohmann::json bound_json(const Bound& b);
nlohmann::json type_json(const Model& model, const Type& t);
nlohmann::json diagnosis_json(const Diagnosis& d, const std::string& file);
nlohmann::json context_json(const Model& model, const Context& ctx);

// "file:line:col: noise error ..." followed by the source line and a caret.
std::string diagnosis_text(const Diagnosis& d, const std::string& file, const std::string& source, bool color);

// ANSI colour only on a terminal and unless ILA_COLOR is 0, never or off.
bool use_color(std::FILE* stream);

}  // namespace ila
