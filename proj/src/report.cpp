#include "ila/report.hpp"

#include <unistd.h>

#include <cstdlib>
#include <sstream>

#include "ila/json_util.hpp"

namespace ila {

nlohmann::json bound_json(const Bound& b) {
  nlohmann::json j;
  j["sort"] = sort_name(bound_sort(b));
  if (auto iv = interval_of(b)) {
    j["inf"] = rational_json(iv->first);
    j["sup"] = rational_json(iv->second);
  }
  if (auto eps = noise_of(b)) {
    j["eps"] = rational_json(*eps);
    j["eps_log2"] = *eps > 0 ? nlohmann::json(log2_of(*eps)) : nlohmann::json(nullptr);
  }
  if (auto l = level_of(b)) j["level"] = *l;
  if (auto* c = std::get_if<TfheCipherBound>(&b)) j["id"] = kind_name(c->id);
  return j;
}

nlohmann::json type_json(const Model& model, const Type& t) {
  nlohmann::json j = bound_json(t.bound);
  if (auto bits = budget_bits(model, t)) j["budget_bits"] = *bits;
  return j;
}

nlohmann::json diagnosis_json(const Diagnosis& d, const std::string& file) {
  nlohmann::json j = {{"type", "diagnosis"},
                      {"file", file},
                      {"line", d.pos.line},
                      {"col", d.pos.col},
                      {"stmt", d.stmt},
                      {"var", d.var},
                      {"op", d.op},
                      {"kind", failure_kind_name(d.kind)},
                      {"condition", d.condition}};
  j["measured"] = d.measured ? rational_json(*d.measured) : nlohmann::json(nullptr);
  j["threshold"] = d.threshold ? rational_json(*d.threshold) : nlohmann::json(nullptr);
  j["budget_bits"] = d.budget_bits ? nlohmann::json(*d.budget_bits) : nlohmann::json(nullptr);
  return j;
}

nlohmann::json context_json(const Model& model, const Context& ctx) {
  nlohmann::json j = nlohmann::json::object();
  for (const auto& [name, t] : ctx) j[name] = type_json(model, t);
  return j;
}

std::string diagnosis_text(const Diagnosis& d, const std::string& file, const std::string& source, bool color) {
  const char* red = color ? "\x1b[1;31m" : "";
  const char* bold = color ? "\x1b[1m" : "";
  const char* reset = color ? "\x1b[0m" : "";
  std::ostringstream os;
  os << bold << file << ":" << d.pos.line << ":" << d.pos.col << ":" << reset << " " << red << "error:" << reset
     << " " << describe(d) << "\n";
  if (d.pos.line > 0) {
    std::istringstream in(source);
    std::string line;
    for (int i = 0; i < d.pos.line && std::getline(in, line); ++i) {
    }
    if (in || !line.empty()) {
      os << "  " << line << "\n";
      os << "  " << std::string(static_cast<std::size_t>(std::max(0, d.pos.col - 1)), ' ') << red << "^" << reset
         << "\n";
    }
  }
  return os.str();
}

bool use_color(std::FILE* stream) {
  if (const char* env = std::getenv("ILA_COLOR")) {
    std::string v(env);
    if (v == "0" || v == "never" || v == "off") return false;
  }
  return isatty(fileno(stream)) != 0;
}

}  // namespace ila
