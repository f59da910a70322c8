#include "ila/ssa.hpp"

#include <set>

namespace ila {

namespace {

ExprPtr rename(const ExprPtr& e, const std::map<std::string, std::string>& current,
               const std::set<std::string>& inputs) {
  if (auto* v = std::get_if<VarRef>(&e->node)) {
    auto it = current.find(v->name);
    if (it != current.end()) return make_var(it->second, e->pos);
    if (inputs.count(v->name)) return e;
    throw SsaError("use of '" + v->name + "' before definition (line " + std::to_string(e->pos.line) + ")");
  }
  if (auto* o = std::get_if<OpExpr>(&e->node)) {
    std::vector<ExprPtr> args;
    for (const auto& a : o->args) args.push_back(rename(a, current, inputs));
    return make_op(o->op, std::move(args), o->imms, e->pos);
  }
  return e;
}

void flatten(const Cmd& c, std::vector<const Cmd*>& out) {
  if (auto* s = std::get_if<SeqCmd>(&c.node)) {
    for (const auto& sub : s->body) flatten(*sub, out);
  } else if (std::holds_alternative<IfCmd>(c.node)) {
    throw SsaError("if-statements are not supported in SSA conversion");
  } else if (std::holds_alternative<AssignCmd>(c.node)) {
    out.push_back(&c);
  }
}

}  // namespace

SsaProgram to_ssa(const CoreProgram& program) {
  SsaProgram out;
  out.inputs = program.inputs;
  std::vector<const Cmd*> stmts;
  if (program.body) flatten(*program.body, stmts);

  std::set<std::string> inputs;
  for (const auto& in : program.inputs) inputs.insert(in.name);
  std::map<std::string, int> def_count;
  std::set<std::string> used_names = inputs;
  for (const Cmd* c : stmts) {
    const auto& a = std::get<AssignCmd>(c->node);
    ++def_count[a.var];
    used_names.insert(a.var);
  }

  std::map<std::string, std::string> current;
  std::map<std::string, int> counter;
  for (const Cmd* c : stmts) {
    const auto& a = std::get<AssignCmd>(c->node);
    ExprPtr rhs = rename(a.expr, current, inputs);
    std::string name = a.var;
    if (def_count[a.var] > 1 || inputs.count(a.var)) {
      int& k = counter[a.var];
      do {
        name = a.var + std::to_string(++k);
      } while (used_names.count(name));
      used_names.insert(name);
    }
    current[a.var] = name;
    out.defs.push_back({name, rhs, c->pos, a.id});
  }
  out.final_names = current;
  if (!out.defs.empty()) out.root = out.defs.back().var;
  return out;
}

CoreProgram from_ssa(const SsaProgram& program, bool restore_names) {
  CoreProgram out;
  out.inputs = program.inputs;
  std::vector<CmdPtr> body;
  int max_id = -1;
  for (const auto& d : program.defs) {
    body.push_back(make_assign(d.var, d.expr, d.id, d.pos));
    max_id = std::max(max_id, d.id);
  }
  if (restore_names) {
    for (const auto& [orig, ssa] : program.final_names)
      if (orig != ssa) body.push_back(make_assign(orig, make_var(ssa), ++max_id));
  }
  out.body = make_seq(std::move(body));
  return out;
}

}  // namespace ila
