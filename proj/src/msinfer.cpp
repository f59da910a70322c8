#include "ila/msinfer.hpp"

#include <algorithm>
#include <functional>

namespace ila {

const Expr* DefList::def(const std::string& v) const {
  auto it = index.find(v);
  return it == index.end() ? nullptr : defs[it->second].second.get();
}

namespace {

const Expr& strip(const Expr& e) {
  const Expr* cur = &e;
  while (auto* o = std::get_if<OpExpr>(&cur->node)) {
    if (o->op != OpCode::ModSwitch && o->op != OpCode::Scale) break;
    cur = o->args[0].get();
  }
  return *cur;
}

ExprPtr wrap(ExprPtr e, int times) {
  for (int i = 0; i < times; ++i) e = make_op(OpCode::ModSwitch, {e}, {}, e->pos);
  return e;
}

bool is_cipher_expr(const Expr& e, const std::set<std::string>& ciphers) {
  if (auto* v = std::get_if<VarRef>(&e.node)) return ciphers.count(v->name) > 0;
  if (std::holds_alternative<ConstLit>(e.node)) return false;
  const auto& o = std::get<OpExpr>(e.node);
  if (is_message_op(o.op) || o.op == OpCode::True) return false;
  for (const auto& a : o.args)
    if (is_cipher_expr(*a, ciphers)) return true;
  return false;
}

// Every cipher variable occurring anywhere in e.
void cipher_vars(const Expr& e, const std::set<std::string>& ciphers, std::set<std::string>& out) {
  if (auto* v = std::get_if<VarRef>(&e.node)) {
    if (ciphers.count(v->name)) out.insert(v->name);
  } else if (auto* o = std::get_if<OpExpr>(&e.node)) {
    for (const auto& a : o->args) cipher_vars(*a, ciphers, out);
  }
}

class Mulops {
 public:
  explicit Mulops(const DefList& defs) : defs_(defs) {}

  void additive(const Expr& e, std::set<std::string>& out) {
    if (auto* v = std::get_if<VarRef>(&e.node)) {
      if (defs_.def(v->name)) {
        const auto& sub = expand(v->name);
        out.insert(sub.begin(), sub.end());
      }
      return;
    }
    if (auto* o = std::get_if<OpExpr>(&e.node)) {
      for (const auto& a : o->args) {
        if (is_multiplicative(o->op)) cipher_vars(strip(*a), defs_.ciphers, out);
        else additive(*a, out);
      }
    }
  }

 private:
  const std::set<std::string>& expand(const std::string& v) {
    auto it = memo_.find(v);
    if (it != memo_.end()) return it->second;
    std::set<std::string> out;
    additive(*defs_.def(v), out);
    return memo_[v] = std::move(out);
  }

  const DefList& defs_;
  std::map<std::string, std::set<std::string>> memo_;
};

// Variables whose value flows into v without passing a multiplication.
class AdditiveClosure {
 public:
  explicit AdditiveClosure(const DefList& defs) : defs_(defs) {}

  const std::set<std::string>& of(const std::string& v) {
    auto it = memo_.find(v);
    if (it != memo_.end()) return it->second;
    std::set<std::string> out{v};
    if (const Expr* d = defs_.def(v)) collect(*d, out);
    return memo_[v] = std::move(out);
  }

  bool reaches(const Expr& operand, const std::string& n) {
    std::set<std::string> vars;
    cipher_vars(operand, defs_.ciphers, vars);
    for (const auto& v : vars)
      if (of(v).count(n)) return true;
    return false;
  }

 private:
  void collect(const Expr& e, std::set<std::string>& out) {
    if (auto* v = std::get_if<VarRef>(&e.node)) {
      const auto& sub = of(v->name);
      out.insert(sub.begin(), sub.end());
    } else if (auto* o = std::get_if<OpExpr>(&e.node)) {
      if (is_multiplicative(o->op)) return;
      for (const auto& a : o->args) collect(*a, out);
    }
  }

  const DefList& defs_;
  std::map<std::string, std::set<std::string>> memo_;
};

// Wraps, at every multiplication, each operand through which n flows.
ExprPtr switch_operands(const ExprPtr& e, const std::string& n, AdditiveClosure& closure, int& wrapped) {
  auto* o = std::get_if<OpExpr>(&e->node);
  if (!o) return e;
  std::vector<ExprPtr> args;
  bool changed = false;
  for (const auto& a : o->args) {
    ExprPtr na = switch_operands(a, n, closure, wrapped);
    if (is_multiplicative(o->op) && closure.reaches(*a, n)) {
      na = wrap(na, 1);
      ++wrapped;
    }
    changed = changed || na != a;
    args.push_back(std::move(na));
  }
  if (!changed) return e;
  return make_op(o->op, std::move(args), o->imms, e->pos);
}

struct Leveled {
  ExprPtr expr;
  bool cipher = false;
  int level = 0;
};

Leveled level_expr(const ExprPtr& e, const std::map<std::string, int>& env, const std::set<std::string>& ciphers,
                   int top, int& inserted, bool& underflow) {
  if (auto* v = std::get_if<VarRef>(&e->node)) {
    if (!ciphers.count(v->name)) return {e, false, 0};
    auto it = env.find(v->name);
    return {e, true, it == env.end() ? top : it->second};
  }
  if (std::holds_alternative<ConstLit>(e->node)) return {e, false, 0};
  const auto& o = std::get<OpExpr>(e->node);
  std::vector<Leveled> kids;
  for (const auto& a : o.args) kids.push_back(level_expr(a, env, ciphers, top, inserted, underflow));
  bool changed = false;
  for (std::size_t i = 0; i < kids.size(); ++i) changed = changed || kids[i].expr != o.args[i];
  if (o.op == OpCode::ModSwitch) {
    Leveled k = kids[0];
    if (k.level - 1 < 0) underflow = true;
    ExprPtr out = changed ? make_op(o.op, {k.expr}, o.imms, e->pos) : e;
    return {out, k.cipher, k.level - 1};
  }
  if (is_message_op(o.op) || o.op == OpCode::True) return {e, false, 0};
  int lowest = top + 1;
  bool cipher = false;
  for (const auto& k : kids)
    if (k.cipher) {
      cipher = true;
      lowest = std::min(lowest, k.level);
    }
  std::vector<ExprPtr> args;
  for (auto& k : kids) {
    if (k.cipher && k.level > lowest) {
      inserted += k.level - lowest;
      k.expr = wrap(k.expr, k.level - lowest);
      changed = true;
    }
    args.push_back(k.expr);
  }
  ExprPtr out = changed ? make_op(o.op, std::move(args), o.imms, e->pos) : e;
  if (!cipher) return {out, false, 0};
  if (lowest < 0) underflow = true;
  return {out, true, lowest};
}

void count_in_expr(const Expr& e, const std::function<bool(OpCode)>& pred, int& n) {
  if (auto* o = std::get_if<OpExpr>(&e.node)) {
    if (pred(o->op)) ++n;
    for (const auto& a : o->args) count_in_expr(*a, pred, n);
  }
}

int count_where(const Cmd& c, const std::function<bool(OpCode)>& pred) {
  int n = 0;
  std::function<void(const Cmd&)> walk = [&](const Cmd& cmd) {
    if (auto* a = std::get_if<AssignCmd>(&cmd.node)) count_in_expr(*a->expr, pred, n);
    else if (auto* s = std::get_if<SeqCmd>(&cmd.node))
      for (const auto& sub : s->body) walk(*sub);
    else if (auto* i = std::get_if<IfCmd>(&cmd.node)) {
      count_in_expr(*i->guard, pred, n);
      walk(*i->then_branch);
      walk(*i->else_branch);
    }
  };
  walk(c);
  return n;
}

CmdPtr renumber(const CmdPtr& c, int& next) {
  if (auto* a = std::get_if<AssignCmd>(&c->node)) return make_assign(a->var, a->expr, next++, c->pos);
  if (auto* s = std::get_if<SeqCmd>(&c->node)) {
    std::vector<CmdPtr> body;
    for (const auto& sub : s->body) body.push_back(renumber(sub, next));
    return make_seq(std::move(body));
  }
  if (auto* i = std::get_if<IfCmd>(&c->node)) {
    CmdPtr t = renumber(i->then_branch, next);
    CmdPtr e = renumber(i->else_branch, next);
    return make_if(i->guard, t, e, c->pos);
  }
  return c;
}

}  // namespace

// ---------------------------------------------------------------------------

DefList build_deflist(const SsaProgram& p) {
  DefList out;
  for (const auto& in : p.inputs)
    if (in.sort == Sort::Cipher) out.ciphers.insert(in.name);
  for (const auto& d : p.defs) {
    out.index[d.var] = out.defs.size();
    out.defs.emplace_back(d.var, d.expr);
    if (is_cipher_expr(*d.expr, out.ciphers)) out.ciphers.insert(d.var);
  }
  return out;
}

std::set<std::string> mulops(const Expr& e, const DefList& defs) {
  std::set<std::string> out;
  Mulops(defs).additive(e, out);
  return out;
}

std::map<std::string, int> md_heights(const DefList& defs) {
  std::map<std::string, int> h;
  Mulops m(defs);
  for (const auto& [var, expr] : defs.defs) {
    std::set<std::string> kids;
    m.additive(*expr, kids);
    int best = 0;
    for (const auto& k : kids) {
      auto it = h.find(k);
      best = std::max(best, 1 + (it == h.end() ? 0 : it->second));
    }
    h[var] = best;
  }
  return h;
}

MDTree build_mdtree(const std::string& node, const DefList& defs, std::size_t node_limit) {
  Mulops m(defs);
  std::size_t made = 0;
  std::function<MDTree(const std::string&)> build = [&](const std::string& v) {
    if (++made > node_limit) throw std::length_error("MD tree exceeds " + std::to_string(node_limit) + " nodes");
    MDTree t;
    t.var = v;
    if (const Expr* d = defs.def(v)) {
      std::set<std::string> kids;
      m.additive(*d, kids);
      for (const auto& k : kids) {
        t.children.push_back(build(k));
        t.height = std::max(t.height, 1 + t.children.back().height);
      }
    }
    return t;
  };
  return build(node);
}

std::optional<std::vector<std::pair<std::string, ExprPtr>>> mslevel(
    const std::vector<std::pair<std::string, ExprPtr>>& defs, const std::map<std::string, int>& initial,
    const std::set<std::string>& ciphers, int* inserted) {
  std::map<std::string, int> env = initial;
  int top = 0;
  for (const auto& [v, l] : initial) top = std::max(top, l);
  int count = 0;
  bool underflow = false;
  std::vector<std::pair<std::string, ExprPtr>> out;
  for (const auto& [var, expr] : defs) {
    Leveled r = level_expr(expr, env, ciphers, top, count, underflow);
    if (r.cipher) env[var] = r.level;
    out.emplace_back(var, r.expr);
  }
  if (inserted) *inserted = count;
  if (underflow) return std::nullopt;
  return out;
}

int count_ops(const Cmd& c, OpCode op) {
  return count_where(c, [op](OpCode o) { return o == op; });
}

int count_multiplies(const Cmd& c) { return count_where(c, is_multiplicative); }

// ---------------------------------------------------------------------------

namespace {

struct RunResult {
  bool ok = false;
  bool changed = false;
  std::vector<CmdPtr> cmds;
  std::string failure;
  std::optional<Diagnosis> diagnosis;
};

class Inference {
 public:
  Inference(const Model& model, InferResult& acc) : model_(model), acc_(acc) {}

  // Straight-line run of assignments typed under ctx.
  RunResult run(const Context& ctx, const std::vector<CmdPtr>& cmds) {
    RunResult out;
    out.cmds = cmds;
    auto first = type_cmd(model_, ctx, *make_seq(cmds));
    if (first) {
      out.ok = true;
      return out;
    }
    out.diagnosis = first.error();
    if (first.error().kind != FailureKind::Noise) {
      out.failure = "the failure is not a noise overflow; modswitch cannot fix it";
      return out;
    }
    if (!model_.supports(OpCode::ModSwitch)) {
      out.failure = "the " + std::string(scheme_kind_name(model_.scheme())) + " model has no modswitch";
      return out;
    }

    CoreProgram core;
    core.body = make_seq(cmds);
    std::map<std::string, int> levels;
    for (const auto& [name, type] : ctx) {
      core.inputs.push_back(InputDecl{name, type.sort, CipherKind::Lwe, 0, 0, std::nullopt, {}});
      if (auto l = level_of(type.bound)) levels[name] = *l;
    }
    SsaProgram ssa = to_ssa(core);
    DefList dl = build_deflist(ssa);
    auto heights = md_heights(dl);

    // Nodes consumed by some multiplication, in program order.
    std::set<std::string> consumed;
    for (const auto& [var, expr] : dl.defs) {
      auto kids = mulops(*expr, dl);
      consumed.insert(kids.begin(), kids.end());
    }
    int max_height = 0;
    for (const auto& [v, h] : heights) max_height = std::max(max_height, h);

    AdditiveClosure closure(dl);
    std::vector<std::pair<std::string, ExprPtr>> current = dl.defs;
    for (int r = 1; r <= max_height; ++r) {
      std::string node;
      for (const auto& [var, expr] : dl.defs)
        if (heights[var] == r && consumed.count(var)) {
          node = var;
          break;
        }
      if (node.empty()) break;
      int wrapped = 0;
      std::vector<std::string> sites;
      for (auto& [var, expr] : current) {
        int before = wrapped;
        expr = switch_operands(expr, node, closure, wrapped);
        if (wrapped != before) sites.push_back(var);
      }
      int leveled = 0;
      auto lv = mslevel(current, levels, dl.ciphers, &leveled);
      std::string where;
      for (const auto& s : sites) where += (where.empty() ? "" : ", ") + s;
      acc_.log.push_back("round " + std::to_string(r) + ": switch '" + node + "' at " + std::to_string(wrapped) +
                         " operand(s) in " + where + "; " + std::to_string(leveled) +
                         " switch(es) to equalize levels");
      if (!lv) {
        out.failure = "chain exhausted: levels would drop below 0";
        return out;
      }
      current = *lv;

      SsaProgram rewritten = ssa;
      for (std::size_t i = 0; i < current.size(); ++i) rewritten.defs[i].expr = current[i].second;
      CoreProgram back = from_ssa(rewritten, true);
      auto typed = type_cmd(model_, ctx, *back.body);
      if (typed) {
        out.ok = true;
        out.changed = true;
        out.cmds = std::get<SeqCmd>(back.body->node).body;
        return out;
      }
      out.diagnosis = typed.error();
      if (typed.error().kind != FailureKind::Noise) {
        out.failure = typed.error().kind == FailureKind::Level ? "chain exhausted" : describe(typed.error());
        return out;
      }
    }
    out.failure = "no multiplication left to switch";
    return out;
  }

  // Processes a command tree; appends rewritten commands to out and
  // advances ctx. Returns false on failure (details in acc_).
  bool block(Context& ctx, const CmdPtr& c, std::vector<CmdPtr>& out) {
    std::vector<CmdPtr> items;
    flatten(c, items);
    std::vector<CmdPtr> pending;
    auto flush = [&]() -> bool {
      if (pending.empty()) return true;
      RunResult r = run(ctx, pending);
      if (!r.ok) {
        acc_.failure = r.failure;
        acc_.diagnosis = r.diagnosis;
        return false;
      }
      acc_.changed = acc_.changed || r.changed;
      auto typed = type_cmd(model_, ctx, *make_seq(r.cmds));
      ctx = typed->ctx;
      out.insert(out.end(), r.cmds.begin(), r.cmds.end());
      pending.clear();
      return true;
    };
    for (const auto& item : items) {
      if (std::holds_alternative<AssignCmd>(item->node)) {
        pending.push_back(item);
        continue;
      }
      if (!flush()) return false;
      const auto* i = std::get_if<IfCmd>(&item->node);
      if (!i) {
        out.push_back(item);
        continue;
      }
      auto g = type_expr(model_, ctx, *i->guard);
      if (!g || g->sort != Sort::Msg) {
        acc_.failure = "if guard does not typecheck as msg";
        if (!g) acc_.diagnosis = g.error();
        return false;
      }
      Context then_ctx = ctx, else_ctx = ctx;
      std::vector<CmdPtr> then_cmds, else_cmds;
      if (!block(then_ctx, i->then_branch, then_cmds)) return false;
      if (!block(else_ctx, i->else_branch, else_cmds)) return false;
      equalize(then_ctx, else_ctx, then_cmds, else_cmds);
      ctx = merge_contexts(then_ctx, else_ctx);
      out.push_back(make_if(i->guard, make_seq(std::move(then_cmds)), make_seq(std::move(else_cmds)), item->pos));
    }
    return flush();
  }

 private:
  static void flatten(const CmdPtr& c, std::vector<CmdPtr>& out) {
    if (auto* s = std::get_if<SeqCmd>(&c->node)) {
      for (const auto& sub : s->body) flatten(sub, out);
    } else {
      out.push_back(c);
    }
  }

  // Switches variables that leave the two branches at different levels
  // down to the lower one, so the merge keeps them.
  void equalize(Context& a, Context& b, std::vector<CmdPtr>& a_cmds, std::vector<CmdPtr>& b_cmds) {
    for (const auto& [name, ta] : a) {
      auto it = b.find(name);
      if (it == b.end()) continue;
      auto la = level_of(ta.bound), lb = level_of(it->second.bound);
      if (!la || !lb || *la == *lb) continue;
      bool a_higher = *la > *lb;
      auto& cmds = a_higher ? a_cmds : b_cmds;
      Context& ctx = a_higher ? a : b;
      CmdPtr fix = make_assign(name, wrap(make_var(name), std::abs(*la - *lb)), -1);
      auto typed = type_cmd(model_, ctx, *fix);
      if (!typed) continue;  // the merge drops it, as it would have anyway
      cmds.push_back(fix);
      acc_.log.push_back("branch merge: switch '" + name + "' by " + std::to_string(std::abs(*la - *lb)));
      ctx.insert_or_assign(name, typed->ctx.at(name));
    }
  }

  const Model& model_;
  InferResult& acc_;
};

}  // namespace

InferResult infer_modswitch(const Model& model, const CoreProgram& program) {
  InferResult res;
  res.program = program;
  res.chain_length = static_cast<int>(model.params().moduli.size());
  res.multiplies = program.body ? count_multiplies(*program.body) : 0;
  auto ctx = initial_context(model, program);
  if (!ctx) {
    res.failure = "inputs do not typecheck";
    res.diagnosis = ctx.error();
    return res;
  }
  if (!program.body) {
    res.success = true;
    return res;
  }
  std::vector<CmdPtr> out;
  Inference inf(model, res);
  try {
    if (!inf.block(*ctx, program.body, out)) return res;
  } catch (const SsaError& e) {
    res.failure = e.what();
    return res;
  }
  int next = 0;
  CoreProgram transformed{program.inputs, renumber(make_seq(std::move(out)), next)};
  res.inserted = count_ops(*transformed.body, OpCode::ModSwitch) - count_ops(*program.body, OpCode::ModSwitch);
  res.success = true;
  if (res.changed) res.program = std::move(transformed);
  return res;
}

}  // namespace ila
