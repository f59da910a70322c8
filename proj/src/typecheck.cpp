#include "ila/typecheck.hpp"

#include <cstdio>

namespace ila {

Type type_of(Bound b) {
  Sort s = bound_sort(b);
  return Type{s, std::move(b)};
}

std::string describe(const Type& t) { return describe(t.bound); }

bool subtype(const Type& a, const Type& b) { return a.sort == b.sort && bound_le(a.bound, b.bound); }

std::optional<double> budget_bits(const Model& model, const Type& t) {
  auto eps = noise_of(t.bound);
  if (!eps) return std::nullopt;
  return log2_of(model.noise_threshold(t.bound)) - log2_of(*eps);
}

std::string describe(const Diagnosis& d) {
  std::string s = std::string(failure_kind_name(d.kind)) + " error";
  if (!d.op.empty()) s += " in '" + d.op + "'";
  if (!d.var.empty()) s += " assigning '" + d.var + "'";
  s += ": " + d.condition;
  if (d.measured && d.threshold) {
    auto num = [](const Rational& r) {
      if (bit_length(r.get_num()) > 40 && r > 0) {
        char buf[32];
        std::snprintf(buf, sizeof buf, "2^%.2f", log2_of(r));
        return std::string(buf);
      }
      return to_string(r);
    };
    s += " (measured " + num(*d.measured) + ", threshold " + num(*d.threshold) + ")";
  }
  if (d.budget_bits) {
    char buf[48];
    std::snprintf(buf, sizeof buf, ", budget %.2f bits", *d.budget_bits);
    s += buf;
  }
  return s;
}

namespace {

Diagnosis from_failure(const BoundFailure& f, std::string op, SourcePos pos) {
  Diagnosis d;
  d.pos = pos;
  d.op = std::move(op);
  d.kind = f.kind;
  d.condition = f.condition;
  if (f.kind != FailureKind::Sort) {
    d.measured = f.measured;
    d.threshold = f.threshold;
  }
  if (f.kind == FailureKind::Noise && f.measured > 0 && f.threshold > 0)
    d.budget_bits = log2_of(f.threshold) - log2_of(f.measured);
  return d;
}

Diagnosis sort_error(std::string condition, SourcePos pos) {
  Diagnosis d;
  d.pos = pos;
  d.kind = FailureKind::Sort;
  d.condition = std::move(condition);
  return d;
}

class Checker {
 public:
  explicit Checker(const Model& model) : model_(model) {}

  Expected<Type, Diagnosis> expr(const Context& ctx, const Expr& e) const {
    if (auto* v = std::get_if<VarRef>(&e.node)) {
      auto it = ctx.find(v->name);
      if (it == ctx.end()) return unexpected(sort_error("unbound variable '" + v->name + "'", e.pos));
      return it->second;
    }
    if (auto* c = std::get_if<ConstLit>(&e.node)) {
      auto b = model_.const_bound(*c);
      if (!b) return unexpected(from_failure(b.error(), "", e.pos));
      return type_of(std::move(*b));
    }
    const auto& o = std::get<OpExpr>(e.node);
    std::vector<Bound> args;
    args.reserve(o.args.size());
    for (const auto& a : o.args) {
      auto t = expr(ctx, *a);
      if (!t) return t;
      args.push_back(std::move(t->bound));
    }
    auto b = model_.apply_bounds(o.op, args, o.imms);
    if (!b) return unexpected(from_failure(b.error(), std::string(op_info(o.op).name), e.pos));
    return type_of(std::move(*b));
  }

  // Updates ctx in place; stmt_types collects every assignment.
  std::optional<Diagnosis> cmd(Context& ctx, const Cmd& c, std::map<int, Type>& types) const {
    if (auto* a = std::get_if<AssignCmd>(&c.node)) {
      auto t = expr(ctx, *a->expr);
      if (!t) {
        Diagnosis d = t.error();
        d.stmt = a->id;
        d.var = a->var;
        if (d.pos.line == 0) d.pos = c.pos;
        return d;
      }
      types[a->id] = *t;
      ctx.insert_or_assign(a->var, std::move(*t));
      return std::nullopt;
    }
    if (auto* s = std::get_if<SeqCmd>(&c.node)) {
      for (const auto& sub : s->body)
        if (auto d = cmd(ctx, *sub, types)) return d;
      return std::nullopt;
    }
    if (auto* i = std::get_if<IfCmd>(&c.node)) {
      auto g = expr(ctx, *i->guard);
      if (!g) return g.error();
      if (g->sort != Sort::Msg)
        return sort_error("if guard must be msg-sorted, got " + std::string(sort_name(g->sort)), c.pos);
      Context then_ctx = ctx;
      if (auto d = cmd(then_ctx, *i->then_branch, types)) return d;
      Context else_ctx = ctx;
      if (auto d = cmd(else_ctx, *i->else_branch, types)) return d;
      ctx = merge_contexts(then_ctx, else_ctx);
      return std::nullopt;
    }
    return std::nullopt;  // skip
  }

 private:
  const Model& model_;
};

}  // namespace

Expected<Type, Diagnosis> type_expr(const Model& model, const Context& ctx, const Expr& e) {
  return Checker(model).expr(ctx, e);
}

Expected<CmdTyping, Diagnosis> type_cmd(const Model& model, const Context& ctx, const Cmd& c) {
  CmdTyping out;
  out.ctx = ctx;
  if (auto d = Checker(model).cmd(out.ctx, c, out.stmt_types)) return unexpected(std::move(*d));
  return out;
}

Context merge_contexts(const Context& g1, const Context& g2) {
  Context out;
  for (const auto& [name, t1] : g1) {
    auto it = g2.find(name);
    if (it == g2.end() || it->second.sort != t1.sort) continue;
    if (auto j = join(t1.bound, it->second.bound)) out.emplace(name, type_of(std::move(*j)));
  }
  return out;
}

Expected<Context, Diagnosis> initial_context(const Model& model, const CoreProgram& program) {
  Context ctx;
  for (const auto& in : program.inputs) {
    auto b = model.input_bound(in);
    if (!b) {
      Diagnosis d = from_failure(b.error(), "", in.pos);
      d.var = in.name;
      return unexpected(std::move(d));
    }
    ctx.insert_or_assign(in.name, type_of(std::move(*b)));
  }
  return ctx;
}

Expected<CmdTyping, Diagnosis> check_program(const Model& model, const CoreProgram& program) {
  auto ctx = initial_context(model, program);
  if (!ctx) return unexpected(ctx.error());
  if (!program.body) return CmdTyping{*ctx, {}};
  return type_cmd(model, *ctx, *program.body);
}

}  // namespace ila
