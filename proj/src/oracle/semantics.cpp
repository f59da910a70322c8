#include "ila/oracle/semantics.hpp"

#include "ila/lower.hpp"
#include "ila/report.hpp"

namespace ila::oracle {

namespace {

class Native {
 public:
  Native(const SecretModel& sm, EvalTrace* trace) : sm_(sm), trace_(trace) {}

  Value expr(const Substitution& g, const Expr& e) const {
    if (auto* v = std::get_if<VarRef>(&e.node)) {
      auto it = g.find(v->name);
      if (it == g.end()) throw StuckError(e.pos, "unbound variable '" + v->name + "'");
      return it->second;
    }
    if (auto* c = std::get_if<ConstLit>(&e.node)) return sm_.constant(*c);
    const auto& o = std::get<OpExpr>(e.node);
    std::vector<Value> args;
    args.reserve(o.args.size());
    for (const auto& a : o.args) args.push_back(expr(g, *a));
    try {
      return sm_.apply(o.op, args, o.imms);
    } catch (const StuckError& err) {
      throw StuckError(e.pos, err.what());
    }
  }

  void cmd(Substitution& g, const Cmd& c) const {
    if (auto* a = std::get_if<AssignCmd>(&c.node)) {
      Value v = expr(g, *a->expr);
      if (trace_) trace_->push_back(TraceEntry{a->id, a->var, c.pos, v});
      g.insert_or_assign(a->var, std::move(v));
    } else if (auto* s = std::get_if<SeqCmd>(&c.node)) {
      for (const auto& sub : s->body) cmd(g, *sub);
    } else if (auto* i = std::get_if<IfCmd>(&c.node)) {
      Value guard = expr(g, *i->guard);
      auto* m = std::get_if<Message>(&guard);
      if (!m) throw StuckError(i->guard->pos, "if guard is not a message");
      cmd(g, *m == sm_.model().true_message() ? *i->then_branch : *i->else_branch);
    }
  }

 private:
  const SecretModel& sm_;
  EvalTrace* trace_;
};

class MsgEval {
 public:
  MsgEval(const Model& model, std::map<int, Message>* per_stmt) : model_(model), per_stmt_(per_stmt) {}

  Message expr(const MsgSubstitution& g, const Expr& e) const {
    if (auto* v = std::get_if<VarRef>(&e.node)) {
      auto it = g.find(v->name);
      if (it == g.end()) throw StuckError(e.pos, "unbound variable '" + v->name + "'");
      return it->second;
    }
    if (auto* c = std::get_if<ConstLit>(&e.node)) return model_.interp_const(*c);
    const auto& o = std::get<OpExpr>(e.node);
    std::vector<Message> args;
    for (const auto& a : o.args) args.push_back(expr(g, *a));
    if (static_cast<int>(args.size()) != op_info(o.op).arity)
      throw StuckError(e.pos, "wrong number of operands");
    return model_.apply_message(o.op, args, o.imms);
  }

  void cmd(MsgSubstitution& g, const Cmd& c) const {
    if (auto* a = std::get_if<AssignCmd>(&c.node)) {
      Message m = expr(g, *a->expr);
      if (per_stmt_) (*per_stmt_)[a->id] = m;
      g.insert_or_assign(a->var, std::move(m));
    } else if (auto* s = std::get_if<SeqCmd>(&c.node)) {
      for (const auto& sub : s->body) cmd(g, *sub);
    } else if (auto* i = std::get_if<IfCmd>(&c.node)) {
      // The else rule evaluates the else branch.
      bool take = expr(g, *i->guard) == model_.true_message();
      cmd(g, take ? *i->then_branch : *i->else_branch);
    }
  }

 private:
  const Model& model_;
  std::map<int, Message>* per_stmt_;
};

}  // namespace

Substitution eval_native(const SecretModel& sm, Substitution gamma, const Cmd& c, EvalTrace* trace) {
  Native(sm, trace).cmd(gamma, c);
  return gamma;
}

MsgSubstitution eval_msg(const Model& model, MsgSubstitution gamma, const Cmd& c, std::map<int, Message>* per_stmt) {
  MsgEval(model, per_stmt).cmd(gamma, c);
  return gamma;
}

MsgSubstitution interp_substitution(const SecretModel& sm, const Substitution& gamma) {
  MsgSubstitution out;
  for (const auto& [k, v] : gamma) out.emplace(k, sm.interp(v));
  return out;
}

std::map<std::string, std::int64_t> choose_inputs(const CoreProgram& p, Rng& rng) {
  std::map<std::string, std::int64_t> out;
  for (const auto& in : p.inputs) out[in.name] = in.value ? *in.value : rng.uniform(in.lo, in.hi);
  return out;
}

Substitution encrypt_inputs(const SecretModel& sm, const CoreProgram& p,
                            const std::map<std::string, std::int64_t>& values, Rng& rng) {
  Substitution g;
  for (const auto& in : p.inputs) {
    auto it = values.find(in.name);
    std::int64_t v = it != values.end() ? it->second : in.value.value_or(in.lo);
    g.insert_or_assign(in.name, sm.encrypt_input(in, v, rng));
  }
  return g;
}

MsgSubstitution message_inputs(const Model& model, const CoreProgram& p,
                               const std::map<std::string, std::int64_t>& values) {
  MsgSubstitution g;
  for (const auto& in : p.inputs) {
    auto it = values.find(in.name);
    std::int64_t v = it != values.end() ? it->second : in.value.value_or(in.lo);
    g.insert_or_assign(in.name, in.sort == Sort::Msg ? Message{zt::broadcast(v, model.d(), model.t())}
                                                     : Message{zt::constant(v, model.d(), model.t())});
  }
  return g;
}

EquivalenceResult check_message_equivalence(const SecretModel& sm, const Substitution& gamma, const Cmd& c,
                                            EvalTrace* trace, std::map<int, Message>* per_stmt) {
  EquivalenceResult r;
  r.native = eval_native(sm, gamma, c, trace);
  r.msg = eval_msg(sm.model(), interp_substitution(sm, gamma), c, per_stmt);
  for (const auto& [x, v] : r.native) {
    auto it = r.msg.find(x);
    if (it == r.msg.end() || !(sm.interp(v) == it->second)) {
      r.holds = false;
      r.witness = x;
      break;
    }
  }
  return r;
}

std::vector<SafetyViolation> check_semantic_safety(const SecretModel& sm, const std::map<int, Type>& static_types,
                                                   const EvalTrace& trace,
                                                   const std::map<int, Message>& expected) {
  std::vector<SafetyViolation> out;
  for (const auto& e : trace) {
    auto st = static_types.find(e.stmt);
    if (st == static_types.end()) continue;
    auto ex = expected.find(e.stmt);
    Bound measured = sm.measure(e.value, ex == expected.end() ? nullptr : &ex->second);
    if (!bound_le(measured, st->second.bound)) out.push_back({e.stmt, e.var, measured, st->second.bound});
  }
  return out;
}

// ---------------------------------------------------------------------------
// Surface interpreter

namespace {

class Surface {
 public:
  Surface(const Model& model, const std::map<std::string, std::int64_t>& inputs, std::size_t limit)
      : model_(model), inputs_(inputs), limit_(limit) {}

  MsgSubstitution run(const SurfaceProgram& p) {
    block(p.body);
    return env_;
  }

 private:
  const Model& model_;
  const std::map<std::string, std::int64_t>& inputs_;
  std::size_t limit_;
  std::size_t steps_ = 0;
  MsgSubstitution env_;
  std::map<std::string, std::vector<std::size_t>> shapes_;

  Message broadcast(std::int64_t v) const { return {zt::broadcast(v, model_.d(), model_.t())}; }
  Message constant(std::int64_t v) const { return {zt::constant(v, model_.d(), model_.t())}; }
  std::int64_t scalar(const Message& m) const { return zt::centered(m.slots.at(0), model_.t()); }

  std::string resolve(const SExpr& e) {
    std::vector<const SExpr*> idx;
    const SExpr* cur = &e;
    while (auto* ix = std::get_if<SIndex>(&cur->node)) {
      idx.push_back(ix->index.get());
      cur = ix->base.get();
    }
    const auto& name = std::get<SName>(cur->node).name;
    if (idx.empty()) return name;
    const auto& shape = shapes_.at(name);
    if (idx.size() != shape.size()) throw StuckError(e.pos, "wrong number of indices for '" + name + "'");
    std::size_t flat = 0;
    for (std::size_t k = 0; k < shape.size(); ++k) {
      std::int64_t i = scalar(expr(*idx[shape.size() - 1 - k]));
      if (i < 0 || static_cast<std::size_t>(i) >= shape[k]) throw StuckError(e.pos, "index out of bounds");
      flat = flat * shape[k] + static_cast<std::size_t>(i);
    }
    return element_name(name, flat);
  }

  Message expr(const SExpr& e) {
    return std::visit(
        [&](const auto& x) -> Message {
          using T = std::decay_t<decltype(x)>;
          if constexpr (std::is_same_v<T, SInt>) return broadcast(x.value);
          else if constexpr (std::is_same_v<T, STrue>) return model_.true_message();
          else if constexpr (std::is_same_v<T, SName> || std::is_same_v<T, SIndex>) {
            std::string n = resolve(e);
            auto it = env_.find(n);
            if (it == env_.end()) throw StuckError(e.pos, "unbound variable '" + n + "'");
            return it->second;
          } else if constexpr (std::is_same_v<T, SUnary>) {
            Message a = expr(*x.operand);
            return model_.apply_message(OpCode::MsgNeg, std::span<const Message>(&a, 1));
          } else if constexpr (std::is_same_v<T, SBinary>) {
            static const std::map<std::string, OpCode> ops = {
                {"(+)", OpCode::Add},  {"(*)", OpCode::Mul},  {"+", OpCode::MsgAdd}, {"-", OpCode::MsgSub},
                {"*", OpCode::MsgMul}, {"<", OpCode::MsgLt},  {"<=", OpCode::MsgLe}, {">", OpCode::MsgGt},
                {">=", OpCode::MsgGe}, {"==", OpCode::MsgEq}, {"!=", OpCode::MsgNe}};
            Message args[2] = {expr(*x.lhs), expr(*x.rhs)};
            return model_.apply_message(ops.at(x.op), args);
          } else if constexpr (std::is_same_v<T, SCall>) {
            OpCode op = *call_op(x.callee);
            const OpInfo& info = op_info(op);
            std::vector<Message> args;
            std::vector<std::int64_t> imms;
            for (std::size_t i = 0; i < x.args.size(); ++i) {
              Message m = expr(*x.args[i]);
              if (i < static_cast<std::size_t>(info.arity)) args.push_back(std::move(m));
              else imms.push_back(scalar(m));
            }
            return model_.apply_message(op, args, imms);
          } else {
            if (x.keyword == "plain_init") return constant(x.values.at(0));
            if (x.keyword == "msg_vec") {
              zt::Vec v(model_.d(), 0);
              for (std::size_t i = 0; i < x.values.size() && i < v.size(); ++i) v[i] = zt::reduce(x.values[i], model_.t());
              return {v};
            }
            throw StuckError(e.pos, "initializer outside an assignment");
          }
        },
        e.node);
  }

  void init(const std::string& name, const SInit& in, SourcePos pos) {
    const std::string& kw = in.keyword;
    if (in.list_form && (kw.starts_with("cipher_init") || kw == "plain_init")) {
      shapes_[name] = in.shape;
      for (std::size_t i = 0; i < in.values.size(); ++i) env_[element_name(name, i)] = constant(in.values[i]);
      return;
    }
    if (kw.starts_with("cipher_init") || kw == "plain_init") {
      env_[name] = constant(in.values.at(0));
    } else if (kw.starts_with("cipher_input")) {
      auto it = inputs_.find(name);
      env_[name] = constant(it != inputs_.end() ? it->second : in.values.at(0));
    } else if (kw == "msg_input") {
      env_[name] = broadcast(in.values.at(0));
    } else {
      SExpr e{in, pos};
      env_[name] = expr(e);
    }
  }

  void step(SourcePos pos) {
    if (++steps_ > limit_) throw StuckError(pos, "step limit exceeded");
  }

  void block(const SBlock& b) {
    for (const auto& st : b) statement(*st);
  }

  void statement(const SStmt& st) {
    std::visit(
        [&](const auto& s) {
          using T = std::decay_t<decltype(s)>;
          if constexpr (std::is_same_v<T, SAssign>) {
            step(st.pos);
            if (auto* in = std::get_if<SInit>(&s.value->node)) {
              init(std::get<SName>(s.target->node).name, *in, st.pos);
              return;
            }
            Message v = expr(*s.value);
            env_[resolve(*s.target)] = std::move(v);
          } else if constexpr (std::is_same_v<T, SWhile>) {
            while (expr(*s.cond) == model_.true_message()) {
              step(st.pos);
              block(s.body);
            }
          } else if constexpr (std::is_same_v<T, SIf>) {
            block(expr(*s.cond) == model_.true_message() ? s.then_body : s.else_body);
          }
        },
        st.node);
  }
};

}  // namespace

MsgSubstitution eval_surface(const Model& model, const SurfaceProgram& p,
                             const std::map<std::string, std::int64_t>& inputs, std::size_t step_limit) {
  return Surface(model, inputs, step_limit).run(p);
}

nlohmann::json trace_json(const SecretModel& sm, const TraceEntry& e) {
  nlohmann::json j = {{"type", "trace"}, {"stmt", e.stmt}, {"var", e.var}, {"line", e.pos.line}};
  j["measured"] = bound_json(sm.measure(e.value));
  const Message m = sm.interp(e.value);
  j["message"] = m.slots;
  return j;
}

}  // namespace ila::oracle
