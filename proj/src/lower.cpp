#include "ila/lower.hpp"

#include <map>
#include <optional>
#include <set>

#include "ila/parser.hpp"

namespace ila {

std::string element_name(const std::string& base, std::size_t flat_index) {
  return base + "_" + std::to_string(flat_index);
}

namespace {

struct VectorInfo {
  std::vector<std::size_t> shape;
  std::size_t size() const {
    std::size_t n = 1;
    for (auto s : shape) n *= s;
    return n;
  }
};

using ConstEnv = std::map<std::string, std::int64_t>;

CipherKind kind_of(const std::string& kw) {
  if (kw.ends_with("_rlwe")) return CipherKind::Rlwe;
  if (kw.ends_with("_rgsw")) return CipherKind::Rgsw;
  return CipherKind::Lwe;
}

class Lowerer {
 public:
  explicit Lowerer(const LowerOptions& opts) : opts_(opts) {}

  CoreProgram run(const SurfaceProgram& p) {
    CoreProgram out;
    std::vector<CmdPtr> body = block(p.body, 0, false);
    out.inputs = std::move(inputs_);
    out.body = make_seq(std::move(body));
    return out;
  }

 private:
  const LowerOptions& opts_;
  std::vector<InputDecl> inputs_;
  std::set<std::string> input_names_;
  std::map<std::string, VectorInfo> vectors_;
  std::set<std::string> elements_;  // names owned by some vector
  std::set<std::string> scalars_;
  ConstEnv consts_;
  int next_id_ = 0;
  std::size_t emitted_ = 0;

  [[noreturn]] static void fail(SourcePos pos, const std::string& msg) { throw LowerError(pos, msg); }

  std::optional<std::int64_t> eval_static(const SExpr& e) const {
    return std::visit(
        [&](const auto& x) -> std::optional<std::int64_t> {
          using T = std::decay_t<decltype(x)>;
          if constexpr (std::is_same_v<T, SInt>) return x.value;
          else if constexpr (std::is_same_v<T, STrue>) return 1;
          else if constexpr (std::is_same_v<T, SName>) {
            auto it = consts_.find(x.name);
            if (it == consts_.end()) return std::nullopt;
            return it->second;
          } else if constexpr (std::is_same_v<T, SUnary>) {
            auto v = eval_static(*x.operand);
            if (!v) return std::nullopt;
            return -*v;
          } else if constexpr (std::is_same_v<T, SBinary>) {
            auto a = eval_static(*x.lhs);
            auto b = eval_static(*x.rhs);
            if (!a || !b) return std::nullopt;
            std::int64_t r = 0;
            const std::string& op = x.op;
            if (op == "+" || op == "-" || op == "*") {
              bool ovf = op == "+"   ? __builtin_add_overflow(*a, *b, &r)
                         : op == "-" ? __builtin_sub_overflow(*a, *b, &r)
                                     : __builtin_mul_overflow(*a, *b, &r);
              if (ovf) fail(e.pos, "overflow in compile-time arithmetic");
              return r;
            }
            if (op == "<") return *a < *b;
            if (op == "<=") return *a <= *b;
            if (op == ">") return *a > *b;
            if (op == ">=") return *a >= *b;
            if (op == "==") return *a == *b;
            if (op == "!=") return *a != *b;
            return std::nullopt;  // homomorphic operators are never static
          } else {
            return std::nullopt;
          }
        },
        e.node);
  }

  std::int64_t require_static(const SExpr& e, const char* what) const {
    auto v = eval_static(e);
    if (!v) fail(e.pos, std::string("non-constant ") + what);
    return *v;
  }

  // Resolves a (possibly indexed) name to the scalar core variable.
  std::string resolve(const SExpr& e) const {
    std::vector<std::int64_t> idx;
    const SExpr* cur = &e;
    std::vector<const SExpr*> index_exprs;
    while (auto* ix = std::get_if<SIndex>(&cur->node)) {
      index_exprs.push_back(ix->index.get());
      cur = ix->base.get();
    }
    auto* name = std::get_if<SName>(&cur->node);
    if (!name) fail(e.pos, "only named vectors can be indexed");
    if (index_exprs.empty()) {
      if (vectors_.count(name->name)) fail(e.pos, "vector '" + name->name + "' used without an index");
      return name->name;
    }
    auto it = vectors_.find(name->name);
    if (it == vectors_.end()) fail(e.pos, "'" + name->name + "' is not a vector");
    const auto& shape = it->second.shape;
    if (index_exprs.size() != shape.size())
      fail(e.pos, "'" + name->name + "' needs " + std::to_string(shape.size()) + " index(es)");
    std::size_t flat = 0;
    for (std::size_t k = 0; k < shape.size(); ++k) {
      const SExpr* ie = index_exprs[shape.size() - 1 - k];
      std::int64_t i = require_static(*ie, "index");
      if (i < 0 || static_cast<std::size_t>(i) >= shape[k])
        fail(ie->pos, "index " + std::to_string(i) + " out of bounds for '" + name->name + "' (size " +
                          std::to_string(shape[k]) + ")");
      flat = flat * shape[k] + static_cast<std::size_t>(i);
    }
    return element_name(name->name, flat);
  }

  ExprPtr expr(const SExpr& e) {
    return std::visit(
        [&](const auto& x) -> ExprPtr {
          using T = std::decay_t<decltype(x)>;
          if constexpr (std::is_same_v<T, SInt>) return make_msg(x.value, e.pos);
          else if constexpr (std::is_same_v<T, STrue>) return make_op(OpCode::True, {}, {}, e.pos);
          else if constexpr (std::is_same_v<T, SName> || std::is_same_v<T, SIndex>)
            return make_var(resolve(e), e.pos);
          else if constexpr (std::is_same_v<T, SUnary>)
            return make_op(OpCode::MsgNeg, {expr(*x.operand)}, {}, e.pos);
          else if constexpr (std::is_same_v<T, SBinary>) {
            static const std::map<std::string, OpCode> ops = {
                {"(+)", OpCode::Add},   {"(*)", OpCode::Mul},   {"+", OpCode::MsgAdd},
                {"-", OpCode::MsgSub},  {"*", OpCode::MsgMul},  {"<", OpCode::MsgLt},
                {"<=", OpCode::MsgLe},  {">", OpCode::MsgGt},   {">=", OpCode::MsgGe},
                {"==", OpCode::MsgEq},  {"!=", OpCode::MsgNe}};
            return make_op(ops.at(x.op), {expr(*x.lhs), expr(*x.rhs)}, {}, e.pos);
          } else if constexpr (std::is_same_v<T, SCall>) {
            OpCode op = *call_op(x.callee);
            const OpInfo& info = op_info(op);
            std::size_t want = static_cast<std::size_t>(info.arity + info.imms);
            if (x.args.size() != want)
              fail(e.pos, "'" + x.callee + "' takes " + std::to_string(want) + " argument(s)");
            std::vector<ExprPtr> args;
            std::vector<std::int64_t> imms;
            for (std::size_t i = 0; i < x.args.size(); ++i) {
              if (i < static_cast<std::size_t>(info.arity)) args.push_back(expr(*x.args[i]));
              else imms.push_back(require_static(*x.args[i], "scalar factor"));
            }
            return make_op(op, std::move(args), std::move(imms), e.pos);
          } else {
            return inline_init(x, e.pos);
          }
        },
        e.node);
  }

  ExprPtr inline_init(const SInit& init, SourcePos pos) {
    const std::string& kw = init.keyword;
    if (kw == "plain_init" && !init.list_form) {
      if (init.values.size() != 1) fail(pos, "plain_init(v) takes one value");
      return make_plain(init.values[0], pos);
    }
    if (kw == "msg_vec") return make_const(ConstLit{Sort::Msg, init.values, false}, pos);
    fail(pos, "'" + kw + "' must be assigned directly to a variable");
  }

  void emit(std::vector<CmdPtr>& out, const std::string& var, ExprPtr e, SourcePos pos) {
    if (++emitted_ > opts_.unroll_budget)
      fail(pos, "unroll budget of " + std::to_string(opts_.unroll_budget) + " statements exceeded");
    out.push_back(make_assign(var, std::move(e), next_id_++, pos));
  }

  void claim_scalar(const std::string& name, SourcePos pos) {
    if (elements_.count(name)) fail(pos, "'" + name + "' clashes with a vector element name");
    if (vectors_.count(name)) fail(pos, "'" + name + "' is a vector");
    scalars_.insert(name);
  }

  void check_fresh(const std::string& name, SourcePos pos) const {
    if (scalars_.count(name) || vectors_.count(name) || elements_.count(name))
      fail(pos, "'" + name + "' is already defined");
  }

  void declare_input(InputDecl d) {
    if (input_names_.count(d.name) || scalars_.count(d.name))
      fail(d.pos, "'" + d.name + "' is already defined");
    input_names_.insert(d.name);
    scalars_.insert(d.name);
    inputs_.push_back(std::move(d));
  }

  void assign_init(const std::string& name, const SInit& init, SourcePos pos, int depth,
                   std::vector<CmdPtr>& out) {
    const std::string& kw = init.keyword;
    bool cipher = kw.starts_with("cipher_");
    if ((cipher || kw == "msg_input") && depth > 0)
      fail(pos, "inputs must be declared at top level, outside loops and branches");
    if (kw.starts_with("cipher_init") && init.list_form) {
      if (vectors_.count(name) || scalars_.count(name)) fail(pos, "'" + name + "' is already defined");
      VectorInfo info{init.shape};
      for (std::size_t i = 0; i < init.values.size(); ++i) {
        std::string el = element_name(name, i);
        if (scalars_.count(el)) fail(pos, "'" + el + "' clashes with vector '" + name + "'");
        InputDecl d{el, Sort::Cipher, kind_of(kw), init.values[i], init.values[i], init.values[i], pos};
        declare_input(d);
        elements_.insert(el);
      }
      vectors_[name] = info;
      return;
    }
    if (kw.starts_with("cipher_init")) {
      if (init.values.size() != 1) fail(pos, kw + "(v) takes one value");
      check_fresh(name, pos);
      std::int64_t v = init.values[0];
      declare_input({name, Sort::Cipher, kind_of(kw), v, v, v, pos});
      consts_.erase(name);
      return;
    }
    if (kw.starts_with("cipher_input")) {
      if (init.values.size() != 2 || init.values[0] > init.values[1])
        fail(pos, kw + "(lo, hi) needs lo <= hi");
      check_fresh(name, pos);
      declare_input({name, Sort::Cipher, kind_of(kw), init.values[0], init.values[1], std::nullopt, pos});
      consts_.erase(name);
      return;
    }
    if (kw == "msg_input") {
      if (init.values.size() != 1) fail(pos, "msg_input(v) takes one value");
      check_fresh(name, pos);
      declare_input({name, Sort::Msg, CipherKind::Lwe, init.values[0], init.values[0], init.values[0], pos});
      consts_.erase(name);
      return;
    }
    if (kw == "plain_init" && init.list_form) {
      if (scalars_.count(name)) fail(pos, "'" + name + "' is already a scalar");
      auto it = vectors_.find(name);
      if (it != vectors_.end() && it->second.shape != init.shape)
        fail(pos, "'" + name + "' redeclared with a different shape");
      vectors_[name] = VectorInfo{init.shape};
      for (std::size_t i = 0; i < init.values.size(); ++i) {
        std::string el = element_name(name, i);
        if (scalars_.count(el)) fail(pos, "'" + el + "' clashes with vector '" + name + "'");
        elements_.insert(el);
        emit(out, el, make_plain(init.values[i], pos), pos);
      }
      return;
    }
    claim_scalar(name, pos);
    emit(out, name, inline_init(init, pos), pos);
    consts_.erase(name);
  }

  std::vector<CmdPtr> block(const SBlock& b, int depth, bool in_branch) {
    std::vector<CmdPtr> out;
    for (const auto& st : b) statement(*st, depth, in_branch, out);
    return out;
  }

  void statement(const SStmt& st, int depth, bool in_branch, std::vector<CmdPtr>& out) {
    std::visit(
        [&](const auto& s) {
          using T = std::decay_t<decltype(s)>;
          if constexpr (std::is_same_v<T, SAssign>) {
            if (auto* init = std::get_if<SInit>(&s.value->node)) {
              auto* name = std::get_if<SName>(&s.target->node);
              if (!name) fail(st.pos, "initializers must be assigned to a plain name");
              assign_init(name->name, *init, st.pos, depth + (in_branch ? 1 : 0), out);
              return;
            }
            std::string var = resolve(*s.target);
            if (std::holds_alternative<SName>(s.target->node)) claim_scalar(var, st.pos);
            ExprPtr e = expr(*s.value);
            std::optional<std::int64_t> v = eval_static(*s.value);
            emit(out, var, std::move(e), st.pos);
            if (v) consts_[var] = *v;
            else consts_.erase(var);
          } else if constexpr (std::is_same_v<T, SWhile>) {
            for (std::size_t iter = 0;; ++iter) {
              std::int64_t c = require_static(*s.cond, "loop bound");
              if (c != 1) break;
              if (iter >= opts_.unroll_budget)
                fail(st.pos, "unroll budget of " + std::to_string(opts_.unroll_budget) +
                                 " iterations exceeded");
              auto body = block(s.body, depth + 1, in_branch);
              out.insert(out.end(), body.begin(), body.end());
            }
          } else if constexpr (std::is_same_v<T, SIf>) {
            ExprPtr guard = expr(*s.cond);
            std::optional<std::int64_t> c = eval_static(*s.cond);
            ConstEnv before = consts_;
            auto then_body = block(s.then_body, depth, true);
            ConstEnv after_then = consts_;
            consts_ = before;
            auto else_body = block(s.else_body, depth, true);
            ConstEnv after_else = consts_;
            if (c) {
              consts_ = *c == 1 ? after_then : after_else;
            } else {
              consts_.clear();
              for (const auto& [k, v] : after_then) {
                auto it = after_else.find(k);
                if (it != after_else.end() && it->second == v) consts_[k] = v;
              }
            }
            out.push_back(make_if(guard, make_seq(std::move(then_body)), make_seq(std::move(else_body)),
                                  st.pos));
          } else {
            // skip contributes nothing
          }
        },
        st.node);
  }
};

}  // namespace

CoreProgram lower(const SurfaceProgram& program, const LowerOptions& options) {
  Lowerer l(options);
  return l.run(program);
}

}  // namespace ila
