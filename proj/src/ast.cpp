#include "ila/ast.hpp"

#include <array>
#include <stdexcept>

namespace ila {

std::string_view sort_name(Sort s) {
  switch (s) {
    case Sort::Msg: return "msg";
    case Sort::Plain: return "plain";
    case Sort::Cipher: return "cipher";
  }
  return "?";
}

std::string_view kind_name(CipherKind k) {
  switch (k) {
    case CipherKind::Lwe: return "LWE";
    case CipherKind::Rlwe: return "RLWE";
    case CipherKind::Rgsw: return "RGSW";
  }
  return "?";
}

namespace {
constexpr std::array<OpInfo, 19> kOps = {{
    {OpCode::Add, "(+)", 2, 0, true},
    {OpCode::Mul, "(*)", 2, 0, true},
    {OpCode::ModSwitch, "modswitch", 1, 0, false},
    {OpCode::Scale, "scale", 1, 1, false},
    {OpCode::ExtProd, "extprod", 2, 0, false},
    {OpCode::IntProd, "intprod", 2, 0, false},
    {OpCode::Pbs, "pbs", 2, 0, false},
    {OpCode::Cmux, "cmux", 3, 0, false},
    {OpCode::True, "true", 0, 0, false},
    {OpCode::MsgAdd, "+", 2, 0, true},
    {OpCode::MsgSub, "-", 2, 0, true},
    {OpCode::MsgMul, "*", 2, 0, true},
    {OpCode::MsgNeg, "neg", 1, 0, false},
    {OpCode::MsgLt, "<", 2, 0, true},
    {OpCode::MsgLe, "<=", 2, 0, true},
    {OpCode::MsgGt, ">", 2, 0, true},
    {OpCode::MsgGe, ">=", 2, 0, true},
    {OpCode::MsgEq, "==", 2, 0, true},
    {OpCode::MsgNe, "!=", 2, 0, true},
}};
}  // namespace

const OpInfo& op_info(OpCode op) {
  for (const auto& info : kOps)
    if (info.code == op) return info;
  throw std::logic_error("unregistered opcode");
}

std::optional<OpCode> call_op(std::string_view name) {
  for (const auto& info : kOps)
    if (!info.infix && info.name == name && info.code != OpCode::True) return info.code;
  return std::nullopt;
}

bool is_message_op(OpCode op) { return op >= OpCode::MsgAdd; }

bool is_multiplicative(OpCode op) {
  return op == OpCode::Mul || op == OpCode::ExtProd || op == OpCode::IntProd;
}

ExprPtr make_var(std::string name, SourcePos pos) {
  return std::make_shared<const Expr>(Expr{VarRef{std::move(name)}, pos});
}

ExprPtr make_const(ConstLit lit, SourcePos pos) {
  return std::make_shared<const Expr>(Expr{std::move(lit), pos});
}

ExprPtr make_msg(std::int64_t v, SourcePos pos) {
  return make_const(ConstLit{Sort::Msg, {v}, true}, pos);
}

ExprPtr make_plain(std::int64_t v, SourcePos pos) {
  return make_const(ConstLit{Sort::Plain, {v}, false}, pos);
}

ExprPtr make_op(OpCode op, std::vector<ExprPtr> args, std::vector<std::int64_t> imms,
                SourcePos pos) {
  return std::make_shared<const Expr>(Expr{OpExpr{op, std::move(args), std::move(imms)}, pos});
}

CmdPtr make_skip() { return std::make_shared<const Cmd>(Cmd{SkipCmd{}, {}}); }

CmdPtr make_assign(std::string var, ExprPtr e, int id, SourcePos pos) {
  return std::make_shared<const Cmd>(Cmd{AssignCmd{std::move(var), std::move(e), id}, pos});
}

CmdPtr make_seq(std::vector<CmdPtr> body) {
  return std::make_shared<const Cmd>(Cmd{SeqCmd{std::move(body)}, {}});
}

CmdPtr make_if(ExprPtr guard, CmdPtr then_branch, CmdPtr else_branch, SourcePos pos) {
  return std::make_shared<const Cmd>(
      Cmd{IfCmd{std::move(guard), std::move(then_branch), std::move(else_branch)}, pos});
}

static void collect_assignments(const Cmd& c, std::vector<const AssignCmd*>& out) {
  if (auto* a = std::get_if<AssignCmd>(&c.node)) {
    out.push_back(a);
  } else if (auto* s = std::get_if<SeqCmd>(&c.node)) {
    for (const auto& sub : s->body) collect_assignments(*sub, out);
  } else if (auto* i = std::get_if<IfCmd>(&c.node)) {
    collect_assignments(*i->then_branch, out);
    collect_assignments(*i->else_branch, out);
  }
}

std::vector<const AssignCmd*> assignments(const Cmd& c) {
  std::vector<const AssignCmd*> out;
  collect_assignments(c, out);
  return out;
}

bool has_if(const Cmd& c) {
  if (std::holds_alternative<IfCmd>(c.node)) return true;
  if (auto* s = std::get_if<SeqCmd>(&c.node)) {
    for (const auto& sub : s->body)
      if (has_if(*sub)) return true;
  }
  return false;
}

std::size_t statement_count(const Cmd& c) {
  if (std::holds_alternative<AssignCmd>(c.node)) return 1;
  if (auto* s = std::get_if<SeqCmd>(&c.node)) {
    std::size_t n = 0;
    for (const auto& sub : s->body) n += statement_count(*sub);
    return n;
  }
  if (auto* i = std::get_if<IfCmd>(&c.node))
    return 1 + statement_count(*i->then_branch) + statement_count(*i->else_branch);
  return 0;
}

void free_vars(const Expr& e, std::vector<std::string>& out) {
  if (auto* v = std::get_if<VarRef>(&e.node)) {
    out.push_back(v->name);
  } else if (auto* o = std::get_if<OpExpr>(&e.node)) {
    for (const auto& a : o->args) free_vars(*a, out);
  }
}

// ---------------------------------------------------------------------------

static bool same_ptr(const SExprPtr& a, const SExprPtr& b) {
  if (!a || !b) return !a && !b;
  return same_expr(*a, *b);
}

bool same_expr(const SExpr& a, const SExpr& b) {
  if (a.node.index() != b.node.index()) return false;
  return std::visit(
      [&](const auto& x) -> bool {
        using T = std::decay_t<decltype(x)>;
        const auto& y = std::get<T>(b.node);
        if constexpr (std::is_same_v<T, SInt>) return x.value == y.value;
        else if constexpr (std::is_same_v<T, SName>) return x.name == y.name;
        else if constexpr (std::is_same_v<T, SIndex>)
          return same_ptr(x.base, y.base) && same_ptr(x.index, y.index);
        else if constexpr (std::is_same_v<T, SCall>) {
          if (x.callee != y.callee || x.args.size() != y.args.size()) return false;
          for (std::size_t i = 0; i < x.args.size(); ++i)
            if (!same_ptr(x.args[i], y.args[i])) return false;
          return true;
        } else if constexpr (std::is_same_v<T, SBinary>)
          return x.op == y.op && same_ptr(x.lhs, y.lhs) && same_ptr(x.rhs, y.rhs);
        else if constexpr (std::is_same_v<T, SUnary>)
          return x.op == y.op && same_ptr(x.operand, y.operand);
        else if constexpr (std::is_same_v<T, STrue>) return true;
        else
          return x.keyword == y.keyword && x.list_form == y.list_form && x.values == y.values &&
                 x.shape == y.shape;
      },
      a.node);
}

static bool same_block(const SBlock& a, const SBlock& b);

static bool same_stmt(const SStmt& a, const SStmt& b) {
  if (a.node.index() != b.node.index()) return false;
  return std::visit(
      [&](const auto& x) -> bool {
        using T = std::decay_t<decltype(x)>;
        const auto& y = std::get<T>(b.node);
        if constexpr (std::is_same_v<T, SAssign>)
          return same_ptr(x.target, y.target) && same_ptr(x.value, y.value);
        else if constexpr (std::is_same_v<T, SWhile>)
          return same_ptr(x.cond, y.cond) && same_block(x.body, y.body);
        else if constexpr (std::is_same_v<T, SIf>)
          return same_ptr(x.cond, y.cond) && x.has_else == y.has_else &&
                 same_block(x.then_body, y.then_body) && same_block(x.else_body, y.else_body);
        else
          return true;
      },
      a.node);
}

static bool same_block(const SBlock& a, const SBlock& b) {
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i)
    if (!same_stmt(*a[i], *b[i])) return false;
  return true;
}

bool same_program(const SurfaceProgram& a, const SurfaceProgram& b) {
  return same_block(a.body, b.body);
}

bool same_expr(const Expr& a, const Expr& b) {
  if (a.node.index() != b.node.index()) return false;
  if (auto* v = std::get_if<VarRef>(&a.node)) return v->name == std::get<VarRef>(b.node).name;
  if (auto* c = std::get_if<ConstLit>(&a.node)) {
    const auto& d = std::get<ConstLit>(b.node);
    return c->sort == d.sort && c->values == d.values && c->broadcast == d.broadcast;
  }
  const auto& x = std::get<OpExpr>(a.node);
  const auto& y = std::get<OpExpr>(b.node);
  if (x.op != y.op || x.imms != y.imms || x.args.size() != y.args.size()) return false;
  for (std::size_t i = 0; i < x.args.size(); ++i)
    if (!same_expr(*x.args[i], *y.args[i])) return false;
  return true;
}

}  // namespace ila
