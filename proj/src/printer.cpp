#include "ila/printer.hpp"

#include <sstream>

namespace ila {

namespace {

std::string join(const std::vector<std::int64_t>& v) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) s += ", ";
    s += std::to_string(v[i]);
  }
  return s;
}

std::string print_init(const SInit& init) {
  std::string s = init.keyword;
  if (!init.list_form) return s + "(" + join(init.values) + ")";
  if (init.shape.size() == 2) {
    s += "[";
    for (std::size_t r = 0; r < init.shape[0]; ++r) {
      if (r) s += ", ";
      std::vector<std::int64_t> row(init.values.begin() + static_cast<long>(r * init.shape[1]),
                                    init.values.begin() + static_cast<long>((r + 1) * init.shape[1]));
      s += "[" + join(row) + "]";
    }
    return s + "]";
  }
  return s + "[" + join(init.values) + "]";
}

std::string child(const SExprPtr& e) {
  std::string s = print(*e);
  if (std::holds_alternative<SBinary>(e->node)) return "(" + s + ")";
  return s;
}

void print_block(std::ostringstream& os, const SBlock& b, int indent);

void print_stmt(std::ostringstream& os, const SStmt& st, int indent) {
  std::string pad(static_cast<std::size_t>(indent) * 2, ' ');
  std::visit(
      [&](const auto& s) {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, SAssign>) {
          os << pad << print(*s.target) << " := " << print(*s.value) << "\n";
        } else if constexpr (std::is_same_v<T, SWhile>) {
          os << pad << "while " << print(*s.cond) << " {\n";
          print_block(os, s.body, indent + 1);
          os << pad << "}\n";
        } else if constexpr (std::is_same_v<T, SIf>) {
          os << pad << "if " << print(*s.cond) << " {\n";
          print_block(os, s.then_body, indent + 1);
          if (s.has_else) {
            os << pad << "} else {\n";
            print_block(os, s.else_body, indent + 1);
          }
          os << pad << "}\n";
        } else {
          os << pad << "skip\n";
        }
      },
      st.node);
}

void print_block(std::ostringstream& os, const SBlock& b, int indent) {
  for (const auto& st : b) print_stmt(os, *st, indent);
}

bool infix(const Expr& e) {
  auto* o = std::get_if<OpExpr>(&e.node);
  return o && op_info(o->op).infix;
}

std::string core_child(const ExprPtr& e) {
  std::string s = print(*e);
  return infix(*e) ? "(" + s + ")" : s;
}

std::string print_const(const ConstLit& c) {
  if (c.sort == Sort::Msg) {
    if (c.broadcast) return std::to_string(c.values.at(0));
    return "msg_vec[" + join(c.values) + "]";
  }
  return "plain_init(" + std::to_string(c.values.at(0)) + ")";
}

std::string suffix(CipherKind k) {
  switch (k) {
    case CipherKind::Lwe: return "";
    case CipherKind::Rlwe: return "_rlwe";
    case CipherKind::Rgsw: return "_rgsw";
  }
  return "";
}

}  // namespace

std::string print(const SExpr& e) {
  return std::visit(
      [&](const auto& x) -> std::string {
        using T = std::decay_t<decltype(x)>;
        if constexpr (std::is_same_v<T, SInt>) return std::to_string(x.value);
        else if constexpr (std::is_same_v<T, SName>) return x.name;
        else if constexpr (std::is_same_v<T, SIndex>) return child(x.base) + "[" + print(*x.index) + "]";
        else if constexpr (std::is_same_v<T, SCall>) {
          std::string s = x.callee + "(";
          for (std::size_t i = 0; i < x.args.size(); ++i) {
            if (i) s += ", ";
            s += print(*x.args[i]);
          }
          return s + ")";
        } else if constexpr (std::is_same_v<T, SBinary>)
          return child(x.lhs) + " " + x.op + " " + child(x.rhs);
        else if constexpr (std::is_same_v<T, SUnary>) {
          if (std::holds_alternative<SInt>(x.operand->node)) return x.op + "(" + print(*x.operand) + ")";
          return x.op + child(x.operand);
        } else if constexpr (std::is_same_v<T, STrue>)
          return "true";
        else
          return print_init(x);
      },
      e.node);
}

std::string print(const SurfaceProgram& p) {
  std::ostringstream os;
  print_block(os, p.body, 0);
  return os.str();
}

std::string print(const Expr& e) {
  if (auto* v = std::get_if<VarRef>(&e.node)) return v->name;
  if (auto* c = std::get_if<ConstLit>(&e.node)) return print_const(*c);
  const auto& o = std::get<OpExpr>(e.node);
  const OpInfo& info = op_info(o.op);
  if (o.op == OpCode::True) return "true";
  if (o.op == OpCode::MsgNeg) return "-(" + print(*o.args.at(0)) + ")";
  if (info.infix)
    return core_child(o.args.at(0)) + " " + std::string(info.name) + " " + core_child(o.args.at(1));
  std::string s = std::string(info.name) + "(";
  for (std::size_t i = 0; i < o.args.size(); ++i) {
    if (i) s += ", ";
    s += print(*o.args[i]);
  }
  for (auto n : o.imms) s += ", " + std::to_string(n);
  return s + ")";
}

std::string print_cmd(const Cmd& c, int indent) {
  std::string pad(static_cast<std::size_t>(indent) * 2, ' ');
  return std::visit(
      [&](const auto& x) -> std::string {
        using T = std::decay_t<decltype(x)>;
        if constexpr (std::is_same_v<T, SkipCmd>) return pad + "skip\n";
        else if constexpr (std::is_same_v<T, AssignCmd>) return pad + x.var + " := " + print(*x.expr) + "\n";
        else if constexpr (std::is_same_v<T, SeqCmd>) {
          std::string s;
          for (const auto& sub : x.body) s += print_cmd(*sub, indent);
          return s;
        } else {
          std::string s = pad + "if " + print(*x.guard) + " {\n";
          s += print_cmd(*x.then_branch, indent + 1);
          s += pad + "} else {\n";
          s += print_cmd(*x.else_branch, indent + 1);
          return s + pad + "}\n";
        }
      },
      c.node);
}

std::string print(const CoreProgram& p) {
  std::string s;
  for (const auto& in : p.inputs) {
    if (in.sort == Sort::Msg) {
      s += in.name + " := msg_input(" + std::to_string(in.value.value_or(in.lo)) + ")\n";
    } else if (in.value && in.lo == *in.value && in.hi == *in.value) {
      s += in.name + " := cipher_init" + suffix(in.kind) + "(" + std::to_string(*in.value) + ")\n";
    } else {
      s += in.name + " := cipher_input" + suffix(in.kind) + "(" + std::to_string(in.lo) + ", " +
           std::to_string(in.hi) + ")\n";
    }
  }
  if (p.body) s += print_cmd(*p.body);
  return s;
}

}  // namespace ila
