#pragma once

// Surface and core syntax trees.
//
// Surface programs have loops, vectors and matrices. Core programs are
// loop-free: `lower` unrolls loops and turns every vector element into its
// own scalar variable.

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace ila {

enum class Sort { Msg, Plain, Cipher };
std::string_view sort_name(Sort s);

// TFHE ciphertext kind. BGV/BFV ciphertexts only ever use Lwe, which their
// models ignore.
enum class CipherKind { Lwe = 0, Rlwe = 1, Rgsw = 2 };
std::string_view kind_name(CipherKind k);

struct SourcePos {
  int line = 0;
  int col = 0;
};

enum class OpCode {
  Add,        // (+)
  Mul,        // (*)
  ModSwitch,  // modswitch(x)
  Scale,      // scale(x, n)
  ExtProd,    // RGSW x (LWE|RLWE) external product
  IntProd,    // RGSW x RGSW internal product
  Pbs,        // pbs(lut, x)
  Cmux,       // cmux(b, x0, x1)
  True,
  MsgAdd,
  MsgSub,
  MsgMul,
  MsgNeg,
  MsgLt,
  MsgLe,
  MsgGt,
  MsgGe,
  MsgEq,
  MsgNe,
};

struct OpInfo {
  OpCode code;
  std::string_view name;  // surface spelling
  int arity;
  int imms;  // trailing integer immediates (scale's n)
  bool infix;
};

const OpInfo& op_info(OpCode op);
std::optional<OpCode> call_op(std::string_view name);  // named (call-syntax) ops
bool is_message_op(OpCode op);
bool is_multiplicative(OpCode op);  // ops that feed multiplicative depth

// ---------------------------------------------------------------------------
// Core language

struct Expr;
using ExprPtr = std::shared_ptr<const Expr>;

struct VarRef {
  std::string name;
};

// A literal; the scheme model encodes it into a message or plaintext.
struct ConstLit {
  Sort sort = Sort::Msg;  // Msg or Plain
  std::vector<std::int64_t> values;
  // Msg: broadcast values[0] to every slot unless a msg_vec literal.
  // Plain: the constant polynomial values[0].
  bool broadcast = true;
};

struct OpExpr {
  OpCode op;
  std::vector<ExprPtr> args;
  std::vector<std::int64_t> imms;
};

struct Expr {
  std::variant<VarRef, ConstLit, OpExpr> node;
  SourcePos pos;
};

ExprPtr make_var(std::string name, SourcePos pos = {});
ExprPtr make_const(ConstLit lit, SourcePos pos = {});
ExprPtr make_msg(std::int64_t v, SourcePos pos = {});
ExprPtr make_plain(std::int64_t v, SourcePos pos = {});
ExprPtr make_op(OpCode op, std::vector<ExprPtr> args, std::vector<std::int64_t> imms = {},
                SourcePos pos = {});

struct Cmd;
using CmdPtr = std::shared_ptr<const Cmd>;

struct SkipCmd {};
struct AssignCmd {
  std::string var;
  ExprPtr expr;
  int id = -1;  // statement id, unique within a program
};
struct SeqCmd {
  std::vector<CmdPtr> body;
};
struct IfCmd {
  ExprPtr guard;
  CmdPtr then_branch;
  CmdPtr else_branch;
};

struct Cmd {
  std::variant<SkipCmd, AssignCmd, SeqCmd, IfCmd> node;
  SourcePos pos;
};

CmdPtr make_skip();
CmdPtr make_assign(std::string var, ExprPtr e, int id, SourcePos pos = {});
CmdPtr make_seq(std::vector<CmdPtr> body);
CmdPtr make_if(ExprPtr guard, CmdPtr then_branch, CmdPtr else_branch, SourcePos pos = {});

// Inputs of a program: ciphertexts (never literals in code) and message
// inputs whose values are unknown to the compiler.
struct InputDecl {
  std::string name;
  Sort sort = Sort::Cipher;
  CipherKind kind = CipherKind::Lwe;
  std::int64_t lo = 0;  // value range used for the static type
  std::int64_t hi = 0;
  std::optional<std::int64_t> value;  // known value for runs, if any
  SourcePos pos;
};

struct CoreProgram {
  std::vector<InputDecl> inputs;
  CmdPtr body;
};

// Program-order list of assignments (descends into both if branches).
std::vector<const AssignCmd*> assignments(const Cmd& c);
bool has_if(const Cmd& c);
std::size_t statement_count(const Cmd& c);
void free_vars(const Expr& e, std::vector<std::string>& out);

// ---------------------------------------------------------------------------
// Surface language

struct SExpr;
using SExprPtr = std::shared_ptr<const SExpr>;

struct SInt {
  std::int64_t value;
};
struct SName {
  std::string name;
};
struct SIndex {
  SExprPtr base;
  SExprPtr index;
};
struct SCall {
  std::string callee;  // a named operator
  std::vector<SExprPtr> args;
};
struct SBinary {
  std::string op;  // "(+)", "(*)", "+", "-", "*", "<", "<=", ">", ">=", "==", "!="
  SExprPtr lhs;
  SExprPtr rhs;
};
struct SUnary {
  std::string op;  // "-"
  SExprPtr operand;
};
struct STrue {};

// cipher_init[...], cipher_init(v), cipher_input(lo, hi), plain_init[...],
// plain_init(v), msg_vec[...], msg_input(v), with optional
// _rlwe/_rgsw suffixes on the cipher forms.
struct SInit {
  std::string keyword;
  bool list_form = false;
  std::vector<std::int64_t> values;  // flattened row-major when a matrix
  std::vector<std::size_t> shape;    // {n} or {rows, cols}; empty for call form
};

struct SExpr {
  std::variant<SInt, SName, SIndex, SCall, SBinary, SUnary, STrue, SInit> node;
  SourcePos pos;
};

struct SStmt;
using SStmtPtr = std::shared_ptr<const SStmt>;
using SBlock = std::vector<SStmtPtr>;

struct SAssign {
  SExprPtr target;  // SName or SIndex chain
  SExprPtr value;
};
struct SWhile {
  SExprPtr cond;
  SBlock body;
};
struct SIf {
  SExprPtr cond;
  SBlock then_body;
  SBlock else_body;
  bool has_else = false;
};
struct SSkip {};

struct SStmt {
  std::variant<SAssign, SWhile, SIf, SSkip> node;
  SourcePos pos;
};

struct SurfaceProgram {
  SBlock body;
};

// Structural equality, ignoring source positions.
bool same_expr(const SExpr& a, const SExpr& b);
bool same_program(const SurfaceProgram& a, const SurfaceProgram& b);
bool same_expr(const Expr& a, const Expr& b);

}  // namespace ila
