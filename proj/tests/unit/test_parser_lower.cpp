#include <gtest/gtest.h>

#include <fstream>
#include <sstream>

#include "helpers.hpp"
#include "ila/printer.hpp"
#include "ila/ssa.hpp"

using namespace ila;

namespace {

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::vector<std::string> assigned(const CoreProgram& p) {
  std::vector<std::string> out;
  for (const auto* a : assignments(*p.body)) out.push_back(a->var);
  return out;
}

}  // namespace

TEST(Parser, SingleAssignment) {
  auto p = parse("x := a (+) b");
  ASSERT_EQ(p.body.size(), 1u);
  const auto& a = std::get<SAssign>(p.body[0]->node);
  EXPECT_EQ(std::get<SName>(a.target->node).name, "x");
  const auto& b = std::get<SBinary>(a.value->node);
  EXPECT_EQ(b.op, "(+)");
  EXPECT_EQ(std::get<SName>(b.lhs->node).name, "a");
  EXPECT_EQ(std::get<SName>(b.rhs->node).name, "b");
}

TEST(Parser, MissingRightHandSideIsAnError) {
  try {
    parse("x := ");
    FAIL() << "expected a parse error";
  } catch (const ParseError& e) {
    EXPECT_EQ(e.pos().line, 1);
    EXPECT_GE(e.pos().col, 5);
  }
}

TEST(Parser, UnknownCharacter) { EXPECT_THROW(parse("x := a $ b"), ParseError); }

TEST(Parser, PsiShape) {
  auto p = parse(slurp(test::source_path("circuits/psi.ila")));
  int inits = 0, whiles = 0;
  for (const auto& s : p.body) {
    if (auto* a = std::get_if<SAssign>(&s->node))
      if (auto* i = std::get_if<SInit>(&a->value->node))
        if (i->keyword == "cipher_init" && i->list_form) ++inits;
    if (auto* w = std::get_if<SWhile>(&s->node)) {
      ++whiles;
      bool inner = false;
      for (const auto& b : w->body) inner = inner || std::holds_alternative<SWhile>(b->node);
      EXPECT_TRUE(inner);
    }
  }
  EXPECT_EQ(inits, 3);
  EXPECT_EQ(whiles, 1);
}

TEST(Parser, PrintParseRoundTrip) {
  for (const char* name : {"psi.ila", "psi_4.ila", "pow16.ila", "psi_disjoint.ila"}) {
    auto p = parse(slurp(test::source_path(std::string("circuits/") + name)));
    auto again = parse(print(p));
    EXPECT_TRUE(same_program(p, again)) << name;
  }
}

TEST(Lower, TwoIterationUnroll) {
  auto p = test::core(
      "c := cipher_input(0, 1)\n"
      "i := 0\n"
      "while i < 2 {\n"
      "  c := c (+) c\n"
      "  i := i + 1\n"
      "}\n");
  // loop counters stay in the core program as message assignments
  auto names = assigned(p);
  EXPECT_EQ(std::count(names.begin(), names.end(), "c"), 2);
  EXPECT_EQ(std::count(names.begin(), names.end(), "i"), 3);
  ASSERT_EQ(p.inputs.size(), 1u);
  EXPECT_EQ(p.inputs[0].name, "c");
}

TEST(Lower, PsiHasFourInnerCopies) {
  auto p = test::core(slurp(test::source_path("circuits/psi.ila")));
  auto names = assigned(p);
  EXPECT_EQ(std::count(names.begin(), names.end(), "t6"), 4);
  EXPECT_EQ(std::count(names.begin(), names.end(), "t4"), 2);
  // A, B, R (two elements each) and result
  EXPECT_EQ(p.inputs.size(), 7u);
  EXPECT_EQ(element_name("A", 1), "A_1");
}

TEST(Lower, InputLoopBoundIsRejected) {
  try {
    test::core(
        "n := msg_input(3)\n"
        "c := cipher_input(0, 1)\n"
        "i := 0\n"
        "while i < n {\n"
        "  c := c (+) c\n"
        "  i := i + 1\n"
        "}\n");
    FAIL() << "expected a lowering error";
  } catch (const LowerError& e) {
    EXPECT_NE(std::string(e.what()).find("non-constant"), std::string::npos) << e.what();
    EXPECT_EQ(e.pos().line, 4);
  }
}

TEST(Lower, IndexOutOfBounds) {
  EXPECT_THROW(test::core("A := cipher_init[1, 2]\nx := A[2]\n"), LowerError);
}

TEST(Lower, UnrollBudget) {
  auto prog = parse("c := cipher_input(0, 1)\ni := 0\nwhile i < 100 {\n  c := c (+) c\n  i := i + 1\n}\n");
  EXPECT_THROW(lower(prog, LowerOptions{50}), LowerError);
  EXPECT_NO_THROW(lower(prog, LowerOptions{1000}));
}

TEST(Lower, CoreProgramPrintsAsSurfaceText) {
  auto p = test::core(slurp(test::source_path("circuits/psi.ila")));
  auto again = test::core(print(p));
  auto a = assignments(*p.body), b = assignments(*again.body);
  ASSERT_EQ(a.size(), b.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    EXPECT_EQ(a[i]->var, b[i]->var);
    EXPECT_TRUE(same_expr(*a[i]->expr, *b[i]->expr)) << a[i]->var;
  }
  EXPECT_EQ(again.inputs.size(), p.inputs.size());
}

TEST(Ssa, RenamesRepeatedDefinitions) {
  CoreProgram p;
  p.inputs.push_back(InputDecl{"a", Sort::Cipher, CipherKind::Lwe, 0, 1, std::nullopt, {}});
  p.body = make_seq({make_assign("x", make_op(OpCode::Mul, {make_var("a"), make_var("a")}), 0),
                     make_assign("x", make_op(OpCode::Mul, {make_var("x"), make_var("x")}), 1)});
  auto s = to_ssa(p);
  ASSERT_EQ(s.defs.size(), 2u);
  EXPECT_EQ(s.defs[0].var, "x1");
  EXPECT_EQ(s.defs[1].var, "x2");
  EXPECT_TRUE(same_expr(*s.defs[1].expr, *make_op(OpCode::Mul, {make_var("x1"), make_var("x1")})));
  EXPECT_EQ(s.final_names.at("x"), "x2");
  EXPECT_EQ(s.root, "x2");

  auto back = from_ssa(s, true);
  auto names = assigned(back);
  EXPECT_EQ(names.back(), "x");
}

TEST(Ssa, PowerChainHasFourDefinitions) {
  auto s = to_ssa(test::core(slurp(test::source_path("circuits/pow16.ila"))));
  ASSERT_EQ(s.defs.size(), 4u);
  EXPECT_EQ(s.defs.front().var, "c2");
  EXPECT_EQ(s.defs.back().var, "c5");
}

TEST(Ssa, AlreadySsaIsUnchanged) {
  auto p = test::core("a := cipher_input(0, 1)\nb := a (+) a\nc := b (*) a\n");
  auto s = to_ssa(p);
  auto back = from_ssa(s);
  auto x = assignments(*p.body), y = assignments(*back.body);
  ASSERT_EQ(x.size(), y.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    EXPECT_EQ(x[i]->var, y[i]->var);
    EXPECT_TRUE(same_expr(*x[i]->expr, *y[i]->expr));
  }
}

TEST(Ssa, UseBeforeDefinition) {
  CoreProgram p;
  p.body = make_seq({make_assign("x", make_var("y"), 0)});
  EXPECT_THROW(to_ssa(p), SsaError);
}

TEST(Ast, StatementCountIncludesBothBranches) {
  auto c = make_seq({make_assign("a", make_msg(1), 0),
                     make_if(make_op(OpCode::True, {}), make_assign("b", make_msg(1), 1),
                             make_assign("b", make_msg(2), 2))});
  EXPECT_EQ(statement_count(*c), 4u);
  EXPECT_EQ(assignments(*c).size(), 3u);
  EXPECT_TRUE(has_if(*c));
}
