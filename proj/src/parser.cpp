#include "ila/parser.hpp"

#include <array>
#include <cctype>
#include <charconv>
#include <optional>

namespace ila {

namespace {

constexpr std::array<std::string_view, 9> kInitKeywords = {
    "cipher_init",       "cipher_init_rlwe",  "cipher_init_rgsw", "cipher_input", "cipher_input_rlwe",
    "cipher_input_rgsw", "plain_init",        "msg_vec",          "msg_input"};

enum class Tok {
  Ident,
  Int,
  Assign,  // :=
  OPlus,   // (+)
  OTimes,  // (*)
  LParen,
  RParen,
  LBracket,
  RBracket,
  LBrace,
  RBrace,
  Comma,
  Plus,
  Minus,
  Star,
  Lt,
  Le,
  Gt,
  Ge,
  EqEq,
  Ne,
  Newline,
  End,
};

struct Token {
  Tok kind;
  std::string text;
  SourcePos pos;
};

std::string_view tok_name(Tok t) {
  switch (t) {
    case Tok::Ident: return "identifier";
    case Tok::Int: return "integer";
    case Tok::Assign: return "':='";
    case Tok::OPlus: return "'(+)'";
    case Tok::OTimes: return "'(*)'";
    case Tok::LParen: return "'('";
    case Tok::RParen: return "')'";
    case Tok::LBracket: return "'['";
    case Tok::RBracket: return "']'";
    case Tok::LBrace: return "'{'";
    case Tok::RBrace: return "'}'";
    case Tok::Comma: return "','";
    case Tok::Plus: return "'+'";
    case Tok::Minus: return "'-'";
    case Tok::Star: return "'*'";
    case Tok::Lt: return "'<'";
    case Tok::Le: return "'<='";
    case Tok::Gt: return "'>'";
    case Tok::Ge: return "'>='";
    case Tok::EqEq: return "'=='";
    case Tok::Ne: return "'!='";
    case Tok::Newline: return "end of line";
    case Tok::End: return "end of input";
  }
  return "?";
}

std::vector<Token> lex(std::string_view src) {
  std::vector<Token> out;
  int line = 1, col = 1;
  std::size_t i = 0;
  auto emit = [&](Tok k, std::string text, SourcePos pos) { out.push_back({k, std::move(text), pos}); };
  while (i < src.size()) {
    char c = src[i];
    SourcePos pos{line, col};
    if (c == '\n') {
      emit(Tok::Newline, "\n", pos);
      ++i;
      ++line;
      col = 1;
      continue;
    }
    if (c == ' ' || c == '\t' || c == '\r') {
      ++i;
      ++col;
      continue;
    }
    if (c == '#') {
      while (i < src.size() && src[i] != '\n') ++i;
      continue;
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t j = i;
      while (j < src.size() && (std::isalnum(static_cast<unsigned char>(src[j])) || src[j] == '_')) ++j;
      emit(Tok::Ident, std::string(src.substr(i, j - i)), pos);
      col += static_cast<int>(j - i);
      i = j;
      continue;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::size_t j = i;
      while (j < src.size() && std::isdigit(static_cast<unsigned char>(src[j]))) ++j;
      emit(Tok::Int, std::string(src.substr(i, j - i)), pos);
      col += static_cast<int>(j - i);
      i = j;
      continue;
    }
    auto starts = [&](std::string_view s) { return src.substr(i, s.size()) == s; };
    struct Fixed {
      std::string_view text;
      Tok kind;
    };
    static constexpr Fixed fixed[] = {
        {"(+)", Tok::OPlus}, {"(*)", Tok::OTimes}, {":=", Tok::Assign}, {"<=", Tok::Le},
        {">=", Tok::Ge},     {"==", Tok::EqEq},    {"!=", Tok::Ne},     {"(", Tok::LParen},
        {")", Tok::RParen},  {"[", Tok::LBracket}, {"]", Tok::RBracket}, {"{", Tok::LBrace},
        {"}", Tok::RBrace},  {",", Tok::Comma},    {"+", Tok::Plus},    {"-", Tok::Minus},
        {"*", Tok::Star},    {"<", Tok::Lt},       {">", Tok::Gt},
    };
    bool matched = false;
    for (const auto& f : fixed) {
      if (starts(f.text)) {
        emit(f.kind, std::string(f.text), pos);
        i += f.text.size();
        col += static_cast<int>(f.text.size());
        matched = true;
        break;
      }
    }
    if (!matched) throw ParseError(pos, std::string("unexpected character '") + c + "'");
  }
  // Synthetic terminator; empty text marks it as end of input in messages.
  out.push_back({Tok::Newline, "", {line, col}});
  out.push_back({Tok::End, "", {line, col}});
  return out;
}

std::string describe(const Token& t) {
  if (t.kind == Tok::Ident || t.kind == Tok::Int) return "'" + t.text + "'";
  if (t.kind == Tok::Newline && t.text.empty()) return "end of input";
  return std::string(tok_name(t.kind));
}

class Parser {
 public:
  explicit Parser(std::vector<Token> toks) : toks_(std::move(toks)) {}

  SurfaceProgram program() {
    SurfaceProgram p;
    p.body = block(/*nested=*/false);
    if (peek().kind != Tok::End) fail(peek(), "unexpected " + describe(peek()));
    return p;
  }

 private:
  std::vector<Token> toks_;
  std::size_t at_ = 0;

  const Token& peek(std::size_t k = 0) const { return toks_[std::min(at_ + k, toks_.size() - 1)]; }
  const Token& next() { return toks_[at_ < toks_.size() - 1 ? at_++ : at_]; }
  bool accept(Tok k) {
    if (peek().kind == k) {
      next();
      return true;
    }
    return false;
  }
  [[noreturn]] void fail(const Token& t, const std::string& msg) {
    throw ParseError(t.pos, msg);
  }
  const Token& expect(Tok k, std::string_view context) {
    if (peek().kind != k) {
      fail(peek(), "expected " + std::string(tok_name(k)) + " " + std::string(context) +
                       ", found " + describe(peek()));
    }
    return next();
  }
  bool at_word(std::string_view w) const { return peek().kind == Tok::Ident && peek().text == w; }

  void skip_newlines() {
    while (accept(Tok::Newline)) {
    }
  }

  SBlock block(bool nested) {
    SBlock out;
    for (;;) {
      skip_newlines();
      if (peek().kind == Tok::End) {
        if (nested) fail(peek(), "expected '}' before end of input");
        return out;
      }
      if (peek().kind == Tok::RBrace) {
        if (!nested) fail(peek(), "unmatched '}'");
        return out;
      }
      out.push_back(statement());
    }
  }

  void end_of_statement() {
    if (peek().kind == Tok::End) return;
    if (peek().kind == Tok::RBrace) return;
    expect(Tok::Newline, "after statement");
  }

  SStmtPtr statement() {
    SourcePos pos = peek().pos;
    if (at_word("while")) {
      next();
      SWhile w;
      w.cond = expr();
      expect(Tok::LBrace, "after loop condition");
      w.body = block(true);
      expect(Tok::RBrace, "to close loop");
      end_of_statement();
      return std::make_shared<const SStmt>(SStmt{std::move(w), pos});
    }
    if (at_word("if")) {
      next();
      SIf s;
      s.cond = expr();
      expect(Tok::LBrace, "after if condition");
      s.then_body = block(true);
      expect(Tok::RBrace, "to close if");
      if (at_word("else")) {
        next();
        s.has_else = true;
        expect(Tok::LBrace, "after else");
        s.else_body = block(true);
        expect(Tok::RBrace, "to close else");
      }
      end_of_statement();
      return std::make_shared<const SStmt>(SStmt{std::move(s), pos});
    }
    if (at_word("skip")) {
      next();
      end_of_statement();
      return std::make_shared<const SStmt>(SStmt{SSkip{}, pos});
    }
    if (peek().kind != Tok::Ident) fail(peek(), "expected a statement");
    SExprPtr target = assign_target();
    expect(Tok::Assign, "in assignment");
    SExprPtr value = expr();
    end_of_statement();
    return std::make_shared<const SStmt>(SStmt{SAssign{target, value}, pos});
  }

  SExprPtr assign_target() {
    const Token& name = expect(Tok::Ident, "as assignment target");
    check_not_reserved(name);
    SExprPtr e = std::make_shared<const SExpr>(SExpr{SName{name.text}, name.pos});
    while (peek().kind == Tok::LBracket) {
      SourcePos p = next().pos;
      SExprPtr idx = expr();
      expect(Tok::RBracket, "after index");
      e = std::make_shared<const SExpr>(SExpr{SIndex{e, idx}, p});
    }
    return e;
  }

  void check_not_reserved(const Token& t) {
    static constexpr std::string_view reserved[] = {"while", "if", "else", "skip", "true"};
    for (auto r : reserved)
      if (t.text == r) fail(t, "'" + t.text + "' is a keyword");
    if (is_init_keyword(t.text) || call_op(t.text))
      fail(t, "'" + t.text + "' is reserved");
  }

  SExprPtr expr() {
    SExprPtr lhs = sum();
    static constexpr std::pair<Tok, std::string_view> cmps[] = {
        {Tok::Lt, "<"}, {Tok::Le, "<="}, {Tok::Gt, ">"}, {Tok::Ge, ">="}, {Tok::EqEq, "=="}, {Tok::Ne, "!="}};
    for (auto [k, s] : cmps) {
      if (peek().kind == k) {
        SourcePos pos = next().pos;
        SExprPtr rhs = sum();
        return std::make_shared<const SExpr>(SExpr{SBinary{std::string(s), lhs, rhs}, pos});
      }
    }
    return lhs;
  }

  SExprPtr sum() {
    SExprPtr lhs = term();
    for (;;) {
      std::string op;
      if (peek().kind == Tok::Plus) op = "+";
      else if (peek().kind == Tok::Minus) op = "-";
      else if (peek().kind == Tok::OPlus) op = "(+)";
      else return lhs;
      SourcePos pos = next().pos;
      SExprPtr rhs = term();
      lhs = std::make_shared<const SExpr>(SExpr{SBinary{op, lhs, rhs}, pos});
    }
  }

  SExprPtr term() {
    SExprPtr lhs = unary();
    for (;;) {
      std::string op;
      if (peek().kind == Tok::Star) op = "*";
      else if (peek().kind == Tok::OTimes) op = "(*)";
      else return lhs;
      SourcePos pos = next().pos;
      SExprPtr rhs = unary();
      lhs = std::make_shared<const SExpr>(SExpr{SBinary{op, lhs, rhs}, pos});
    }
  }

  SExprPtr unary() {
    if (peek().kind == Tok::Minus) {
      SourcePos pos = next().pos;
      if (peek().kind == Tok::Int) {
        const Token& t = next();
        return std::make_shared<const SExpr>(SExpr{SInt{-to_int(t)}, pos});
      }
      SExprPtr operand = unary();
      return std::make_shared<const SExpr>(SExpr{SUnary{"-", operand}, pos});
    }
    return postfix();
  }

  SExprPtr postfix() {
    SExprPtr e = primary();
    while (peek().kind == Tok::LBracket) {
      SourcePos pos = next().pos;
      SExprPtr idx = expr();
      expect(Tok::RBracket, "after index");
      e = std::make_shared<const SExpr>(SExpr{SIndex{e, idx}, pos});
    }
    return e;
  }

  std::int64_t to_int(const Token& t) {
    std::int64_t v = 0;
    auto [p, ec] = std::from_chars(t.text.data(), t.text.data() + t.text.size(), v);
    if (ec != std::errc()) fail(t, "integer literal out of range");
    return v;
  }

  std::int64_t signed_int(std::string_view context) {
    bool neg = accept(Tok::Minus);
    const Token& t = expect(Tok::Int, context);
    std::int64_t v = to_int(t);
    return neg ? -v : v;
  }

  SExprPtr primary() {
    const Token& t = peek();
    if (t.kind == Tok::Int) {
      next();
      return std::make_shared<const SExpr>(SExpr{SInt{to_int(t)}, t.pos});
    }
    if (t.kind == Tok::LParen) {
      next();
      SExprPtr e = expr();
      expect(Tok::RParen, "to close parenthesis");
      return e;
    }
    if (t.kind != Tok::Ident) fail(t, "expected an expression, found " + describe(t));
    Token name = next();
    if (name.text == "true") return std::make_shared<const SExpr>(SExpr{STrue{}, name.pos});
    if (is_init_keyword(name.text)) return initializer(name);
    if (peek().kind == Tok::LParen) {
      if (!call_op(name.text)) fail(name, "unknown operator '" + name.text + "'");
      next();
      SCall call{name.text, {}};
      if (peek().kind != Tok::RParen) {
        call.args.push_back(expr());
        while (accept(Tok::Comma)) call.args.push_back(expr());
      }
      expect(Tok::RParen, "to close argument list");
      return std::make_shared<const SExpr>(SExpr{std::move(call), name.pos});
    }
    if (call_op(name.text)) fail(name, "operator '" + name.text + "' needs an argument list");
    check_not_reserved(name);
    return std::make_shared<const SExpr>(SExpr{SName{name.text}, name.pos});
  }

  SExprPtr initializer(const Token& kw) {
    SInit init;
    init.keyword = kw.text;
    if (accept(Tok::LBracket)) {
      init.list_form = true;
      if (peek().kind == Tok::LBracket) {
        std::size_t cols = 0, rows = 0;
        do {
          expect(Tok::LBracket, "to open matrix row");
          std::size_t n = 0;
          do {
            init.values.push_back(signed_int("in matrix row"));
            ++n;
          } while (accept(Tok::Comma));
          expect(Tok::RBracket, "to close matrix row");
          if (rows == 0) cols = n;
          else if (n != cols) fail(kw, "ragged matrix rows");
          ++rows;
        } while (accept(Tok::Comma));
        init.shape = {rows, cols};
      } else {
        do {
          init.values.push_back(signed_int("in initializer list"));
        } while (accept(Tok::Comma));
        init.shape = {init.values.size()};
      }
      expect(Tok::RBracket, "to close initializer list");
    } else {
      expect(Tok::LParen, "after '" + kw.text + "'");
      if (peek().kind != Tok::RParen) {
        do {
          init.values.push_back(signed_int("in initializer arguments"));
        } while (accept(Tok::Comma));
      }
      expect(Tok::RParen, "to close initializer arguments");
    }
    return std::make_shared<const SExpr>(SExpr{std::move(init), kw.pos});
  }
};

}  // namespace

bool is_init_keyword(std::string_view word) {
  for (auto kw : kInitKeywords)
    if (kw == word) return true;
  return false;
}

SurfaceProgram parse(std::string_view source) {
  Parser p(lex(source));
  return p.program();
}

}  // namespace ila
