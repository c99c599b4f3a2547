#include "parser.hpp"

#include <algorithm>
#include <cctype>
#include <cstdint>
#include <limits>

namespace actlang::parse {

using namespace actlang::ast;

namespace {

enum class Tok {
  Ident, Int,
  KwAwait, KwSkip, KwReturn, KwIf, KwElse, KwWhile, KwNew, KwGet,
  Assign,   // :=
  Bang, Dot, Semi, Comma, Star, Plus, Minus,
  LParen, RParen, LBrace, RBrace, LBracket, RBracket,
  EqEq, AndAnd, OrOr,
  Eof
};

struct Token {
  Tok kind;
  std::string text;
  std::int64_t value = 0;
  int line = 1;
  int col = 1;
};

const char* tok_name(Tok t) {
  switch (t) {
    case Tok::Ident: return "identifier";
    case Tok::Int: return "integer";
    case Tok::KwAwait: return "'await'";
    case Tok::KwSkip: return "'skip'";
    case Tok::KwReturn: return "'return'";
    case Tok::KwIf: return "'if'";
    case Tok::KwElse: return "'else'";
    case Tok::KwWhile: return "'while'";
    case Tok::KwNew: return "'new'";
    case Tok::KwGet: return "'get'";
    case Tok::Assign: return "':='";
    case Tok::Bang: return "'!'";
    case Tok::Dot: return "'.'";
    case Tok::Semi: return "';'";
    case Tok::Comma: return "','";
    case Tok::Star: return "'*'";
    case Tok::Plus: return "'+'";
    case Tok::Minus: return "'-'";
    case Tok::LParen: return "'('";
    case Tok::RParen: return "')'";
    case Tok::LBrace: return "'{'";
    case Tok::RBrace: return "'}'";
    case Tok::LBracket: return "'['";
    case Tok::RBracket: return "']'";
    case Tok::EqEq: return "'=='";
    case Tok::AndAnd: return "'&&'";
    case Tok::OrOr: return "'||'";
    case Tok::Eof: return "end of input";
  }
  return "?";
}

struct Lexer {
  const std::string& src;
  size_t pos = 0;
  int line = 1;
  int col = 1;

  explicit Lexer(const std::string& s) : src(s) {}

  [[noreturn]] void fail(const std::string& msg) { throw SyntaxError(line, col, msg); }

  int peek() const { return pos < src.size() ? static_cast<unsigned char>(src[pos]) : -1; }

  int advance() {
    int c = peek();
    if (c < 0) return c;
    pos++;
    if (c == '\n') {
      line++;
      col = 1;
    } else {
      col++;
    }
    return c;
  }

  void skip_space_and_comments() {
    for (;;) {
      int c = peek();
      if (c == ' ' || c == '\t' || c == '\r' || c == '\n') {
        advance();
      } else if (c == '/' && pos + 1 < src.size() && src[pos + 1] == '/') {
        while (peek() >= 0 && peek() != '\n') advance();
      } else {
        return;
      }
    }
  }

  Token next() {
    skip_space_and_comments();
    Token t;
    t.line = line;
    t.col = col;
    int c = peek();
    if (c < 0) {
      t.kind = Tok::Eof;
      return t;
    }
    if (std::isalpha(c) || c == '_') {
      std::string id;
      while (peek() >= 0 && (std::isalnum(peek()) || peek() == '_'))
        id += static_cast<char>(advance());
      t.text = id;
      if (id == "await") t.kind = Tok::KwAwait;
      else if (id == "skip") t.kind = Tok::KwSkip;
      else if (id == "return") t.kind = Tok::KwReturn;
      else if (id == "if") t.kind = Tok::KwIf;
      else if (id == "else") t.kind = Tok::KwElse;
      else if (id == "while") t.kind = Tok::KwWhile;
      else if (id == "new") t.kind = Tok::KwNew;
      else if (id == "get") t.kind = Tok::KwGet;
      else t.kind = Tok::Ident;
      return t;
    }
    if (std::isdigit(c)) {
      std::uint64_t v = 0;
      const std::uint64_t limit = static_cast<std::uint64_t>(std::numeric_limits<std::int64_t>::max());
      while (peek() >= 0 && std::isdigit(peek())) {
        int d = advance() - '0';
        if (v > (limit - static_cast<std::uint64_t>(d)) / 10)
          throw SyntaxError(t.line, t.col, "integer literal out of range");
        v = v * 10 + static_cast<std::uint64_t>(d);
      }
      t.kind = Tok::Int;
      t.value = static_cast<std::int64_t>(v);
      return t;
    }
    advance();
    switch (c) {
      case ':':
        if (peek() == '=') {
          advance();
          t.kind = Tok::Assign;
          return t;
        }
        fail("expected '=' after ':'");
      case '!': t.kind = Tok::Bang; return t;
      case '.': t.kind = Tok::Dot; return t;
      case ';': t.kind = Tok::Semi; return t;
      case ',': t.kind = Tok::Comma; return t;
      case '*': t.kind = Tok::Star; return t;
      case '+': t.kind = Tok::Plus; return t;
      case '-': t.kind = Tok::Minus; return t;
      case '(': t.kind = Tok::LParen; return t;
      case ')': t.kind = Tok::RParen; return t;
      case '{': t.kind = Tok::LBrace; return t;
      case '}': t.kind = Tok::RBrace; return t;
      case '[': t.kind = Tok::LBracket; return t;
      case ']': t.kind = Tok::RBracket; return t;
      case '=':
        if (peek() == '=') {
          advance();
          t.kind = Tok::EqEq;
          return t;
        }
        fail("expected '==' ('=' alone is not an operator)");
      case '&':
        if (peek() == '&') {
          advance();
          t.kind = Tok::AndAnd;
          return t;
        }
        fail("expected '&&'");
      case '|':
        if (peek() == '|') {
          advance();
          t.kind = Tok::OrOr;
          return t;
        }
        fail("expected '||'");
      default:
        fail("unexpected character");
    }
  }
};

constexpr int kMaxDepth = 512;

struct Parser {
  Lexer lex;
  Token cur;
  std::vector<std::string> params;  // parameters of the method being parsed
  int depth = 0;

  explicit Parser(const std::string& text) : lex(text) { cur = lex.next(); }

  [[noreturn]] void fail(const std::string& msg) { throw SyntaxError(cur.line, cur.col, msg); }

  void bump() { cur = lex.next(); }

  Token expect(Tok k, const char* what) {
    if (cur.kind != k)
      fail(std::string("expected ") + what + ", found " + tok_name(cur.kind));
    Token t = cur;
    bump();
    return t;
  }

  struct DepthGuard {
    Parser& p;
    explicit DepthGuard(Parser& p) : p(p) {
      if (++p.depth > kMaxDepth) p.fail("nesting too deep");
    }
    ~DepthGuard() { p.depth--; }
  };

  bool is_param(const std::string& name) const {
    return std::find(params.begin(), params.end(), name) != params.end();
  }

  // Reads an identifier that must denote an attribute; parameters are only
  // legal inside value expressions.
  std::string attr_ident(const char* where) {
    Token t = expect(Tok::Ident, "identifier");
    if (is_param(t.text))
      throw SyntaxError(t.line, t.col,
                        "parameter " + t.text + " cannot be used as " + where);
    return t.text;
  }

  std::vector<std::string> arg_list() {
    std::vector<std::string> args;
    expect(Tok::LParen, "'('");
    if (cur.kind != Tok::RParen) {
      args.push_back(attr_ident("call argument"));
      while (cur.kind == Tok::Comma) {
        bump();
        args.push_back(attr_ident("call argument"));
      }
    }
    expect(Tok::RParen, "')'");
    return args;
  }

  VExprP term() {
    if (cur.kind == Tok::Int) {
      Value v = cur.value;
      bump();
      return v_lit(v);
    }
    if (cur.kind == Tok::Minus) {
      bump();
      Token t = expect(Tok::Int, "integer literal");
      return v_lit(-t.value);
    }
    if (cur.kind == Tok::Ident) {
      std::string name = cur.text;
      bump();
      return is_param(name) ? v_param(name) : v_attr(name);
    }
    fail(std::string("expected value expression, found ") + tok_name(cur.kind));
  }

  VExprP vexp() {
    VExprP e = term();
    while (cur.kind == Tok::Plus || cur.kind == Tok::Minus) {
      bool add = cur.kind == Tok::Plus;
      bump();
      VExprP rhs = term();
      e = add ? v_add(e, rhs) : v_sub(e, rhs);
    }
    return e;
  }

  BExprP bnot() {
    DepthGuard g(*this);
    if (cur.kind == Tok::Bang) {
      bump();
      return b_not(bnot());
    }
    if (cur.kind == Tok::LParen) {
      bump();
      BExprP e = bexp();
      expect(Tok::RParen, "')'");
      return e;
    }
    VExprP a = vexp();
    expect(Tok::EqEq, "'=='");
    VExprP b = vexp();
    return b_eq(a, b);
  }

  BExprP band() {
    BExprP e = bnot();
    while (cur.kind == Tok::AndAnd) {
      bump();
      e = b_and(e, bnot());
    }
    return e;
  }

  BExprP bexp() {
    BExprP e = band();
    while (cur.kind == Tok::OrOr) {
      bump();
      e = b_or(e, band());
    }
    return e;
  }

  StmtP assign_rhs(const std::string& target) {
    if (cur.kind == Tok::KwNew) {
      bump();
      return s_new(target);
    }
    if (cur.kind == Tok::Ident) {
      // Could be future.get, callee!method(...), method(...), or a value
      // expression starting with an identifier.
      Token id = cur;
      bump();
      if (cur.kind == Tok::Dot) {
        bump();
        expect(Tok::KwGet, "'get'");
        if (is_param(id.text))
          throw SyntaxError(id.line, id.col,
                            "parameter " + id.text + " cannot be used as future");
        return s_get(target, id.text);
      }
      if (cur.kind == Tok::Bang) {
        bump();
        if (is_param(id.text))
          throw SyntaxError(id.line, id.col,
                            "parameter " + id.text + " cannot be used as callee");
        Token m = expect(Tok::Ident, "method name");
        return s_async(target, id.text, m.text, arg_list());
      }
      if (cur.kind == Tok::LParen) {
        return s_sync(target, id.text, arg_list());
      }
      // Value expression; fold the identifier back in as its first term.
      VExprP e = is_param(id.text) ? v_param(id.text) : v_attr(id.text);
      while (cur.kind == Tok::Plus || cur.kind == Tok::Minus) {
        bool add = cur.kind == Tok::Plus;
        bump();
        VExprP rhs = term();
        e = add ? v_add(e, rhs) : v_sub(e, rhs);
      }
      return s_assign(target, e);
    }
    return s_assign(target, vexp());
  }

  StmtP stmt() {
    DepthGuard g(*this);
    switch (cur.kind) {
      case Tok::KwAwait: {
        bump();
        std::string f = attr_ident("await target");
        expect(Tok::Semi, "';'");
        return s_await(f);
      }
      case Tok::KwSkip: {
        bump();
        expect(Tok::Semi, "';'");
        return s_skip();
      }
      case Tok::KwReturn: {
        bump();
        ReturnMark mark = ReturnMark::Unmarked;
        std::string wb;
        if (cur.kind == Tok::Star) {
          bump();
          mark = ReturnMark::Star;
        } else if (cur.kind == Tok::LBracket) {
          bump();
          wb = attr_ident("write-back target");
          expect(Tok::RBracket, "']'");
          mark = ReturnMark::WriteBack;
        }
        std::string attr = attr_ident("return value");
        expect(Tok::Semi, "';'");
        return s_return(attr, mark, wb);
      }
      case Tok::KwIf: {
        bump();
        expect(Tok::LParen, "'('");
        BExprP c = bexp();
        expect(Tok::RParen, "')'");
        StmtP then_s = block();
        StmtP else_s;
        if (cur.kind == Tok::KwElse) {
          bump();
          else_s = block();
        } else {
          else_s = s_skip();
        }
        return s_if(c, then_s, else_s);
      }
      case Tok::KwWhile: {
        bump();
        expect(Tok::LParen, "'('");
        BExprP c = bexp();
        expect(Tok::RParen, "')'");
        return s_while(c, block());
      }
      case Tok::Ident: {
        std::string target = attr_ident("assignment target");
        expect(Tok::Assign, "':='");
        StmtP s = assign_rhs(target);
        expect(Tok::Semi, "';'");
        return s;
      }
      default:
        fail(std::string("expected statement, found ") + tok_name(cur.kind));
    }
  }

  // A block folds into a right-nested statement chain; an empty block is skip.
  StmtP block() {
    DepthGuard g(*this);
    expect(Tok::LBrace, "'{'");
    std::vector<StmtP> stmts;
    while (cur.kind != Tok::RBrace) {
      if (cur.kind == Tok::Eof) fail("unterminated block");
      stmts.push_back(stmt());
    }
    bump();
    if (stmts.empty()) return s_skip();
    StmtP chain = stmts.back();
    for (size_t i = stmts.size() - 1; i-- > 0;) chain = s_seq(stmts[i], chain);
    return chain;
  }

  MethodDecl method() {
    MethodDecl m;
    m.name = expect(Tok::Ident, "method name").text;
    expect(Tok::LParen, "'('");
    params.clear();
    if (cur.kind != Tok::RParen) {
      params.push_back(expect(Tok::Ident, "parameter name").text);
      while (cur.kind == Tok::Comma) {
        bump();
        params.push_back(expect(Tok::Ident, "parameter name").text);
      }
    }
    expect(Tok::RParen, "')'");
    m.params = params;
    m.body = block();
    params.clear();
    return m;
  }

  Program program() {
    Program p;
    while (cur.kind != Tok::Eof) p.methods.push_back(method());
    return p;
  }
};

bool ends_in_return(const StmtP& s) {
  const Stmt* cur = s.get();
  while (cur->kind == Stmt::Kind::Seq) cur = cur->b.get();
  return cur->kind == Stmt::Kind::Return;
}

void add_implicit_main_return(Program& p) {
  for (auto& m : p.methods) {
    if (m.name != "main") continue;
    if (!m.body)
      m.body = s_return(kUnitAttr);
    else if (!ends_in_return(m.body))
      m.body = seq_append(m.body, s_return(kUnitAttr));
  }
}

}  // namespace

ast::Program parse_unvalidated(const std::string& text) {
  Parser p(text);
  Program prog = p.program();
  add_implicit_main_return(prog);
  return prog;
}

ast::Program parse_program(const std::string& text) {
  Program prog = parse_unvalidated(text);
  auto diags = validate(prog);
  if (!diags.empty()) throw ValidationError(std::move(diags));
  return prog;
}

}  // namespace actlang::parse
