#include "ast.hpp"

#include <algorithm>
#include <set>
#include <sstream>

namespace actlang::ast {

VExprP v_attr(std::string name) {
  auto e = std::make_shared<VExpr>();
  e->kind = VExpr::Kind::Attr;
  e->name = std::move(name);
  return e;
}

VExprP v_param(std::string name) {
  auto e = std::make_shared<VExpr>();
  e->kind = VExpr::Kind::Param;
  e->name = std::move(name);
  return e;
}

VExprP v_lit(Value v) {
  auto e = std::make_shared<VExpr>();
  e->kind = VExpr::Kind::Lit;
  e->lit = v;
  return e;
}

static VExprP v_bin(VExpr::Kind k, VExprP a, VExprP b) {
  auto e = std::make_shared<VExpr>();
  e->kind = k;
  e->a = std::move(a);
  e->b = std::move(b);
  return e;
}

VExprP v_add(VExprP a, VExprP b) { return v_bin(VExpr::Kind::Add, std::move(a), std::move(b)); }
VExprP v_sub(VExprP a, VExprP b) { return v_bin(VExpr::Kind::Sub, std::move(a), std::move(b)); }

BExprP b_and(BExprP a, BExprP b) {
  auto e = std::make_shared<BExpr>();
  e->kind = BExpr::Kind::And;
  e->a = std::move(a);
  e->b = std::move(b);
  return e;
}

BExprP b_or(BExprP a, BExprP b) {
  auto e = std::make_shared<BExpr>();
  e->kind = BExpr::Kind::Or;
  e->a = std::move(a);
  e->b = std::move(b);
  return e;
}

BExprP b_not(BExprP a) {
  auto e = std::make_shared<BExpr>();
  e->kind = BExpr::Kind::Not;
  e->a = std::move(a);
  return e;
}

BExprP b_eq(VExprP a, VExprP b) {
  auto e = std::make_shared<BExpr>();
  e->kind = BExpr::Kind::Eq;
  e->va = std::move(a);
  e->vb = std::move(b);
  return e;
}

static std::shared_ptr<Stmt> s_make(Stmt::Kind k) {
  auto s = std::make_shared<Stmt>();
  s->kind = k;
  return s;
}

StmtP s_assign(std::string target, VExprP v) {
  auto s = s_make(Stmt::Kind::Assign);
  s->target = std::move(target);
  s->rhs = Stmt::Rhs::Val;
  s->val = std::move(v);
  return s;
}

StmtP s_new(std::string target) {
  auto s = s_make(Stmt::Kind::Assign);
  s->target = std::move(target);
  s->rhs = Stmt::Rhs::New;
  return s;
}

StmtP s_get(std::string target, std::string fut) {
  auto s = s_make(Stmt::Kind::Assign);
  s->target = std::move(target);
  s->rhs = Stmt::Rhs::Get;
  s->from = std::move(fut);
  return s;
}

StmtP s_sync(std::string target, std::string method, std::vector<std::string> args) {
  auto s = s_make(Stmt::Kind::Assign);
  s->target = std::move(target);
  s->rhs = Stmt::Rhs::Sync;
  s->method = std::move(method);
  s->args = std::move(args);
  return s;
}

StmtP s_async(std::string fut, std::string callee, std::string method,
              std::vector<std::string> args) {
  auto s = s_make(Stmt::Kind::Async);
  s->target = std::move(fut);
  s->from = std::move(callee);
  s->method = std::move(method);
  s->args = std::move(args);
  return s;
}

StmtP s_await(std::string fut) {
  auto s = s_make(Stmt::Kind::Await);
  s->target = std::move(fut);
  return s;
}

StmtP s_skip() { return s_make(Stmt::Kind::Skip); }

StmtP s_return(std::string attr, ReturnMark mark, std::string wb) {
  auto s = s_make(Stmt::Kind::Return);
  s->target = std::move(attr);
  s->mark = mark;
  s->wb = std::move(wb);
  return s;
}

StmtP s_seq(StmtP a, StmtP b) {
  auto s = s_make(Stmt::Kind::Seq);
  s->a = std::move(a);
  s->b = std::move(b);
  return s;
}

StmtP s_if(BExprP cond, StmtP then_s, StmtP else_s) {
  auto s = s_make(Stmt::Kind::If);
  s->cond = std::move(cond);
  s->a = std::move(then_s);
  s->b = std::move(else_s);
  return s;
}

StmtP s_while(BExprP cond, StmtP body) {
  auto s = s_make(Stmt::Kind::While);
  s->cond = std::move(cond);
  s->a = std::move(body);
  return s;
}

const MethodDecl* Program::find(const std::string& name) const {
  for (const auto& m : methods)
    if (m.name == name) return &m;
  return nullptr;
}

const MethodDecl& Program::main() const {
  const MethodDecl* m = find("main");
  if (!m) throw Error(ErrorKind::Validation, "program has no main method");
  return *m;
}

bool vexpr_eq(const VExpr& x, const VExpr& y) {
  if (x.kind != y.kind) return false;
  switch (x.kind) {
    case VExpr::Kind::Attr:
    case VExpr::Kind::Param:
      return x.name == y.name;
    case VExpr::Kind::Lit:
      return x.lit == y.lit;
    case VExpr::Kind::Add:
    case VExpr::Kind::Sub:
      return vexpr_eq(*x.a, *y.a) && vexpr_eq(*x.b, *y.b);
  }
  return false;
}

bool bexpr_eq(const BExpr& x, const BExpr& y) {
  if (x.kind != y.kind) return false;
  switch (x.kind) {
    case BExpr::Kind::And:
    case BExpr::Kind::Or:
      return bexpr_eq(*x.a, *y.a) && bexpr_eq(*x.b, *y.b);
    case BExpr::Kind::Not:
      return bexpr_eq(*x.a, *y.a);
    case BExpr::Kind::Eq:
      return vexpr_eq(*x.va, *y.va) && vexpr_eq(*x.vb, *y.vb);
  }
  return false;
}

bool stmt_eq(const Stmt& x, const Stmt& y) {
  if (x.kind != y.kind) return false;
  switch (x.kind) {
    case Stmt::Kind::Assign:
      if (x.rhs != y.rhs || x.target != y.target) return false;
      switch (x.rhs) {
        case Stmt::Rhs::Val: return vexpr_eq(*x.val, *y.val);
        case Stmt::Rhs::New: return true;
        case Stmt::Rhs::Get: return x.from == y.from;
        case Stmt::Rhs::Sync: return x.method == y.method && x.args == y.args;
      }
      return false;
    case Stmt::Kind::Async:
      return x.target == y.target && x.from == y.from && x.method == y.method &&
             x.args == y.args;
    case Stmt::Kind::Await:
      return x.target == y.target;
    case Stmt::Kind::Skip:
      return true;
    case Stmt::Kind::Return:
      return x.target == y.target && x.mark == y.mark &&
             (x.mark != ReturnMark::WriteBack || x.wb == y.wb);
    case Stmt::Kind::Seq:
      return stmt_eq(*x.a, *y.a) && stmt_eq(*x.b, *y.b);
    case Stmt::Kind::If:
      return bexpr_eq(*x.cond, *y.cond) && stmt_eq(*x.a, *y.a) && stmt_eq(*x.b, *y.b);
    case Stmt::Kind::While:
      return bexpr_eq(*x.cond, *y.cond) && stmt_eq(*x.a, *y.a);
  }
  return false;
}

bool stmt_eq(const StmtP& x, const StmtP& y) {
  if (!x || !y) return x == y;
  return stmt_eq(*x, *y);
}

StmtP mark_writeback(const StmtP& body, ReturnMark mark, const std::string& wb) {
  if (!body) throw Error(ErrorKind::MalformedBody, "empty method body");
  if (mark == ReturnMark::Unmarked)
    throw Error(ErrorKind::Usage, "mark_writeback needs a concrete mark");
  switch (body->kind) {
    case Stmt::Kind::Seq:
      return s_seq(body->a, mark_writeback(body->b, mark, wb));
    case Stmt::Kind::Return: {
      if (body->mark != ReturnMark::Unmarked)
        throw Error(ErrorKind::MalformedBody, "final return is already marked");
      return s_return(body->target, mark, wb);
    }
    default:
      throw Error(ErrorKind::MalformedBody, "method body does not end in a return");
  }
}

static VExprP subst_vexpr(const VExprP& v, const std::map<std::string, Value>& env) {
  switch (v->kind) {
    case VExpr::Kind::Param: {
      auto it = env.find(v->name);
      if (it == env.end())
        throw Error(ErrorKind::IllFormedIR, "unbound parameter " + v->name);
      return v_lit(it->second);
    }
    case VExpr::Kind::Add:
      return v_add(subst_vexpr(v->a, env), subst_vexpr(v->b, env));
    case VExpr::Kind::Sub:
      return v_sub(subst_vexpr(v->a, env), subst_vexpr(v->b, env));
    default:
      return v;
  }
}

static BExprP subst_bexpr(const BExprP& b, const std::map<std::string, Value>& env) {
  switch (b->kind) {
    case BExpr::Kind::And: return b_and(subst_bexpr(b->a, env), subst_bexpr(b->b, env));
    case BExpr::Kind::Or:  return b_or(subst_bexpr(b->a, env), subst_bexpr(b->b, env));
    case BExpr::Kind::Not: return b_not(subst_bexpr(b->a, env));
    case BExpr::Kind::Eq:  return b_eq(subst_vexpr(b->va, env), subst_vexpr(b->vb, env));
  }
  return b;
}

StmtP subst_params(const StmtP& s, const std::map<std::string, Value>& env) {
  switch (s->kind) {
    case Stmt::Kind::Assign:
      if (s->rhs == Stmt::Rhs::Val) return s_assign(s->target, subst_vexpr(s->val, env));
      return s;
    case Stmt::Kind::Seq:
      return s_seq(subst_params(s->a, env), subst_params(s->b, env));
    case Stmt::Kind::If:
      return s_if(subst_bexpr(s->cond, env), subst_params(s->a, env), subst_params(s->b, env));
    case Stmt::Kind::While:
      return s_while(subst_bexpr(s->cond, env), subst_params(s->a, env));
    default:
      return s;
  }
}

StmtP seq_append(const StmtP& prefix, const StmtP& rest) {
  if (!rest) return prefix;
  if (!prefix) return rest;
  if (prefix->kind == Stmt::Kind::Seq)
    return s_seq(prefix->a, seq_append(prefix->b, rest));
  return s_seq(prefix, rest);
}

std::pair<StmtP, StmtP> split_first(const StmtP& s) {
  StmtP head = s;
  StmtP rest;
  while (head->kind == Stmt::Kind::Seq) {
    rest = rest ? s_seq(head->b, rest) : head->b;
    head = head->a;
  }
  // Renormalize a rest that starts with a nested sequence.
  if (rest && rest->kind == Stmt::Kind::Seq && rest->a->kind == Stmt::Kind::Seq)
    rest = seq_append(rest->a, rest->b);
  return {head, rest};
}

namespace {

struct Validator {
  const Program& prog;
  std::vector<Diagnostic> diags;

  void add(Diagnostic::Code code, const std::string& method, std::string msg) {
    diags.push_back({code, method, std::move(msg)});
  }

  void check_vexpr(const MethodDecl& m, const VExpr& v) {
    // Parameters are legal in value positions; nothing to check beyond shape.
    if (v.kind == VExpr::Kind::Add || v.kind == VExpr::Kind::Sub) {
      check_vexpr(m, *v.a);
      check_vexpr(m, *v.b);
    }
  }

  bool is_param(const MethodDecl& m, const std::string& name) {
    return std::find(m.params.begin(), m.params.end(), name) != m.params.end();
  }

  void check_attr_position(const MethodDecl& m, const std::string& name, const char* where) {
    if (is_param(m, name))
      add(Diagnostic::Code::ParamInAttrPosition, m.name,
          m.name + ": parameter " + name + " used as " + where);
  }

  void check_call(const MethodDecl& m, const std::string& callee,
                  const std::vector<std::string>& args) {
    const MethodDecl* target = prog.find(callee);
    if (!target) {
      add(Diagnostic::Code::UnknownMethod, m.name, m.name + ": call to unknown method " + callee);
    } else if (target->params.size() != args.size()) {
      add(Diagnostic::Code::ArityMismatch, m.name,
          m.name + ": " + callee + " expects " + std::to_string(target->params.size()) +
              " arguments, got " + std::to_string(args.size()));
    }
    for (const auto& a : args) check_attr_position(m, a, "call argument");
  }

  // Walks a body counting returns; `top` is true only along the outermost
  // statement chain, where the single return must sit.
  void check_stmt(const MethodDecl& m, const Stmt& s, bool top, bool is_last, int& returns) {
    switch (s.kind) {
      case Stmt::Kind::Assign:
        if (is_param(m, s.target))
          add(Diagnostic::Code::AssignToParam, m.name,
              m.name + ": assignment to parameter " + s.target);
        switch (s.rhs) {
          case Stmt::Rhs::Val: check_vexpr(m, *s.val); break;
          case Stmt::Rhs::New: break;
          case Stmt::Rhs::Get: check_attr_position(m, s.from, "future"); break;
          case Stmt::Rhs::Sync: check_call(m, s.method, s.args); break;
        }
        break;
      case Stmt::Kind::Async:
        check_attr_position(m, s.target, "future");
        check_attr_position(m, s.from, "callee");
        check_call(m, s.method, s.args);
        break;
      case Stmt::Kind::Await:
        check_attr_position(m, s.target, "future");
        break;
      case Stmt::Kind::Skip:
        break;
      case Stmt::Kind::Return:
        returns++;
        if (s.mark != ReturnMark::Unmarked)
          add(Diagnostic::Code::MarkedReturnInSource, m.name,
              m.name + ": marked return in source program");
        check_attr_position(m, s.target, "return value");
        if (!top || !is_last)
          add(Diagnostic::Code::ReturnNotFinal, m.name,
              m.name + ": return is not the final statement");
        break;
      case Stmt::Kind::Seq:
        check_stmt(m, *s.a, top, false, returns);
        check_stmt(m, *s.b, top, is_last, returns);
        break;
      case Stmt::Kind::If:
        check_stmt(m, *s.a, false, false, returns);
        check_stmt(m, *s.b, false, false, returns);
        break;
      case Stmt::Kind::While:
        check_stmt(m, *s.a, false, false, returns);
        break;
    }
  }

  void run() {
    std::set<std::string> seen;
    bool have_main = false;
    for (const auto& m : prog.methods) {
      if (!seen.insert(m.name).second)
        add(Diagnostic::Code::DuplicateMethod, m.name, "duplicate method " + m.name);
      if (m.name == "main") {
        have_main = true;
        if (!m.params.empty())
          add(Diagnostic::Code::MainHasParams, m.name, "main takes no parameters");
      }
      std::set<std::string> pseen;
      for (const auto& p : m.params)
        if (!pseen.insert(p).second)
          add(Diagnostic::Code::DuplicateParam, m.name,
              m.name + ": duplicate parameter " + p);
      int returns = 0;
      if (m.body) check_stmt(m, *m.body, true, true, returns);
      if (returns == 0)
        add(Diagnostic::Code::MissingReturn, m.name, m.name + ": missing final return");
      else if (returns > 1)
        add(Diagnostic::Code::MultipleReturns, m.name,
            m.name + ": more than one return");
    }
    if (!have_main) add(Diagnostic::Code::MissingMain, "", "program has no main method");
  }
};

}  // namespace

std::vector<Diagnostic> validate(const Program& p) {
  Validator v{p, {}};
  v.run();
  return v.diags;
}

std::string render_vexpr(const VExpr& v) {
  switch (v.kind) {
    case VExpr::Kind::Attr:
    case VExpr::Kind::Param:
      return v.name;
    case VExpr::Kind::Lit:
      return std::to_string(v.lit);
    case VExpr::Kind::Add:
    case VExpr::Kind::Sub: {
      std::string lhs = render_vexpr(*v.a);
      std::string rhs = render_vexpr(*v.b);
      // Addition chains associate left; a compound right operand needs parens.
      if (v.b->kind == VExpr::Kind::Add || v.b->kind == VExpr::Kind::Sub)
        rhs = "(" + rhs + ")";
      return lhs + (v.kind == VExpr::Kind::Add ? " + " : " - ") + rhs;
    }
  }
  return "?";
}

static std::string render_bexpr_operand(const BExpr& b) {
  std::string s = render_bexpr(b);
  if (b.kind == BExpr::Kind::Not) return s;
  return "(" + s + ")";
}

std::string render_bexpr(const BExpr& b) {
  switch (b.kind) {
    case BExpr::Kind::And:
      return render_bexpr_operand(*b.a) + " && " + render_bexpr_operand(*b.b);
    case BExpr::Kind::Or:
      return render_bexpr_operand(*b.a) + " || " + render_bexpr_operand(*b.b);
    case BExpr::Kind::Not:
      return "!" + render_bexpr_operand(*b.a);
    case BExpr::Kind::Eq:
      return render_vexpr(*b.va) + " == " + render_vexpr(*b.vb);
  }
  return "?";
}

static std::string join_args(const std::vector<std::string>& args) {
  std::string s;
  for (size_t i = 0; i < args.size(); i++) {
    if (i) s += ", ";
    s += args[i];
  }
  return s;
}

std::string render_stmt_inline(const Stmt& s) {
  switch (s.kind) {
    case Stmt::Kind::Assign:
      switch (s.rhs) {
        case Stmt::Rhs::Val: return s.target + " := " + render_vexpr(*s.val);
        case Stmt::Rhs::New: return s.target + " := new";
        case Stmt::Rhs::Get: return s.target + " := " + s.from + ".get";
        case Stmt::Rhs::Sync: return s.target + " := " + s.method + "(" + join_args(s.args) + ")";
      }
      return "?";
    case Stmt::Kind::Async:
      return s.target + " := " + s.from + "!" + s.method + "(" + join_args(s.args) + ")";
    case Stmt::Kind::Await:
      return "await " + s.target;
    case Stmt::Kind::Skip:
      return "skip";
    case Stmt::Kind::Return:
      switch (s.mark) {
        case ReturnMark::Unmarked: return "return " + s.target;
        case ReturnMark::Star: return "return* " + s.target;
        case ReturnMark::WriteBack: return "return[" + s.wb + "] " + s.target;
      }
      return "?";
    case Stmt::Kind::Seq:
      return render_stmt_inline(*s.a) + "; " + render_stmt_inline(*s.b);
    case Stmt::Kind::If:
      return "if (" + render_bexpr(*s.cond) + ") { " + render_stmt_inline(*s.a) +
             "; } else { " + render_stmt_inline(*s.b) + "; }";
    case Stmt::Kind::While:
      return "while (" + render_bexpr(*s.cond) + ") { " + render_stmt_inline(*s.a) + "; }";
  }
  return "?";
}

namespace {

void pretty_stmt(std::ostringstream& out, const Stmt& s, int indent) {
  std::string pad(static_cast<size_t>(indent) * 2, ' ');
  switch (s.kind) {
    case Stmt::Kind::Seq:
      pretty_stmt(out, *s.a, indent);
      pretty_stmt(out, *s.b, indent);
      return;
    case Stmt::Kind::If:
      out << pad << "if (" << render_bexpr(*s.cond) << ") {\n";
      pretty_stmt(out, *s.a, indent + 1);
      out << pad << "} else {\n";
      pretty_stmt(out, *s.b, indent + 1);
      out << pad << "}\n";
      return;
    case Stmt::Kind::While:
      out << pad << "while (" << render_bexpr(*s.cond) << ") {\n";
      pretty_stmt(out, *s.a, indent + 1);
      out << pad << "}\n";
      return;
    default:
      out << pad << render_stmt_inline(s) << ";\n";
      return;
  }
}

}  // namespace

std::string pretty(const Program& p) {
  std::ostringstream out;
  bool first = true;
  for (const auto& m : p.methods) {
    if (!first) out << "\n";
    first = false;
    out << m.name << "(" << join_args(m.params) << ") {\n";
    if (m.body) pretty_stmt(out, *m.body, 1);
    out << "}\n";
  }
  return out.str();
}

}  // namespace actlang::ast
