#ifndef ACTLANG_AST_HPP
#define ACTLANG_AST_HPP

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "errors.hpp"

// Abstract syntax of the actor language. Statement and expression nodes are
// immutable and shared; configuration snapshots copy cheaply because they
// only copy pointers into these trees.

namespace actlang::ast {

using Value = std::int64_t;

struct VExpr;
using VExprP = std::shared_ptr<const VExpr>;

// Integer-valued expression. `Param` only ever appears in method bodies as
// written; spawning a process substitutes every parameter by its value.
struct VExpr {
  enum class Kind { Attr, Param, Lit, Add, Sub };
  Kind kind;
  std::string name;  // Attr, Param
  Value lit = 0;     // Lit
  VExprP a, b;       // Add, Sub
};

VExprP v_attr(std::string name);
VExprP v_param(std::string name);
VExprP v_lit(Value v);
VExprP v_add(VExprP a, VExprP b);
VExprP v_sub(VExprP a, VExprP b);

struct BExpr;
using BExprP = std::shared_ptr<const BExpr>;

struct BExpr {
  enum class Kind { And, Or, Not, Eq };
  Kind kind;
  BExprP a, b;   // And, Or; Not uses `a`
  VExprP va, vb; // Eq
};

BExprP b_and(BExprP a, BExprP b);
BExprP b_or(BExprP a, BExprP b);
BExprP b_not(BExprP a);
BExprP b_eq(VExprP a, VExprP b);

enum class ReturnMark { Unmarked, Star, WriteBack };

struct Stmt;
using StmtP = std::shared_ptr<const Stmt>;

// One statement node. A single tagged struct keeps pattern matching in the
// interpreter flat; only the fields for `kind` are meaningful.
struct Stmt {
  enum class Kind { Assign, Async, Await, Skip, Return, Seq, If, While };
  enum class Rhs { Val, New, Get, Sync };

  Kind kind;

  std::string target;            // Assign LHS / Async future / Await future / Return attr
  Rhs rhs = Rhs::Val;            // Assign
  VExprP val;                    // Assign Val
  std::string from;              // Assign Get: future attr; Async: callee attr
  std::string method;            // Assign Sync / Async
  std::vector<std::string> args; // Assign Sync / Async (attribute names)

  ReturnMark mark = ReturnMark::Unmarked; // Return
  std::string wb;                         // Return WriteBack target

  BExprP cond;  // If, While
  StmtP a, b;   // Seq(a,b); If(then=a, else=b); While(body=a)
};

StmtP s_assign(std::string target, VExprP v);
StmtP s_new(std::string target);
StmtP s_get(std::string target, std::string fut);
StmtP s_sync(std::string target, std::string method, std::vector<std::string> args);
StmtP s_async(std::string fut, std::string callee, std::string method,
              std::vector<std::string> args);
StmtP s_await(std::string fut);
StmtP s_skip();
StmtP s_return(std::string attr, ReturnMark mark = ReturnMark::Unmarked, std::string wb = "");
StmtP s_seq(StmtP a, StmtP b);
StmtP s_if(BExprP cond, StmtP then_s, StmtP else_s);
StmtP s_while(BExprP cond, StmtP body);

struct MethodDecl {
  std::string name;
  std::vector<std::string> params;
  StmtP body;
};

// Declaration order is preserved: the attribute layout and the debug dump
// both follow the order methods appear in the source text.
struct Program {
  std::vector<MethodDecl> methods;
  const MethodDecl* find(const std::string& name) const;
  const MethodDecl& main() const;
};

// Reserved attribute that carries main's implicit return value.
inline const char* kUnitAttr = "__unit";

bool vexpr_eq(const VExpr& x, const VExpr& y);
bool bexpr_eq(const BExpr& x, const BExpr& y);
bool stmt_eq(const Stmt& x, const Stmt& y);
bool stmt_eq(const StmtP& x, const StmtP& y);

// Marks the final `return` of `body`. The body must end in exactly one
// unmarked return; anything else raises MalformedBody.
StmtP mark_writeback(const StmtP& body, ReturnMark mark, const std::string& wb = "");

// Replaces every Param node by the literal value bound to it.
StmtP subst_params(const StmtP& s, const std::map<std::string, Value>& env);

// Appends `rest` after `prefix`, keeping the chain right-nested so that
// structurally equal programs stay structurally equal after stepping.
StmtP seq_append(const StmtP& prefix, const StmtP& rest);

// Splits a statement into its first executable statement and the remainder
// (null when the statement was the last one). Reassociates stray left-nested
// sequences on the fly.
std::pair<StmtP, StmtP> split_first(const StmtP& s);

std::vector<Diagnostic> validate(const Program& p);

std::string render_vexpr(const VExpr& v);
std::string render_bexpr(const BExpr& b);
// Single-line rendering, used in traces and diagnostics.
std::string render_stmt_inline(const Stmt& s);
// Multi-line canonical form; parsing it back yields a structurally equal program.
std::string pretty(const Program& p);

}  // namespace actlang::ast

#endif
