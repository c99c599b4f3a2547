#ifndef ACTLANG_COMPILER_HPP
#define ACTLANG_COMPILER_HPP

#include "ast.hpp"
#include "ir.hpp"

// Source-to-target translation. Each statement becomes one IR node holding
// its continuation; if/while branches become builders; method bodies become
// templates whose parameters, write-back target, and final continuation stay
// open until instantiation.

namespace actlang::compiler {

struct CompileCtx {
  const std::map<std::string, int>* attr_index = nullptr;
  std::map<std::string, int> param_slot;  // empty when compiling closure statements
};

ir::TVP lower_vexpr(const ast::VExpr& v, const CompileCtx& ctx);
ir::TBP lower_bexpr(const ast::BExpr& b, const CompileCtx& ctx);

ir::StmP compile_stmt(const ast::StmtP& s, ir::StmP k, const ir::Wb& wb, const CompileCtx& ctx);

// Closure statements carry no parameters and marked returns, so the ambient
// write-back never surfaces.
ir::StmP compile_closure_stmt(const ast::StmtP& s, const ir::MethodTable& table);

// Attribute indices assigned by first occurrence, walking methods in
// declaration order and each statement left to right.
std::pair<std::vector<std::string>, std::map<std::string, int>> attr_layout(
    const ast::Program& p);

ir::MethodTable compile_program(const ast::Program& p);

}  // namespace actlang::compiler

#endif
