#include "compiler.hpp"

namespace actlang::compiler {

using ast::Stmt;
using ast::StmtP;

namespace {

int attr_idx(const CompileCtx& ctx, const std::string& name) {
  auto it = ctx.attr_index->find(name);
  if (it == ctx.attr_index->end())
    throw Error(ErrorKind::UnknownAttribute, "attribute " + name + " has no layout slot");
  return it->second;
}

std::vector<int> attr_idxs(const CompileCtx& ctx, const std::vector<std::string>& names) {
  std::vector<int> out;
  out.reserve(names.size());
  for (const auto& n : names) out.push_back(attr_idx(ctx, n));
  return out;
}

}  // namespace

ir::TVP lower_vexpr(const ast::VExpr& v, const CompileCtx& ctx) {
  switch (v.kind) {
    case ast::VExpr::Kind::Attr:
      return ir::tv_attr(attr_idx(ctx, v.name));
    case ast::VExpr::Kind::Param: {
      auto it = ctx.param_slot.find(v.name);
      if (it == ctx.param_slot.end())
        throw Error(ErrorKind::IllFormedIR, "parameter " + v.name + " has no slot here");
      return ir::tv_param(it->second);
    }
    case ast::VExpr::Kind::Lit:
      return ir::tv_lit(v.lit);
    case ast::VExpr::Kind::Add:
      return ir::tv_add(lower_vexpr(*v.a, ctx), lower_vexpr(*v.b, ctx));
    case ast::VExpr::Kind::Sub:
      return ir::tv_sub(lower_vexpr(*v.a, ctx), lower_vexpr(*v.b, ctx));
  }
  throw Error(ErrorKind::Usage, "bad value expression");
}

ir::TBP lower_bexpr(const ast::BExpr& b, const CompileCtx& ctx) {
  switch (b.kind) {
    case ast::BExpr::Kind::And:
      return ir::tb_and(lower_bexpr(*b.a, ctx), lower_bexpr(*b.b, ctx));
    case ast::BExpr::Kind::Or:
      return ir::tb_or(lower_bexpr(*b.a, ctx), lower_bexpr(*b.b, ctx));
    case ast::BExpr::Kind::Not:
      return ir::tb_not(lower_bexpr(*b.a, ctx));
    case ast::BExpr::Kind::Eq:
      return ir::tb_eq(lower_vexpr(*b.va, ctx), lower_vexpr(*b.vb, ctx));
  }
  throw Error(ErrorKind::Usage, "bad boolean expression");
}

ir::StmP compile_stmt(const StmtP& s, ir::StmP k, const ir::Wb& wb, const CompileCtx& ctx) {
  if (!s) return k;
  switch (s->kind) {
    case Stmt::Kind::Assign:
      switch (s->rhs) {
        case Stmt::Rhs::Val:
          return ir::t_assign(attr_idx(ctx, s->target), ir::rhs_val(lower_vexpr(*s->val, ctx)),
                              std::move(k));
        case Stmt::Rhs::New:
          return ir::t_assign(attr_idx(ctx, s->target), ir::rhs_new(), std::move(k));
        case Stmt::Rhs::Get:
          return ir::t_assign(attr_idx(ctx, s->target), ir::rhs_get(attr_idx(ctx, s->from)),
                              std::move(k));
        case Stmt::Rhs::Sync:
          return ir::t_assign(attr_idx(ctx, s->target),
                              ir::rhs_sync(s->method, attr_idxs(ctx, s->args)), std::move(k));
      }
      break;
    case Stmt::Kind::Async:
      return ir::t_assign(
          attr_idx(ctx, s->target),
          ir::rhs_async(attr_idx(ctx, s->from), s->method, attr_idxs(ctx, s->args)),
          std::move(k));
    case Stmt::Kind::Await:
      return ir::t_await(attr_idx(ctx, s->target), std::move(k));
    case Stmt::Kind::Skip:
      return ir::t_skip(std::move(k));
    case Stmt::Kind::Return:
      switch (s->mark) {
        case ast::ReturnMark::Unmarked:
          return ir::t_return(attr_idx(ctx, s->target), wb, std::move(k));
        case ast::ReturnMark::Star:
          return ir::t_return(attr_idx(ctx, s->target), ir::wb_none(), std::move(k));
        case ast::ReturnMark::WriteBack:
          return ir::t_return(attr_idx(ctx, s->target), ir::wb_attr(attr_idx(ctx, s->wb)),
                              std::move(k));
      }
      break;
    case Stmt::Kind::Seq:
      return compile_stmt(s->a, compile_stmt(s->b, std::move(k), wb, ctx), wb, ctx);
    case Stmt::Kind::If:
      return ir::t_if(lower_bexpr(*s->cond, ctx), compile_stmt(s->a, ir::t_hole(), wb, ctx),
                      compile_stmt(s->b, ir::t_hole(), wb, ctx), std::move(k));
    case Stmt::Kind::While:
      return ir::t_while(lower_bexpr(*s->cond, ctx), compile_stmt(s->a, ir::t_hole(), wb, ctx),
                         std::move(k));
  }
  throw Error(ErrorKind::Usage, "bad statement");
}

ir::StmP compile_closure_stmt(const StmtP& s, const ir::MethodTable& table) {
  CompileCtx ctx;
  ctx.attr_index = &table.attr_index;
  return compile_stmt(s, ir::t_exit(), ir::wb_none(), ctx);
}

namespace {

struct LayoutCollector {
  std::vector<std::string> names;
  std::map<std::string, int> index;

  void attr(const std::string& name) {
    if (index.emplace(name, static_cast<int>(names.size())).second) names.push_back(name);
  }

  void vexpr(const ast::VExpr& v) {
    switch (v.kind) {
      case ast::VExpr::Kind::Attr: attr(v.name); break;
      case ast::VExpr::Kind::Param:
      case ast::VExpr::Kind::Lit: break;
      case ast::VExpr::Kind::Add:
      case ast::VExpr::Kind::Sub:
        vexpr(*v.a);
        vexpr(*v.b);
        break;
    }
  }

  void bexpr(const ast::BExpr& b) {
    switch (b.kind) {
      case ast::BExpr::Kind::And:
      case ast::BExpr::Kind::Or:
        bexpr(*b.a);
        bexpr(*b.b);
        break;
      case ast::BExpr::Kind::Not: bexpr(*b.a); break;
      case ast::BExpr::Kind::Eq:
        vexpr(*b.va);
        vexpr(*b.vb);
        break;
    }
  }

  void stmt(const StmtP& s) {
    if (!s) return;
    switch (s->kind) {
      case Stmt::Kind::Assign:
        attr(s->target);
        switch (s->rhs) {
          case Stmt::Rhs::Val: vexpr(*s->val); break;
          case Stmt::Rhs::New: break;
          case Stmt::Rhs::Get: attr(s->from); break;
          case Stmt::Rhs::Sync:
            for (const auto& a : s->args) attr(a);
            break;
        }
        break;
      case Stmt::Kind::Async:
        attr(s->target);
        attr(s->from);
        for (const auto& a : s->args) attr(a);
        break;
      case Stmt::Kind::Await:
      case Stmt::Kind::Return:
        attr(s->target);
        break;
      case Stmt::Kind::Skip:
        break;
      case Stmt::Kind::Seq:
        stmt(s->a);
        stmt(s->b);
        break;
      case Stmt::Kind::If:
        bexpr(*s->cond);
        stmt(s->a);
        stmt(s->b);
        break;
      case Stmt::Kind::While:
        bexpr(*s->cond);
        stmt(s->a);
        break;
    }
  }
};

}  // namespace

std::pair<std::vector<std::string>, std::map<std::string, int>> attr_layout(
    const ast::Program& p) {
  LayoutCollector c;
  for (const auto& m : p.methods) c.stmt(m.body);
  return {std::move(c.names), std::move(c.index)};
}

ir::MethodTable compile_program(const ast::Program& p) {
  auto diags = ast::validate(p);
  if (!diags.empty()) throw ValidationError(diags);

  ir::MethodTable table;
  auto [names, index] = attr_layout(p);
  table.attr_names = std::move(names);
  table.attr_index = std::move(index);

  for (const auto& m : p.methods) {
    CompileCtx ctx;
    ctx.attr_index = &table.attr_index;
    for (size_t i = 0; i < m.params.size(); i++)
      ctx.param_slot[m.params[i]] = static_cast<int>(i);
    ir::CompiledMethod cm;
    cm.name = m.name;
    cm.params = m.params;
    cm.body = compile_stmt(m.body, ir::t_hole(), ir::wb_slot(), ctx);
    table.by_name[m.name] = table.methods.size();
    table.methods.push_back(std::move(cm));
  }
  return table;
}

}  // namespace actlang::compiler
