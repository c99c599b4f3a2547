#include "decompile.hpp"

namespace actlang::decompile {

using ir::Stm;
using ir::StmP;

namespace {

std::vector<std::string> attr_names(const std::vector<int>& idxs, const ir::MethodTable& t) {
  std::vector<std::string> out;
  out.reserve(idxs.size());
  for (int i : idxs) out.push_back(t.attr_name(i));
  return out;
}

// Walks a spine up to `terminator` (Exit for process statements, Hole for
// builders) and folds the collected statements into a right-nested sequence.
ast::StmtP spine_to_source(const StmP& s, const ir::MethodTable& t, Stm::Kind terminator) {
  std::vector<ast::StmtP> atoms;
  StmP cur = s;
  while (true) {
    if (!cur) throw Error(ErrorKind::IllFormedIR, "continuation spine ended in null");
    if (cur->kind == terminator) break;
    if (cur->kind == Stm::Kind::Exit || cur->kind == Stm::Kind::Hole)
      throw Error(ErrorKind::IllFormedIR,
                  cur->kind == Stm::Kind::Exit ? "exit marker inside a builder"
                                               : "stray hole in a process statement");
    atoms.push_back(head_to_source(*cur, t));
    cur = cur->k;
  }
  if (atoms.empty())
    throw Error(ErrorKind::IllFormedIR, "empty statement spine");
  ast::StmtP out = atoms.back();
  for (size_t i = atoms.size() - 1; i-- > 0;) out = ast::s_seq(atoms[i], out);
  return out;
}

}  // namespace

ast::VExprP tv_to_source(const ir::TVP& v, const ir::MethodTable& table) {
  if (!v) throw Error(ErrorKind::IllFormedIR, "null value expression");
  switch (v->kind) {
    case ir::TV::Kind::Attr: return ast::v_attr(table.attr_name(v->idx));
    case ir::TV::Kind::Param:
      throw Error(ErrorKind::IllFormedIR,
                  "dangling parameter slot " + std::to_string(v->idx));
    case ir::TV::Kind::Lit: return ast::v_lit(v->lit);
    case ir::TV::Kind::Add:
      return ast::v_add(tv_to_source(v->a, table), tv_to_source(v->b, table));
    case ir::TV::Kind::Sub:
      return ast::v_sub(tv_to_source(v->a, table), tv_to_source(v->b, table));
  }
  throw Error(ErrorKind::Usage, "bad value expression");
}

ast::BExprP tb_to_source(const ir::TBP& b, const ir::MethodTable& table) {
  if (!b) throw Error(ErrorKind::IllFormedIR, "null boolean expression");
  switch (b->kind) {
    case ir::TB::Kind::And:
      return ast::b_and(tb_to_source(b->a, table), tb_to_source(b->b, table));
    case ir::TB::Kind::Or:
      return ast::b_or(tb_to_source(b->a, table), tb_to_source(b->b, table));
    case ir::TB::Kind::Not: return ast::b_not(tb_to_source(b->a, table));
    case ir::TB::Kind::Eq:
      return ast::b_eq(tv_to_source(b->va, table), tv_to_source(b->vb, table));
  }
  throw Error(ErrorKind::Usage, "bad boolean expression");
}

ast::StmtP head_to_source(const Stm& s, const ir::MethodTable& t) {
  switch (s.kind) {
    case Stm::Kind::Skip:
      return ast::s_skip();
    case Stm::Kind::Await:
      return ast::s_await(t.attr_name(s.attr));
    case Stm::Kind::Assign: {
      const std::string& target = t.attr_name(s.attr);
      switch (s.rhs.kind) {
        case ir::Rhs::Kind::Val:
          return ast::s_assign(target, tv_to_source(s.rhs.val, t));
        case ir::Rhs::Kind::New:
          return ast::s_new(target);
        case ir::Rhs::Kind::Get:
          return ast::s_get(target, t.attr_name(s.rhs.from));
        case ir::Rhs::Kind::AsyncCall:
          return ast::s_async(target, t.attr_name(s.rhs.from), s.rhs.method,
                              attr_names(s.rhs.args, t));
        case ir::Rhs::Kind::SyncCall:
          return ast::s_sync(target, s.rhs.method, attr_names(s.rhs.args, t));
      }
      break;
    }
    case Stm::Kind::If:
      return ast::s_if(tb_to_source(s.cond, t), spine_to_source(s.thn, t, Stm::Kind::Hole),
                       spine_to_source(s.els, t, Stm::Kind::Hole));
    case Stm::Kind::While:
      return ast::s_while(tb_to_source(s.cond, t), spine_to_source(s.body, t, Stm::Kind::Hole));
    case Stm::Kind::Return:
      switch (s.wb.kind) {
        case ir::Wb::Kind::None:
          return ast::s_return(t.attr_name(s.attr), ast::ReturnMark::Star);
        case ir::Wb::Kind::Attr:
          return ast::s_return(t.attr_name(s.attr), ast::ReturnMark::WriteBack,
                               t.attr_name(s.wb.attr));
        case ir::Wb::Kind::Slot:
          throw Error(ErrorKind::IllFormedIR, "write-back slot left unbound");
      }
      break;
    case Stm::Kind::Exit:
    case Stm::Kind::Hole:
      throw Error(ErrorKind::IllFormedIR, "marker is not a statement");
  }
  throw Error(ErrorKind::Usage, "bad statement");
}

ast::StmtP stm_to_source(const StmP& s, const ir::MethodTable& table) {
  return spine_to_source(s, table, Stm::Kind::Exit);
}

}  // namespace actlang::decompile
