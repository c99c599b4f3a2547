#include "ir.hpp"

namespace actlang::ir {

namespace {

std::shared_ptr<TV> tv_node(TV::Kind k) {
  auto n = std::make_shared<TV>();
  n->kind = k;
  return n;
}

std::shared_ptr<TB> tb_node(TB::Kind k) {
  auto n = std::make_shared<TB>();
  n->kind = k;
  return n;
}

std::shared_ptr<Stm> stm_node(Stm::Kind k) {
  auto n = std::make_shared<Stm>();
  n->kind = k;
  return n;
}

}  // namespace

TVP tv_attr(int idx) {
  auto n = tv_node(TV::Kind::Attr);
  n->idx = idx;
  return n;
}

TVP tv_param(int slot) {
  auto n = tv_node(TV::Kind::Param);
  n->idx = slot;
  return n;
}

TVP tv_lit(Value v) {
  auto n = tv_node(TV::Kind::Lit);
  n->lit = v;
  return n;
}

TVP tv_add(TVP a, TVP b) {
  auto n = tv_node(TV::Kind::Add);
  n->a = std::move(a);
  n->b = std::move(b);
  return n;
}

TVP tv_sub(TVP a, TVP b) {
  auto n = tv_node(TV::Kind::Sub);
  n->a = std::move(a);
  n->b = std::move(b);
  return n;
}

TBP tb_and(TBP a, TBP b) {
  auto n = tb_node(TB::Kind::And);
  n->a = std::move(a);
  n->b = std::move(b);
  return n;
}

TBP tb_or(TBP a, TBP b) {
  auto n = tb_node(TB::Kind::Or);
  n->a = std::move(a);
  n->b = std::move(b);
  return n;
}

TBP tb_not(TBP a) {
  auto n = tb_node(TB::Kind::Not);
  n->a = std::move(a);
  return n;
}

TBP tb_eq(TVP a, TVP b) {
  auto n = tb_node(TB::Kind::Eq);
  n->va = std::move(a);
  n->vb = std::move(b);
  return n;
}

Rhs rhs_val(TVP v) {
  Rhs r;
  r.kind = Rhs::Kind::Val;
  r.val = std::move(v);
  return r;
}

Rhs rhs_new() {
  Rhs r;
  r.kind = Rhs::Kind::New;
  return r;
}

Rhs rhs_get(int fut) {
  Rhs r;
  r.kind = Rhs::Kind::Get;
  r.from = fut;
  return r;
}

Rhs rhs_async(int callee, std::string method, std::vector<int> args) {
  Rhs r;
  r.kind = Rhs::Kind::AsyncCall;
  r.from = callee;
  r.method = std::move(method);
  r.args = std::move(args);
  return r;
}

Rhs rhs_sync(std::string method, std::vector<int> args) {
  Rhs r;
  r.kind = Rhs::Kind::SyncCall;
  r.method = std::move(method);
  r.args = std::move(args);
  return r;
}

StmP t_skip(StmP k) {
  auto n = stm_node(Stm::Kind::Skip);
  n->k = std::move(k);
  return n;
}

StmP t_await(int fut, StmP k) {
  auto n = stm_node(Stm::Kind::Await);
  n->attr = fut;
  n->k = std::move(k);
  return n;
}

StmP t_assign(int target, Rhs rhs, StmP k) {
  auto n = stm_node(Stm::Kind::Assign);
  n->attr = target;
  n->rhs = std::move(rhs);
  n->k = std::move(k);
  return n;
}

StmP t_if(TBP cond, StmP thn, StmP els, StmP k) {
  auto n = stm_node(Stm::Kind::If);
  n->cond = std::move(cond);
  n->thn = std::move(thn);
  n->els = std::move(els);
  n->k = std::move(k);
  return n;
}

StmP t_while(TBP cond, StmP body, StmP k) {
  auto n = stm_node(Stm::Kind::While);
  n->cond = std::move(cond);
  n->body = std::move(body);
  n->k = std::move(k);
  return n;
}

StmP t_return(int attr, Wb wb, StmP k) {
  auto n = stm_node(Stm::Kind::Return);
  n->attr = attr;
  n->wb = wb;
  n->k = std::move(k);
  return n;
}

StmP t_exit() { return stm_node(Stm::Kind::Exit); }
StmP t_hole() { return stm_node(Stm::Kind::Hole); }

bool tv_eq(const TVP& x, const TVP& y) {
  if (!x || !y) return !x && !y;
  if (x->kind != y->kind) return false;
  switch (x->kind) {
    case TV::Kind::Attr:
    case TV::Kind::Param:
      return x->idx == y->idx;
    case TV::Kind::Lit:
      return x->lit == y->lit;
    case TV::Kind::Add:
    case TV::Kind::Sub:
      return tv_eq(x->a, y->a) && tv_eq(x->b, y->b);
  }
  return false;
}

bool tb_eq(const TBP& x, const TBP& y) {
  if (!x || !y) return !x && !y;
  if (x->kind != y->kind) return false;
  switch (x->kind) {
    case TB::Kind::And:
    case TB::Kind::Or:
      return tb_eq(x->a, y->a) && tb_eq(x->b, y->b);
    case TB::Kind::Not:
      return tb_eq(x->a, y->a);
    case TB::Kind::Eq:
      return tv_eq(x->va, y->va) && tv_eq(x->vb, y->vb);
  }
  return false;
}

bool rhs_eq(const Rhs& x, const Rhs& y) {
  if (x.kind != y.kind) return false;
  switch (x.kind) {
    case Rhs::Kind::Val: return tv_eq(x.val, y.val);
    case Rhs::Kind::New: return true;
    case Rhs::Kind::Get: return x.from == y.from;
    case Rhs::Kind::AsyncCall:
      return x.from == y.from && x.method == y.method && x.args == y.args;
    case Rhs::Kind::SyncCall:
      return x.method == y.method && x.args == y.args;
  }
  return false;
}

bool stm_eq(const StmP& x, const StmP& y) {
  if (!x || !y) return !x && !y;
  if (x == y) return true;
  if (x->kind != y->kind) return false;
  switch (x->kind) {
    case Stm::Kind::Skip:
      return stm_eq(x->k, y->k);
    case Stm::Kind::Await:
      return x->attr == y->attr && stm_eq(x->k, y->k);
    case Stm::Kind::Assign:
      return x->attr == y->attr && rhs_eq(x->rhs, y->rhs) && stm_eq(x->k, y->k);
    case Stm::Kind::If:
      return tb_eq(x->cond, y->cond) && stm_eq(x->thn, y->thn) && stm_eq(x->els, y->els) &&
             stm_eq(x->k, y->k);
    case Stm::Kind::While:
      return tb_eq(x->cond, y->cond) && stm_eq(x->body, y->body) && stm_eq(x->k, y->k);
    case Stm::Kind::Return:
      return x->attr == y->attr && x->wb == y->wb && stm_eq(x->k, y->k);
    case Stm::Kind::Exit:
    case Stm::Kind::Hole:
      return true;
  }
  return false;
}

StmP splice(const StmP& s, const StmP& k) {
  if (!s) throw Error(ErrorKind::IllFormedIR, "splice into a null statement");
  switch (s->kind) {
    case Stm::Kind::Hole:
      return k;
    case Stm::Kind::Exit:
      throw Error(ErrorKind::IllFormedIR, "splice reached an exit marker");
    default: {
      auto n = std::make_shared<Stm>(*s);
      n->k = splice(s->k, k);
      return n;
    }
  }
}

namespace {

TVP bind_tv(const TVP& v, const std::vector<Value>& args) {
  if (!v) return v;
  switch (v->kind) {
    case TV::Kind::Param:
      if (v->idx < 0 || static_cast<size_t>(v->idx) >= args.size())
        throw Error(ErrorKind::IllFormedIR,
                    "parameter slot " + std::to_string(v->idx) + " out of range");
      return tv_lit(args[static_cast<size_t>(v->idx)]);
    case TV::Kind::Add:
      return tv_add(bind_tv(v->a, args), bind_tv(v->b, args));
    case TV::Kind::Sub:
      return tv_sub(bind_tv(v->a, args), bind_tv(v->b, args));
    default:
      return v;
  }
}

TBP bind_tb(const TBP& b, const std::vector<Value>& args) {
  if (!b) return b;
  switch (b->kind) {
    case TB::Kind::And: return tb_and(bind_tb(b->a, args), bind_tb(b->b, args));
    case TB::Kind::Or: return tb_or(bind_tb(b->a, args), bind_tb(b->b, args));
    case TB::Kind::Not: return tb_not(bind_tb(b->a, args));
    case TB::Kind::Eq: return tb_eq(bind_tv(b->va, args), bind_tv(b->vb, args));
  }
  return b;
}

}  // namespace

StmP bind(const StmP& s, const std::vector<Value>& args, const Wb& wb) {
  if (!s) return s;
  switch (s->kind) {
    case Stm::Kind::Exit:
    case Stm::Kind::Hole:
      return s;
    default:
      break;
  }
  auto n = std::make_shared<Stm>(*s);
  switch (s->kind) {
    case Stm::Kind::Assign:
      if (s->rhs.kind == Rhs::Kind::Val) n->rhs.val = bind_tv(s->rhs.val, args);
      break;
    case Stm::Kind::If:
      n->cond = bind_tb(s->cond, args);
      n->thn = bind(s->thn, args, wb);
      n->els = bind(s->els, args, wb);
      break;
    case Stm::Kind::While:
      n->cond = bind_tb(s->cond, args);
      n->body = bind(s->body, args, wb);
      break;
    case Stm::Kind::Return:
      if (s->wb.kind == Wb::Kind::Slot) n->wb = wb;
      break;
    default:
      break;
  }
  n->k = bind(s->k, args, wb);
  return n;
}

namespace {

std::string join_args(const std::vector<int>& args) {
  std::string out = "(";
  for (size_t i = 0; i < args.size(); i++) {
    if (i) out += ' ';
    out += std::to_string(args[i]);
  }
  out += ')';
  return out;
}

std::string rhs_sexpr(const Rhs& r) {
  switch (r.kind) {
    case Rhs::Kind::Val: return "(val " + tv_sexpr(*r.val) + ")";
    case Rhs::Kind::New: return "new";
    case Rhs::Kind::Get: return "(get " + std::to_string(r.from) + ")";
    case Rhs::Kind::AsyncCall:
      return "(async " + std::to_string(r.from) + " " + r.method + " " + join_args(r.args) + ")";
    case Rhs::Kind::SyncCall:
      return "(sync " + r.method + " " + join_args(r.args) + ")";
  }
  return "?";
}

std::string wb_sexpr(const Wb& wb) {
  switch (wb.kind) {
    case Wb::Kind::Slot: return "slot";
    case Wb::Kind::None: return "none";
    case Wb::Kind::Attr: return "(attr " + std::to_string(wb.attr) + ")";
  }
  return "?";
}

}  // namespace

std::string tv_sexpr(const TV& v) {
  switch (v.kind) {
    case TV::Kind::Attr: return "(a " + std::to_string(v.idx) + ")";
    case TV::Kind::Param: return "(p " + std::to_string(v.idx) + ")";
    case TV::Kind::Lit: return "(i " + std::to_string(v.lit) + ")";
    case TV::Kind::Add: return "(add " + tv_sexpr(*v.a) + " " + tv_sexpr(*v.b) + ")";
    case TV::Kind::Sub: return "(sub " + tv_sexpr(*v.a) + " " + tv_sexpr(*v.b) + ")";
  }
  return "?";
}

std::string tb_sexpr(const TB& b) {
  switch (b.kind) {
    case TB::Kind::And: return "(and " + tb_sexpr(*b.a) + " " + tb_sexpr(*b.b) + ")";
    case TB::Kind::Or: return "(or " + tb_sexpr(*b.a) + " " + tb_sexpr(*b.b) + ")";
    case TB::Kind::Not: return "(not " + tb_sexpr(*b.a) + ")";
    case TB::Kind::Eq: return "(eq " + tv_sexpr(*b.va) + " " + tv_sexpr(*b.vb) + ")";
  }
  return "?";
}

std::string head_form(const Stm& s) {
  switch (s.kind) {
    case Stm::Kind::Skip: return "(skip)";
    case Stm::Kind::Await: return "(await " + std::to_string(s.attr) + ")";
    case Stm::Kind::Assign:
      return "(assign " + std::to_string(s.attr) + " " + rhs_sexpr(s.rhs) + ")";
    case Stm::Kind::If: return "(if " + tb_sexpr(*s.cond) + ")";
    case Stm::Kind::While: return "(while " + tb_sexpr(*s.cond) + ")";
    case Stm::Kind::Return:
      return "(return " + std::to_string(s.attr) + " " + wb_sexpr(s.wb) + ")";
    case Stm::Kind::Exit: return "(exit)";
    case Stm::Kind::Hole: return "(hole)";
  }
  return "?";
}

std::string dump_stm(const StmP& s, int indent) {
  std::string pad(static_cast<size_t>(indent) * 2, ' ');
  if (!s) return pad + "(null)\n";
  std::string out = pad + head_form(*s) + "\n";
  if (s->kind == Stm::Kind::If) {
    out += pad + "  (then\n" + dump_stm(s->thn, indent + 2) + pad + "  )\n";
    out += pad + "  (else\n" + dump_stm(s->els, indent + 2) + pad + "  )\n";
  } else if (s->kind == Stm::Kind::While) {
    out += pad + "  (body\n" + dump_stm(s->body, indent + 2) + pad + "  )\n";
  }
  if (s->k) out += dump_stm(s->k, indent);
  return out;
}

const CompiledMethod& MethodTable::method(const std::string& name) const {
  auto it = by_name.find(name);
  if (it == by_name.end())
    throw Error(ErrorKind::UnknownMethod, "unknown method " + name);
  return methods[it->second];
}

const std::string& MethodTable::attr_name(int idx) const {
  if (idx < 0 || static_cast<size_t>(idx) >= attr_names.size())
    throw Error(ErrorKind::UnknownAttribute,
                "attribute index " + std::to_string(idx) + " out of range");
  return attr_names[static_cast<size_t>(idx)];
}

StmP instantiate(const MethodTable& table, const std::string& method,
                 const std::vector<Value>& args, Ref self, std::optional<int> wb, StmP k) {
  (void)self;
  const CompiledMethod& m = table.method(method);
  if (args.size() != m.arity())
    throw Error(ErrorKind::ArityMismatch,
                method + " expects " + std::to_string(m.arity()) + " arguments, got " +
                    std::to_string(args.size()));
  Wb w = wb.has_value() ? wb_attr(*wb) : wb_none();
  return splice(bind(m.body, args, w), k);
}

std::string dump_table(const MethodTable& table) {
  std::string out = "(layout";
  for (size_t i = 0; i < table.attr_names.size(); i++)
    out += " (" + table.attr_names[i] + " " + std::to_string(i) + ")";
  out += ")\n";
  for (const auto& m : table.methods) {
    out += "(method " + m.name + " (arity " + std::to_string(m.arity()) + ")\n";
    out += dump_stm(m.body, 1);
    out += ")\n";
  }
  return out;
}

}  // namespace actlang::ir
