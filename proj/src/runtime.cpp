#include "runtime.hpp"

#include <algorithm>

#include "arith.hpp"
#include "decompile.hpp"

namespace actlang::rt {

using ir::Stm;
using ir::StmP;

bool RtHeap::is_object(Ref r) const {
  return r >= 0 && r < counter && cells[static_cast<size_t>(r)].kind == Cell::Kind::Object;
}

bool RtHeap::is_future(Ref r) const {
  return r >= 0 && r < counter && cells[static_cast<size_t>(r)].kind == Cell::Kind::Future;
}

ObjCell& RtHeap::object(Ref r) {
  if (!is_object(r))
    throw Error(ErrorKind::DanglingRef, std::to_string(r) + " does not reference an object");
  return cells[static_cast<size_t>(r)].obj;
}

const ObjCell& RtHeap::object(Ref r) const {
  if (!is_object(r))
    throw Error(ErrorKind::DanglingRef, std::to_string(r) + " does not reference an object");
  return cells[static_cast<size_t>(r)].obj;
}

FutCell& RtHeap::future(Ref r) {
  if (!is_future(r))
    throw Error(ErrorKind::DanglingRef, std::to_string(r) + " does not reference a future");
  return cells[static_cast<size_t>(r)].fut;
}

const FutCell& RtHeap::future(Ref r) const {
  if (!is_future(r))
    throw Error(ErrorKind::DanglingRef, std::to_string(r) + " does not reference a future");
  return cells[static_cast<size_t>(r)].fut;
}

namespace {

void grow_for(RtHeap& h, Ref r) {
  size_t need = static_cast<size_t>(r) + 1;
  if (h.cells.size() >= need) return;
  size_t cap = h.cells.empty() ? 16 : h.cells.size();
  while (cap < need) cap *= 2;
  h.cells.resize(cap);
}

}  // namespace

Ref RtHeap::alloc_object() {
  Ref r = counter++;
  grow_for(*this, r);
  Cell& c = cells[static_cast<size_t>(r)];
  c.kind = Cell::Kind::Object;
  c.obj.attrs.assign(static_cast<size_t>(attr_count), 0);
  return r;
}

Ref RtHeap::alloc_future() {
  Ref r = counter++;
  grow_for(*this, r);
  cells[static_cast<size_t>(r)].kind = Cell::Kind::Future;
  return r;
}

bool heap_eq(const RtHeap& a, const RtHeap& b) {
  if (a.counter != b.counter || a.attr_count != b.attr_count) return false;
  for (Ref r = 0; r < a.counter; r++) {
    const Cell& x = a.cells[static_cast<size_t>(r)];
    const Cell& y = b.cells[static_cast<size_t>(r)];
    if (x.kind != y.kind) return false;
    switch (x.kind) {
      case Cell::Kind::Free:
        break;
      case Cell::Kind::Object: {
        if (x.obj.attrs != y.obj.attrs || x.obj.procq.size() != y.obj.procq.size())
          return false;
        for (size_t i = 0; i < x.obj.procq.size(); i++)
          if (x.obj.procq[i].destiny != y.obj.procq[i].destiny ||
              !ir::stm_eq(x.obj.procq[i].stmt, y.obj.procq[i].stmt))
            return false;
        break;
      }
      case Cell::Kind::Future:
        if (x.fut.resolved != y.fut.resolved || x.fut.listeners != y.fut.listeners ||
            (x.fut.resolved && x.fut.value != y.fut.value))
          return false;
        break;
    }
  }
  return true;
}

bool config_eq(const RtConfig& a, const RtConfig& b) {
  return a.sched == b.sched && heap_eq(a.heap, b.heap);
}

namespace {

bool blocked(const RtHeap& h, Ref o) {
  const ObjCell& oc = h.object(o);
  if (oc.procq.empty()) return true;
  const Stm& s = *oc.procq.front().stmt;
  if (s.kind != Stm::Kind::Assign || s.rhs.kind != ir::Rhs::Kind::Get) return false;
  Value f = oc.attrs.at(static_cast<size_t>(s.rhs.from));
  // A non-future value is not "blocked": eval reports the dangling ref.
  return h.is_future(f) && !h.future(f).resolved;
}

}  // namespace

std::optional<Ref> next_object(const RtHeap& h, const std::vector<Ref>& sched) {
  for (Ref o : sched)
    if (!blocked(h, o)) return o;
  return std::nullopt;
}

std::vector<Ref> updl(const std::vector<Ref>& sched, Ref o, const std::vector<Ref>& l) {
  auto it = std::find(sched.begin(), sched.end(), o);
  if (it == sched.end())
    throw Error(ErrorKind::UnknownObject,
                "object " + std::to_string(o) + " is not in the scheduler queue");
  std::vector<Ref> out;
  out.reserve(sched.size() + l.size());
  out.insert(out.end(), it + 1, sched.end());
  out.insert(out.end(), sched.begin(), it);
  out.insert(out.end(), l.begin(), l.end());
  return out;
}

std::vector<Ref> newq_add(const std::vector<Ref>& sched, Ref o, Ref callee) {
  bool listed = std::find(sched.begin(), sched.end(), callee) != sched.end();
  if (listed) return updl(sched, o, {o});
  return updl(sched, o, {o, callee});
}

std::vector<Ref> newq_del(const std::vector<Ref>& sched, Ref o, bool queue_empty) {
  if (queue_empty) return updl(sched, o, {});
  return updl(sched, o, {o});
}

namespace {

Value attr_at(const std::vector<Value>& attrs, int idx) {
  if (idx < 0 || static_cast<size_t>(idx) >= attrs.size())
    throw Error(ErrorKind::IllFormedIR,
                "attribute index " + std::to_string(idx) + " out of range");
  return attrs[static_cast<size_t>(idx)];
}

Value eval_tv(const std::vector<Value>& attrs, const ir::TV& v) {
  switch (v.kind) {
    case ir::TV::Kind::Attr: return attr_at(attrs, v.idx);
    case ir::TV::Kind::Param:
      throw Error(ErrorKind::IllFormedIR, "unbound parameter slot " + std::to_string(v.idx));
    case ir::TV::Kind::Lit: return v.lit;
    case ir::TV::Kind::Add: return checked_add(eval_tv(attrs, *v.a), eval_tv(attrs, *v.b));
    case ir::TV::Kind::Sub: return checked_sub(eval_tv(attrs, *v.a), eval_tv(attrs, *v.b));
  }
  throw Error(ErrorKind::Usage, "bad value expression");
}

bool eval_tb(const std::vector<Value>& attrs, const ir::TB& b) {
  switch (b.kind) {
    case ir::TB::Kind::And: {
      bool x = eval_tb(attrs, *b.a);
      bool y = eval_tb(attrs, *b.b);
      return x && y;
    }
    case ir::TB::Kind::Or: {
      bool x = eval_tb(attrs, *b.a);
      bool y = eval_tb(attrs, *b.b);
      return x || y;
    }
    case ir::TB::Kind::Not: return !eval_tb(attrs, *b.a);
    case ir::TB::Kind::Eq: return eval_tv(attrs, *b.va) == eval_tv(attrs, *b.vb);
  }
  throw Error(ErrorKind::Usage, "bad boolean expression");
}

void set_attr(std::vector<Value>& attrs, int idx, Value v) {
  if (idx < 0 || static_cast<size_t>(idx) >= attrs.size())
    throw Error(ErrorKind::IllFormedIR,
                "attribute index " + std::to_string(idx) + " out of range");
  attrs[static_cast<size_t>(idx)] = v;
}

}  // namespace

EvalResult eval(Ref o, RtHeap& h, const ir::MethodTable& table) {
  {
    const ObjCell& oc = h.object(o);
    if (oc.procq.empty())
      throw Error(ErrorKind::NotEnabled, "object " + std::to_string(o) + " has no process");
    if (blocked(h, o))
      throw Error(ErrorKind::NotEnabled,
                  "object " + std::to_string(o) + " is blocked on an unresolved future");
  }

  // Keep the head statement alive across queue mutations.
  StmP head = h.object(o).procq.front().stmt;
  const Stm& s = *head;

  EvalResult res;
  res.stmt = ast::render_stmt_inline(*decompile::head_to_source(s, table));
  res.activated = {o};

  switch (s.kind) {
    case Stm::Kind::Assign:
      switch (s.rhs.kind) {
        case ir::Rhs::Kind::Val: {
          ObjCell& oc = h.object(o);
          set_attr(oc.attrs, s.attr, eval_tv(oc.attrs, *s.rhs.val));
          oc.procq.front().stmt = s.k;
          res.rule = Rule::Assign;
          return res;
        }
        case ir::Rhs::Kind::New: {
          Ref m = h.alloc_object();
          ObjCell& oc = h.object(o);
          set_attr(oc.attrs, s.attr, m);
          oc.procq.front().stmt = s.k;
          res.rule = Rule::New;
          return res;
        }
        case ir::Rhs::Kind::Get: {
          ObjCell& oc = h.object(o);
          Value f = attr_at(oc.attrs, s.rhs.from);
          const FutCell& fc = h.future(f);
          if (!fc.resolved)
            throw Error(ErrorKind::NotEnabled, "get on unresolved future");
          set_attr(oc.attrs, s.attr, fc.value);
          oc.procq.front().stmt = s.k;
          res.rule = Rule::Get;
          return res;
        }
        case ir::Rhs::Kind::AsyncCall: {
          Ref callee;
          std::vector<Value> args;
          {
            ObjCell& oc = h.object(o);
            Value c = attr_at(oc.attrs, s.rhs.from);
            if (!h.is_object(c))
              throw Error(ErrorKind::DanglingRef,
                          table.attr_name(s.rhs.from) + " does not reference an object");
            callee = c;
            args.reserve(s.rhs.args.size());
            for (int a : s.rhs.args) args.push_back(attr_at(oc.attrs, a));
          }
          Ref l = h.alloc_future();
          StmP body = ir::instantiate(table, s.rhs.method, args, callee, std::nullopt,
                                      ir::t_exit());
          ObjCell& oc = h.object(o);
          set_attr(oc.attrs, s.attr, l);
          oc.procq.front().stmt = s.k;
          ObjCell& cc = h.object(callee);
          bool already = !cc.procq.empty();  // self-calls land here: o is running
          cc.procq.push_back({body, l});
          if (!already) res.activated.push_back(callee);
          res.spawn = SpawnInfo{callee, s.rhs.method, l, args};
          res.rule = Rule::Async;
          return res;
        }
        case ir::Rhs::Kind::SyncCall: {
          ObjCell& oc = h.object(o);
          std::vector<Value> args;
          args.reserve(s.rhs.args.size());
          for (int a : s.rhs.args) args.push_back(attr_at(oc.attrs, a));
          oc.procq.front().stmt =
              ir::instantiate(table, s.rhs.method, args, o, s.attr, s.k);
          res.rule = Rule::Sync;
          return res;
        }
      }
      break;

    case Stm::Kind::Await: {
      ObjCell& oc = h.object(o);
      Value f = attr_at(oc.attrs, s.attr);
      const FutCell& fc = h.future(f);
      if (fc.resolved) {
        oc.procq.front().stmt = s.k;
        res.rule = Rule::AwaitI;
      } else {
        Proc p = oc.procq.front();
        oc.procq.pop_front();
        oc.procq.push_back(std::move(p));
        res.rule = Rule::AwaitII;
      }
      return res;
    }

    case Stm::Kind::Skip: {
      h.object(o).procq.front().stmt = s.k;
      res.rule = Rule::Skip;
      return res;
    }

    case Stm::Kind::Return:
      switch (s.wb.kind) {
        case ir::Wb::Kind::None: {
          ObjCell& oc = h.object(o);
          Value v = attr_at(oc.attrs, s.attr);
          FutCell& fc = h.future(oc.procq.front().destiny);
          if (fc.resolved)
            throw Error(ErrorKind::IllFormedIR, "destiny future resolved twice");
          fc.resolved = true;
          fc.value = v;
          fc.listeners.clear();
          oc.procq.pop_front();
          res.activated = oc.procq.empty() ? std::vector<Ref>{} : std::vector<Ref>{o};
          res.rule = Rule::ReturnA;
          return res;
        }
        case ir::Wb::Kind::Attr: {
          ObjCell& oc = h.object(o);
          set_attr(oc.attrs, s.wb.attr, attr_at(oc.attrs, s.attr));
          oc.procq.front().stmt = s.k;
          res.rule = Rule::ReturnS;
          return res;
        }
        case ir::Wb::Kind::Slot:
          throw Error(ErrorKind::IllFormedIR, "write-back slot reached execution");
      }
      break;

    case Stm::Kind::If: {
      ObjCell& oc = h.object(o);
      bool b = eval_tb(oc.attrs, *s.cond);
      oc.procq.front().stmt = ir::splice(b ? s.thn : s.els, s.k);
      res.rule = b ? Rule::IfT : Rule::IfF;
      return res;
    }

    case Stm::Kind::While: {
      ObjCell& oc = h.object(o);
      bool b = eval_tb(oc.attrs, *s.cond);
      if (b) {
        oc.procq.front().stmt = ir::splice(s.body, head);
        res.rule = Rule::WhileT;
      } else {
        oc.procq.front().stmt = s.k;
        res.rule = Rule::WhileF;
      }
      return res;
    }

    case Stm::Kind::Exit:
      throw Error(ErrorKind::IllFormedIR, "exit marker reached execution");
    case Stm::Kind::Hole:
      throw Error(ErrorKind::IllFormedIR, "hole reached execution");
  }
  throw Error(ErrorKind::Usage, "unsteppable statement");
}

RtConfig load(const ir::MethodTable& table) {
  RtConfig c;
  c.heap.attr_count = table.attr_count();
  Ref o = c.heap.alloc_object();
  Ref f = c.heap.alloc_future();
  c.heap.object(o).procq.push_back(
      {ir::instantiate(table, "main", {}, o, std::nullopt, ir::t_exit()), f});
  c.sched = {o};
  return c;
}

RtRun run_rt(const ir::MethodTable& table, std::uint64_t fuel) {
  RtRun out;
  RtConfig c = load(table);
  out.status = RunStatus::FuelExhausted;
  for (std::uint64_t i = 0; i <= fuel; i++) {
    std::optional<Ref> o = next_object(c.heap, c.sched);
    if (!o) {
      out.status = c.sched.empty() ? RunStatus::Finished : RunStatus::Deadlock;
      break;
    }
    if (i == fuel) break;  // a step remains: the budget is genuinely exhausted
    EvalResult res = eval(*o, c.heap, table);
    c.sched = updl(c.sched, *o, res.activated);
    out.steps.push_back({*o, res.rule, res.stmt, res.spawn});
  }
  out.final = std::move(c);
  return out;
}

}  // namespace actlang::rt
