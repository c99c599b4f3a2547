#include "interp.hpp"

#include <algorithm>

namespace actlang::sem {

using ast::Stmt;
using ast::StmtP;

bool closure_eq(const Closure& a, const Closure& b) {
  return a.destiny == b.destiny && ast::stmt_eq(a.stmt, b.stmt);
}

bool config_eq(const Config& a, const Config& b) {
  if (!(a.heap == b.heap)) return false;
  if (a.queues.size() != b.queues.size()) return false;
  auto it = a.queues.begin();
  auto jt = b.queues.begin();
  for (; it != a.queues.end(); ++it, ++jt) {
    if (it->first != jt->first || it->second.size() != jt->second.size()) return false;
    for (size_t i = 0; i < it->second.size(); i++)
      if (!closure_eq(it->second[i], jt->second[i])) return false;
  }
  return true;
}

Value eval_value(const AttrStore& store, const ast::VExpr& v) {
  switch (v.kind) {
    case ast::VExpr::Kind::Attr: return store.get(v.name);
    case ast::VExpr::Kind::Param:
      throw Error(ErrorKind::IllFormedIR, "unsubstituted parameter " + v.name);
    case ast::VExpr::Kind::Lit: return v.lit;
    case ast::VExpr::Kind::Add: return checked_add(eval_value(store, *v.a), eval_value(store, *v.b));
    case ast::VExpr::Kind::Sub: return checked_sub(eval_value(store, *v.a), eval_value(store, *v.b));
  }
  throw Error(ErrorKind::Usage, "bad value expression");
}

bool eval_bool(const AttrStore& store, const ast::BExpr& b) {
  switch (b.kind) {
    case ast::BExpr::Kind::And: {
      bool x = eval_bool(store, *b.a);
      bool y = eval_bool(store, *b.b);
      return x && y;
    }
    case ast::BExpr::Kind::Or: {
      bool x = eval_bool(store, *b.a);
      bool y = eval_bool(store, *b.b);
      return x || y;
    }
    case ast::BExpr::Kind::Not: return !eval_bool(store, *b.a);
    case ast::BExpr::Kind::Eq:
      return eval_value(store, *b.va) == eval_value(store, *b.vb);
  }
  throw Error(ErrorKind::Usage, "bad boolean expression");
}

Config initial_config(const ast::Program& p) {
  Config c;
  c.heap.count = 2;
  c.heap.objects[0] = AttrStore{};
  c.heap.futures[1] = std::nullopt;
  c.queues[0].push_back({ast::mark_writeback(p.main().body, ast::ReturnMark::Star), 1});
  return c;
}

namespace {

const ast::MethodDecl& lookup_method(const ast::Program& p, const std::string& name,
                                     size_t n_args) {
  const ast::MethodDecl* m = p.find(name);
  if (!m) throw Error(ErrorKind::UnknownMethod, "unknown method " + name);
  if (m->params.size() != n_args)
    throw Error(ErrorKind::ArityMismatch,
                name + " expects " + std::to_string(m->params.size()) + " arguments, got " +
                    std::to_string(n_args));
  return *m;
}

// Instantiates a method body for a call: parameters replaced by argument
// values, final return marked for the call style.
StmtP call_body(const ast::Program& p, const std::string& name, const std::vector<Value>& args,
                ast::ReturnMark mark, const std::string& wb) {
  const ast::MethodDecl& m = lookup_method(p, name, args.size());
  std::map<std::string, Value> env;
  for (size_t i = 0; i < args.size(); i++) env[m.params[i]] = args[i];
  return ast::mark_writeback(ast::subst_params(m.body, env), mark, wb);
}

Ref object_ref(const Heap& h, Value v, const std::string& what) {
  if (!h.objects.count(v))
    throw Error(ErrorKind::DanglingRef, what + " does not reference an object");
  return v;
}

Ref future_ref(const Heap& h, Value v, const std::string& what) {
  if (!h.futures.count(v))
    throw Error(ErrorKind::DanglingRef, what + " does not reference a future");
  return v;
}

}  // namespace

bool enabled(const Config& c, Ref o) {
  auto it = c.queues.find(o);
  if (it == c.queues.end() || it->second.empty()) return false;
  auto [head, rest] = ast::split_first(it->second.front().stmt);
  if (head->kind == Stmt::Kind::Assign && head->rhs == Stmt::Rhs::Get) {
    const AttrStore& store = c.heap.objects.at(o);
    Value f = store.get(head->from);
    auto fit = c.heap.futures.find(f);
    if (fit != c.heap.futures.end() && !fit->second.has_value()) return false;
    // A non-future value is "enabled": stepping reports the dangling ref.
  }
  return true;
}

std::vector<Ref> enabled_objects(const Config& c) {
  std::vector<Ref> out;
  for (const auto& [o, q] : c.queues)
    if (!q.empty() && enabled(c, o)) out.push_back(o);
  return out;
}

namespace {

// Replaces the head process's statement; a process may never run out of
// statements because every body ends in a return.
void continue_with(std::vector<Closure>& q, const StmtP& rest) {
  if (!rest)
    throw Error(ErrorKind::IllFormedIR, "process ran past its final statement");
  q.front().stmt = rest;
}

Step step_mut(Config& c, const ast::Program& p, Ref o) {
  if (!enabled(c, o))
    throw Error(ErrorKind::NotEnabled, "object " + std::to_string(o) + " cannot step");

  std::vector<Closure>& q = c.queues.at(o);
  AttrStore& store = c.heap.objects.at(o);
  const Ref destiny = q.front().destiny;
  auto [head, rest] = ast::split_first(q.front().stmt);

  Step label;
  label.object = o;
  label.stmt = ast::render_stmt_inline(*head);

  switch (head->kind) {
    case Stmt::Kind::Assign:
      switch (head->rhs) {
        case Stmt::Rhs::Val: {
          Value v = eval_value(store, *head->val);
          store.set(head->target, v);
          continue_with(q, rest);
          label.rule = Rule::Assign;
          return label;
        }
        case Stmt::Rhs::New: {
          Ref m = c.heap.count;
          c.heap.count++;
          c.heap.objects[m] = AttrStore{};
          c.queues[m];  // new objects start with an empty queue
          c.heap.objects.at(o).set(head->target, m);
          continue_with(c.queues.at(o), rest);
          label.rule = Rule::New;
          return label;
        }
        case Stmt::Rhs::Get: {
          Ref f = future_ref(c.heap, store.get(head->from), head->from);
          const auto& cell = c.heap.futures.at(f);
          if (!cell.has_value())
            throw Error(ErrorKind::NotEnabled, "get on unresolved future");
          store.set(head->target, *cell);
          continue_with(q, rest);
          label.rule = Rule::Get;
          return label;
        }
        case Stmt::Rhs::Sync: {
          std::vector<Value> args;
          for (const auto& a : head->args) args.push_back(store.get(a));
          StmtP body = call_body(p, head->method, args, ast::ReturnMark::WriteBack, head->target);
          q.front().stmt = ast::seq_append(body, rest);
          label.rule = Rule::Sync;
          return label;
        }
      }
      break;

    case Stmt::Kind::Async: {
      Ref callee = object_ref(c.heap, store.get(head->from), head->from);
      std::vector<Value> args;
      for (const auto& a : head->args) args.push_back(store.get(a));
      Ref l = c.heap.count;
      c.heap.count++;
      c.heap.futures[l] = std::nullopt;
      store.set(head->target, l);
      StmtP body = call_body(p, head->method, args, ast::ReturnMark::Star, "");
      continue_with(q, rest);
      c.queues.at(callee).push_back({body, l});
      label.rule = Rule::Async;
      label.spawn = SpawnInfo{callee, head->method, l, args};
      return label;
    }

    case Stmt::Kind::Await: {
      Ref f = future_ref(c.heap, store.get(head->target), head->target);
      if (c.heap.futures.at(f).has_value()) {
        continue_with(q, rest);
        label.rule = Rule::AwaitI;
      } else {
        Closure cl = q.front();
        q.erase(q.begin());
        q.push_back(cl);
        label.rule = Rule::AwaitII;
      }
      return label;
    }

    case Stmt::Kind::Skip:
      continue_with(q, rest);
      label.rule = Rule::Skip;
      return label;

    case Stmt::Kind::Return:
      switch (head->mark) {
        case ast::ReturnMark::Star: {
          auto fit = c.heap.futures.find(destiny);
          if (fit == c.heap.futures.end())
            throw Error(ErrorKind::DanglingRef, "process destiny is not a future");
          fit->second = store.get(head->target);
          q.erase(q.begin());
          label.rule = Rule::ReturnA;
          return label;
        }
        case ast::ReturnMark::WriteBack: {
          store.set(head->wb, store.get(head->target));
          continue_with(q, rest);
          label.rule = Rule::ReturnS;
          return label;
        }
        case ast::ReturnMark::Unmarked:
          throw Error(ErrorKind::IllFormedIR, "unmarked return reached execution");
      }
      break;

    case Stmt::Kind::If: {
      bool b = eval_bool(store, *head->cond);
      q.front().stmt = ast::seq_append(b ? head->a : head->b, rest);
      label.rule = b ? Rule::IfT : Rule::IfF;
      return label;
    }

    case Stmt::Kind::While: {
      bool b = eval_bool(store, *head->cond);
      if (b) {
        StmtP tail = rest ? ast::s_seq(head, rest) : head;
        q.front().stmt = ast::seq_append(head->a, tail);
        label.rule = Rule::WhileT;
      } else {
        continue_with(q, rest);
        label.rule = Rule::WhileF;
      }
      return label;
    }

    case Stmt::Kind::Seq:
      break;  // unreachable: split_first never yields a Seq head
  }
  throw Error(ErrorKind::Usage, "unsteppable statement");
}

}  // namespace

StepResult step(const Config& c, const ast::Program& p, Ref o) {
  StepResult r{c, {}};
  r.label = step_mut(r.config, p, o);
  return r;
}

SchedulerPolicy random_policy() {
  return [](const Config&, const std::vector<Ref>& en, size_t, std::mt19937_64& rng) {
    return en[static_cast<size_t>(rng() % en.size())];
  };
}

SchedulerPolicy round_robin_policy() {
  auto last = std::make_shared<Ref>(-1);
  return [last](const Config&, const std::vector<Ref>& en, size_t, std::mt19937_64&) {
    // enabled_objects reports ascending refs; take the first one after the
    // previous pick, wrapping around.
    for (Ref o : en)
      if (o > *last) {
        *last = o;
        return o;
      }
    *last = en.front();
    return en.front();
  };
}

SchedulerPolicy scripted_policy(std::vector<Ref> script) {
  return [script = std::move(script)](const Config&, const std::vector<Ref>&, size_t i,
                                      std::mt19937_64&) {
    if (i >= script.size())
      throw Error(ErrorKind::Script, "scheduler script exhausted at step " + std::to_string(i));
    return script[i];
  };
}

SourceRun run(const ast::Program& p, const SchedulerPolicy& policy, std::uint64_t seed,
              std::uint64_t fuel) {
  SourceRun out;
  Config c = initial_config(p);
  std::mt19937_64 rng(seed);
  out.status = RunStatus::FuelExhausted;
  for (std::uint64_t i = 0; i < fuel; i++) {
    std::vector<Ref> en = enabled_objects(c);
    if (en.empty()) {
      bool all_empty = true;
      for (const auto& [o, q] : c.queues)
        if (!q.empty()) {
          all_empty = false;
          break;
        }
      out.status = all_empty ? RunStatus::Finished : RunStatus::Deadlock;
      break;
    }
    Ref pick = policy(c, en, out.steps.size(), rng);
    if (std::find(en.begin(), en.end(), pick) == en.end())
      throw Error(ErrorKind::Script,
                  "policy picked object " + std::to_string(pick) + " which is not enabled");
    out.steps.push_back(step_mut(c, p, pick));
  }
  if (out.status == RunStatus::FuelExhausted) {
    // Distinguish a run that stopped exactly at the end from exhaustion.
    std::vector<Ref> en = enabled_objects(c);
    if (en.empty()) {
      bool all_empty = true;
      for (const auto& [o, q] : c.queues)
        if (!q.empty()) {
          all_empty = false;
          break;
        }
      out.status = all_empty ? RunStatus::Finished : RunStatus::Deadlock;
    }
  }
  out.final = std::move(c);
  return out;
}

namespace {

std::string label_key(const std::vector<Step>& steps) {
  std::string key;
  for (const auto& s : steps) {
    key += std::to_string(s.object);
    key += ':';
    key += rule_name(s.rule);
    key += ':';
    key += s.stmt;
    key += '\n';
  }
  return key;
}

struct Enumerator {
  const ast::Program& p;
  std::size_t max_traces;
  std::set<std::string> seen;
  std::vector<std::vector<Step>> results;
  std::vector<Step> prefix;

  void record() {
    if (seen.insert(label_key(prefix)).second) {
      results.push_back(prefix);
      if (results.size() > max_traces)
        throw Error(ErrorKind::Explosion,
                    "more than " + std::to_string(max_traces) + " distinct traces");
    }
  }

  void go(const Config& c, std::uint64_t fuel_left) {
    std::vector<Ref> en = enabled_objects(c);
    if (en.empty() || fuel_left == 0) {
      record();
      return;
    }
    for (Ref o : en) {
      StepResult r = step(c, p, o);
      prefix.push_back(r.label);
      go(r.config, fuel_left - 1);
      prefix.pop_back();
    }
  }
};

}  // namespace

std::vector<std::vector<Step>> enumerate_traces(const ast::Program& p, std::uint64_t fuel,
                                                std::size_t max_traces) {
  Enumerator e{p, max_traces, {}, {}, {}};
  e.go(initial_config(p), fuel);
  return e.results;
}

}  // namespace actlang::sem
