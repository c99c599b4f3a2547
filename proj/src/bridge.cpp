#include "bridge.hpp"

namespace actlang::bridge {

rt::RtConfig to_target(const sem::Config& c, const ir::MethodTable& table) {
  rt::RtConfig r;
  r.heap.attr_count = table.attr_count();
  r.heap.counter = c.heap.count;
  size_t cap = 16;
  while (cap < static_cast<size_t>(c.heap.count)) cap *= 2;
  r.heap.cells.resize(cap);

  for (const auto& [o, store] : c.heap.objects) {
    rt::Cell& cell = r.heap.cells.at(static_cast<size_t>(o));
    cell.kind = rt::Cell::Kind::Object;
    cell.obj.attrs.assign(static_cast<size_t>(table.attr_count()), 0);
    for (const auto& [name, value] : store.m) {
      auto it = table.attr_index.find(name);
      if (it == table.attr_index.end())
        throw Error(ErrorKind::UnknownAttribute, "attribute " + name + " has no layout slot");
      cell.obj.attrs[static_cast<size_t>(it->second)] = value;
    }
    auto qit = c.queues.find(o);
    if (qit != c.queues.end())
      for (const auto& cl : qit->second)
        cell.obj.procq.push_back({compiler::compile_closure_stmt(cl.stmt, table), cl.destiny});
  }

  for (const auto& [f, value] : c.heap.futures) {
    rt::Cell& cell = r.heap.cells.at(static_cast<size_t>(f));
    cell.kind = rt::Cell::Kind::Future;
    if (value.has_value()) {
      cell.fut.resolved = true;
      cell.fut.value = *value;
    }
  }

  for (Ref o = 0; o < r.heap.counter; o++)
    if (r.heap.is_object(o) && !r.heap.object(o).procq.empty()) r.sched.push_back(o);
  return r;
}

sem::Config from_target(const rt::RtConfig& r, const ir::MethodTable& table) {
  sem::Config c;
  c.heap.count = r.heap.counter;
  for (Ref ref = 0; ref < r.heap.counter; ref++) {
    const rt::Cell& cell = r.heap.cells.at(static_cast<size_t>(ref));
    switch (cell.kind) {
      case rt::Cell::Kind::Object: {
        sem::AttrStore store;
        for (size_t i = 0; i < cell.obj.attrs.size(); i++)
          if (cell.obj.attrs[i] != 0) store.m[table.attr_name(static_cast<int>(i))] =
              cell.obj.attrs[i];
        c.heap.objects[ref] = std::move(store);
        auto& q = c.queues[ref];
        for (const auto& p : cell.obj.procq)
          q.push_back({decompile::stm_to_source(p.stmt, table), p.destiny});
        break;
      }
      case rt::Cell::Kind::Future:
        c.heap.futures[ref] = cell.fut.resolved ? std::optional<Value>(cell.fut.value)
                                                : std::nullopt;
        break;
      case rt::Cell::Kind::Free:
        throw Error(ErrorKind::IllFormedIR,
                    "reference " + std::to_string(ref) + " below the counter is unallocated");
    }
  }
  return c;
}

Verdict check_trace(const std::vector<Step>& claimed, const ast::Program& p) {
  Verdict v;
  auto fail = [&](size_t i, const std::string& rule, std::string reason) {
    v.ok = false;
    v.failures.push_back({i, rule, std::move(reason)});
  };

  ir::MethodTable table = compiler::compile_program(p);
  rt::RtConfig r = rt::load(table);
  sem::Config src = from_target(r, table);

  for (size_t i = 0; i < claimed.size(); i++) {
    const Step& st = claimed[i];
    std::optional<Ref> pick = rt::next_object(r.heap, r.sched);
    if (!pick) {
      fail(i, rule_name(st.rule), "runtime has no runnable object here");
      break;
    }
    if (*pick != st.object) {
      fail(i, rule_name(st.rule),
           "scheduler picks object " + std::to_string(*pick) + ", trace claims " +
               std::to_string(st.object));
      break;
    }

    rt::EvalResult res = rt::eval(*pick, r.heap, table);
    r.sched = rt::updl(r.sched, *pick, res.activated);
    if (res.rule != st.rule || res.stmt != st.stmt || res.spawn != st.spawn) {
      fail(i, rule_name(st.rule),
           "replay executed " + std::string(rule_name(res.rule)) + " `" + res.stmt +
               "`, trace claims " + rule_name(st.rule) + " `" + st.stmt + "`");
      break;
    }

    if (!sem::enabled(src, st.object)) {
      fail(i, rule_name(st.rule),
           "source object " + std::to_string(st.object) + " is not enabled");
      break;
    }
    sem::StepResult sr = sem::step(src, p, st.object);
    if (sr.label.rule != st.rule || sr.label.stmt != st.stmt || sr.label.spawn != st.spawn) {
      fail(i, rule_name(st.rule),
           "source applied " + std::string(rule_name(sr.label.rule)) + " `" + sr.label.stmt +
               "`, runtime executed " + rule_name(st.rule) + " `" + st.stmt + "`");
      break;
    }

    sem::Config translated = from_target(r, table);
    if (!sem::config_eq(sr.config, translated)) {
      fail(i, rule_name(st.rule),
           "source successor configuration differs from the translated runtime state");
      break;
    }
    src = std::move(sr.config);
    v.steps_checked++;
  }
  return v;
}

}  // namespace actlang::bridge
