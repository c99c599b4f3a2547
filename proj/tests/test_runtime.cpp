#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <map>
#include <string>
#include <vector>

#include "compiler.hpp"
#include "doctest.h"
#include "errors.hpp"
#include "ir.hpp"
#include "parser.hpp"
#include "runtime.hpp"

using namespace actlang;
using namespace actlang::rt;

namespace {

ir::MethodTable compile(const std::string& text) {
  return compiler::compile_program(parse::parse_program(text));
}

const char* kMapReduce = R"(
main() {
  v1 := 4;
  v2 := 38;
  node1 := new;
  node2 := new;
  f1 := node1!map(v1);
  f2 := node2!map(v2);
  await f1;
  await f2;
  r1 := f1.get;
  r2 := f2.get;
  r := reduce(r1, r2);
}
map(v) { r := v; return r; }
reduce(a, b) { r := a + b; return r; }
)";

std::map<Ref, int> per_object(const std::vector<Step>& steps) {
  std::map<Ref, int> counts;
  for (const auto& s : steps) counts[s.object]++;
  return counts;
}

}  // namespace

TEST_CASE("updl rotates past the chosen object and appends the activated list") {
  std::vector<Ref> s{1, 2, 3};
  CHECK(updl(s, 2, {2}) == std::vector<Ref>{3, 1, 2});
  CHECK(updl(s, 2, {}) == std::vector<Ref>{3, 1});
  CHECK(updl({1, 2}, 1, {1, 4}) == std::vector<Ref>{2, 1, 4});
  CHECK_THROWS_AS(updl(s, 9, {}), Error);
}

TEST_CASE("newq_add appends the callee only when it is not already queued") {
  CHECK(newq_add({1, 2, 3}, 2, 1) == std::vector<Ref>{3, 1, 2});
  CHECK(newq_add({1, 2}, 2, 5) == std::vector<Ref>{1, 2, 5});
  CHECK(newq_add({1}, 1, 1) == std::vector<Ref>{1});
}

TEST_CASE("newq_del drops the object once its queue is empty") {
  CHECK(newq_del({1, 2, 3}, 2, true) == std::vector<Ref>{3, 1});
  CHECK(newq_del({1, 2, 3}, 2, false) == std::vector<Ref>{3, 1, 2});
  CHECK(newq_del({1}, 1, true) == std::vector<Ref>{});
}

TEST_CASE("load allocates the root object and main's destiny") {
  ir::MethodTable t = compile("main() { skip; }");
  RtConfig c = load(t);
  CHECK(c.heap.counter == 2);
  CHECK(c.heap.is_object(0));
  CHECK(c.heap.is_future(1));
  CHECK(!c.heap.future(1).resolved);
  CHECK(c.sched == std::vector<Ref>{0});
  REQUIRE(c.heap.object(0).procq.size() == 1);
  CHECK(c.heap.object(0).procq.front().destiny == 1);
  CHECK(int(c.heap.object(0).attrs.size()) == t.attr_count());
}

TEST_CASE("allocation grows the cell array past its initial capacity") {
  ir::MethodTable t = compile("main() { skip; }");
  RtConfig c = load(t);
  for (int i = 0; i < 40; i++) {
    Ref o = c.heap.alloc_object();
    Ref f = c.heap.alloc_future();
    CHECK(c.heap.is_object(o));
    CHECK(c.heap.is_future(f));
  }
  CHECK(c.heap.counter == 82);
  CHECK(int(c.heap.object(80).attrs.size()) == t.attr_count());
}

TEST_CASE("eval is refused for blocked or empty objects") {
  ir::MethodTable t = compile("main() { o := new; f := o!m(); x := f.get; } m() { return z; }");
  RtConfig c = load(t);
  eval(0, c.heap, t);
  eval(0, c.heap, t);
  // Head of object 0 is now a get on an unresolved future.
  try {
    eval(0, c.heap, t);
    FAIL("expected not-enabled");
  } catch (const Error& e) {
    CHECK(e.kind == ErrorKind::NotEnabled);
  }
  CHECK_THROWS_AS(eval(3, c.heap, t), Error);
  CHECK(next_object(c.heap, {0, 2}) == 2);
}

TEST_CASE("async reports the callee as activated only on its first pending process") {
  ir::MethodTable t = compile(R"(
main() { o := new; f := o!m(); g := o!m(); }
m() { return z; }
)");
  RtConfig c = load(t);
  eval(0, c.heap, t);
  EvalResult first = eval(0, c.heap, t);
  CHECK(first.rule == Rule::Async);
  CHECK(first.activated == std::vector<Ref>{0, 2});
  EvalResult second = eval(0, c.heap, t);
  CHECK(second.activated == std::vector<Ref>{0});
  CHECK(c.heap.object(2).procq.size() == 2);
}

TEST_CASE("returning from the last process removes the object from the queue") {
  ir::MethodTable t = compile("main() { o := new; f := o!m(); } m() { return z; }");
  RtConfig c = load(t);
  RtRun r = run_rt(t, 100);
  CHECK(r.status == RunStatus::Finished);
  CHECK(r.final.sched.empty());
  CHECK(r.final.heap.future(1).resolved);
  CHECK(r.final.heap.future(3).resolved);
}

TEST_CASE("new objects are not scheduled until they receive work") {
  ir::MethodTable t = compile("main() { o := new; p := new; f := o!m(); } m() { return z; }");
  RtConfig c = load(t);
  eval(0, c.heap, t);
  EvalResult r = eval(0, c.heap, t);
  CHECK(r.rule == Rule::New);
  CHECK(r.activated == std::vector<Ref>{0});
}

TEST_CASE("the desk run matches the frozen nineteen step execution") {
  ir::MethodTable t = compile(kMapReduce);
  RtRun r = run_rt(t, 1000);
  CHECK(r.status == RunStatus::Finished);
  REQUIRE(r.steps.size() == 19);

  std::vector<Ref> order;
  for (const auto& s : r.steps) order.push_back(s.object);
  CHECK(order == std::vector<Ref>{0, 0, 0, 0, 0, 0, 2, 0, 3, 2, 0, 3, 0, 0, 0, 0, 0, 0, 0});

  auto counts = per_object(r.steps);
  CHECK(counts == std::map<Ref, int>{{0, 15}, {2, 2}, {3, 2}});

  int await2 = 0;
  for (const auto& s : r.steps)
    if (s.rule == Rule::AwaitII) await2++;
  CHECK(await2 == 1);
  CHECK(r.steps[7].rule == Rule::AwaitII);

  CHECK(r.final.heap.counter == 6);
  CHECK(r.final.heap.object(0).attrs[t.attr_index.at("r")] == 42);
  CHECK(r.final.heap.future(4).value == 4);
  CHECK(r.final.heap.future(5).value == 38);
  CHECK(r.final.heap.future(1).value == 0);
  CHECK(r.final.sched.empty());
}

TEST_CASE("runtime trace labels render like source statements") {
  ir::MethodTable t = compile(kMapReduce);
  RtRun r = run_rt(t, 1000);
  CHECK(r.steps[4].stmt == "f1 := node1!map(v1)");
  REQUIRE(r.steps[4].spawn.has_value());
  CHECK(r.steps[4].spawn->callee == 2);
  CHECK(r.steps[4].spawn->method == "map");
  CHECK(r.steps[4].spawn->destiny == 4);
  CHECK(r.steps[4].spawn->args == std::vector<Value>{4});
  CHECK(r.steps[7].stmt == "await f1");
  CHECK(r.steps[16].stmt == "r := 4 + 38");
  CHECK(r.steps[17].stmt == "return[r] r");
  CHECK(r.steps[18].stmt == "return* __unit");
}

TEST_CASE("await rotates the head process to the back of its queue") {
  // The waiter awaits the later call's destiny; references are allocated in
  // program order, so main can pass that future's ref (4) before issuing it.
  ir::MethodTable t = compile(R"(
main() {
  pred := 4;
  o := new;
  f := o!waiter(pred);
  g := o!later();
}
waiter(p) { w := p; await w; y := w.get; return y; }
later() { b := 7; return b; }
)");
  RtRun r = run_rt(t, 100);
  CHECK(r.status == RunStatus::Finished);
  std::vector<std::string> stmts;
  std::vector<Rule> rules;
  for (const auto& s : r.steps)
    if (s.object == 2) {
      stmts.push_back(s.stmt);
      rules.push_back(s.rule);
    }
  REQUIRE(stmts.size() >= 5);
  CHECK(stmts[0] == "w := 4");
  CHECK(stmts[1] == "await w");
  CHECK(rules[1] == Rule::AwaitII);
  CHECK(stmts[2] == "b := 7");
  CHECK(stmts[4] == "await w");
  CHECK(rules[4] == Rule::AwaitI);
  CHECK(stmts[5] == "y := w.get");
}

TEST_CASE("the mutual get program deadlocks") {
  ir::MethodTable t = compile(R"(
main() { me := 0; o := new; f := o!work(me); x := f.get; }
work(r) { c := r; g := c!noop(); y := g.get; return y; }
noop() { return u; }
)");
  RtRun r = run_rt(t, 1000);
  CHECK(r.status == RunStatus::Deadlock);
  CHECK(!r.final.sched.empty());
  CHECK(!next_object(r.final.heap, r.final.sched).has_value());
}

TEST_CASE("fuel exhaustion reports remaining work") {
  ir::MethodTable t = compile("main() { x := 0; while (x == 0) { skip; } }");
  RtRun r = run_rt(t, 50);
  CHECK(r.status == RunStatus::FuelExhausted);
  CHECK(r.steps.size() == 50);
}

TEST_CASE("a run that ends exactly at the fuel limit still finishes") {
  ir::MethodTable t = compile("main() { x := 2; y := x + 3; skip; }");
  RtRun r = run_rt(t, 4);
  CHECK(r.status == RunStatus::Finished);
  CHECK(r.steps.size() == 4);
}

TEST_CASE("heap equality ignores spare capacity") {
  ir::MethodTable t = compile(kMapReduce);
  RtConfig a = load(t);
  RtConfig b = load(t);
  b.heap.cells.resize(64);
  CHECK(heap_eq(a.heap, b.heap));
  CHECK(config_eq(a, b));
  eval(0, a.heap, t);
  CHECK(!heap_eq(a.heap, b.heap));
}

TEST_CASE("runs are deterministic") {
  ir::MethodTable t = compile(kMapReduce);
  RtRun a = run_rt(t, 1000);
  RtRun b = run_rt(t, 1000);
  REQUIRE(a.steps.size() == b.steps.size());
  for (size_t i = 0; i < a.steps.size(); i++) CHECK(a.steps[i] == b.steps[i]);
  CHECK(config_eq(a.final, b.final));
}
