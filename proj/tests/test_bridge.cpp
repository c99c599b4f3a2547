#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <string>
#include <vector>

#include "bridge.hpp"
#include "compiler.hpp"
#include "doctest.h"
#include "errors.hpp"
#include "interp.hpp"
#include "parser.hpp"
#include "runtime.hpp"

using namespace actlang;

namespace {

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

ast::Program parse_text(const std::string& text) { return parse::parse_program(text); }

}  // namespace

TEST_CASE("loading the runtime equals translating the initial configuration") {
  ast::Program p = parse_text(kMapReduce);
  ir::MethodTable t = compiler::compile_program(p);
  sem::Config init = sem::initial_config(p);
  CHECK(rt::config_eq(bridge::to_target(init, t), rt::load(t)));
  CHECK(sem::config_eq(bridge::from_target(rt::load(t), t), init));
}

TEST_CASE("translation round trips on every configuration of a full run") {
  ast::Program p = parse_text(kMapReduce);
  ir::MethodTable t = compiler::compile_program(p);
  sem::Config c = sem::initial_config(p);
  int checked = 0;
  for (;;) {
    sem::Config back = bridge::from_target(bridge::to_target(c, t), t);
    CHECK(sem::config_eq(back, c));
    checked++;
    auto en = sem::enabled_objects(c);
    if (en.empty()) break;
    c = sem::step(c, p, en[checked % en.size()]).config;
  }
  CHECK(checked >= 19);
}

TEST_CASE("the scheduler queue lists pending objects in ascending order") {
  ast::Program p = parse_text(kMapReduce);
  ir::MethodTable t = compiler::compile_program(p);
  sem::Config c = sem::initial_config(p);
  for (int i = 0; i < 6; i++) c = sem::step(c, p, 0).config;
  // Both node objects now hold pending processes.
  rt::RtConfig r = bridge::to_target(c, t);
  CHECK(r.sched == std::vector<Ref>{0, 2, 3});
  CHECK(r.heap.object(0).attrs[t.attr_index.at("v1")] == 4);
  CHECK(r.heap.object(0).attrs[t.attr_index.at("v2")] == 38);
  CHECK(r.heap.object(2).procq.size() == 1);
}

TEST_CASE("decompiling a freed reference below the counter is rejected") {
  ir::MethodTable t = compiler::compile_program(parse_text(kMapReduce));
  rt::RtConfig c = rt::load(t);
  c.heap.counter = 3;
  try {
    bridge::from_target(c, t);
    FAIL("expected ill-formed heap");
  } catch (const Error& e) {
    CHECK(e.kind == ErrorKind::IllFormedIR);
  }
}

TEST_CASE("the runtime trace of the desk program is sound") {
  ast::Program p = parse_text(kMapReduce);
  rt::RtRun run = rt::run_rt(compiler::compile_program(p), 1000);
  bridge::Verdict v = bridge::check_trace(run.steps, p);
  CHECK(v.ok);
  CHECK(v.failures.empty());
  CHECK(v.steps_checked == 19);
}

TEST_CASE("traces of looping and branching programs are sound") {
  const char* programs[] = {
      "main() { x := 0; while (!(x == 3)) { x := x + 1; } if (x == 3) { y := 1; } }",
      R"(main() { one := 1; o := new; f := o!w(one); g := o!l(); }
w(p) { w0 := p; await w0; y := w0.get; return y; }
l() { b := 7; return b; })",
      "main() { a := 4; b := 38; r := add(a, b); } add(x, y) { s := x + y; return s; }",
  };
  for (const char* text : programs) {
    ast::Program p = parse_text(text);
    rt::RtRun run = rt::run_rt(compiler::compile_program(p), 10000);
    bridge::Verdict v = bridge::check_trace(run.steps, p);
    CHECK(v.ok);
    CHECK(v.steps_checked == run.steps.size());
  }
}

TEST_CASE("a deadlocked prefix is still a sound trace") {
  ast::Program p = parse_text(R"(
main() { me := 0; o := new; f := o!work(me); x := f.get; }
work(r) { c := r; g := c!noop(); y := g.get; return y; }
noop() { return u; }
)");
  rt::RtRun run = rt::run_rt(compiler::compile_program(p), 1000);
  CHECK(run.status == RunStatus::Deadlock);
  bridge::Verdict v = bridge::check_trace(run.steps, p);
  CHECK(v.ok);
  CHECK(v.steps_checked == run.steps.size());
}

TEST_CASE("swapping two steps breaks the replay at the first divergence") {
  ast::Program p = parse_text(kMapReduce);
  rt::RtRun run = rt::run_rt(compiler::compile_program(p), 1000);
  std::vector<Step> forged = run.steps;
  std::swap(forged[6], forged[7]);
  bridge::Verdict v = bridge::check_trace(forged, p);
  CHECK(!v.ok);
  REQUIRE(v.failures.size() == 1);
  CHECK(v.failures[0].index == 6);
  CHECK(v.steps_checked == 6);
}

TEST_CASE("a forged statement label is rejected") {
  ast::Program p = parse_text(kMapReduce);
  rt::RtRun run = rt::run_rt(compiler::compile_program(p), 1000);
  std::vector<Step> forged = run.steps;
  forged[0].stmt = "v1 := 5";
  bridge::Verdict v = bridge::check_trace(forged, p);
  CHECK(!v.ok);
  REQUIRE(v.failures.size() == 1);
  CHECK(v.failures[0].index == 0);
}

TEST_CASE("a dropped step is rejected") {
  ast::Program p = parse_text(kMapReduce);
  rt::RtRun run = rt::run_rt(compiler::compile_program(p), 1000);
  std::vector<Step> forged = run.steps;
  forged.erase(forged.begin() + 3);
  bridge::Verdict v = bridge::check_trace(forged, p);
  CHECK(!v.ok);
  REQUIRE(!v.failures.empty());
  CHECK(v.failures[0].index == 3);
}

TEST_CASE("a forged spawn record is rejected") {
  ast::Program p = parse_text(kMapReduce);
  rt::RtRun run = rt::run_rt(compiler::compile_program(p), 1000);
  std::vector<Step> forged = run.steps;
  REQUIRE(forged[4].spawn.has_value());
  forged[4].spawn->args = {5};
  bridge::Verdict v = bridge::check_trace(forged, p);
  CHECK(!v.ok);
  REQUIRE(!v.failures.empty());
  CHECK(v.failures[0].index == 4);
}
