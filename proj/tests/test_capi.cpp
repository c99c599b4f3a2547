#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cstring>
#include <string>
#include <vector>

#include "actlang/actlang.h"
#include "doctest.h"

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

// Owns a handle for the duration of a test body.
struct Prog {
  al_program* p = nullptr;
  explicit Prog(const char* text) {
    char* err = nullptr;
    REQUIRE(al_parse(text, &p, &err) == AL_OK);
    REQUIRE(err == nullptr);
  }
  ~Prog() { al_program_free(p); }
  Prog(const Prog&) = delete;
  Prog& operator=(const Prog&) = delete;
};

struct Str {
  char* s = nullptr;
  ~Str() { al_string_free(s); }
  std::string view() const { return s ? std::string(s) : std::string(); }
};

size_t count_lines(const std::string& text) {
  size_t n = 0;
  for (char c : text)
    if (c == '\n') ++n;
  return n;
}

}  // namespace

TEST_CASE("parse failures report position and leave outputs alone") {
  al_program* p = nullptr;
  char* err = nullptr;
  CHECK(al_parse("main() { x := ; }", &p, &err) == AL_ERR_PARSE);
  CHECK(p == nullptr);
  REQUIRE(err != nullptr);
  CHECK(std::string(err).find("line 1") != std::string::npos);
  al_string_free(err);
}

TEST_CASE("validation failures are distinct from parse failures") {
  al_program* p = nullptr;
  char* err = nullptr;
  CHECK(al_parse("helper() { x := 1; return x; }", &p, &err) == AL_ERR_VALIDATE);
  CHECK(p == nullptr);
  REQUIRE(err != nullptr);
  CHECK(std::string(err).find("main") != std::string::npos);
  al_string_free(err);
}

TEST_CASE("missing files come back as io errors") {
  al_program* p = nullptr;
  char* err = nullptr;
  CHECK(al_parse_file("/nonexistent/missing.act", &p, &err) == AL_ERR_IO);
  CHECK(p == nullptr);
  REQUIRE(err != nullptr);
  al_string_free(err);
}

TEST_CASE("pretty output reparses") {
  Prog prog(kMapReduce);
  Str out;
  REQUIRE(al_pretty(prog.p, &out.s, nullptr) == AL_OK);
  CHECK(out.view().find("f1 := node1!map(v1);") != std::string::npos);

  al_program* again = nullptr;
  REQUIRE(al_parse(out.s, &again, nullptr) == AL_OK);
  Str out2;
  REQUIRE(al_pretty(again, &out2.s, nullptr) == AL_OK);
  CHECK(out.view() == out2.view());
  al_program_free(again);
}

TEST_CASE("ir dump names every method") {
  Prog prog(kMapReduce);
  Str out;
  REQUIRE(al_dump_ir(prog.p, &out.s, nullptr) == AL_OK);
  auto text = out.view();
  CHECK(text.find("(method main") != std::string::npos);
  CHECK(text.find("(method map") != std::string::npos);
  CHECK(text.find("(method reduce") != std::string::npos);
}

TEST_CASE("runtime run produces the fixed trace") {
  Prog prog(kMapReduce);
  al_trace* t = nullptr;
  REQUIRE(al_run(prog.p, "rt", "", 0, 1000000, &t, nullptr) == AL_OK);
  CHECK(al_trace_run_status(t) == AL_RUN_FINISHED);
  CHECK(al_trace_steps(t) == 19);

  Str jsonl;
  REQUIRE(al_trace_jsonl(t, &jsonl.s, nullptr) == AL_OK);
  auto text = jsonl.view();
  CHECK(count_lines(text) == 19);
  CHECK(text.find("\"rule\":\"Async\"") != std::string::npos);
  CHECK(text.find("\"stmt\":\"r := 4 + 38\"") != std::string::npos);
  al_trace_free(t);
}

TEST_CASE("source run honors the scripted policy") {
  Prog prog(kMapReduce);
  al_trace* t = nullptr;
  REQUIRE(al_run(prog.p, "source",
                 "script:0,0,0,0,0,0,2,0,3,2,0,3,0,0,0,0,0,0,0", 0, 1000000, &t,
                 nullptr) == AL_OK);
  CHECK(al_trace_run_status(t) == AL_RUN_FINISHED);
  CHECK(al_trace_steps(t) == 19);
  al_trace_free(t);

  CHECK(al_run(prog.p, "source", "rr", 0, 1000000, &t, nullptr) == AL_OK);
  CHECK(al_trace_run_status(t) == AL_RUN_FINISHED);
  al_trace_free(t);

  char* err = nullptr;
  CHECK(al_run(prog.p, "novel", "", 0, 1000, &t, &err) == AL_ERR_USAGE);
  REQUIRE(err != nullptr);
  al_string_free(err);
  err = nullptr;
  CHECK(al_run(prog.p, "source", "backwards", 0, 1000, &t, &err) == AL_ERR_USAGE);
  REQUIRE(err != nullptr);
  al_string_free(err);
}

TEST_CASE("random seeds reproduce traces") {
  Prog prog(kMapReduce);
  Str a, b;
  for (Str* out : {&a, &b}) {
    al_trace* t = nullptr;
    REQUIRE(al_run(prog.p, "source", "random", 11, 1000000, &t, nullptr) == AL_OK);
    REQUIRE(al_trace_jsonl(t, &out->s, nullptr) == AL_OK);
    al_trace_free(t);
  }
  CHECK(a.view() == b.view());
}

TEST_CASE("deadlocks surface in the run status") {
  Prog prog(R"(
main() { me := 0; o := new; f := o!work(me); x := f.get; }
work(r) { c := r; g := c!noop(); y := g.get; return y; }
noop() { return u; }
)");
  al_trace* t = nullptr;
  REQUIRE(al_run(prog.p, "rt", "", 0, 1000000, &t, nullptr) == AL_OK);
  CHECK(al_trace_run_status(t) == AL_RUN_DEADLOCK);
  al_trace_free(t);

  REQUIRE(al_run(prog.p, "source", "random", 3, 1000000, &t, nullptr) == AL_OK);
  CHECK(al_trace_run_status(t) == AL_RUN_DEADLOCK);
  al_trace_free(t);
}

TEST_CASE("fuel exhaustion surfaces in the run status") {
  Prog prog(kMapReduce);
  al_trace* t = nullptr;
  REQUIRE(al_run(prog.p, "rt", "", 0, 5, &t, nullptr) == AL_OK);
  CHECK(al_trace_run_status(t) == AL_RUN_FUEL);
  CHECK(al_trace_steps(t) == 5);
  al_trace_free(t);
}

TEST_CASE("check validates the runtime trace") {
  Prog prog(kMapReduce);
  int sound = 0;
  Str report;
  REQUIRE(al_check(prog.p, 1000000, &sound, &report.s, nullptr) == AL_OK);
  CHECK(sound == 1);
  auto text = report.view();
  CHECK(text.find("SOUND 19 steps") != std::string::npos);
  CHECK(count_lines(text) == 20);
}

TEST_CASE("cost reports list objects then the total") {
  Prog prog(kMapReduce);
  Str out;
  REQUIRE(al_cost_report(prog.p, "rt", "steps", 0, 1000000, &out.s, nullptr) == AL_OK);
  CHECK(out.view() == "0,15\n2,2\n3,2\ntotal,19\n");

  Str mem;
  REQUIRE(al_cost_report(prog.p, "rt", "memory", 0, 1000000, &mem.s, nullptr) == AL_OK);
  CHECK(mem.view() == "0,2\ntotal,2\n");

  char* err = nullptr;
  char* o = nullptr;
  CHECK(al_cost_report(prog.p, "rt", "imaginary", 0, 1000, &o, &err) == AL_ERR_USAGE);
  REQUIRE(err != nullptr);
  al_string_free(err);
}

TEST_CASE("bench programs come back as source text") {
  Str out;
  REQUIRE(al_bench_program("logs", 4, &out.s, nullptr) == AL_OK);
  CHECK(out.view().find("main()") != std::string::npos);

  al_program* p = nullptr;
  REQUIRE(al_parse(out.s, &p, nullptr) == AL_OK);
  al_program_free(p);

  char* err = nullptr;
  char* o = nullptr;
  CHECK(al_bench_program("unknown_family", 4, &o, &err) == AL_ERR_USAGE);
  REQUIRE(err != nullptr);
  al_string_free(err);
  err = nullptr;
  CHECK(al_bench_program("logs", 0, &o, &err) == AL_ERR_USAGE);
  REQUIRE(err != nullptr);
  al_string_free(err);
}

TEST_CASE("bench sweeps render csv") {
  const int64_t ns[] = {3, 4};
  Str csv;
  REQUIRE(al_bench_sweep("primality_low", ns, 2, &csv.s, nullptr) == AL_OK);
  auto text = csv.view();
  CHECK(text.rfind("family,n,steps,wall_nanos\n", 0) == 0);
  CHECK(text.find("primality_low,3,305,") != std::string::npos);
  CHECK(text.find("primality_low,4,405,") != std::string::npos);
  CHECK(count_lines(text) == 3);
}

TEST_CASE("bounds checks match rows by program name") {
  Prog prog(kMapReduce);
  const char* csv =
      "program,n,object,bound\n"
      "mapreduce,1,0,15\n"
      "mapreduce,1,2,2\n"
      "other,1,0,1\n";
  int within = 0;
  Str report;
  REQUIRE(al_check_bounds(prog.p, "mapreduce", csv, 1000000, &within, &report.s, nullptr) ==
          AL_OK);
  CHECK(within == 1);
  CHECK(count_lines(report.view()) == 2);
  CHECK(report.view().find("OK") != std::string::npos);

  const char* tight =
      "program,n,object,bound\n"
      "mapreduce,1,0,14\n";
  int within2 = 1;
  Str report2;
  REQUIRE(al_check_bounds(prog.p, "mapreduce", tight, 1000000, &within2, &report2.s, nullptr) ==
          AL_OK);
  CHECK(within2 == 0);
  CHECK(report2.view().find("EXCEEDED") != std::string::npos);

  char* err = nullptr;
  int w = 0;
  char* r = nullptr;
  CHECK(al_check_bounds(prog.p, "absent", csv, 1000000, &w, &r, &err) == AL_ERR_USAGE);
  REQUIRE(err != nullptr);
  al_string_free(err);
}
