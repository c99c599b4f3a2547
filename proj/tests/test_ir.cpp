#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <string>

#include "ast.hpp"
#include "compiler.hpp"
#include "decompile.hpp"
#include "doctest.h"
#include "errors.hpp"
#include "ir.hpp"
#include "parser.hpp"

using namespace actlang;
using namespace actlang::ir;

namespace {

const char* kSkeleton = R"(
main() {
  node1 := new;
  node2 := new;
  f1 := node1!map(node1);
  f2 := node2!map(node2);
  await f1;
  await f2;
  r1 := f1.get;
  r2 := f2.get;
  r := reduce(r1, r2);
}
map(v) { r := v; return r; }
reduce(a, b) { r := a + b; return r; }
)";

MethodTable compile(const char* text) {
  return compiler::compile_program(parse::parse_program(text));
}

}  // namespace

TEST_CASE("splicing fills the hole at the end of the spine only") {
  StmP builder = t_assign(0, rhs_val(tv_lit(1)),
                          t_if(tb_eq(tv_attr(0), tv_lit(1)), t_skip(t_hole()),
                               t_assign(1, rhs_new(), t_hole()), t_hole()));
  StmP spliced = splice(builder, t_exit());
  REQUIRE(spliced);
  CHECK(spliced->kind == Stm::Kind::Assign);
  REQUIRE(spliced->k);
  CHECK(spliced->k->kind == Stm::Kind::If);
  CHECK(spliced->k->k->kind == Stm::Kind::Exit);
  // Builders hanging off the spine keep their own holes.
  CHECK(spliced->k->thn->k->kind == Stm::Kind::Hole);
  CHECK(spliced->k->els->k->kind == Stm::Kind::Hole);
}

TEST_CASE("splicing refuses a spine that already ends in exit") {
  StmP done = t_skip(t_exit());
  CHECK_THROWS_AS(splice(done, t_exit()), Error);
}

TEST_CASE("binding substitutes parameter slots everywhere, including builders") {
  StmP body = t_while(tb_eq(tv_param(0), tv_lit(0)),
                      t_assign(0, rhs_val(tv_param(1)), t_hole()),
                      t_return(1, wb_slot(), t_hole()));
  StmP bound = bind(body, {7, 9}, wb_none());
  CHECK(bound->cond->va->kind == TV::Kind::Lit);
  CHECK(bound->cond->va->lit == 7);
  CHECK(bound->body->rhs.val->lit == 9);
  CHECK(bound->k->wb.kind == Wb::Kind::None);
}

TEST_CASE("binding resolves return slots to the requested write-back") {
  StmP ret = t_return(3, wb_slot(), t_hole());
  CHECK(bind(ret, {}, wb_attr(6))->wb.kind == Wb::Kind::Attr);
  CHECK(bind(ret, {}, wb_attr(6))->wb.attr == 6);
  CHECK(bind(ret, {}, wb_none())->wb.kind == Wb::Kind::None);
}

TEST_CASE("head forms show the tag and scalar payload only") {
  CHECK(head_form(*t_skip(t_hole())) == "(skip)");
  CHECK(head_form(*t_await(4, t_hole())) == "(await 4)");
  CHECK(head_form(*t_assign(3, rhs_new(), t_hole())) == "(assign 3 new)");
  CHECK(head_form(*t_return(4, wb_slot(), t_hole())) == "(return 4 slot)");
  CHECK(head_form(*t_return(4, wb_none(), t_hole())) == "(return 4 none)");
  CHECK(head_form(*t_return(4, wb_attr(6), t_hole())) == "(return 4 (attr 6))");
  CHECK(head_form(*t_exit()) == "(exit)");
  StmP w = t_while(tb_not(tb_eq(tv_attr(1), tv_lit(3))), t_skip(t_hole()), t_hole());
  CHECK(head_form(*w) == "(while (not (eq (a 1) (i 3))))");
}

TEST_CASE("the skeleton mapreduce layout assigns slots by first occurrence") {
  MethodTable t = compile(kSkeleton);
  CHECK(t.attr_count() == 8);
  CHECK(t.attr_index.at("node1") == 0);
  CHECK(t.attr_index.at("node2") == 1);
  CHECK(t.attr_index.at("f1") == 2);
  CHECK(t.attr_index.at("f2") == 3);
  CHECK(t.attr_index.at("r1") == 4);
  CHECK(t.attr_index.at("r2") == 5);
  CHECK(t.attr_index.at("r") == 6);
  CHECK(t.attr_index.at(ast::kUnitAttr) == 7);
  CHECK(t.attr_name(6) == "r");
  CHECK_THROWS_AS(t.attr_name(8), Error);
}

TEST_CASE("the skeleton mapreduce dump is stable") {
  const char* expected =
      "(layout (node1 0) (node2 1) (f1 2) (f2 3) (r1 4) (r2 5) (r 6) (__unit 7))\n"
      "(method main (arity 0)\n"
      "  (assign 0 new)\n"
      "  (assign 1 new)\n"
      "  (assign 2 (async 0 map (0)))\n"
      "  (assign 3 (async 1 map (1)))\n"
      "  (await 2)\n"
      "  (await 3)\n"
      "  (assign 4 (get 2))\n"
      "  (assign 5 (get 3))\n"
      "  (assign 6 (sync reduce (4 5)))\n"
      "  (return 7 slot)\n"
      "  (hole)\n"
      ")\n"
      "(method map (arity 1)\n"
      "  (assign 6 (val (p 0)))\n"
      "  (return 6 slot)\n"
      "  (hole)\n"
      ")\n"
      "(method reduce (arity 2)\n"
      "  (assign 6 (val (add (p 0) (p 1))))\n"
      "  (return 6 slot)\n"
      "  (hole)\n"
      ")\n";
  CHECK(dump_table(compile(kSkeleton)) == expected);
}

TEST_CASE("compilation is deterministic") {
  MethodTable a = compile(kSkeleton);
  MethodTable b = compile(kSkeleton);
  CHECK(dump_table(a) == dump_table(b));
}

TEST_CASE("instantiation binds arguments and appends the continuation") {
  MethodTable t = compile(kSkeleton);
  StmP body = instantiate(t, "map", {4}, 2, std::nullopt, t_exit());
  REQUIRE(body);
  CHECK(body->kind == Stm::Kind::Assign);
  CHECK(body->rhs.val->kind == TV::Kind::Lit);
  CHECK(body->rhs.val->lit == 4);
  REQUIRE(body->k);
  CHECK(body->k->kind == Stm::Kind::Return);
  CHECK(body->k->wb.kind == Wb::Kind::None);
  CHECK(body->k->k->kind == Stm::Kind::Exit);

  StmP wb = instantiate(t, "reduce", {1, 2}, 0, 6, t_skip(t_exit()));
  CHECK(wb->k->wb.kind == Wb::Kind::Attr);
  CHECK(wb->k->wb.attr == 6);
  CHECK(wb->k->k->kind == Stm::Kind::Skip);
}

TEST_CASE("instantiation checks method name and arity") {
  MethodTable t = compile(kSkeleton);
  CHECK_THROWS_AS(instantiate(t, "nope", {}, 0, std::nullopt, t_exit()), Error);
  CHECK_THROWS_AS(instantiate(t, "map", {1, 2}, 0, std::nullopt, t_exit()), Error);
}

TEST_CASE("two identical instantiations are structurally equal") {
  MethodTable t = compile(kSkeleton);
  StmP a = instantiate(t, "reduce", {4, 38}, 0, 6, t_exit());
  StmP b = instantiate(t, "reduce", {4, 38}, 0, 6, t_exit());
  CHECK(stm_eq(a, b));
  StmP c = instantiate(t, "reduce", {4, 39}, 0, 6, t_exit());
  CHECK(!stm_eq(a, c));
}

TEST_CASE("compilation composes over sequencing") {
  ast::Program p = parse::parse_program("main() { x := 1; y := 2; skip; }");
  MethodTable t = compiler::compile_program(p);
  const StmP& body = t.method("main").body;
  CHECK(body->kind == Stm::Kind::Assign);
  CHECK(body->k->kind == Stm::Kind::Assign);
  CHECK(body->k->k->kind == Stm::Kind::Skip);
  CHECK(body->k->k->k->kind == Stm::Kind::Return);
  CHECK(body->k->k->k->k->kind == Stm::Kind::Hole);
}

TEST_CASE("compiled statements decompile back to the marked source") {
  ast::Program p = parse::parse_program(R"(
main() {
  x := 1;
  o := new;
  f := o!m(x);
  await f;
  y := f.get;
  if (y == 0) { z := 1; } else { z := 2; }
  w := 0;
  while (!(w == 3)) { w := w + 1; }
}
m(p) { q := p + 1; return q; }
)");
  MethodTable t = compiler::compile_program(p);
  ast::StmtP main_marked = ast::mark_writeback(p.main().body, ast::ReturnMark::Star);
  ast::StmtP main_back =
      decompile::stm_to_source(compiler::compile_closure_stmt(main_marked, t), t);
  CHECK(ast::stmt_eq(main_back, main_marked));

  // Callee closures carry substituted parameters and a write-back mark.
  ast::StmtP callee = ast::mark_writeback(ast::subst_params(p.find("m")->body, {{"p", 5}}),
                                          ast::ReturnMark::WriteBack, "y");
  ast::StmtP callee_back =
      decompile::stm_to_source(compiler::compile_closure_stmt(callee, t), t);
  CHECK(ast::stmt_eq(callee_back, callee));
}

TEST_CASE("decompilation rejects spines that do not end cleanly") {
  MethodTable t = compile(kSkeleton);
  CHECK_THROWS_AS(decompile::stm_to_source(t_skip(t_hole()), t), Error);
  CHECK_THROWS_AS(decompile::stm_to_source(t_return(0, wb_slot(), t_exit()), t), Error);
}

TEST_CASE("unbound parameter slots cannot be decompiled") {
  MethodTable t = compile(kSkeleton);
  StmP raw = t.method("map").body;
  CHECK_THROWS_AS(decompile::stm_to_source(splice(raw, t_exit()), t), Error);
}
