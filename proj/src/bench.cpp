#include "bench.hpp"

#include <chrono>

#include "compiler.hpp"
#include "parser.hpp"
#include "runtime.hpp"

namespace actlang::bench {

std::optional<Family> family_from_name(const std::string& name) {
  if (name == "primality_low") return Family::PrimalityLow;
  if (name == "primality_high") return Family::PrimalityHigh;
  if (name == "logs") return Family::Logs;
  if (name == "primes_range") return Family::PrimesRange;
  if (name == "mapreduce") return Family::MapReduce;
  return std::nullopt;
}

const char* family_name(Family f) {
  switch (f) {
    case Family::PrimalityLow: return "primality_low";
    case Family::PrimalityHigh: return "primality_high";
    case Family::Logs: return "logs";
    case Family::PrimesRange: return "primes_range";
    case Family::MapReduce: return "mapreduce";
  }
  return "?";
}

namespace {

// One object per candidate divisor of 13; the callee walks the multiples of
// its divisor until it hits 13 or the step cap, so each check costs a bounded
// number of statements.
const char* kDivisorCheck = R"(
check(d) {
  t := 0;
  j := 0;
  while (!(t == 13) && !(j == 13)) {
    t := t + d;
    j := j + 1;
  }
  r := 0;
  if (t == 13) {
    r := 1;
  }
  return r;
}
)";

std::string primality_low(long long n) {
  std::string out;
  out += "main() {\n";
  out += "  acc := 0;\n";
  out += "  d := 0;\n";
  out += "  c := 0;\n";
  out += "  while (!(c == " + std::to_string(n) + ")) {\n";
  out += "    d := d + 1;\n";
  out += "    o := new;\n";
  out += "    f := o!check(d);\n";
  out += "    await f;\n";
  out += "    x := f.get;\n";
  out += "    acc := acc + x;\n";
  out += "    c := c + 1;\n";
  out += "  }\n";
  out += "}\n";
  out += kDivisorCheck;
  return out;
}

std::string primality_high(long long n) {
  std::string out;
  out += "main() {\n";
  out += "  acc := 0;\n";
  out += "  d := 0;\n";
  for (long long i = 1; i <= n; i++) {
    out += "  d := d + 1;\n";
    out += "  o := new;\n";
    out += "  f" + std::to_string(i) + " := o!check(d);\n";
  }
  for (long long i = 1; i <= n; i++) {
    std::string f = "f" + std::to_string(i);
    out += "  await " + f + ";\n";
    out += "  x := " + f + ".get;\n";
    out += "  acc := acc + x;\n";
  }
  out += "}\n";
  out += kDivisorCheck;
  return out;
}

std::string logs(long long n) {
  std::string out;
  out += "main() {\n";
  out += "  i := 0;\n";
  out += "  curpow := 1;\n";
  out += "  nextpow := 2;\n";
  out += "  s := 0;\n";
  out += "  while (!(i == " + std::to_string(n) + ")) {\n";
  out += "    i := i + 1;\n";
  out += "    if (i == nextpow) {\n";
  out += "      curpow := nextpow;\n";
  out += "      nextpow := nextpow + nextpow;\n";
  out += "    }\n";
  out += "    p := 1;\n";
  out += "    c := 0;\n";
  out += "    while (!(p == curpow)) {\n";
  out += "      p := p + p;\n";
  out += "      c := c + 1;\n";
  out += "    }\n";
  out += "    s := s + c;\n";
  out += "  }\n";
  out += "}\n";
  return out;
}

// Trial division with the divisor range capped at 14, so every number costs a
// linearly bounded scan and the sum over [1..n] stays quadratic. Numbers whose
// smallest factor exceeds 14 would need a wider cap; the first such composite
// is 289.
std::string primes_range(long long n) {
  std::string out;
  out += "main() {\n";
  out += "  v := 0;\n";
  out += "  c := 0;\n";
  out += "  s := 0;\n";
  out += "  while (!(c == " + std::to_string(n) + ")) {\n";
  out += "    v := v + 1;\n";
  out += "    o := new;\n";
  out += "    f := o!check(v);\n";
  out += "    await f;\n";
  out += "    x := f.get;\n";
  out += "    s := s + x;\n";
  out += "    c := c + 1;\n";
  out += "  }\n";
  out += "}\n";
  out += "\n";
  out += "check(v) {\n";
  out += "  p := 1;\n";
  out += "  if (v == 1) {\n";
  out += "    p := 0;\n";
  out += "  }\n";
  out += "  d := 2;\n";
  out += "  while (!(d == v) && !(d == 15)) {\n";
  out += "    t := 0;\n";
  out += "    j := 0;\n";
  out += "    while (!(t == v) && !(j == v)) {\n";
  out += "      t := t + d;\n";
  out += "      j := j + 1;\n";
  out += "    }\n";
  out += "    if (t == v) {\n";
  out += "      p := 0;\n";
  out += "    }\n";
  out += "    d := d + 1;\n";
  out += "  }\n";
  out += "  return p;\n";
  out += "}\n";
  return out;
}

std::string mapreduce() {
  return R"(main() {
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

map(v) {
  r := v;
  return r;
}

reduce(a, b) {
  r := a + b;
  return r;
}
)";
}

}  // namespace

std::string gen_text(Family f, long long n) {
  if (n < 1) throw Error(ErrorKind::Usage, "benchmark size must be at least 1");
  switch (f) {
    case Family::PrimalityLow: return primality_low(n);
    case Family::PrimalityHigh: return primality_high(n);
    case Family::Logs: return logs(n);
    case Family::PrimesRange: return primes_range(n);
    case Family::MapReduce: return mapreduce();
  }
  throw Error(ErrorKind::Usage, "bad family");
}

ast::Program gen(Family f, long long n) { return parse::parse_program(gen_text(f, n)); }

std::vector<SweepRow> sweep(Family f, const std::vector<long long>& ns) {
  std::vector<SweepRow> rows;
  for (long long n : ns) {
    ir::MethodTable table = compiler::compile_program(gen(f, n));
    SweepRow row;
    row.n = n;
    row.wall_nanos = ~std::uint64_t{0};
    for (int rep = 0; rep < 3; rep++) {
      auto t0 = std::chrono::steady_clock::now();
      rt::RtRun run = rt::run_rt(table, ~std::uint64_t{0});
      auto t1 = std::chrono::steady_clock::now();
      auto ns_taken = static_cast<std::uint64_t>(
          std::chrono::duration_cast<std::chrono::nanoseconds>(t1 - t0).count());
      row.wall_nanos = std::min(row.wall_nanos, ns_taken);
      row.steps = run.steps.size();
    }
    rows.push_back(row);
  }
  return rows;
}

std::string sweep_csv(Family f, const std::vector<SweepRow>& rows) {
  std::string out = "family,n,steps,wall_nanos\n";
  for (const auto& r : rows)
    out += std::string(family_name(f)) + "," + std::to_string(r.n) + "," +
           std::to_string(r.steps) + "," + std::to_string(r.wall_nanos) + "\n";
  return out;
}

}  // namespace actlang::bench
