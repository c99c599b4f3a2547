#ifndef ACTLANG_BENCH_HPP
#define ACTLANG_BENCH_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "ast.hpp"

// Benchmark program generators. The language has no division or ordering
// operators, so divisibility is decided by stepping through multiples until
// the dividend is hit or a counter cap fires; the shapes keep the documented
// asymptotics in statement counts.

namespace actlang::bench {

enum class Family { PrimalityLow, PrimalityHigh, Logs, PrimesRange, MapReduce };

std::optional<Family> family_from_name(const std::string& name);
const char* family_name(Family f);

// Source text of the program for size n. MapReduce ignores n.
std::string gen_text(Family f, long long n);

// Parsed and validated program.
ast::Program gen(Family f, long long n);

struct SweepRow {
  long long n = 0;
  std::uint64_t steps = 0;
  std::uint64_t wall_nanos = 0;  // best of three runs, run loop only
};

std::vector<SweepRow> sweep(Family f, const std::vector<long long>& ns);

// Header plus one row per n: family,n,steps,wall_nanos.
std::string sweep_csv(Family f, const std::vector<SweepRow>& rows);

}  // namespace actlang::bench

#endif
