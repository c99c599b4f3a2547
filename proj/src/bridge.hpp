#ifndef ACTLANG_BRIDGE_HPP
#define ACTLANG_BRIDGE_HPP

#include "compiler.hpp"
#include "decompile.hpp"
#include "interp.hpp"
#include "runtime.hpp"

// Configuration translations between the two interpreters and the trace
// checker built on them: every runtime step must map back to an enabled
// source step with a structurally identical successor.

namespace actlang::bridge {

// Compiles every closure and lays the heap out densely. The scheduler queue
// lists the objects with pending processes in ascending reference order.
rt::RtConfig to_target(const sem::Config& c, const ir::MethodTable& table);

// Decompiles every process; ignores the scheduler queue, which the source
// configuration does not carry.
sem::Config from_target(const rt::RtConfig& r, const ir::MethodTable& table);

struct Failure {
  size_t index = 0;
  std::string rule;  // rule claimed at that step, if any
  std::string reason;
};

struct Verdict {
  bool ok = true;
  std::vector<Failure> failures;  // first divergence only
  size_t steps_checked = 0;
};

// Replays the runtime deterministically and verifies that `claimed` matches
// it step for step, and that each step is simulated by the source semantics:
// the claimed object must be the scheduler's pick, the source step on it must
// be enabled and produce the same rule, statement, and spawn, and the source
// successor must equal the translated runtime successor.
Verdict check_trace(const std::vector<Step>& claimed, const ast::Program& p);

}  // namespace actlang::bridge

#endif
