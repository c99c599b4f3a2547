#ifndef ACTLANG_TRACE_HPP
#define ACTLANG_TRACE_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace actlang {

using Ref = std::int64_t;
using Value = std::int64_t;

// The rule applied by one execution step. Both the nondeterministic source
// interpreter and the deterministic runtime label their steps with these.
enum class Rule {
  Assign, New, Get, AwaitI, AwaitII, Async, Sync,
  ReturnA, ReturnS, IfT, IfF, WhileT, WhileF, Skip
};

const char* rule_name(Rule r);

// Spawn decoration, present exactly on Async steps.
struct SpawnInfo {
  Ref callee = 0;
  std::string method;
  Ref destiny = 0;
  std::vector<Value> args;

  bool operator==(const SpawnInfo&) const = default;
};

struct Step {
  Ref object = 0;
  Rule rule = Rule::Skip;
  std::string stmt;  // the statement the step consumed, rendered on one line
  std::optional<SpawnInfo> spawn;

  bool operator==(const Step&) const = default;
};

enum class RunStatus { Finished, Deadlock, FuelExhausted };

const char* run_status_name(RunStatus s);

// One JSON object per step, LF-terminated; stable byte-for-byte across runs.
std::string trace_jsonl(const std::vector<Step>& steps);

}  // namespace actlang

#endif
