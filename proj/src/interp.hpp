#ifndef ACTLANG_INTERP_HPP
#define ACTLANG_INTERP_HPP

#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <random>
#include <set>
#include <vector>

#include "arith.hpp"
#include "ast.hpp"
#include "trace.hpp"

// Nondeterministic reference semantics: objects hold queues of closures, any
// enabled object may take the next step, and a scheduling policy resolves the
// choice.

namespace actlang::sem {

using ast::Value;

// Attribute store of one object. Missing attributes read as zero, and writes
// of zero erase the entry, so two stores describing the same valuation are
// structurally equal.
struct AttrStore {
  std::map<std::string, Value> m;

  Value get(const std::string& name) const {
    auto it = m.find(name);
    return it == m.end() ? 0 : it->second;
  }
  void set(const std::string& name, Value v) {
    if (v == 0)
      m.erase(name);
    else
      m[name] = v;
  }
  bool operator==(const AttrStore&) const = default;
};

struct Heap {
  Ref count = 0;
  std::map<Ref, AttrStore> objects;
  std::map<Ref, std::optional<Value>> futures;  // nullopt while unresolved

  bool operator==(const Heap&) const = default;
};

// A pending process: the remaining statement and the future it will resolve.
struct Closure {
  ast::StmtP stmt;
  Ref destiny = 0;
};

bool closure_eq(const Closure& a, const Closure& b);

struct Config {
  Heap heap;
  // Every allocated object has an entry, empty queues included.
  std::map<Ref, std::vector<Closure>> queues;
};

bool config_eq(const Config& a, const Config& b);

// Evaluates a parameter-free value expression over an attribute store.
Value eval_value(const AttrStore& store, const ast::VExpr& v);
bool eval_bool(const AttrStore& store, const ast::BExpr& b);

// Object 0 runs main; future 1 is main's destiny.
Config initial_config(const ast::Program& p);

// An object can move unless its queue is empty or its head statement reads an
// unresolved future with get.
bool enabled(const Config& c, Ref o);
std::vector<Ref> enabled_objects(const Config& c);

struct StepResult {
  Config config;
  Step label;
};

// Applies the single rule that matches o's head statement.
StepResult step(const Config& c, const ast::Program& p, Ref o);

// Picks the next object from the enabled set. The config and step index are
// available for stateless policies; the generator belongs to the run.
using SchedulerPolicy =
    std::function<Ref(const Config&, const std::vector<Ref>& enabled, size_t step_index,
                      std::mt19937_64& rng)>;

SchedulerPolicy random_policy();
SchedulerPolicy round_robin_policy();
SchedulerPolicy scripted_policy(std::vector<Ref> script);

struct SourceRun {
  std::vector<Step> steps;
  RunStatus status = RunStatus::Finished;
  Config final;
};

SourceRun run(const ast::Program& p, const SchedulerPolicy& policy, std::uint64_t seed,
              std::uint64_t fuel);

// All maximal label sequences reachable within `fuel` steps, deduplicated.
// Throws Explosion when more than `max_traces` distinct sequences arise.
std::vector<std::vector<Step>> enumerate_traces(const ast::Program& p, std::uint64_t fuel,
                                                std::size_t max_traces);

}  // namespace actlang::sem

#endif
