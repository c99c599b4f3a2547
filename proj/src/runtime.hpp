#ifndef ACTLANG_RUNTIME_HPP
#define ACTLANG_RUNTIME_HPP

#include <deque>
#include <optional>
#include <vector>

#include "ir.hpp"
#include "trace.hpp"

// Deterministic runtime over compiled statements. A single cell array holds
// objects and futures under one reference counter; a scheduler queue is
// rotated round-robin, and eval executes exactly one statement of the chosen
// object's head process per turn.

namespace actlang::rt {

// A pending process: the remaining compiled statement and the future it
// resolves (its destiny).
struct Proc {
  ir::StmP stmt;
  Ref destiny = 0;
};

// Unresolved futures carry a listener list to keep the cell shape uniform;
// nothing appends to it because blocked objects stay in the scheduler queue
// and are skipped while blocked, rather than being woken by the resolver.
struct FutCell {
  bool resolved = false;
  Value value = 0;
  std::vector<Ref> listeners;
};

struct ObjCell {
  std::vector<Value> attrs;  // fixed length: the table's attribute count
  std::deque<Proc> procq;
};

struct Cell {
  enum class Kind { Free, Object, Future };
  Kind kind = Kind::Free;
  ObjCell obj;
  FutCell fut;
};

struct RtHeap {
  Ref counter = 0;
  int attr_count = 0;
  std::vector<Cell> cells;  // capacity doubles as the counter grows

  bool is_object(Ref r) const;
  bool is_future(Ref r) const;
  ObjCell& object(Ref r);
  const ObjCell& object(Ref r) const;
  FutCell& future(Ref r);
  const FutCell& future(Ref r) const;

  Ref alloc_object();
  Ref alloc_future();
};

struct RtConfig {
  RtHeap heap;
  std::vector<Ref> sched;
};

// Structural equality over allocated cells; spare capacity is ignored.
bool heap_eq(const RtHeap& a, const RtHeap& b);
bool config_eq(const RtConfig& a, const RtConfig& b);

// First object in scheduler order whose head process is not a get on an
// unresolved future; absent when every listed object is blocked.
std::optional<Ref> next_object(const RtHeap& h, const std::vector<Ref>& sched);

// Rotates the queue past position n of o and appends the activated list:
// [o_{n+1}..o_m] ++ [o_1..o_{n-1}] ++ l.
std::vector<Ref> updl(const std::vector<Ref>& sched, Ref o, const std::vector<Ref>& l);

// Successor queue after o performed an asynchronous call to callee: the
// callee is appended only if it was not already listed.
std::vector<Ref> newq_add(const std::vector<Ref>& sched, Ref o, Ref callee);

// Successor queue after o finished a process: o drops out when its process
// queue emptied.
std::vector<Ref> newq_del(const std::vector<Ref>& sched, Ref o, bool queue_empty);

struct EvalResult {
  Rule rule = Rule::Skip;
  std::string stmt;  // source rendering of the executed statement
  std::optional<SpawnInfo> spawn;
  std::vector<Ref> activated;
};

// Executes one statement of o's head process, mutating the heap. The caller
// owns the scheduler queue; `activated` feeds updl. Raises NotEnabled when o
// is blocked or has no process.
EvalResult eval(Ref o, RtHeap& h, const ir::MethodTable& table);

// Object 0 runs main; future 1 is its destiny.
RtConfig load(const ir::MethodTable& table);

struct RtRun {
  std::vector<Step> steps;
  RunStatus status = RunStatus::Finished;
  RtConfig final;
};

RtRun run_rt(const ir::MethodTable& table, std::uint64_t fuel);

}  // namespace actlang::rt

#endif
