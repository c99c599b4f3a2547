#ifndef ACTLANG_IR_HPP
#define ACTLANG_IR_HPP

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "errors.hpp"

// Compiled statement language. Every statement carries its continuation, so a
// process is a single tree and the runtime executes one node per turn. If and
// While hold their branches as builders: subtrees whose spine ends in a Hole
// leaf that gets spliced with the actual continuation when the branch is
// taken. Method bodies are templates over parameter slots; instantiation
// binds argument values, the write-back target, and the final continuation.

namespace actlang::ir {

using Value = std::int64_t;
using Ref = std::int64_t;

struct TV;
using TVP = std::shared_ptr<const TV>;

// Value expression over attribute indices and parameter slots.
struct TV {
  enum class Kind { Attr, Param, Lit, Add, Sub };
  Kind kind;
  int idx = -1;   // Attr: attribute index; Param: slot
  Value lit = 0;  // Lit
  TVP a, b;       // Add, Sub
};

TVP tv_attr(int idx);
TVP tv_param(int slot);
TVP tv_lit(Value v);
TVP tv_add(TVP a, TVP b);
TVP tv_sub(TVP a, TVP b);

struct TB;
using TBP = std::shared_ptr<const TB>;

struct TB {
  enum class Kind { And, Or, Not, Eq };
  Kind kind;
  TBP a, b;    // And, Or; Not uses `a`
  TVP va, vb;  // Eq
};

TBP tb_and(TBP a, TBP b);
TBP tb_or(TBP a, TBP b);
TBP tb_not(TBP a);
TBP tb_eq(TVP a, TVP b);

// Right-hand side of a compiled assignment.
struct Rhs {
  enum class Kind { Val, New, Get, AsyncCall, SyncCall };
  Kind kind = Kind::Val;
  TVP val;                // Val
  int from = -1;          // Get: future attribute; AsyncCall: callee attribute
  std::string method;     // AsyncCall, SyncCall
  std::vector<int> args;  // AsyncCall, SyncCall (attribute indices)
};

Rhs rhs_val(TVP v);
Rhs rhs_new();
Rhs rhs_get(int fut);
Rhs rhs_async(int callee, std::string method, std::vector<int> args);
Rhs rhs_sync(std::string method, std::vector<int> args);

// Write-back field of a Return: Slot is the template placeholder, filled in
// at instantiation with None (asynchronous spawn) or an attribute index
// (synchronous call target).
struct Wb {
  enum class Kind { Slot, None, Attr };
  Kind kind = Kind::None;
  int attr = -1;

  bool operator==(const Wb&) const = default;
};

inline Wb wb_slot() { return {Wb::Kind::Slot, -1}; }
inline Wb wb_none() { return {Wb::Kind::None, -1}; }
inline Wb wb_attr(int idx) { return {Wb::Kind::Attr, idx}; }

struct Stm;
using StmP = std::shared_ptr<const Stm>;

struct Stm {
  enum class Kind { Skip, Await, Assign, If, While, Return, Exit, Hole };
  Kind kind;

  int attr = -1;        // Await: future; Assign: target; Return: result
  Rhs rhs;              // Assign
  TBP cond;             // If, While
  StmP thn, els, body;  // builders, each spine ending in Hole
  Wb wb;                // Return
  StmP k;               // continuation; null on Exit and Hole
};

StmP t_skip(StmP k);
StmP t_await(int fut, StmP k);
StmP t_assign(int target, Rhs rhs, StmP k);
StmP t_if(TBP cond, StmP thn, StmP els, StmP k);
StmP t_while(TBP cond, StmP body, StmP k);
StmP t_return(int attr, Wb wb, StmP k);
StmP t_exit();
StmP t_hole();

bool tv_eq(const TVP& x, const TVP& y);
bool tb_eq(const TBP& x, const TBP& y);
bool rhs_eq(const Rhs& x, const Rhs& y);
bool stm_eq(const StmP& x, const StmP& y);

// Replaces the Hole at the end of s's continuation spine with k. Builders
// hanging off the spine keep their own holes. Raises IllFormedIR when the
// spine ends in something other than a Hole.
StmP splice(const StmP& s, const StmP& k);

// Binds parameter slots to values and Slot write-backs to `wb` across the
// whole tree, builders included.
StmP bind(const StmP& s, const std::vector<Value>& args, const Wb& wb);

// Constructor tag plus the non-continuation scalar payload, as a stable
// s-expression fragment; builders and continuations are omitted.
std::string head_form(const Stm& s);

std::string tv_sexpr(const TV& v);
std::string tb_sexpr(const TB& b);
// Full recursive dump: one line per spine node, builders indented.
std::string dump_stm(const StmP& s, int indent = 0);

struct CompiledMethod {
  std::string name;
  std::vector<std::string> params;
  StmP body;  // template: P-slots, Slot write-backs, spine ending in Hole

  size_t arity() const { return params.size(); }
};

struct MethodTable {
  std::vector<CompiledMethod> methods;  // declaration order
  std::map<std::string, size_t> by_name;
  std::vector<std::string> attr_names;  // index -> identifier
  std::map<std::string, int> attr_index;

  int attr_count() const { return static_cast<int>(attr_names.size()); }
  const CompiledMethod& method(const std::string& name) const;
  const std::string& attr_name(int idx) const;
};

// Compiled body ready to run: arguments bound, write-back fixed, continuation
// spliced in. `self` mirrors the call-site receiver and is accepted for
// signature fidelity; no compiled statement reads it, because attribute
// access always goes through the executing object's own store.
StmP instantiate(const MethodTable& table, const std::string& method,
                 const std::vector<Value>& args, Ref self, std::optional<int> wb, StmP k);

std::string dump_table(const MethodTable& table);

}  // namespace actlang::ir

#endif
