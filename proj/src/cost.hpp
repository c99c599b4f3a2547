#ifndef ACTLANG_COST_HPP
#define ACTLANG_COST_HPP

#include <map>
#include <string>
#include <vector>

#include "trace.hpp"

// Cost models assign an exact rational weight to every rule kind; the cost of
// a trace is the per-object sum of the weights of its steps. Exactness
// matters because preservation between the two interpreters is an equality,
// not an approximation.

namespace actlang::cost {

struct Rational {
  long long num = 0;
  long long den = 1;  // always positive; the fraction is always reduced

  Rational() = default;
  Rational(long long n) : num(n), den(1) {}
  Rational(long long n, long long d);

  bool operator==(const Rational&) const = default;
};

Rational operator+(const Rational& a, const Rational& b);
Rational operator-(const Rational& a, const Rational& b);
Rational operator*(const Rational& a, const Rational& b);
bool operator<(const Rational& a, const Rational& b);
bool operator<=(const Rational& a, const Rational& b);

// Accepts integers ("7", "-3"), fractions ("3/2"), and decimals ("0.25").
Rational parse_rational(const std::string& text);
std::string to_string(const Rational& r);

struct CostModel {
  std::string name;
  std::map<Rule, Rational> weight;  // absent kinds weigh 0

  Rational of(Rule r) const;
};

CostModel steps_model();   // every rule costs 1
CostModel memory_model();  // New costs 1, everything else 0

// First non-comment line is the model name; the rest are `kind=weight` lines
// using the rule names that appear in traces. `#` starts a comment.
CostModel model_from_text(const std::string& text);

// "steps", "memory", or the content of a model file via model_from_text.
CostModel builtin_model(const std::string& name);

struct CostReport {
  std::map<Ref, Rational> per_object;  // zero-cost objects omitted
  Rational total;
};

CostReport cost_of_trace(const std::vector<Step>& steps, const CostModel& model);

struct PreservationDiff {
  bool equal = true;
  std::vector<Ref> objects;  // objects whose costs differ
};

PreservationDiff check_preservation(const std::vector<Step>& a, const std::vector<Step>& b,
                                    const CostModel& model);

// Non-strict; an object absent from the report costs 0.
bool check_bound(const CostReport& report, Ref o, const Rational& bound);

struct BoundRow {
  std::string program;
  long long n = 0;
  Ref object = 0;
  Rational bound;
};

// Rows are `program,n,object,bound`; a leading header line is skipped.
std::vector<BoundRow> parse_bounds_csv(const std::string& text);

}  // namespace actlang::cost

#endif
