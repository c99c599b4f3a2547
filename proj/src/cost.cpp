#include "cost.hpp"

#include <charconv>
#include <limits>
#include <sstream>

#include "errors.hpp"

namespace actlang::cost {

namespace {

long long narrow(__int128 v, const char* what) {
  if (v > std::numeric_limits<long long>::max() || v < std::numeric_limits<long long>::min())
    throw Error(ErrorKind::Overflow, std::string("rational ") + what + " overflows");
  return static_cast<long long>(v);
}

Rational reduce(__int128 num, __int128 den) {
  if (den == 0) throw Error(ErrorKind::Usage, "rational with zero denominator");
  if (den < 0) {
    num = -num;
    den = -den;
  }
  __int128 a = num < 0 ? -num : num;
  __int128 b = den;
  while (b) {
    __int128 t = a % b;
    a = b;
    b = t;
  }
  if (a > 1) {
    num /= a;
    den /= a;
  }
  Rational r;
  r.num = narrow(num, "numerator");
  r.den = narrow(den, "denominator");
  return r;
}

}  // namespace

Rational::Rational(long long n, long long d) { *this = reduce(n, d); }

Rational operator+(const Rational& a, const Rational& b) {
  return reduce(static_cast<__int128>(a.num) * b.den + static_cast<__int128>(b.num) * a.den,
                static_cast<__int128>(a.den) * b.den);
}

Rational operator-(const Rational& a, const Rational& b) {
  return reduce(static_cast<__int128>(a.num) * b.den - static_cast<__int128>(b.num) * a.den,
                static_cast<__int128>(a.den) * b.den);
}

Rational operator*(const Rational& a, const Rational& b) {
  return reduce(static_cast<__int128>(a.num) * b.num, static_cast<__int128>(a.den) * b.den);
}

bool operator<(const Rational& a, const Rational& b) {
  return static_cast<__int128>(a.num) * b.den < static_cast<__int128>(b.num) * a.den;
}

bool operator<=(const Rational& a, const Rational& b) {
  return static_cast<__int128>(a.num) * b.den <= static_cast<__int128>(b.num) * a.den;
}

namespace {

long long parse_ll(std::string_view s, const std::string& whole) {
  long long v = 0;
  auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc{} || p != s.data() + s.size())
    throw Error(ErrorKind::Usage, "bad rational " + whole);
  return v;
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r'))
    s.remove_suffix(1);
  return s;
}

}  // namespace

Rational parse_rational(const std::string& text) {
  std::string_view s = trim(text);
  if (s.empty()) throw Error(ErrorKind::Usage, "bad rational " + text);
  if (auto slash = s.find('/'); slash != std::string_view::npos) {
    long long n = parse_ll(s.substr(0, slash), text);
    long long d = parse_ll(s.substr(slash + 1), text);
    return Rational(n, d);
  }
  if (auto dot = s.find('.'); dot != std::string_view::npos) {
    bool neg = !s.empty() && s.front() == '-';
    std::string_view ip = s.substr(0, dot);
    std::string_view fp = s.substr(dot + 1);
    if (fp.empty() || fp.size() > 18) throw Error(ErrorKind::Usage, "bad rational " + text);
    long long whole = parse_ll(ip.empty() || ip == "-" ? std::string_view("0") : ip, text);
    long long frac = parse_ll(fp, text);
    if (frac < 0) throw Error(ErrorKind::Usage, "bad rational " + text);
    __int128 den = 1;
    for (size_t i = 0; i < fp.size(); i++) den *= 10;
    __int128 num = static_cast<__int128>(whole < 0 ? -whole : whole) * den + frac;
    if (neg) num = -num;
    Rational r;
    r.num = narrow(num, "numerator");
    r.den = narrow(den, "denominator");
    return Rational(r.num, r.den);
  }
  return Rational(parse_ll(s, text));
}

std::string to_string(const Rational& r) {
  if (r.den == 1) return std::to_string(r.num);
  return std::to_string(r.num) + "/" + std::to_string(r.den);
}

Rational CostModel::of(Rule r) const {
  auto it = weight.find(r);
  return it == weight.end() ? Rational() : it->second;
}

namespace {

constexpr Rule kAllRules[] = {Rule::Assign, Rule::New,     Rule::Get,    Rule::AwaitI,
                              Rule::AwaitII, Rule::Async,  Rule::Sync,   Rule::ReturnA,
                              Rule::ReturnS, Rule::IfT,    Rule::IfF,    Rule::WhileT,
                              Rule::WhileF,  Rule::Skip};

}  // namespace

CostModel steps_model() {
  CostModel m;
  m.name = "steps";
  for (Rule r : kAllRules) m.weight[r] = Rational(1);
  return m;
}

CostModel memory_model() {
  CostModel m;
  m.name = "memory";
  m.weight[Rule::New] = Rational(1);
  return m;
}

CostModel model_from_text(const std::string& text) {
  CostModel m;
  std::istringstream in(text);
  std::string line;
  bool named = false;
  size_t lineno = 0;
  while (std::getline(in, line)) {
    lineno++;
    std::string_view s = trim(line);
    if (auto hash = s.find('#'); hash != std::string_view::npos) s = trim(s.substr(0, hash));
    if (s.empty()) continue;
    if (!named) {
      m.name = std::string(s);
      named = true;
      continue;
    }
    auto eq = s.find('=');
    if (eq == std::string_view::npos)
      throw Error(ErrorKind::Usage,
                  "model line " + std::to_string(lineno) + ": expected kind=weight");
    std::string kind(trim(s.substr(0, eq)));
    bool known = false;
    for (Rule r : kAllRules)
      if (kind == rule_name(r)) {
        m.weight[r] = parse_rational(std::string(s.substr(eq + 1)));
        known = true;
        break;
      }
    if (!known)
      throw Error(ErrorKind::Usage,
                  "model line " + std::to_string(lineno) + ": unknown rule kind " + kind);
  }
  if (!named) throw Error(ErrorKind::Usage, "model file has no name line");
  return m;
}

CostModel builtin_model(const std::string& name) {
  if (name == "steps") return steps_model();
  if (name == "memory") return memory_model();
  throw Error(ErrorKind::Usage, "unknown cost model " + name + " (builtins: steps, memory)");
}

CostReport cost_of_trace(const std::vector<Step>& steps, const CostModel& model) {
  CostReport rep;
  for (const Step& s : steps) {
    Rational w = model.of(s.rule);
    rep.total = rep.total + w;
    rep.per_object[s.object] = rep.per_object[s.object] + w;
  }
  for (auto it = rep.per_object.begin(); it != rep.per_object.end();)
    it = it->second == Rational() ? rep.per_object.erase(it) : std::next(it);
  return rep;
}

PreservationDiff check_preservation(const std::vector<Step>& a, const std::vector<Step>& b,
                                    const CostModel& model) {
  CostReport ra = cost_of_trace(a, model);
  CostReport rb = cost_of_trace(b, model);
  PreservationDiff d;
  for (const auto& [o, c] : ra.per_object) {
    auto it = rb.per_object.find(o);
    if (it == rb.per_object.end() || !(it->second == c)) d.objects.push_back(o);
  }
  for (const auto& [o, c] : rb.per_object)
    if (!ra.per_object.count(o)) d.objects.push_back(o);
  d.equal = d.objects.empty();
  return d;
}

bool check_bound(const CostReport& report, Ref o, const Rational& bound) {
  auto it = report.per_object.find(o);
  Rational c = it == report.per_object.end() ? Rational() : it->second;
  return c <= bound;
}

std::vector<BoundRow> parse_bounds_csv(const std::string& text) {
  std::vector<BoundRow> rows;
  std::istringstream in(text);
  std::string line;
  size_t lineno = 0;
  while (std::getline(in, line)) {
    lineno++;
    std::string_view s = trim(line);
    if (s.empty()) continue;
    std::vector<std::string> fields;
    size_t start = 0;
    std::string ls(s);
    for (size_t i = 0; i <= ls.size(); i++) {
      if (i == ls.size() || ls[i] == ',') {
        fields.push_back(std::string(trim(std::string_view(ls).substr(start, i - start))));
        start = i + 1;
      }
    }
    if (lineno == 1 && fields.size() == 4 && fields[0] == "program") continue;
    if (fields.size() != 4)
      throw Error(ErrorKind::Usage, "bounds line " + std::to_string(lineno) +
                                        ": expected program,n,object,bound");
    BoundRow row;
    row.program = fields[0];
    row.n = parse_ll(fields[1], line);
    row.object = parse_ll(fields[2], line);
    row.bound = parse_rational(fields[3]);
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace actlang::cost
