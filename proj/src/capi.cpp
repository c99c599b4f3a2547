#include "actlang/actlang.h"

#include <cstring>
#include <fstream>
#include <sstream>

#include "bench.hpp"
#include "bridge.hpp"
#include "compiler.hpp"
#include "cost.hpp"
#include "interp.hpp"
#include "parser.hpp"
#include "runtime.hpp"
#include "trace.hpp"

using namespace actlang;

struct al_program {
  ast::Program program;
};

struct al_trace {
  std::vector<Step> steps;
  RunStatus status = RunStatus::Finished;
};

namespace {

char* dup_string(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

void set_err(char** err, const std::string& msg) {
  if (err) *err = dup_string(msg);
}

al_status status_of(const Error& e) {
  switch (e.kind) {
    case ErrorKind::Syntax: return AL_ERR_PARSE;
    case ErrorKind::Validation: return AL_ERR_VALIDATE;
    case ErrorKind::Io: return AL_ERR_IO;
    case ErrorKind::Usage: return AL_ERR_USAGE;
    default: return AL_ERR_RUNTIME;
  }
}

// Runs `body` and funnels every failure into (status, *err).
template <typename F>
al_status guarded(char** err, F&& body) {
  try {
    return body();
  } catch (const Error& e) {
    set_err(err, e.what());
    return status_of(e);
  } catch (const std::exception& e) {
    set_err(err, e.what());
    return AL_ERR_RUNTIME;
  }
}

al_status need(bool ok, const char* what, char** err) {
  if (ok) return AL_OK;
  set_err(err, std::string("missing required argument: ") + what);
  return AL_ERR_USAGE;
}

struct RunOutput {
  std::vector<Step> steps;
  RunStatus status;
};

RunOutput run_program(const ast::Program& p, const std::string& semantics,
                      const std::string& policy, uint64_t seed, uint64_t fuel) {
  if (semantics == "rt") {
    ir::MethodTable table = compiler::compile_program(p);
    rt::RtRun run = rt::run_rt(table, fuel);
    return {std::move(run.steps), run.status};
  }
  if (semantics != "source")
    throw Error(ErrorKind::Usage, "unknown semantics " + semantics + " (use source or rt)");

  sem::SchedulerPolicy pol;
  if (policy == "random" || policy.empty()) {
    pol = sem::random_policy();
  } else if (policy == "rr") {
    pol = sem::round_robin_policy();
  } else if (policy.rfind("script:", 0) == 0) {
    std::vector<Ref> script;
    std::string rest = policy.substr(7);
    size_t start = 0;
    while (start <= rest.size() && !rest.empty()) {
      size_t comma = rest.find(',', start);
      size_t end = comma == std::string::npos ? rest.size() : comma;
      script.push_back(std::stoll(rest.substr(start, end - start)));
      if (comma == std::string::npos) break;
      start = comma + 1;
    }
    pol = sem::scripted_policy(std::move(script));
  } else {
    throw Error(ErrorKind::Usage,
                "unknown policy " + policy + " (use random, rr, or script:...)");
  }
  sem::SourceRun run = sem::run(p, pol, seed, fuel);
  return {std::move(run.steps), run.status};
}

}  // namespace

al_status al_parse(const char* text, al_program** out, char** err) {
  if (al_status s = need(text && out, "text/out", err); s != AL_OK) return s;
  return guarded(err, [&] {
    auto* p = new al_program{parse::parse_program(text)};
    *out = p;
    return AL_OK;
  });
}

al_status al_parse_file(const char* path, al_program** out, char** err) {
  if (al_status s = need(path && out, "path/out", err); s != AL_OK) return s;
  return guarded(err, [&] {
    std::ifstream in(path);
    if (!in) throw Error(ErrorKind::Io, std::string("cannot read ") + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    auto* p = new al_program{parse::parse_program(buf.str())};
    *out = p;
    return AL_OK;
  });
}

void al_program_free(al_program* p) { delete p; }

al_status al_pretty(const al_program* p, char** out, char** err) {
  if (al_status s = need(p && out, "program/out", err); s != AL_OK) return s;
  return guarded(err, [&] {
    *out = dup_string(ast::pretty(p->program));
    return AL_OK;
  });
}

al_status al_dump_ir(const al_program* p, char** out, char** err) {
  if (al_status s = need(p && out, "program/out", err); s != AL_OK) return s;
  return guarded(err, [&] {
    *out = dup_string(ir::dump_table(compiler::compile_program(p->program)));
    return AL_OK;
  });
}

al_status al_run(const al_program* p, const char* semantics, const char* policy, uint64_t seed,
                 uint64_t fuel, al_trace** out, char** err) {
  if (al_status s = need(p && semantics && out, "program/semantics/out", err); s != AL_OK)
    return s;
  return guarded(err, [&] {
    RunOutput r = run_program(p->program, semantics, policy ? policy : "", seed, fuel);
    *out = new al_trace{std::move(r.steps), r.status};
    return AL_OK;
  });
}

void al_trace_free(al_trace* t) { delete t; }

al_run_result al_trace_run_status(const al_trace* t) {
  switch (t->status) {
    case RunStatus::Finished: return AL_RUN_FINISHED;
    case RunStatus::Deadlock: return AL_RUN_DEADLOCK;
    case RunStatus::FuelExhausted: return AL_RUN_FUEL;
  }
  return AL_RUN_FINISHED;
}

size_t al_trace_steps(const al_trace* t) { return t->steps.size(); }

al_status al_trace_jsonl(const al_trace* t, char** out, char** err) {
  if (al_status s = need(t && out, "trace/out", err); s != AL_OK) return s;
  return guarded(err, [&] {
    *out = dup_string(trace_jsonl(t->steps));
    return AL_OK;
  });
}

al_status al_check(const al_program* p, uint64_t fuel, int* sound, char** report, char** err) {
  if (al_status s = need(p && sound, "program/sound", err); s != AL_OK) return s;
  return guarded(err, [&] {
    ir::MethodTable table = compiler::compile_program(p->program);
    rt::RtRun run = rt::run_rt(table, fuel);
    bridge::Verdict v = bridge::check_trace(run.steps, p->program);
    *sound = v.ok ? 1 : 0;
    if (report) {
      std::string text;
      for (size_t i = 0; i < v.steps_checked; i++)
        text += "OK " + std::to_string(i) + " " + std::to_string(run.steps[i].object) + " " +
                rule_name(run.steps[i].rule) + "\n";
      for (const auto& f : v.failures)
        text += "FAIL " + std::to_string(f.index) + " " + f.reason + "\n";
      if (v.ok)
        text += "SOUND " + std::to_string(v.steps_checked) + " steps\n";
      else
        text += "UNSOUND at " + std::to_string(v.failures.front().index) + "\n";
      *report = dup_string(text);
    }
    return AL_OK;
  });
}

al_status al_cost_report(const al_program* p, const char* semantics, const char* model,
                         uint64_t seed, uint64_t fuel, char** out, char** err) {
  if (al_status s = need(p && semantics && model && out, "program/semantics/model/out", err);
      s != AL_OK)
    return s;
  return guarded(err, [&] {
    std::string m = model;
    cost::CostModel cm;
    if (m.rfind("file:", 0) == 0) {
      std::ifstream in(m.substr(5));
      if (!in) throw Error(ErrorKind::Io, "cannot read " + m.substr(5));
      std::ostringstream buf;
      buf << in.rdbuf();
      cm = cost::model_from_text(buf.str());
    } else {
      cm = cost::builtin_model(m);
    }
    RunOutput r = run_program(p->program, semantics, "", seed, fuel);
    cost::CostReport rep = cost::cost_of_trace(r.steps, cm);
    std::string text;
    for (const auto& [o, c] : rep.per_object)
      text += std::to_string(o) + "," + cost::to_string(c) + "\n";
    text += "total," + cost::to_string(rep.total) + "\n";
    *out = dup_string(text);
    return AL_OK;
  });
}

al_status al_bench_program(const char* family, int64_t n, char** out, char** err) {
  if (al_status s = need(family && out, "family/out", err); s != AL_OK) return s;
  return guarded(err, [&] {
    auto f = bench::family_from_name(family);
    if (!f) throw Error(ErrorKind::Usage, std::string("unknown family ") + family);
    *out = dup_string(bench::gen_text(*f, n));
    return AL_OK;
  });
}

al_status al_bench_sweep(const char* family, const int64_t* ns, size_t ns_len, char** csv,
                         char** err) {
  if (al_status s = need(family && ns && csv, "family/ns/csv", err); s != AL_OK) return s;
  return guarded(err, [&] {
    auto f = bench::family_from_name(family);
    if (!f) throw Error(ErrorKind::Usage, std::string("unknown family ") + family);
    std::vector<long long> sizes(ns, ns + ns_len);
    *csv = dup_string(bench::sweep_csv(*f, bench::sweep(*f, sizes)));
    return AL_OK;
  });
}

al_status al_check_bounds(const al_program* p, const char* name, const char* bounds_csv,
                          uint64_t fuel, int* within, char** report, char** err) {
  if (al_status s = need(p && name && bounds_csv && within, "program/name/csv/within", err);
      s != AL_OK)
    return s;
  return guarded(err, [&] {
    std::vector<cost::BoundRow> rows = cost::parse_bounds_csv(bounds_csv);
    std::vector<cost::BoundRow> mine;
    for (auto& r : rows)
      if (r.program == name) mine.push_back(std::move(r));
    if (mine.empty())
      throw Error(ErrorKind::Usage, std::string("no bounds rows match program ") + name);

    ir::MethodTable table = compiler::compile_program(p->program);
    rt::RtRun run = rt::run_rt(table, fuel);
    cost::CostReport rep = cost::cost_of_trace(run.steps, cost::steps_model());

    bool ok = true;
    std::string text;
    for (const auto& r : mine) {
      bool holds = cost::check_bound(rep, r.object, r.bound);
      ok = ok && holds;
      auto it = rep.per_object.find(r.object);
      cost::Rational actual = it == rep.per_object.end() ? cost::Rational() : it->second;
      text += std::string(holds ? "OK" : "EXCEEDED") + " object " + std::to_string(r.object) +
              " cost " + cost::to_string(actual) + " bound " + cost::to_string(r.bound) + "\n";
    }
    *within = ok ? 1 : 0;
    if (report) *report = dup_string(text);
    return AL_OK;
  });
}

void al_string_free(char* s) { std::free(s); }
