#include <cstdint>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "actlang/actlang.h"

namespace {

constexpr uint64_t kDefaultFuel = 1000000;

int exit_code(al_status s) {
  switch (s) {
    case AL_OK: return 0;
    case AL_ERR_RUNTIME: return 1;
    default: return 2;  // parse, validate, usage, io
  }
}

// Prints the C API error to stderr and frees it.
int fail(al_status s, char* err) {
  if (err) {
    std::fprintf(stderr, "error: %s\n", err);
    al_string_free(err);
  }
  return exit_code(s);
}

struct Owned {
  char* s = nullptr;
  ~Owned() { al_string_free(s); }
};

struct OwnedProgram {
  al_program* p = nullptr;
  ~OwnedProgram() { al_program_free(p); }
};

struct OwnedTrace {
  al_trace* t = nullptr;
  ~OwnedTrace() { al_trace_free(t); }
};

bool write_file(const std::string& path, const char* text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) return false;
  out << text;
  return static_cast<bool>(out);
}

const char* status_name(al_run_result r) {
  switch (r) {
    case AL_RUN_FINISHED: return "finished";
    case AL_RUN_DEADLOCK: return "deadlock";
    case AL_RUN_FUEL: return "fuel-exhausted";
  }
  return "finished";
}

// Turns `script:FILE` into the inline `script:1,2,...` form the library takes.
bool load_script(const std::string& path, std::string& policy, std::string& msg) {
  std::ifstream in(path);
  if (!in) {
    msg = "cannot read scheduler script " + path;
    return false;
  }
  policy = "script:";
  bool first = true;
  std::string tok;
  while (in >> tok) {
    for (char& c : tok)
      if (c == ',') c = ' ';
    std::istringstream parts(tok);
    std::string num;
    while (parts >> num) {
      if (!first) policy += ',';
      policy += num;
      first = false;
    }
  }
  if (first) {
    msg = "scheduler script " + path + " lists no objects";
    return false;
  }
  return true;
}

int cmd_run(const std::string& file, const std::string& sem, const std::string& scheduler,
            uint64_t seed, uint64_t fuel, const std::string& trace_path) {
  char* err = nullptr;
  OwnedProgram prog;
  if (al_status s = al_parse_file(file.c_str(), &prog.p, &err); s != AL_OK) return fail(s, err);

  std::string policy = scheduler;
  if (policy.rfind("script:", 0) == 0) {
    std::string msg;
    if (!load_script(policy.substr(7), policy, msg)) {
      std::fprintf(stderr, "error: %s\n", msg.c_str());
      return 2;
    }
  }

  OwnedTrace trace;
  if (al_status s = al_run(prog.p, sem.c_str(), policy.c_str(), seed, fuel, &trace.t, &err);
      s != AL_OK)
    return fail(s, err);

  Owned jsonl;
  if (al_status s = al_trace_jsonl(trace.t, &jsonl.s, &err); s != AL_OK) return fail(s, err);

  al_run_result status = al_trace_run_status(trace.t);
  if (!trace_path.empty()) {
    if (!write_file(trace_path, jsonl.s)) {
      std::fprintf(stderr, "error: cannot write %s\n", trace_path.c_str());
      return 2;
    }
    std::printf("%s %zu steps\n", status_name(status), al_trace_steps(trace.t));
  } else {
    std::fputs(jsonl.s, stdout);
    std::fprintf(stderr, "%s %zu steps\n", status_name(status), al_trace_steps(trace.t));
  }
  if (status == AL_RUN_DEADLOCK) return 3;
  if (status == AL_RUN_FUEL) return 4;
  return 0;
}

int cmd_compile(const std::string& file, bool dump) {
  char* err = nullptr;
  OwnedProgram prog;
  if (al_status s = al_parse_file(file.c_str(), &prog.p, &err); s != AL_OK) return fail(s, err);
  Owned text;
  if (al_status s = al_dump_ir(prog.p, &text.s, &err); s != AL_OK) return fail(s, err);
  if (dump) std::fputs(text.s, stdout);
  return 0;
}

int cmd_check(const std::string& file, uint64_t fuel) {
  char* err = nullptr;
  OwnedProgram prog;
  if (al_status s = al_parse_file(file.c_str(), &prog.p, &err); s != AL_OK) return fail(s, err);

  int sound = 0;
  Owned report;
  if (al_status s = al_check(prog.p, fuel, &sound, &report.s, &err); s != AL_OK)
    return fail(s, err);
  std::fputs(report.s, stdout);
  if (!sound) return 1;

  OwnedTrace trace;
  if (al_status s = al_run(prog.p, "rt", "", 0, fuel, &trace.t, &err); s != AL_OK)
    return fail(s, err);
  return al_trace_run_status(trace.t) == AL_RUN_FUEL ? 4 : 0;
}

int cmd_cost(const std::string& file, const std::string& model, const std::string& model_file,
             bool per_object, uint64_t fuel) {
  char* err = nullptr;
  OwnedProgram prog;
  if (al_status s = al_parse_file(file.c_str(), &prog.p, &err); s != AL_OK) return fail(s, err);

  std::string selector = model_file.empty() ? model : "file:" + model_file;
  Owned report;
  if (al_status s = al_cost_report(prog.p, "rt", selector.c_str(), 0, fuel, &report.s, &err);
      s != AL_OK)
    return fail(s, err);

  std::istringstream lines(report.s);
  std::string line;
  while (std::getline(lines, line)) {
    if (per_object || line.rfind("total,", 0) == 0) std::printf("%s\n", line.c_str());
  }

  OwnedTrace trace;
  if (al_status s = al_run(prog.p, "rt", "", 0, fuel, &trace.t, &err); s != AL_OK)
    return fail(s, err);
  return al_trace_run_status(trace.t) == AL_RUN_FUEL ? 4 : 0;
}

int cmd_bench(const std::string& family, int64_t n, const std::vector<int64_t>& sweep,
              const std::string& csv_path) {
  char* err = nullptr;
  if (!sweep.empty()) {
    Owned csv;
    if (al_status s = al_bench_sweep(family.c_str(), sweep.data(), sweep.size(), &csv.s, &err);
        s != AL_OK)
      return fail(s, err);
    if (!csv_path.empty()) {
      if (!write_file(csv_path, csv.s)) {
        std::fprintf(stderr, "error: cannot write %s\n", csv_path.c_str());
        return 2;
      }
    } else {
      std::fputs(csv.s, stdout);
    }
    return 0;
  }
  if (n < 1) {
    std::fprintf(stderr, "error: bench needs --n N or --sweep a,b,c\n");
    return 2;
  }
  Owned text;
  if (al_status s = al_bench_program(family.c_str(), n, &text.s, &err); s != AL_OK)
    return fail(s, err);
  std::fputs(text.s, stdout);
  return 0;
}

int cmd_bounds(const std::string& file, const std::string& bounds_path, uint64_t fuel) {
  char* err = nullptr;
  OwnedProgram prog;
  if (al_status s = al_parse_file(file.c_str(), &prog.p, &err); s != AL_OK) return fail(s, err);

  std::ifstream in(bounds_path);
  if (!in) {
    std::fprintf(stderr, "error: cannot read %s\n", bounds_path.c_str());
    return 2;
  }
  std::ostringstream buf;
  buf << in.rdbuf();

  // Rows are keyed by the program file's stem.
  std::string stem = file;
  if (size_t slash = stem.find_last_of("/\\"); slash != std::string::npos)
    stem = stem.substr(slash + 1);
  if (size_t dot = stem.rfind('.'); dot != std::string::npos && dot > 0) stem = stem.substr(0, dot);

  int within = 0;
  Owned report;
  if (al_status s = al_check_bounds(prog.p, stem.c_str(), buf.str().c_str(), fuel, &within,
                                    &report.s, &err);
      s != AL_OK)
    return fail(s, err);
  std::fputs(report.s, stdout);
  return within ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"actor language toolchain"};
  app.require_subcommand(1);

  std::string file, sem = "rt", scheduler = "random", trace_path;
  uint64_t seed = 0, fuel = kDefaultFuel;
  bool dump = false;
  std::string model = "steps", model_file;
  bool per_object = false;
  std::string family, csv_path, bounds_path;
  int64_t n = 0;
  std::vector<int64_t> sweep;

  auto* run = app.add_subcommand("run", "execute a program and emit its trace");
  run->add_option("FILE", file)->required();
  run->add_option("--sem", sem)->check(CLI::IsMember({"source", "rt"}));
  run->add_option("--scheduler", scheduler);
  run->add_option("--seed", seed);
  run->add_option("--fuel", fuel);
  run->add_option("--trace", trace_path);

  auto* compile = app.add_subcommand("compile", "translate a program to the statement IR");
  compile->add_option("FILE", file)->required();
  compile->add_flag("--dump", dump);

  auto* check = app.add_subcommand("check", "replay the runtime trace against the source rules");
  check->add_option("FILE", file)->required();
  check->add_option("--fuel", fuel);

  auto* cost = app.add_subcommand("cost", "price an execution under a cost model");
  cost->add_option("FILE", file)->required();
  cost->add_option("--model", model);
  cost->add_option("--model-file", model_file);
  cost->add_flag("--per-object", per_object);
  cost->add_option("--fuel", fuel);

  auto* bench = app.add_subcommand("bench", "generate benchmark programs and step counts");
  bench->add_option("FAMILY", family)->required();
  bench->add_option("--n", n);
  bench->add_option("--sweep", sweep)->delimiter(',');
  bench->add_option("--csv", csv_path);

  auto* bounds = app.add_subcommand("bounds", "check per-object step counts against a CSV");
  bounds->add_option("FILE", file)->required();
  bounds->add_option("--bounds", bounds_path)->required();
  bounds->add_option("--fuel", fuel);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  if (run->parsed()) return cmd_run(file, sem, scheduler, seed, fuel, trace_path);
  if (compile->parsed()) return cmd_compile(file, dump);
  if (check->parsed()) return cmd_check(file, fuel);
  if (cost->parsed()) return cmd_cost(file, model, model_file, per_object, fuel);
  if (bench->parsed()) return cmd_bench(family, n, sweep, csv_path);
  if (bounds->parsed()) return cmd_bounds(file, bounds_path, fuel);
  return 2;
}
