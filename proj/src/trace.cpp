#include "trace.hpp"

#include <json.hpp>

namespace actlang {

const char* rule_name(Rule r) {
  switch (r) {
    case Rule::Assign: return "Assign";
    case Rule::New: return "New";
    case Rule::Get: return "Get";
    case Rule::AwaitI: return "AwaitI";
    case Rule::AwaitII: return "AwaitII";
    case Rule::Async: return "Async";
    case Rule::Sync: return "Sync";
    case Rule::ReturnA: return "ReturnA";
    case Rule::ReturnS: return "ReturnS";
    case Rule::IfT: return "IfT";
    case Rule::IfF: return "IfF";
    case Rule::WhileT: return "WhileT";
    case Rule::WhileF: return "WhileF";
    case Rule::Skip: return "Skip";
  }
  return "?";
}

const char* run_status_name(RunStatus s) {
  switch (s) {
    case RunStatus::Finished: return "finished";
    case RunStatus::Deadlock: return "deadlock";
    case RunStatus::FuelExhausted: return "fuel-exhausted";
  }
  return "?";
}

std::string trace_jsonl(const std::vector<Step>& steps) {
  std::string out;
  for (size_t i = 0; i < steps.size(); i++) {
    const Step& s = steps[i];
    nlohmann::ordered_json j;
    j["i"] = i;
    j["obj"] = s.object;
    j["rule"] = rule_name(s.rule);
    j["stmt"] = s.stmt;
    if (s.spawn) {
      nlohmann::ordered_json sp;
      sp["callee"] = s.spawn->callee;
      sp["method"] = s.spawn->method;
      sp["destiny"] = s.spawn->destiny;
      sp["args"] = s.spawn->args;
      j["spawn"] = sp;
    } else {
      j["spawn"] = nullptr;
    }
    out += j.dump();
    out += '\n';
  }
  return out;
}

}  // namespace actlang
