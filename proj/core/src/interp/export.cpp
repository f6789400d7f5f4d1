#include <nlohmann/json.hpp>

#include "mend/interp/trace.hpp"

namespace mend::interp {

// Record layout, one JSON object per line:
//   {"t", "kind", "line", "frame", "stmt", "cp", ...kind-specific fields,
//    "writes": [{"ref", "old", "new"}], "reads": [ref...]}
std::string export_trace(const ExecutionTrace& trace) {
  std::string out;
  for (const auto& s : trace.steps) {
    nlohmann::json j;
    j["t"] = s.time;
    j["kind"] = to_string(s.kind);
    j["line"] = s.line;
    j["frame"] = s.frame;
    j["stmt"] = s.stmt;
    j["cp"] = s.control_parent;
    switch (s.kind) {
      case StepKind::Branch: j["taken"] = s.taken; break;
      case StepKind::Call: {
        j["callee"] = s.callee;
        j["callee_frame"] = s.callee_frame;
        auto args = nlohmann::json::array();
        for (const auto& a : s.args) args.push_back(to_string(a));
        j["args"] = args;
        break;
      }
      case StepKind::Return: j["value"] = to_string(s.value); break;
      case StepKind::Raise:
        if (s.error) {
          j["error"] = to_string(s.error->kind);
          j["node"] = s.error->node;
          j["message"] = s.error->message;
        }
        break;
      default: break;
    }
    auto writes = nlohmann::json::array();
    for (const auto& w : s.writes) {
      writes.push_back({{"ref", to_string(w.ref)}, {"old", to_string(w.old_value)}, {"new", to_string(w.new_value)}});
    }
    j["writes"] = writes;
    auto reads = nlohmann::json::array();
    for (const auto& r : s.reads) reads.push_back(to_string(r));
    j["reads"] = reads;
    out += j.dump();
    out += '\n';
  }
  return out;
}

}  // namespace mend::interp
