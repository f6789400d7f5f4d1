#include "mend/interp/value_json.hpp"
#include "mend/problem/problem.hpp"

namespace mend::problem {

TargetSpec target_from_json(const nlohmann::json& j) {
  if (j.is_null()) return {};
  const std::string kind = j.value("kind", "unknown");
  if (kind == "exact") {
    if (!j.contains("value")) throw InvalidProblem("exact target needs a value");
    return TargetSpec::exact(interp::deep_value_from_json(j.at("value")));
  }
  if (kind == "nonnil") return TargetSpec::non_nil();
  if (kind == "greater_than") {
    if (!j.contains("value") || !j.at("value").is_number_integer()) {
      throw InvalidProblem("greater_than target needs an integer value");
    }
    return TargetSpec::greater_than(j.at("value").get<std::int64_t>());
  }
  if (kind == "unknown") return {};
  throw InvalidProblem("unknown target kind '" + kind + "'");
}

nlohmann::json to_json(const TargetSpec& target) {
  switch (target.kind) {
    case TargetKind::Exact: return {{"kind", "exact"}, {"value", interp::to_json(target.value)}};
    case TargetKind::NonNil: return {{"kind", "nonnil"}};
    case TargetKind::GreaterThan: return {{"kind", "greater_than"}, {"value", target.bound}};
    case TargetKind::Unknown: return {{"kind", "unknown"}};
  }
  return nullptr;
}

ProblemSpec problem_from_json(const nlohmann::json& j, const interp::ExecutionTrace& trace) {
  if (!j.is_object() || !j.contains("kind")) throw InvalidProblem("problem must be an object with a kind");
  const std::string kind = j.at("kind").get<std::string>();
  if (kind == "variable") {
    if (!j.contains("name")) throw InvalidProblem("variable problem needs a name");
    return make_variable_problem(trace, j.at("name").get<std::string>(),
                                 target_from_json(j.value("target", nlohmann::json())));
  }
  if (kind == "location") return make_location_problem(trace);
  if (kind == "exception" || kind == "assertion") {
    ProblemSpec spec = infer_default(trace);
    if (spec.kind != ProblemKind::Exception && spec.kind != ProblemKind::Assertion) {
      throw InvalidProblem("the run did not stop on an error");
    }
    return spec;
  }
  throw InvalidProblem("unknown problem kind '" + kind + "'");
}

nlohmann::json to_json(const ProblemSpec& spec) {
  nlohmann::json j;
  j["kind"] = to_string(spec.kind);
  j["stop_time"] = spec.stop_time;
  j["stop_line"] = spec.stop_line;
  j["stop_function"] = spec.stop_function;
  if (spec.error) {
    j["error"] = {{"kind", interp::to_string(spec.error->kind)},
                  {"line", spec.error->line},
                  {"node", spec.error->node},
                  {"message", spec.error->message}};
  }
  if (spec.kind == ProblemKind::Variable) {
    j["name"] = spec.variable;
    j["current"] = interp::to_json(spec.current);
    j["target"] = to_json(spec.target);
  }
  return j;
}

}  // namespace mend::problem
