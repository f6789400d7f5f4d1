#include "mend/engine/session.hpp"

#include <algorithm>

#include "mend/interp/value_json.hpp"
#include "mend/lang/diff.hpp"
#include "mend/lang/parser.hpp"

namespace mend::engine {

using interp::OutcomeKind;

std::string_view to_string(SessionState state) {
  switch (state) {
    case SessionState::Idle: return "idle";
    case SessionState::Stopped: return "stopped";
    case SessionState::Suggesting: return "suggesting";
    case SessionState::Done: return "done";
  }
  return "?";
}

RunRequest run_request_from_json(const nlohmann::json& j) {
  RunRequest r;
  r.source = j.at("source").get<std::string>();
  if (j.contains("entry")) r.entry = j.at("entry").get<std::string>();
  if (j.contains("args")) {
    for (const auto& a : j.at("args")) r.args.push_back(interp::deep_value_from_json(a));
  }
  if (j.contains("break") && !j.at("break").is_null()) {
    const auto& b = j.at("break");
    r.breakpoint = interp::Breakpoint{b.at("line").get<int>(), b.value("count", 1)};
  }
  if (j.contains("budget") && !j.at("budget").is_null()) r.budget = j.at("budget").get<std::int64_t>();
  return r;
}

nlohmann::json to_json(const RunRequest& r) {
  nlohmann::json args = nlohmann::json::array();
  for (const auto& a : r.args) args.push_back(interp::to_json(a));
  nlohmann::json j = {{"source", r.source}, {"entry", r.entry}, {"args", args}};
  j["break"] = r.breakpoint ? nlohmann::json{{"line", r.breakpoint->line}, {"count", r.breakpoint->count}}
                            : nlohmann::json(nullptr);
  j["budget"] = r.budget ? nlohmann::json(*r.budget) : nlohmann::json(nullptr);
  return j;
}

namespace {

std::string describe_outcome(const interp::ExecutionTrace& t) {
  switch (t.outcome.kind) {
    case OutcomeKind::ReturnedNormally:
      return "returned normally with " + interp::to_string(t.outcome.value, t.final_heap);
    case OutcomeKind::Raised:
      if (t.outcome.error) {
        return std::string(interp::to_string(t.outcome.error->kind)) + " at line " +
               std::to_string(t.outcome.error->line) + ": " + t.outcome.error->message;
      }
      return "raised";
    case OutcomeKind::BudgetExceeded: return "exceeded the step budget";
    case OutcomeKind::StoppedAtBreak:
      return "stopped at the breakpoint on line " + std::to_string(t.steps.empty() ? 0 : t.steps.back().line);
    case OutcomeKind::Cancelled: return "cancelled";
  }
  return "?";
}

}  // namespace

nlohmann::json outcome_json(const interp::ExecutionTrace& t) {
  nlohmann::json j = {{"kind", interp::to_string(t.outcome.kind)},
                      {"steps", t.size()},
                      {"detail", describe_outcome(t)}};
  if (!t.steps.empty()) j["line"] = t.steps.back().line;
  if (t.outcome.error) {
    j["error"] = {{"kind", interp::to_string(t.outcome.error->kind)},
                  {"line", t.outcome.error->line},
                  {"message", t.outcome.error->message}};
  }
  if (t.outcome.kind == OutcomeKind::ReturnedNormally) j["value"] = interp::to_json(t.outcome.value, t.final_heap);
  if (!t.output.empty()) j["output"] = t.output;
  return j;
}

Session Session::start(RunRequest request, EngineConfig config) {
  Session s;
  s.request_ = std::move(request);
  s.config_ = std::move(config);
  s.registry_ = std::make_shared<const suggest::Registry>(suggest::Registry::with_builtins());
  s.execute();
  return s;
}

void Session::execute() {
  ast_ = lang::parse(request_.source);
  interp::RunOptions opts;
  opts.budget = request_.budget.value_or(config_.run_budget);
  opts.breakpoint = request_.breakpoint;
  trace_ = interp::run(ast_, request_.entry, request_.args, opts);
  candidates_.clear();
  baseline_.reset();
  repairs_.clear();
  spec_.reset();
  if (trace_.outcome.kind == OutcomeKind::ReturnedNormally || trace_.steps.empty()) {
    state_ = SessionState::Idle;
  } else {
    spec_ = problem::infer_default(trace_);
    state_ = SessionState::Stopped;
  }
}

const problem::ProblemSpec& Session::problem() const {
  if (!spec_) throw BadState("the program is not stopped");
  return *spec_;
}

void Session::set_problem(problem::ProblemSpec spec) {
  if (state_ == SessionState::Idle) throw problem::NoProblem("the program returned normally");
  if (state_ == SessionState::Suggesting) throw BadState("suggestions are in progress");
  spec_ = std::move(spec);
  state_ = SessionState::Stopped;
  repairs_.clear();
}

void Session::set_problem_json(const nlohmann::json& j) {
  if (state_ == SessionState::Idle) throw problem::NoProblem("the program returned normally");
  set_problem(problem::problem_from_json(j, trace_));
}

SuggestSummary Session::suggest(const std::function<void(const RankedRepair&)>& on_repair,
                                const std::atomic<bool>* cancel) {
  if (state_ == SessionState::Idle) throw problem::NoProblem("the program returned normally");
  if (state_ == SessionState::Suggesting) throw BadState("suggestions are in progress");
  state_ = SessionState::Suggesting;
  repairs_.clear();
  last_summary_.reset();
  SuggestSummary summary;
  try {
    faultloc::LocalizeOptions lopts;
    lopts.exclusions = config_.exclusions;
    auto ctx = problem::initial_context(*spec_, trace_);
    auto found = faultloc::localize(trace_, ctx, spec_->stop_time, lopts);
    auto discarded = faultloc::discarded_results(*ast_, trace_, spec_->stop_time, found, lopts);
    found.insert(found.end(), discarded.begin(), discarded.end());
    candidates_ = faultloc::dedupe_and_rank(std::move(found));
    summary.candidates = candidates_.size();
    if (candidates_.empty()) throw NoCandidates("fault localization found no candidate lines");

    baseline::BaselinePlan plan =
        start_override_ ? baseline::plan_for_frame(ast_, trace_, *spec_, *start_override_, request_.breakpoint,
                                                   config_.baseline)
                        : baseline::select_start(ast_, trace_, *spec_, candidates_, request_.breakpoint,
                                                 config_.baseline);
    baseline_ = baseline::rebase(ast_, trace_, *spec_, plan);
    summary.plan = plan;
    summary.baseline_steps = static_cast<std::int64_t>(baseline_->trace.size());

    suggest::SuggestOptions sopts;
    sopts.threads = config_.threads;
    auto generated = suggest::suggest_all(*registry_, ast_, candidates_, *spec_, trace_, sopts);
    summary.generated = generated.size();

    auto bopts = config_.batch_options();
    bopts.cancel = cancel;
    bopts.caps.max_steps = std::max<std::int64_t>(0, bopts.caps.max_steps - summary.baseline_steps);
    bopts.likely_caps.max_steps = std::max<std::int64_t>(0, bopts.likely_caps.max_steps - summary.baseline_steps);
    std::int64_t through = 0;
    auto stats = validate::validate_batch(
        ast_, generated, *baseline_, bopts, [&](std::size_t i, const validate::ValidationResult& v) {
          through += v.cost;
          if (v.score < config_.validity_threshold || v.score <= 0) return;
          RankedRepair r;
          r.repair = generated[i];
          r.validation = v;
          r.combined_score = config_.syntactic_weight * generated[i].syntactic_priority +
                             config_.semantic_weight * v.score;
          r.order = i;
          r.steps_through = through;
          auto pos = std::upper_bound(repairs_.begin(), repairs_.end(), r, [](const auto& a, const auto& b) {
            if (a.combined_score != b.combined_score) return a.combined_score > b.combined_score;
            return a.order < b.order;
          });
          pos = repairs_.insert(pos, std::move(r));
          for (std::size_t k = 0; k < repairs_.size(); ++k) repairs_[k].rank = static_cast<int>(k + 1);
          if (on_repair) on_repair(*pos);
        });
    summary.validated = stats.validated;
    summary.steps = stats.steps;
    summary.likely = stats.likely;
    summary.cancelled = stats.cancelled;
    summary.accepted = repairs_.size();
  } catch (...) {
    state_ = SessionState::Done;
    throw;
  }
  state_ = SessionState::Done;
  last_summary_ = summary;
  if (repairs_.empty() && !summary.cancelled) {
    throw NoValidRepairs("no repair scored above the validity threshold (" + std::to_string(summary.validated) +
                         " validated)");
  }
  return summary;
}

const RankedRepair& Session::at_rank(int rank) const {
  if (rank < 1 || rank > static_cast<int>(repairs_.size())) {
    throw BadRank("no repair at rank " + std::to_string(rank));
  }
  return repairs_[static_cast<std::size_t>(rank - 1)];
}

std::string Session::preview(int rank) const {
  const auto& r = at_rank(rank);
  return lang::diff_render(*ast_, *r.repair.result);
}

ApplyResult Session::apply(int rank) {
  const RankedRepair chosen = at_rank(rank);
  ApplyResult out;
  out.source = chosen.repair.result_text;
  out.diff = lang::diff_render(*ast_, *chosen.repair.result);
  if (baseline_) {
    interp::RunOptions opts;
    opts.budget = baseline_->plan.budget;
    const auto& snap = baseline_->plan.snapshot;
    auto t = interp::run(chosen.repair.result, snap.function, snap.args, snap.heap, opts);
    out.outcome = t.outcome.kind;
    out.detail = describe_outcome(t);
    out.steps = static_cast<std::int64_t>(t.size());
  }
  request_.source = out.source;
  execute();
  out.state = state_;
  return out;
}

nlohmann::json to_json(const baseline::BaselinePlan& p) {
  nlohmann::json path = nlohmann::json::array();
  for (const auto& [fn, ord] : p.call_path) path.push_back({{"function", fn}, {"ordinal", ord}});
  return {{"frame", p.start_frame},   {"function", p.function}, {"call_path", path},
          {"extent", p.extent},       {"budget", p.budget},     {"problem_time", p.problem_time},
          {"promoted", p.promoted}};
}

nlohmann::json to_json(const RankedRepair& r) {
  const auto& m = r.validation.match;
  nlohmann::json match = {{"problem_call_matched", m.problem_call_matched},
                          {"problem_point_matched", m.problem_point_matched},
                          {"outcome", interp::to_string(m.rep_outcome)}};
  match["control_div_time"] = m.control_div_time ? nlohmann::json(*m.control_div_time) : nlohmann::json(nullptr);
  match["data_div_time"] = m.data_div_time ? nlohmann::json(*m.data_div_time) : nlohmann::json(nullptr);
  return {{"rank", r.rank},
          {"description", r.repair.description},
          {"suggester", r.repair.suggester},
          {"function", r.repair.function},
          {"line", r.repair.line},
          {"location_priority", r.repair.location_priority},
          {"syntactic_priority", r.repair.syntactic_priority},
          {"semantic_score", r.validation.score},
          {"combined_score", r.combined_score},
          {"cost", r.validation.cost},
          {"match", match}};
}

nlohmann::json to_json(const SuggestSummary& s) {
  return {{"candidates", s.candidates}, {"generated", s.generated}, {"validated", s.validated},
          {"accepted", s.accepted},     {"steps", s.steps},         {"baseline_steps", s.baseline_steps},
          {"likely", s.likely},         {"cancelled", s.cancelled}, {"plan", to_json(s.plan)}};
}

nlohmann::json to_json(const ApplyResult& r) {
  return {{"source", r.source},
          {"diff", r.diff},
          {"outcome", interp::to_string(r.outcome)},
          {"detail", r.detail},
          {"steps", r.steps},
          {"state", to_string(r.state)}};
}

}  // namespace mend::engine
