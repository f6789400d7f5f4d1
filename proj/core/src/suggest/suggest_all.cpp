#include <algorithm>
#include <atomic>
#include <thread>
#include <unordered_set>

#include "mend/lang/parser.hpp"
#include "mend/lang/printer.hpp"
#include "mend/suggest/suggest.hpp"

namespace mend::suggest {

namespace {

struct Slot {
  std::vector<Repair> repairs;
};

template <typename Fn>
void parallel_for(std::size_t n, unsigned threads, Fn&& fn) {
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = static_cast<unsigned>(std::min<std::size_t>(threads, n));
  if (threads <= 1) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::thread> pool;
  pool.reserve(threads);
  for (unsigned w = 0; w < threads; ++w) {
    pool.emplace_back([&] {
      for (std::size_t i = next++; i < n; i = next++) fn(i);
    });
  }
  for (auto& t : pool) t.join();
}

std::map<std::string, interp::ValueKind> live_variables(const interp::Replayer& replay, interp::FrameId frame) {
  std::map<std::string, interp::ValueKind> out;
  for (const auto& [key, v] : replay.locals()) {
    if (key.first == frame) out[key.second] = interp::kind_of(v);
  }
  return out;
}

// The failing assertion states what the program should do; weakening it is
// not a repair.
bool edits_oracle(const lang::NodeIndex& index, const problem::ProblemSpec& spec, const lang::Edit& edit) {
  if (spec.kind != problem::ProblemKind::Assertion) return false;
  const auto* loc = index.find(edit.target);
  return loc && loc->owner && loc->owner->id == spec.stop_stmt;
}

}  // namespace

std::vector<Repair> suggest_all(const Registry& registry, const lang::Ast& ast,
                                const std::vector<faultloc::CandidateLocation>& candidates,
                                const problem::ProblemSpec& spec, const interp::ExecutionTrace& trace,
                                const SuggestOptions& options) {
  const lang::NodeIndex index(*ast);
  const std::string original = lang::print_program(*ast);

  std::map<lang::NodeId, std::vector<interp::ValueKind>> call_args;
  for (const auto& s : trace.steps) {
    if (s.kind != interp::StepKind::Call) continue;
    std::vector<interp::ValueKind> kinds;
    for (const auto& a : s.args) kinds.push_back(interp::kind_of(a));
    call_args[s.call_node] = std::move(kinds);
  }

  // Variable kinds per candidate, from one forward replay.
  std::vector<std::map<std::string, interp::ValueKind>> variables(candidates.size());
  {
    std::vector<std::size_t> order(candidates.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
      return candidates[a].latest_time < candidates[b].latest_time;
    });
    interp::Replayer replay(trace);
    for (auto i : order) {
      const auto t = candidates[i].latest_time;
      if (t < 0 || t >= static_cast<interp::Time>(trace.size())) continue;
      replay.advance_to(t);
      variables[i] = live_variables(replay, trace.at(t).frame);
    }
  }

  const auto& suggesters = registry.suggesters();
  const std::size_t tasks = candidates.size() * suggesters.size();
  std::vector<Slot> slots(tasks);
  parallel_for(tasks, options.threads, [&](std::size_t task) {
    const std::size_t ci = task / suggesters.size();
    const auto& suggester = *suggesters[task % suggesters.size()];
    const auto& loc = candidates[ci];
    SuggestContext ctx{*ast, index, loc, spec, trace, index.statements_on_line(loc.function, loc.line),
                       variables[ci], call_args};
    if (ctx.statements.empty()) return;
    const double priority = options.combine(suggester.tier(), loc.priority);
    for (auto& proposal : suggester.generate(ctx)) {
      if (edits_oracle(index, spec, proposal.edit)) continue;
      Repair r;
      try {
        r.result = lang::apply_edit(ast, proposal.edit);
        r.result_text = lang::print_program(*r.result);
        lang::parse(r.result_text);
      } catch (const lang::ApplyError&) {
        continue;
      } catch (const lang::ParseError&) {
        continue;
      }
      if (r.result_text == original) continue;
      r.edit = std::move(proposal.edit);
      r.description = std::move(proposal.description);
      r.syntactic_priority = priority;
      r.suggester = suggester.id();
      r.function = loc.function;
      r.line = proposal.line.value_or(loc.line);
      r.location_priority = loc.priority;
      slots[task].repairs.push_back(std::move(r));
    }
  });

  std::vector<Repair> all;
  for (auto& slot : slots) {
    for (auto& r : slot.repairs) all.push_back(std::move(r));
  }
  std::stable_sort(all.begin(), all.end(),
                   [](const Repair& a, const Repair& b) { return a.syntactic_priority > b.syntactic_priority; });
  std::vector<Repair> out;
  std::unordered_set<std::string> seen;
  for (auto& r : all) {
    if (seen.insert(r.result_text).second) out.push_back(std::move(r));
  }
  return out;
}

}  // namespace mend::suggest
