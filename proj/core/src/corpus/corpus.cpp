#include "mend/corpus/corpus.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include "mend/interp/value_json.hpp"
#include "mend/lang/diff.hpp"
#include "mend/lang/parser.hpp"
#include "mend/lang/printer.hpp"

namespace mend::corpus {

namespace fs = std::filesystem;

namespace {

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  if (!in) throw CorpusError("cannot read " + p.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string canonical(const std::string& source) { return lang::print_program(*lang::parse(source)); }

// Changed lines in a unified diff, not counting headers.
int changed_lines(const std::string& diff) {
  int removed = 0;
  int added = 0;
  std::istringstream in(diff);
  std::string line;
  while (std::getline(in, line)) {
    if (line.rfind("---", 0) == 0 || line.rfind("+++", 0) == 0) continue;
    if (!line.empty() && line[0] == '-') ++removed;
    if (!line.empty() && line[0] == '+') ++added;
  }
  return std::max(removed, added);
}

}  // namespace

BugCase load_case(const fs::path& dir) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(slurp(dir / "case.json"));
  } catch (const nlohmann::json::exception& e) {
    throw CorpusError(dir.string() + "/case.json: " + e.what());
  }
  BugCase c;
  c.dir = dir;
  c.name = j.value("name", dir.filename().string());
  c.source = slurp(dir / "bug.mini");
  c.golden = slurp(dir / "golden.mini");
  c.entry = j.value("entry", "main");
  for (const auto& a : j.value("args", nlohmann::json::array())) c.args.push_back(interp::deep_value_from_json(a));
  if (j.contains("break") && !j["break"].is_null()) {
    c.breakpoint = interp::Breakpoint{j["break"].at("line").get<int>(), j["break"].value("count", 1)};
  }
  c.problem = j.value("problem", nlohmann::json());
  c.expected = j.value("expected", "");
  c.golden_line = j.value("golden_line", 0);
  c.category = j.value("category", "");
  c.fixable = j.value("fixable", true);
  for (const auto& a : j.value("alternatives", nlohmann::json::array())) {
    c.alternatives.push_back(slurp(dir / a.get<std::string>()));
  }
  return c;
}

std::vector<BugCase> load_corpus(const fs::path& dir) {
  std::vector<fs::path> dirs;
  if (!fs::is_directory(dir)) throw CorpusError(dir.string() + " is not a directory");
  for (const auto& e : fs::directory_iterator(dir)) {
    if (e.is_directory() && fs::exists(e.path() / "case.json")) dirs.push_back(e.path());
  }
  std::sort(dirs.begin(), dirs.end());
  std::vector<BugCase> out;
  for (const auto& d : dirs) out.push_back(load_case(d));
  std::sort(out.begin(), out.end(), [](const BugCase& a, const BugCase& b) { return a.name < b.name; });
  return out;
}

std::vector<std::string> accepted_texts(const BugCase& c) {
  std::vector<std::string> out{canonical(c.golden)};
  for (const auto& a : c.alternatives) out.push_back(canonical(a));
  return out;
}

std::vector<CaseCheck> verify_corpus(const std::vector<BugCase>& cases, std::int64_t budget) {
  std::vector<CaseCheck> out;
  for (const auto& c : cases) {
    CaseCheck check{c.name, {}};
    auto problem = [&](std::string msg) { check.problems.push_back(std::move(msg)); };
    try {
      auto bug = lang::parse(c.source);
      if (lang::print_program(*bug) != c.source) problem("bug.mini is not in canonical form");
      interp::RunOptions opts;
      opts.budget = budget;
      opts.breakpoint = c.breakpoint;
      auto t = interp::run(bug, c.entry, c.args, opts);
      if (c.expected == "break") {
        if (t.outcome.kind != interp::OutcomeKind::StoppedAtBreak) problem("bug did not stop at the breakpoint");
      } else {
        auto kind = interp::error_kind_from_string(c.expected);
        if (!kind) problem("unknown expected outcome '" + c.expected + "'");
        else if (t.outcome.kind != interp::OutcomeKind::Raised || !t.outcome.error || t.outcome.error->kind != *kind) {
          problem("bug did not raise " + c.expected + " (" + std::string(interp::to_string(t.outcome.kind)) + ")");
        }
      }
      std::vector<std::string> fixes{c.golden};
      fixes.insert(fixes.end(), c.alternatives.begin(), c.alternatives.end());
      for (std::size_t i = 0; i < fixes.size(); ++i) {
        const std::string label = i == 0 ? "golden" : "alternative " + std::to_string(i);
        auto fixed = lang::parse(fixes[i]);
        interp::RunOptions gopts;
        gopts.budget = budget;
        auto g = interp::run(fixed, c.entry, c.args, gopts);
        if (g.outcome.kind != interp::OutcomeKind::ReturnedNormally) {
          problem(label + " did not return normally (" + std::string(interp::to_string(g.outcome.kind)) + ")");
        }
        const int changed = changed_lines(lang::diff_render(*bug, *fixed));
        if (changed == 0) problem(label + " is identical to the bug");
        if (c.fixable && i == 0 && c.golden_line > 0) {
          std::istringstream a(lang::print_program(*bug));
          std::istringstream b(lang::print_program(*fixed));
          std::string la;
          std::string lb;
          int line = 0;
          bool golden_line_changed = false;
          while (std::getline(a, la) && std::getline(b, lb)) {
            ++line;
            if (la != lb && line == c.golden_line) golden_line_changed = true;
          }
          if (!golden_line_changed) problem("golden line " + std::to_string(c.golden_line) + " is unchanged");
        }
      }
    } catch (const std::exception& e) {
      problem(e.what());
    }
    out.push_back(std::move(check));
  }
  return out;
}

}  // namespace mend::corpus
