#pragma once

#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "mend/interp/interpreter.hpp"

namespace mend::corpus {

// One directory holding bug.mini, golden.mini and case.json:
//   {"name": "gcd", "entry": "main", "args": [],
//    "break": {"line": 7, "count": 5},          optional
//    "problem": {"kind": "assertion"},          optional, default inferred
//    "expected": "AssertFailed" | "break",
//    "golden_line": 5, "category": "argswap", "fixable": true,
//    "alternatives": ["alt1.mini"]}             optional, also correct
struct BugCase {
  std::string name;
  std::filesystem::path dir;
  std::string source;
  std::string golden;
  std::vector<std::string> alternatives;
  std::string entry = "main";
  std::vector<interp::DeepValue> args;
  std::optional<interp::Breakpoint> breakpoint;
  nlohmann::json problem;  // null: inferred
  std::string expected;
  int golden_line = 0;
  std::string category;
  bool fixable = true;
};

class CorpusError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

BugCase load_case(const std::filesystem::path& dir);
// Every subdirectory with a case.json, ordered by name.
std::vector<BugCase> load_corpus(const std::filesystem::path& dir);

// Canonical texts counted as a correct repair.
std::vector<std::string> accepted_texts(const BugCase& c);

struct CaseCheck {
  std::string name;
  std::vector<std::string> problems;
  bool ok() const { return problems.empty(); }
};

// Runs each case: the bug must fail as expected, the golden program (and
// every alternative) must return normally and differ from the bug, and a
// fixable case's golden program must change its golden line.
std::vector<CaseCheck> verify_corpus(const std::vector<BugCase>& cases, std::int64_t budget = 500000);

}  // namespace mend::corpus
