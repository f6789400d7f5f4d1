#include <gtest/gtest.h>

#include <fstream>

#include "mend/corpus/corpus.hpp"
#include "mend/engine/bench.hpp"
#include "mend/engine/config.hpp"
#include "mend/engine/session.hpp"
#include "testkit.hpp"

namespace mend::engine {
namespace {

RunRequest request_for(const corpus::BugCase& c) {
  RunRequest r;
  r.source = c.source;
  r.entry = c.entry;
  r.args = c.args;
  r.breakpoint = c.breakpoint;
  return r;
}

TEST(Session, GcdEndToEnd) {
  const auto c = corpus::load_case(testkit::corpus_dir() / "gcd");
  auto s = Session::start(request_for(c));
  EXPECT_EQ(s.state(), SessionState::Stopped);
  std::vector<int> streamed;
  const auto summary = s.suggest([&](const RankedRepair& r) { streamed.push_back(r.rank); });
  EXPECT_EQ(s.state(), SessionState::Done);
  EXPECT_GT(summary.candidates, 0u);
  EXPECT_GE(summary.generated, summary.validated);
  EXPECT_EQ(summary.accepted, s.repairs().size());
  EXPECT_EQ(streamed.size(), s.repairs().size());
  for (std::size_t i = 0; i < s.repairs().size(); ++i) {
    const auto& r = s.repairs()[i];
    EXPECT_EQ(r.rank, static_cast<int>(i + 1));
    EXPECT_GE(r.validation.score, 0.25);
    EXPECT_NEAR(r.combined_score, 0.25 * r.repair.syntactic_priority + 0.75 * r.validation.score, 1e-12);
    if (i > 0) { EXPECT_GE(s.repairs()[i - 1].combined_score, r.combined_score); }
  }
  const auto accepted = corpus::accepted_texts(c);
  int correct = 0;
  for (const auto& r : s.repairs()) {
    if (std::find(accepted.begin(), accepted.end(), r.repair.result_text) != accepted.end()) {
      correct = r.rank;
      break;
    }
  }
  ASSERT_GT(correct, 0);
  const auto diff = s.preview(correct);
  EXPECT_NE(diff.find("@@"), std::string::npos);
  EXPECT_THROW(s.preview(0), BadRank);
  EXPECT_THROW(s.at_rank(static_cast<int>(s.repairs().size()) + 1), BadRank);

  const auto applied = s.apply(correct);
  EXPECT_EQ(applied.outcome, interp::OutcomeKind::ReturnedNormally);
  EXPECT_EQ(applied.state, SessionState::Idle);
  EXPECT_EQ(s.request().source, applied.source);
  EXPECT_THROW(s.suggest(), problem::NoProblem);
  EXPECT_THROW(s.problem(), BadState);
}

TEST(Session, ProblemOverride) {
  const char* src = "fn main() {\n  let x = 1;\n  x = x + 1;\n  print(x);\n  return x;\n}\n";
  RunRequest r;
  r.source = src;
  r.breakpoint = interp::Breakpoint{4, 1};
  auto s = Session::start(r);
  EXPECT_EQ(s.problem().kind, problem::ProblemKind::Location);
  s.set_problem_json({{"kind", "variable"}, {"name", "x"}});
  EXPECT_EQ(s.problem().kind, problem::ProblemKind::Variable);
  EXPECT_EQ(s.problem().current, interp::DeepValue(2));
  s.suggest();
  ASSERT_FALSE(s.repairs().empty());
  for (const auto& r : s.repairs()) {
    ASSERT_TRUE(r.validation.match.repaired_value_at_match);
    EXPECT_NE(*r.validation.match.repaired_value_at_match, interp::DeepValue(2));
  }
}

TEST(Session, Errors) {
  RunRequest ok;
  ok.source = "fn main() {\n  return 1;\n}\n";
  auto s = Session::start(ok);
  EXPECT_EQ(s.state(), SessionState::Idle);
  EXPECT_THROW(s.suggest(), problem::NoProblem);
  EXPECT_THROW(s.set_problem_json({{"kind", "location"}}), problem::NoProblem);

  RunRequest bad;
  bad.source = "fn main() {\n  return 1\n}\n";
  EXPECT_THROW(Session::start(bad), lang::ParseError);
  RunRequest entry = ok;
  entry.entry = "nope";
  EXPECT_THROW(Session::start(entry), interp::EntryError);

  // Reaching a line of straight-line code depends on nothing.
  RunRequest straight;
  straight.source = "fn main() {\n  let a = 1;\n  let b = 2;\n  return a + b;\n}\n";
  straight.breakpoint = interp::Breakpoint{3, 1};
  auto st = Session::start(straight);
  EXPECT_THROW(st.suggest(), NoCandidates);
  EXPECT_EQ(st.state(), SessionState::Done);
}

TEST(Session, NoValidRepairsKeepsTheSummary) {
  // The only candidate is the assertion itself, which is never edited.
  RunRequest hopeless;
  hopeless.source = "fn main() {\n  assert(false);\n  return 0;\n}\n";
  auto s = Session::start(hopeless);
  EXPECT_THROW(s.suggest(), NoValidRepairs);
  ASSERT_TRUE(s.last_summary());
  EXPECT_EQ(s.last_summary()->candidates, 1u);
  EXPECT_EQ(s.last_summary()->validated, 0u);
  EXPECT_EQ(s.state(), SessionState::Done);
}

TEST(Session, RequestJsonRoundTrip) {
  RunRequest r;
  r.source = "fn main(a) {\n  return a;\n}\n";
  r.args = {interp::DeepValue(std::vector<interp::DeepValue>{1, 2})};
  r.breakpoint = interp::Breakpoint{2, 3};
  r.budget = 99;
  const auto back = run_request_from_json(to_json(r));
  EXPECT_EQ(back.source, r.source);
  EXPECT_EQ(back.args, r.args);
  ASSERT_TRUE(back.breakpoint);
  EXPECT_EQ(back.breakpoint->count, 3);
  EXPECT_EQ(back.budget, 99);
  EXPECT_EQ(run_request_from_json({{"source", "x"}, {"break", {{"line", 4}}}}).breakpoint->count, 1);
  EXPECT_ANY_THROW(run_request_from_json({{"entry", "main"}}));
}

TEST(Config, DefaultsAndRoundTrip) {
  const EngineConfig d;
  EXPECT_EQ(d.caps.max_repairs, 200u);
  EXPECT_EQ(d.caps.max_steps, 2000000);
  EXPECT_EQ(d.likely_caps.max_repairs, 100u);
  EXPECT_EQ(d.likely_caps.max_steps, 500000);
  EXPECT_DOUBLE_EQ(d.validity_threshold, 0.25);
  EXPECT_DOUBLE_EQ(d.baseline.promotion_ratio, 4.0);
  auto j = to_json(d);
  j["max_repairs"] = 7;
  j["exclusions"] = {"test"};
  const auto c = config_from_json(j);
  EXPECT_EQ(c.caps.max_repairs, 7u);
  EXPECT_EQ(c.exclusions, (std::set<std::string>{"test"}));
  EXPECT_EQ(to_json(config_from_json(to_json(c))), to_json(c));
  EXPECT_EQ(config_from_json(nlohmann::json::object()).caps.max_steps, 2000000);
  EXPECT_THROW(config_from_json({{"max_repair", 3}}), std::invalid_argument);
  EXPECT_THROW(config_from_json({{"run_budget", 0}}), std::invalid_argument);
  EXPECT_THROW(config_from_json(nlohmann::json::array()), std::invalid_argument);
  EXPECT_THROW(load_config("/nonexistent/config.json"), std::runtime_error);
}

TEST(Config, BatchOptionsCarryTheCaps) {
  EngineConfig c;
  c.caps = {5, 6};
  c.likely_caps = {3, 4};
  c.likely_threshold = 0.9;
  const auto b = c.batch_options();
  EXPECT_EQ(b.caps.max_repairs, 5u);
  EXPECT_EQ(b.likely_caps.max_steps, 4);
  EXPECT_DOUBLE_EQ(b.likely_threshold, 0.9);
}

TEST(Bench, SmallCorpusIsDeterministic) {
  std::vector<corpus::BugCase> cases;
  for (const char* name : {"gcd", "row-sums", "sieve"}) cases.push_back(corpus::load_case(testkit::corpus_dir() / name));
  const auto a = to_json(bench(cases, {}));
  const auto b = to_json(bench(cases, {}));
  EXPECT_EQ(a.dump(), b.dump());
  const auto& rows = a.at("rows");
  ASSERT_EQ(rows.size(), 3u);
  EXPECT_TRUE(rows[0].at("repaired").get<bool>());
  EXPECT_FALSE(rows[1].at("repaired").get<bool>());
  EXPECT_TRUE(rows[1].at("correct_rank").is_null());
  EXPECT_LE(rows[0].at("fix_time").get<double>(), rows[0].at("total_time").get<double>());
}

}  // namespace
}  // namespace mend::engine
