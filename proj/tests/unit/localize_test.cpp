#include <gtest/gtest.h>

#include "mend/corpus/corpus.hpp"
#include "mend/faultloc/localize.hpp"
#include "mend/lang/parser.hpp"
#include "mend/problem/problem.hpp"
#include "testkit.hpp"

namespace mend::faultloc {
namespace {

using testkit::run_source;

std::map<int, int> by_line(const std::vector<CandidateLocation>& cs) {
  std::map<int, int> out;
  for (const auto& c : cs) out[c.line] = c.priority;
  return out;
}

std::vector<CandidateLocation> localize_default(const interp::ExecutionTrace& t, const LocalizeOptions& o = {}) {
  const auto spec = problem::infer_default(t);
  return localize(t, problem::initial_context(spec, t), spec.stop_time, o);
}

TEST(Localize, PrioritiesDecayWithComputations) {
  const auto t = run_source("fn main() {\n  let x = 2;\n  let y = x + 1;\n  assert(y == 4);\n  return y;\n}\n");
  EXPECT_EQ(by_line(localize_default(t)), (std::map<int, int>{{2, 9}, {3, 10}, {4, 10}}));
}

TEST(Localize, StraightLineLocationHasNoCandidates) {
  interp::RunOptions o;
  o.breakpoint = interp::Breakpoint{4, 1};
  const auto t = run_source("fn main() {\n  let x = 2;\n  let y = x + 1;\n  return y;\n}\n", o);
  const auto spec = problem::make_location_problem(t);
  EXPECT_TRUE(localize(t, problem::initial_context(spec, t), spec.stop_time).empty());
}

TEST(Localize, LocationFollowsCallSitesAndBranches) {
  const char* src = R"(fn g(v) {
  if (v > 1) {
    print(v);
  }
  return v;
}

fn main() {
  let a = 3;
  let b = g(a);
  return b;
}
)";
  interp::RunOptions o;
  o.breakpoint = interp::Breakpoint{3, 1};
  const auto t = run_source(src, o);
  const auto spec = problem::make_location_problem(t);
  const auto got = by_line(localize(t, problem::initial_context(spec, t), spec.stop_time));
  // The branch, the value it tested, and the call that reached it.
  EXPECT_EQ(got, (std::map<int, int>{{2, 10}, {9, 9}, {10, 9}}));
}

TEST(Localize, ExclusionsHideButPropagate) {
  const char* src = R"(fn driver(v) {
  let w = v * 2;
  return w;
}

fn main() {
  let a = 1;
  let b = driver(a);
  assert(b == 3);
  return b;
}
)";
  const auto t = run_source(src);
  LocalizeOptions o;
  o.exclusions = {"driver"};
  const auto got = by_line(localize_default(t, o));
  EXPECT_FALSE(got.count(2));
  EXPECT_FALSE(got.count(3));
  EXPECT_TRUE(got.count(7));
}

TEST(Localize, ElementWritesAtOtherIndicesAreIgnored) {
  const auto t = run_source("fn main() {\n  let xs = array(3, 0);\n  xs[0] = 1;\n  xs[2] = 5;\n  assert(xs[0] == 2);\n  return 0;\n}\n");
  const auto got = by_line(localize_default(t));
  EXPECT_TRUE(got.count(3));
  EXPECT_FALSE(got.count(4));
}

TEST(Localize, RequiresFlowAndValidStopTime) {
  interp::RunOptions o;
  o.record_flow = false;
  const auto t = run_source("fn main() {\n  return 1 / 0;\n}\n", o);
  Context ctx;
  ctx.merge(interp::Reference::cond(), 10);
  EXPECT_THROW(localize(t, ctx, 0), std::invalid_argument);
  const auto f = run_source("fn main() {\n  return 1 / 0;\n}\n");
  EXPECT_THROW(localize(f, ctx, 5), std::out_of_range);
}

TEST(DedupeAndRank, MergesAndOrders) {
  CandidateLocation a{5, "f", 7, {1}, 10, 10, 3};
  CandidateLocation b{5, "f", 9, {2}, 12, 8, 1};
  CandidateLocation c{2, "f", 9, {0}, 4, 4, 9};
  const auto out = dedupe_and_rank({a, b, c});
  ASSERT_EQ(out.size(), 2u);
  EXPECT_EQ(out[0].line, 5);
  EXPECT_EQ(out[0].priority, 9);
  EXPECT_EQ(out[0].node_ids, (std::vector<lang::NodeId>{1, 2}));
  EXPECT_EQ(out[0].earliest_time, 8);
  EXPECT_EQ(out[1].line, 2);
  EXPECT_TRUE(dedupe_and_rank({}).empty());
}

TEST(Localize, CorpusGoldenLinesAreCandidates) {
  for (const auto& c : corpus::load_corpus(testkit::corpus_dir())) {
    if (!c.fixable) continue;
    interp::RunOptions o;
    o.breakpoint = c.breakpoint;
    const auto t = interp::run(lang::parse(c.source), c.entry, c.args, o);
    const auto spec = c.problem.is_null() ? problem::infer_default(t) : problem::problem_from_json(c.problem, t);
    const auto got = localize(t, problem::initial_context(spec, t), spec.stop_time);
    const auto first = localize(t, problem::initial_context(spec, t), spec.stop_time);
    EXPECT_EQ(got, first) << c.name;
    auto all = got;
    const auto extra = discarded_results(*lang::parse(c.source), t, spec.stop_time, got);
    all.insert(all.end(), extra.begin(), extra.end());
    all = dedupe_and_rank(all);
    EXPECT_TRUE(std::any_of(all.begin(), all.end(), [&](const auto& l) { return l.line == c.golden_line; }))
        << c.name;
  }
}

TEST(DiscardedResults, ReportsThrownAwayComparisons) {
  const char* src = R"(fn main() {
  let a = 0;
  let b = 4;
  if (a == 0) {
    a == b;
  }
  abs(b);
  assert(a == 4);
  return a;
}
)";
  const auto ast = lang::parse(src);
  const auto t = interp::run(ast, "main", std::vector<interp::DeepValue>{});
  const auto spec = problem::infer_default(t);
  const auto slice = localize(t, problem::initial_context(spec, t), spec.stop_time);
  EXPECT_FALSE(by_line(slice).count(5));
  const auto extra = discarded_results(*ast, t, spec.stop_time, slice);
  EXPECT_EQ(by_line(extra), (std::map<int, int>{{5, 9}, {7, 9}}));
  LocalizeOptions o;
  o.exclusions = {"main"};
  EXPECT_TRUE(discarded_results(*ast, t, spec.stop_time, slice, o).empty());
  EXPECT_TRUE(discarded_results(*ast, t, spec.stop_time, {}).empty());
}

TEST(Localize, GcdFixLineHasHighPriority) {
  const auto c = corpus::load_case(testkit::corpus_dir() / "gcd");
  const auto got = by_line(localize_default(run_source(c.source)));
  ASSERT_TRUE(got.count(c.golden_line));
  EXPECT_GE(got.at(c.golden_line), 8);
}

}  // namespace
}  // namespace mend::faultloc
