#include <gtest/gtest.h>

#include "mend/corpus/corpus.hpp"
#include "mend/lang/parser.hpp"
#include "mend/validate/validate.hpp"
#include "testkit.hpp"

namespace mend::validate {
namespace {

struct Pipeline {
  lang::Ast ast;
  interp::ExecutionTrace trace;
  problem::ProblemSpec spec;
  baseline::Baseline base;
  std::vector<suggest::Repair> repairs;

  explicit Pipeline(const std::string& name) {
    const auto c = corpus::load_case(testkit::corpus_dir() / name);
    ast = lang::parse(c.source);
    interp::RunOptions o;
    o.breakpoint = c.breakpoint;
    trace = interp::run(ast, c.entry, c.args, o);
    spec = c.problem.is_null() ? problem::infer_default(trace) : problem::problem_from_json(c.problem, trace);
    const auto cands = faultloc::dedupe_and_rank(
        faultloc::localize(trace, problem::initial_context(spec, trace), spec.stop_time));
    base = baseline::rebase(ast, trace, spec, baseline::select_start(ast, trace, spec, cands, c.breakpoint));
    repairs = suggest::suggest_all(suggest::Registry::with_builtins(), ast, cands, spec, trace);
  }

  struct Emitted {
    std::vector<std::size_t> order;
    std::vector<double> scores;
    std::vector<std::int64_t> costs;
    BatchStats stats;
  };

  Emitted batch(BatchOptions o) const {
    Emitted e;
    e.stats = validate_batch(ast, repairs, base, o, [&](std::size_t i, const ValidationResult& r) {
      e.order.push_back(i);
      e.scores.push_back(r.score);
      e.costs.push_back(r.cost);
    });
    return e;
  }
};

// The sequential reading, computed one repair at a time.
Pipeline::Emitted sequential(const Pipeline& p, const BatchOptions& o) {
  Pipeline::Emitted e;
  for (std::size_t i = 0; i < p.repairs.size(); ++i) {
    const BatchCaps& now = e.stats.likely ? o.likely_caps : o.caps;
    if (i >= now.max_repairs || e.stats.steps >= now.max_steps) break;
    const auto r = validate_repair(p.ast, p.repairs[i], p.base);
    e.order.push_back(i);
    e.scores.push_back(r.score);
    e.costs.push_back(r.cost);
    e.stats.steps += r.cost;
    ++e.stats.validated;
    if (r.score >= o.likely_threshold) e.stats.likely = true;
  }
  return e;
}

void expect_same(const Pipeline::Emitted& a, const Pipeline::Emitted& b) {
  EXPECT_EQ(a.order, b.order);
  EXPECT_EQ(a.scores, b.scores);
  EXPECT_EQ(a.costs, b.costs);
  EXPECT_EQ(a.stats.validated, b.stats.validated);
  EXPECT_EQ(a.stats.steps, b.stats.steps);
  EXPECT_EQ(a.stats.likely, b.stats.likely);
}

TEST(Batch, MatchesTheSequentialReadingAtAnyThreadCount) {
  for (const char* name : {"gcd", "quicksort", "hanoi"}) {
    const Pipeline p(name);
    ASSERT_FALSE(p.repairs.empty()) << name;
    BatchOptions o;
    const auto expected = sequential(p, o);
    for (unsigned threads : {1u, 2u, 8u}) {
      o.threads = threads;
      SCOPED_TRACE(std::string(name) + " threads=" + std::to_string(threads));
      expect_same(p.batch(o), expected);
    }
  }
}

TEST(Batch, RepairCap) {
  const Pipeline p("quicksort");
  BatchOptions o;
  o.caps = {3, 1000000000};
  o.likely_caps = o.caps;
  const auto e = p.batch(o);
  EXPECT_EQ(e.stats.validated, 3u);
  EXPECT_EQ(e.order, (std::vector<std::size_t>{0, 1, 2}));
}

TEST(Batch, StepCapStopsAfterTheCrossingRepair) {
  const Pipeline p("pascal");
  BatchOptions o;
  o.caps = {1000, 2000};
  o.likely_caps = o.caps;
  const auto e = p.batch(o);
  ASSERT_GT(e.stats.validated, 0u);
  EXPECT_LT(e.stats.validated, p.repairs.size());
  EXPECT_GE(e.stats.steps, 2000);
  EXPECT_LT(e.stats.steps - e.costs.back(), 2000);
  expect_same(e, sequential(p, o));
}

TEST(Batch, LikelyRepairTightensTheCaps) {
  const Pipeline p("quicksort");
  BatchOptions loose;
  loose.likely_caps = loose.caps;
  const auto a = p.batch(loose);
  const auto b = p.batch(BatchOptions{});
  EXPECT_TRUE(b.stats.likely);
  EXPECT_LT(b.stats.validated, a.stats.validated);
}

TEST(Batch, CancelAndEmpty) {
  const Pipeline p("gcd");
  std::atomic<bool> cancel{true};
  BatchOptions o;
  o.cancel = &cancel;
  const auto e = p.batch(o);
  EXPECT_TRUE(e.stats.cancelled);
  EXPECT_EQ(e.stats.validated, 0u);
  const auto none = validate_batch(p.ast, {}, p.base, BatchOptions{}, [](std::size_t, const ValidationResult&) {});
  EXPECT_EQ(none.validated, 0u);
}

}  // namespace
}  // namespace mend::validate
