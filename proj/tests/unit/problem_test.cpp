#include <gtest/gtest.h>

#include "mend/lang/parser.hpp"
#include "mend/problem/problem.hpp"
#include "testkit.hpp"

namespace mend::problem {
namespace {

using interp::Reference;
using testkit::run_source;

TEST(InferDefault, KindsFollowTheOutcome) {
  EXPECT_EQ(infer_default(run_source("fn main() {\n  return 1 / 0;\n}\n")).kind, ProblemKind::Exception);
  const auto a = infer_default(run_source("fn main() {\n  assert(1 == 2);\n  return 0;\n}\n"));
  EXPECT_EQ(a.kind, ProblemKind::Assertion);
  EXPECT_EQ(a.stop_line, 2);
  interp::RunOptions o;
  o.breakpoint = interp::Breakpoint{3, 1};
  const auto t = run_source("fn main() {\n  let x = 1;\n  x = 2;\n  return x;\n}\n", o);
  const auto l = infer_default(t);
  EXPECT_EQ(l.kind, ProblemKind::Location);
  EXPECT_EQ(l.stop_line, 3);
  EXPECT_EQ(l.stop_time, t.last_time());
  EXPECT_THROW(infer_default(run_source("fn main() {\n  return 0;\n}\n")), NoProblem);
}

TEST(InitialContext, Variable) {
  interp::RunOptions o;
  o.breakpoint = interp::Breakpoint{3, 1};
  const auto t = run_source("fn main() {\n  let x = 1;\n  x = 2;\n  return x;\n}\n", o);
  const auto spec = make_variable_problem(t, "x", TargetSpec::exact(5));
  EXPECT_EQ(spec.current, interp::DeepValue(1));
  const auto ctx = initial_context(spec, t);
  EXPECT_EQ(ctx.size(), 2u);
  EXPECT_EQ(ctx.priority(Reference::local(0, "x")), 10);
  EXPECT_EQ(ctx.priority(Reference::cond()), 10);
  // Local references resolve in the stopped state.
  EXPECT_TRUE(interp::state_at(t, spec.stop_time).count(Reference::local(0, "x")));
  EXPECT_THROW(make_variable_problem(t, "nope"), InvalidProblem);
}

TEST(InitialContext, LocationIsCondOnly) {
  interp::RunOptions o;
  o.breakpoint = interp::Breakpoint{2, 1};
  const auto t = run_source("fn main() {\n  let x = 1;\n  return x;\n}\n", o);
  const auto ctx = initial_context(make_location_problem(t), t);
  EXPECT_EQ(ctx.size(), 1u);
  EXPECT_EQ(ctx.priority(Reference::cond()), 10);
}

TEST(InitialContext, IndexOutOfBoundsSeedsBaseAndIndex) {
  const auto ast = lang::parse("fn main() {\n  let xs = [1];\n  let i = 3;\n  return xs[i];\n}\n");
  const auto t = interp::run(ast, "main", std::vector<interp::DeepValue>{});
  const auto spec = infer_default(t);
  ASSERT_EQ(spec.kind, ProblemKind::Exception);
  const auto ctx = initial_context(spec, t);
  const lang::NodeIndex index(*ast);
  const auto* access = index.expr(spec.error->node == lang::kNoNode ? 0 : spec.error->node);
  ASSERT_NE(access, nullptr);
  int stacks = 0;
  for (const auto& [ref, p] : ctx.entries()) {
    if (ref.kind == interp::RefKind::Stack) {
      const auto* e = index.expr(ref.node);
      ASSERT_NE(e, nullptr);
      EXPECT_EQ(e->kind, lang::ExprKind::Var);
      EXPECT_EQ(p, 10);
      ++stacks;
    }
  }
  EXPECT_EQ(stacks, 2);
  EXPECT_EQ(ctx.priority(Reference::cond()), 10);
}

TEST(InitialContext, StructuralComparisonSeedsElements) {
  const auto t = run_source("fn main() {\n  let xs = array(2, 0);\n  xs[1] = 4;\n  assert(xs == [0, 5]);\n  return 0;\n}\n");
  const auto ctx = initial_context(infer_default(t), t);
  EXPECT_EQ(ctx.priority(Reference::element(0, interp::kAnyIndex)), 10);
}

TEST(Context, MergeKeepsMaximumAndClamps) {
  faultloc::Context a;
  a.merge(Reference::local(0, "x"), 4);
  a.merge(Reference::local(0, "x"), 7);
  a.merge(Reference::local(0, "y"), 0);
  a.merge(Reference::local(0, "z"), 12);
  EXPECT_EQ(a.priority(Reference::local(0, "x")), 7);
  EXPECT_FALSE(a.contains(Reference::local(0, "y")));
  EXPECT_EQ(a.priority(Reference::local(0, "z")), 10);
  faultloc::Context b;
  b.merge(Reference::local(0, "x"), 9);
  a.merge(b);
  EXPECT_EQ(a.priority(Reference::local(0, "x")), 9);
}

TEST(Targets, Acceptance) {
  using interp::DeepValue;
  using interp::Nil;
  EXPECT_TRUE(TargetSpec::exact(3).accepts(DeepValue(3), DeepValue(1)));
  EXPECT_FALSE(TargetSpec::exact(3).accepts(DeepValue(4), DeepValue(1)));
  EXPECT_TRUE(TargetSpec::non_nil().accepts(DeepValue(0), DeepValue(Nil{})));
  EXPECT_FALSE(TargetSpec::non_nil().accepts(DeepValue(Nil{}), DeepValue(Nil{})));
  EXPECT_TRUE(TargetSpec::greater_than(0).accepts(DeepValue(1), DeepValue(0)));
  EXPECT_FALSE(TargetSpec::greater_than(0).accepts(DeepValue(0), DeepValue(0)));
  EXPECT_FALSE(TargetSpec::greater_than(0).accepts(DeepValue("x"), DeepValue(0)));
  EXPECT_TRUE(TargetSpec::unknown().accepts(DeepValue(2), DeepValue(1)));
  EXPECT_FALSE(TargetSpec::unknown().accepts(DeepValue(1), DeepValue(1)));
}

TEST(Json, RoundTrip) {
  interp::RunOptions o;
  o.breakpoint = interp::Breakpoint{3, 1};
  const auto t = run_source("fn main() {\n  let x = 1;\n  x = 2;\n  return x;\n}\n", o);
  const auto spec = problem_from_json(nlohmann::json::parse(R"({"kind":"variable","name":"x","target":{"kind":"greater_than","value":3}})"), t);
  EXPECT_EQ(spec.kind, ProblemKind::Variable);
  EXPECT_EQ(spec.target.kind, TargetKind::GreaterThan);
  EXPECT_EQ(spec.target.bound, 3);
  const auto j = to_json(spec);
  EXPECT_EQ(j.at("kind"), "variable");
  EXPECT_EQ(j.at("target").at("value"), 3);
  EXPECT_EQ(target_from_json(to_json(TargetSpec::exact(interp::DeepValue(std::vector<interp::DeepValue>{1})))).value,
            interp::DeepValue(std::vector<interp::DeepValue>{1}));
  EXPECT_EQ(problem_from_json(nlohmann::json::parse(R"({"kind":"variable","name":"x"})"), t).target.kind, TargetKind::Unknown);
  EXPECT_THROW(problem_from_json(nlohmann::json::parse(R"({"kind":"exception"})"), t), InvalidProblem);
  EXPECT_THROW(problem_from_json(nlohmann::json::parse(R"({"kind":"bogus"})"), t), InvalidProblem);
  EXPECT_THROW(target_from_json(nlohmann::json::parse(R"({"kind":"greater_than"})")), InvalidProblem);
}

}  // namespace
}  // namespace mend::problem
