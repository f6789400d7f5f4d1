#include <gtest/gtest.h>

#include "mend/corpus/corpus.hpp"
#include "mend/lang/diff.hpp"
#include "mend/lang/edit.hpp"
#include "mend/lang/parser.hpp"
#include "mend/lang/printer.hpp"
#include "testkit.hpp"

namespace mend::lang {
namespace {

constexpr const char* kLoop = R"(fn main() {
  let s = 0;
  for (let i = 0; i < 3; i = i + 1) {
    s = s + i;
  }
  return s;
}
)";

const Stmt& first_stmt(const Ast& ast, std::size_t i) { return *ast->functions.front()->body.at(i); }

TEST(Parser, CanonicalPrintIsAFixpoint) {
  for (const auto& c : corpus::load_corpus(testkit::corpus_dir())) {
    const auto once = print_program(*parse(c.source));
    EXPECT_EQ(once, c.source) << c.name;
    EXPECT_EQ(print_program(*parse(once)), once) << c.name;
  }
}

TEST(Parser, ReportsPositionOfSyntaxErrors) {
  try {
    parse("fn main() {\n  let x = 1\n  return x;\n}\n");
    FAIL() << "expected a parse error";
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 3);
    EXPECT_GT(e.column(), 0);
  }
  EXPECT_THROW(parse("fn main() { let s = \"open; }"), ParseError);
  EXPECT_THROW(parse("fn main() { x = 99999999999999999999; }"), ParseError);
}

TEST(Parser, AssignsPreorderIds) {
  const auto ast = parse(kLoop);
  const auto& fn = *ast->functions.front();
  EXPECT_EQ(fn.id, 0);
  EXPECT_LT(fn.id, first_stmt(ast, 0).id);
  EXPECT_LT(first_stmt(ast, 0).id, first_stmt(ast, 1).id);
  EXPECT_EQ(ast->next_id, max_node_id(*ast) + 1);
  const NodeIndex index(*ast);
  const auto on_header = index.statements_on_line("main", 3);
  ASSERT_EQ(on_header.size(), 3u);
  EXPECT_EQ(on_header[0]->kind, StmtKind::For);
}

TEST(Printer, HeaderRendering) {
  const auto ast = parse(kLoop);
  EXPECT_EQ(print_stmt_header(first_stmt(ast, 1)), "for (let i = 0; i < 3; i = i + 1)");
  EXPECT_EQ(print_expr(*parse_expression("(a + b) * c - (d - e)")), "(a + b) * c - (d - e)");
  EXPECT_EQ(print_expr(*parse_expression("a - (b - c)")), "a - (b - c)");
}

TEST(Edit, ReplaceExprSharesUntouchedSubtrees) {
  const auto ast = parse(kLoop);
  const auto& loop = first_stmt(ast, 1);
  Edit e;
  e.kind = EditKind::ReplaceExpr;
  e.target = loop.condition()->id;
  e.expr = parse_expression("i <= 3");
  const auto applied = apply_edit_detailed(ast, e);
  EXPECT_EQ(applied.ast->functions.front()->body.at(0), ast->functions.front()->body.at(0));
  const auto& new_loop = *applied.ast->functions.front()->body.at(1);
  EXPECT_GE(new_loop.condition()->id, ast->next_id);
  EXPECT_EQ(print_stmt_header(new_loop), "for (let i = 0; i <= 3; i = i + 1)");
  EXPECT_EQ(print_program(*ast), kLoop);
}

TEST(Edit, GuardWrapsTheStatement) {
  const auto ast = parse("fn main() {\n  let d = 0;\n  let q = 4 / d;\n  return 0;\n}\n");
  Edit e;
  e.kind = EditKind::WrapStmtInGuard;
  e.target = first_stmt(ast, 1).id;
  e.expr = parse_expression("d != 0");
  EXPECT_EQ(print_program(*apply_edit(ast, e)),
            "fn main() {\n  let d = 0;\n  if (d != 0) {\n    let q = 4 / d;\n  }\n  return 0;\n}\n");
}

TEST(Edit, ReplaceStmtRecordsAlias) {
  const auto ast = parse(kLoop);
  Edit e;
  e.kind = EditKind::ReplaceStmt;
  e.target = first_stmt(ast, 0).id;
  e.stmt = parse("fn f() {\n  let s = 1;\n}\n")->functions.front()->body.front();
  const auto applied = apply_edit_detailed(ast, e);
  ASSERT_EQ(applied.aliases.size(), 1u);
  EXPECT_EQ(applied.aliases[0].second, first_stmt(ast, 0).id);
  EXPECT_EQ(applied.aliases[0].first, applied.ast->functions.front()->body.at(0)->id);
}

TEST(Edit, RejectsBadTargets) {
  const auto ast = parse(kLoop);
  Edit e;
  e.kind = EditKind::ReplaceExpr;
  e.target = 10'000;
  e.expr = parse_expression("1");
  EXPECT_THROW(apply_edit(ast, e), ApplyError);
  e.target = first_stmt(ast, 0).id;
  EXPECT_THROW(apply_edit(ast, e), ApplyError);
  Edit r;
  r.kind = EditKind::ReplaceStmt;
  r.target = first_stmt(ast, 1).id;
  r.stmt = ast->functions.front()->body.at(0);
  EXPECT_THROW(apply_edit(ast, r), ApplyError);
}

TEST(Structure, IgnoresIdsAndPositions) {
  const auto a = parse(kLoop);
  const auto b = parse(std::string("\n\n") + kLoop);
  EXPECT_TRUE(same_structure(*a, *b));
  EXPECT_FALSE(same_structure(*a, *parse("fn main() {\n  return 0;\n}\n")));
}

TEST(Diff, UnifiedHunks) {
  EXPECT_EQ(diff_text("a\nb\n", "a\nb\n"), "");
  EXPECT_EQ(diff_text("a\nb\nc\n", "a\nB\nc\n"), "--- before\n+++ after\n@@ -1,3 +1,3 @@\n a\n-b\n+B\n c\n");
  const auto far = diff_text("1\n2\n3\n4\n5\n6\n7\n8\n9\n10\n", "1\n2\n3\n4\n5\n6\n7\n8\n9\nX\n");
  EXPECT_NE(far.find("@@ -7,4 +7,4 @@"), std::string::npos);
}

}  // namespace
}  // namespace mend::lang
