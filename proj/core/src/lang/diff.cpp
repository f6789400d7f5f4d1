#include "mend/lang/diff.hpp"

#include <algorithm>
#include <sstream>
#include <vector>

#include "mend/lang/printer.hpp"

namespace mend::lang {

namespace {

constexpr int kContext = 3;

std::vector<std::string_view> split_lines(std::string_view text) {
  std::vector<std::string_view> lines;
  std::size_t start = 0;
  while (start < text.size()) {
    auto nl = text.find('\n', start);
    if (nl == std::string_view::npos) {
      lines.push_back(text.substr(start));
      break;
    }
    lines.push_back(text.substr(start, nl - start));
    start = nl + 1;
  }
  return lines;
}

struct Op {
  char tag;  // ' ', '-', '+'
  int a;     // index in before (or -1)
  int b;     // index in after (or -1)
};

std::vector<Op> lcs_ops(const std::vector<std::string_view>& a,
                        const std::vector<std::string_view>& b) {
  const int n = static_cast<int>(a.size());
  const int m = static_cast<int>(b.size());
  std::vector<std::vector<int>> dp(n + 1, std::vector<int>(m + 1, 0));
  for (int i = n - 1; i >= 0; --i) {
    for (int j = m - 1; j >= 0; --j) {
      dp[i][j] = a[i] == b[j] ? dp[i + 1][j + 1] + 1 : std::max(dp[i + 1][j], dp[i][j + 1]);
    }
  }
  std::vector<Op> ops;
  int i = 0;
  int j = 0;
  while (i < n || j < m) {
    if (i < n && j < m && a[i] == b[j]) {
      ops.push_back({' ', i++, j++});
    } else if (i < n && (j == m || dp[i + 1][j] >= dp[i][j + 1])) {
      ops.push_back({'-', i++, -1});
    } else {
      ops.push_back({'+', -1, j++});
    }
  }
  return ops;
}

}  // namespace

std::string diff_text(std::string_view before, std::string_view after,
                      std::string_view before_label, std::string_view after_label) {
  if (before == after) return {};
  auto a = split_lines(before);
  auto b = split_lines(after);
  auto ops = lcs_ops(a, b);

  std::ostringstream os;
  os << "--- " << before_label << "\n+++ " << after_label << "\n";
  const int total = static_cast<int>(ops.size());
  int k = 0;
  while (k < total) {
    while (k < total && ops[k].tag == ' ') ++k;
    if (k == total) break;
    int start = std::max(0, k - kContext);
    int end = k;
    // Extend over changes separated by at most 2*context unchanged lines.
    for (;;) {
      while (end < total && ops[end].tag != ' ') ++end;
      int run = end;
      while (run < total && ops[run].tag == ' ') ++run;
      if (run < total && run - end <= 2 * kContext) {
        end = run;
        continue;
      }
      end = std::min(total, end + kContext);
      break;
    }
    int a_start = -1, b_start = -1, a_len = 0, b_len = 0;
    for (int x = start; x < end; ++x) {
      if (ops[x].tag != '+') {
        if (a_start < 0) a_start = ops[x].a;
        ++a_len;
      }
      if (ops[x].tag != '-') {
        if (b_start < 0) b_start = ops[x].b;
        ++b_len;
      }
    }
    // Empty sides follow the unified-diff convention of naming the line before.
    auto first_line = [&](int idx, int len, bool side_a) {
      if (len > 0) return idx + 1;
      for (int x = start; x >= 0; --x) {
        int v = side_a ? ops[x].a : ops[x].b;
        if (v >= 0 && x < start) return v + 1;
      }
      return 0;
    };
    os << "@@ -" << first_line(a_start, a_len, true) << ',' << a_len << " +"
       << first_line(b_start, b_len, false) << ',' << b_len << " @@\n";
    for (int x = start; x < end; ++x) {
      const auto& op = ops[x];
      os << op.tag << (op.tag == '+' ? b[op.b] : a[op.a]) << '\n';
    }
    k = end;
  }
  return os.str();
}

std::string diff_render(const Program& before, const Program& after) {
  return diff_text(print_program(before), print_program(after));
}

}  // namespace mend::lang
