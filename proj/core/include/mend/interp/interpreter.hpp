#pragma once

#include <atomic>
#include <cstdint>
#include <limits>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string_view>
#include <vector>

#include "mend/interp/trace.hpp"
#include "mend/lang/ast.hpp"

namespace mend::interp {

// Stop when `line` has been reached `count` times.
struct Breakpoint {
  int line = 0;
  int count = 1;
};

struct RunOptions {
  std::int64_t budget = 500000;
  std::optional<Breakpoint> breakpoint;
  // Data flow is only needed for localization; validation runs skip it.
  bool record_flow = true;
  int max_depth = 1000;
  // Checked once per step; a set flag ends the run as Cancelled.
  const std::atomic<bool>* cancel = nullptr;
  // Incremented once per step, shared between concurrent runs. A run whose
  // step would take the counter past `step_limit` ends as Cancelled.
  std::atomic<std::int64_t>* step_counter = nullptr;
  std::int64_t step_limit = std::numeric_limits<std::int64_t>::max();
};

// Thrown for a missing entry function or an argument count mismatch.
class EntryError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class Interpreter {
 public:
  explicit Interpreter(lang::Ast ast, RunOptions options = {});
  ~Interpreter();
  Interpreter(Interpreter&&) noexcept;
  Interpreter& operator=(Interpreter&&) noexcept;

  // `args` may refer to arrays in `heap`.
  ExecutionTrace run(std::string_view entry, std::vector<Value> args, Heap heap = {});

  // Locals of every frame still on the stack and all array elements at the
  // moment the last run stopped.
  State live_state() const;

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

ExecutionTrace run(const lang::Ast& ast, std::string_view entry, std::vector<Value> args,
                   Heap heap = {}, const RunOptions& options = {});
ExecutionTrace run(const lang::Ast& ast, std::string_view entry,
                   const std::vector<DeepValue>& args, const RunOptions& options = {});

}  // namespace mend::interp
