#pragma once

#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "mend/faultloc/localize.hpp"
#include "mend/interp/trace.hpp"
#include "mend/lang/ast.hpp"
#include "mend/lang/edit.hpp"
#include "mend/problem/problem.hpp"

namespace mend::suggest {

struct Repair {
  lang::Edit edit;
  std::string description;
  double syntactic_priority = 0;
  std::string suggester;
  std::string function;
  int line = 0;
  int location_priority = 0;
  // The edited program and its canonical text.
  lang::Ast result;
  std::string result_text;
};

// What a suggester sees for one candidate line.
struct SuggestContext {
  const lang::Program& program;
  const lang::NodeIndex& index;
  const faultloc::CandidateLocation& location;
  const problem::ProblemSpec& spec;
  const interp::ExecutionTrace& trace;
  // Statements on the line, in source order (a for header contributes the
  // loop and its init/step statements).
  std::vector<const lang::Stmt*> statements;
  // Runtime kinds of the variables live in the line's frame at its latest
  // execution.
  std::map<std::string, interp::ValueKind> variables;
  // Argument kinds of the latest dynamic call made by each call expression.
  const std::map<lang::NodeId, std::vector<interp::ValueKind>>& call_args;
};

struct Proposal {
  lang::Edit edit;
  std::string description;
  // Line of the edited statement when it differs from the candidate line.
  std::optional<int> line;
};

class Suggester {
 public:
  virtual ~Suggester() = default;
  virtual std::string id() const = 0;
  virtual double tier() const = 0;
  virtual std::string summary() const = 0;
  // Deterministic for fixed inputs.
  virtual std::vector<Proposal> generate(const SuggestContext& ctx) const = 0;
};

class DuplicateId : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

struct CatalogEntry {
  std::string id;
  double tier = 0;
  std::string summary;
  bool implemented = true;
};

class Registry {
 public:
  // Throws DuplicateId.
  void register_suggester(std::shared_ptr<const Suggester> s);
  const std::vector<std::shared_ptr<const Suggester>>& suggesters() const { return suggesters_; }
  // Registered suggesters followed by the declared but unimplemented slots.
  std::vector<CatalogEntry> catalog() const;

  static Registry with_builtins();

 private:
  std::vector<std::shared_ptr<const Suggester>> suggesters_;
};

// Built-in suggesters.
std::shared_ptr<const Suggester> make_smell();
std::shared_ptr<const Suggester> make_guard();
std::shared_ptr<const Suggester> make_relop();
std::shared_ptr<const Suggester> make_argswap();
std::shared_ptr<const Suggester> make_loopidx();
std::shared_ptr<const Suggester> make_varsub();
std::shared_ptr<const Suggester> make_arith();

struct SuggestOptions {
  // Syntactic priority from suggester tier and location priority (1..10).
  std::function<double(double tier, int location_priority)> combine = [](double tier, int p) {
    return tier * p / 10.0;
  };
  unsigned threads = 0;  // 0: hardware concurrency
};

// Every returned repair applies cleanly, re-parses, differs from `ast` and
// from every other returned repair. Ordered by syntactic priority
// descending, then candidate order, suggester order and generation order.
std::vector<Repair> suggest_all(const Registry& registry, const lang::Ast& ast,
                                const std::vector<faultloc::CandidateLocation>& candidates,
                                const problem::ProblemSpec& spec, const interp::ExecutionTrace& trace,
                                const SuggestOptions& options = {});

}  // namespace mend::suggest
