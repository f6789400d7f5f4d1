#include "reference.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>
#include <variant>

namespace mend::oracle {

using lang::BinaryOp;
using lang::Expr;
using lang::ExprKind;
using lang::Function;
using lang::Stmt;
using lang::StmtKind;
using lang::UnaryOp;

namespace {

struct Arr {
  std::size_t id = 0;
  friend bool operator==(Arr, Arr) = default;
};
using Val = std::variant<std::monostate, std::int64_t, bool, std::string, Arr>;

struct Cell {
  Val v;
  int def = -1;
};

struct Local {
  Val v;
  int def = -1;
};

struct Frame {
  const Function* fn = nullptr;
  std::map<std::string, Local> locals;
};

// Value of an evaluated expression and the graph node that produced it.
struct R {
  Val v;
  int node = -1;
};

struct Raise {
  std::string kind;
  std::vector<int> seeds;
};
struct Stop {};
struct OutOfSteps {};

struct Returned {
  Val v;
  int node = -1;
};

std::int64_t wrap(unsigned long long x) { return static_cast<std::int64_t>(x); }

class Machine {
 public:
  Machine(const lang::Program& p, const Options& o, ReferenceRun& out) : program_(p), opts_(o), out_(out) {}

  void run(std::string_view entry, const std::vector<interp::DeepValue>& args) {
    const Function* fn = program_.find_function(entry);
    if (!fn || fn->params.size() != args.size()) throw std::invalid_argument("bad entry");
    Frame f;
    f.fn = fn;
    for (std::size_t i = 0; i < args.size(); ++i) f.locals[fn->params[i]] = Local{inject(args[i]), -1};
    frames_.push_back(std::move(f));
    try {
      body(*fn, -1);
      out_.ending = Ending::Returned;
    } catch (const Raise& r) {
      out_.ending = Ending::Raised;
      out_.error_kind = r.kind;
      out_.error_seeds = r.seeds;
      out_.stop_line = line_;
      out_.stop_control = cp_;
      snapshot_locals();
    } catch (const Stop&) {
      out_.ending = Ending::Break;
      snapshot_locals();
    } catch (const OutOfSteps&) {
      out_.ending = Ending::OutOfSteps;
    }
  }

 private:
  const lang::Program& program_;
  const Options& opts_;
  ReferenceRun& out_;
  std::vector<std::vector<Cell>> heap_;
  std::vector<Frame> frames_;
  int line_ = 0;
  int cp_ = -1;
  int arrivals_ = 0;
  std::int64_t executed_ = 0;

  void snapshot_locals() {
    for (const auto& [name, l] : frames_.back().locals) out_.stop_locals.emplace_back(name, l.def);
  }

  Val inject(const interp::DeepValue& d) {
    if (d.is_nil()) return std::monostate{};
    if (auto* i = std::get_if<std::int64_t>(&d.data)) return *i;
    if (auto* b = std::get_if<bool>(&d.data)) return *b;
    if (auto* s = std::get_if<std::string>(&d.data)) return *s;
    const auto& items = std::get<std::vector<interp::DeepValue>>(d.data);
    std::vector<Cell> cells;
    for (const auto& x : items) cells.push_back(Cell{inject(x), -1});
    heap_.push_back(std::move(cells));
    return Arr{heap_.size() - 1};
  }

  const std::string& function() const { return frames_.back().fn->name; }

  int node(std::vector<int> deps) {
    if (cp_ >= 0) deps.push_back(cp_);
    out_.nodes.push_back(ReferenceRun::Node{function(), line_, std::move(deps)});
    return static_cast<int>(out_.nodes.size()) - 1;
  }

  [[noreturn]] void raise(std::string kind, std::vector<int> seeds) { throw Raise{std::move(kind), std::move(seeds)}; }
  [[noreturn]] void type_error() { throw std::runtime_error("reference interpreter: type error"); }

  static bool is_nil(const Val& v) { return std::holds_alternative<std::monostate>(v); }

  std::int64_t as_int(const R& r) {
    if (is_nil(r.v)) raise("NilAccess", {r.node});
    if (auto* i = std::get_if<std::int64_t>(&r.v)) return *i;
    type_error();
  }
  bool as_bool(const R& r) {
    if (is_nil(r.v)) raise("NilAccess", {r.node});
    if (auto* b = std::get_if<bool>(&r.v)) return *b;
    type_error();
  }

  bool equal(const Val& a, const Val& b, std::vector<std::pair<std::size_t, std::size_t>>& seen) {
    if (a.index() != b.index()) return false;
    if (auto* x = std::get_if<Arr>(&a)) {
      const auto y = std::get<Arr>(b);
      for (auto [p, q] : seen) {
        if (p == x->id && q == y.id) return true;
      }
      seen.emplace_back(x->id, y.id);
      const auto& ea = heap_[x->id];
      const auto& eb = heap_[y.id];
      if (ea.size() != eb.size()) return false;
      for (std::size_t i = 0; i < ea.size(); ++i) {
        if (!equal(ea[i].v, eb[i].v, seen)) return false;
      }
      return true;
    }
    return a == b;
  }

  void element_defs(const Val& v, std::vector<int>& out, std::vector<std::size_t>& seen) {
    const auto* a = std::get_if<Arr>(&v);
    if (!a || std::find(seen.begin(), seen.end(), a->id) != seen.end()) return;
    seen.push_back(a->id);
    for (const auto& c : heap_[a->id]) {
      if (c.def >= 0) out.push_back(c.def);
      element_defs(c.v, out, seen);
    }
  }

  R eval(const Expr& e) {
    switch (e.kind) {
      case ExprKind::Int: return {e.int_value, node({})};
      case ExprKind::Bool: return {e.bool_value, node({})};
      case ExprKind::Str: return {e.text, node({})};
      case ExprKind::Nil: return {std::monostate{}, node({})};
      case ExprKind::Var: {
        auto it = frames_.back().locals.find(e.text);
        if (it == frames_.back().locals.end()) type_error();
        std::vector<int> deps;
        if (it->second.def >= 0) deps.push_back(it->second.def);
        return {it->second.v, node(deps)};
      }
      case ExprKind::Array: {
        std::vector<R> items;
        for (const auto& o : e.operands) items.push_back(eval(*o));
        std::vector<Cell> cells;
        for (const auto& r : items) cells.push_back(Cell{r.v, node({r.node})});
        heap_.push_back(std::move(cells));
        return {Arr{heap_.size() - 1}, node({})};
      }
      case ExprKind::Len: {
        R a = eval(*e.operands[0]);
        std::int64_t n = 0;
        if (is_nil(a.v)) raise("NilAccess", {a.node});
        if (auto* arr = std::get_if<Arr>(&a.v)) {
          n = static_cast<std::int64_t>(heap_[arr->id].size());
        } else if (auto* s = std::get_if<std::string>(&a.v)) {
          n = static_cast<std::int64_t>(s->size());
        } else {
          type_error();
        }
        return {n, node({a.node})};
      }
      case ExprKind::Index: {
        R b = eval(*e.operands[0]);
        R i = eval(*e.operands[1]);
        if (is_nil(b.v)) raise("NilAccess", {b.node});
        if (is_nil(i.v)) raise("NilAccess", {i.node});
        const auto* k = std::get_if<std::int64_t>(&i.v);
        if (!k) type_error();
        if (const auto* s = std::get_if<std::string>(&b.v)) {
          if (*k < 0 || *k >= static_cast<std::int64_t>(s->size())) raise("IndexOutOfBounds", {b.node, i.node});
          return {std::string(1, (*s)[static_cast<std::size_t>(*k)]), node({b.node, i.node})};
        }
        const auto* a = std::get_if<Arr>(&b.v);
        if (!a) type_error();
        const auto& cells = heap_[a->id];
        if (*k < 0 || *k >= static_cast<std::int64_t>(cells.size())) raise("IndexOutOfBounds", {b.node, i.node});
        const Cell& c = cells[static_cast<std::size_t>(*k)];
        std::vector<int> deps{b.node, i.node};
        if (c.def >= 0) deps.push_back(c.def);
        return {c.v, node(deps)};
      }
      case ExprKind::Unary: {
        R o = eval(*e.operands[0]);
        if (e.unary_op == UnaryOp::Neg) return {wrap(0ULL - static_cast<unsigned long long>(as_int(o))), node({o.node})};
        return {!as_bool(o), node({o.node})};
      }
      case ExprKind::Binary: return binary(e, nullptr);
      case ExprKind::Call: return call(e);
    }
    type_error();
  }

  R binary(const Expr& e, std::vector<int>* evaluated) {
    const BinaryOp op = e.binary_op;
    if (op == BinaryOp::And || op == BinaryOp::Or) {
      R l = eval(*e.operands[0]);
      const bool lv = as_bool(l);
      if (evaluated) evaluated->push_back(l.node);
      if (lv == (op == BinaryOp::Or)) return {lv, node({l.node})};
      R r = eval(*e.operands[1]);
      const bool rv = as_bool(r);
      if (evaluated) evaluated->push_back(r.node);
      return {rv, node({l.node, r.node})};
    }
    R l = eval(*e.operands[0]);
    R r = eval(*e.operands[1]);
    if (evaluated) *evaluated = {l.node, r.node};
    if (op == BinaryOp::Eq || op == BinaryOp::Ne) {
      std::vector<int> deps{l.node, r.node};
      std::vector<std::size_t> seen;
      element_defs(l.v, deps, seen);
      element_defs(r.v, deps, seen);
      std::vector<std::pair<std::size_t, std::size_t>> pairs;
      const bool eq = equal(l.v, r.v, pairs);
      return {op == BinaryOp::Eq ? eq : !eq, node(deps)};
    }
    if (op == BinaryOp::Add && std::holds_alternative<std::string>(l.v) && std::holds_alternative<std::string>(r.v)) {
      return {std::get<std::string>(l.v) + std::get<std::string>(r.v), node({l.node, r.node})};
    }
    const auto a = static_cast<unsigned long long>(as_int(l));
    const auto b = static_cast<unsigned long long>(as_int(r));
    const auto sa = static_cast<std::int64_t>(a);
    const auto sb = static_cast<std::int64_t>(b);
    Val v;
    switch (op) {
      case BinaryOp::Add: v = wrap(a + b); break;
      case BinaryOp::Sub: v = wrap(a - b); break;
      case BinaryOp::Mul: v = wrap(a * b); break;
      case BinaryOp::Div:
      case BinaryOp::Mod:
        if (sb == 0) raise("DivByZero", {r.node});
        if (sb == -1) {
          v = op == BinaryOp::Div ? wrap(0ULL - a) : std::int64_t{0};
        } else {
          v = op == BinaryOp::Div ? sa / sb : sa % sb;
        }
        break;
      case BinaryOp::Lt: v = sa < sb; break;
      case BinaryOp::Le: v = sa <= sb; break;
      case BinaryOp::Gt: v = sa > sb; break;
      case BinaryOp::Ge: v = sa >= sb; break;
      default: type_error();
    }
    return {v, node({l.node, r.node})};
  }

  R call(const Expr& e) {
    std::vector<R> args;
    for (const auto& o : e.operands) args.push_back(eval(*o));
    if (e.text == "array") {
      const std::int64_t n = as_int(args[0]);
      if (n < 0) type_error();
      const int def = node({args[1].node, args[0].node});
      heap_.push_back(std::vector<Cell>(static_cast<std::size_t>(n), Cell{args[1].v, def}));
      return {Arr{heap_.size() - 1}, node({})};
    }
    if (e.text == "abs") {
      const std::int64_t v = as_int(args[0]);
      return {v < 0 ? wrap(0ULL - static_cast<unsigned long long>(v)) : v, node({args[0].node})};
    }
    if (e.text == "min" || e.text == "max") {
      const std::int64_t a = as_int(args[0]);
      const std::int64_t b = as_int(args[1]);
      return {e.text == "min" ? std::min(a, b) : std::max(a, b), node({args[0].node, args[1].node})};
    }
    const Function* fn = program_.find_function(e.text);
    if (!fn || fn->params.size() != args.size()) type_error();
    const int control = node({});
    Frame f;
    f.fn = fn;
    for (std::size_t i = 0; i < args.size(); ++i) {
      f.locals[fn->params[i]] = Local{args[i].v, node({args[i].node})};
      ++out_.writes;
    }
    const int saved_line = line_;
    const int saved_cp = cp_;
    frames_.push_back(std::move(f));
    Returned r = body(*fn, control);
    frames_.pop_back();
    line_ = saved_line;
    cp_ = saved_cp;
    return {r.v, r.node};
  }

  // Runs a function body in the top frame.
  Returned body(const Function& fn, int control) {
    try {
      const int last = block(fn.body, control);
      line_ = fn.end_line;
      cp_ = last;
      return {std::monostate{}, node({})};
    } catch (Returned& r) {
      return r;
    }
  }

  // Returns the governing control node for whatever follows the block.
  int block(const std::vector<lang::StmtPtr>& stmts, int cp) {
    for (const auto& s : stmts) {
      const int after = stmt(*s, cp);
      if (after >= 0 && s->is_compound() && has_return(*s)) cp = after;
    }
    return cp;
  }

  static bool has_return(const Stmt& s) {
    if (s.kind == StmtKind::Return) return true;
    for (const auto& b : s.body) {
      if (has_return(*b)) return true;
    }
    for (const auto& b : s.orelse) {
      if (has_return(*b)) return true;
    }
    return false;
  }

  void arrive(const Stmt& s, int cp) {
    if (++executed_ > opts_.max_statements) throw OutOfSteps{};
    if (!opts_.breakpoint || opts_.breakpoint->first != s.line) return;
    if (++arrivals_ < opts_.breakpoint->second) return;
    line_ = s.line;
    cp_ = cp;
    out_.stop_line = s.line;
    out_.stop_control = cp;
    throw Stop{};
  }

  int condition(const Stmt& s, int cp) {
    line_ = s.line;
    cp_ = cp;
    R c = eval(*s.condition());
    if (is_nil(c.v)) raise("NilAccess", {c.node});
    if (!std::holds_alternative<bool>(c.v)) type_error();
    const int control = node({c.node});
    return std::get<bool>(c.v) ? control : -(control + 2);
  }

  // Control node of the last branch evaluated inside a compound statement,
  // -1 for simple statements.
  int stmt(const Stmt& s, int cp) {
    switch (s.kind) {
      case StmtKind::If: {
        arrive(s, cp);
        int c = condition(s, cp);
        const bool taken = c >= 0;
        if (!taken) c = -c - 2;
        return block(taken ? s.body : s.orelse, c);
      }
      case StmtKind::While:
      case StmtKind::For: {
        if (s.kind == StmtKind::For) simple(*s.init, cp);
        int guard = cp;
        while (true) {
          arrive(s, guard);
          int c = condition(s, guard);
          if (c < 0) return -c - 2;
          const int last = block(s.body, c);
          if (s.kind == StmtKind::For) simple(*s.step, last);
          guard = last;
        }
      }
      default:
        arrive(s, cp);
        simple(s, cp);
        return -1;
    }
  }

  void assign(const std::string& name, const R& value, bool declare) {
    auto& locals = frames_.back().locals;
    if (!declare && !locals.count(name)) type_error();
    locals[name] = Local{value.v, node({value.node})};
    ++out_.writes;
  }

  void simple(const Stmt& s, int cp) {
    line_ = s.line;
    cp_ = cp;
    switch (s.kind) {
      case StmtKind::Let:
      case StmtKind::Assign: assign(s.name, eval(*s.value()), s.kind == StmtKind::Let); break;
      case StmtKind::IndexAssign: {
        R b = eval(*s.exprs[0]);
        R i = eval(*s.exprs[1]);
        R v = eval(*s.exprs[2]);
        if (is_nil(b.v)) raise("NilAccess", {b.node});
        if (is_nil(i.v)) raise("NilAccess", {i.node});
        const auto* a = std::get_if<Arr>(&b.v);
        const auto* k = std::get_if<std::int64_t>(&i.v);
        if (!a || !k) type_error();
        auto& cells = heap_[a->id];
        if (*k < 0 || *k >= static_cast<std::int64_t>(cells.size())) raise("IndexOutOfBounds", {b.node, i.node});
        cells[static_cast<std::size_t>(*k)] = Cell{v.v, node({v.node, b.node, i.node})};
        ++out_.writes;
        break;
      }
      case StmtKind::Return: {
        if (s.exprs.empty()) throw Returned{std::monostate{}, node({})};
        R v = eval(*s.value());
        throw Returned{v.v, node({v.node})};
      }
      case StmtKind::Assert: {
        const Expr& cond = *s.condition();
        std::vector<int> operands;
        R c = cond.kind == ExprKind::Binary ? binary(cond, &operands) : eval(cond);
        if (is_nil(c.v)) raise("NilAccess", {c.node});
        if (!std::holds_alternative<bool>(c.v)) type_error();
        if (std::get<bool>(c.v)) break;
        if (cond.kind == ExprKind::Unary) {
          operands = out_.nodes[static_cast<std::size_t>(c.node)].deps;
          operands.erase(std::remove(operands.begin(), operands.end(), cp_), operands.end());
        } else if (cond.kind != ExprKind::Binary) {
          operands = {c.node};
        }
        if (cond.kind == ExprKind::Binary && (cond.binary_op == BinaryOp::Eq || cond.binary_op == BinaryOp::Ne)) {
          // A structural comparison depends on every element it looked at.
          for (int d : out_.nodes[static_cast<std::size_t>(c.node)].deps) {
            if (d != cp_ && std::find(operands.begin(), operands.end(), d) == operands.end()) operands.push_back(d);
          }
        }
        raise("AssertFailed", operands);
      }
      case StmtKind::Print: {
        R v = eval(*s.value());
        if (auto* str = std::get_if<std::string>(&v.v)) {
          out_.output.push_back(*str);
        } else {
          out_.output.push_back("<value>");
        }
        break;
      }
      case StmtKind::ExprStmt: eval(*s.value()); break;
      default: type_error();
    }
  }
};

}  // namespace

std::set<Line> ReferenceRun::closure(std::vector<int> seeds) const {
  std::vector<bool> seen(nodes.size(), false);
  std::set<Line> out;
  while (!seeds.empty()) {
    const int n = seeds.back();
    seeds.pop_back();
    if (n < 0 || seen[static_cast<std::size_t>(n)]) continue;
    seen[static_cast<std::size_t>(n)] = true;
    const Node& node = nodes[static_cast<std::size_t>(n)];
    out.emplace(node.function, node.line);
    for (int d : node.deps) seeds.push_back(d);
  }
  return out;
}

std::set<Line> ReferenceRun::error_slice() const {
  std::vector<int> seeds = error_seeds;
  seeds.push_back(stop_control);
  return closure(std::move(seeds));
}

std::set<Line> ReferenceRun::variable_slice(const std::string& variable) const {
  std::vector<int> seeds{stop_control};
  for (const auto& [name, def] : stop_locals) {
    if (name == variable) seeds.push_back(def);
  }
  return closure(std::move(seeds));
}

std::set<Line> ReferenceRun::location_slice() const { return closure({stop_control}); }

ReferenceRun run_reference(const lang::Program& program, std::string_view entry,
                           const std::vector<interp::DeepValue>& args, const Options& options) {
  ReferenceRun out;
  Machine m(program, options, out);
  m.run(entry, args);
  return out;
}

}  // namespace mend::oracle
