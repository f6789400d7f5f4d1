#include "mend/interp/interpreter.hpp"

#include <map>
#include <unordered_map>
#include <utility>

namespace mend::interp {

using lang::BinaryOp;
using lang::Expr;
using lang::ExprKind;
using lang::Function;
using lang::NodeId;
using lang::Stmt;
using lang::StmtKind;
using lang::UnaryOp;

namespace {

struct Halt {
  OutcomeKind kind;
};

struct Pending {
  std::vector<FlowDef> flow;
  std::vector<Alloc> allocs;
  std::vector<Reference> reads;
  std::vector<Write> writes;
};

struct Frame {
  FrameId id = kNoFrame;
  const Function* fn = nullptr;
  std::unordered_map<std::string, Value> locals;
  Time top_cp = kNoTime;
};

// Where evaluation currently is.
struct Context {
  FrameId frame = kNoFrame;
  NodeId stmt = lang::kNoNode;
  int line = 0;
  Time cp = kNoTime;
  Pending* pending = nullptr;
};

struct Completion {
  bool returned = false;
  Time last_branch = kNoTime;
};

std::int64_t wrap_add(std::int64_t a, std::int64_t b) {
  return static_cast<std::int64_t>(static_cast<std::uint64_t>(a) + static_cast<std::uint64_t>(b));
}
std::int64_t wrap_sub(std::int64_t a, std::int64_t b) {
  return static_cast<std::int64_t>(static_cast<std::uint64_t>(a) - static_cast<std::uint64_t>(b));
}
std::int64_t wrap_mul(std::int64_t a, std::int64_t b) {
  return static_cast<std::int64_t>(static_cast<std::uint64_t>(a) * static_cast<std::uint64_t>(b));
}

bool is_builtin(const std::string& name) {
  return name == "array" || name == "abs" || name == "min" || name == "max";
}

bool contains_return(const Stmt& s) {
  if (s.kind == StmtKind::Return) return true;
  for (const auto& b : s.body) {
    if (contains_return(*b)) return true;
  }
  for (const auto& b : s.orelse) {
    if (contains_return(*b)) return true;
  }
  return false;
}

}  // namespace

struct Interpreter::Impl {
  lang::Ast ast;
  RunOptions opts;

  ExecutionTrace trace;
  Heap heap;
  std::vector<Frame> stack;
  Context ctx;
  std::size_t recorded_arrays = 0;
  std::map<std::pair<FrameId, std::string>, int> ordinals;
  int breakpoint_hits = 0;
  std::unordered_map<const Stmt*, bool> may_return;

  Impl(lang::Ast a, RunOptions o) : ast(std::move(a)), opts(o) {}

  // ---- recording ----

  Pending& pending() { return *ctx.pending; }
  Reference stack_ref(NodeId node) const { return Reference::stack(ctx.frame, node); }

  void def(Reference dst, std::vector<FlowSource> sources) {
    if (opts.record_flow) pending().flow.push_back(FlowDef{std::move(dst), std::move(sources)});
  }
  void def_node(const Expr& e, std::vector<FlowSource> sources) { def(stack_ref(e.id), std::move(sources)); }
  FlowSource src(const Expr& e, int cost) const { return FlowSource{stack_ref(e.id), cost}; }

  TraceStep make_step(StepKind kind) const {
    TraceStep s;
    s.kind = kind;
    s.frame = ctx.frame;
    s.stmt = ctx.stmt;
    s.line = ctx.line;
    s.control_parent = ctx.cp;
    return s;
  }

  void take_pending(TraceStep& step) {
    if (!ctx.pending) return;
    Pending& p = *ctx.pending;
    step.flow = std::move(p.flow);
    step.allocs = std::move(p.allocs);
    step.reads = std::move(p.reads);
    step.writes = std::move(p.writes);
    p = Pending{};
  }

  Time emit(TraceStep step, bool terminal = false) {
    if (opts.step_counter && opts.step_counter->fetch_add(1, std::memory_order_relaxed) >= opts.step_limit) {
      throw Halt{OutcomeKind::Cancelled};
    }
    step.time = static_cast<Time>(trace.steps.size());
    recorded_arrays += step.allocs.size();
    trace.steps.push_back(std::move(step));
    const Time t = trace.last_time();
    if (terminal) return t;
    if (opts.cancel && opts.cancel->load(std::memory_order_relaxed)) throw Halt{OutcomeKind::Cancelled};
    if (static_cast<std::int64_t>(trace.steps.size()) >= opts.budget) throw Halt{OutcomeKind::BudgetExceeded};
    return t;
  }

  [[noreturn]] void fail(ErrorKind kind, const Expr& node, std::vector<NodeId> operands, std::string message,
                         std::int64_t index = 0, std::int64_t length = 0) {
    RuntimeError err;
    err.kind = kind;
    err.node = node.id;
    err.line = ctx.line;
    err.message = std::move(message);
    err.operands = std::move(operands);
    err.index = index;
    err.length = length;
    raise(std::move(err));
  }

  [[noreturn]] void raise(RuntimeError err) {
    TraceStep step = make_step(StepKind::Raise);
    take_pending(step);
    step.error = err;
    emit(std::move(step), true);
    trace.outcome.error = std::move(err);
    throw Halt{OutcomeKind::Raised};
  }

  void arrive(const Stmt& s, Time cp) {
    if (!opts.breakpoint || opts.breakpoint->line != s.line) return;
    if (++breakpoint_hits < opts.breakpoint->count) return;
    TraceStep step = make_step(StepKind::Break);
    step.stmt = s.id;
    step.line = s.line;
    step.control_parent = cp;
    emit(std::move(step), true);
    throw Halt{OutcomeKind::StoppedAtBreak};
  }

  ArrayId allocate(std::vector<Value> elements) {
    Alloc a;
    a.elements = elements;
    ArrayId id = heap.allocate(std::move(elements));
    a.array = id.id;
    pending().allocs.push_back(std::move(a));
    return id;
  }

  Frame& frame() { return stack.back(); }

  // ---- expressions ----

  Value eval(const Expr& e) {
    switch (e.kind) {
      case ExprKind::Int:
        def_node(e, {});
        return e.int_value;
      case ExprKind::Bool:
        def_node(e, {});
        return e.bool_value;
      case ExprKind::Str:
        def_node(e, {});
        return e.text;
      case ExprKind::Nil:
        def_node(e, {});
        return Nil{};
      case ExprKind::Var: {
        auto it = frame().locals.find(e.text);
        if (it == frame().locals.end()) fail(ErrorKind::TypeError, e, {}, "undefined variable '" + e.text + "'");
        auto ref = Reference::local(ctx.frame, e.text);
        if (opts.record_flow) pending().reads.push_back(ref);
        def_node(e, {FlowSource{std::move(ref), 0}});
        return it->second;
      }
      case ExprKind::Array: {
        std::vector<Value> elems;
        elems.reserve(e.operands.size());
        for (const auto& o : e.operands) elems.push_back(eval(*o));
        ArrayId id = allocate(std::move(elems));
        for (std::size_t i = 0; i < e.operands.size(); ++i) {
          def(Reference::element(id.id, static_cast<std::int64_t>(i)), {src(*e.operands[i], 0)});
        }
        def_node(e, {});
        return id;
      }
      case ExprKind::Index: return eval_index(e);
      case ExprKind::Len: {
        Value v = eval(*e.operands[0]);
        std::int64_t n = 0;
        if (std::holds_alternative<Nil>(v)) {
          fail(ErrorKind::NilAccess, *e.operands[0], {e.operands[0]->id}, "len of nil");
        } else if (auto* a = std::get_if<ArrayId>(&v)) {
          n = static_cast<std::int64_t>(heap.at(*a).size());
        } else if (auto* s = std::get_if<std::string>(&v)) {
          n = static_cast<std::int64_t>(s->size());
        } else {
          fail(ErrorKind::TypeError, e, {}, "len of " + std::string(kind_name(kind_of(v))));
        }
        def_node(e, {src(*e.operands[0], 1)});
        return n;
      }
      case ExprKind::Unary: return eval_unary(e);
      case ExprKind::Binary: return eval_binary(e);
      case ExprKind::Call: return eval_call(e);
    }
    fail(ErrorKind::TypeError, e, {}, "unknown expression");
  }

  std::int64_t int_operand(const Value& v, const Expr& node, const Expr& op) {
    if (std::holds_alternative<Nil>(v)) fail(ErrorKind::NilAccess, node, {node.id}, "nil operand");
    const auto* i = std::get_if<std::int64_t>(&v);
    if (!i) {
      fail(ErrorKind::TypeError, op, {}, "expected int, got " + std::string(kind_name(kind_of(v))));
    }
    return *i;
  }

  bool bool_operand(const Value& v, const Expr& node, const Expr& op) {
    if (std::holds_alternative<Nil>(v)) fail(ErrorKind::NilAccess, node, {node.id}, "nil operand");
    const auto* b = std::get_if<bool>(&v);
    if (!b) fail(ErrorKind::TypeError, op, {}, "expected bool, got " + std::string(kind_name(kind_of(v))));
    return *b;
  }

  Value eval_index(const Expr& e) {
    const Expr& base = *e.operands[0];
    const Expr& index = *e.operands[1];
    Value b = eval(base);
    Value i = eval(index);
    if (std::holds_alternative<Nil>(b)) fail(ErrorKind::NilAccess, base, {base.id}, "indexing nil");
    if (std::holds_alternative<Nil>(i)) fail(ErrorKind::NilAccess, index, {index.id}, "nil index");
    const auto* k = std::get_if<std::int64_t>(&i);
    if (!k) fail(ErrorKind::TypeError, index, {}, "index must be int");
    if (const auto* s = std::get_if<std::string>(&b)) {
      const auto n = static_cast<std::int64_t>(s->size());
      if (*k < 0 || *k >= n) {
        fail(ErrorKind::IndexOutOfBounds, index, {base.id, index.id},
             "index " + std::to_string(*k) + " out of bounds for length " + std::to_string(n), *k, n);
      }
      def_node(e, {src(base, 1), src(index, 1)});
      return std::string(1, (*s)[static_cast<std::size_t>(*k)]);
    }
    const auto* a = std::get_if<ArrayId>(&b);
    if (!a) fail(ErrorKind::TypeError, base, {}, "cannot index " + std::string(kind_name(kind_of(b))));
    const auto& elems = heap.at(*a);
    const auto n = static_cast<std::int64_t>(elems.size());
    if (*k < 0 || *k >= n) {
      fail(ErrorKind::IndexOutOfBounds, index, {base.id, index.id},
           "index " + std::to_string(*k) + " out of bounds for length " + std::to_string(n), *k, n);
    }
    auto ref = Reference::element(a->id, *k);
    if (opts.record_flow) pending().reads.push_back(ref);
    def_node(e, {FlowSource{std::move(ref), 0}, src(base, 1), src(index, 1)});
    return elems[static_cast<std::size_t>(*k)];
  }

  Value eval_unary(const Expr& e) {
    const Expr& operand = *e.operands[0];
    Value v = eval(operand);
    Value out;
    if (e.unary_op == UnaryOp::Neg) {
      out = wrap_sub(0, int_operand(v, operand, e));
    } else {
      out = !bool_operand(v, operand, e);
    }
    def_node(e, {src(operand, 1)});
    return out;
  }

  void array_sources(const Value& v, std::vector<FlowSource>& out, std::vector<std::int64_t>& seen) {
    const auto* a = std::get_if<ArrayId>(&v);
    if (!a) return;
    for (auto s : seen) {
      if (s == a->id) return;
    }
    seen.push_back(a->id);
    out.push_back(FlowSource{Reference::element(a->id, kAnyIndex), 1});
    for (const auto& x : heap.at(*a)) array_sources(x, out, seen);
  }

  Value eval_binary(const Expr& e, bool* short_circuited = nullptr) {
    const Expr& lhs = *e.operands[0];
    const Expr& rhs = *e.operands[1];
    if (lang::is_logical(e.binary_op)) {
      bool l = bool_operand(eval(lhs), lhs, e);
      const bool short_circuit = e.binary_op == BinaryOp::And ? !l : l;
      if (short_circuit) {
        if (short_circuited) *short_circuited = true;
        def_node(e, {src(lhs, 1)});
        return l;
      }
      bool r = bool_operand(eval(rhs), rhs, e);
      def_node(e, {src(lhs, 1), src(rhs, 1)});
      return r;
    }
    Value l = eval(lhs);
    Value r = eval(rhs);
    std::vector<FlowSource> sources{src(lhs, 1), src(rhs, 1)};
    Value out;
    switch (e.binary_op) {
      case BinaryOp::Eq:
      case BinaryOp::Ne: {
        if (opts.record_flow) {
          std::vector<std::int64_t> seen;
          array_sources(l, sources, seen);
          array_sources(r, sources, seen);
        }
        const bool eq = deep_equal(l, heap, r, heap);
        out = e.binary_op == BinaryOp::Eq ? eq : !eq;
        break;
      }
      case BinaryOp::Add:
        if (std::holds_alternative<std::string>(l) && std::holds_alternative<std::string>(r)) {
          out = std::get<std::string>(l) + std::get<std::string>(r);
          break;
        }
        out = wrap_add(int_operand(l, lhs, e), int_operand(r, rhs, e));
        break;
      case BinaryOp::Sub: out = wrap_sub(int_operand(l, lhs, e), int_operand(r, rhs, e)); break;
      case BinaryOp::Mul: out = wrap_mul(int_operand(l, lhs, e), int_operand(r, rhs, e)); break;
      case BinaryOp::Div:
      case BinaryOp::Mod: {
        const std::int64_t a = int_operand(l, lhs, e);
        const std::int64_t b = int_operand(r, rhs, e);
        if (b == 0) fail(ErrorKind::DivByZero, e, {rhs.id}, "division by zero");
        if (b == -1) {
          out = e.binary_op == BinaryOp::Div ? wrap_sub(0, a) : std::int64_t{0};
        } else {
          out = e.binary_op == BinaryOp::Div ? a / b : a % b;
        }
        break;
      }
      case BinaryOp::Lt:
      case BinaryOp::Le:
      case BinaryOp::Gt:
      case BinaryOp::Ge: {
        const std::int64_t a = int_operand(l, lhs, e);
        const std::int64_t b = int_operand(r, rhs, e);
        switch (e.binary_op) {
          case BinaryOp::Lt: out = a < b; break;
          case BinaryOp::Le: out = a <= b; break;
          case BinaryOp::Gt: out = a > b; break;
          default: out = a >= b; break;
        }
        break;
      }
      default: break;
    }
    def_node(e, std::move(sources));
    return out;
  }

  Value eval_call(const Expr& e) {
    std::vector<Value> args;
    args.reserve(e.operands.size());
    for (const auto& o : e.operands) args.push_back(eval(*o));
    if (is_builtin(e.text)) return call_builtin(e, args);
    const Function* fn = ast->find_function(e.text);
    if (!fn) fail(ErrorKind::TypeError, e, {}, "unknown function '" + e.text + "'");
    if (fn->params.size() != args.size()) {
      fail(ErrorKind::TypeError, e, {},
           e.text + " expects " + std::to_string(fn->params.size()) + " arguments, got " +
               std::to_string(args.size()));
    }
    return call_user(e, *fn, std::move(args));
  }

  Value call_builtin(const Expr& e, const std::vector<Value>& args) {
    auto arity = [&](std::size_t n) {
      if (args.size() != n) {
        fail(ErrorKind::TypeError, e, {},
             e.text + " expects " + std::to_string(n) + " arguments, got " + std::to_string(args.size()));
      }
    };
    std::vector<FlowSource> sources;
    for (const auto& o : e.operands) sources.push_back(src(*o, 1));
    if (e.text == "array") {
      arity(2);
      const std::int64_t n = int_operand(args[0], *e.operands[0], e);
      if (n < 0 || n > 10'000'000) fail(ErrorKind::TypeError, e, {}, "bad array length " + std::to_string(n));
      ArrayId id = allocate(std::vector<Value>(static_cast<std::size_t>(n), args[1]));
      def(Reference::element(id.id, kAnyIndex), {src(*e.operands[1], 0), src(*e.operands[0], 1)});
      def_node(e, {});
      return id;
    }
    Value out;
    if (e.text == "abs") {
      arity(1);
      const std::int64_t v = int_operand(args[0], *e.operands[0], e);
      out = v < 0 ? wrap_sub(0, v) : v;
    } else {
      arity(2);
      const std::int64_t a = int_operand(args[0], *e.operands[0], e);
      const std::int64_t b = int_operand(args[1], *e.operands[1], e);
      out = e.text == "min" ? std::min(a, b) : std::max(a, b);
    }
    def_node(e, std::move(sources));
    return out;
  }

  Value call_user(const Expr& call, const Function& fn, std::vector<Value> args) {
    if (static_cast<int>(stack.size()) >= opts.max_depth) throw Halt{OutcomeKind::BudgetExceeded};
    const FrameId callee = static_cast<FrameId>(trace.frames.size());
    const Time call_time = static_cast<Time>(trace.steps.size());
    FrameInfo info;
    info.id = callee;
    info.function = fn.name;
    info.parent = ctx.frame;
    info.call_time = call_time;
    info.ordinal = ordinals[{ctx.frame, fn.name}]++;
    trace.frames.push_back(info);

    TraceStep step = make_step(StepKind::Call);
    take_pending(step);
    step.callee = fn.name;
    step.callee_frame = callee;
    step.call_node = call.id;
    step.args = args;
    Frame f;
    f.id = callee;
    f.fn = &fn;
    f.top_cp = call_time;
    for (std::size_t i = 0; i < fn.params.size(); ++i) {
      auto ref = Reference::local(callee, fn.params[i]);
      if (opts.record_flow) {
        step.flow.push_back(FlowDef{ref, {FlowSource{stack_ref(call.operands[i]->id), 0}}});
      }
      step.writes.push_back(Write{ref, Nil{}, args[i], true});
      f.locals[fn.params[i]] = args[i];
    }
    stack.push_back(std::move(f));
    emit(std::move(step));

    const Context saved = ctx;
    ctx = Context{callee, fn.id, fn.line, call_time, nullptr};
    Value result = run_body(fn, call.id, saved.frame);
    ctx = saved;
    return result;
  }

  // Executes a function body in the current (already pushed) frame and emits
  // its Return step. Pops the frame.
  Value run_body(const Function& fn, NodeId call_node, FrameId caller) {
    Value result;
    Completion c = exec_block(fn.body, frame().top_cp);
    if (c.returned) {
      result = returned_value_;
    } else {
      Pending p;
      ctx.pending = &p;
      ctx.stmt = fn.id;
      ctx.line = fn.end_line;
      ctx.cp = c.last_branch;
      if (caller != kNoFrame) def(Reference::stack(caller, call_node), {});
      finish_return(Nil{});
      ctx.pending = nullptr;
    }
    return result;
  }

  void finish_return(Value v) {
    TraceStep step = make_step(StepKind::Return);
    take_pending(step);
    step.value = v;
    const FrameId id = ctx.frame;
    trace.frames[static_cast<std::size_t>(id)].return_time = static_cast<Time>(trace.steps.size());
    stack.pop_back();
    const bool entry = stack.empty();
    if (entry) trace.outcome.value = v;
    emit(std::move(step), entry);
  }

  // ---- statements ----

  Value returned_value_;

  Completion exec_block(const std::vector<lang::StmtPtr>& body, Time cp) {
    Completion c;
    for (const auto& s : body) {
      Completion r = exec_stmt(*s, cp);
      if (r.returned) return r;
      if (s->is_compound() && r.last_branch != kNoTime && returns_within(*s)) cp = r.last_branch;
    }
    c.last_branch = cp;
    return c;
  }

  bool returns_within(const Stmt& s) {
    auto it = may_return.find(&s);
    if (it != may_return.end()) return it->second;
    const bool r = contains_return(s);
    may_return.emplace(&s, r);
    return r;
  }

  void begin(const Stmt& s, Time cp, Pending& p) {
    ctx.stmt = s.id;
    ctx.line = s.line;
    ctx.cp = cp;
    ctx.pending = &p;
  }

  void assign_local(const std::string& name, Value v, const Expr& value_expr, bool declare, const Expr* at) {
    auto& locals = frame().locals;
    auto it = locals.find(name);
    if (it == locals.end() && !declare) {
      fail(ErrorKind::TypeError, at ? *at : value_expr, {}, "assignment to undeclared variable '" + name + "'");
    }
    auto ref = Reference::local(ctx.frame, name);
    def(ref, {src(value_expr, 0)});
    Write w;
    w.ref = ref;
    w.new_value = v;
    if (it == locals.end()) {
      w.created = true;
      locals.emplace(name, std::move(v));
    } else {
      w.old_value = it->second;
      it->second = std::move(v);
    }
    pending().writes.push_back(std::move(w));
  }

  // Runs a simple statement and emits its step. Returns true for `return`.
  bool exec_simple(const Stmt& s, Time cp) {
    Pending p;
    begin(s, cp, p);
    switch (s.kind) {
      case StmtKind::Let:
      case StmtKind::Assign: {
        Value v = eval(*s.value());
        assign_local(s.name, std::move(v), *s.value(), s.kind == StmtKind::Let, nullptr);
        break;
      }
      case StmtKind::IndexAssign: {
        const Expr& base = *s.exprs[0];
        const Expr& index = *s.exprs[1];
        const Expr& value = *s.exprs[2];
        Value b = eval(base);
        Value i = eval(index);
        Value v = eval(value);
        if (std::holds_alternative<Nil>(b)) fail(ErrorKind::NilAccess, base, {base.id}, "indexing nil");
        if (std::holds_alternative<Nil>(i)) fail(ErrorKind::NilAccess, index, {index.id}, "nil index");
        const auto* a = std::get_if<ArrayId>(&b);
        if (!a) fail(ErrorKind::TypeError, base, {}, "cannot assign into " + std::string(kind_name(kind_of(b))));
        const auto* k = std::get_if<std::int64_t>(&i);
        if (!k) fail(ErrorKind::TypeError, index, {}, "index must be int");
        auto& elems = heap.at(*a);
        const auto n = static_cast<std::int64_t>(elems.size());
        if (*k < 0 || *k >= n) {
          fail(ErrorKind::IndexOutOfBounds, index, {base.id, index.id},
               "index " + std::to_string(*k) + " out of bounds for length " + std::to_string(n), *k, n);
        }
        auto ref = Reference::element(a->id, *k);
        def(ref, {src(value, 0), src(base, 1), src(index, 1)});
        auto& slot = elems[static_cast<std::size_t>(*k)];
        pending().writes.push_back(Write{ref, slot, v, false});
        slot = std::move(v);
        break;
      }
      case StmtKind::Return: {
        Value v;
        const FrameId caller = trace.frames[static_cast<std::size_t>(ctx.frame)].parent;
        const Time call_time = trace.frames[static_cast<std::size_t>(ctx.frame)].call_time;
        if (!s.exprs.empty()) v = eval(*s.value());
        if (caller != kNoFrame) {
          const NodeId call_node = trace.at(call_time).call_node;
          std::vector<FlowSource> sources;
          if (!s.exprs.empty()) sources.push_back(src(*s.value(), 0));
          def(Reference::stack(caller, call_node), std::move(sources));
        }
        returned_value_ = v;
        finish_return(std::move(v));
        ctx.pending = nullptr;
        return true;
      }
      case StmtKind::Assert: {
        const Expr& cond = *s.condition();
        bool short_circuit = false;
        Value v = cond.kind == ExprKind::Binary ? eval_binary(cond, &short_circuit) : eval(cond);
        const bool ok = bool_operand(v, cond, cond);
        if (!ok) {
          std::vector<NodeId> operands;
          if (short_circuit) {
            operands.push_back(cond.operands[0]->id);
          } else if (cond.kind == ExprKind::Binary || cond.kind == ExprKind::Unary) {
            for (const auto& o : cond.operands) operands.push_back(o->id);
          } else {
            operands.push_back(cond.id);
          }
          fail(ErrorKind::AssertFailed, cond, std::move(operands), "assertion failed");
        }
        break;
      }
      case StmtKind::Print: {
        Value v = eval(*s.value());
        if (const auto* str = std::get_if<std::string>(&v)) {
          trace.output.push_back(*str);
        } else {
          trace.output.push_back(to_string(v, heap));
        }
        break;
      }
      case StmtKind::ExprStmt: eval(*s.value()); break;
      default: break;
    }
    TraceStep step = make_step(StepKind::Stmt);
    take_pending(step);
    ctx.pending = nullptr;
    emit(std::move(step));
    return false;
  }

  std::pair<Time, bool> branch(const Stmt& s, Time cp) {
    Pending p;
    begin(s, cp, p);
    const Expr& cond = *s.condition();
    Value v = eval(cond);
    const auto* b = std::get_if<bool>(&v);
    if (!b) {
      if (std::holds_alternative<Nil>(v)) fail(ErrorKind::NilAccess, cond, {cond.id}, "nil condition");
      fail(ErrorKind::TypeError, cond, {}, "condition must be bool, got " + std::string(kind_name(kind_of(v))));
    }
    TraceStep step = make_step(StepKind::Branch);
    take_pending(step);
    step.taken = *b;
    step.cond_node = cond.id;
    ctx.pending = nullptr;
    return {emit(std::move(step)), *b};
  }

  Completion exec_stmt(const Stmt& s, Time cp) {
    Completion c;
    switch (s.kind) {
      case StmtKind::If: {
        arrive(s, cp);
        auto [t, taken] = branch(s, cp);
        return exec_block(taken ? s.body : s.orelse, t);
      }
      case StmtKind::While: {
        Time guard = cp;
        while (true) {
          arrive(s, guard);
          auto [t, taken] = branch(s, guard);
          c.last_branch = t;
          if (!taken) return c;
          Completion body = exec_block(s.body, t);
          if (body.returned) return body;
          guard = body.last_branch;
        }
      }
      case StmtKind::For: {
        exec_simple(*s.init, cp);
        Time guard = cp;
        while (true) {
          arrive(s, guard);
          auto [t, taken] = branch(s, guard);
          c.last_branch = t;
          if (!taken) return c;
          Completion body = exec_block(s.body, t);
          if (body.returned) return body;
          exec_simple(*s.step, body.last_branch);
          guard = body.last_branch;
        }
      }
      default:
        arrive(s, cp);
        c.returned = exec_simple(s, cp);
        return c;
    }
  }

  // ---- driver ----

  ExecutionTrace run(std::string_view entry, std::vector<Value> args, Heap initial) {
    const Function* fn = ast->find_function(entry);
    if (!fn) throw EntryError("no function named '" + std::string(entry) + "'");
    if (fn->params.size() != args.size()) {
      throw EntryError(std::string(entry) + " expects " + std::to_string(fn->params.size()) +
                       " arguments, got " + std::to_string(args.size()));
    }
    trace = ExecutionTrace{};
    trace.has_flow = opts.record_flow;
    trace.entry_snapshot = Snapshot{fn->name, fn->params, args, initial};
    heap = std::move(initial);
    recorded_arrays = heap.arrays.size();
    stack.clear();
    ordinals.clear();
    breakpoint_hits = 0;

    FrameInfo info;
    info.id = 0;
    info.function = fn->name;
    trace.frames.push_back(info);
    Frame f;
    f.id = 0;
    f.fn = fn;
    for (std::size_t i = 0; i < args.size(); ++i) f.locals[fn->params[i]] = args[i];
    stack.push_back(std::move(f));
    ctx = Context{0, fn->id, fn->line, kNoTime, nullptr};

    try {
      if (opts.budget < 1) throw Halt{OutcomeKind::BudgetExceeded};
      run_body(*fn, lang::kNoNode, kNoFrame);
      trace.outcome.kind = OutcomeKind::ReturnedNormally;
    } catch (const Halt& h) {
      trace.outcome.kind = h.kind;
      if (h.kind != OutcomeKind::Raised) trace.outcome.error.reset();
      // Arrays allocated by statements that never completed.
      heap.arrays.resize(recorded_arrays);
    }
    trace.outcome.time = trace.last_time();
    trace.final_heap = heap;
    return std::move(trace);
  }

  State live_state() const {
    State out;
    for (const auto& f : stack) {
      for (const auto& [name, v] : f.locals) out[Reference::local(f.id, name)] = v;
    }
    for (std::size_t a = 0; a < heap.arrays.size(); ++a) {
      const auto& elems = heap.arrays[a];
      for (std::size_t i = 0; i < elems.size(); ++i) {
        out[Reference::element(static_cast<std::int64_t>(a), static_cast<std::int64_t>(i))] = elems[i];
      }
    }
    return out;
  }
};

Interpreter::Interpreter(lang::Ast ast, RunOptions options)
    : impl_(std::make_unique<Impl>(std::move(ast), options)) {}
Interpreter::~Interpreter() = default;
Interpreter::Interpreter(Interpreter&&) noexcept = default;
Interpreter& Interpreter::operator=(Interpreter&&) noexcept = default;

ExecutionTrace Interpreter::run(std::string_view entry, std::vector<Value> args, Heap heap) {
  return impl_->run(entry, std::move(args), std::move(heap));
}

State Interpreter::live_state() const { return impl_->live_state(); }

ExecutionTrace run(const lang::Ast& ast, std::string_view entry, std::vector<Value> args, Heap heap,
                   const RunOptions& options) {
  Interpreter interp(ast, options);
  return interp.run(entry, std::move(args), std::move(heap));
}

ExecutionTrace run(const lang::Ast& ast, std::string_view entry, const std::vector<DeepValue>& args,
                   const RunOptions& options) {
  Heap heap;
  std::vector<Value> values;
  values.reserve(args.size());
  for (const auto& a : args) values.push_back(inject(a, heap));
  return run(ast, entry, std::move(values), std::move(heap), options);
}

}  // namespace mend::interp
