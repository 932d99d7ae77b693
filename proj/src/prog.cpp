#include "scv/prog.hpp"

#include <algorithm>
#include <sstream>

namespace scv {

namespace {
template <typename T, typename... A>
std::shared_ptr<const T> mk(A&&... a) {
  return std::make_shared<const T>(T{std::forward<A>(a)...});
}
}  // namespace

BoolPtr b_eq(Expr a, Expr b) { return mk<BoolExpr>(BoolExpr::Kind::Eq, a, b); }
BoolPtr b_not(BoolPtr b) {
  return mk<BoolExpr>(BoolExpr::Kind::Not, Expr{}, Expr{}, std::move(b));
}
BoolPtr b_and(BoolPtr a, BoolPtr b) {
  return mk<BoolExpr>(BoolExpr::Kind::And, Expr{}, Expr{}, std::move(a), std::move(b));
}
BoolPtr b_or(BoolPtr a, BoolPtr b) {
  return mk<BoolExpr>(BoolExpr::Kind::Or, Expr{}, Expr{}, std::move(a), std::move(b));
}
BoolPtr b_lit(bool v) {
  return mk<BoolExpr>(v ? BoolExpr::Kind::LitT : BoolExpr::Kind::LitF);
}
BoolPtr b_allocated(std::string var) {
  return mk<BoolExpr>(BoolExpr::Kind::Allocated, Expr{}, Expr{}, nullptr, nullptr,
                      std::move(var));
}

CommandPtr c_assign(std::string var, Expr e) {
  return mk<Command>(Command::Kind::Assign, std::move(var), std::string(), e);
}
CommandPtr c_field_assign(std::string var, std::string field, Expr e) {
  return mk<Command>(Command::Kind::FieldAssign, std::move(var), std::move(field), e);
}
CommandPtr c_skip() { return mk<Command>(Command::Kind::Skip); }
CommandPtr c_seq(CommandPtr a, CommandPtr b) {
  return mk<Command>(Command::Kind::Seq, std::string(), std::string(), Expr{}, nullptr,
                     std::move(a), std::move(b));
}
CommandPtr c_seq(const std::vector<CommandPtr>& cs) {
  if (cs.empty()) return c_skip();
  CommandPtr out = cs.back();
  for (auto it = cs.rbegin() + 1; it != cs.rend(); ++it) out = c_seq(*it, out);
  return out;
}
CommandPtr c_new(std::string var) { return mk<Command>(Command::Kind::New, std::move(var)); }
CommandPtr c_dispose(std::string var) {
  return mk<Command>(Command::Kind::Dispose, std::move(var));
}
CommandPtr c_if(BoolPtr b, CommandPtr s) {
  return mk<Command>(Command::Kind::IfThen, std::string(), std::string(), Expr{}, std::move(b),
                     std::move(s));
}
CommandPtr c_if_else(BoolPtr b, CommandPtr s1, CommandPtr s2) {
  return mk<Command>(Command::Kind::IfThenElse, std::string(), std::string(), Expr{},
                     std::move(b), std::move(s1), std::move(s2));
}
CommandPtr c_assume(BoolPtr b) {
  return mk<Command>(Command::Kind::Assume, std::string(), std::string(), Expr{}, std::move(b));
}
CommandPtr with_label(const CommandPtr& c, std::string label) {
  auto copy = std::make_shared<Command>(*c);
  copy->label = std::move(label);
  return copy;
}

namespace {
CommandPtr desugar_rec(const CommandPtr& c, std::vector<std::string>& fresh, int& counter) {
  switch (c->kind) {
    case Command::Kind::IfThen:
      return c_if_else(c->cond, desugar_rec(c->s1, fresh, counter), c_skip());
    case Command::Kind::IfThenElse: {
      auto a = desugar_rec(c->s1, fresh, counter);
      auto b = desugar_rec(c->s2, fresh, counter);
      return a == c->s1 && b == c->s2 ? c : c_if_else(c->cond, a, b);
    }
    case Command::Kind::Seq: {
      auto a = desugar_rec(c->s1, fresh, counter);
      auto b = desugar_rec(c->s2, fresh, counter);
      return a == c->s1 && b == c->s2 ? c : c_seq(a, b);
    }
    case Command::Kind::FieldAssign:
      if (c->expr.kind == Expr::Kind::Field) {
        std::string tmp = "tmp_" + std::to_string(counter++);
        fresh.push_back(tmp);
        return c_seq(c_assign(tmp, c->expr), c_field_assign(c->var, c->field, e_var(tmp)));
      }
      return c;
    default:
      return c;
  }
}
}  // namespace

CommandPtr desugar(const CommandPtr& c, std::vector<std::string>& fresh_vars) {
  int counter = 0;
  return desugar_rec(c, fresh_vars, counter);
}

bool is_desugared(const CommandPtr& c) {
  switch (c->kind) {
    case Command::Kind::IfThen:
      return false;
    case Command::Kind::FieldAssign:
      return c->expr.kind != Expr::Kind::Field;
    case Command::Kind::Seq:
      return is_desugared(c->s1) && is_desugared(c->s2);
    case Command::Kind::IfThenElse:
      return is_desugared(c->s1) && is_desugared(c->s2);
    default:
      return true;
  }
}

std::optional<Elem> eval_expr(const Expr& e, const MemoryStructure& m) {
  switch (e.kind) {
    case Expr::Kind::Var:
      return m.const_of(e.var);
    case Expr::Kind::Null:
      return m.null_elem();
    case Expr::Kind::LitT:
      return m.true_elem();
    case Expr::Kind::LitF:
      return m.false_elem();
    case Expr::Kind::Field: {
      Elem base = m.const_of(e.var);
      if (!m.alloc().count(base)) return std::nullopt;  // dereference err
      auto v = m.fun_value(e.field, base);
      if (!v) throw VocabError("field " + e.field + " undefined at an allocated cell");
      return v;
    }
  }
  throw InternalError("eval_expr");
}

std::optional<bool> eval_bool(const BoolPtr& b, const MemoryStructure& m) {
  switch (b->kind) {
    case BoolExpr::Kind::LitT:
      return true;
    case BoolExpr::Kind::LitF:
      return false;
    case BoolExpr::Kind::Eq: {
      auto a = eval_expr(b->e1, m), c = eval_expr(b->e2, m);
      if (!a || !c) return std::nullopt;
      return *a == *c;
    }
    case BoolExpr::Kind::Not: {
      auto v = eval_bool(b->b1, m);
      if (!v) return std::nullopt;
      return !*v;
    }
    case BoolExpr::Kind::And: {
      auto a = eval_bool(b->b1, m), c = eval_bool(b->b2, m);
      if (!a || !c) return std::nullopt;
      return *a && *c;
    }
    case BoolExpr::Kind::Or: {
      auto a = eval_bool(b->b1, m), c = eval_bool(b->b2, m);
      if (!a || !c) return std::nullopt;
      return *a || *c;
    }
    case BoolExpr::Kind::Allocated:
      return m.alloc().count(m.const_of(b->var)) != 0;
  }
  throw InternalError("eval_bool");
}

namespace {
RunOutcome abort_outcome() { return {RunOutcome::Kind::Abort, {}}; }

RunOutcome run_rec(const CommandPtr& c, MemoryStructure m, const Vocabulary& vocab,
                   const RunOptions& opts) {
  switch (c->kind) {
    case Command::Kind::Skip:
      return {RunOutcome::Kind::Ok, std::move(m)};

    case Command::Kind::Assign: {
      auto v = eval_expr(c->expr, m);
      if (!v) return abort_outcome();
      if (c->expr.kind == Expr::Kind::Field && !c->label.empty()) {
        if (opts.choices) {
          auto it = opts.choices->find(c->label);
          if (it != opts.choices->end() && it->second != *v) return abort_outcome();
        }
        if (opts.recorder) (*opts.recorder)[c->label] = *v;
      }
      m.consts[c->var] = *v;
      return {RunOutcome::Kind::Ok, std::move(m)};
    }

    case Command::Kind::New: {
      const auto& pool = m.mem_pool();
      if (pool.empty()) return {RunOutcome::Kind::OutOfReserve, {}};
      Elem target = *pool.begin();  // lowest id, for determinism
      if (opts.choices && !c->label.empty()) {
        auto it = opts.choices->find(c->label);
        if (it != opts.choices->end()) {
          if (!pool.count(it->second)) return abort_outcome();
          target = it->second;
        }
      }
      if (opts.recorder && !c->label.empty()) (*opts.recorder)[c->label] = target;
      MemoryStructure out = allocate(m, target);
      out.consts[c->var] = target;
      return {RunOutcome::Kind::Ok, std::move(out)};
    }

    case Command::Kind::FieldAssign: {
      Elem base = m.const_of(c->var);
      if (!m.alloc().count(base)) return abort_outcome();
      auto v = eval_expr(c->expr, m);
      if (!v) return abort_outcome();
      m.set_fun(c->field, base, *v);
      return {RunOutcome::Kind::Ok, std::move(m)};
    }

    case Command::Kind::Dispose: {
      Elem cell = m.const_of(c->var);
      if (!m.alloc().count(cell)) return abort_outcome();
      m.unary[names::kAlloc].erase(cell);
      m.unary[names::kPossibleTargets].insert(cell);
      for (const auto& f : vocab.fields()) m.set_fun(f, cell, m.null_elem());
      return {RunOutcome::Kind::Ok, std::move(m)};
    }

    case Command::Kind::Seq: {
      RunOutcome first = run_rec(c->s1, std::move(m), vocab, opts);
      if (!first.ok()) return first;
      return run_rec(c->s2, std::move(first.result), vocab, opts);
    }

    case Command::Kind::IfThen:
      return run_rec(c_if_else(c->cond, c->s1, c_skip()), std::move(m), vocab, opts);

    case Command::Kind::IfThenElse: {
      auto v = eval_bool(c->cond, m);
      if (!v) return abort_outcome();
      return run_rec(*v ? c->s1 : c->s2, std::move(m), vocab, opts);
    }

    case Command::Kind::Assume: {
      auto v = eval_bool(c->cond, m);
      if (!v || !*v) return abort_outcome();
      return {RunOutcome::Kind::Ok, std::move(m)};
    }
  }
  throw InternalError("run_rec");
}
}  // namespace

RunOutcome run(const CommandPtr& c, const MemoryStructure& m, const Vocabulary& vocab,
               const RunOptions& opts) {
  return run_rec(c, m, vocab, opts);
}

const GraphLocation& ProgramGraph::location(const std::string& name) const {
  for (const auto& l : locations)
    if (l.name == name) return l;
  throw VocabError("unknown location: " + name);
}

std::vector<const GraphEdge*> ProgramGraph::edges_from(const std::string& name) const {
  std::vector<const GraphEdge*> out;
  for (const auto& e : edges)
    if (e.from == name) out.push_back(&e);
  return out;
}

const GraphEdge& ProgramGraph::edge(const std::string& from, const std::string& to) const {
  for (const auto& e : edges)
    if (e.from == from && e.to == to) return e;
  throw VocabError("unknown edge: " + from + " -> " + to);
}

RunOutcome run_path(const ProgramGraph& g, const std::vector<const GraphEdge*>& path,
                    const MemoryStructure& m, const RunOptions& opts) {
  RunOutcome cur = {RunOutcome::Kind::Ok, m};
  for (size_t i = 0; i < path.size(); ++i) {
    if (i > 0 && path[i - 1]->to != path[i]->from)
      throw PreconditionError("run_path: edges are not consecutive");
    cur = run(path[i]->code, cur.result, g.vocab, opts);
    if (!cur.ok()) return cur;
  }
  return cur;
}

// ---- printing -----------------------------------------------------------

namespace {
std::string expr_text(const Expr& e) {
  switch (e.kind) {
    case Expr::Kind::Var:
      return e.var;
    case Expr::Kind::Field:
      return e.var + "." + e.field;
    case Expr::Kind::Null:
      return "null";
    case Expr::Kind::LitT:
      return "T";
    case Expr::Kind::LitF:
      return "F";
  }
  return "?";
}

std::string bool_text(const BoolPtr& b) {
  switch (b->kind) {
    case BoolExpr::Kind::Eq:
      return "(" + expr_text(b->e1) + " = " + expr_text(b->e2) + ")";
    case BoolExpr::Kind::Not:
      return "~" + bool_text(b->b1);
    case BoolExpr::Kind::And:
      return "(" + bool_text(b->b1) + " and " + bool_text(b->b2) + ")";
    case BoolExpr::Kind::Or:
      return "(" + bool_text(b->b1) + " or " + bool_text(b->b2) + ")";
    case BoolExpr::Kind::LitT:
      return "T";
    case BoolExpr::Kind::LitF:
      return "F";
    case BoolExpr::Kind::Allocated:
      return "allocated(" + b->var + ")";
  }
  return "?";
}

void cmd_text(const CommandPtr& c, std::ostream& os) {
  switch (c->kind) {
    case Command::Kind::Assign:
      os << c->var << " := " << expr_text(c->expr);
      return;
    case Command::Kind::FieldAssign:
      os << c->var << "." << c->field << " := " << expr_text(c->expr);
      return;
    case Command::Kind::Skip:
      os << "skip";
      return;
    case Command::Kind::Seq:
      cmd_text(c->s1, os);
      os << "; ";
      cmd_text(c->s2, os);
      return;
    case Command::Kind::New:
      os << c->var << " := new";
      return;
    case Command::Kind::Dispose:
      os << "dispose(" << c->var << ")";
      return;
    case Command::Kind::IfThen:
      os << "if " << bool_text(c->cond) << " then { ";
      cmd_text(c->s1, os);
      os << " }";
      return;
    case Command::Kind::IfThenElse:
      os << "if " << bool_text(c->cond) << " then { ";
      cmd_text(c->s1, os);
      os << " } else { ";
      cmd_text(c->s2, os);
      os << " }";
      return;
    case Command::Kind::Assume:
      os << "assume" << bool_text(c->cond);
      return;
  }
}
}  // namespace

std::string to_text(const CommandPtr& c) {
  std::ostringstream os;
  cmd_text(c, os);
  return os.str();
}

}  // namespace scv
