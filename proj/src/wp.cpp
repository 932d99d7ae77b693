#include "scv/wp.hpp"

#include <set>

namespace scv {

namespace {

// Value concept of an expression, for guard equalities: variables and
// literals are nominals, a field read is the inverse image of the base cell.
ConceptPtr value_concept(const Expr& e) {
  switch (e.kind) {
    case Expr::Kind::Var:
      return nominal(e.var);
    case Expr::Kind::Null:
      return nominal(names::kNull);
    case Expr::Kind::LitT:
      return nominal(names::kTrue);
    case Expr::Kind::LitF:
      return nominal(names::kFalse);
    case Expr::Kind::Field:
      return exists(rinverse(atomic_role(e.field)), nominal(e.var));
  }
  throw InternalError("value_concept");
}

void deref_vars(const BoolPtr& b, std::vector<std::string>& out, std::set<std::string>& seen) {
  switch (b->kind) {
    case BoolExpr::Kind::Eq:
      for (const Expr* e : {&b->e1, &b->e2})
        if (e->kind == Expr::Kind::Field && seen.insert(e->var).second) out.push_back(e->var);
      return;
    case BoolExpr::Kind::Not:
      deref_vars(b->b1, out, seen);
      return;
    case BoolExpr::Kind::And:
    case BoolExpr::Kind::Or:
      deref_vars(b->b1, out, seen);
      deref_vars(b->b2, out, seen);
      return;
    default:
      return;
  }
}

struct Instrumenter {
  const Vocabulary& vocab;
  int counter = 1;
  std::vector<LabelInfo> labels;

  std::string fresh_label(LabelInfo::Kind kind) {
    std::string name;
    do {
      name = "y" + std::to_string(counter++);
    } while (vocab.has_const(name));
    labels.push_back({name, kind});
    return name;
  }

  // Pre-labeled commands keep their names; everything else gets a fresh one.
  CommandPtr use_label(const CommandPtr& c, LabelInfo::Kind kind) {
    if (!c->label.empty()) {
      labels.push_back({c->label, kind});
      return c;
    }
    return with_label(c, fresh_label(kind));
  }

  CommandPtr abo_true() { return c_assign(names::kAbort, e_lit(true)); }

  // Wraps inner in allocatedness guards for every dereferenced variable of b.
  CommandPtr guard_cond(const BoolPtr& b, CommandPtr inner) {
    std::vector<std::string> vars;
    std::set<std::string> seen;
    deref_vars(b, vars, seen);
    if (vars.empty()) return inner;
    BoolPtr g = b_allocated(vars[0]);
    for (size_t i = 1; i < vars.size(); ++i) g = b_and(g, b_allocated(vars[i]));
    return c_if_else(g, std::move(inner), abo_true());
  }

  CommandPtr go(const CommandPtr& c) {
    switch (c->kind) {
      case Command::Kind::Skip:
        return c;
      case Command::Kind::Seq: {
        CommandPtr a = go(c->s1);
        CommandPtr b = go(c->s2);
        return c_seq(std::move(a), std::move(b));
      }
      case Command::Kind::New:
        return use_label(c, LabelInfo::Kind::New);
      case Command::Kind::Assign:
        if (c->expr.kind == Expr::Kind::Field) {
          auto labeled = use_label(c, LabelInfo::Kind::FieldRead);
          return c_if_else(b_allocated(c->expr.var), labeled, abo_true());
        }
        return c;
      case Command::Kind::FieldAssign:
        return c_if_else(b_allocated(c->var), c, abo_true());
      case Command::Kind::Dispose:
        return c_if_else(b_allocated(c->var), c, abo_true());
      case Command::Kind::IfThenElse: {
        CommandPtr t = go(c->s1);
        CommandPtr f = go(c->s2);
        return guard_cond(c->cond, c_if_else(c->cond, std::move(t), std::move(f)));
      }
      case Command::Kind::Assume:
        return guard_cond(c->cond, c_if_else(c->cond, c_skip(), abo_true()));
      case Command::Kind::IfThen:
        throw PreconditionError("instrument: input must be desugared");
    }
    throw InternalError("instrument");
  }
};

}  // namespace

InstrumentedProgram instrument(const CommandPtr& c, const Vocabulary& vocab) {
  if (!is_desugared(c)) throw PreconditionError("instrument: input must be desugared");
  Instrumenter ins{vocab};
  CommandPtr body = c_seq(c_assign(names::kAbort, e_lit(false)), ins.go(c));
  return {body, std::move(ins.labels)};
}

LFormulaPtr cond_to_dl(const BoolPtr& b) {
  switch (b->kind) {
    case BoolExpr::Kind::Eq:
      return concept_equiv(value_concept(b->e1), value_concept(b->e2));
    case BoolExpr::Kind::Not:
      return lnot(cond_to_dl(b->b1));
    case BoolExpr::Kind::And:
      return land(cond_to_dl(b->b1), cond_to_dl(b->b2));
    case BoolExpr::Kind::Or:
      return lor(cond_to_dl(b->b1), cond_to_dl(b->b2));
    case BoolExpr::Kind::LitT:
      return ltrue();
    case BoolExpr::Kind::LitF:
      return lnot(ltrue());
    case BoolExpr::Kind::Allocated:
      return concept_incl(nominal(b->var), atomic_concept(names::kAlloc));
  }
  throw InternalError("cond_to_dl");
}

namespace {

std::string expr_const(const Expr& e) {
  switch (e.kind) {
    case Expr::Kind::Var:
      return e.var;
    case Expr::Kind::Null:
      return names::kNull;
    case Expr::Kind::LitT:
      return names::kTrue;
    case Expr::Kind::LitF:
      return names::kFalse;
    case Expr::Kind::Field:
      throw PreconditionError("field expression where a constant was expected");
  }
  throw InternalError("expr_const");
}

LFormulaPtr subst_const(const LFormulaPtr& f, const std::string& from, const std::string& to) {
  Substitution s;
  s.consts[from] = to;
  return substitute(f, s);
}

LFormulaPtr subst_concept(const LFormulaPtr& f, const std::string& from, ConceptPtr to) {
  Substitution s;
  s.concepts[from] = std::move(to);
  return substitute(f, s);
}

LFormulaPtr subst_role(const LFormulaPtr& f, const std::string& from, RolePtr to) {
  Substitution s;
  s.roles[from] = std::move(to);
  return substitute(f, s);
}

// The program fields occurring in the formula, in vocabulary order.
std::vector<std::string> fields_in(const LFormulaPtr& f, const Vocabulary& vocab) {
  SymbolUse use;
  collect_symbols(f, use);
  std::vector<std::string> out;
  for (const auto& fld : vocab.fields())
    if (use.roles.count(fld)) out.push_back(fld);
  return out;
}

}  // namespace

LFormulaPtr back_propagate(const CommandPtr& c, const LFormulaPtr& f, const Vocabulary& vocab) {
  switch (c->kind) {
    case Command::Kind::Skip:
      return f;

    case Command::Kind::Assign:
      if (c->expr.kind == Expr::Kind::Field) {
        if (c->label.empty())
          throw PreconditionError("back_propagate: unlabeled field read " + to_text(c));
        // The read value gets a name: rewrite the target to it and pin it to
        // the field's value at the base cell.
        return land(subst_const(f, c->var, c->label),
                    concept_equiv(exists(rinverse(atomic_role(c->expr.field)), nominal(c->expr.var)),
                                  nominal(c->label)));
      }
      return subst_const(f, c->var, expr_const(c->expr));

    case Command::Kind::FieldAssign: {
      // f := f minus var's outgoing pairs plus (var, e).
      RolePtr corrected =
          runion(rdiff(atomic_role(c->field), rproduct(nominal(c->var), top_concept())),
                 rproduct(nominal(c->var), nominal(expr_const(c->expr))));
      return subst_role(f, c->field, corrected);
    }

    case Command::Kind::IfThenElse: {
      LFormulaPtr eps = cond_to_dl(c->cond);
      return lor(land(eps, back_propagate(c->s1, f, vocab)),
                 land(lnot(eps), back_propagate(c->s2, f, vocab)));
    }

    case Command::Kind::New: {
      if (c->label.empty())
        throw PreconditionError("back_propagate: unlabeled new " + to_text(c));
      LFormulaPtr g = subst_const(f, c->var, c->label);
      g = subst_concept(g, names::kAlloc,
                        cor(atomic_concept(names::kAlloc), nominal(c->label)));
      return land(g, concept_incl(nominal(c->label), cnot(atomic_concept(names::kAlloc))));
    }

    case Command::Kind::Dispose: {
      LFormulaPtr g = subst_concept(
          f, names::kAlloc, cand(atomic_concept(names::kAlloc), cnot(nominal(c->var))));
      // Null exactly the program fields the formula mentions at this point.
      for (const auto& fld : fields_in(g, vocab)) {
        CommandPtr nullify = c_field_assign(c->var, fld, e_null());
        g = back_propagate(nullify, g, vocab);
      }
      return g;
    }

    case Command::Kind::Seq:
      return back_propagate(c->s1, back_propagate(c->s2, f, vocab), vocab);

    case Command::Kind::IfThen:
    case Command::Kind::Assume:
      throw PreconditionError(
          "back_propagate: command must be desugared and instrumented first: " + to_text(c));
  }
  throw InternalError("back_propagate");
}

LFormulaPtr ext_rename(const LFormulaPtr& f, const Vocabulary& vocab) {
  Substitution s;
  for (const auto& r : vocab.rem_symbols()) {
    if (vocab.has_unary(r))
      s.concepts[r] = atomic_concept(names::ext(r));
    else
      s.roles[r] = atomic_role(names::ext(r));
  }
  return substitute(f, s);
}

LFormulaPtr back_propagate_ext(const CommandPtr& c, const LFormulaPtr& f,
                               const Vocabulary& vocab) {
  return back_propagate(c, ext_rename(f, vocab), vocab);
}

WpResult wp_transform(const CommandPtr& c, const LFormulaPtr& f, const Vocabulary& vocab) {
  InstrumentedProgram ip = instrument(c, vocab);
  LFormulaPtr strengthened =
      land(f, concept_equiv(nominal(names::kAbort), nominal(names::kFalse)));
  LFormulaPtr out = back_propagate_ext(ip.body, strengthened, vocab);
  return {out, std::move(ip)};
}

}  // namespace scv
