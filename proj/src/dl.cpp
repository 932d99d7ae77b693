#include "scv/dl.hpp"

#include <sstream>

namespace scv {

namespace {
template <typename T, typename... A>
std::shared_ptr<const T> mk(A&&... a) {
  return std::make_shared<const T>(T{std::forward<A>(a)...});
}
}  // namespace

ConceptPtr atomic_concept(std::string name) {
  return mk<Concept>(Concept::Kind::Atomic, std::move(name));
}
ConceptPtr nominal(std::string constant) {
  return mk<Concept>(Concept::Kind::Nominal, std::move(constant));
}
ConceptPtr top_concept() { return mk<Concept>(Concept::Kind::Top); }
ConceptPtr bottom_concept() { return mk<Concept>(Concept::Kind::Bottom); }
ConceptPtr cand(ConceptPtr a, ConceptPtr b) {
  return mk<Concept>(Concept::Kind::And, std::string(), std::move(a), std::move(b));
}
ConceptPtr cor(ConceptPtr a, ConceptPtr b) {
  return mk<Concept>(Concept::Kind::Or, std::string(), std::move(a), std::move(b));
}
ConceptPtr cnot(ConceptPtr a) {
  return mk<Concept>(Concept::Kind::Not, std::string(), std::move(a));
}
ConceptPtr exists(RolePtr r, ConceptPtr c) {
  return mk<Concept>(Concept::Kind::Exists, std::string(), std::move(c), nullptr, std::move(r));
}

RolePtr atomic_role(std::string name) { return mk<Role>(Role::Kind::Atomic, std::move(name)); }
RolePtr runion(RolePtr a, RolePtr b) {
  return mk<Role>(Role::Kind::Union, std::string(), std::move(a), std::move(b));
}
RolePtr rintersect(RolePtr a, RolePtr b) {
  return mk<Role>(Role::Kind::Intersect, std::string(), std::move(a), std::move(b));
}
RolePtr rdiff(RolePtr a, RolePtr b) {
  return mk<Role>(Role::Kind::Diff, std::string(), std::move(a), std::move(b));
}
RolePtr rinverse(RolePtr a) {
  return mk<Role>(Role::Kind::Inverse, std::string(), std::move(a));
}
RolePtr rproduct(ConceptPtr c, ConceptPtr d) {
  return mk<Role>(Role::Kind::Product, std::string(), nullptr, nullptr, std::move(c),
                  std::move(d));
}

LFormulaPtr concept_incl(ConceptPtr c, ConceptPtr d) {
  return mk<LFormula>(LFormula::Kind::ConceptIncl, std::move(c), std::move(d));
}
LFormulaPtr role_incl(RolePtr r, RolePtr s) {
  return mk<LFormula>(LFormula::Kind::RoleIncl, nullptr, nullptr, std::move(r), std::move(s));
}
LFormulaPtr func(RolePtr r) {
  return mk<LFormula>(LFormula::Kind::Func, nullptr, nullptr, std::move(r));
}
LFormulaPtr land(LFormulaPtr a, LFormulaPtr b) {
  return mk<LFormula>(LFormula::Kind::And, nullptr, nullptr, nullptr, nullptr, std::move(a),
                      std::move(b));
}
LFormulaPtr land(const std::vector<LFormulaPtr>& fs) {
  if (fs.empty()) return ltrue();
  LFormulaPtr out = fs.back();
  for (auto it = fs.rbegin() + 1; it != fs.rend(); ++it) out = land(*it, out);
  return out;
}
LFormulaPtr lor(LFormulaPtr a, LFormulaPtr b) {
  return mk<LFormula>(LFormula::Kind::Or, nullptr, nullptr, nullptr, nullptr, std::move(a),
                      std::move(b));
}
LFormulaPtr lnot(LFormulaPtr a) {
  return mk<LFormula>(LFormula::Kind::Not, nullptr, nullptr, nullptr, nullptr, std::move(a));
}
LFormulaPtr limplies(LFormulaPtr a, LFormulaPtr b) {
  return mk<LFormula>(LFormula::Kind::Implies, nullptr, nullptr, nullptr, nullptr, std::move(a),
                      std::move(b));
}
LFormulaPtr concept_equiv(ConceptPtr c, ConceptPtr d) {
  return land(concept_incl(c, d), concept_incl(d, c));
}
LFormulaPtr role_equiv(RolePtr r, RolePtr s) {
  return land(role_incl(r, s), role_incl(s, r));
}
LFormulaPtr ltrue() { return concept_incl(top_concept(), top_concept()); }

std::set<Elem> eval_concept(const ConceptPtr& c, const MemoryStructure& m) {
  switch (c->kind) {
    case Concept::Kind::Atomic:
      return m.unary_of(c->name);
    case Concept::Kind::Nominal:
      return {m.const_of(c->name)};
    case Concept::Kind::Top: {
      std::set<Elem> all;
      for (Elem e = 0; e < m.size; ++e) all.insert(e);
      return all;
    }
    case Concept::Kind::Bottom:
      return {};
    case Concept::Kind::And: {
      auto a = eval_concept(c->lhs, m), b = eval_concept(c->rhs, m);
      std::set<Elem> out;
      for (Elem e : a)
        if (b.count(e)) out.insert(e);
      return out;
    }
    case Concept::Kind::Or: {
      auto out = eval_concept(c->lhs, m);
      auto b = eval_concept(c->rhs, m);
      out.insert(b.begin(), b.end());
      return out;
    }
    case Concept::Kind::Not: {
      auto a = eval_concept(c->lhs, m);
      std::set<Elem> out;
      for (Elem e = 0; e < m.size; ++e)
        if (!a.count(e)) out.insert(e);
      return out;
    }
    case Concept::Kind::Exists: {
      auto rel = eval_role(c->role, m);
      auto body = eval_concept(c->lhs, m);
      std::set<Elem> out;
      for (const auto& [a, b] : rel)
        if (body.count(b)) out.insert(a);
      return out;
    }
  }
  throw InternalError("eval_concept: bad kind");
}

std::set<std::pair<Elem, Elem>> eval_role(const RolePtr& r, const MemoryStructure& m) {
  switch (r->kind) {
    case Role::Kind::Atomic:
      return m.binary_of(r->name);
    case Role::Kind::Union: {
      auto out = eval_role(r->r, m);
      auto b = eval_role(r->s, m);
      out.insert(b.begin(), b.end());
      return out;
    }
    case Role::Kind::Intersect: {
      auto a = eval_role(r->r, m), b = eval_role(r->s, m);
      std::set<std::pair<Elem, Elem>> out;
      for (const auto& p : a)
        if (b.count(p)) out.insert(p);
      return out;
    }
    case Role::Kind::Diff: {
      auto a = eval_role(r->r, m), b = eval_role(r->s, m);
      std::set<std::pair<Elem, Elem>> out;
      for (const auto& p : a)
        if (!b.count(p)) out.insert(p);
      return out;
    }
    case Role::Kind::Inverse: {
      auto a = eval_role(r->r, m);
      std::set<std::pair<Elem, Elem>> out;
      for (const auto& [x, y] : a) out.insert({y, x});
      return out;
    }
    case Role::Kind::Product: {
      auto a = eval_concept(r->c, m), b = eval_concept(r->d, m);
      std::set<std::pair<Elem, Elem>> out;
      for (Elem x : a)
        for (Elem y : b) out.insert({x, y});
      return out;
    }
  }
  throw InternalError("eval_role: bad kind");
}

bool eval_formula(const LFormulaPtr& f, const MemoryStructure& m) {
  switch (f->kind) {
    case LFormula::Kind::ConceptIncl: {
      auto a = eval_concept(f->c1, m), b = eval_concept(f->c2, m);
      for (Elem e : a)
        if (!b.count(e)) return false;
      return true;
    }
    case LFormula::Kind::RoleIncl: {
      auto a = eval_role(f->r1, m), b = eval_role(f->r2, m);
      for (const auto& p : a)
        if (!b.count(p)) return false;
      return true;
    }
    case LFormula::Kind::Func: {
      auto rel = eval_role(f->r1, m);
      std::map<Elem, Elem> seen;
      for (const auto& [a, b] : rel) {
        auto [it, fresh] = seen.insert({a, b});
        if (!fresh && it->second != b) return false;
      }
      return true;
    }
    case LFormula::Kind::And:
      return eval_formula(f->f1, m) && eval_formula(f->f2, m);
    case LFormula::Kind::Or:
      return eval_formula(f->f1, m) || eval_formula(f->f2, m);
    case LFormula::Kind::Not:
      return !eval_formula(f->f1, m);
    case LFormula::Kind::Implies:
      return !eval_formula(f->f1, m) || eval_formula(f->f2, m);
  }
  throw InternalError("eval_formula: bad kind");
}

ConceptPtr substitute(const ConceptPtr& c, const Substitution& s) {
  switch (c->kind) {
    case Concept::Kind::Atomic: {
      auto it = s.concepts.find(c->name);
      return it == s.concepts.end() ? c : it->second;
    }
    case Concept::Kind::Nominal: {
      auto it = s.consts.find(c->name);
      return it == s.consts.end() ? c : nominal(it->second);
    }
    case Concept::Kind::Top:
    case Concept::Kind::Bottom:
      return c;
    case Concept::Kind::And:
    case Concept::Kind::Or: {
      auto a = substitute(c->lhs, s), b = substitute(c->rhs, s);
      if (a == c->lhs && b == c->rhs) return c;
      return c->kind == Concept::Kind::And ? cand(a, b) : cor(a, b);
    }
    case Concept::Kind::Not: {
      auto a = substitute(c->lhs, s);
      return a == c->lhs ? c : cnot(a);
    }
    case Concept::Kind::Exists: {
      auto r = substitute(c->role, s);
      auto body = substitute(c->lhs, s);
      if (r == c->role && body == c->lhs) return c;
      return exists(r, body);
    }
  }
  throw InternalError("substitute: bad concept kind");
}

RolePtr substitute(const RolePtr& r, const Substitution& s) {
  switch (r->kind) {
    case Role::Kind::Atomic: {
      auto it = s.roles.find(r->name);
      return it == s.roles.end() ? r : it->second;
    }
    case Role::Kind::Union:
    case Role::Kind::Intersect:
    case Role::Kind::Diff: {
      auto a = substitute(r->r, s), b = substitute(r->s, s);
      if (a == r->r && b == r->s) return r;
      if (r->kind == Role::Kind::Union) return runion(a, b);
      if (r->kind == Role::Kind::Intersect) return rintersect(a, b);
      return rdiff(a, b);
    }
    case Role::Kind::Inverse: {
      auto a = substitute(r->r, s);
      return a == r->r ? r : rinverse(a);
    }
    case Role::Kind::Product: {
      auto a = substitute(r->c, s), b = substitute(r->d, s);
      if (a == r->c && b == r->d) return r;
      return rproduct(a, b);
    }
  }
  throw InternalError("substitute: bad role kind");
}

LFormulaPtr substitute(const LFormulaPtr& f, const Substitution& s) {
  if (s.empty()) return f;
  switch (f->kind) {
    case LFormula::Kind::ConceptIncl: {
      auto a = substitute(f->c1, s), b = substitute(f->c2, s);
      if (a == f->c1 && b == f->c2) return f;
      return concept_incl(a, b);
    }
    case LFormula::Kind::RoleIncl: {
      auto a = substitute(f->r1, s), b = substitute(f->r2, s);
      if (a == f->r1 && b == f->r2) return f;
      return role_incl(a, b);
    }
    case LFormula::Kind::Func: {
      auto a = substitute(f->r1, s);
      return a == f->r1 ? f : func(a);
    }
    case LFormula::Kind::And:
    case LFormula::Kind::Or:
    case LFormula::Kind::Implies: {
      auto a = substitute(f->f1, s), b = substitute(f->f2, s);
      if (a == f->f1 && b == f->f2) return f;
      if (f->kind == LFormula::Kind::And) return land(a, b);
      if (f->kind == LFormula::Kind::Or) return lor(a, b);
      return limplies(a, b);
    }
    case LFormula::Kind::Not: {
      auto a = substitute(f->f1, s);
      return a == f->f1 ? f : lnot(a);
    }
  }
  throw InternalError("substitute: bad formula kind");
}

bool equal(const ConceptPtr& a, const ConceptPtr& b) {
  if (a == b) return true;
  if (!a || !b || a->kind != b->kind) return false;
  switch (a->kind) {
    case Concept::Kind::Atomic:
    case Concept::Kind::Nominal:
      return a->name == b->name;
    case Concept::Kind::Top:
    case Concept::Kind::Bottom:
      return true;
    case Concept::Kind::And:
    case Concept::Kind::Or:
      return equal(a->lhs, b->lhs) && equal(a->rhs, b->rhs);
    case Concept::Kind::Not:
      return equal(a->lhs, b->lhs);
    case Concept::Kind::Exists:
      return equal(a->role, b->role) && equal(a->lhs, b->lhs);
  }
  return false;
}

bool equal(const RolePtr& a, const RolePtr& b) {
  if (a == b) return true;
  if (!a || !b || a->kind != b->kind) return false;
  switch (a->kind) {
    case Role::Kind::Atomic:
      return a->name == b->name;
    case Role::Kind::Union:
    case Role::Kind::Intersect:
    case Role::Kind::Diff:
      return equal(a->r, b->r) && equal(a->s, b->s);
    case Role::Kind::Inverse:
      return equal(a->r, b->r);
    case Role::Kind::Product:
      return equal(a->c, b->c) && equal(a->d, b->d);
  }
  return false;
}

bool equal(const LFormulaPtr& a, const LFormulaPtr& b) {
  if (a == b) return true;
  if (!a || !b || a->kind != b->kind) return false;
  switch (a->kind) {
    case LFormula::Kind::ConceptIncl:
      return equal(a->c1, b->c1) && equal(a->c2, b->c2);
    case LFormula::Kind::RoleIncl:
      return equal(a->r1, b->r1) && equal(a->r2, b->r2);
    case LFormula::Kind::Func:
      return equal(a->r1, b->r1);
    case LFormula::Kind::And:
    case LFormula::Kind::Or:
    case LFormula::Kind::Implies:
      return equal(a->f1, b->f1) && equal(a->f2, b->f2);
    case LFormula::Kind::Not:
      return equal(a->f1, b->f1);
  }
  return false;
}

void collect_symbols(const ConceptPtr& c, SymbolUse& out) {
  switch (c->kind) {
    case Concept::Kind::Atomic:
      out.concepts.insert(c->name);
      return;
    case Concept::Kind::Nominal:
      out.consts.insert(c->name);
      return;
    case Concept::Kind::Top:
    case Concept::Kind::Bottom:
      return;
    case Concept::Kind::And:
    case Concept::Kind::Or:
      collect_symbols(c->lhs, out);
      collect_symbols(c->rhs, out);
      return;
    case Concept::Kind::Not:
      collect_symbols(c->lhs, out);
      return;
    case Concept::Kind::Exists:
      collect_symbols(c->role, out);
      collect_symbols(c->lhs, out);
      return;
  }
}

void collect_symbols(const RolePtr& r, SymbolUse& out) {
  switch (r->kind) {
    case Role::Kind::Atomic:
      out.roles.insert(r->name);
      return;
    case Role::Kind::Union:
    case Role::Kind::Intersect:
    case Role::Kind::Diff:
      collect_symbols(r->r, out);
      collect_symbols(r->s, out);
      return;
    case Role::Kind::Inverse:
      collect_symbols(r->r, out);
      return;
    case Role::Kind::Product:
      collect_symbols(r->c, out);
      collect_symbols(r->d, out);
      return;
  }
}

void collect_symbols(const LFormulaPtr& f, SymbolUse& out) {
  switch (f->kind) {
    case LFormula::Kind::ConceptIncl:
      collect_symbols(f->c1, out);
      collect_symbols(f->c2, out);
      return;
    case LFormula::Kind::RoleIncl:
      collect_symbols(f->r1, out);
      collect_symbols(f->r2, out);
      return;
    case LFormula::Kind::Func:
      collect_symbols(f->r1, out);
      return;
    case LFormula::Kind::And:
    case LFormula::Kind::Or:
    case LFormula::Kind::Implies:
      collect_symbols(f->f1, out);
      collect_symbols(f->f2, out);
      return;
    case LFormula::Kind::Not:
      collect_symbols(f->f1, out);
      return;
  }
}

// ---- pretty printing ----------------------------------------------------
// Precedence per docs/grammar.md: ^- then ! then x then & then \ then |.

namespace {
int cprec(const Concept& c) {
  switch (c.kind) {
    case Concept::Kind::Or:
      return 1;
    case Concept::Kind::And:
      return 3;
    case Concept::Kind::Not:
      return 5;
    default:
      return 7;
  }
}
int rprec(const Role& r) {
  switch (r.kind) {
    case Role::Kind::Union:
      return 1;
    case Role::Kind::Diff:
      return 2;
    case Role::Kind::Intersect:
      return 3;
    case Role::Kind::Product:
      return 4;
    case Role::Kind::Inverse:
      return 6;
    default:
      return 7;
  }
}

void pc(const ConceptPtr& c, int parent, std::ostream& os);
void pr(const RolePtr& r, int parent, std::ostream& os);

void pc(const ConceptPtr& c, int parent, std::ostream& os) {
  int me = cprec(*c);
  bool paren = me < parent;
  if (paren) os << "(";
  switch (c->kind) {
    case Concept::Kind::Atomic:
      os << c->name;
      break;
    case Concept::Kind::Nominal:
      os << "o:" << c->name;
      break;
    case Concept::Kind::Top:
      os << "top";
      break;
    case Concept::Kind::Bottom:
      os << "bot";
      break;
    case Concept::Kind::And:
      pc(c->lhs, me, os);
      os << " & ";
      pc(c->rhs, me + 1, os);
      break;
    case Concept::Kind::Or:
      pc(c->lhs, me, os);
      os << " | ";
      pc(c->rhs, me + 1, os);
      break;
    case Concept::Kind::Not:
      os << "!";
      pc(c->lhs, me, os);
      break;
    case Concept::Kind::Exists:
      os << "ex ";
      pr(c->role, 5, os);
      os << " . ";
      pc(c->lhs, 5, os);
      break;
  }
  if (paren) os << ")";
}

void pr(const RolePtr& r, int parent, std::ostream& os) {
  int me = rprec(*r);
  bool paren = me < parent;
  if (paren) os << "(";
  switch (r->kind) {
    case Role::Kind::Atomic:
      os << r->name;
      break;
    case Role::Kind::Union:
      pr(r->r, me, os);
      os << " | ";
      pr(r->s, me + 1, os);
      break;
    case Role::Kind::Intersect:
      pr(r->r, me, os);
      os << " & ";
      pr(r->s, me + 1, os);
      break;
    case Role::Kind::Diff:
      pr(r->r, me, os);
      os << " \\ ";
      pr(r->s, me + 1, os);
      break;
    case Role::Kind::Inverse:
      pr(r->r, me + 1, os);
      os << "^-";
      break;
    case Role::Kind::Product:
      if (r->c->kind == Concept::Kind::Nominal && r->d->kind == Concept::Kind::Nominal) {
        os << "(o:" << r->c->name << ", o:" << r->d->name << ")";
      } else {
        pc(r->c, me + 1, os);
        os << " x ";
        pc(r->d, me + 1, os);
      }
      break;
  }
  if (paren) os << ")";
}

int fprec(const LFormula& f) {
  switch (f.kind) {
    case LFormula::Kind::Implies:
      return 1;
    case LFormula::Kind::Or:
      return 2;
    case LFormula::Kind::And:
      return 3;
    case LFormula::Kind::Not:
      return 4;
    default:
      return 5;
  }
}

void pf(const LFormulaPtr& f, int parent, std::ostream& os) {
  int me = fprec(*f);
  bool paren = me < parent;
  if (paren) os << "(";
  switch (f->kind) {
    case LFormula::Kind::ConceptIncl:
      pc(f->c1, 0, os);
      os << " <= ";
      pc(f->c2, 0, os);
      break;
    case LFormula::Kind::RoleIncl:
      pr(f->r1, 0, os);
      os << " <= ";
      pr(f->r2, 0, os);
      break;
    case LFormula::Kind::Func:
      os << "func(";
      pr(f->r1, 0, os);
      os << ")";
      break;
    case LFormula::Kind::And:
      pf(f->f1, me, os);
      os << " && ";
      pf(f->f2, me + 1, os);
      break;
    case LFormula::Kind::Or:
      pf(f->f1, me, os);
      os << " || ";
      pf(f->f2, me + 1, os);
      break;
    case LFormula::Kind::Not:
      // Parenthesize everything except func(..): a bare `!C <= D` would
      // re-parse as concept negation.
      os << "!";
      if (f->f1->kind == LFormula::Kind::Func) {
        pf(f->f1, me + 1, os);
      } else {
        os << "(";
        pf(f->f1, 0, os);
        os << ")";
      }
      break;
    case LFormula::Kind::Implies:
      pf(f->f1, me + 1, os);
      os << " -> ";
      pf(f->f2, me, os);
      break;
  }
  if (paren) os << ")";
}
}  // namespace

std::string to_text(const ConceptPtr& c) {
  std::ostringstream os;
  pc(c, 0, os);
  return os.str();
}
std::string to_text(const RolePtr& r) {
  std::ostringstream os;
  pr(r, 0, os);
  return os.str();
}
std::string to_text(const LFormulaPtr& f) {
  std::ostringstream os;
  pf(f, 0, os);
  return os.str();
}

}  // namespace scv
