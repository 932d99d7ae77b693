#include "scv/fo.hpp"

#include <functional>
#include <sstream>

namespace scv {

namespace {
Fo2Ptr mk(Fo2Formula f) { return std::make_shared<const Fo2Formula>(std::move(f)); }
}  // namespace

Fo2Ptr fo_true() {
  static Fo2Ptr t = mk({Fo2Formula::Kind::True});
  return t;
}
Fo2Ptr fo_false() {
  static Fo2Ptr f = mk({Fo2Formula::Kind::False});
  return f;
}
Fo2Ptr fo_unary(std::string pred, Term a) {
  Fo2Formula f{Fo2Formula::Kind::Unary};
  f.pred = std::move(pred);
  f.a = a;
  return mk(std::move(f));
}
Fo2Ptr fo_binary(std::string pred, Term a, Term b) {
  Fo2Formula f{Fo2Formula::Kind::Binary};
  f.pred = std::move(pred);
  f.a = a;
  f.b = b;
  return mk(std::move(f));
}
Fo2Ptr fo_eq(Term a, Term b) {
  Fo2Formula f{Fo2Formula::Kind::Eq};
  f.a = a;
  f.b = b;
  return mk(std::move(f));
}
Fo2Ptr fo_not(Fo2Ptr g) {
  Fo2Formula f{Fo2Formula::Kind::Not};
  f.kids = {std::move(g)};
  return mk(std::move(f));
}
Fo2Ptr fo_and(std::vector<Fo2Ptr> kids) {
  if (kids.empty()) return fo_true();
  if (kids.size() == 1) return kids[0];
  Fo2Formula f{Fo2Formula::Kind::And};
  f.kids = std::move(kids);
  return mk(std::move(f));
}
Fo2Ptr fo_or(std::vector<Fo2Ptr> kids) {
  if (kids.empty()) return fo_false();
  if (kids.size() == 1) return kids[0];
  Fo2Formula f{Fo2Formula::Kind::Or};
  f.kids = std::move(kids);
  return mk(std::move(f));
}
Fo2Ptr fo_implies(Fo2Ptr a, Fo2Ptr b) {
  Fo2Formula f{Fo2Formula::Kind::Implies};
  f.kids = {std::move(a), std::move(b)};
  return mk(std::move(f));
}
Fo2Ptr fo_iff(Fo2Ptr a, Fo2Ptr b) {
  Fo2Formula f{Fo2Formula::Kind::Iff};
  f.kids = {std::move(a), std::move(b)};
  return mk(std::move(f));
}
Fo2Ptr fo_forall(char v, Fo2Ptr g) {
  Fo2Formula f{Fo2Formula::Kind::Forall};
  f.kids = {std::move(g)};
  f.qvar = v;
  return mk(std::move(f));
}
Fo2Ptr fo_exists(char v, Fo2Ptr g) {
  Fo2Formula f{Fo2Formula::Kind::Exists};
  f.kids = {std::move(g)};
  f.qvar = v;
  return mk(std::move(f));
}
Fo2Ptr fo_count(Fo2Formula::Cmp cmp, int k, char v, Fo2Ptr g) {
  Fo2Formula f{Fo2Formula::Kind::Count};
  f.kids = {std::move(g)};
  f.qvar = v;
  f.cmp = cmp;
  f.k = k;
  return mk(std::move(f));
}

namespace {
Elem term_value(const Term& t, const MemoryStructure& m, const std::optional<Elem>& xv,
                const std::optional<Elem>& yv) {
  switch (t.kind) {
    case Term::Kind::VarX:
      if (!xv) throw VocabError("unbound variable x");
      return *xv;
    case Term::Kind::VarY:
      if (!yv) throw VocabError("unbound variable y");
      return *yv;
    case Term::Kind::Const:
      return m.const_of(t.name);
  }
  throw InternalError("term_value");
}
}  // namespace

bool eval_fo2(const Fo2Ptr& f, const MemoryStructure& m, std::optional<Elem> xv,
              std::optional<Elem> yv) {
  switch (f->kind) {
    case Fo2Formula::Kind::True:
      return true;
    case Fo2Formula::Kind::False:
      return false;
    case Fo2Formula::Kind::Unary:
      return m.in_unary(f->pred, term_value(f->a, m, xv, yv));
    case Fo2Formula::Kind::Binary:
      return m.binary_of(f->pred).count(
                 {term_value(f->a, m, xv, yv), term_value(f->b, m, xv, yv)}) != 0;
    case Fo2Formula::Kind::Eq:
      return term_value(f->a, m, xv, yv) == term_value(f->b, m, xv, yv);
    case Fo2Formula::Kind::Not:
      return !eval_fo2(f->kids[0], m, xv, yv);
    case Fo2Formula::Kind::And:
      for (const auto& k : f->kids)
        if (!eval_fo2(k, m, xv, yv)) return false;
      return true;
    case Fo2Formula::Kind::Or:
      for (const auto& k : f->kids)
        if (eval_fo2(k, m, xv, yv)) return true;
      return false;
    case Fo2Formula::Kind::Implies:
      return !eval_fo2(f->kids[0], m, xv, yv) || eval_fo2(f->kids[1], m, xv, yv);
    case Fo2Formula::Kind::Iff:
      return eval_fo2(f->kids[0], m, xv, yv) == eval_fo2(f->kids[1], m, xv, yv);
    case Fo2Formula::Kind::Forall:
      for (Elem e = 0; e < m.size; ++e) {
        bool v = f->qvar == 'x' ? eval_fo2(f->kids[0], m, e, yv)
                                : eval_fo2(f->kids[0], m, xv, e);
        if (!v) return false;
      }
      return true;
    case Fo2Formula::Kind::Exists:
      for (Elem e = 0; e < m.size; ++e) {
        bool v = f->qvar == 'x' ? eval_fo2(f->kids[0], m, e, yv)
                                : eval_fo2(f->kids[0], m, xv, e);
        if (v) return true;
      }
      return false;
    case Fo2Formula::Kind::Count: {
      int n = 0;
      for (Elem e = 0; e < m.size; ++e) {
        bool v = f->qvar == 'x' ? eval_fo2(f->kids[0], m, e, yv)
                                : eval_fo2(f->kids[0], m, xv, e);
        if (v) ++n;
      }
      switch (f->cmp) {
        case Fo2Formula::Cmp::AtLeast:
          return n >= f->k;
        case Fo2Formula::Cmp::AtMost:
          return n <= f->k;
        case Fo2Formula::Cmp::Exact:
          return n == f->k;
      }
      throw InternalError("eval_fo2: bad cmp");
    }
  }
  throw InternalError("eval_fo2: bad kind");
}

bool is_forest(const std::set<std::pair<Elem, Elem>>& rel, int universe_size) {
  std::vector<int> indeg(universe_size, 0);
  for (const auto& [a, b] : rel) {
    if (a < 0 || a >= universe_size || b < 0 || b >= universe_size) return false;
    if (++indeg[b] > 1) return false;
  }
  // Acyclicity: repeatedly strip nodes with no outgoing edges.
  std::vector<std::vector<Elem>> succ(universe_size);
  std::vector<int> outdeg(universe_size, 0);
  for (const auto& [a, b] : rel) {
    succ[a].push_back(b);
    outdeg[a]++;
  }
  // DFS cycle check (white/grey/black).
  std::vector<int> color(universe_size, 0);
  std::function<bool(Elem)> dfs = [&](Elem v) {
    color[v] = 1;
    for (Elem w : succ[v]) {
      if (color[w] == 1) return false;
      if (color[w] == 0 && !dfs(w)) return false;
    }
    color[v] = 2;
    return true;
  };
  for (Elem v = 0; v < universe_size; ++v)
    if (color[v] == 0 && !dfs(v)) return false;
  return true;
}

std::set<std::pair<Elem, Elem>> canonical_forest(const Ct2Formula& f, const MemoryStructure& m) {
  std::set<std::pair<Elem, Elem>> forest;
  for (const auto& seg : f.segments) {
    const auto& part = m.unary_of(seg.partition);
    for (const auto& [a, b] : m.binary_of(seg.field))
      if (part.count(a) && part.count(b)) forest.insert({a, b});
  }
  return forest;
}

namespace {
bool check_with_forest(const Ct2Formula& f, const MemoryStructure& m,
                       const std::set<std::pair<Elem, Elem>>& forest) {
  if (!is_forest(forest, m.size)) return false;
  MemoryStructure ext = m;
  ext.binary[names::kForest] = forest;
  return eval_fo2(f.body, ext);
}
}  // namespace

bool eval_ct2(const Ct2Formula& f, const MemoryStructure& m, ForestStrategy strategy,
              int exhaustive_cap) {
  if (strategy == ForestStrategy::Canonical)
    return check_with_forest(f, m, canonical_forest(f, m));

  if (m.size > exhaustive_cap)
    throw PreconditionError("exhaustive forest enumeration refused above universe size " +
                            std::to_string(exhaustive_cap));
  // Every in-degree-<=1 acyclic relation is a parent assignment: each element
  // has at most one predecessor. Enumerate predecessor choices.
  int n = m.size;
  std::vector<int> parent(n, -1);
  std::function<bool(int)> go = [&](int v) -> bool {
    if (v == n) {
      std::set<std::pair<Elem, Elem>> forest;
      for (Elem e = 0; e < n; ++e)
        if (parent[e] >= 0) forest.insert({parent[e], e});
      return check_with_forest(f, m, forest);
    }
    for (int p = -1; p < n; ++p) {
      if (p == v) continue;
      parent[v] = p;
      if (go(v + 1)) return true;
    }
    parent[v] = -1;
    return false;
  };
  return go(0);
}

void collect_symbols(const Fo2Ptr& f, SymbolUse& out) {
  auto term = [&](const Term& t) {
    if (t.kind == Term::Kind::Const) out.consts.insert(t.name);
  };
  switch (f->kind) {
    case Fo2Formula::Kind::Unary:
      out.concepts.insert(f->pred);
      term(f->a);
      return;
    case Fo2Formula::Kind::Binary:
      out.roles.insert(f->pred);
      term(f->a);
      term(f->b);
      return;
    case Fo2Formula::Kind::Eq:
      term(f->a);
      term(f->b);
      return;
    default:
      for (const auto& k : f->kids) collect_symbols(k, out);
      return;
  }
}

namespace {
std::string term_text(const Term& t) {
  switch (t.kind) {
    case Term::Kind::VarX:
      return "x";
    case Term::Kind::VarY:
      return "y";
    case Term::Kind::Const:
      return "o:" + t.name;
  }
  return "?";
}

void pfo(const Fo2Ptr& f, std::ostream& os) {
  switch (f->kind) {
    case Fo2Formula::Kind::True:
      os << "true";
      return;
    case Fo2Formula::Kind::False:
      os << "false";
      return;
    case Fo2Formula::Kind::Unary:
      os << f->pred << "(" << term_text(f->a) << ")";
      return;
    case Fo2Formula::Kind::Binary:
      os << f->pred << "(" << term_text(f->a) << ", " << term_text(f->b) << ")";
      return;
    case Fo2Formula::Kind::Eq:
      os << term_text(f->a) << " = " << term_text(f->b);
      return;
    case Fo2Formula::Kind::Not:
      os << "~";
      pfo(f->kids[0], os);
      return;
    case Fo2Formula::Kind::And:
    case Fo2Formula::Kind::Or: {
      const char* sep = f->kind == Fo2Formula::Kind::And ? " & " : " | ";
      os << "(";
      for (size_t i = 0; i < f->kids.size(); ++i) {
        if (i) os << sep;
        pfo(f->kids[i], os);
      }
      os << ")";
      return;
    }
    case Fo2Formula::Kind::Implies:
      os << "(";
      pfo(f->kids[0], os);
      os << " -> ";
      pfo(f->kids[1], os);
      os << ")";
      return;
    case Fo2Formula::Kind::Iff:
      os << "(";
      pfo(f->kids[0], os);
      os << " <-> ";
      pfo(f->kids[1], os);
      os << ")";
      return;
    case Fo2Formula::Kind::Forall:
      os << "all " << f->qvar << ". ";
      pfo(f->kids[0], os);
      return;
    case Fo2Formula::Kind::Exists:
      os << "some " << f->qvar << ". ";
      pfo(f->kids[0], os);
      return;
    case Fo2Formula::Kind::Count: {
      const char* c = f->cmp == Fo2Formula::Cmp::AtLeast  ? ">="
                      : f->cmp == Fo2Formula::Cmp::AtMost ? "<="
                                                          : "=";
      os << "count(" << c << f->k << ") " << f->qvar << ". ";
      pfo(f->kids[0], os);
      return;
    }
  }
}
}  // namespace

std::string to_text(const Fo2Ptr& f) {
  std::ostringstream os;
  pfo(f, os);
  return os.str();
}

std::string to_text(const Ct2Formula& f) {
  std::ostringstream os;
  if (!f.segments.empty()) {
    os << "exists-forest F1 [";
    for (size_t i = 0; i < f.segments.size(); ++i) {
      if (i) os << ", ";
      os << f.segments[i].field << " on " << f.segments[i].partition;
    }
    os << "] . ";
  }
  pfo(f.body, os);
  return os.str();
}

}  // namespace scv
