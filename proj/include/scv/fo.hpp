#pragma once

#include <memory>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "scv/dl.hpp"
#include "scv/memstruct.hpp"

namespace scv {

// Two-variable first-order logic with counting quantifiers. Terms are the
// variables x, y or constants.
struct Term {
  enum class Kind { VarX, VarY, Const };
  Kind kind = Kind::VarX;
  std::string name;  // Const
};

inline Term var_x() { return {Term::Kind::VarX, ""}; }
inline Term var_y() { return {Term::Kind::VarY, ""}; }
inline Term cterm(std::string name) { return {Term::Kind::Const, std::move(name)}; }

struct Fo2Formula;
using Fo2Ptr = std::shared_ptr<const Fo2Formula>;

struct Fo2Formula {
  enum class Kind {
    True,
    False,
    Unary,    // pred(a)
    Binary,   // pred(a, b)
    Eq,       // a = b
    Not,
    And,      // n-ary
    Or,       // n-ary
    Implies,
    Iff,
    Forall,   // qvar
    Exists,   // qvar
    Count     // qvar, cmp, k
  };
  enum class Cmp { AtLeast, AtMost, Exact };

  Kind kind;
  std::string pred;
  Term a, b;
  std::vector<Fo2Ptr> kids;
  char qvar = 'x';
  Cmp cmp = Cmp::AtLeast;
  int k = 0;
};

Fo2Ptr fo_true();
Fo2Ptr fo_false();
Fo2Ptr fo_unary(std::string pred, Term a);
Fo2Ptr fo_binary(std::string pred, Term a, Term b);
Fo2Ptr fo_eq(Term a, Term b);
Fo2Ptr fo_not(Fo2Ptr f);
Fo2Ptr fo_and(std::vector<Fo2Ptr> kids);
Fo2Ptr fo_or(std::vector<Fo2Ptr> kids);
Fo2Ptr fo_implies(Fo2Ptr a, Fo2Ptr b);
Fo2Ptr fo_iff(Fo2Ptr a, Fo2Ptr b);
Fo2Ptr fo_forall(char v, Fo2Ptr f);
Fo2Ptr fo_exists(char v, Fo2Ptr f);
Fo2Ptr fo_count(Fo2Formula::Cmp cmp, int k, char v, Fo2Ptr f);

// Tarskian truth over the finite universe; counting quantifiers count
// witnesses exactly. Formulas must be sentences unless bindings are given.
bool eval_fo2(const Fo2Ptr& f, const MemoryStructure& m,
              std::optional<Elem> xv = std::nullopt, std::optional<Elem> yv = std::nullopt);

// True iff every node has at most one rel-predecessor and rel is acyclic
// (edges oriented parent -> child).
bool is_forest(const std::set<std::pair<Elem, Elem>>& rel, int universe_size);

// A C2 body under one existential forest quantifier. `segments` records the
// list chunks whose partition concepts pin the forest inside themselves;
// they justify the canonical forest construction below.
struct Ct2Formula {
  struct Segment {
    std::string partition;  // atomic concept naming the chunk's cells
    std::string field;      // the linking field (next)
  };
  Fo2Ptr body;  // may mention the reserved binary symbol F1
  std::vector<Segment> segments;
};

enum class ForestStrategy {
  // F1 := union over segments of field ∩ (P_i × P_i). Complete whenever the
  // body's only F1 occurrences are the segment clauses, which pin F1 inside
  // each P_i and leave it free elsewhere.
  Canonical,
  // Backtracking enumeration of all forests; small universes only.
  Exhaustive
};

bool eval_ct2(const Ct2Formula& f, const MemoryStructure& m,
              ForestStrategy strategy = ForestStrategy::Canonical,
              int exhaustive_cap = 7);

// Canonical forest relation for a structure (used by eval and the solver).
std::set<std::pair<Elem, Elem>> canonical_forest(const Ct2Formula& f, const MemoryStructure& m);

std::string to_text(const Fo2Ptr& f);
std::string to_text(const Ct2Formula& f);

void collect_symbols(const Fo2Ptr& f, SymbolUse& out);

}  // namespace scv
