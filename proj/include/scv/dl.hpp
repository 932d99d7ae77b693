#pragma once

#include <map>
#include <memory>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "scv/memstruct.hpp"

namespace scv {

struct Concept;
struct Role;
struct LFormula;
using ConceptPtr = std::shared_ptr<const Concept>;
using RolePtr = std::shared_ptr<const Role>;
using LFormulaPtr = std::shared_ptr<const LFormula>;

// Concept expression. Nominals are constants used as singleton concepts.
struct Concept {
  enum class Kind { Atomic, Nominal, Top, Bottom, And, Or, Not, Exists };
  Kind kind;
  std::string name;      // Atomic / Nominal
  ConceptPtr lhs, rhs;   // And/Or; lhs also for Not
  RolePtr role;          // Exists
};

struct Role {
  enum class Kind { Atomic, Union, Intersect, Diff, Inverse, Product };
  Kind kind;
  std::string name;    // Atomic
  RolePtr r, s;        // Union/Intersect/Diff; r also for Inverse
  ConceptPtr c, d;     // Product
};

struct LFormula {
  enum class Kind { ConceptIncl, RoleIncl, Func, And, Or, Not, Implies };
  Kind kind;
  ConceptPtr c1, c2;      // ConceptIncl
  RolePtr r1, r2;         // RoleIncl; r1 also for Func
  LFormulaPtr f1, f2;     // connectives
};

// Constructors. Equivalence is sugar and normalizes to two inclusions.
ConceptPtr atomic_concept(std::string name);
ConceptPtr nominal(std::string constant);
ConceptPtr top_concept();
ConceptPtr bottom_concept();
ConceptPtr cand(ConceptPtr a, ConceptPtr b);
ConceptPtr cor(ConceptPtr a, ConceptPtr b);
ConceptPtr cnot(ConceptPtr a);
ConceptPtr exists(RolePtr r, ConceptPtr c);

RolePtr atomic_role(std::string name);
RolePtr runion(RolePtr a, RolePtr b);
RolePtr rintersect(RolePtr a, RolePtr b);
RolePtr rdiff(RolePtr a, RolePtr b);
RolePtr rinverse(RolePtr a);
RolePtr rproduct(ConceptPtr c, ConceptPtr d);

LFormulaPtr concept_incl(ConceptPtr c, ConceptPtr d);
LFormulaPtr role_incl(RolePtr r, RolePtr s);
LFormulaPtr func(RolePtr r);
LFormulaPtr land(LFormulaPtr a, LFormulaPtr b);
LFormulaPtr land(const std::vector<LFormulaPtr>& fs);  // right-nested; empty = top<=top
LFormulaPtr lor(LFormulaPtr a, LFormulaPtr b);
LFormulaPtr lnot(LFormulaPtr a);
LFormulaPtr limplies(LFormulaPtr a, LFormulaPtr b);
LFormulaPtr concept_equiv(ConceptPtr c, ConceptPtr d);  // both inclusions
LFormulaPtr role_equiv(RolePtr r, RolePtr s);
LFormulaPtr ltrue();  // top <= top

// Evaluation over a memory structure (or any structure with the needed
// interpretations). Unknown symbols raise VocabError.
std::set<Elem> eval_concept(const ConceptPtr& c, const MemoryStructure& m);
std::set<std::pair<Elem, Elem>> eval_role(const RolePtr& r, const MemoryStructure& m);
bool eval_formula(const LFormulaPtr& f, const MemoryStructure& m);

// Simultaneous syntactic substitution. Keys are symbol names; kinds must
// match (constant -> constant, atomic concept -> concept, atomic role -> role).
struct Substitution {
  std::map<std::string, std::string> consts;
  std::map<std::string, ConceptPtr> concepts;
  std::map<std::string, RolePtr> roles;
  bool empty() const { return consts.empty() && concepts.empty() && roles.empty(); }
};

ConceptPtr substitute(const ConceptPtr& c, const Substitution& s);
RolePtr substitute(const RolePtr& r, const Substitution& s);
LFormulaPtr substitute(const LFormulaPtr& f, const Substitution& s);

// Structural equality (after the constructors' Equiv normalization).
bool equal(const ConceptPtr& a, const ConceptPtr& b);
bool equal(const RolePtr& a, const RolePtr& b);
bool equal(const LFormulaPtr& a, const LFormulaPtr& b);

// Symbol names occurring in a formula, by kind.
struct SymbolUse {
  std::set<std::string> consts, concepts, roles;
};
void collect_symbols(const ConceptPtr& c, SymbolUse& out);
void collect_symbols(const RolePtr& r, SymbolUse& out);
void collect_symbols(const LFormulaPtr& f, SymbolUse& out);

// Concrete text syntax (see docs/grammar.md).
std::string to_text(const ConceptPtr& c);
std::string to_text(const RolePtr& r);
std::string to_text(const LFormulaPtr& f);

}  // namespace scv
