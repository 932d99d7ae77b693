#pragma once

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "scv/dl.hpp"
#include "scv/memstruct.hpp"
#include "scv/sl.hpp"

namespace scv {

// Pointer/Boolean expressions. The Boolean literals exist for the abort
// instrumentation; user programs stick to var/var.f/null.
struct Expr {
  enum class Kind { Var, Field, Null, LitT, LitF };
  Kind kind = Kind::Null;
  std::string var;    // Var / Field
  std::string field;  // Field
};

inline Expr e_var(std::string v) { return {Expr::Kind::Var, std::move(v), ""}; }
inline Expr e_field(std::string v, std::string f) {
  return {Expr::Kind::Field, std::move(v), std::move(f)};
}
inline Expr e_null() { return {Expr::Kind::Null, "", ""}; }
inline Expr e_lit(bool b) { return {b ? Expr::Kind::LitT : Expr::Kind::LitF, "", ""}; }

struct BoolExpr;
using BoolPtr = std::shared_ptr<const BoolExpr>;

struct BoolExpr {
  enum class Kind { Eq, Not, And, Or, LitT, LitF, Allocated };
  Kind kind;
  Expr e1, e2;        // Eq
  BoolPtr b1, b2;     // Not/And/Or
  std::string var;    // Allocated (instrumentation guard)
};

BoolPtr b_eq(Expr a, Expr b);
BoolPtr b_not(BoolPtr b);
BoolPtr b_and(BoolPtr a, BoolPtr b);
BoolPtr b_or(BoolPtr a, BoolPtr b);
BoolPtr b_lit(bool v);
BoolPtr b_allocated(std::string var);

struct Command;
using CommandPtr = std::shared_ptr<const Command>;

struct Command {
  enum class Kind {
    Assign,      // var := expr (a Field expr makes this a field read)
    FieldAssign, // var.field := expr
    Skip,
    Seq,
    New,         // var := new
    Dispose,
    IfThen,
    IfThenElse,
    Assume
  };
  Kind kind;
  std::string var, field;
  Expr expr;
  BoolPtr cond;
  CommandPtr s1, s2;
  // Label constant for New and field-read Assign commands (set by the
  // instrumentation pass; empty = unlabeled).
  std::string label;
};

CommandPtr c_assign(std::string var, Expr e);
CommandPtr c_field_assign(std::string var, std::string field, Expr e);
CommandPtr c_skip();
CommandPtr c_seq(CommandPtr a, CommandPtr b);
CommandPtr c_seq(const std::vector<CommandPtr>& cs);  // right-nested; empty = skip
CommandPtr c_new(std::string var);
CommandPtr c_dispose(std::string var);
CommandPtr c_if(BoolPtr b, CommandPtr s);
CommandPtr c_if_else(BoolPtr b, CommandPtr s1, CommandPtr s2);
CommandPtr c_assume(BoolPtr b);
CommandPtr with_label(const CommandPtr& c, std::string label);

// Removes one-armed conditionals and field-to-field assignments; fresh
// temporaries tmp_0, tmp_1, ... are appended to fresh_vars.
CommandPtr desugar(const CommandPtr& c, std::vector<std::string>& fresh_vars);
bool is_desugared(const CommandPtr& c);

struct RunOutcome {
  enum class Kind { Ok, Abort, OutOfReserve };
  Kind kind = Kind::Ok;
  MemoryStructure result;  // when Ok
  bool ok() const { return kind == Kind::Ok; }
};

// Witness choices for labeled commands: New picks the pool cell to allocate,
// field reads must see exactly the given value (else the run aborts, per the
// refined step relation). Labels absent from the map are unconstrained.
using Choices = std::map<std::string, Elem>;

struct RunOptions {
  const Choices* choices = nullptr;
  // Records the value every executed labeled command actually used.
  Choices* recorder = nullptr;
};

RunOutcome run(const CommandPtr& c, const MemoryStructure& m, const Vocabulary& vocab,
               const RunOptions& opts = {});

// Expression/Boolean evaluation (exposed for tests). nullopt = err. A field
// read errs iff the cell is unallocated; plain variable reads are total.
std::optional<Elem> eval_expr(const Expr& e, const MemoryStructure& m);
std::optional<bool> eval_bool(const BoolPtr& b, const MemoryStructure& m);

struct GraphLocation {
  std::string name;
  SlFormula shape;
  LFormulaPtr content;
  std::vector<std::string> partitions;  // concept names for shape's chunks
};

struct GraphEdge {
  std::string from, to;
  CommandPtr code;  // desugared
};

struct ProgramGraph {
  Vocabulary vocab;
  std::vector<GraphLocation> locations;
  std::vector<GraphEdge> edges;
  std::string init;
  std::map<std::string, std::string> options;  // bound/reserve overrides etc.
  std::map<std::string, LFormulaPtr> formulas; // named formulas (location-resolved on use)

  const GraphLocation& location(const std::string& name) const;
  std::vector<const GraphEdge*> edges_from(const std::string& name) const;
  const GraphEdge& edge(const std::string& from, const std::string& to) const;
};

// Folds run over the code along the path; the empty path is the identity.
RunOutcome run_path(const ProgramGraph& g, const std::vector<const GraphEdge*>& path,
                    const MemoryStructure& m, const RunOptions& opts = {});

// Parses the annotation-file format (docs/grammar.md). Throws ParseError with
// line/column on syntax errors and on semantic errors (duplicate location,
// edge into the initial location, unknown names).
ProgramGraph parse_program(const std::string& text);

std::string to_text(const CommandPtr& c);
std::string to_text(const ProgramGraph& g);  // round-trippable file form

}  // namespace scv
