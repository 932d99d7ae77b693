#pragma once

#include <string>
#include <vector>

#include "scv/dl.hpp"
#include "scv/prog.hpp"

namespace scv {

struct LabelInfo {
  std::string name;  // label constant (y1, y2, ...)
  enum class Kind { New, FieldRead } kind;
};

// The abort-free form of a program: abo := F first, every dereferencing
// command guarded on allocatedness, assume turned into an abo write. Runs of
// the body never abort; abo ends T exactly when the original program aborts.
struct InstrumentedProgram {
  CommandPtr body;
  std::vector<LabelInfo> labels;  // one per New and per field read, in order
};

// Input must be desugared. Label names avoid every constant in vocab.
InstrumentedProgram instrument(const CommandPtr& c, const Vocabulary& vocab);

// Guard formula of a Boolean condition: equalities compare the value
// concepts (nominals for variables, inverse-image singletons for field
// reads); connectives map through.
LFormulaPtr cond_to_dl(const BoolPtr& b);

// Syntactic backwards propagation of a postcondition along a desugared,
// labeled command. No evaluation happens; output size is linear in the
// formula times 2^#conditionals.
LFormulaPtr back_propagate(const CommandPtr& c, const LFormulaPtr& f, const Vocabulary& vocab);

// back_propagate after renaming every rem symbol of the formula to its ext
// twin (the formula speaks about the post state; rem symbols keep their
// post-state interpretations under the ext names).
LFormulaPtr back_propagate_ext(const CommandPtr& c, const LFormulaPtr& f,
                               const Vocabulary& vocab);

// The per-edge transformer: instrument, strengthen with "no abort", then
// propagate backwards with the ext renaming. The result speaks about the
// pre state extended with ext copies, label constants and the abo constant.
struct WpResult {
  LFormulaPtr formula;
  InstrumentedProgram instrumented;
};

WpResult wp_transform(const CommandPtr& c, const LFormulaPtr& f, const Vocabulary& vocab);

// Renames every rem symbol to its ext twin.
LFormulaPtr ext_rename(const LFormulaPtr& f, const Vocabulary& vocab);

}  // namespace scv
