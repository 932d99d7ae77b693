#pragma once

#include <optional>
#include <string>
#include <vector>

#include "scv/fo.hpp"
#include "scv/prog.hpp"
#include "scv/translate.hpp"
#include "scv/wp.hpp"

namespace scv {

// Per-edge verification condition. The edge holds iff the conjunction is
// unsatisfiable over memory structures; label constants, the abo constant
// and ext twins are left free for the search.
struct VerificationCondition {
  std::string from, to;
  Ct2Formula conjunction;
  Vocabulary vocab;  // extended with ext/label symbols, cut to occurring ones
  std::vector<LabelInfo> labels;
  std::vector<std::string> free_consts;
};

VerificationCondition gen_vc(const ProgramGraph& g, const GraphEdge& e);

// The structural axioms corresponding to the validator's conditions 3-9,
// emitted for the symbols of the given vocabulary.
std::vector<LFormulaPtr> psi_m_axioms(const Vocabulary& vocab);

struct SearchOptions {
  std::int64_t max_conflicts = 5'000'000;
  unsigned seed = 0;  // perturbs decision order; 0 keeps the canonical order
};

struct Verdict {
  bool counterexample = false;
  int bound = 0;       // the bound that was searched
  int found_size = 0;  // witness universe size (after any pool padding)
  std::optional<MemoryStructure> witness;
  bool pool_padded = false;
  std::int64_t conflicts = 0;
};

// Searches universe sizes 4..bound for a memory structure satisfying the
// axioms, the body and the extra conjuncts; all non-required symbols are
// free. Deterministic. Throws InconclusiveError at the conflict cap.
Verdict find_model(const Ct2Formula& body, const std::vector<LFormulaPtr>& extra,
                   const Vocabulary& vocab, int bound, const SearchOptions& opts = {});

struct EdgeReport {
  std::string from, to;
  Verdict verdict;
  std::string classification;  // "concrete" | "spurious-under-free-symbols" | ""
  double time_ms = 0;
};

struct ProgramReport {
  std::vector<EdgeReport> edges;
  bool verified = false;
  int bound = 0;
};

ProgramReport check_program(const ProgramGraph& g, int bound, int jobs = 1,
                            const SearchOptions& opts = {});

// Extends m with the location's partition concepts as computed by the shape
// evaluator; nullopt when the shape does not hold.
std::optional<MemoryStructure> bind_shape_partitions(const GraphLocation& loc,
                                                     const MemoryStructure& m,
                                                     const Vocabulary& vocab);

struct ReachViolation {
  std::vector<std::string> path;  // edge descriptions from the initial location
  int init_index = 0;
  std::string location;
  std::string kind;  // "shape" | "content"
};

struct ReachReport {
  std::vector<ReachViolation> violations;
  int paths_run = 0;
  int states_checked = 0;
  int out_of_reserve = 0;
};

// Enumerates paths up to max_path_len from the initial location, executes
// them, and checks the shape and content annotations at every visited
// location. Aborting edges (failed assumes) prune the path.
ReachReport simulate_reach(const ProgramGraph& g, const std::vector<MemoryStructure>& inits,
                           int max_path_len);

}  // namespace scv
