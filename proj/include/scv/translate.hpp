#pragma once

#include <string>
#include <vector>

#include "scv/dl.hpp"
#include "scv/fo.hpp"
#include "scv/sl.hpp"

namespace scv {

// Structural translation into two-variable logic; satisfaction-preserving on
// all structures.
Fo2Ptr to_fo2(const LFormulaPtr& f);

// Deterministic partition-concept names for a location or edge tag.
std::vector<std::string> partition_names(const std::string& tag, size_t chunk_count);

struct ShapeDl {
  LFormulaPtr formula;
  std::vector<std::string> partitions;  // chunk i -> concept name (ls and |-> alike)
};

// Sound DL image of a shape assertion: pure atoms become nominal equations,
// the chunks partition Alloc, list chunks get the four segment inclusions or
// the empty case. Partition names must be fresh w.r.t. vocab.
ShapeDl shape_to_dl(const SlFormula& f, const std::vector<std::string>& pnames,
                    const Vocabulary& vocab);

// Exact image: the DL image's translation plus per-list-chunk forest clauses
// sharing the single forest symbol.
Ct2Formula shape_to_ct2(const SlFormula& f, const std::vector<std::string>& pnames,
                        const Vocabulary& vocab);

// The forest clauses for one list chunk (exposed for tests).
Fo2Ptr segment_forest_clause(const std::string& partition, const std::string& field,
                             const SlExpr& head);

}  // namespace scv
