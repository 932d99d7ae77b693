#pragma once

#include <map>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "scv/dl.hpp"
#include "scv/memstruct.hpp"

namespace scv {

// Expression of the assertion language: a program variable or null.
struct SlExpr {
  bool is_null = false;
  std::string var;  // when !is_null
};

inline SlExpr sl_null() { return {true, ""}; }
inline SlExpr sl_var(std::string v) { return {false, std::move(v)}; }

struct PureAtom {
  enum class Kind { True, Eq, Neq };
  Kind kind = Kind::True;
  SlExpr lhs, rhs;
};

struct PointsToChunk {
  std::string var;  // cell named by a program variable
  std::vector<std::pair<std::string, SlExpr>> fields;  // listed bindings; rest implicitly null
};

struct LsChunk {
  SlExpr from, to;
};

using Chunk = std::variant<PointsToChunk, LsChunk>;

// Pi | Sigma. Chunk order is significant: chunk i names partition i.
struct SlFormula {
  std::vector<PureAtom> pure;
  bool emp = false;          // Sigma = emp (chunks must be empty)
  std::vector<Chunk> chunks;
};

// The linking field of list segments is the declared field named "next".
inline const std::string kListField = "next";

// True iff the pure atoms hold and Alloc partitions into the chunks. On
// success returns the per-chunk cell sets (in chunk order); nullopt = false.
// Partition search is deterministic: chunk heads are named, so next-chains
// are followed without backtracking; a chain revisiting a cell means no
// acyclic segment exists.
std::optional<std::vector<std::set<Elem>>> eval_sl(const SlFormula& f, const MemoryStructure& m,
                                                   const Vocabulary& vocab);

// Heap/stack view of a memory structure.
struct StackHeap {
  // Values: addresses are nonneg ids; the three non-addresses are tagged.
  struct Value {
    enum class Kind { Nil, True, False, Addr };
    Kind kind = Kind::Nil;
    int addr = -1;
    bool operator==(const Value&) const = default;
  };
  std::map<std::string, Value> stack;                       // variable -> value
  std::map<int, std::map<std::string, Value>> heap;         // address -> field record
  bool operator==(const StackHeap&) const = default;
};

StackHeap to_stack_heap(const MemoryStructure& m, const Vocabulary& vocab);
MemoryStructure from_stack_heap(const StackHeap& sh, const Vocabulary& vocab, int reserve);

std::string to_text(const SlFormula& f);

void collect_symbols(const SlFormula& f, SymbolUse& out);

}  // namespace scv
