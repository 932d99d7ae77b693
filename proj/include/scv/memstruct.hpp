#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "scv/vocab.hpp"

namespace scv {

// Finite first-order model of the heap plus program variables. The universe
// is {0..size-1}; the three Aux values and the address partition live in the
// unary interpretations. Immutable by convention: operations return copies.
struct MemoryStructure {
  int size = 0;
  std::map<std::string, Elem> consts;
  std::map<std::string, std::set<Elem>> unary;
  std::map<std::string, std::set<std::pair<Elem, Elem>>> binary;

  Elem const_of(const std::string& name) const;
  const std::set<Elem>& unary_of(const std::string& name) const;
  const std::set<std::pair<Elem, Elem>>& binary_of(const std::string& name) const;

  Elem null_elem() const { return const_of(names::kNull); }
  Elem true_elem() const { return const_of(names::kTrue); }
  Elem false_elem() const { return const_of(names::kFalse); }
  const std::set<Elem>& alloc() const { return unary_of(names::kAlloc); }
  const std::set<Elem>& mem_pool() const { return unary_of(names::kMemPool); }
  const std::set<Elem>& possible_targets() const { return unary_of(names::kPossibleTargets); }
  const std::set<Elem>& addresses() const { return unary_of(names::kAddresses); }

  bool in_unary(const std::string& name, Elem e) const { return unary_of(name).count(e) != 0; }

  // Functional read of a binary relation; nullopt when e has no successor.
  std::optional<Elem> fun_value(const std::string& rel, Elem e) const;
  // Replaces the (at most one) outgoing rel-edge of e.
  void set_fun(const std::string& rel, Elem e, Elem v);

  bool operator==(const MemoryStructure& o) const {
    return size == o.size && consts == o.consts && unary == o.unary && binary == o.binary;
  }
};

// A failed well-formedness condition. Conditions are numbered 1..10 after the
// memory-model conditions documented in docs/memory-model.md.
struct Violation {
  int condition = 0;
  std::string detail;
};

// Checks every well-formedness condition directly; returns one record per
// failure. Total on any structure whose names come from vocab.
std::vector<Violation> validate(const MemoryStructure& m, const Vocabulary& vocab);

// Moves target from MemPool to Alloc. Precondition: target is a pool cell.
MemoryStructure allocate(const MemoryStructure& m, Elem target);

// Returns pre enriched with, for every rem symbol R, an interpretation of
// R_ext copied from post. Pre and post must share the universe.
MemoryStructure extend_with_ext(const MemoryStructure& pre, const MemoryStructure& post,
                                const Vocabulary& vocab);

// Convenience: the smallest legal structure over vocab (three Aux values and
// `reserve` pool cells, fields all null, variables null).
MemoryStructure minimal_structure(const Vocabulary& vocab, int reserve = 1);

std::string describe(const std::vector<Violation>& vs);

}  // namespace scv
