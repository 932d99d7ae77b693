#pragma once

// Exhaustive enumeration of valid memory structures over a small vocabulary,
// used as the ground-truth side of the translation conformance checks.

#include <functional>
#include <vector>

#include "scv/memstruct.hpp"

namespace scv::testing {

using StructureFn = std::function<void(const MemoryStructure&)>;

// Calls f for every valid memory structure with the given universe size:
// every address partition with a nonempty pool, every constant placement
// outside the pool, every total field assignment respecting the pool rules,
// every pool-avoiding extension of the unary symbols. Non-field binary
// relations are not enumerated (keep them out of test vocabularies).
inline void enumerate_structures(const Vocabulary& vocab, int size, const StructureFn& f) {
  if (size < 4) return;
  int n_addr = size - 3;
  std::vector<int> part(n_addr);  // 0 alloc, 1 targets, 2 pool

  std::vector<std::string> consts;
  for (const auto& c : vocab.const_order())
    if (!Vocabulary::is_required_const(c)) consts.push_back(c);
  std::vector<std::string> fields = vocab.field_like();
  std::vector<std::string> unary;
  for (const auto& u : vocab.unary_order())
    if (!Vocabulary::is_required_unary(u)) unary.push_back(u);
  for (const auto& b : vocab.binary_order())
    if (!vocab.is_field_like(b))
      throw PreconditionError("enumerate_structures: non-field role " + b + " unsupported");

  MemoryStructure m;
  m.size = size;
  m.consts[names::kNull] = 0;
  m.consts[names::kTrue] = 1;
  m.consts[names::kFalse] = 2;
  m.unary[names::kAux] = {0, 1, 2};
  auto& addr = m.unary[names::kAddresses];
  for (Elem e = 3; e < size; ++e) addr.insert(e);

  std::vector<Elem> nonpool;  // candidate values outside the pool
  auto emit = [&]() { f(m); };

  // Unary symbols: every subset of the non-pool elements, one symbol at a time.
  std::function<void(size_t)> do_unary = [&](size_t ui) {
    if (ui == unary.size()) {
      emit();
      return;
    }
    auto& set = m.unary[unary[ui]];
    int k = static_cast<int>(nonpool.size());
    for (int mask = 0; mask < (1 << k); ++mask) {
      set.clear();
      for (int b = 0; b < k; ++b)
        if (mask & (1 << b)) set.insert(nonpool[b]);
      do_unary(ui + 1);
    }
    set.clear();
  };

  // Fields: per field, per address, a value outside the pool; pool cells only
  // carry null or F.
  std::function<void(size_t, int)> do_fields = [&](size_t fi, int ai) {
    if (fi == fields.size()) {
      do_unary(0);
      return;
    }
    if (ai == n_addr) {
      do_fields(fi + 1, 0);
      return;
    }
    Elem a = 3 + ai;
    const std::vector<Elem>& options =
        part[ai] == 2 ? std::vector<Elem>{0, 2} : nonpool;
    for (Elem v : options) {
      m.set_fun(fields[fi], a, v);
      do_fields(fi, ai + 1);
    }
  };

  std::function<void(size_t)> do_consts = [&](size_t ci) {
    if (ci == consts.size()) {
      for (const auto& fl : fields) m.binary[fl].clear();
      do_fields(0, 0);
      return;
    }
    for (Elem v : nonpool) {
      m.consts[consts[ci]] = v;
      do_consts(ci + 1);
    }
  };

  std::function<void(int)> do_part = [&](int ai) {
    if (ai == n_addr) {
      bool has_pool = false;
      for (int p : part) has_pool = has_pool || p == 2;
      if (!has_pool) return;
      auto& alloc = m.unary[names::kAlloc];
      auto& pt = m.unary[names::kPossibleTargets];
      auto& pool = m.unary[names::kMemPool];
      alloc.clear();
      pt.clear();
      pool.clear();
      nonpool = {0, 1, 2};
      for (int i = 0; i < n_addr; ++i) {
        Elem a = 3 + i;
        if (part[i] == 0) alloc.insert(a);
        if (part[i] == 1) pt.insert(a);
        if (part[i] == 2) pool.insert(a);
        if (part[i] != 2) nonpool.push_back(a);
      }
      do_consts(0);
      return;
    }
    for (int p = 0; p < 3; ++p) {
      part[ai] = p;
      do_part(ai + 1);
    }
  };

  do_part(0);
}

// Enumerates sizes 4..max_size.
inline void enumerate_structures_up_to(const Vocabulary& vocab, int max_size,
                                       const StructureFn& f) {
  for (int s = 4; s <= max_size; ++s) enumerate_structures(vocab, s, f);
}

}  // namespace scv::testing
