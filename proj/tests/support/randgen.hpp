#pragma once

// Seeded random structures and loopless programs for the differential suites.

#include <random>
#include <vector>

#include "scv/memstruct.hpp"
#include "scv/prog.hpp"

namespace scv::testing {

using Rng = std::mt19937;

inline int pick(Rng& rng, int lo, int hi) {  // inclusive
  return std::uniform_int_distribution<int>(lo, hi)(rng);
}

template <typename T>
const T& pick_of(Rng& rng, const std::vector<T>& xs) {
  return xs[pick(rng, 0, static_cast<int>(xs.size()) - 1)];
}

// A random valid memory structure over the vocabulary: random address
// partition with a nonempty pool, random constants and concepts outside the
// pool, random total fields respecting the pool rules. Ghost twins get
// independent values (they are just frozen interpretations).
inline MemoryStructure random_structure(const Vocabulary& vocab, Rng& rng, int max_size,
                                        int min_pool = 1) {
  int size = pick(rng, 4 + (min_pool - 1), max_size);
  MemoryStructure m;
  m.size = size;
  m.consts[names::kNull] = 0;
  m.consts[names::kTrue] = 1;
  m.consts[names::kFalse] = 2;
  m.unary[names::kAux] = {0, 1, 2};
  auto& addr = m.unary[names::kAddresses];
  auto& alloc = m.unary[names::kAlloc];
  auto& pt = m.unary[names::kPossibleTargets];
  auto& pool = m.unary[names::kMemPool];
  std::vector<Elem> nonpool = {0, 1, 2};
  std::vector<Elem> addrs;
  for (Elem e = 3; e < size; ++e) {
    addr.insert(e);
    addrs.push_back(e);
  }
  // Guarantee the pool quota, then scatter the rest.
  for (int i = 0; i < min_pool; ++i) pool.insert(addrs[addrs.size() - 1 - i]);
  for (Elem a : addrs) {
    if (pool.count(a)) continue;
    switch (pick(rng, 0, 3)) {
      case 0:
      case 1:
        alloc.insert(a);
        nonpool.push_back(a);
        break;
      case 2:
        pt.insert(a);
        nonpool.push_back(a);
        break;
      default:
        pool.insert(a);
        break;
    }
  }
  for (const auto& c : vocab.const_order())
    if (!Vocabulary::is_required_const(c)) m.consts[c] = pick_of(rng, nonpool);
  for (const auto& u : vocab.unary_order()) {
    if (Vocabulary::is_required_unary(u)) continue;
    auto& set = m.unary[u];
    for (Elem e : nonpool)
      if (pick(rng, 0, 2) == 0) set.insert(e);
  }
  for (const auto& f : vocab.field_like()) {
    auto& rel = m.binary[f];
    (void)rel;
    m.binary[f] = {};
    for (Elem a : addrs) {
      if (pool.count(a))
        m.binary[f].insert({a, pick(rng, 0, 1) ? 0 : 2});
      else
        m.binary[f].insert({a, pick_of(rng, nonpool)});
    }
  }
  for (const auto& b : vocab.binary_order())
    if (!vocab.is_field_like(b) && !m.binary.count(b)) m.binary[b] = {};
  return m;
}

// A random desugared loopless program over the vocabulary's variables and
// fields: assignments, field reads/writes, skip, new, dispose, two-armed
// conditionals and assumes.
inline CommandPtr random_program(const Vocabulary& vocab, Rng& rng, int max_cmds) {
  const auto& vars = vocab.vars();
  const auto& fields = vocab.fields();

  auto rnd_expr = [&](bool allow_field) -> Expr {
    int k = pick(rng, 0, allow_field ? 3 : 2);
    if (k == 0) return e_null();
    if (k <= 2) return e_var(pick_of(rng, vars));
    return e_field(pick_of(rng, vars), pick_of(rng, fields));
  };
  auto rnd_bool = [&]() -> BoolPtr {
    BoolPtr b = b_eq(rnd_expr(true), rnd_expr(false));
    if (pick(rng, 0, 2) == 0) b = b_not(b);
    return b;
  };

  std::function<CommandPtr(int&, int)> gen = [&](int& budget, int depth) -> CommandPtr {
    std::vector<CommandPtr> cmds;
    int len = pick(rng, 1, std::max(1, budget));
    for (int i = 0; i < len && budget > 0; ++i) {
      --budget;
      switch (pick(rng, 0, depth < 1 ? 7 : 6)) {
        case 0:
          cmds.push_back(c_skip());
          break;
        case 1:
          cmds.push_back(c_assign(pick_of(rng, vars), rnd_expr(false)));
          break;
        case 2:  // labeled later by the instrumentation path
          cmds.push_back(c_assign(pick_of(rng, vars),
                                  e_field(pick_of(rng, vars), pick_of(rng, fields))));
          break;
        case 3:
          cmds.push_back(
              c_field_assign(pick_of(rng, vars), pick_of(rng, fields), rnd_expr(false)));
          break;
        case 4:
          cmds.push_back(c_new(pick_of(rng, vars)));
          break;
        case 5:
          cmds.push_back(c_dispose(pick_of(rng, vars)));
          break;
        case 6:
          cmds.push_back(c_assume(rnd_bool()));
          break;
        default: {
          CommandPtr t = gen(budget, depth + 1);
          CommandPtr f = gen(budget, depth + 1);
          cmds.push_back(c_if_else(rnd_bool(), t, f));
          break;
        }
      }
    }
    return c_seq(cmds);
  };

  int budget = pick(rng, 1, max_cmds);
  return gen(budget, 0);
}

}  // namespace scv::testing
