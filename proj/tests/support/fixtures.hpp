#pragma once

// Shared builders for the company corpus vocabulary and initial structures.

#include <vector>

#include "scv/memstruct.hpp"
#include "scv/vocab.hpp"

namespace scv::testing {

inline Vocabulary company_vocab() {
  Vocabulary v;
  for (const char* f : {"next", "wrkFor", "mngBy", "isMngr"}) v.declare_field(f);
  for (const char* x : {"pHd", "eHd", "e", "proj"}) v.declare_var(x);
  for (const char* c : {"ELst", "PLst", "Boolean"}) v.declare_concept(c);
  for (const char* g : {"ELst", "PLst", "wrkFor"}) v.declare_ghost(g);
  return v;
}

// An initial company state: employees chained from eHd, projects from pHd,
// ghosts equal to the current state, e and proj null. assign[i] is the
// project index employee i works for (-1 = none); manager[j] is the employee
// index managing project j (-1 = none, and managers must work for their
// project to respect the invariants).
inline MemoryStructure company_init(int employees, int projects, std::vector<int> assign,
                                    std::vector<int> manager, int reserve = 4) {
  MemoryStructure m;
  Elem first_emp = 3;
  Elem first_proj = first_emp + employees;
  Elem first_pool = first_proj + projects;
  m.size = first_pool + reserve;

  m.consts[names::kNull] = 0;
  m.consts[names::kTrue] = 1;
  m.consts[names::kFalse] = 2;
  m.unary[names::kAux] = {0, 1, 2};
  auto& addr = m.unary[names::kAddresses];
  auto& alloc = m.unary[names::kAlloc];
  auto& pool = m.unary[names::kMemPool];
  m.unary[names::kPossibleTargets] = {};
  for (Elem e = 3; e < m.size; ++e) addr.insert(e);
  for (Elem e = first_emp; e < first_pool; ++e) alloc.insert(e);
  for (Elem e = first_pool; e < m.size; ++e) pool.insert(e);

  auto emp = [&](int i) { return first_emp + i; };
  auto prj = [&](int j) { return first_proj + j; };

  m.consts["eHd"] = employees > 0 ? emp(0) : 0;
  m.consts["pHd"] = projects > 0 ? prj(0) : 0;
  m.consts["e"] = 0;
  m.consts["proj"] = 0;

  auto& elst = m.unary["ELst"];
  auto& plst = m.unary["PLst"];
  for (int i = 0; i < employees; ++i) elst.insert(emp(i));
  for (int j = 0; j < projects; ++j) plst.insert(prj(j));
  m.unary["Boolean"] = {1, 2};
  m.unary[names::ghost("ELst")] = elst;
  m.unary[names::ghost("PLst")] = plst;

  auto& nxt = m.binary["next"];
  auto& wrk = m.binary["wrkFor"];
  auto& mng = m.binary["mngBy"];
  auto& mgr = m.binary["isMngr"];
  for (Elem a = 3; a < m.size; ++a) {
    nxt.insert({a, 0});
    wrk.insert({a, 0});
    mng.insert({a, 0});
    mgr.insert({a, 0});
  }
  for (int i = 0; i + 1 < employees; ++i) m.set_fun("next", emp(i), emp(i + 1));
  for (int j = 0; j + 1 < projects; ++j) m.set_fun("next", prj(j), prj(j + 1));
  for (int i = 0; i < employees; ++i)
    if (i < static_cast<int>(assign.size()) && assign[i] >= 0)
      m.set_fun("wrkFor", emp(i), prj(assign[i]));
  std::set<int> managers;
  for (int j = 0; j < projects; ++j)
    if (j < static_cast<int>(manager.size()) && manager[j] >= 0) {
      m.set_fun("mngBy", prj(j), emp(manager[j]));
      managers.insert(manager[j]);
    }
  for (int i = 0; i < employees; ++i)
    m.set_fun("isMngr", emp(i), managers.count(i) ? 1 : 2);
  m.binary[names::ghost("wrkFor")] = wrk;
  return m;
}

// The five initial states exercised by the reach simulation.
inline std::vector<MemoryStructure> company_inits() {
  return {
      company_init(1, 0, {-1}, {}),
      company_init(1, 1, {0}, {-1}),
      company_init(2, 1, {0, -1}, {0}),
      company_init(3, 2, {1, -1, 0}, {2, 0}),
      company_init(2, 0, {-1, -1}, {}),
  };
}

}  // namespace scv::testing
