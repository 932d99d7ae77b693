#include "scv/memstruct.hpp"

#include <algorithm>
#include <limits>
#include <sstream>

namespace scv {

namespace {
const std::set<Elem> kEmptySet;
const std::set<std::pair<Elem, Elem>> kEmptyPairs;

std::string el(Elem e) { return "#" + std::to_string(e); }
}  // namespace

Elem MemoryStructure::const_of(const std::string& name) const {
  auto it = consts.find(name);
  if (it == consts.end()) throw VocabError("uninterpreted constant: " + name);
  return it->second;
}

const std::set<Elem>& MemoryStructure::unary_of(const std::string& name) const {
  auto it = unary.find(name);
  if (it == unary.end()) throw VocabError("uninterpreted unary relation: " + name);
  return it->second;
}

const std::set<std::pair<Elem, Elem>>& MemoryStructure::binary_of(const std::string& name) const {
  auto it = binary.find(name);
  if (it == binary.end()) throw VocabError("uninterpreted binary relation: " + name);
  return it->second;
}

std::optional<Elem> MemoryStructure::fun_value(const std::string& rel, Elem e) const {
  const auto& pairs = binary_of(rel);
  auto it = pairs.lower_bound({e, std::numeric_limits<Elem>::min()});
  if (it == pairs.end() || it->first != e) return std::nullopt;
  return it->second;
}

void MemoryStructure::set_fun(const std::string& rel, Elem e, Elem v) {
  auto& pairs = binary[rel];
  for (auto it = pairs.lower_bound({e, std::numeric_limits<Elem>::min()});
       it != pairs.end() && it->first == e;)
    it = pairs.erase(it);
  pairs.insert({e, v});
}

std::vector<Violation> validate(const MemoryStructure& m, const Vocabulary& vocab) {
  std::vector<Violation> out;
  auto flag = [&](int cond, const std::string& detail) { out.push_back({cond, detail}); };

  // Conditions 1-2: the required names must be interpreted at all.
  for (const auto& c : {names::kNull, names::kTrue, names::kFalse})
    if (!m.consts.count(c)) flag(1, "missing required constant " + c);
  for (const auto& u : {names::kAddresses, names::kAlloc, names::kPossibleTargets,
                        names::kMemPool, names::kAux})
    if (!m.unary.count(u)) flag(2, "missing required relation " + u);
  if (!out.empty()) return out;  // nothing else is checkable

  const auto& aux = m.unary_of(names::kAux);
  const auto& addr = m.addresses();
  const auto& alloc = m.alloc();
  const auto& pt = m.possible_targets();
  const auto& pool = m.mem_pool();

  // Condition 3: Aux = {null, T, F} with three distinct elements.
  {
    std::set<Elem> expect = {m.null_elem(), m.true_elem(), m.false_elem()};
    if (expect.size() != 3) flag(3, "null/T/F are not pairwise distinct");
    if (aux != expect) flag(3, "Aux differs from {null, T, F}");
  }

  // Condition 4: Addresses and Aux partition the universe.
  for (Elem e = 0; e < m.size; ++e) {
    bool a = addr.count(e), x = aux.count(e);
    if (a && x) flag(4, "element in both Addresses and Aux: " + el(e));
    if (!a && !x) flag(4, "element in neither Addresses nor Aux: " + el(e));
  }

  // Condition 5: Alloc/PossibleTargets/MemPool partition Addresses.
  for (Elem e = 0; e < m.size; ++e) {
    int n = (alloc.count(e) ? 1 : 0) + (pt.count(e) ? 1 : 0) + (pool.count(e) ? 1 : 0);
    if (addr.count(e)) {
      if (n != 1) flag(5, "address not in exactly one partition class: " + el(e));
    } else if (n != 0) {
      flag(5, "non-address in a partition class: " + el(e));
    }
  }

  // Condition 6: constants avoid MemPool. Free label constants are exempt:
  // they stand for values of an extended structure, not for memory symbols.
  for (const auto& [name, e] : m.consts) {
    if (vocab.is_free_const(name)) continue;
    if (pool.count(e)) flag(6, "constant " + name + " interpreted inside MemPool at " + el(e));
  }

  // Condition 7: every field (and ghost field) is a total function from
  // Addresses into the non-pool part of the universe.
  for (const auto& f : vocab.field_like()) {
    auto it = m.binary.find(f);
    if (it == m.binary.end()) {
      flag(7, "field " + f + " uninterpreted");
      continue;
    }
    std::map<Elem, int> outdeg;
    for (const auto& [a, b] : it->second) {
      outdeg[a]++;
      if (!addr.count(a)) flag(7, "field " + f + " leaves a non-address " + el(a));
      if (pool.count(b)) flag(7, "field " + f + " targets a pool cell " + el(b));
    }
    for (Elem a : addr) {
      int d = outdeg.count(a) ? outdeg[a] : 0;
      if (d == 0) flag(7, "field " + f + " undefined at " + el(a));
      if (d > 1) flag(7, "field " + f + " not functional at " + el(a));
    }
    // Condition 8: pool cells only carry null/F field values.
    for (Elem a : pool) {
      auto v = m.fun_value(f, a);
      if (v && *v != m.null_elem() && *v != m.false_elem())
        flag(8, "pool cell " + el(a) + " has field " + f + " outside {null, F}");
    }
  }

  // Condition 9: non-field relations avoid MemPool. Ext twins are exempt:
  // they mirror a later state whose pool is smaller.
  for (const auto& [name, elems] : m.unary) {
    if (Vocabulary::is_required_unary(name) || vocab.is_ext(name)) continue;
    for (Elem e : elems)
      if (pool.count(e)) flag(9, "relation " + name + " touches pool cell " + el(e));
  }
  for (const auto& [name, pairs] : m.binary) {
    if (vocab.is_field_like(name) || vocab.is_ext(name)) continue;
    for (const auto& [a, b] : pairs)
      if (pool.count(a) || pool.count(b))
        flag(9, "relation " + name + " touches a pool cell (" + el(a) + "," + el(b) + ")");
  }

  // Condition 10, finite surrogate: the reserve must be nonempty.
  if (pool.empty()) flag(10, "MemPool is empty");

  return out;
}

MemoryStructure allocate(const MemoryStructure& m, Elem target) {
  if (!m.mem_pool().count(target))
    throw PreconditionError("allocate: element " + el(target) + " is not in MemPool");
  MemoryStructure out = m;
  out.unary[names::kMemPool].erase(target);
  out.unary[names::kAlloc].insert(target);
  return out;
}

MemoryStructure extend_with_ext(const MemoryStructure& pre, const MemoryStructure& post,
                                const Vocabulary& vocab) {
  if (pre.size != post.size)
    throw PreconditionError("extend_with_ext: universe mismatch");
  MemoryStructure out = pre;
  for (const auto& r : vocab.rem_symbols()) {
    std::string twin = names::ext(r);
    if (post.unary.count(r))
      out.unary[twin] = post.unary.at(r);
    else if (post.binary.count(r))
      out.binary[twin] = post.binary.at(r);
    else
      throw VocabError("extend_with_ext: post lacks rem symbol " + r);
  }
  return out;
}

MemoryStructure minimal_structure(const Vocabulary& vocab, int reserve) {
  MemoryStructure m;
  m.size = 3 + reserve;
  m.consts[names::kNull] = 0;
  m.consts[names::kTrue] = 1;
  m.consts[names::kFalse] = 2;
  m.unary[names::kAux] = {0, 1, 2};
  auto& addr = m.unary[names::kAddresses];
  auto& pool = m.unary[names::kMemPool];
  for (Elem e = 3; e < m.size; ++e) {
    addr.insert(e);
    pool.insert(e);
  }
  m.unary[names::kAlloc] = {};
  m.unary[names::kPossibleTargets] = {};
  for (const auto& u : vocab.unary_order())
    if (!Vocabulary::is_required_unary(u)) m.unary[u] = {};
  for (const auto& b : vocab.binary_order()) m.binary[b] = {};
  for (const auto& f : vocab.field_like())
    for (Elem a : addr) m.binary[f].insert({a, 0});
  for (const auto& c : vocab.const_order())
    if (!Vocabulary::is_required_const(c)) m.consts[c] = 0;
  return m;
}

std::string describe(const std::vector<Violation>& vs) {
  std::ostringstream os;
  for (const auto& v : vs) os << "condition " << v.condition << ": " << v.detail << "\n";
  return os.str();
}

}  // namespace scv
