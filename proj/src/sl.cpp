#include "scv/sl.hpp"

#include <algorithm>
#include <sstream>

namespace scv {

namespace {
Elem expr_value(const SlExpr& e, const MemoryStructure& m) {
  return e.is_null ? m.null_elem() : m.const_of(e.var);
}
}  // namespace

std::optional<std::vector<std::set<Elem>>> eval_sl(const SlFormula& f, const MemoryStructure& m,
                                                   const Vocabulary& vocab) {
  for (const auto& atom : f.pure) {
    switch (atom.kind) {
      case PureAtom::Kind::True:
        break;
      case PureAtom::Kind::Eq:
        if (expr_value(atom.lhs, m) != expr_value(atom.rhs, m)) return std::nullopt;
        break;
      case PureAtom::Kind::Neq:
        if (expr_value(atom.lhs, m) == expr_value(atom.rhs, m)) return std::nullopt;
        break;
    }
  }

  const auto& alloc = m.alloc();
  if (f.emp) {
    if (!alloc.empty()) return std::nullopt;
    return std::vector<std::set<Elem>>{};
  }

  std::set<Elem> claimed;
  std::vector<std::set<Elem>> parts;
  for (const auto& chunk : f.chunks) {
    std::set<Elem> cells;
    if (const auto* pt = std::get_if<PointsToChunk>(&chunk)) {
      Elem cell = m.const_of(pt->var);
      if (!alloc.count(cell) || claimed.count(cell)) return std::nullopt;
      // Listed fields carry the stated values; every other program field of
      // the cell is implicitly null.
      std::set<std::string> listed;
      for (const auto& [fld, val] : pt->fields) {
        listed.insert(fld);
        auto v = m.fun_value(fld, cell);
        if (!v || *v != expr_value(val, m)) return std::nullopt;
      }
      for (const auto& fld : vocab.fields()) {
        if (listed.count(fld)) continue;
        auto v = m.fun_value(fld, cell);
        if (!v || *v != m.null_elem()) return std::nullopt;
      }
      cells.insert(cell);
    } else {
      const auto& ls = std::get<LsChunk>(chunk);
      Elem from = expr_value(ls.from, m);
      Elem to = expr_value(ls.to, m);
      if (from != to) {
        // Nonempty acyclic segment; traversal bounded by |Alloc|.
        Elem cur = from;
        size_t steps = 0;
        while (cur != to) {
          if (!alloc.count(cur) || claimed.count(cur) || cells.count(cur)) return std::nullopt;
          cells.insert(cur);
          auto nxt = m.fun_value(kListField, cur);
          if (!nxt) return std::nullopt;
          cur = *nxt;
          if (++steps > alloc.size()) return std::nullopt;
        }
      }
      // from == to: the empty segment, no cells.
    }
    claimed.insert(cells.begin(), cells.end());
    parts.push_back(std::move(cells));
  }

  if (claimed.size() != alloc.size()) return std::nullopt;
  return parts;
}

StackHeap to_stack_heap(const MemoryStructure& m, const Vocabulary& vocab) {
  auto value_of = [&](Elem e) -> StackHeap::Value {
    if (e == m.null_elem()) return {StackHeap::Value::Kind::Nil, -1};
    if (e == m.true_elem()) return {StackHeap::Value::Kind::True, -1};
    if (e == m.false_elem()) return {StackHeap::Value::Kind::False, -1};
    return {StackHeap::Value::Kind::Addr, e};
  };
  StackHeap sh;
  for (const auto& v : vocab.vars()) sh.stack[v] = value_of(m.const_of(v));
  for (Elem a : m.alloc()) {
    auto& rec = sh.heap[a];
    for (const auto& f : vocab.fields()) {
      auto t = m.fun_value(f, a);
      if (!t) throw PreconditionError("to_stack_heap: field " + f + " undefined on a heap cell");
      rec[f] = value_of(*t);
    }
  }
  return sh;
}

MemoryStructure from_stack_heap(const StackHeap& sh, const Vocabulary& vocab, int reserve) {
  // Addresses: the heap domain plus any address mentioned by the stack or a
  // field, then `reserve` fresh pool cells.
  std::set<int> mentioned;
  for (const auto& [a, rec] : sh.heap) {
    mentioned.insert(a);
    for (const auto& [f, v] : rec)
      if (v.kind == StackHeap::Value::Kind::Addr) mentioned.insert(v.addr);
  }
  for (const auto& [v, val] : sh.stack)
    if (val.kind == StackHeap::Value::Kind::Addr) mentioned.insert(val.addr);

  MemoryStructure m;
  m.consts[names::kNull] = 0;
  m.consts[names::kTrue] = 1;
  m.consts[names::kFalse] = 2;
  m.unary[names::kAux] = {0, 1, 2};
  std::map<int, Elem> addr_elem;
  Elem next_id = 3;
  for (int a : mentioned) addr_elem[a] = next_id++;
  Elem first_pool = next_id;
  next_id += reserve;
  m.size = next_id;

  auto& addresses = m.unary[names::kAddresses];
  auto& alloc = m.unary[names::kAlloc];
  auto& pt = m.unary[names::kPossibleTargets];
  auto& pool = m.unary[names::kMemPool];
  for (Elem e = 3; e < m.size; ++e) addresses.insert(e);
  for (Elem e = first_pool; e < m.size; ++e) pool.insert(e);
  for (const auto& [a, e] : addr_elem) {
    if (sh.heap.count(a))
      alloc.insert(e);
    else
      pt.insert(e);
  }

  auto elem_of = [&](const StackHeap::Value& v) -> Elem {
    switch (v.kind) {
      case StackHeap::Value::Kind::Nil:
        return 0;
      case StackHeap::Value::Kind::True:
        return 1;
      case StackHeap::Value::Kind::False:
        return 2;
      case StackHeap::Value::Kind::Addr:
        return addr_elem.at(v.addr);
    }
    throw InternalError("from_stack_heap");
  };

  for (const auto& v : vocab.vars()) {
    auto it = sh.stack.find(v);
    m.consts[v] = it == sh.stack.end() ? 0 : elem_of(it->second);
  }
  for (const auto& u : vocab.unary_order())
    if (!Vocabulary::is_required_unary(u)) m.unary[u] = {};
  for (const auto& b : vocab.binary_order()) m.binary[b] = {};
  for (const auto& f : vocab.fields()) {
    for (Elem e = 3; e < m.size; ++e) m.binary[f].insert({e, 0});
    for (const auto& [a, rec] : sh.heap) {
      auto it = rec.find(f);
      if (it != rec.end()) m.set_fun(f, addr_elem.at(a), elem_of(it->second));
    }
  }
  // Ghost twins of fields stay total too.
  for (const auto& f : vocab.field_like())
    if (!vocab.is_field(f))
      for (Elem e = 3; e < m.size; ++e) m.binary[f].insert({e, 0});
  return m;
}

std::string to_text(const SlFormula& f) {
  std::ostringstream os;
  auto expr = [](const SlExpr& e) { return e.is_null ? std::string("null") : e.var; };
  bool pure_trivial = f.pure.empty() ||
                      (f.pure.size() == 1 && f.pure[0].kind == PureAtom::Kind::True);
  if (!pure_trivial) {
    for (size_t i = 0; i < f.pure.size(); ++i) {
      if (i) os << " && ";
      const auto& a = f.pure[i];
      if (a.kind == PureAtom::Kind::True)
        os << "true";
      else
        os << expr(a.lhs) << (a.kind == PureAtom::Kind::Eq ? " = " : " != ") << expr(a.rhs);
    }
    os << " | ";
  }
  if (f.emp) {
    os << "emp";
  } else {
    for (size_t i = 0; i < f.chunks.size(); ++i) {
      if (i) os << " * ";
      if (const auto* pt = std::get_if<PointsToChunk>(&f.chunks[i])) {
        os << pt->var << " |-> [";
        for (size_t j = 0; j < pt->fields.size(); ++j) {
          if (j) os << ", ";
          os << pt->fields[j].first << ": " << expr(pt->fields[j].second);
        }
        os << "]";
      } else {
        const auto& ls = std::get<LsChunk>(f.chunks[i]);
        os << "ls(" << expr(ls.from) << ", " << expr(ls.to) << ")";
      }
    }
  }
  return os.str();
}

void collect_symbols(const SlFormula& f, SymbolUse& out) {
  auto expr = [&](const SlExpr& e) {
    if (!e.is_null) out.consts.insert(e.var);
  };
  for (const auto& a : f.pure) {
    if (a.kind == PureAtom::Kind::True) continue;
    expr(a.lhs);
    expr(a.rhs);
  }
  for (const auto& c : f.chunks) {
    if (const auto* pt = std::get_if<PointsToChunk>(&c)) {
      out.consts.insert(pt->var);
      for (const auto& [fld, val] : pt->fields) {
        out.roles.insert(fld);
        expr(val);
      }
    } else {
      const auto& ls = std::get<LsChunk>(c);
      expr(ls.from);
      expr(ls.to);
      out.roles.insert(kListField);
    }
  }
}

}  // namespace scv
