#include "scv/verify.hpp"

#include <array>
#include <atomic>
#include <chrono>
#include <functional>
#include <map>
#include <set>
#include <thread>

#include "scv/solver.hpp"

namespace scv {

// ---- verification conditions ---------------------------------------------

VerificationCondition gen_vc(const ProgramGraph& g, const GraphEdge& e) {
  const GraphLocation& from = g.location(e.from);
  const GraphLocation& to = g.location(e.to);

  Vocabulary ext_vocab = g.vocab.with_ext();

  // Post-state obligation: the target shape's DL image and the negated
  // content annotation, pushed backwards through the edge code.
  ShapeDl alpha_to = shape_to_dl(to.shape, to.partitions, g.vocab);
  LFormulaPtr arg = land(alpha_to.formula, lnot(to.content));
  WpResult wr = wp_transform(e.code, arg, ext_vocab);

  Vocabulary full = ext_vocab;
  full.declare_free_const(names::kAbort);
  for (const auto& l : wr.instrumented.labels) full.declare_free_const(l.name);

  // Pre-state side: the exact shape image and the content annotation.
  Ct2Formula pre = shape_to_ct2(from.shape, from.partitions, g.vocab);

  std::vector<Fo2Ptr> conj = {pre.body, to_fo2(from.content), to_fo2(wr.formula)};
  // A new's label constant always denotes a pre-state pool cell; Psi's
  // Alloc-corrections handle everything after the first command.
  for (const auto& l : wr.instrumented.labels)
    if (l.kind == LabelInfo::Kind::New)
      conj.push_back(fo_unary(names::kMemPool, cterm(l.name)));

  VerificationCondition vc;
  vc.from = e.from;
  vc.to = e.to;
  vc.conjunction = Ct2Formula{fo_and(std::move(conj)), pre.segments};
  vc.labels = wr.instrumented.labels;
  for (const auto& l : wr.instrumented.labels) vc.free_consts.push_back(l.name);
  vc.free_consts.push_back(names::kAbort);

  SymbolUse use;
  collect_symbols(vc.conjunction.body, use);
  std::set<std::string> keep;
  keep.insert(use.consts.begin(), use.consts.end());
  keep.insert(use.concepts.begin(), use.concepts.end());
  keep.insert(use.roles.begin(), use.roles.end());
  for (const auto& seg : vc.conjunction.segments) {
    keep.insert(seg.partition);
    keep.insert(seg.field);
  }
  vc.vocab = full.restrict_to(keep);
  return vc;
}

// ---- axioms ---------------------------------------------------------------

std::vector<LFormulaPtr> psi_m_axioms(const Vocabulary& vocab) {
  std::vector<LFormulaPtr> out;
  auto A = [](const std::string& n) { return atomic_concept(n); };

  out.push_back(concept_equiv(
      A(names::kAux),
      cor(cor(nominal(names::kNull), nominal(names::kTrue)), nominal(names::kFalse))));

  out.push_back(concept_incl(A(names::kAddresses), cnot(A(names::kAux))));
  out.push_back(concept_equiv(cor(A(names::kAddresses), A(names::kAux)), top_concept()));

  out.push_back(concept_incl(A(names::kAlloc), cnot(A(names::kMemPool))));
  out.push_back(concept_incl(A(names::kAlloc), cnot(A(names::kPossibleTargets))));
  out.push_back(concept_incl(A(names::kMemPool), cnot(A(names::kPossibleTargets))));
  out.push_back(concept_equiv(
      cor(cor(A(names::kAlloc), A(names::kPossibleTargets)), A(names::kMemPool)),
      A(names::kAddresses)));

  for (const auto& c : vocab.const_order())
    if (!vocab.is_free_const(c))
      out.push_back(concept_incl(nominal(c), cnot(A(names::kMemPool))));

  for (const auto& f : vocab.field_like()) {
    out.push_back(func(atomic_role(f)));
    out.push_back(concept_incl(A(names::kAddresses),
                               exists(atomic_role(f), cnot(A(names::kMemPool)))));
  }
  for (const auto& f : vocab.field_like())
    out.push_back(concept_incl(
        A(names::kMemPool),
        exists(atomic_role(f), cor(nominal(names::kNull), nominal(names::kFalse)))));

  for (const auto& u : vocab.unary_order())
    if (!Vocabulary::is_required_unary(u) && !vocab.is_ext(u))
      out.push_back(concept_incl(A(u), cnot(A(names::kMemPool))));

  return out;
}

// ---- grounding --------------------------------------------------------------

namespace {

struct MemoKey {
  const Fo2Formula* node;
  int x, y;
  bool operator<(const MemoKey& o) const {
    if (node != o.node) return node < o.node;
    if (x != o.x) return x < o.x;
    return y < o.y;
  }
};

class Grounder {
 public:
  Grounder(const Vocabulary& vocab, int n, const Ct2Formula& body)
      : vocab_(vocab), n_(n), cir_(sat_), body_(body) {
    build_symbols();
    build_structural();
    if (!body_.segments.empty()) build_forest();
    cir_.require(ground(body_.body, -1, -1));
  }

  void add_formula(const LFormulaPtr& f) { cir_.require(ground(to_fo2(f), -1, -1)); }
  void require_nonempty_pool() {
    std::vector<int> lits;
    for (Elem a = 3; a < n_; ++a) lits.push_back(part_lit(a, 2));
    sat_.add_clause(lits.empty() ? std::vector<int>{-cir_.tru()} : lits);
  }
  void perturb(unsigned seed);

  SatSolver::Result solve(std::int64_t cap) { return sat_.solve(cap); }
  std::int64_t conflicts() const { return sat_.conflicts(); }
  MemoryStructure extract() const;

 private:
  bool is_aux(Elem e) const { return e < 3; }

  // Partition class lits per address: 0 = Alloc, 1 = PossibleTargets, 2 = MemPool.
  int part_lit(Elem a, int k) const { return part_.at(a - 3)[k]; }

  int const_lit(const std::string& c, Elem e) const {
    if (c == names::kNull) return e == 0 ? cir_tru_ : -cir_tru_;
    if (c == names::kTrue) return e == 1 ? cir_tru_ : -cir_tru_;
    if (c == names::kFalse) return e == 2 ? cir_tru_ : -cir_tru_;
    return consts_.at(c)[e];
  }

  int unary_lit(const std::string& u, Elem e) const {
    if (u == names::kAux) return is_aux(e) ? cir_tru_ : -cir_tru_;
    if (u == names::kAddresses) return !is_aux(e) ? cir_tru_ : -cir_tru_;
    if (u == names::kAlloc) return is_aux(e) ? -cir_tru_ : part_lit(e, 0);
    if (u == names::kPossibleTargets) return is_aux(e) ? -cir_tru_ : part_lit(e, 1);
    if (u == names::kMemPool) return is_aux(e) ? -cir_tru_ : part_lit(e, 2);
    auto it = unary_.find(u);
    if (it == unary_.end()) throw VocabError("grounder: unknown unary symbol " + u);
    return it->second[e];
  }

  int binary_lit(const std::string& r, Elem a, Elem b) const {
    if (r == names::kForest) {
      if (is_aux(a)) return -cir_tru_;
      return forest_.at(a - 3)[b];
    }
    auto fit = funcs_.find(r);
    if (fit != funcs_.end()) return is_aux(a) ? -cir_tru_ : fit->second[a - 3][b];
    auto bit = bins_.find(r);
    if (bit == bins_.end()) throw VocabError("grounder: unknown binary symbol " + r);
    return bit->second[a][b];
  }

  int term_cases(const Term& t, const std::function<int(Elem)>& body, int x, int y);
  int ground(const Fo2Ptr& f, int x, int y);
  Elem term_fixed(const Term& t, int x, int y) const;

  void build_symbols();
  void build_structural();
  void build_forest();

  const Vocabulary& vocab_;
  int n_;
  SatSolver sat_;
  Circuit cir_;
  int cir_tru_ = 0;
  Ct2Formula body_;
  std::vector<std::array<int, 3>> part_;                    // per address
  std::map<std::string, std::vector<int>> consts_;          // one-hot per element
  std::map<std::string, std::vector<int>> unary_;           // per element
  std::map<std::string, std::vector<std::vector<int>>> funcs_;  // addr x target
  std::map<std::string, std::vector<std::vector<int>>> bins_;   // elem x elem
  std::vector<std::vector<int>> forest_;                    // addr x target gates
  std::map<MemoKey, int> memo_;
};

void Grounder::build_symbols() {
  cir_tru_ = cir_.tru();
  part_.resize(n_ - 3);
  for (Elem a = 3; a < n_; ++a) {
    part_[a - 3] = {cir_.fresh(), cir_.fresh(), cir_.fresh()};
    cir_.exactly_one({part_[a - 3][0], part_[a - 3][1], part_[a - 3][2]});
  }
  for (const auto& c : vocab_.const_order()) {
    if (Vocabulary::is_required_const(c)) continue;
    auto& slots = consts_[c];
    for (Elem e = 0; e < n_; ++e) slots.push_back(cir_.fresh());
    cir_.exactly_one(slots);
  }
  for (const auto& u : vocab_.unary_order()) {
    if (Vocabulary::is_required_unary(u)) continue;
    auto& slots = unary_[u];
    for (Elem e = 0; e < n_; ++e) slots.push_back(cir_.fresh());
  }
  for (const auto& b : vocab_.binary_order()) {
    if (vocab_.is_field_like(b)) {
      auto& rows = funcs_[b];
      rows.resize(n_ - 3);
      for (Elem a = 3; a < n_; ++a) {
        for (Elem e = 0; e < n_; ++e) rows[a - 3].push_back(cir_.fresh());
        cir_.exactly_one(rows[a - 3]);
      }
    } else {
      auto& rows = bins_[b];
      rows.resize(n_);
      for (Elem a = 0; a < n_; ++a)
        for (Elem e = 0; e < n_; ++e) rows[a].push_back(cir_.fresh());
    }
  }
}

void Grounder::build_structural() {
  auto pool = [&](Elem e) { return unary_lit(names::kMemPool, e); };

  // Interchangeable addresses: fix a canonical order of partition classes.
  for (Elem a = 3; a + 1 < n_; ++a)
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < i; ++j)
        sat_.add_clause({-part_lit(a, i), -part_lit(a + 1, j)});

  // Constants avoid the pool (free constants exempt).
  for (const auto& [c, slots] : consts_)
    if (!vocab_.is_free_const(c))
      for (Elem e = 3; e < n_; ++e) sat_.add_clause({-slots[e], -pool(e)});

  // Fields: targets outside the pool; pool cells map into {null, F}.
  for (const auto& [f, rows] : funcs_) {
    (void)f;
    for (Elem a = 3; a < n_; ++a)
      for (Elem e = 0; e < n_; ++e) {
        if (e >= 3) sat_.add_clause({-rows[a - 3][e], -pool(e)});
        if (e != 0 && e != 2) sat_.add_clause({-rows[a - 3][e], -pool(a)});
      }
  }

  // Other relations avoid the pool, except ext twins.
  for (const auto& [u, slots] : unary_) {
    if (vocab_.is_ext(u)) continue;
    for (Elem e = 3; e < n_; ++e) sat_.add_clause({-slots[e], -pool(e)});
  }
  for (const auto& [b, rows] : bins_) {
    if (vocab_.is_ext(b)) continue;
    for (Elem a = 0; a < n_; ++a)
      for (Elem e = 0; e < n_; ++e) {
        if (a >= 3) sat_.add_clause({-rows[a][e], -pool(a)});
        if (e >= 3) sat_.add_clause({-rows[a][e], -pool(e)});
      }
  }
}

void Grounder::build_forest() {
  // Gates: F1(a,b) holds iff some segment's field edge (a,b) lies inside the
  // segment's partition concept.
  forest_.resize(n_ - 3);
  for (Elem a = 3; a < n_; ++a) {
    forest_[a - 3].resize(n_);
    for (Elem b = 0; b < n_; ++b) {
      std::vector<int> cases;
      for (const auto& seg : body_.segments)
        cases.push_back(cir_.mk_and({binary_lit(seg.field, a, b), unary_lit(seg.partition, a),
                                     unary_lit(seg.partition, b)}));
      forest_[a - 3][b] = cir_.mk_or(std::move(cases));
    }
  }
  // In-degree at most one.
  for (Elem b = 0; b < n_; ++b) {
    std::vector<int> preds;
    for (Elem a = 3; a < n_; ++a) preds.push_back(forest_[a - 3][b]);
    cir_.at_most_one(preds);
  }
  // Acyclicity: forbid every simple directed cycle over addresses.
  std::vector<Elem> addrs;
  for (Elem a = 3; a < n_; ++a) addrs.push_back(a);
  for (Elem a : addrs) sat_.add_clause({-forest_[a - 3][a]});
  // Cycles of length >= 2: pick the smallest element first to enumerate each
  // cycle once.
  std::vector<Elem> path;
  std::vector<char> used(n_, 0);
  std::function<void(Elem)> extend = [&](Elem start) {
    Elem last = path.back();
    for (Elem nxt : addrs) {
      if (nxt == start && path.size() >= 2) {
        std::vector<int> clause;
        for (size_t i = 0; i + 1 < path.size(); ++i)
          clause.push_back(-forest_[path[i] - 3][path[i + 1]]);
        clause.push_back(-forest_[last - 3][start]);
        sat_.add_clause(std::move(clause));
        continue;
      }
      if (nxt <= start || used[nxt]) continue;
      used[nxt] = 1;
      path.push_back(nxt);
      extend(start);
      path.pop_back();
      used[nxt] = 0;
    }
  };
  for (Elem s : addrs) {
    path = {s};
    std::fill(used.begin(), used.end(), 0);
    used[s] = 1;
    extend(s);
  }
}

Elem Grounder::term_fixed(const Term& t, int x, int y) const {
  switch (t.kind) {
    case Term::Kind::VarX:
      if (x < 0) throw VocabError("grounder: unbound x");
      return x;
    case Term::Kind::VarY:
      if (y < 0) throw VocabError("grounder: unbound y");
      return y;
    case Term::Kind::Const:
      if (t.name == names::kNull) return 0;
      if (t.name == names::kTrue) return 1;
      if (t.name == names::kFalse) return 2;
      return -1;  // symbolic
  }
  throw InternalError("term_fixed");
}

int Grounder::term_cases(const Term& t, const std::function<int(Elem)>& body, int x, int y) {
  Elem fixed = term_fixed(t, x, y);
  if (fixed >= 0) return body(fixed);
  const auto& slots = consts_.at(t.name);
  std::vector<int> cases;
  for (Elem e = 0; e < n_; ++e) cases.push_back(cir_.mk_and({slots[e], body(e)}));
  return cir_.mk_or(std::move(cases));
}

int Grounder::ground(const Fo2Ptr& f, int x, int y) {
  MemoKey key{f.get(), x, y};
  auto it = memo_.find(key);
  if (it != memo_.end()) return it->second;

  int out = 0;
  switch (f->kind) {
    case Fo2Formula::Kind::True:
      out = cir_.tru();
      break;
    case Fo2Formula::Kind::False:
      out = cir_.fls();
      break;
    case Fo2Formula::Kind::Unary:
      out = term_cases(f->a, [&](Elem e) { return unary_lit(f->pred, e); }, x, y);
      break;
    case Fo2Formula::Kind::Binary:
      out = term_cases(
          f->a,
          [&](Elem ea) {
            return term_cases(f->b, [&](Elem eb) { return binary_lit(f->pred, ea, eb); }, x, y);
          },
          x, y);
      break;
    case Fo2Formula::Kind::Eq:
      out = term_cases(
          f->a,
          [&](Elem ea) {
            return term_cases(
                f->b, [&](Elem eb) { return ea == eb ? cir_.tru() : cir_.fls(); }, x, y);
          },
          x, y);
      break;
    case Fo2Formula::Kind::Not:
      out = -ground(f->kids[0], x, y);
      break;
    case Fo2Formula::Kind::And: {
      std::vector<int> kids;
      for (const auto& k : f->kids) kids.push_back(ground(k, x, y));
      out = cir_.mk_and(std::move(kids));
      break;
    }
    case Fo2Formula::Kind::Or: {
      std::vector<int> kids;
      for (const auto& k : f->kids) kids.push_back(ground(k, x, y));
      out = cir_.mk_or(std::move(kids));
      break;
    }
    case Fo2Formula::Kind::Implies:
      out = cir_.mk_implies(ground(f->kids[0], x, y), ground(f->kids[1], x, y));
      break;
    case Fo2Formula::Kind::Iff:
      out = cir_.mk_iff(ground(f->kids[0], x, y), ground(f->kids[1], x, y));
      break;
    case Fo2Formula::Kind::Forall:
    case Fo2Formula::Kind::Exists: {
      std::vector<int> kids;
      for (Elem e = 0; e < n_; ++e)
        kids.push_back(f->qvar == 'x' ? ground(f->kids[0], e, y) : ground(f->kids[0], x, e));
      out = f->kind == Fo2Formula::Kind::Forall ? cir_.mk_and(std::move(kids))
                                                : cir_.mk_or(std::move(kids));
      break;
    }
    case Fo2Formula::Kind::Count: {
      std::vector<int> kids;
      for (Elem e = 0; e < n_; ++e)
        kids.push_back(f->qvar == 'x' ? ground(f->kids[0], e, y) : ground(f->kids[0], x, e));
      Circuit::Cmp c = f->cmp == Fo2Formula::Cmp::AtLeast  ? Circuit::Cmp::AtLeast
                       : f->cmp == Fo2Formula::Cmp::AtMost ? Circuit::Cmp::AtMost
                                                           : Circuit::Cmp::Exact;
      out = cir_.mk_count(c, f->k, kids);
      break;
    }
  }
  memo_[key] = out;
  return out;
}

void Grounder::perturb(unsigned seed) {
  if (seed == 0) return;
  // Deterministic tie-break jitter on the initial decision order.
  unsigned state = seed;
  for (int v = 1; v <= sat_.num_vars(); ++v) {
    state = state * 1664525u + 1013904223u;
    sat_.nudge_activity(v, (state % 1000) * 1e-9);
  }
}

MemoryStructure Grounder::extract() const {
  MemoryStructure m;
  m.size = n_;
  m.consts[names::kNull] = 0;
  m.consts[names::kTrue] = 1;
  m.consts[names::kFalse] = 2;
  m.unary[names::kAux] = {0, 1, 2};
  auto& addr = m.unary[names::kAddresses];
  auto& alloc = m.unary[names::kAlloc];
  auto& pt = m.unary[names::kPossibleTargets];
  auto& pool = m.unary[names::kMemPool];
  auto lit_true = [&](int lit) {
    return lit > 0 ? sat_.value(lit) : (lit < 0 ? !sat_.value(-lit) : false);
  };
  for (Elem a = 3; a < n_; ++a) {
    addr.insert(a);
    if (lit_true(part_[a - 3][0])) alloc.insert(a);
    if (lit_true(part_[a - 3][1])) pt.insert(a);
    if (lit_true(part_[a - 3][2])) pool.insert(a);
  }
  for (const auto& [c, slots] : consts_)
    for (Elem e = 0; e < n_; ++e)
      if (lit_true(slots[e])) {
        m.consts[c] = e;
        break;
      }
  for (const auto& [u, slots] : unary_) {
    auto& set = m.unary[u];
    for (Elem e = 0; e < n_; ++e)
      if (lit_true(slots[e])) set.insert(e);
  }
  for (const auto& [fname, rows] : funcs_) {
    auto& rel = m.binary[fname];
    for (Elem a = 3; a < n_; ++a)
      for (Elem e = 0; e < n_; ++e)
        if (lit_true(rows[a - 3][e])) rel.insert({a, e});
  }
  for (const auto& [b, rows] : bins_) {
    auto& rel = m.binary[b];
    for (Elem a = 0; a < n_; ++a)
      for (Elem e = 0; e < n_; ++e)
        if (lit_true(rows[a][e])) rel.insert({a, e});
  }
  return m;
}

// Adds one fresh pool cell with null fields; identity on everything else.
MemoryStructure pad_pool(const MemoryStructure& m, const Vocabulary& vocab) {
  MemoryStructure out = m;
  Elem fresh = out.size++;
  out.unary[names::kAddresses].insert(fresh);
  out.unary[names::kMemPool].insert(fresh);
  for (const auto& f : vocab.field_like()) out.binary[f].insert({fresh, 0});
  return out;
}

bool witness_checks(const Ct2Formula& body, const std::vector<LFormulaPtr>& extra,
                    const MemoryStructure& m) {
  if (!eval_ct2(body, m, ForestStrategy::Canonical)) return false;
  for (const auto& f : extra)
    if (!eval_formula(f, m)) return false;
  return true;
}

}  // namespace

Verdict find_model(const Ct2Formula& body, const std::vector<LFormulaPtr>& extra,
                   const Vocabulary& vocab, int bound, const SearchOptions& opts) {
  if (bound < 4) throw PreconditionError("find_model: bound must be at least 4");
  Verdict verdict;
  verdict.bound = bound;
  for (int n = 4; n <= bound; ++n) {
    for (int require_pool = 0; require_pool < 2; ++require_pool) {
      Grounder g(vocab, n, body);
      for (const auto& f : extra) g.add_formula(f);
      if (require_pool) g.require_nonempty_pool();
      g.perturb(opts.seed);
      SatSolver::Result r = g.solve(opts.max_conflicts);
      verdict.conflicts += g.conflicts();
      if (r == SatSolver::Result::Capped)
        throw InconclusiveError("find_model: conflict cap exceeded at universe size " +
                                std::to_string(n));
      if (r == SatSolver::Result::Unsat) break;  // nonempty-pool pass is narrower

      MemoryStructure m = g.extract();
      bool padded = false;
      if (m.mem_pool().empty()) {
        m = pad_pool(m, vocab);
        padded = true;
      }
      if (!witness_checks(body, extra, m)) {
        if (padded && !require_pool) continue;  // padding-sensitive: redo with a pool cell
        throw InternalError("find_model: extracted witness fails re-evaluation");
      }
      auto violations = validate(m, vocab);
      if (!violations.empty())
        throw InternalError("find_model: witness fails validation:\n" + describe(violations));
      verdict.counterexample = true;
      verdict.found_size = m.size;
      verdict.witness = std::move(m);
      verdict.pool_padded = padded;
      return verdict;
    }
  }
  return verdict;
}

// ---- program checking ------------------------------------------------------

namespace {

// Projects a restricted-vocabulary witness onto the program's vocabulary,
// dropping search-only symbols (ext twins, label constants) and completing
// unconstrained ones: missing fields become null-constant, missing relations
// empty, missing constants null.
MemoryStructure complete_for_run(const MemoryStructure& w, const Vocabulary& base) {
  MemoryStructure m;
  m.size = w.size;
  for (const auto& c : base.const_order())
    m.consts[c] = w.consts.count(c) ? w.consts.at(c) : w.const_of(names::kNull);
  for (const auto& u : base.unary_order())
    m.unary[u] = w.unary.count(u) ? w.unary.at(u) : std::set<Elem>{};
  for (const auto& b : base.binary_order()) {
    auto& rel = m.binary[b];
    if (w.binary.count(b)) {
      rel = w.binary.at(b);
    } else if (base.is_field_like(b)) {
      for (Elem a : m.addresses()) rel.insert({a, m.null_elem()});
    }
  }
  return m;
}

std::string classify_witness(const ProgramGraph& g, const GraphEdge& e,
                             const VerificationCondition& vc, const MemoryStructure& witness) {
  const std::string spurious = "spurious-under-free-symbols";
  try {
    MemoryStructure pre = complete_for_run(witness, g.vocab);
    // Drop the search-only symbols from the pre-state view.
    Choices choices;
    for (const auto& l : vc.labels)
      if (witness.consts.count(l.name)) choices[l.name] = witness.consts.at(l.name);
    RunOptions opts;
    opts.choices = &choices;
    RunOutcome out = run(e.code, pre, g.vocab, opts);
    if (!out.ok()) return spurious;

    // Resolve the step's rem nondeterminism with the witness's ext values.
    MemoryStructure post = out.result;
    for (const auto& r : g.vocab.rem_symbols()) {
      std::string twin = names::ext(r);
      if (witness.unary.count(twin))
        post.unary[r] = witness.unary.at(twin);
      else if (witness.binary.count(twin))
        post.binary[r] = witness.binary.at(twin);
    }
    auto bad = validate(post, g.vocab);
    bool only_pool = true;
    for (const auto& v : bad) only_pool = only_pool && v.condition == 10;
    if (!bad.empty() && !only_pool) return spurious;

    const GraphLocation& to = g.location(e.to);
    ShapeDl alpha_to = shape_to_dl(to.shape, to.partitions, g.vocab);
    if (!eval_formula(alpha_to.formula, post)) return spurious;
    if (eval_formula(to.content, post)) return spurious;
    return "concrete";
  } catch (const Error&) {
    return spurious;
  }
}

}  // namespace

ProgramReport check_program(const ProgramGraph& g, int bound, int jobs,
                            const SearchOptions& opts) {
  ProgramReport report;
  report.bound = bound;
  report.edges.resize(g.edges.size());

  std::atomic<size_t> next{0};
  auto worker = [&]() {
    while (true) {
      size_t i = next.fetch_add(1);
      if (i >= g.edges.size()) return;
      const GraphEdge& e = g.edges[i];
      EdgeReport& er = report.edges[i];
      er.from = e.from;
      er.to = e.to;
      auto t0 = std::chrono::steady_clock::now();
      VerificationCondition vc = gen_vc(g, e);
      er.verdict = find_model(vc.conjunction, {}, vc.vocab, bound, opts);
      if (er.verdict.counterexample)
        er.classification = classify_witness(g, e, vc, *er.verdict.witness);
      er.time_ms =
          std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0)
              .count();
    }
  };

  int threads = std::max(1, jobs);
  if (threads == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (int i = 0; i < threads; ++i) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }

  report.verified = true;
  for (const auto& er : report.edges) report.verified = report.verified && !er.verdict.counterexample;
  return report;
}

// ---- reach simulation -------------------------------------------------------

std::optional<MemoryStructure> bind_shape_partitions(const GraphLocation& loc,
                                                     const MemoryStructure& m,
                                                     const Vocabulary& vocab) {
  auto parts = eval_sl(loc.shape, m, vocab);
  if (!parts) return std::nullopt;
  MemoryStructure out = m;
  for (size_t i = 0; i < loc.partitions.size(); ++i)
    out.unary[loc.partitions[i]] = i < parts->size() ? (*parts)[i] : std::set<Elem>{};
  return out;
}

ReachReport simulate_reach(const ProgramGraph& g, const std::vector<MemoryStructure>& inits,
                           int max_path_len) {
  ReachReport report;

  std::function<void(int, const std::string&, const MemoryStructure&, std::vector<std::string>&)>
      visit = [&](int init_idx, const std::string& loc_name, const MemoryStructure& m,
                  std::vector<std::string>& path) {
        const GraphLocation& loc = g.location(loc_name);
        ++report.states_checked;
        auto bound = bind_shape_partitions(loc, m, g.vocab);
        if (!bound) {
          report.violations.push_back({path, init_idx, loc_name, "shape"});
        } else if (!eval_formula(loc.content, *bound)) {
          report.violations.push_back({path, init_idx, loc_name, "content"});
        }
        if (static_cast<int>(path.size()) >= max_path_len) return;
        for (const GraphEdge* e : g.edges_from(loc_name)) {
          RunOutcome out = run(e->code, m, g.vocab);
          if (out.kind == RunOutcome::Kind::OutOfReserve) {
            ++report.out_of_reserve;
            continue;
          }
          if (!out.ok()) continue;  // pruned by a failed assume or an abort
          path.push_back(e->from + "->" + e->to);
          ++report.paths_run;
          visit(init_idx, e->to, out.result, path);
          path.pop_back();
        }
      };

  for (size_t i = 0; i < inits.size(); ++i) {
    std::vector<std::string> path;
    visit(static_cast<int>(i), g.init, inits[i], path);
  }
  return report;
}

}  // namespace scv
