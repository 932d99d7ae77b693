#include "scv/solver.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>

namespace scv {

namespace {
inline int lit_index(int lit) { return lit > 0 ? 2 * lit : 2 * (-lit) + 1; }

std::int64_t luby(std::int64_t i) {
  // 1-indexed Luby sequence: 1 1 2 1 1 2 4 ...
  for (std::int64_t k = 1;; ++k) {
    std::int64_t p = (1LL << k) - 1;
    if (i == p) return 1LL << (k - 1);
    if (i < p) return luby(i - ((1LL << (k - 1)) - 1));
  }
}
}  // namespace

int SatSolver::new_var() {
  assign_.push_back(kUndef);
  level_.push_back(0);
  reason_.push_back(-1);
  activity_.push_back(0.0);
  phase_.push_back(kFalse);
  seen_.push_back(0);
  watches_.resize(2 * assign_.size() + 2);
  int v = num_vars();
  heap_insert(v);
  return v;
}

// ---- activity-ordered decision heap --------------------------------------

void SatSolver::heap_swap(int i, int j) {
  std::swap(heap_[i], heap_[j]);
  heap_pos_[heap_[i]] = i;
  heap_pos_[heap_[j]] = j;
}

bool SatSolver::heap_less(int u, int v) const {
  // Max-heap by activity; index breaks ties for determinism.
  return activity_[u] != activity_[v] ? activity_[u] > activity_[v] : u < v;
}

void SatSolver::heap_up(int i) {
  while (i > 0) {
    int p = (i - 1) / 2;
    if (heap_less(heap_[i], heap_[p])) {
      heap_swap(i, p);
      i = p;
    } else {
      break;
    }
  }
}

void SatSolver::heap_down(int i) {
  int n = static_cast<int>(heap_.size());
  while (true) {
    int l = 2 * i + 1, r = 2 * i + 2, best = i;
    if (l < n && heap_less(heap_[l], heap_[best])) best = l;
    if (r < n && heap_less(heap_[r], heap_[best])) best = r;
    if (best == i) break;
    heap_swap(i, best);
    i = best;
  }
}

void SatSolver::heap_insert(int v) {
  if (static_cast<int>(heap_pos_.size()) <= v) heap_pos_.resize(v + 1, -1);
  if (heap_pos_[v] >= 0) return;
  heap_pos_[v] = static_cast<int>(heap_.size());
  heap_.push_back(v);
  heap_up(heap_pos_[v]);
}

int SatSolver::heap_pop() {
  int v = heap_[0];
  heap_swap(0, static_cast<int>(heap_.size()) - 1);
  heap_.pop_back();
  heap_pos_[v] = -1;
  if (!heap_.empty()) heap_down(0);
  return v;
}

// ---------------------------------------------------------------------------

signed char SatSolver::lit_value(int lit) const {
  signed char v = assign_[std::abs(lit)];
  return lit > 0 ? v : static_cast<signed char>(-v);
}

void SatSolver::attach(int ci) {
  const auto& c = clauses_[ci].lits;
  watches_[lit_index(-c[0])].push_back(ci);
  watches_[lit_index(-c[1])].push_back(ci);
}

void SatSolver::add_clause(std::vector<int> lits) {
  if (unsat_) return;
  std::sort(lits.begin(), lits.end(), [](int a, int b) {
    return std::abs(a) != std::abs(b) ? std::abs(a) < std::abs(b) : a < b;
  });
  std::vector<int> out;
  for (size_t i = 0; i < lits.size(); ++i) {
    int l = lits[i];
    if (i + 1 < lits.size() && lits[i + 1] == -l) return;  // tautology
    if (i > 0 && lits[i - 1] == l) continue;
    if (assign_[std::abs(l)] != kUndef && level_[std::abs(l)] == 0) {
      if (lit_value(l) == kTrue) return;  // satisfied at root
      continue;                           // false at root: drop literal
    }
    out.push_back(l);
  }
  if (out.empty()) {
    unsat_ = true;
    return;
  }
  if (out.size() == 1) {
    if (lit_value(out[0]) == kFalse) {
      unsat_ = true;
      return;
    }
    if (lit_value(out[0]) == kUndef) {
      enqueue(out[0], -1);
      int conflict;
      if (!propagate(conflict)) unsat_ = true;
    }
    return;
  }
  clauses_.push_back({std::move(out), false, 0.0});
  attach(static_cast<int>(clauses_.size()) - 1);
}

void SatSolver::enqueue(int lit, int reason) {
  int v = std::abs(lit);
  assign_[v] = lit > 0 ? kTrue : kFalse;
  level_[v] = static_cast<int>(trail_lim_.size());
  reason_[v] = reason;
  trail_.push_back(lit);
}

bool SatSolver::propagate(int& conflict) {
  while (qhead_ < trail_.size()) {
    int lit = trail_[qhead_++];
    auto& watch = watches_[lit_index(lit)];
    size_t keep = 0;
    for (size_t wi = 0; wi < watch.size(); ++wi) {
      int ci = watch[wi];
      auto& c = clauses_[ci].lits;
      if (c[0] == -lit) std::swap(c[0], c[1]);
      if (lit_value(c[0]) == kTrue) {
        watch[keep++] = ci;
        continue;
      }
      bool moved = false;
      for (size_t k = 2; k < c.size(); ++k) {
        if (lit_value(c[k]) != kFalse) {
          std::swap(c[1], c[k]);
          watches_[lit_index(-c[1])].push_back(ci);
          moved = true;
          break;
        }
      }
      if (moved) continue;
      watch[keep++] = ci;
      if (lit_value(c[0]) == kFalse) {
        for (size_t rest = wi + 1; rest < watch.size(); ++rest) watch[keep++] = watch[rest];
        watch.resize(keep);
        conflict = ci;
        return false;
      }
      enqueue(c[0], ci);
    }
    watch.resize(keep);
  }
  conflict = -1;
  return true;
}

void SatSolver::bump_var(int v) {
  activity_[v] += var_inc_;
  if (activity_[v] > 1e100) {
    for (int u = 1; u <= num_vars(); ++u) activity_[u] *= 1e-100;
    var_inc_ *= 1e-100;
    // Heap order is activity-proportional, unchanged by uniform scaling.
  }
  if (heap_pos_.size() > static_cast<size_t>(v) && heap_pos_[v] >= 0) heap_up(heap_pos_[v]);
}

void SatSolver::decay() { var_inc_ /= 0.95; }

int SatSolver::analyze(int conflict, std::vector<int>& learned) {
  learned.clear();
  learned.push_back(0);
  int counter = 0;
  int lit = 0;
  size_t idx = trail_.size();
  int current_level = static_cast<int>(trail_lim_.size());
  int ci = conflict;
  do {
    auto& c = clauses_[ci];
    if (c.learned) c.activity += cla_inc_;
    for (size_t j = (lit == 0 ? 0 : 1); j < c.lits.size(); ++j) {
      int q = c.lits[j];
      int v = std::abs(q);
      if (!seen_[v] && level_[v] > 0) {
        seen_[v] = 1;
        bump_var(v);
        if (level_[v] >= current_level)
          ++counter;
        else
          learned.push_back(q);
      }
    }
    while (!seen_[std::abs(trail_[idx - 1])]) --idx;
    lit = trail_[idx - 1];
    --idx;
    seen_[std::abs(lit)] = 0;
    ci = reason_[std::abs(lit)];
    --counter;
  } while (counter > 0);
  learned[0] = -lit;

  int bt = 0;
  for (size_t i = 1; i < learned.size(); ++i) bt = std::max(bt, level_[std::abs(learned[i])]);
  for (size_t i = 1; i < learned.size(); ++i) seen_[std::abs(learned[i])] = 0;
  return bt;
}

void SatSolver::backtrack(int target) {
  while (static_cast<int>(trail_lim_.size()) > target) {
    size_t start = trail_lim_.back();
    trail_lim_.pop_back();
    for (size_t i = trail_.size(); i > start; --i) {
      int v = std::abs(trail_[i - 1]);
      phase_[v] = assign_[v];
      assign_[v] = kUndef;
      reason_[v] = -1;
      heap_insert(v);
    }
    trail_.resize(start);
  }
  qhead_ = trail_.size();
}

int SatSolver::pick_branch() {
  while (!heap_.empty()) {
    int v = heap_[0];
    if (assign_[v] == kUndef) {
      heap_pop();
      return phase_[v] == kTrue ? v : -v;
    }
    heap_pop();
  }
  return 0;
}

void SatSolver::reduce_db() {
  std::vector<char> is_reason(clauses_.size(), 0);
  for (int v = 1; v <= num_vars(); ++v)
    if (assign_[v] != kUndef && reason_[v] >= 0) is_reason[reason_[v]] = 1;
  std::vector<double> acts;
  for (size_t i = 0; i < clauses_.size(); ++i)
    if (clauses_[i].learned && !is_reason[i] && clauses_[i].lits.size() > 2)
      acts.push_back(clauses_[i].activity);
  if (acts.size() < 5000) return;
  std::nth_element(acts.begin(), acts.begin() + acts.size() / 2, acts.end());
  double cut = acts[acts.size() / 2];
  std::vector<Clause> kept;
  kept.reserve(clauses_.size());
  std::vector<int> remap(clauses_.size(), -1);
  for (size_t i = 0; i < clauses_.size(); ++i) {
    auto& c = clauses_[i];
    bool drop = c.learned && !is_reason[i] && c.lits.size() > 2 && c.activity < cut;
    if (!drop) {
      remap[i] = static_cast<int>(kept.size());
      kept.push_back(std::move(c));
    }
  }
  clauses_ = std::move(kept);
  for (auto& w : watches_) w.clear();
  for (size_t i = 0; i < clauses_.size(); ++i) attach(static_cast<int>(i));
  for (int v = 1; v <= num_vars(); ++v)
    if (reason_[v] >= 0) reason_[v] = remap[reason_[v]];
}

SatSolver::Result SatSolver::solve(std::int64_t conflict_cap) {
  if (unsat_) return Result::Unsat;
  int conflict;
  if (!propagate(conflict)) {
    unsat_ = true;
    return Result::Unsat;
  }
  std::int64_t restart_count = 0;
  std::int64_t next_restart = 100;
  std::int64_t start_conflicts = conflicts_;
  std::vector<int> learned;
  while (true) {
    if (!propagate(conflict)) {
      ++conflicts_;
      if (trail_lim_.empty()) {
        unsat_ = true;
        return Result::Unsat;
      }
      if (conflicts_ - start_conflicts > conflict_cap) return Result::Capped;
      int bt = analyze(conflict, learned);
      backtrack(bt);
      if (learned.size() == 1) {
        enqueue(learned[0], -1);
      } else {
        clauses_.push_back({learned, true, cla_inc_});
        int ci = static_cast<int>(clauses_.size()) - 1;
        auto& c = clauses_[ci].lits;
        for (size_t i = 1; i < c.size(); ++i)
          if (level_[std::abs(c[i])] == bt) {
            std::swap(c[1], c[i]);
            break;
          }
        attach(ci);
        enqueue(c[0], ci);
      }
      decay();
      cla_inc_ *= 1.001;
      if (conflicts_ - start_conflicts >= next_restart) {
        ++restart_count;
        next_restart = conflicts_ - start_conflicts + 100 * luby(restart_count);
        backtrack(0);
        reduce_db();
      }
      continue;
    }
    int dec = pick_branch();
    if (dec == 0) return Result::Sat;
    trail_lim_.push_back(static_cast<int>(trail_.size()));
    enqueue(dec, -1);
  }
}

bool SatSolver::value(int var) const { return assign_[var] == kTrue; }

void SatSolver::nudge_activity(int var, double amount) {
  activity_[var] += amount;
  if (heap_pos_.size() > static_cast<size_t>(var) && heap_pos_[var] >= 0) heap_up(heap_pos_[var]);
}

// ---- circuit ------------------------------------------------------------

Circuit::Circuit(SatSolver& sat) : sat_(sat) {
  true_lit_ = sat_.new_var();
  sat_.add_clause({true_lit_});
}

int Circuit::fresh() { return sat_.new_var(); }

int Circuit::tseitin_and(const std::vector<int>& kids) {
  auto it = and_cache_.find(kids);
  if (it != and_cache_.end()) return it->second;
  int g = sat_.new_var();
  std::vector<int> big{g};
  for (int k : kids) {
    sat_.add_clause({-g, k});
    big.push_back(-k);
  }
  sat_.add_clause(std::move(big));
  and_cache_[kids] = g;
  return g;
}

int Circuit::mk_and(std::vector<int> kids) {
  std::vector<int> out;
  for (int k : kids) {
    if (k == fls()) return fls();
    if (k == tru()) continue;
    out.push_back(k);
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  for (size_t i = 0; i + 1 < out.size(); ++i)
    if (out[i] == -out[i + 1]) return fls();
  if (out.empty()) return tru();
  if (out.size() == 1) return out[0];
  return tseitin_and(out);
}

int Circuit::mk_or(std::vector<int> kids) {
  for (auto& k : kids) k = -k;
  return -mk_and(std::move(kids));
}

int Circuit::mk_implies(int a, int b) { return mk_or({-a, b}); }

int Circuit::mk_iff(int a, int b) {
  if (a == b) return tru();
  if (a == -b) return fls();
  if (a == tru()) return b;
  if (a == fls()) return -b;
  if (b == tru()) return a;
  if (b == fls()) return -a;
  return mk_and({mk_or({-a, b}), mk_or({a, -b})});
}

namespace {
void subsets_of_size(int n, int k, const std::function<void(const std::vector<int>&)>& emit) {
  std::vector<int> idx(k);
  std::function<void(int, int)> go = [&](int start, int depth) {
    if (depth == k) {
      emit(idx);
      return;
    }
    for (int i = start; i < n; ++i) {
      idx[depth] = i;
      go(i + 1, depth + 1);
    }
  };
  go(0, 0);
}
}  // namespace

int Circuit::mk_count(Cmp cmp, int k, const std::vector<int>& kids) {
  int n = static_cast<int>(kids.size());
  if (cmp == Cmp::Exact)
    return mk_and({mk_count(Cmp::AtLeast, k, kids), mk_count(Cmp::AtMost, k, kids)});
  if (cmp == Cmp::AtLeast) {
    if (k <= 0) return tru();
    if (k > n) return fls();
    std::vector<int> conj;
    subsets_of_size(n, n - k + 1, [&](const std::vector<int>& idx) {
      std::vector<int> dis;
      for (int i : idx) dis.push_back(kids[i]);
      conj.push_back(mk_or(std::move(dis)));
    });
    return mk_and(std::move(conj));
  }
  if (k >= n) return tru();
  if (k < 0) return fls();
  std::vector<int> conj;
  subsets_of_size(n, k + 1, [&](const std::vector<int>& idx) {
    std::vector<int> dis;
    for (int i : idx) dis.push_back(-kids[i]);
    conj.push_back(mk_or(std::move(dis)));
  });
  return mk_and(std::move(conj));
}

void Circuit::at_most_one(const std::vector<int>& lits) {
  for (size_t i = 0; i < lits.size(); ++i)
    for (size_t j = i + 1; j < lits.size(); ++j) sat_.add_clause({-lits[i], -lits[j]});
}

void Circuit::exactly_one(const std::vector<int>& lits) {
  sat_.add_clause(lits);
  at_most_one(lits);
}

}  // namespace scv
