#pragma once

#include <cstdint>
#include <map>
#include <vector>

#include "scv/common.hpp"

namespace scv {

// Small CDCL SAT solver: two-watched literals, first-UIP learning, VSIDS
// with phase saving, Luby restarts. Deterministic for fixed input order.
class SatSolver {
 public:
  enum class Result { Sat, Unsat, Capped };

  // Returns the new variable's index (1-based). Literals are +v / -v.
  int new_var();
  int num_vars() const { return static_cast<int>(assign_.size()) - 1; }

  // Empty clause or conflicting units make the instance trivially unsat.
  void add_clause(std::vector<int> lits);

  Result solve(std::int64_t conflict_cap);

  bool value(int var) const;        // model access after Sat
  std::int64_t conflicts() const { return conflicts_; }
  void nudge_activity(int var, double amount);  // deterministic tie-break jitter

 private:
  struct Clause {
    std::vector<int> lits;
    bool learned = false;
    double activity = 0.0;
  };

  enum : signed char { kUndef = 0, kTrue = 1, kFalse = -1 };

  signed char lit_value(int lit) const;
  void enqueue(int lit, int reason);
  bool propagate(int& conflict);
  int analyze(int conflict, std::vector<int>& learned);
  void backtrack(int level);
  void bump_var(int v);
  void decay();
  int pick_branch();
  void attach(int ci);
  void reduce_db();
  void heap_swap(int i, int j);
  bool heap_less(int u, int v) const;
  void heap_up(int i);
  void heap_down(int i);
  void heap_insert(int v);
  int heap_pop();

  std::vector<Clause> clauses_;
  std::vector<std::vector<int>> watches_;  // lit index -> clause ids
  std::vector<signed char> assign_ = {0};  // var -> value
  std::vector<int> level_ = {0};
  std::vector<int> reason_ = {-1};
  std::vector<double> activity_ = {0.0};
  std::vector<signed char> phase_ = {0};
  std::vector<int> trail_;
  std::vector<int> trail_lim_;
  size_t qhead_ = 0;
  std::vector<char> seen_ = {0};
  double var_inc_ = 1.0;
  double cla_inc_ = 1.0;
  std::int64_t conflicts_ = 0;
  bool unsat_ = false;
  std::vector<int> heap_;      // activity-ordered decision heap
  std::vector<int> heap_pos_;  // var -> heap index (-1 = absent)
};

// Boolean circuit on top of the SAT core: literals are ints, gate nodes are
// Tseitin-encoded on creation, with structural caching.
class Circuit {
 public:
  explicit Circuit(SatSolver& sat);

  int tru() const { return true_lit_; }
  int fls() const { return -true_lit_; }
  int fresh();                       // free variable
  int mk_not(int a) { return -a; }
  int mk_and(std::vector<int> kids);
  int mk_or(std::vector<int> kids);
  int mk_implies(int a, int b);
  int mk_iff(int a, int b);
  // Cardinality gate: lit <-> (#true among kids `cmp` k). Small n only.
  enum class Cmp { AtLeast, AtMost, Exact };
  int mk_count(Cmp cmp, int k, const std::vector<int>& kids);

  void require(int lit) { sat_.add_clause({lit}); }
  void at_most_one(const std::vector<int>& lits);
  void exactly_one(const std::vector<int>& lits);

  SatSolver& sat() { return sat_; }

 private:
  int tseitin_and(const std::vector<int>& kids);
  SatSolver& sat_;
  int true_lit_;
  std::map<std::vector<int>, int> and_cache_;
};

}  // namespace scv
