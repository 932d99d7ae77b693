#include "doctest.h"

#include "scv/solver.hpp"

using namespace scv;

TEST_CASE("unit propagation and simple models") {
  SatSolver s;
  int a = s.new_var(), b = s.new_var(), c = s.new_var();
  s.add_clause({a, b});
  s.add_clause({-a, c});
  s.add_clause({-b});
  REQUIRE(s.solve(1000) == SatSolver::Result::Sat);
  CHECK(s.value(a));
  CHECK(!s.value(b));
  CHECK(s.value(c));
}

TEST_CASE("contradictions are unsat") {
  SatSolver s;
  int a = s.new_var(), b = s.new_var();
  s.add_clause({a, b});
  s.add_clause({a, -b});
  s.add_clause({-a, b});
  s.add_clause({-a, -b});
  CHECK(s.solve(1000) == SatSolver::Result::Unsat);
}

TEST_CASE("pigeons do not fit") {
  // 4 pigeons, 3 holes.
  SatSolver s;
  int v[4][3];
  for (auto& row : v)
    for (int& x : row) x = s.new_var();
  for (auto& row : v) s.add_clause({row[0], row[1], row[2]});
  for (int h = 0; h < 3; ++h)
    for (int i = 0; i < 4; ++i)
      for (int j = i + 1; j < 4; ++j) s.add_clause({-v[i][h], -v[j][h]});
  CHECK(s.solve(100000) == SatSolver::Result::Unsat);
}

TEST_CASE("learned clauses survive restarts on a harder instance") {
  // 8 pigeons, 7 holes: needs real conflict analysis to finish quickly.
  SatSolver s;
  std::vector<std::vector<int>> v(8, std::vector<int>(7));
  for (auto& row : v)
    for (int& x : row) x = s.new_var();
  for (auto& row : v) s.add_clause(std::vector<int>(row.begin(), row.end()));
  for (int h = 0; h < 7; ++h)
    for (size_t i = 0; i < v.size(); ++i)
      for (size_t j = i + 1; j < v.size(); ++j)
        s.add_clause({-v[i][h], -v[j][h]});
  CHECK(s.solve(5'000'000) == SatSolver::Result::Unsat);
}

TEST_CASE("the conflict cap reports capped instead of lying") {
  SatSolver s;
  std::vector<std::vector<int>> v(10, std::vector<int>(9));
  for (auto& row : v)
    for (int& x : row) x = s.new_var();
  for (auto& row : v) s.add_clause(std::vector<int>(row.begin(), row.end()));
  for (int h = 0; h < 9; ++h)
    for (size_t i = 0; i < v.size(); ++i)
      for (size_t j = i + 1; j < v.size(); ++j)
        s.add_clause({-v[i][h], -v[j][h]});
  CHECK(s.solve(50) == SatSolver::Result::Capped);
}

TEST_CASE("circuit gates agree with their truth tables") {
  for (int mask = 0; mask < 8; ++mask) {
    SatSolver s;
    Circuit c(s);
    int a = c.fresh(), b = c.fresh(), d = c.fresh();
    int vals[3] = {a, b, d};
    for (int i = 0; i < 3; ++i) c.require((mask >> i) & 1 ? vals[i] : -vals[i]);
    int g_and = c.mk_and({a, b, d});
    int g_or = c.mk_or({a, -b});
    int g_iff = c.mk_iff(a, d);
    int cnt2 = c.mk_count(Circuit::Cmp::AtLeast, 2, {a, b, d});
    int ex1 = c.mk_count(Circuit::Cmp::Exact, 1, {a, b, d});
    REQUIRE(s.solve(1000) == SatSolver::Result::Sat);
    bool va = (mask >> 0) & 1, vb = (mask >> 1) & 1, vd = (mask >> 2) & 1;
    auto lit = [&](int l) { return l > 0 ? s.value(l) : !s.value(-l); };
    CHECK(lit(g_and) == (va && vb && vd));
    CHECK(lit(g_or) == (va || !vb));
    CHECK(lit(g_iff) == (va == vd));
    CHECK(lit(cnt2) == (static_cast<int>(va) + vb + vd >= 2));
    CHECK(lit(ex1) == (static_cast<int>(va) + vb + vd == 1));
  }
}

TEST_CASE("exactly-one picks a single slot") {
  SatSolver s;
  Circuit c(s);
  std::vector<int> slots = {c.fresh(), c.fresh(), c.fresh(), c.fresh()};
  c.exactly_one(slots);
  REQUIRE(s.solve(1000) == SatSolver::Result::Sat);
  int count = 0;
  for (int v : slots) count += s.value(v) ? 1 : 0;
  CHECK(count == 1);
}
