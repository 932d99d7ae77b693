#include "doctest.h"

#include <fstream>
#include <sstream>

#include "scv/parser.hpp"
#include "scv/verify.hpp"
#include "support/enumerate.hpp"
#include "support/fixtures.hpp"
#include "support/randgen.hpp"

using namespace scv;
using namespace scv::testing;

namespace {
std::string read_file(const std::string& path) {
  std::ifstream in(path);
  REQUIRE(in);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}
const std::string kCorpus = SCV_CORPUS_DIR;

Vocabulary axiom_vocab() {  // 2 fields, 3 concepts
  Vocabulary v;
  v.declare_field("f");
  v.declare_field("g");
  for (const char* c : {"C1", "C2", "C3"}) v.declare_concept(c);
  v.declare_var("c0");
  return v;
}
}  // namespace

TEST_CASE("the axiom list follows the per-symbol counting scheme") {
  Vocabulary v = axiom_vocab();
  auto axioms = psi_m_axioms(v);
  size_t consts = v.const_order().size();  // null, T, F, c0
  CHECK(axioms.size() == 3 + 4 + consts + 2 * 2 + 2 + 3);
}

TEST_CASE("the minimal structure satisfies every axiom") {
  Vocabulary v = axiom_vocab();
  MemoryStructure m = minimal_structure(v, 2);
  for (const auto& ax : psi_m_axioms(v)) CHECK(eval_formula(ax, m));
}

TEST_CASE("axioms and validator agree on single-fault structures") {
  Vocabulary v = axiom_vocab();
  auto axioms = psi_m_axioms(v);
  auto axioms_hold = [&](const MemoryStructure& m) {
    for (const auto& ax : axioms)
      if (!eval_formula(ax, m)) return false;
    return true;
  };
  auto validator_holds = [&](const MemoryStructure& m) {
    for (const auto& viol : validate(m, v))
      if (viol.condition >= 3 && viol.condition <= 9) return false;
    return true;
  };

  MemoryStructure base = minimal_structure(v, 3);
  base.unary[names::kMemPool] = {4, 5};
  base.unary[names::kAlloc] = {3};
  base.unary["C1"] = {3};
  base.consts["c0"] = 3;
  REQUIRE(validate(base, v).empty());

  std::vector<MemoryStructure> cases;
  for (int i = 0; i < 6; ++i) cases.push_back(base);  // valid ones
  {
    MemoryStructure m = base;  // condition 3: Aux too small
    m.unary[names::kAux] = {0, 1};
    m.unary[names::kAddresses].insert(2);
    cases.push_back(m);
  }
  {
    MemoryStructure m = base;  // condition 4: overlap
    m.unary[names::kAddresses].insert(0);
    cases.push_back(m);
  }
  {
    MemoryStructure m = base;  // condition 5: double membership
    m.unary[names::kPossibleTargets].insert(3);
    cases.push_back(m);
  }
  {
    MemoryStructure m = base;  // condition 6
    m.consts["c0"] = 4;
    cases.push_back(m);
  }
  {
    MemoryStructure m = base;  // condition 7: partial field
    m.binary["f"].erase({3, 0});
    cases.push_back(m);
  }
  {
    MemoryStructure m = base;  // condition 7: pool target
    m.set_fun("f", 3, 4);
    cases.push_back(m);
  }
  {
    MemoryStructure m = base;  // condition 8
    m.set_fun("g", 4, 1);
    cases.push_back(m);
  }
  {
    MemoryStructure m = base;  // condition 9
    m.unary["C2"] = {5};
    cases.push_back(m);
  }
  int agreements = 0;
  for (const auto& m : cases) {
    CHECK(axioms_hold(m) == validator_holds(m));
    ++agreements;
  }
  CHECK(agreements == static_cast<int>(cases.size()));
}

TEST_CASE("an unsatisfiable body never has a counterexample") {
  Vocabulary v = axiom_vocab();
  Ct2Formula body;
  body.body = fo_false();
  for (int bound : {4, 5, 6}) {
    Verdict verdict = find_model(body, {}, v, bound);
    CHECK(!verdict.counterexample);
    CHECK(verdict.bound == bound);
  }
}

TEST_CASE("a trivial body finds the smallest valid structure") {
  Vocabulary v = axiom_vocab();
  Ct2Formula body;
  body.body = fo_true();
  Verdict verdict = find_model(body, {}, v, 6);
  REQUIRE(verdict.counterexample);
  CHECK(verdict.found_size == 4);
  CHECK(validate(*verdict.witness, v).empty());
}

TEST_CASE("searches below the minimum universe are rejected") {
  Vocabulary v = axiom_vocab();
  Ct2Formula body;
  body.body = fo_true();
  CHECK_THROWS_AS(find_model(body, {}, v, 3), PreconditionError);
}

TEST_CASE("model finding agrees with exhaustive enumeration") {
  Vocabulary v;
  v.declare_field("f");
  v.declare_concept("C");
  v.declare_concept("D");
  v.declare_var("c0");
  std::vector<std::string> formulas = {
      "C <= D",
      "!(C <= D)",
      "o:c0 <= C & ex f . D",
      "func(f & (top x C))",
      "ex f^- . C <= D | o:null",
      "C == !D & Alloc",
      "f \\ (o:c0 x top) <= (o:c0, o:null)",
      "!(top <= !C) && !(top <= !D) && C & D <= bot",
  };
  for (const auto& text : formulas) {
    LFormulaPtr f = parse_lformula(text, v);
    for (int size = 4; size <= 5; ++size) {
      bool exists = false;
      enumerate_structures(v, size, [&](const MemoryStructure& m) {
        exists = exists || eval_formula(f, m);
      });
      // The search is cumulative up to the bound, so compare cumulatively.
      bool exists_up_to = false;
      for (int s = 4; s <= size; ++s)
        enumerate_structures(v, s, [&](const MemoryStructure& m) {
          exists_up_to = exists_up_to || eval_formula(f, m);
        });
      Verdict verdict = find_model(Ct2Formula{fo_true(), {}}, {f}, v, size);
      CHECK(verdict.counterexample == exists_up_to);
      if (verdict.counterexample) CHECK(eval_formula(f, *verdict.witness));
    }
  }
}

TEST_CASE("the search is deterministic") {
  ProgramGraph g = parse_program(read_file(kCorpus + "/company_mutated.sv"));
  VerificationCondition vc = gen_vc(g, g.edge("ll", "ll"));
  Verdict a = find_model(vc.conjunction, {}, vc.vocab, 6);
  Verdict b = find_model(vc.conjunction, {}, vc.vocab, 6);
  REQUIRE(a.counterexample);
  REQUIRE(b.counterexample);
  CHECK(*a.witness == *b.witness);
}

TEST_CASE("witnesses re-validate and satisfy the conjunction") {
  ProgramGraph g = parse_program(read_file(kCorpus + "/company_mutated.sv"));
  VerificationCondition vc = gen_vc(g, g.edge("ll", "ll"));
  Verdict verdict = find_model(vc.conjunction, {}, vc.vocab, 6);
  REQUIRE(verdict.counterexample);
  CHECK(validate(*verdict.witness, vc.vocab).empty());
  CHECK(eval_ct2(vc.conjunction, *verdict.witness));
}

TEST_CASE("a skip self-loop is inductive once ext copies are pinned") {
  std::string text =
      "fields next;\nvars x;\nconcepts C;\n"
      "loc a init { shp: emp; cnt: top <= top; }\n"
      "loc b { shp: emp; cnt: o:x <= C; }\n"
      "edge a -> b { skip }\nedge b -> b { skip }\n";
  ProgramGraph g = parse_program(text);
  VerificationCondition vc = gen_vc(g, g.edge("b", "b"));
  // With the ext copy free, the annotation can be broken at will...
  Verdict free_ext = find_model(vc.conjunction, {}, vc.vocab, 5);
  CHECK(free_ext.counterexample);
  // ...pinning ext to the pre-state interpretation makes skip inductive.
  std::vector<LFormulaPtr> pin = {
      concept_equiv(atomic_concept("C_ext"), atomic_concept("C"))};
  Verdict pinned = find_model(vc.conjunction, pin, vc.vocab, 5);
  CHECK(!pinned.counterexample);
}

TEST_CASE("the sound image alone admits a detached cycle; the exact one does not") {
  // Search for a structure satisfying the DL image of ls(a, null) whose
  // concept holds at least three cells while the head points at null: the
  // extra cells must form cycles, which the exact image rejects.
  Vocabulary v;
  v.declare_field("next");
  v.declare_var("a");
  SlFormula ls;
  ls.chunks = {LsChunk{sl_var("a"), sl_null()}};
  Vocabulary vp = v;
  vp.declare_partition_concept("P1");
  ShapeDl alpha = shape_to_dl(ls, {"P1"}, v);
  std::vector<LFormulaPtr> extra = {
      alpha.formula,
      parse_lformula("(o:a, o:null) <= next", vp),
  };
  // Three cells in the chunk, via a counting conjunct on the exact side's
  // first-order form.
  Fo2Ptr at_least3 = fo_count(Fo2Formula::Cmp::AtLeast, 3, 'x', fo_unary("P1", var_x()));
  Verdict verdict = find_model(Ct2Formula{at_least3, {}}, extra, vp, 6);
  REQUIRE(verdict.counterexample);
  Ct2Formula beta = shape_to_ct2(ls, {"P1"}, v);
  CHECK(eval_fo2(to_fo2(alpha.formula), *verdict.witness));
  CHECK(!eval_ct2(beta, *verdict.witness));
}

TEST_CASE("check_program: single-location programs are vacuously verified") {
  std::string text = "fields next;\nvars x;\nloc a init { shp: emp; cnt: top <= top; }\n";
  ProgramGraph g = parse_program(text);
  ProgramReport report = check_program(g, 4);
  CHECK(report.verified);
  CHECK(report.edges.empty());
}

TEST_CASE("check_program discharges the corpus programs at a small bound") {
  ProgramGraph ok = parse_program(read_file(kCorpus + "/company.sv"));
  ProgramReport r1 = check_program(ok, 5);
  CHECK(r1.verified);

  ProgramGraph bad = parse_program(read_file(kCorpus + "/company_mutated.sv"));
  ProgramReport r2 = check_program(bad, 6);
  CHECK(!r2.verified);
  int refuted = 0;
  for (const auto& er : r2.edges)
    if (er.verdict.counterexample) {
      ++refuted;
      CHECK(er.from == "ll");
      CHECK(er.to == "ll");
      CHECK(er.classification == "concrete");
    }
  CHECK(refuted == 1);
}

TEST_CASE("parallel discharge returns the same verdicts") {
  ProgramGraph g = parse_program(read_file(kCorpus + "/company.sv"));
  ProgramReport seq = check_program(g, 5, 1);
  ProgramReport par = check_program(g, 5, 3);
  REQUIRE(seq.edges.size() == par.edges.size());
  for (size_t i = 0; i < seq.edges.size(); ++i)
    CHECK(seq.edges[i].verdict.counterexample == par.edges[i].verdict.counterexample);
  CHECK(seq.verified == par.verified);
}

TEST_CASE("reach simulation on an empty init set reports nothing") {
  ProgramGraph g = parse_program(read_file(kCorpus + "/company.sv"));
  ReachReport report = simulate_reach(g, {}, 6);
  CHECK(report.violations.empty());
  CHECK(report.states_checked == 0);
}

TEST_CASE("shape partitions bind to the evaluator's chunks") {
  ProgramGraph g = parse_program(read_file(kCorpus + "/company.sv"));
  MemoryStructure init = company_init(2, 1, {0, -1}, {0});
  auto bound = bind_shape_partitions(g.location("lb"), init, g.vocab);
  REQUIRE(bound.has_value());
  CHECK(bound->unary.at("Plb_1") == std::set<Elem>{3, 4});
  CHECK(bound->unary.at("Plb_2") == std::set<Elem>{5});
  CHECK(eval_formula(g.location("lb").content, *bound));
}
