#include "doctest.h"

#include "scv/parser.hpp"
#include "scv/wp.hpp"
#include "support/fixtures.hpp"
#include "support/randgen.hpp"

using namespace scv;
using namespace scv::testing;

namespace {
Vocabulary ext_company() { return company_vocab().with_ext(); }

LFormulaPtr p_as_ll(const std::string& pname) {
  Vocabulary v = company_vocab();
  v.declare_partition_concept(pname);
  return parse_lformula(
      pname + " & ex wrkFor_gho . o:null == " + pname + " & ex wrkFor . o:proj", v);
}
}  // namespace

TEST_CASE("instrumentation: skip gets only the abort-flag reset") {
  Vocabulary v = company_vocab();
  InstrumentedProgram ip = instrument(c_skip(), v);
  CHECK(ip.labels.empty());
  REQUIRE(ip.body->kind == Command::Kind::Seq);
  CHECK(ip.body->s1->kind == Command::Kind::Assign);
  CHECK(ip.body->s1->var == names::kAbort);
  CHECK(ip.body->s1->expr.kind == Expr::Kind::LitF);
  CHECK(ip.body->s2->kind == Command::Kind::Skip);
}

TEST_CASE("instrumentation: dispose runs under an allocatedness guard") {
  Vocabulary v = company_vocab();
  InstrumentedProgram ip = instrument(c_dispose("e"), v);
  const CommandPtr& guarded = ip.body->s2;
  REQUIRE(guarded->kind == Command::Kind::IfThenElse);
  CHECK(guarded->cond->kind == BoolExpr::Kind::Allocated);
  CHECK(guarded->cond->var == "e");
  CHECK(guarded->s1->kind == Command::Kind::Dispose);
  CHECK(guarded->s2->kind == Command::Kind::Assign);  // abo := T
  CHECK(guarded->s2->expr.kind == Expr::Kind::LitT);
}

TEST_CASE("instrumentation labels every new and field read, in order") {
  Vocabulary v = company_vocab();
  CommandPtr c = parse_command("proj := new; e := e.next; pHd.next := e", v);
  std::vector<std::string> fresh;
  c = desugar(c, fresh);
  InstrumentedProgram ip = instrument(c, v);
  REQUIRE(ip.labels.size() == 2);
  CHECK(ip.labels[0].kind == LabelInfo::Kind::New);
  CHECK(ip.labels[1].kind == LabelInfo::Kind::FieldRead);
  CHECK(ip.labels[0].name == "y1");
  CHECK(ip.labels[1].name == "y2");
}

TEST_CASE("back propagation through skip is the identity") {
  Vocabulary v = ext_company();
  LFormulaPtr f = p_as_ll("P1");
  CHECK(back_propagate(c_skip(), f, v) == f);
}

TEST_CASE("the field write rewrites the role to its correction") {
  // The displayed image of the loop body's assignment: the wrkFor role is
  // replaced by (wrkFor minus o_e's pairs) plus (o_e, o_proj).
  Vocabulary v = ext_company();
  LFormulaPtr f = p_as_ll("P1");
  CommandPtr assign = parse_command("e.wrkFor := proj", v);
  LFormulaPtr got = back_propagate(assign, f, v);

  RolePtr corrected =
      runion(rdiff(atomic_role("wrkFor"), rproduct(nominal("e"), top_concept())),
             rproduct(nominal("e"), nominal("proj")));
  ConceptPtr p1 = atomic_concept("P1");
  ConceptPtr lhs = cand(p1, exists(atomic_role("wrkFor_gho"), nominal(names::kNull)));
  ConceptPtr rhs = cand(p1, exists(corrected, nominal("proj")));
  CHECK(equal(got, land(concept_incl(lhs, rhs), concept_incl(rhs, lhs))));
}

TEST_CASE("the conditional yields the guarded disjunction from the table") {
  Vocabulary v = ext_company();
  LFormulaPtr f = p_as_ll("P1");
  std::vector<std::string> fresh;
  CommandPtr body = desugar(parse_command("if (e.wrkFor = null) then { e.wrkFor := proj }", v),
                            fresh);
  LFormulaPtr got = back_propagate(body, f, v);

  LFormulaPtr eps =
      concept_equiv(exists(rinverse(atomic_role("wrkFor")), nominal("e")), nominal(names::kNull));
  CommandPtr assign = parse_command("e.wrkFor := proj", v);
  LFormulaPtr expect = lor(land(eps, back_propagate(assign, f, v)), land(lnot(eps), f));
  CHECK(equal(got, expect));
}

TEST_CASE("a labeled field read pins the label to the read value") {
  Vocabulary v = ext_company();
  LFormulaPtr f = p_as_ll("P1");
  CommandPtr read = label_commands(parse_command("e := e.next", v), v);
  LFormulaPtr got = back_propagate(read, f, v);
  // The formula does not mention o_e, so only the pinning conjunct appears.
  LFormulaPtr pin =
      concept_equiv(exists(rinverse(atomic_role("next")), nominal("e")), nominal("y1"));
  CHECK(equal(got, land(f, pin)));
}

TEST_CASE("unlabeled reads and news are rejected") {
  Vocabulary v = ext_company();
  LFormulaPtr f = p_as_ll("P1");
  CHECK_THROWS_AS(back_propagate(parse_command("e := e.next", v), f, v), PreconditionError);
  CHECK_THROWS_AS(back_propagate(parse_command("e := new", v), f, v), PreconditionError);
}

TEST_CASE("allocation substitutes the label and extends Alloc") {
  Vocabulary v = ext_company();
  LFormulaPtr f = parse_lformula("o:proj <= Alloc", v);
  CommandPtr alloc = label_commands(parse_command("proj := new", v), v);
  LFormulaPtr got = back_propagate(alloc, f, v);
  LFormulaPtr expect =
      land(concept_incl(nominal("y1"), cor(atomic_concept(names::kAlloc), nominal("y1"))),
           concept_incl(nominal("y1"), cnot(atomic_concept(names::kAlloc))));
  CHECK(equal(got, expect));
}

TEST_CASE("dispose nulls exactly the fields the formula mentions") {
  Vocabulary v = ext_company();
  LFormulaPtr f = parse_lformula("o:eHd <= Alloc && ex next^- . o:e == o:null", v);
  LFormulaPtr got = back_propagate(c_dispose("e"), f, v);
  SymbolUse use;
  collect_symbols(got, use);
  CHECK(use.roles.count("next"));
  CHECK(!use.roles.count("wrkFor"));  // untouched: not in the formula
  // The Alloc correction is present.
  std::string text = to_text(got);
  CHECK(text.find("Alloc & !o:e") != std::string::npos);
  CHECK(text.find("(o:e, o:null)") != std::string::npos);
}

TEST_CASE("ext renaming touches rem symbols and only them") {
  Vocabulary v = ext_company();
  LFormulaPtr f = parse_lformula("ELst_gho & ELst <= ex wrkFor_gho . o:null | ex wrkFor . top",
                                 v);
  LFormulaPtr got = ext_rename(f, v);
  SymbolUse use;
  collect_symbols(got, use);
  CHECK(use.concepts.count("ELst_ext"));
  CHECK(!use.concepts.count("ELst"));
  CHECK(use.concepts.count("ELst_gho"));       // ghosts stay
  CHECK(use.roles.count("wrkFor"));            // fields stay
  CHECK(use.roles.count("wrkFor_gho"));

  // Formulas without rem symbols propagate identically with and without ext.
  LFormulaPtr plain = parse_lformula("ex wrkFor^- . o:e == o:null", v);
  CommandPtr w = parse_command("e.wrkFor := proj", v);
  CHECK(equal(back_propagate_ext(w, plain, v), back_propagate(w, plain, v)));
}

TEST_CASE("the edge transformer starts from the abort-flag reset") {
  Vocabulary v = ext_company();
  LFormulaPtr f = p_as_ll("P1");
  WpResult wr = wp_transform(c_skip(), f, v);
  // abo := F turns the strengthened (o_abo == o_F) into the trivial (F == F);
  // the rest is the ext image of the formula.
  LFormulaPtr expect = land(ext_rename(f, v),
                            concept_equiv(nominal(names::kFalse), nominal(names::kFalse)));
  CHECK(equal(wr.formula, expect));
}

TEST_CASE("instrumented programs never abort and track abortion in abo") {
  Vocabulary v = company_vocab();
  Rng rng(23);
  int aborted = 0, completed = 0;
  for (int i = 0; i < 500; ++i) {
    MemoryStructure m = random_structure(v, rng, 7);
    m.consts[names::kAbort] = m.false_elem();
    CommandPtr plain = label_commands(random_program(v, rng, 6), v);
    RunOutcome direct = run(plain, m, v);
    if (direct.kind == RunOutcome::Kind::OutOfReserve) continue;

    Vocabulary vi = v;
    vi.declare_var(names::kAbort);
    InstrumentedProgram ip = instrument(plain, vi);
    RunOutcome shadow = run(ip.body, m, vi);
    if (shadow.kind == RunOutcome::Kind::OutOfReserve) continue;
    REQUIRE(shadow.kind == RunOutcome::Kind::Ok);

    bool abo = shadow.result.const_of(names::kAbort) == m.true_elem();
    CHECK(abo == (direct.kind == RunOutcome::Kind::Abort));
    if (direct.kind == RunOutcome::Kind::Abort) {
      ++aborted;
    } else {
      ++completed;
      // On completing runs the instrumented body computes the same state.
      MemoryStructure same = shadow.result;
      same.consts[names::kAbort] = m.consts.at(names::kAbort);
      CHECK(same == direct.result);
    }
  }
  CHECK(aborted > 20);
  CHECK(completed > 20);
}
