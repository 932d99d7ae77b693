#include "doctest.h"

#include <fstream>
#include <sstream>

#include "scv/parser.hpp"
#include "scv/prog.hpp"
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
}  // namespace

TEST_CASE("one-armed conditionals desugar to a skip else-branch") {
  Vocabulary v = company_vocab();
  CommandPtr c = parse_command("if (e = null) then { skip }", v);
  std::vector<std::string> fresh;
  CommandPtr d = desugar(c, fresh);
  REQUIRE(d->kind == Command::Kind::IfThenElse);
  CHECK(d->s2->kind == Command::Kind::Skip);
  CHECK(fresh.empty());
  // Already-desugared programs come back unchanged (shared subtrees).
  CHECK(desugar(d, fresh) == d);
}

TEST_CASE("field-to-field assignments desugar through a fresh temporary") {
  Vocabulary v = company_vocab();
  CommandPtr c = parse_command("eHd.next := e.wrkFor", v);
  std::vector<std::string> fresh;
  CommandPtr d = desugar(c, fresh);
  REQUIRE(fresh == std::vector<std::string>{"tmp_0"});
  REQUIRE(d->kind == Command::Kind::Seq);
  CHECK(d->s1->kind == Command::Kind::Assign);
  CHECK(d->s1->var == "tmp_0");
  CHECK(d->s2->kind == Command::Kind::FieldAssign);
  CHECK(d->s2->expr.var == "tmp_0");
}

TEST_CASE("skip is the identity") {
  Vocabulary v = company_vocab();
  MemoryStructure m = company_init(1, 1, {0}, {});
  RunOutcome out = run(c_skip(), m, v);
  REQUIRE(out.ok());
  CHECK(out.result == m);
}

TEST_CASE("disposing an unallocated cell aborts") {
  Vocabulary v = company_vocab();
  MemoryStructure m = company_init(1, 0, {-1}, {});
  m.consts["e"] = 0;  // null: never allocated
  RunOutcome out = run(parse_command("dispose(e)", v), m, v);
  CHECK(out.kind == RunOutcome::Kind::Abort);
}

TEST_CASE("allocation initializes the variable and writes reach the cell") {
  Vocabulary v = company_vocab();
  MemoryStructure m = company_init(0, 0, {}, {}, 1);
  CommandPtr c = label_commands(parse_command("e := new; e.next := eHd", v), v);
  RunOutcome out = run(c, m, v);
  REQUIRE(out.ok());
  Elem cell = out.result.const_of("e");
  CHECK(out.result.alloc().count(cell));
  CHECK(out.result.mem_pool().empty());
  CHECK(out.result.fun_value("next", cell) == out.result.const_of("eHd"));
  // Conditions other than the exhausted reserve still hold.
  for (const auto& viol : validate(out.result, v)) CHECK(viol.condition == 10);
}

TEST_CASE("allocation reports a distinguished out-of-reserve outcome") {
  Vocabulary v = company_vocab();
  MemoryStructure m = company_init(0, 0, {}, {}, 1);
  RunOutcome out = run(parse_command("e := new; proj := new", v), m, v);
  CHECK(out.kind == RunOutcome::Kind::OutOfReserve);
}

TEST_CASE("the loop program assigns both idle employees along a full path") {
  ProgramGraph g = parse_program(read_file(kCorpus + "/company.sv"));
  MemoryStructure m = company_init(2, 1, {-1, -1}, {});
  const GraphEdge* enter = &g.edge("lb", "ll");
  const GraphEdge* loop = &g.edge("ll", "ll");
  const GraphEdge* leave = &g.edge("ll", "le");

  // Empty path: identity.
  RunOutcome idp = run_path(g, {}, m);
  REQUIRE(idp.ok());
  CHECK(idp.result == m);

  RunOutcome out = run_path(g, {enter, loop, loop, leave}, m);
  REQUIRE(out.ok());
  Elem proj = out.result.const_of("proj");
  CHECK(out.result.fun_value("wrkFor", 3) == proj);
  CHECK(out.result.fun_value("wrkFor", 4) == proj);

  // One loop iteration cannot exit: the leave assume fails.
  CHECK(run_path(g, {enter, loop, leave}, m).kind == RunOutcome::Kind::Abort);
}

TEST_CASE("the company file parses to the expected graph") {
  ProgramGraph g = parse_program(read_file(kCorpus + "/company.sv"));
  CHECK(g.locations.size() == 3);
  CHECK(g.init == "lb");
  REQUIRE(g.edges.size() == 3);
  CHECK(g.edges[0].from == "lb");
  CHECK(g.edges[1].from == "ll");
  CHECK(g.edges[1].to == "ll");
  CHECK(g.edges[2].to == "le");
}

TEST_CASE("edges into the initial location are rejected") {
  std::string text =
      "vars x;\nfields next;\n"
      "loc a init { shp: emp; cnt: top <= top; }\n"
      "loc b { shp: emp; cnt: top <= top; }\n"
      "edge a -> b { skip }\nedge b -> a { skip }\n";
  CHECK_THROWS_AS(parse_program(text), ParseError);
}

TEST_CASE("empty edge blocks mean skip") {
  std::string text =
      "vars x;\nfields next;\n"
      "loc a init { shp: emp; cnt: top <= top; }\n"
      "loc b { shp: emp; cnt: top <= top; }\n"
      "edge a -> b { }\n";
  ProgramGraph g = parse_program(text);
  CHECK(g.edges[0].code->kind == Command::Kind::Skip);
}

TEST_CASE("runs preserve structure validity and never touch ghosts") {
  Vocabulary v = company_vocab();
  Rng rng(7);
  int completed = 0;
  for (int i = 0; i < 300; ++i) {
    MemoryStructure m = random_structure(v, rng, 7);
    CommandPtr c = label_commands(random_program(v, rng, 6), v);
    RunOutcome out = run(c, m, v);
    if (!out.ok()) continue;
    ++completed;
    for (const auto& viol : validate(out.result, v)) CHECK(viol.condition == 10);
    for (const char* ghost : {"ELst_gho", "PLst_gho"})
      CHECK(out.result.unary.at(ghost) == m.unary.at(ghost));
    CHECK(out.result.binary.at("wrkFor_gho") == m.binary.at("wrkFor_gho"));
  }
  CHECK(completed > 30);
}

TEST_CASE("runs with full witness choices are deterministic and complete") {
  Vocabulary v = company_vocab();
  Rng rng(11);
  for (int i = 0; i < 200; ++i) {
    MemoryStructure m = random_structure(v, rng, 7);
    CommandPtr c = label_commands(random_program(v, rng, 6), v);
    Choices rec;
    RunOptions record;
    record.recorder = &rec;
    RunOutcome plain = run(c, m, v, record);
    if (!plain.ok()) continue;
    // Replaying the recorded choices reproduces the same structure.
    RunOptions replay;
    replay.choices = &rec;
    RunOutcome again = run(c, m, v, replay);
    REQUIRE(again.ok());
    CHECK(again.result == plain.result);
  }
}
