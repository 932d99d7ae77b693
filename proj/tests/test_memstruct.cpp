#include "doctest.h"

#include "scv/memstruct.hpp"
#include "support/fixtures.hpp"

using namespace scv;

namespace {
Vocabulary tiny_vocab() {
  Vocabulary v;
  v.declare_field("next");
  v.declare_var("x");
  v.declare_concept("C");
  return v;
}
}  // namespace

TEST_CASE("minimal structure is valid") {
  Vocabulary v = tiny_vocab();
  MemoryStructure m = minimal_structure(v, 1);
  CHECK(validate(m, v).empty());
  // Idempotent and total: a second pass agrees.
  CHECK(validate(m, v).empty());
}

TEST_CASE("constant inside the pool violates condition 6") {
  Vocabulary v = tiny_vocab();
  MemoryStructure m = minimal_structure(v, 1);
  m.consts["x"] = 3;  // the single pool cell
  auto vs = validate(m, v);
  REQUIRE(vs.size() == 1);
  CHECK(vs[0].condition == 6);
}

TEST_CASE("field edge into the pool violates condition 7") {
  Vocabulary v = tiny_vocab();
  MemoryStructure m = minimal_structure(v, 2);
  m.unary[names::kMemPool].erase(3);
  m.unary[names::kAlloc].insert(3);
  m.set_fun("next", 3, 4);  // 4 is still a pool cell
  bool found = false;
  for (const auto& viol : validate(m, v)) found = found || viol.condition == 7;
  CHECK(found);
}

TEST_CASE("allocate moves a pool cell into Alloc") {
  Vocabulary v = tiny_vocab();
  MemoryStructure m = minimal_structure(v, 1);
  MemoryStructure a = allocate(m, 3);
  CHECK(a.alloc().count(3));
  CHECK(a.mem_pool().empty());
  // The cell is gone from the pool, so a second allocation fails.
  CHECK_THROWS_AS(allocate(a, 3), PreconditionError);
}

TEST_CASE("allocate preserves validity while reserve remains") {
  Vocabulary v = tiny_vocab();
  MemoryStructure m = minimal_structure(v, 2);
  MemoryStructure a = allocate(m, 3);
  CHECK(validate(a, v).empty());
}

TEST_CASE("ext copies mirror the post state and leave the pre state alone") {
  Vocabulary v = tiny_vocab();
  Vocabulary ext = v.with_ext();
  MemoryStructure pre = minimal_structure(v, 2);
  pre.unary["C"] = {0};
  MemoryStructure post = pre;
  post.unary["C"] = {0, 1};
  MemoryStructure got = extend_with_ext(pre, post, v);
  CHECK(got.unary.at("C") == std::set<Elem>{0});
  CHECK(got.unary.at("C_ext") == std::set<Elem>{0, 1});
  CHECK(got.consts == pre.consts);
  CHECK(got.binary == pre.binary);
  CHECK(validate(got, ext).empty());

  // Fields and ghost symbols never gain ext twins.
  CHECK(!got.binary.count("next_ext"));
  Vocabulary vg = tiny_vocab();
  vg.declare_ghost("C");
  for (const auto& r : vg.rem_symbols()) CHECK(r != names::ghost("C"));
}

TEST_CASE("ext copy with no rem symbols is the identity") {
  Vocabulary v;
  v.declare_field("next");
  MemoryStructure pre = minimal_structure(v, 1);
  CHECK(extend_with_ext(pre, pre, v) == pre);
}

TEST_CASE("ext copy rejects universe mismatches") {
  Vocabulary v = tiny_vocab();
  MemoryStructure pre = minimal_structure(v, 1);
  MemoryStructure post = minimal_structure(v, 2);
  CHECK_THROWS_AS(extend_with_ext(pre, post, v), PreconditionError);
}

TEST_CASE("company fixture states are valid") {
  Vocabulary v = testing::company_vocab();
  for (const auto& m : testing::company_inits()) CHECK(validate(m, v).empty());
}
