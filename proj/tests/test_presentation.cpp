#include "doctest.h"
#include "oracles.hpp"
#include "reedy/presentation.hpp"

using namespace reedy;

namespace {
const std::string kExamples = REEDY_SOURCE_DIR "/examples/";
}

TEST_CASE("qh has the dimension counted by the monomial path oracle") {
  auto C = build_linear_category(load_presentation(kExamples + "qh.reedy"));
  oracle::MonomialQuiver q{2, {{0, 1}, {1, 0}}, {{0, 1}}};  // a then b vanishes
  CHECK(C->total_dim() == oracle::count_paths(q, 10));
  CHECK(C->total_dim() == 5);
  CHECK(verify_category(*C).pass);
}

TEST_CASE("linear simplices: Hom dimensions are counts of monotone maps") {
  auto C = build_linear_category(load_presentation(kExamples + "delta1.reedy"));
  for (std::size_t m = 0; m < 2; ++m)
    for (std::size_t n = 0; n < 2; ++n) CHECK(C->dim(m, n) == oracle::monotone_maps(m, n));
  CHECK(C->total_dim() == 7);
}

TEST_CASE("A3 with one monomial relation") {
  const char* text = R"(
[field]     kind=GF p=7
[quiver]    vertices = u0 u1 u2
            arrow x : u0 -> u1
            arrow y : u1 -> u2
[relations] y*x
[limits]    maxlen = 3
)";
  auto C = build_linear_category(parse_presentation(text));
  oracle::MonomialQuiver q{3, {{0, 1}, {1, 2}}, {{0, 1}}};
  CHECK(C->total_dim() == oracle::count_paths(q, 10));
  CHECK(C->dim(0, 2) == 0);
  CHECK(is_left_rooted(parse_presentation(text).quiver));
}

TEST_CASE("relation-free cycle fails the bound certification") {
  PresentationFile p = load_presentation(kExamples + "qh_free.reedy");
  for (std::size_t maxlen = 1; maxlen <= 6; ++maxlen) {
    p.maxlen = maxlen;
    CHECK_THROWS_AS(build_linear_category(p), BoundInsufficient);
  }
  CHECK_FALSE(is_left_rooted(p.quiver));
}

TEST_CASE("parse errors carry positions") {
  CHECK_THROWS_AS(parse_presentation("[quiver] vertices = a\n arrow x : a -> zz\n"), ParseError);
  CHECK_THROWS_AS(parse_presentation("[field] kind=GF p=8\n[quiver] vertices = a\n"), std::exception);
  try {
    parse_presentation("[field] kind=Q\n[quiver] vertices = a\n[relations] q*q\n[limits] maxlen = 2\n");
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(e.line == 3);
  }
}

TEST_CASE("swapped degrees fail the Reedy axioms") {
  PresentationFile p = load_presentation(kExamples + "qh_swapped.reedy");
  auto C = build_linear_category(p);
  Report r = verify_reedy(*C, build_reedy_structure(p, *C));
  CHECK_FALSE(r.pass);
  REQUIRE_FALSE(r.failures.empty());
  CHECK(r.failures.front().rfind("(c)", 0) == 0);
}

TEST_CASE("Reedy factorization of Hom([1],[1]) in the linear simplices") {
  PresentationFile p = load_presentation(kExamples + "delta1.reedy");
  auto C = build_linear_category(p);
  ReedyStructure rs = build_reedy_structure(p, *C);
  Factorization f = reedy_factorization(*C, rs, 1, 1);
  CHECK(f.bijective);
  std::size_t via0 = 0;
  for (auto& t : f.terms) via0 += t.via == 0;
  CHECK(f.terms.size() == 3);
  CHECK(via0 == 2);
}

TEST_CASE("GF(101) variants match the rational dimensions") {
  auto Cq = build_linear_category(load_presentation(kExamples + "qh.reedy"));
  auto Cp = build_linear_category(load_presentation(kExamples + "qh_gf101.reedy"));
  auto Dq = build_linear_category(load_presentation(kExamples + "delta1.reedy"));
  auto Dp = build_linear_category(load_presentation(kExamples + "delta1_gf101.reedy"));
  for (std::size_t c = 0; c < 2; ++c)
    for (std::size_t d = 0; d < 2; ++d) {
      CHECK(Cq->dim(c, d) == Cp->dim(c, d));
      CHECK(Dq->dim(c, d) == Dp->dim(c, d));
    }
}
