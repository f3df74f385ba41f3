#include "doctest.h"
#include "fixtures.hpp"
#include "reedy/qh.hpp"

using namespace reedy;

TEST_CASE("both examples are quasi-hereditary with an exact Borel subalgebra") {
  for (const char* name : {"qh", "delta1"}) {
    auto e = fx::example(name);
    QhReport q = verify_quasi_hereditary(e.cat, e.rs);
    CHECK(q.verdict);
    CHECK(q.order == std::vector<std::size_t>{1, 0});
    CHECK(q.end_simple == std::vector<std::size_t>{1, 1});
    BorelReport b = verify_exact_borel(e.cat, e.rs, 10, 3);
    CHECK(b.report.pass);
    CHECK(b.exact_samples == 10);
  }
}

TEST_CASE("qh multiplicities [Delta(i) : L(j)]") {
  auto e = fx::example("qh");
  QhReport q = verify_quasi_hereditary(e.cat, e.rs);
  REQUIRE(q.entries.size() == 2);
  CHECK(q.entries[0].multiplicities == std::vector<std::size_t>{1, 1});
  CHECK(q.entries[1].multiplicities == std::vector<std::size_t>{0, 1});
}

TEST_CASE("algebra round trip") {
  for (const char* name : {"qh", "delta1"}) {
    auto e = fx::example(name);
    AlgebraWithIdempotents A = algebra_from_category(*e.cat, e.rs);
    CHECK(A.dim == e.cat->total_dim());
    CHECK(verify_algebra(A).pass);
    CHECK(verify_reedy_algebra(A).pass);
    auto [C2, rs2] = category_from_algebra(A);
    CHECK(structurally_equal(*e.cat, *C2));
    CHECK(verify_reedy(*C2, rs2).pass);
    CHECK(verify_algebra_isomorphism(algebra_from_category(*C2, rs2), A, round_trip_basis(A)).pass);
  }
}

TEST_CASE("the whole category as C- is not a Borel subalgebra") {
  auto e = fx::example("qh");
  ReedyStructure rs = e.rs;
  for (std::size_t c = 0; c < 2; ++c)
    for (std::size_t d = 0; d < 2; ++d) rs.minus[c][d] = Matrix::identity(e.cat->field, e.cat->dim(c, d));
  BorelReport b = verify_exact_borel(e.cat, rs, 2, 1);
  CHECK_FALSE(b.standards_simple);
  CHECK_FALSE(b.report.pass);
}
