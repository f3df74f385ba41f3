#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "reedy/homalg.hpp"

namespace reedy {

// Finite-dimensional algebra with a complete set of orthogonal idempotents.
// mult has column i * dim + j equal to b_i b_j.
struct AlgebraWithIdempotents {
  Field field;
  std::size_t dim = 0;
  Matrix mult;
  std::vector<Matrix> idempotents;
  std::vector<int> degree;
  Matrix plus, minus;  // column bases of A+ and A-
  std::vector<std::string> labels;

  Matrix product(const Matrix& x, const Matrix& y) const { return mult * kron(x, y); }
  Matrix left_mult(const Matrix& x) const;
  Matrix right_mult(const Matrix& y) const;
  Matrix unit() const;
  // Subspace e_j S e_i of the span S.
  Matrix corner(const Matrix& S, std::size_t i, std::size_t j) const;
};

// Total algebra with the identities as idempotents; A+ and A- from the Reedy structure.
AlgebraWithIdempotents algebra_from_category(const LinearCategory& cat, const ReedyStructure& rs);
// Hom(e_i, e_j) := e_j A e_i.
std::pair<std::shared_ptr<LinearCategory>, ReedyStructure> category_from_algebra(const AlgebraWithIdempotents& a);

Report verify_algebra(const AlgebraWithIdempotents& a);
Report verify_reedy_algebra(const AlgebraWithIdempotents& a);
// Checks that T (columns: images of the basis of `src` in `dst`) is an isomorphism of
// algebras matching idempotents and the subalgebras A+ and A-.
Report verify_algebra_isomorphism(const AlgebraWithIdempotents& src, const AlgebraWithIdempotents& dst,
                                  const Matrix& T);
// The basis change from algebra_from_category(category_from_algebra(a)) back to a.
Matrix round_trip_basis(const AlgebraWithIdempotents& a);

struct QhEntry {
  std::size_t object = 0;
  std::vector<std::size_t> multiplicities;  // [Delta(i) : L(j)]
  bool multiplicity_ok = false;
  bool kernel_filtered = false;
  std::string detail;
};
struct QhReport {
  std::vector<std::size_t> order;  // objects by decreasing degree: L(i) <| L(j) iff deg i > deg j
  std::vector<QhEntry> entries;
  std::vector<std::size_t> end_simple;  // dim End(L_c)
  bool verdict = false;
  std::vector<std::string> failures;
};
QhReport verify_quasi_hereditary(const CatPtr& cat, const ReedyStructure& rs);

struct BorelReport {
  Report report;
  bool standards_simple = false;   // (i)
  std::size_t exact_samples = 0;   // (ii) passing samples
  std::size_t samples = 0;
  bool induced_standards = false;  // (iii)
};
BorelReport verify_exact_borel(const CatPtr& cat, const ReedyStructure& rs, std::size_t samples = 25,
                               std::uint64_t seed = 7);

}  // namespace reedy
