#pragma once

#include <cstddef>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include "reedy/matrix.hpp"
#include "reedy/report.hpp"

namespace reedy {

struct Radical;

// Per-(c,d) family of subspaces of Hom(c,d), each given by a column basis.
using SpanTable = std::vector<std::vector<Matrix>>;

// A named morphism with coordinates in Hom(source, target).
struct Generator {
  std::string name;
  std::size_t source = 0, target = 0;
  Matrix coords;
};

// Finite k-linear category. comp[c][d][e] maps Hom(d,e) (x) Hom(c,d) -> Hom(c,e);
// the input column for (g, f) is g * dim(c,d) + f.
class LinearCategory {
 public:
  Field field;
  std::vector<std::string> objects;
  std::vector<std::vector<std::vector<std::string>>> labels;  // [c][d][i]
  std::vector<Matrix> identity;                               // column in Hom(c,c)
  std::vector<std::vector<std::vector<Matrix>>> comp;
  std::vector<Generator> generators;
  // Object order used when choosing generators of modules (ascending degree
  // when a Reedy structure is known).
  std::vector<std::size_t> generation_order;

  std::size_t size() const { return objects.size(); }
  std::size_t dim(std::size_t c, std::size_t d) const { return labels[c][d].size(); }
  std::size_t total_dim() const;
  std::size_t object_index(const std::string& name) const;

  Matrix zero_hom(std::size_t c, std::size_t d) const { return Matrix(field, dim(c, d), 1); }
  Matrix basis_vector(std::size_t c, std::size_t d, std::size_t i) const {
    return Matrix::unit_column(field, dim(c, d), i);
  }
  // g in Hom(d,e), f in Hom(c,d) as columns; returns g o f.
  Matrix compose(std::size_t c, std::size_t d, std::size_t e, const Matrix& g, const Matrix& f) const;
  // Hom(c,d) -> Hom(c,e), f |-> g o f
  Matrix post_matrix(std::size_t c, std::size_t d, std::size_t e, const Matrix& g) const;
  // Hom(d,e) -> Hom(c,e), g |-> g o f
  Matrix pre_matrix(std::size_t c, std::size_t d, std::size_t e, const Matrix& f) const;

  std::vector<std::size_t> order() const;

  // Filled lazily by jacobson_radical(); copies start empty.
  struct RadicalCache {
    mutable std::mutex mutex;
    mutable std::shared_ptr<const Radical> value;
    RadicalCache() = default;
    RadicalCache(const RadicalCache&) {}
    RadicalCache& operator=(const RadicalCache&) {
      value.reset();
      return *this;
    }
  };
  RadicalCache radical_cache;
};

using CatPtr = std::shared_ptr<const LinearCategory>;

Report verify_category(const LinearCategory& cat);

struct ReedyStructure {
  std::vector<int> degree;
  SpanTable plus, minus;

  int max_degree() const;
};

// Degree function plus the subcategories generated by the given morphisms
// (closure under composition, identities included).
ReedyStructure reedy_from_generators(const LinearCategory& cat, std::vector<int> degree,
                                     const std::vector<Generator>& plus,
                                     const std::vector<Generator>& minus);
// Smallest family of subspaces containing the seeds and identities and closed under composition.
SpanTable close_under_composition(const LinearCategory& cat, const SpanTable& seeds);

Report verify_reedy(const LinearCategory& cat, const ReedyStructure& rs);

// Reedy factorization data for Hom(c,d): the columns of `map` are the
// composites p o q for p in C+(e,d), q in C-(c,e), e running over objects.
struct Factorization {
  struct Term {
    std::size_t via;
    std::size_t plus_index, minus_index;
  };
  std::vector<Term> terms;
  Matrix map;
  Matrix inverse;  // valid only when the map is bijective
  bool bijective = false;
};
Factorization reedy_factorization(const LinearCategory& cat, const ReedyStructure& rs, std::size_t c,
                                  std::size_t d);

struct DegreeIdeal {
  int alpha = 0;
  SpanTable span;
};
DegreeIdeal degree_ideal(const LinearCategory& cat, const ReedyStructure& rs, int alpha);
bool is_two_sided_ideal(const LinearCategory& cat, const SpanTable& span);

struct QuotientCategory {
  CatPtr cat;
  ReedyStructure rs;
  std::vector<std::size_t> kept;  // original indices of surviving objects
  bool empty = false;
};
QuotientCategory quotient_category(const LinearCategory& cat, const ReedyStructure& rs, int alpha);

std::shared_ptr<LinearCategory> opposite(const LinearCategory& cat);
ReedyStructure opposite(const ReedyStructure& rs);
bool structurally_equal(const LinearCategory& a, const LinearCategory& b);
bool structurally_opposite(const LinearCategory& a, const LinearCategory& b);

// Linear functor between finite categories: hom[a][b] maps Hom(a,b) into Hom(F a, F b).
struct LinearFunctor {
  CatPtr source, target;
  std::vector<std::size_t> object_map;
  std::vector<std::vector<Matrix>> hom;
};

// Full subcategory on the listed objects, with its inclusion.
LinearFunctor full_subcategory(const CatPtr& cat, const std::vector<std::size_t>& objects);
// Wide subcategory with the given hom subspaces (must be closed under composition).
LinearFunctor wide_subcategory(const CatPtr& cat, const SpanTable& spans, const std::string& suffix);
// G o F
LinearFunctor compose_functors(const LinearFunctor& G, const LinearFunctor& F);
// F viewed between the opposite categories.
LinearFunctor opposite_functor(const LinearFunctor& F);
// Restriction of a Reedy structure along a full subcategory inclusion.
ReedyStructure restrict_reedy(const LinearFunctor& inc, const ReedyStructure& rs);

// C (x) L: objects are pairs (c, v) indexed c * |L| + v; Hom = C(c,d) (x) L(v,w).
std::shared_ptr<LinearCategory> tensor_category(const LinearCategory& a, const LinearCategory& b);
ReedyStructure tensor_reedy(const LinearCategory& a, const ReedyStructure& ra, const LinearCategory& b,
                            const ReedyStructure& rb);

// Objects sorted by (degree, index).
std::vector<std::size_t> ascending_degree_order(const ReedyStructure& rs);
std::shared_ptr<LinearCategory> with_order(const LinearCategory& cat, std::vector<std::size_t> order);

// Identity-only category on n objects.
std::shared_ptr<LinearCategory> discrete_category(const Field& f, std::size_t n);

}  // namespace reedy
