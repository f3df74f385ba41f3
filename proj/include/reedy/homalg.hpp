#pragma once

#include <optional>
#include <stdexcept>
#include <vector>

#include "reedy/repmod.hpp"

namespace reedy {

class ResolutionTruncated : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// W (x)_C X for a right module W (left over the opposite) and a left module X.
struct TensorProduct {
  std::size_t dim = 0;
  Cokernel ck;
  std::vector<std::size_t> offset;  // block W(c) (x) X(c) starts at offset[c]
};
TensorProduct tensor_over_C(const CatModule& W, const CatModule& X);
// Map W (x) X -> W' (x) X' induced by a: W -> W' and b: X -> X'.
Matrix tensor_map(const TensorProduct& src, const TensorProduct& dst, const CatModule& W, const CatModule& X,
                  const ModuleMap& a, const ModuleMap& b);

struct HomOverC {
  std::size_t dim = 0;
  std::vector<ModuleMap> basis;
};
HomOverC hom_over_C(const CatModule& U, const CatModule& X);

// Covers by sums of representables whose generators span the top X / JX,
// chosen object by object in the category's generation order.
struct Resolution {
  std::vector<std::vector<std::size_t>> gens;  // P_n = (+)_j C(gens[n][j], -)
  std::vector<CatModule> modules;               // P_n
  // images[n][j] lies in P_{n-1}(gens[n][j]) (in X for n = 0)
  std::vector<std::vector<Matrix>> images;
  std::vector<ModuleMap> differentials;  // d_n : P_n -> P_{n-1}, d_0 : P_0 -> X
  bool truncated = false;
  std::size_t cap = 0;
  bool exact = true;  // every cover surjective and d_{n-1} d_n = 0

  std::size_t length() const { return modules.empty() ? 0 : modules.size() - 1; }
};
std::vector<std::pair<std::size_t, Matrix>> top_generators(const CatModule& X);
Resolution projective_resolution(const CatModule& X, std::size_t cap);
Resolution projective_resolution(const CatModule& X);  // cap = total dimension of the category

std::size_t ext(const Resolution& resX, const CatModule& Y, std::size_t n);
std::size_t ext(const CatModule& X, const CatModule& Y, std::size_t n);
// Tor_n(W, X) from a resolution of the right module W.
std::size_t tor(const Resolution& resW, const CatModule& X, std::size_t n);
std::size_t tor(const CatModule& W, const CatModule& X, std::size_t n);
// Tor_n(W, X) from a resolution of X instead; used to cross-check balance.
std::size_t tor_via_left(const CatModule& W, const Resolution& resX, std::size_t n);

// Lifting property of l: A -> B against r: C -> D.
bool has_left_lifting(const CatModule& A, const CatModule& B, const ModuleMap& l, const CatModule& C,
                      const CatModule& D, const ModuleMap& r);

// table[c][d][n]
using DimTable = std::vector<std::vector<std::vector<std::size_t>>>;
DimTable ext_table(const CatPtr& cat, const ReedyStructure& rs, std::size_t max_n);
DimTable tor_table(const CatPtr& cat, const ReedyStructure& rs, std::size_t max_n);

}  // namespace reedy
