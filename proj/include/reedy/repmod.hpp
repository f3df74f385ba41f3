#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "reedy/category.hpp"

namespace reedy {

enum class Side { Left, Right };

// A k-linear functor cat -> Vect. Right modules over C are stored as left
// modules over opposite(C) with side = Right, so every algorithm below is
// written once for left modules.
struct CatModule {
  CatPtr cat;
  Side side = Side::Left;
  std::vector<std::size_t> dims;
  // action[c][d][i] : X(c) -> X(d) for the i-th basis morphism of Hom(c,d)
  std::vector<std::vector<std::vector<Matrix>>> action;

  const Field& field() const { return cat->field; }
  std::size_t size() const { return dims.size(); }
  std::size_t total_dim() const;
  bool is_zero() const { return total_dim() == 0; }
  // X(f) for f given by coordinates in Hom(c,d)
  Matrix act(std::size_t c, std::size_t d, const Matrix& f) const;
  std::string dims_str() const;
};

CatModule zero_module(const CatPtr& cat, Side side = Side::Left);
Report verify_module(const CatModule& X);

// Natural transformation, one component per object.
struct ModuleMap {
  std::vector<Matrix> comp;
};

ModuleMap identity_map(const CatModule& X);
ModuleMap zero_map(const CatModule& X, const CatModule& Y);
ModuleMap compose(const ModuleMap& g, const ModuleMap& f);
ModuleMap add(const ModuleMap& a, const ModuleMap& b);
ModuleMap scale(const ModuleMap& a, const Scalar& s);
bool is_natural(const CatModule& X, const CatModule& Y, const ModuleMap& f);
bool is_injective(const ModuleMap& f);
bool is_surjective(const ModuleMap& f, const CatModule& Y);
bool is_isomorphism(const ModuleMap& f);

// Concatenation of all components, row-major; used to compare maps as vectors.
Matrix flatten(const ModuleMap& f);

// Representable functors: Left gives C(c,-), Right gives C(-,c).
CatModule representable(const CatPtr& cat, std::size_t c, Side side);
// Opposite category together with right-module bookkeeping.
CatPtr opposite_ptr(const CatPtr& cat);

// Basis of Hom(X, Y).
std::vector<ModuleMap> hom_space(const CatModule& X, const CatModule& Y);

// Per-object column bases of a subspace family.
struct Submodule {
  std::vector<Matrix> basis;
  std::size_t total_dim() const;
};

Submodule zero_submodule(const CatModule& X);
Submodule full_submodule(const CatModule& X);
Submodule generated_submodule(const CatModule& X, const std::vector<Matrix>& seeds);
Submodule submodule_sum(const Submodule& a, const Submodule& b);
Submodule image(const ModuleMap& f, const CatModule& Y);
Submodule kernel(const ModuleMap& f, const CatModule& X);
bool is_submodule(const CatModule& X, const Submodule& S);
bool contains(const Submodule& big, const Submodule& small);

struct SubObject {
  CatModule module;
  ModuleMap inclusion;
};
SubObject as_module(const CatModule& X, const Submodule& S);

struct QuotientObject {
  CatModule module;
  ModuleMap projection;
  std::vector<Matrix> lift;  // section of each projection component
};
QuotientObject quotient(const CatModule& X, const Submodule& S);

struct DirectSum {
  CatModule module;
  std::vector<ModuleMap> inclusions, projections;
};
DirectSum direct_sum(const std::vector<CatModule>& parts, const CatPtr& cat, Side side = Side::Left);

// Ideal-valued submodules of representables: I(c,-) (Left) or I(-,c) (Right).
Submodule ideal_submodule(const CatModule& rep, const SpanTable& ideal, std::size_t c);

CatModule standard_module(const CatPtr& cat, const ReedyStructure& rs, std::size_t c, Side side);

class FieldUnsupported : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Radical {
  SpanTable span;
  std::size_t dim = 0;
  std::size_t nilpotency = 0;  // smallest k with J^k = 0
};
// Kernel of the trace form of the total algebra, certified nilpotent. Cached per category.
const Radical& jacobson_radical(const LinearCategory& cat);
// J·X as a submodule of X.
Submodule radical_submodule(const CatModule& X);

struct SimpleCertificate {
  bool simple = false;
  std::size_t top = 0;          // object with X(top) one-dimensional generating X
  std::size_t end_dim = 0;      // dim End(X)
};
SimpleCertificate certify_simple(const CatModule& X);

// L_c = Delta_c / J Delta_c (side Left).
CatModule simple_module(const CatPtr& cat, const ReedyStructure& rs, std::size_t c);

// Tr_alpha X: generated by X(c) for deg(c) < alpha.
Submodule trace_submodule(const CatModule& X, const ReedyStructure& rs, int alpha);
// Same submodule computed as the sum of images of all maps C(c,-) -> X, deg(c) < alpha.
Submodule trace_submodule_yoneda(const CatModule& X, const ReedyStructure& rs, int alpha);

struct IsoSearch {
  std::optional<ModuleMap> map;
  bool exhaustive = false;  // false: "undecided-treated-as-None" when no map was found
  std::string warning;
};
IsoSearch find_isomorphism(const CatModule& X, const CatModule& Y, std::uint64_t seed = 1);

struct FiltrationLayer {
  int alpha = 0;
  std::map<std::size_t, std::size_t> multiplicity;  // object -> m_c
  bool ok = false;
  std::string detail;
};
struct FiltrationReport {
  std::vector<FiltrationLayer> layers;
  bool verdict = false;
};
FiltrationReport verify_standard_filtration(const CatModule& X, const ReedyStructure& rs);

// Multiplicities of the simples L_c in a semisimple module (J S = 0), by a
// unitriangular solve of dimension vectors.
std::optional<std::vector<std::size_t>> semisimple_multiplicities(const CatModule& S,
                                                                  const std::vector<CatModule>& simples,
                                                                  const ReedyStructure& rs);
// Composition multiplicities through the radical layers J^k X / J^{k+1} X.
std::optional<std::vector<std::size_t>> composition_multiplicities(const CatModule& X,
                                                                   const std::vector<CatModule>& simples,
                                                                   const ReedyStructure& rs);

// Restriction along a functor F: D -> C of a left C-module.
CatModule restrict_module(const LinearFunctor& F, const CatModule& X);
// Left Kan extension C (x)_D X along F: D -> C, by the coequalizer formula.
struct Induced {
  CatModule module;
  std::vector<Cokernel> ck;                       // per target object
  std::vector<std::vector<std::size_t>> offsets;  // [e][d] offset of block C(Fd,e) (x) X(d)
};
Induced induce(const LinearFunctor& F, const CatModule& X);
ModuleMap induce_map(const LinearFunctor& F, const Induced& src, const Induced& dst, const CatModule& X,
                     const ModuleMap& f);

struct MinusInduction {
  LinearFunctor minus;  // C- -> C
  Induced induced;
  bool dimension_formula_ok = false;
};
// C (x)_{C-} X; X is a left module over the wide subcategory C-.
LinearFunctor minus_subcategory(const CatPtr& cat, const ReedyStructure& rs);
LinearFunctor plus_subcategory(const CatPtr& cat, const ReedyStructure& rs);
MinusInduction induce_minus(const CatPtr& cat, const ReedyStructure& rs, const LinearFunctor& minus,
                            const CatModule& X);
// Reedy structure on C- itself: plus trivial, minus everything.
ReedyStructure minus_reedy(const LinearCategory& minus_cat, const ReedyStructure& rs);

// Random module: a quotient of a sum of representables by a randomly generated submodule.
CatModule random_module(const CatPtr& cat, std::mt19937_64& rng, std::size_t max_dim = 3);
Scalar random_scalar(const Field& f, std::mt19937_64& rng);
Matrix random_matrix(const Field& f, std::size_t rows, std::size_t cols, std::mt19937_64& rng);

struct ShortExact {
  CatModule left, middle, right;
  ModuleMap i, p;
};
ShortExact random_short_exact(const CatPtr& cat, std::mt19937_64& rng, std::size_t max_dim = 3);
bool is_short_exact(const CatModule& A, const CatModule& B, const CatModule& C, const ModuleMap& i,
                    const ModuleMap& p);

}  // namespace reedy
