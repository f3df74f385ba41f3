#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <random>
#include <string>
#include <string_view>
#include <vector>

#include "reedy/homalg.hpp"
#include "reedy/presentation.hpp"

namespace reedy {

// Diagrams C -> mod-Lambda are modules over Gamma = C (x) Lambda; the object
// (c, v) of Gamma has index c * |Lambda| + v.
struct DiagramSetting {
  CatPtr C;
  ReedyStructure rs;
  CatPtr Lambda;
  ReedyStructure lambda_rs;
  CatPtr Gamma;
  ReedyStructure gamma_rs;

  std::size_t nC() const { return C->size(); }
  std::size_t nL() const { return Lambda->size(); }
  std::size_t obj(std::size_t c, std::size_t v) const { return c * nL() + v; }
};

DiagramSetting make_setting(const CatPtr& C, const ReedyStructure& rs, const CatPtr& Lambda,
                            const ReedyStructure& lambda_rs);
// Lambda = k.
DiagramSetting scalar_setting(const CatPtr& C, const ReedyStructure& rs);
// Coefficient algebra from a presentation: its own Reedy section if present,
// otherwise the direct structure of a left rooted quiver.
std::pair<CatPtr, ReedyStructure> coefficient_algebra(const PresentationFile& p);

// Restriction to the full subcategory on objects of degree < alpha.
struct Truncation {
  DiagramSetting setting;
  LinearFunctor inc;        // C_{<alpha} -> C
  LinearFunctor gamma_inc;  // Gamma_{<alpha} -> Gamma
  std::vector<std::size_t> objects;  // objects of C, in order
  std::vector<std::optional<std::size_t>> position;  // object of C -> index in C_{<alpha}
};
Truncation truncate(const DiagramSetting& S, int alpha);

// A C-module viewed as a diagram in k-modules (Lambda = k).
CatModule as_diagram(const DiagramSetting& S, const CatModule& X);
// X(c) as a Lambda-module.
CatModule fiber(const DiagramSetting& S, const CatModule& X, std::size_t c);

// X(d, v) = M(d) (x) A(v) for a left C-module M and a Lambda-module A.
CatModule tensor_diagram(const DiagramSetting& S, const CatModule& M, const CatModule& A);
// X(d, v) = Hom_k(W(d), B(v)) for a right C-module W and a Lambda-module B.
CatModule coinduced_diagram(const DiagramSetting& S, const CatModule& W, const CatModule& B);

// Assembles a Gamma-module from its C-direction and Lambda-direction actions,
// both given on coordinate vectors.
using CAction = std::function<Matrix(std::size_t c, std::size_t d, const Matrix& f, std::size_t v)>;
using LAction = std::function<Matrix(std::size_t c, std::size_t v, std::size_t w, const Matrix& lambda)>;
CatModule assemble_diagram(const DiagramSetting& S, const std::vector<std::vector<std::size_t>>& dims,
                           const CAction& cact, const LAction& lact);

// Module whose action on each generator is given; the remaining basis
// morphisms are expressed through products of generators.
CatModule module_from_generators(const CatPtr& cat, const std::vector<std::size_t>& dims,
                                 const std::vector<Matrix>& generator_action);

// Diagram fixture: a [diagram] section with lines
//   dim <object> [<vertex>] = n
//   map <C-arrow> [<vertex>] = rows      (rows separated by ';')
//   map <object> <Lambda-arrow> = rows
CatModule parse_diagram(const DiagramSetting& S, std::string_view text);

struct LatchingResult {
  CatModule object;   // L_c X (or M_c X) as a Lambda-module
  CatModule target;   // X(c)
  ModuleMap map;      // l_c : L_c X -> X(c)   (m_c : X(c) -> M_c X)
  Report identities;  // kernel/cokernel against Tor/Ext and the standard (co)modules
};
LatchingResult latching(const DiagramSetting& S, const CatModule& X, std::size_t c);
LatchingResult matching(const DiagramSetting& S, const CatModule& X, std::size_t c);

struct CofinalityReport {
  bool latching_ok = false;
  bool matching_ok = false;
  std::string detail;
  bool ok() const { return latching_ok && matching_ok; }
};
// Weighted (co)limits over C+_{<alpha} and C-_{<alpha} compared with the ideal formulas.
CofinalityReport cofinality_crosscheck(const DiagramSetting& S, const CatModule& X, std::size_t c);

struct Skeleton {
  CatModule diagram;
  ModuleMap map;  // sk -> X, or X -> cosk
  bool restriction_ok = false;
};
Skeleton sk_alpha(const DiagramSetting& S, const CatModule& X, int alpha);
Skeleton cosk_alpha(const DiagramSetting& S, const CatModule& X, int alpha);

// Relative skeleton and coskeleton of a diagram Y on C_{<alpha}, evaluated at c,
// with the canonical map tau_c : sk -> cosk.
struct RelativeData {
  CatModule sk, cosk;
  ModuleMap tau;
  std::vector<TensorProduct> sk_tensor;             // per vertex
  std::vector<std::vector<ModuleMap>> cosk_basis;   // per vertex
};
RelativeData relative_data(const Truncation& T, const CatModule& Y, std::size_t c);

struct ObjectFactorization {
  std::size_t object = 0;
  CatModule value;  // Y(c)
  ModuleMap a;      // sk -> Y(c)
  ModuleMap b;      // Y(c) -> cosk
};
class FactorizationMismatch : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};
// Extension of Y from C_{<alpha} to C_{<alpha+1}; the result lives over truncate(S, alpha + 1).
CatModule extend_by_factorizations(const DiagramSetting& S, int alpha, const CatModule& Y,
                                   const std::vector<ObjectFactorization>& facts);

enum class ClassSpec { Projectives, Injectives, All, Zero };
std::string class_name(ClassSpec k);
bool in_class(ClassSpec k, const CatModule& M);

struct CotorsionPairSpec {
  ClassSpec A, B;
};
CotorsionPairSpec parse_pair(const std::string& name);  // "proj-all" or "all-inj"

struct LambdaFactorization {
  CatModule middle;
  ModuleMap i, p;
};
// u = p o i with i mono, coker i in A, p epi, ker p in B.
LambdaFactorization factor(const CotorsionPairSpec& pair, const CatModule& M, const CatModule& N,
                           const ModuleMap& u);
// Epimorphism from a free Lambda-module and embedding into an injective one.
struct FreeCover {
  CatModule free;
  ModuleMap map;
};
FreeCover free_cover(const CatModule& N);
FreeCover injective_embedding(const CatModule& M);  // map : M -> free (an injective)

struct MembershipReport {
  bool member = true;
  std::string witness;
};
MembershipReport phi_membership(const DiagramSetting& S, const CatModule& X, ClassSpec A);
MembershipReport psi_membership(const DiagramSetting& S, const CatModule& X, ClassSpec B);
using LambdaPredicate = std::function<bool(const CatModule&)>;
MembershipReport phi_membership(const DiagramSetting& S, const CatModule& X, const LambdaPredicate& A);
MembershipReport psi_membership(const DiagramSetting& S, const CatModule& X, const LambdaPredicate& B);

struct Precover {
  CatModule Z, Y;
  ModuleMap i, p;
  bool exact = false;
  bool y_in_phi = false;
  bool z_in_psi = false;
  Report report;
};
Precover special_precover(const DiagramSetting& S, const CatModule& X, const CotorsionPairSpec& pair);

std::size_t ext1_orthogonality(const CatModule& X, const CatModule& Y);

struct HoveyReport {
  bool preconditions = true;
  bool identity_holds = true;
  std::size_t checked = 0;
  std::vector<std::string> messages;
};
// Phi(A n W) = Phi(A) n W^C on the samples; gated on W being closed under
// cokernels of the supplied monomorphisms of Lambda-modules.
HoveyReport hovey_class_identities(const DiagramSetting& S, const std::vector<CatModule>& samples, ClassSpec A,
                                   const LambdaPredicate& W, const std::vector<ShortExact>& monos);

// Quotient of a sum of Gamma-representables, dims <= max_dim per object.
CatModule random_diagram(const DiagramSetting& S, std::mt19937_64& rng, std::size_t max_dim = 3);

// For the two-object category with a one-dimensional C+(0,1): 0 -> X(0) -> X(1) -> C1 -> 0
// exact with all terms in A.
bool hj_characterization(const DiagramSetting& S, const CatModule& X, ClassSpec A);

}  // namespace reedy
