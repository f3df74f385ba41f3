#include <fstream>
#include <random>
#include <sstream>

#include "doctest.h"
#include "fixtures.hpp"
#include "reedy/diagrams.hpp"

using namespace reedy;

namespace {

DiagramSetting a2_setting(const fx::Loaded& e) {
  auto L = coefficient_algebra(load_presentation(fx::kExamples + "a2.reedy"));
  return make_setting(e.cat, e.rs, L.first, L.second);
}

std::string read(const std::string& path) {
  std::ifstream in(path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

TEST_CASE("diagram fixture parses") {
  auto q = fx::example("qh");
  DiagramSetting S = scalar_setting(q.cat, q.rs);
  CatModule X = parse_diagram(S, read(REEDY_SOURCE_DIR "/fixtures/x1.diag"));
  CHECK(X.dims == std::vector<std::size_t>{1, 1});
  CHECK(verify_module(X).pass);
  CHECK_THROWS_AS(parse_diagram(S, "[diagram]\ndim v0 = 1\ndim v1 = 1\nmap a = 1\nmap b = 1\n"),
                  std::invalid_argument);  // b*a = 0 fails
  CHECK_THROWS_AS(parse_diagram(S, "[diagram]\ndim v7 = 1\n"), ParseError);
}

TEST_CASE("latching and matching objects of representables in qh") {
  auto q = fx::example("qh");
  DiagramSetting S = scalar_setting(q.cat, q.rs);
  CatModule X = as_diagram(S, representable(q.cat, 1, Side::Left));
  LatchingResult L = latching(S, X, 1), M = matching(S, X, 1);
  CHECK(L.object.total_dim() == 1);
  CHECK(M.object.total_dim() == 1);
  CHECK(L.identities.pass);
  CHECK(M.identities.pass);
  // At the bottom degree both objects vanish.
  CHECK(latching(S, X, 0).object.total_dim() == 0);
  CHECK(matching(S, X, 0).object.total_dim() == 0);
}

TEST_CASE("cofinality cross-check on A2-valued diagrams") {
  auto e = fx::example("delta1");
  DiagramSetting S = a2_setting(e);
  std::mt19937_64 rng(40);
  for (int t = 0; t < 5; ++t) {
    CatModule X = random_diagram(S, rng);
    for (std::size_t c = 0; c < S.nC(); ++c) CHECK(cofinality_crosscheck(S, X, c).ok());
  }
}

TEST_CASE("skeleta of Delta_0 in qh") {
  auto q = fx::example("qh");
  DiagramSetting S = scalar_setting(q.cat, q.rs);
  CatModule D0 = as_diagram(S, standard_module(q.cat, q.rs, 0, Side::Left));
  const std::vector<std::vector<std::size_t>> expected = {{0, 0}, {1, 1}, {1, 1}};
  for (int a = 0; a <= 2; ++a) {
    Skeleton sk = sk_alpha(S, D0, a), ck = cosk_alpha(S, D0, a);
    CHECK(sk.diagram.dims == expected[a]);
    CHECK(sk.restriction_ok);
    CHECK(ck.restriction_ok);
    CHECK(verify_module(sk.diagram).pass);
    CHECK(verify_module(ck.diagram).pass);
  }
}

TEST_CASE("extension by the skeleton and coskeleton factorizations") {
  auto q = fx::example("qh");
  DiagramSetting S = scalar_setting(q.cat, q.rs);
  std::mt19937_64 rng(3);
  for (int t = 0; t < 4; ++t) {
    CatModule X = random_diagram(S, rng);
    Truncation T = truncate(S, 1);
    CatModule Y = restrict_module(T.gamma_inc, X);
    RelativeData R = relative_data(T, Y, 1);
    CatModule viaSk = extend_by_factorizations(S, 1, Y, {{1, R.sk, identity_map(R.sk), R.tau}});
    CatModule viaCosk = extend_by_factorizations(S, 1, Y, {{1, R.cosk, R.tau, identity_map(R.cosk)}});
    viaSk.cat = S.Gamma;
    viaCosk.cat = S.Gamma;
    CHECK(find_isomorphism(viaSk, sk_alpha(S, X, 1).diagram).map.has_value());
    CHECK(find_isomorphism(viaCosk, cosk_alpha(S, X, 1).diagram).map.has_value());
  }
}

TEST_CASE("factorizations that do not compose to tau are rejected") {
  // s o d0 = id makes tau nonzero for the linear simplices.
  auto q = fx::example("delta1");
  DiagramSetting S = scalar_setting(q.cat, q.rs);
  CatModule X = as_diagram(S, representable(q.cat, 0, Side::Left));
  Truncation T = truncate(S, 1);
  CatModule Y = restrict_module(T.gamma_inc, X);
  RelativeData R = relative_data(T, Y, 1);
  REQUIRE_FALSE(R.tau.comp[0].is_zero());
  CHECK_THROWS_AS(extend_by_factorizations(S, 1, Y, {{1, R.sk, identity_map(R.sk), zero_map(R.sk, R.cosk)}}),
                  FactorizationMismatch);
}

TEST_CASE("special precovers over A2") {
  auto q = fx::example("qh");
  DiagramSetting S = a2_setting(q);
  std::mt19937_64 rng(19);
  for (const char* pair : {"proj-all", "all-inj"}) {
    CotorsionPairSpec spec = parse_pair(pair);
    for (int t = 0; t < 4; ++t) {
      CatModule X = random_diagram(S, rng);
      Precover pc = special_precover(S, X, spec);
      CHECK(pc.exact);
      CHECK(pc.y_in_phi);
      CHECK(pc.z_in_psi);
      CHECK(ext1_orthogonality(pc.Y, pc.Z) == 0);
    }
  }
  CHECK_THROWS(parse_pair("inj-all"));
}

TEST_CASE("factorization in mod-Lambda") {
  auto q = fx::example("qh");
  DiagramSetting S = a2_setting(q);
  CatModule P0 = representable(S.Lambda, 0, Side::Left);
  CatModule S0 = simple_module(S.Lambda, S.lambda_rs, 0);
  auto H = hom_space(P0, S0);
  REQUIRE(H.size() == 1);
  for (const char* pair : {"proj-all", "all-inj"}) {
    LambdaFactorization f = factor(parse_pair(pair), P0, S0, H[0]);
    CHECK(is_injective(f.i));
    CHECK(is_surjective(f.p, S0));
  }
  FreeCover fc = free_cover(S0);
  CHECK(is_surjective(fc.map, S0));
  CHECK(in_class(ClassSpec::Projectives, fc.free));
  FreeCover inj = injective_embedding(S0);
  CHECK(is_injective(inj.map));
  CHECK(in_class(ClassSpec::Injectives, inj.free));
  CHECK_FALSE(in_class(ClassSpec::Projectives, S0));
  CHECK(in_class(ClassSpec::Injectives, S0));
}

TEST_CASE("two-object characterization on hand-made diagrams") {
  auto q = fx::example("qh");
  DiagramSetting S = scalar_setting(q.cat, q.rs);
  CatModule good = parse_diagram(S, "[diagram]\ndim v0 = 1\ndim v1 = 1\nmap a = 1\nmap b = 0\n");
  CatModule bad = parse_diagram(S, "[diagram]\ndim v0 = 1\ndim v1 = 1\nmap a = 0\nmap b = 0\n");
  CHECK(hj_characterization(S, good, ClassSpec::All));
  CHECK(phi_membership(S, good, ClassSpec::All).member);
  CHECK_FALSE(hj_characterization(S, bad, ClassSpec::All));
  CHECK_FALSE(phi_membership(S, bad, ClassSpec::All).member);
}

TEST_CASE("class identity is gated on the closure hypotheses") {
  auto q = fx::example("qh");
  DiagramSetting S = a2_setting(q);
  // Projectives are not closed under cokernels of monos: P(u1) -> P(u0) -> S(u0).
  CatModule P0 = representable(S.Lambda, 0, Side::Left), P1 = representable(S.Lambda, 1, Side::Left);
  auto H = hom_space(P1, P0);
  REQUIRE(H.size() == 1);
  REQUIRE(is_injective(H[0]));
  QuotientObject cok = quotient(P0, image(H[0], P0));
  ShortExact witness{P1, P0, cok.module, H[0], cok.projection};
  REQUIRE(is_short_exact(witness.left, witness.middle, witness.right, witness.i, witness.p));
  std::mt19937_64 rng(2);
  std::vector<CatModule> samples;
  for (int t = 0; t < 6; ++t) samples.push_back(random_diagram(S, rng));
  auto proj = [](const CatModule& M) { return in_class(ClassSpec::Projectives, M); };
  HoveyReport bad = hovey_class_identities(S, samples, ClassSpec::All, proj, {witness});
  CHECK_FALSE(bad.preconditions);
  CHECK(bad.checked == 0);
  // Injectives over a hereditary algebra are closed under cokernels of monos.
  auto inj = [](const CatModule& M) { return in_class(ClassSpec::Injectives, M); };
  HoveyReport good = hovey_class_identities(S, samples, ClassSpec::Projectives, inj, {witness});
  CHECK(good.preconditions);
  CHECK(good.identity_holds);
  CHECK(good.checked == samples.size());
}
