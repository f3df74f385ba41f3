// Acceptance run: one PASS/FAIL line per criterion. Exit status is the number of failures.
#include <array>
#include <cstdio>
#include <functional>
#include <iostream>
#include <random>
#include <string>
#include <sys/wait.h>
#include <vector>

#include "reedy/diagrams.hpp"
#include "reedy/parallel.hpp"
#include "reedy/qh.hpp"

using namespace reedy;

namespace {

const std::string kSource = REEDY_SOURCE_DIR;
const std::string kCli = REEDYQH_PATH;

struct Example {
  std::string name;
  PresentationFile p;
  CatPtr cat;
  ReedyStructure rs;
};

Example load(const std::string& name) {
  Example e;
  e.name = name;
  e.p = load_presentation(kSource + "/examples/" + name + ".reedy");
  auto cat = build_linear_category(e.p);
  e.rs = build_reedy_structure(e.p, *cat);
  e.cat = cat;
  return e;
}

struct Check {
  std::vector<std::string> problems;
  void expect(bool ok, const std::string& what) {
    if (!ok) problems.push_back(what);
  }
};

std::size_t generator(const LinearCategory& C, const std::string& name) {
  for (std::size_t i = 0; i < C.generators.size(); ++i)
    if (C.generators[i].name == name) return i;
  throw std::runtime_error("no generator " + name);
}

// C(f,-) : C(d,-) -> C(c,-) for f : c -> d.
ModuleMap yoneda(const CatPtr& C, const Generator& f) {
  ModuleMap m;
  for (std::size_t e = 0; e < C->size(); ++e) m.comp.push_back(C->pre_matrix(f.source, f.target, e, f.coords));
  return m;
}

void criterion1(Check& ck) {
  Example q = load("qh");
  ck.expect(q.cat->total_dim() == 5, "total dimension " + std::to_string(q.cat->total_dim()));
  ck.expect(verify_category(*q.cat).pass, "verify_category");
  ck.expect(verify_reedy(*q.cat, q.rs).pass, "verify_reedy");
  ck.expect(standard_module(q.cat, q.rs, 0, Side::Left).dims == std::vector<std::size_t>{1, 1}, "Delta_0 dims");
  ck.expect(standard_module(q.cat, q.rs, 1, Side::Left).dims == std::vector<std::size_t>{0, 1}, "Delta_1 dims");
  std::size_t simples = 0;
  for (std::size_t c = 0; c < q.cat->size(); ++c) simples += certify_simple(simple_module(q.cat, q.rs, c)).simple;
  ck.expect(simples == 2, "simple count " + std::to_string(simples));
  ck.expect(verify_quasi_hereditary(q.cat, q.rs).verdict, "verify_quasi_hereditary");
  ck.expect(verify_exact_borel(q.cat, q.rs).report.pass, "verify_exact_borel");
}

void criterion2(Check& ck) {
  Example d = load("delta1");
  const LinearCategory& C = *d.cat;
  ck.expect(C.total_dim() == 7, "total dimension " + std::to_string(C.total_dim()));
  ck.expect(verify_reedy(C, d.rs).pass, "verify_reedy");
  Factorization f = reedy_factorization(C, d.rs, 1, 1);
  std::size_t via0 = 0, via1 = 0;
  for (auto& t : f.terms) (t.via == 0 ? via0 : via1)++;
  ck.expect(f.bijective && f.terms.size() == 3 && via1 == 1 && via0 == 2, "([1],[1]) factorization 3 = 1 + 2");
  CatModule R0 = representable(d.cat, 0, Side::Left), R1 = representable(d.cat, 1, Side::Left);
  ck.expect(hom_space(R1, R0).size() >= 1, "Hom(C([1],-), C([0],-)) = 0");
  ModuleMap Cs = yoneda(d.cat, C.generators[generator(C, "s")]);    // C([0],-) -> C([1],-)
  ModuleMap Cd0 = yoneda(d.cat, C.generators[generator(C, "d0")]);  // C([1],-) -> C([0],-)
  ck.expect(is_natural(R0, R1, Cs) && is_natural(R1, R0, Cd0), "Yoneda maps are natural");
  ModuleMap comp = compose(Cd0, Cs);
  ck.expect(is_isomorphism(comp) && flatten(comp) == flatten(identity_map(R0)), "C(d0,-) o C(s,-) is not the identity");
  ck.expect(verify_quasi_hereditary(d.cat, d.rs).verdict, "verify_quasi_hereditary");
  ck.expect(verify_exact_borel(d.cat, d.rs).report.pass, "verify_exact_borel");
}

void criterion3(Check& ck) {
  for (const char* name : {"qh", "delta1"}) {
    Example e = load(name);
    const std::size_t n = e.cat->size(), N = 4;
    DimTable E = ext_table(e.cat, e.rs, N), T = tor_table(e.cat, e.rs, N);
    const auto& deg = e.rs.degree;
    for (std::size_t c = 0; c < n; ++c)
      for (std::size_t d = 0; d < n; ++d) {
        const std::string at = std::string(name) + " (" + std::to_string(c) + "," + std::to_string(d) + ")";
        if (c == d) ck.expect(E[c][d][0] == 1, "End of standard " + at);
        if (E[c][d][0] != 0) ck.expect(deg[d] < deg[c] || c == d, "Hom nonzero " + at);
        for (std::size_t k = 1; k <= N; ++k)
          if (deg[d] >= deg[c]) ck.expect(E[c][d][k] == 0, "Ext^" + std::to_string(k) + " " + at);
        for (std::size_t k = 0; k <= N; ++k)
          ck.expect(T[c][d][k] == ((k == 0 && c == d) ? 1u : 0u), "Tor_" + std::to_string(k) + " " + at);
      }
  }
}

void criterion4(Check& ck) {
  for (const char* name : {"qh", "delta1"}) {
    Example e = load(name);
    for (std::size_t c = 0; c < e.cat->size(); ++c) {
      CatModule R = representable(e.cat, c, Side::Left);
      ck.expect(verify_standard_filtration(R, e.rs).verdict, std::string(name) + " representable " + std::to_string(c));
      CatModule RR = direct_sum({R, R}, e.cat).module;
      ck.expect(verify_standard_filtration(RR, e.rs).verdict, std::string(name) + " X+X at " + std::to_string(c));
    }
    LinearFunctor minus = minus_subcategory(e.cat, e.rs);
    ReedyStructure mr = minus_reedy(*minus.source, e.rs);
    std::mt19937_64 rng(2024);
    std::vector<CatModule> samples;
    for (int s = 0; s < 20; ++s) samples.push_back(random_module(minus.source, rng));
    auto ok = parallel_map(samples.size(), [&](std::size_t s) { return verify_standard_filtration(samples[s], mr).verdict; });
    for (std::size_t s = 0; s < ok.size(); ++s)
      ck.expect(ok[s], std::string(name) + " C- sample " + std::to_string(s) + " not filtered by simples");
  }
}

void criterion5(Check& ck) {
  for (const char* name : {"qh", "delta1"}) {
    Example e = load(name);
    LinearFunctor minus = minus_subcategory(e.cat, e.rs);
    ReedyStructure mr = minus_reedy(*minus.source, e.rs);
    for (std::size_t c = 0; c < e.cat->size(); ++c) {
      CatModule Dm = standard_module(minus.source, mr, c, Side::Left);
      CatModule S = quotient(Dm, radical_submodule(Dm)).module;
      MinusInduction ind = induce_minus(e.cat, e.rs, minus, S);
      ck.expect(find_isomorphism(ind.induced.module, standard_module(e.cat, e.rs, c, Side::Left)).map.has_value(),
                std::string(name) + " induced simple at " + std::to_string(c));
    }
    BorelReport b = verify_exact_borel(e.cat, e.rs, 25, 11);
    ck.expect(b.exact_samples == 25, std::string(name) + " exact induction on " + std::to_string(b.exact_samples) + "/25");
  }
}

void criterion6(Check& ck) {
  auto A2 = coefficient_algebra(load_presentation(kSource + "/examples/a2.reedy"));
  for (const char* name : {"qh", "delta1"}) {
    Example e = load(name);
    for (bool scalar : {true, false}) {
      DiagramSetting S = scalar ? scalar_setting(e.cat, e.rs) : make_setting(e.cat, e.rs, A2.first, A2.second);
      std::vector<CatModule> X;
      for (std::size_t c = 0; c < S.nC(); ++c)
        for (std::size_t v = 0; v < S.nL(); ++v) {
          CatModule P = representable(S.Lambda, v, Side::Left);
          X.push_back(tensor_diagram(S, representable(e.cat, c, Side::Left), P));
          X.push_back(tensor_diagram(S, standard_module(e.cat, e.rs, c, Side::Left), P));
        }
      std::mt19937_64 rng(606);
      for (int s = 0; s < 20; ++s) X.push_back(random_diagram(S, rng));
      auto res = parallel_map(X.size() * S.nC(), [&](std::size_t i) {
        const CatModule& D = X[i / S.nC()];
        const std::size_t c = i % S.nC();
        CofinalityReport r = cofinality_crosscheck(S, D, c);
        return r.ok() && latching(S, D, c).identities.pass && matching(S, D, c).identities.pass;
      });
      for (std::size_t i = 0; i < res.size(); ++i)
        ck.expect(res[i], std::string(name) + (scalar ? "" : " over A2") + " diagram " + std::to_string(i / S.nC()) +
                              " object " + std::to_string(i % S.nC()));
    }
  }
}

void criterion7(Check& ck) {
  Example q = load("qh");
  auto A2 = coefficient_algebra(load_presentation(kSource + "/examples/a2.reedy"));
  DiagramSetting S = make_setting(q.cat, q.rs, A2.first, A2.second);
  CotorsionPairSpec pair = parse_pair("proj-all");
  std::mt19937_64 rng(77);
  std::vector<CatModule> X;
  for (int s = 0; s < 10; ++s) X.push_back(random_diagram(S, rng));
  auto pcs = parallel_map(X.size(), [&](std::size_t k) { return special_precover(S, X[k], pair); });
  for (std::size_t k = 0; k < pcs.size(); ++k)
    ck.expect(pcs[k].exact && pcs[k].y_in_phi && pcs[k].z_in_psi, "precover " + std::to_string(k));
  auto ext = parallel_map(X.size() * X.size(), [&](std::size_t i) {
    return ext1_orthogonality(pcs[i / X.size()].Y, pcs[i % X.size()].Z);
  });
  for (std::size_t i = 0; i < ext.size(); ++i)
    ck.expect(ext[i] == 0, "Ext^1(Y" + std::to_string(i / X.size()) + ", Z" + std::to_string(i % X.size()) + ")");
  std::mt19937_64 rng2(78);
  std::vector<CatModule> H;
  for (int s = 0; s < 50; ++s) H.push_back(random_diagram(S, rng2));
  auto agree = parallel_map(H.size(), [&](std::size_t k) {
    return hj_characterization(S, H[k], pair.A) == phi_membership(S, H[k], pair.A).member;
  });
  for (std::size_t k = 0; k < agree.size(); ++k) ck.expect(agree[k], "two-object characterization sample " + std::to_string(k));
}

void criterion8(Check& ck) {
  for (const char* name : {"qh", "delta1"}) {
    Example e = load(name);
    const std::size_t cap = e.cat->total_dim();
    for (std::size_t c = 0; c < e.cat->size(); ++c) {
      std::vector<std::pair<std::string, CatModule>> mods = {
          {"left standard", standard_module(e.cat, e.rs, c, Side::Left)},
          {"right standard", standard_module(e.cat, e.rs, c, Side::Right)},
          {"simple", simple_module(e.cat, e.rs, c)}};
      for (auto& [what, M] : mods) {
        Resolution r = projective_resolution(M, cap);
        ck.expect(!r.truncated && r.exact && r.length() <= cap,
                  std::string(name) + " " + what + " at " + std::to_string(c) + " length " + std::to_string(r.length()));
      }
    }
  }
}

std::pair<int, std::string> run(const std::string& args) {
  std::string out;
  FILE* pipe = popen((kCli + " " + args + " 2>&1").c_str(), "r");
  if (!pipe) return {-1, ""};
  std::array<char, 4096> buf;
  while (std::fgets(buf.data(), buf.size(), pipe)) out += buf.data();
  const int status = pclose(pipe);
  return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, out};
}

void criterion9(Check& ck) {
  const std::string ex = kSource + "/examples/";
  struct Case {
    std::string args, expected;
  };
  for (const Case& c : {Case{"check " + ex + "qh_swapped.reedy", "does not raise degree"},
                        Case{"check " + ex + "qh_free.reedy", "bound-insufficient"},
                        Case{"check " + ex + "qh.reedy --perturb", "fails on"}}) {
    auto [code, out] = run(c.args);
    ck.expect(code == 1, c.args + " exited with " + std::to_string(code));
    ck.expect(out.find(c.expected) != std::string::npos, c.args + " lacks \"" + c.expected + "\"");
  }
  Example sw = load("qh_swapped");
  ck.expect(!verify_reedy(*sw.cat, sw.rs).pass, "swapped degrees pass verify_reedy");
  for (std::size_t maxlen = 2; maxlen <= 6; ++maxlen) {
    PresentationFile p = load_presentation(ex + "qh_free.reedy");
    p.maxlen = maxlen;
    bool threw = false;
    try {
      build_linear_category(p);
    } catch (const BoundInsufficient&) {
      threw = true;
    }
    ck.expect(threw, "relation-free quiver accepted at maxlen " + std::to_string(maxlen));
  }
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<void(Check&)>>> criteria = {
      {"1 qh pipeline", criterion1},
      {"2 delta<=1 pipeline", criterion2},
      {"3 exceptional collection tables", criterion3},
      {"4 standard filtrations", criterion4},
      {"5 Borel induction", criterion5},
      {"6 latching and matching", criterion6},
      {"7 cotorsion lifting", criterion7},
      {"8 finite global dimension", criterion8},
      {"9 negative controls", criterion9},
  };
  int failures = 0;
  for (auto& [name, fn] : criteria) {
    Check ck;
    try {
      fn(ck);
    } catch (const std::exception& e) {
      ck.problems.push_back(std::string("exception: ") + e.what());
    }
    std::cout << (ck.problems.empty() ? "PASS " : "FAIL ") << name;
    if (!ck.problems.empty()) {
      std::cout << ":";
      for (std::size_t i = 0; i < ck.problems.size() && i < 5; ++i) std::cout << (i ? "; " : " ") << ck.problems[i];
      ++failures;
    }
    std::cout << std::endl;
  }
  return failures;
}
