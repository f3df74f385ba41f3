#include "reedy/qh.hpp"

#include <algorithm>
#include <random>
#include <sstream>

namespace reedy {

Matrix AlgebraWithIdempotents::left_mult(const Matrix& x) const { return mult * kron(x, Matrix::identity(field, dim)); }

Matrix AlgebraWithIdempotents::right_mult(const Matrix& y) const { return mult * kron(Matrix::identity(field, dim), y); }

Matrix AlgebraWithIdempotents::unit() const {
  Matrix u(field, dim, 1);
  for (auto& e : idempotents) u += e;
  return u;
}

Matrix AlgebraWithIdempotents::corner(const Matrix& S, std::size_t i, std::size_t j) const {
  if (S.cols() == 0) return Matrix(field, dim, 0);
  return span_basis(left_mult(idempotents[j]) * right_mult(idempotents[i]) * S);
}

AlgebraWithIdempotents algebra_from_category(const LinearCategory& cat, const ReedyStructure& rs) {
  const std::size_t n = cat.size();
  const Field& F = cat.field;
  AlgebraWithIdempotents a;
  a.field = F;
  std::vector<std::vector<std::size_t>> off(n, std::vector<std::size_t>(n, 0));
  for (std::size_t c = 0; c < n; ++c)
    for (std::size_t d = 0; d < n; ++d) {
      off[c][d] = a.dim;
      a.dim += cat.dim(c, d);
      for (auto& l : cat.labels[c][d]) a.labels.push_back(l);
    }
  const std::size_t N = a.dim;
  a.mult = Matrix(F, N, N * N);
  for (std::size_t c = 0; c < n; ++c)
    for (std::size_t d = 0; d < n; ++d)
      for (std::size_t e = 0; e < n; ++e) {
        const std::size_t dcd = cat.dim(c, d), dde = cat.dim(d, e);
        for (std::size_t g = 0; g < dde; ++g)
          for (std::size_t f = 0; f < dcd; ++f) {
            Matrix col = cat.comp[c][d][e].col(g * dcd + f);
            const std::size_t i = off[d][e] + g, j = off[c][d] + f;
            for (std::size_t r = 0; r < col.rows(); ++r)
              if (!col.is_zero_at(r, 0)) a.mult.set(off[c][e] + r, i * N + j, col.at(r, 0));
          }
      }
  auto embed = [&](std::size_t c, std::size_t d, const Matrix& m) {
    Matrix out(F, N, m.cols());
    if (m.rows()) out.set_block(off[c][d], 0, m);
    return out;
  };
  std::vector<Matrix> p, q;
  for (std::size_t c = 0; c < n; ++c) {
    a.idempotents.push_back(embed(c, c, cat.identity[c]));
    for (std::size_t d = 0; d < n; ++d) {
      p.push_back(embed(c, d, rs.plus[c][d]));
      q.push_back(embed(c, d, rs.minus[c][d]));
    }
  }
  a.plus = span_basis(hstack(p, F, N));
  a.minus = span_basis(hstack(q, F, N));
  a.degree = rs.degree;
  return a;
}

std::pair<std::shared_ptr<LinearCategory>, ReedyStructure> category_from_algebra(const AlgebraWithIdempotents& a) {
  const std::size_t n = a.idempotents.size();
  const Field& F = a.field;
  auto cat = std::make_shared<LinearCategory>();
  cat->field = F;
  std::vector<std::vector<Matrix>> B(n, std::vector<Matrix>(n));
  Matrix I = Matrix::identity(F, a.dim);
  cat->labels.assign(n, std::vector<std::vector<std::string>>(n));
  for (std::size_t i = 0; i < n; ++i) {
    cat->objects.push_back("e" + std::to_string(i));
    for (std::size_t j = 0; j < n; ++j) {
      B[i][j] = a.corner(I, i, j);
      for (std::size_t k = 0; k < B[i][j].cols(); ++k) {
        std::size_t nz = 0, where = 0;
        for (std::size_t r = 0; r < a.dim; ++r)
          if (!B[i][j].is_zero_at(r, k)) {
            ++nz;
            where = r;
          }
        bool named = nz == 1 && B[i][j].at(where, k).is_one() && where < a.labels.size();
        cat->labels[i][j].push_back(named ? a.labels[where] : "h" + std::to_string(i) + std::to_string(j) + "_" + std::to_string(k));
      }
    }
  }
  cat->comp.assign(n, std::vector<std::vector<Matrix>>(n, std::vector<Matrix>(n)));
  for (std::size_t c = 0; c < n; ++c) {
    auto id = solve(B[c][c], a.idempotents[c]);
    if (!id) throw std::invalid_argument("idempotent outside its corner");
    cat->identity.push_back(*id);
    for (std::size_t d = 0; d < n; ++d)
      for (std::size_t e = 0; e < n; ++e) {
        const std::size_t dcd = B[c][d].cols(), dde = B[d][e].cols();
        Matrix M(F, B[c][e].cols(), dde * dcd);
        if (dcd && dde && B[c][e].cols()) {
          auto x = solve(B[c][e], a.mult * kron(B[d][e], B[c][d]));
          if (!x) throw std::invalid_argument("product leaves its corner");
          M = *x;
        }
        cat->comp[c][d][e] = M;
      }
  }
  ReedyStructure rs;
  rs.degree = a.degree;
  rs.plus.assign(n, std::vector<Matrix>(n));
  rs.minus.assign(n, std::vector<Matrix>(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      auto coords = [&](const Matrix& S) {
        Matrix sub = a.corner(S, i, j);
        if (sub.cols() == 0) return Matrix(F, B[i][j].cols(), 0);
        auto x = solve(B[i][j], sub);
        if (!x) throw std::invalid_argument("subalgebra corner outside the hom space");
        return span_basis(*x);
      };
      rs.plus[i][j] = coords(a.plus);
      rs.minus[i][j] = coords(a.minus);
    }
  cat->generation_order = ascending_degree_order(rs);
  return {cat, rs};
}

Report verify_algebra(const AlgebraWithIdempotents& a) {
  Report r;
  const Field& F = a.field;
  const std::size_t N = a.dim;
  Matrix I = Matrix::identity(F, N);
  // associativity: (xy)z = x(yz) on basis triples
  Matrix lhs = a.mult * kron(a.mult, I);
  Matrix rhs = a.mult * kron(I, a.mult);
  if (!(lhs == rhs)) r.fail("multiplication is not associative");
  Matrix one = a.unit();
  if (!(a.left_mult(one) == I) || !(a.right_mult(one) == I)) r.fail("sum of the idempotents is not the unit");
  for (std::size_t i = 0; i < a.idempotents.size(); ++i)
    for (std::size_t j = 0; j < a.idempotents.size(); ++j) {
      Matrix p = a.product(a.idempotents[i], a.idempotents[j]);
      Matrix expect = i == j ? a.idempotents[i] : Matrix(F, N, 1);
      if (!(p == expect)) r.fail("e" + std::to_string(i) + " e" + std::to_string(j) + " violates orthogonality");
    }
  const char* names[2] = {"A+", "A-"};
  const Matrix* subs[2] = {&a.plus, &a.minus};
  for (int t = 0; t < 2; ++t) {
    const Matrix& S = *subs[t];
    for (std::size_t i = 0; i < a.idempotents.size(); ++i)
      if (!in_span(S, a.idempotents[i])) r.fail(std::string(names[t]) + " misses e" + std::to_string(i));
    if (S.cols() && !in_span(S, a.mult * kron(S, S))) r.fail(std::string(names[t]) + " is not closed under multiplication");
  }
  return r;
}

Report verify_reedy_algebra(const AlgebraWithIdempotents& a) {
  Report r = verify_algebra(a);
  const std::size_t n = a.idempotents.size();
  const Field& F = a.field;
  Matrix I = Matrix::identity(F, a.dim);
  std::vector<std::vector<Matrix>> P(n, std::vector<Matrix>(n)), Q(n, std::vector<Matrix>(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      P[i][j] = a.corner(a.plus, i, j);
      Q[i][j] = a.corner(a.minus, i, j);
    }
  for (std::size_t i = 0; i < n; ++i) {
    if (P[i][i].cols() != 1) r.fail("e" + std::to_string(i) + " A+ e" + std::to_string(i) + " is not k");
    if (Q[i][i].cols() != 1) r.fail("e" + std::to_string(i) + " A- e" + std::to_string(i) + " is not k");
    for (std::size_t j = 0; j < n; ++j) {
      if (i == j) continue;
      if (P[i][j].cols() && !(a.degree[i] < a.degree[j]))
        r.fail("e" + std::to_string(j) + " A+ e" + std::to_string(i) + " is nonzero but deg does not increase");
      if (Q[i][j].cols() && !(a.degree[i] > a.degree[j]))
        r.fail("e" + std::to_string(j) + " A- e" + std::to_string(i) + " is nonzero but deg does not decrease");
    }
  }
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      std::vector<Matrix> cols;
      std::size_t source = 0;
      for (std::size_t l = 0; l < n; ++l) {
        if (P[l][j].cols() == 0 || Q[i][l].cols() == 0) continue;
        cols.push_back(a.mult * kron(P[l][j], Q[i][l]));
        source += P[l][j].cols() * Q[i][l].cols();
      }
      const std::size_t target = a.corner(I, i, j).cols();
      const std::size_t rk = cols.empty() ? 0 : rank(hstack(cols, F, a.dim));
      if (source != target || rk != target)
        r.fail("multiplication onto e" + std::to_string(j) + " A e" + std::to_string(i) + " has source dim " +
               std::to_string(source) + ", target dim " + std::to_string(target) + ", rank " + std::to_string(rk));
    }
  return r;
}

Report verify_algebra_isomorphism(const AlgebraWithIdempotents& src, const AlgebraWithIdempotents& dst,
                                  const Matrix& T) {
  Report r;
  if (T.rows() != dst.dim || T.cols() != src.dim || rank(T) != dst.dim) {
    r.fail("basis change is not invertible");
    return r;
  }
  if (!(T * src.mult == dst.mult * kron(T, T))) r.fail("basis change does not respect multiplication");
  if (src.idempotents.size() != dst.idempotents.size()) {
    r.fail("different numbers of idempotents");
    return r;
  }
  for (std::size_t i = 0; i < src.idempotents.size(); ++i)
    if (!(T * src.idempotents[i] == dst.idempotents[i])) r.fail("idempotent e" + std::to_string(i) + " not preserved");
  if (!same_span(T * src.plus, dst.plus)) r.fail("A+ not preserved");
  if (!same_span(T * src.minus, dst.minus)) r.fail("A- not preserved");
  if (src.degree != dst.degree) r.fail("degrees differ");
  return r;
}

Matrix round_trip_basis(const AlgebraWithIdempotents& a) {
  const std::size_t n = a.idempotents.size();
  Matrix I = Matrix::identity(a.field, a.dim);
  std::vector<Matrix> cols;
  for (std::size_t c = 0; c < n; ++c)
    for (std::size_t d = 0; d < n; ++d) cols.push_back(a.corner(I, c, d));
  return hstack(cols, a.field, a.dim);
}

QhReport verify_quasi_hereditary(const CatPtr& cat, const ReedyStructure& rs) {
  QhReport rep;
  Report gate = verify_reedy(*cat, rs);
  if (!gate.pass) {
    rep.failures.push_back("gated: verify_reedy failed");
    for (auto& f : gate.failures) rep.failures.push_back(f);
    return rep;
  }
  const std::size_t n = cat->size();
  rep.order.resize(n);
  for (std::size_t c = 0; c < n; ++c) rep.order[c] = c;
  std::stable_sort(rep.order.begin(), rep.order.end(),
                   [&](std::size_t a, std::size_t b) { return rs.degree[a] > rs.degree[b]; });
  std::vector<CatModule> simples;
  for (std::size_t c = 0; c < n; ++c) {
    simples.push_back(simple_module(cat, rs, c));
    rep.end_simple.push_back(certify_simple(simples.back()).end_dim);
  }
  rep.verdict = true;
  for (std::size_t i = 0; i < n; ++i) {
    QhEntry e;
    e.object = i;
    CatModule D = standard_module(cat, rs, i, Side::Left);
    auto m = composition_multiplicities(D, simples, rs);
    std::ostringstream detail;
    if (!m) {
      detail << "composition multiplicities undetermined; ";
    } else {
      e.multiplicities = *m;
      e.multiplicity_ok = (*m)[i] == 1;
      for (std::size_t j = 0; j < n; ++j)
        if (j != i && (*m)[j] > 0 && !(rs.degree[j] > rs.degree[i])) {
          e.multiplicity_ok = false;
          detail << "L(" << cat->objects[j] << ") occurs in Delta(" << cat->objects[i] << ") without higher degree; ";
        }
      if ((*m)[i] != 1) detail << "[Delta:L] at " << cat->objects[i] << " is " << (*m)[i] << "; ";
    }
    CatModule P = representable(cat, i, Side::Left);
    DegreeIdeal I = degree_ideal(*cat, rs, rs.degree[i]);
    CatModule K = as_module(P, ideal_submodule(P, I.span, i)).module;
    FiltrationReport fr = verify_standard_filtration(K, rs);
    e.kernel_filtered = fr.verdict;
    for (auto& layer : fr.layers) {
      if (!layer.ok) detail << layer.detail << "; ";
      if (layer.alpha >= rs.degree[i])
        for (auto& [c, mult] : layer.multiplicity)
          if (mult) {
            e.kernel_filtered = false;
            detail << "kernel has a standard layer at degree " << layer.alpha << "; ";
          }
    }
    e.detail = detail.str();
    if (!e.multiplicity_ok || !e.kernel_filtered) {
      rep.verdict = false;
      rep.failures.push_back("object " + cat->objects[i] + ": " + e.detail);
    }
    rep.entries.push_back(std::move(e));
  }
  return rep;
}

BorelReport verify_exact_borel(const CatPtr& cat, const ReedyStructure& rs, std::size_t samples, std::uint64_t seed) {
  BorelReport out;
  out.samples = samples;
  const std::size_t n = cat->size();
  LinearFunctor minus = minus_subcategory(cat, rs);
  ReedyStructure mr = minus_reedy(*minus.source, rs);
  out.standards_simple = true;
  std::vector<CatModule> S;
  for (std::size_t c = 0; c < n && out.standards_simple; ++c) {
    CatModule Dm;
    try {
      Dm = standard_module(minus.source, mr, c, Side::Left);
    } catch (const std::logic_error& e) {
      out.standards_simple = false;
      out.report.fail(std::string("(i) C- carries no Reedy structure with trivial C+: ") + e.what());
      break;
    }
    CatModule Sc = quotient(Dm, radical_submodule(Dm)).module;
    S.push_back(Sc);
    if (!certify_simple(Dm).simple || !find_isomorphism(Dm, Sc).map) {
      out.standards_simple = false;
      out.report.fail("(i) standard module of C- at " + cat->objects[c] + " has dims " + Dm.dims_str() +
                      " and is not simple");
    }
  }
  std::mt19937_64 rng(seed);
  for (std::size_t s = 0; s < samples && out.standards_simple; ++s) {
    ShortExact ses = random_short_exact(minus.source, rng);
    Induced A = induce(minus, ses.left), B = induce(minus, ses.middle), C = induce(minus, ses.right);
    ModuleMap i = induce_map(minus, A, B, ses.left, ses.i);
    ModuleMap p = induce_map(minus, B, C, ses.middle, ses.p);
    if (is_short_exact(A.module, B.module, C.module, i, p))
      ++out.exact_samples;
    else
      out.report.fail("(ii) induction is not exact on sample " + std::to_string(s) + " with dims " +
                      ses.left.dims_str() + " -> " + ses.middle.dims_str() + " -> " + ses.right.dims_str());
  }
  out.induced_standards = out.standards_simple;
  for (std::size_t c = 0; c < n && out.standards_simple; ++c) {
    MinusInduction ind = induce_minus(cat, rs, minus, S[c]);
    CatModule D = standard_module(cat, rs, c, Side::Left);
    if (!find_isomorphism(ind.induced.module, D).map) {
      out.induced_standards = false;
      out.report.fail("(iii) C (x)_{C-} S at " + cat->objects[c] + " has dims " + ind.induced.module.dims_str() +
                      ", standard module has dims " + D.dims_str());
    }
    if (!ind.dimension_formula_ok) out.report.note("(iii) induced dimensions differ from the factorization count at " + cat->objects[c]);
  }
  return out;
}

}  // namespace reedy
