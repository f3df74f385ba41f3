#include "reedy/repmod.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace reedy {

std::size_t CatModule::total_dim() const { return std::accumulate(dims.begin(), dims.end(), std::size_t{0}); }

Matrix CatModule::act(std::size_t c, std::size_t d, const Matrix& f) const {
  Matrix out(field(), dims[d], dims[c]);
  for (std::size_t i = 0; i < f.rows(); ++i)
    if (!f.is_zero_at(i, 0)) out.add_scaled(f.at(i, 0), action[c][d][i]);
  return out;
}

std::string CatModule::dims_str() const {
  std::string s = "(";
  for (std::size_t i = 0; i < dims.size(); ++i) s += (i ? "," : "") + std::to_string(dims[i]);
  return s + ")";
}

CatModule zero_module(const CatPtr& cat, Side side) {
  CatModule X;
  X.cat = cat;
  X.side = side;
  const std::size_t n = cat->size();
  X.dims.assign(n, 0);
  X.action.assign(n, std::vector<std::vector<Matrix>>(n));
  for (std::size_t c = 0; c < n; ++c)
    for (std::size_t d = 0; d < n; ++d) X.action[c][d].assign(cat->dim(c, d), Matrix(cat->field, 0, 0));
  return X;
}

Report verify_module(const CatModule& X) {
  Report r;
  const LinearCategory& C = *X.cat;
  const std::size_t n = C.size();
  for (std::size_t c = 0; c < n; ++c) {
    if (!(X.act(c, c, C.identity[c]) == Matrix::identity(C.field, X.dims[c])))
      r.fail("identity of " + C.objects[c] + " does not act as the identity");
  }
  for (std::size_t c = 0; c < n; ++c)
    for (std::size_t d = 0; d < n; ++d)
      for (std::size_t e = 0; e < n; ++e) {
        const std::size_t dcd = C.dim(c, d), dde = C.dim(d, e);
        if (dcd == 0 || dde == 0 || X.dims[c] == 0 || X.dims[e] == 0) continue;
        for (std::size_t g = 0; g < dde; ++g)
          for (std::size_t f = 0; f < dcd; ++f) {
            Matrix gf = X.act(c, e, C.comp[c][d][e].col(g * dcd + f));
            if (!(gf == X.action[d][e][g] * X.action[c][d][f]))
              r.fail("X(g o f) != X(g) X(f) for g = " + C.labels[d][e][g] + ", f = " + C.labels[c][d][f]);
          }
      }
  return r;
}

ModuleMap identity_map(const CatModule& X) {
  ModuleMap f;
  for (auto d : X.dims) f.comp.push_back(Matrix::identity(X.field(), d));
  return f;
}

ModuleMap zero_map(const CatModule& X, const CatModule& Y) {
  ModuleMap f;
  for (std::size_t c = 0; c < X.size(); ++c) f.comp.push_back(Matrix(X.field(), Y.dims[c], X.dims[c]));
  return f;
}

ModuleMap compose(const ModuleMap& g, const ModuleMap& f) {
  ModuleMap h;
  for (std::size_t c = 0; c < f.comp.size(); ++c) h.comp.push_back(g.comp[c] * f.comp[c]);
  return h;
}

ModuleMap add(const ModuleMap& a, const ModuleMap& b) {
  ModuleMap h;
  for (std::size_t c = 0; c < a.comp.size(); ++c) h.comp.push_back(a.comp[c] + b.comp[c]);
  return h;
}

ModuleMap scale(const ModuleMap& a, const Scalar& s) {
  ModuleMap h;
  for (auto& m : a.comp) h.comp.push_back(m.scaled(s));
  return h;
}

bool is_natural(const CatModule& X, const CatModule& Y, const ModuleMap& f) {
  const LinearCategory& C = *X.cat;
  for (std::size_t c = 0; c < C.size(); ++c)
    for (std::size_t d = 0; d < C.size(); ++d)
      for (std::size_t i = 0; i < C.dim(c, d); ++i)
        if (!(Y.action[c][d][i] * f.comp[c] == f.comp[d] * X.action[c][d][i])) return false;
  return true;
}

bool is_injective(const ModuleMap& f) {
  for (auto& m : f.comp)
    if (rank(m) != m.cols()) return false;
  return true;
}

bool is_surjective(const ModuleMap& f, const CatModule& Y) {
  for (std::size_t c = 0; c < f.comp.size(); ++c)
    if (rank(f.comp[c]) != Y.dims[c]) return false;
  return true;
}

bool is_isomorphism(const ModuleMap& f) {
  for (auto& m : f.comp)
    if (m.rows() != m.cols() || rank(m) != m.rows()) return false;
  return true;
}

Matrix flatten(const ModuleMap& f) {
  std::size_t total = 0;
  for (auto& m : f.comp) total += m.rows() * m.cols();
  Field F = f.comp.empty() ? Field::rationals() : f.comp[0].field();
  Matrix v(F, total, 1);
  std::size_t k = 0;
  for (auto& m : f.comp)
    for (std::size_t i = 0; i < m.rows(); ++i)
      for (std::size_t j = 0; j < m.cols(); ++j, ++k)
        if (!m.is_zero_at(i, j)) v.set(k, 0, m.at(i, j));
  return v;
}

CatPtr opposite_ptr(const CatPtr& cat) { return opposite(*cat); }

CatModule representable(const CatPtr& cat, std::size_t c, Side side) {
  if (side == Side::Right) {
    CatModule X = representable(opposite_ptr(cat), c, Side::Left);
    X.side = Side::Right;
    return X;
  }
  const LinearCategory& C = *cat;
  const std::size_t n = C.size();
  CatModule X;
  X.cat = cat;
  X.side = Side::Left;
  for (std::size_t d = 0; d < n; ++d) X.dims.push_back(C.dim(c, d));
  X.action.assign(n, std::vector<std::vector<Matrix>>(n));
  for (std::size_t d = 0; d < n; ++d)
    for (std::size_t e = 0; e < n; ++e)
      for (std::size_t g = 0; g < C.dim(d, e); ++g)
        X.action[d][e].push_back(C.post_matrix(c, d, e, C.basis_vector(d, e, g)));
  return X;
}

std::vector<ModuleMap> hom_space(const CatModule& X, const CatModule& Y) {
  const LinearCategory& C = *X.cat;
  const Field& F = C.field;
  const std::size_t n = C.size();
  std::vector<std::size_t> off(n + 1, 0);
  for (std::size_t c = 0; c < n; ++c) off[c + 1] = off[c] + Y.dims[c] * X.dims[c];
  const std::size_t unknowns = off[n];
  if (unknowns == 0) return {};
  std::vector<Matrix> blocks;
  for (std::size_t c = 0; c < n; ++c)
    for (std::size_t d = 0; d < n; ++d) {
      const std::size_t xc = X.dims[c], yd = Y.dims[d];
      if (xc == 0 || yd == 0) continue;
      for (std::size_t fi = 0; fi < C.dim(c, d); ++fi) {
        if (c == d && C.basis_vector(c, c, fi) == C.identity[c]) continue;
        const Matrix& Yf = Y.action[c][d][fi];
        const Matrix& Xf = X.action[c][d][fi];
        // Y(f) phi_c - phi_d X(f) = 0, entry (r, j)
        Matrix eq(F, yd * xc, unknowns);
        for (std::size_t r = 0; r < yd; ++r)
          for (std::size_t j = 0; j < xc; ++j) {
            const std::size_t row = r * xc + j;
            for (std::size_t i = 0; i < Y.dims[c]; ++i)
              if (!Yf.is_zero_at(r, i)) eq.add_at(row, off[c] + i * xc + j, Yf.at(r, i));
            for (std::size_t i = 0; i < X.dims[d]; ++i)
              if (!Xf.is_zero_at(i, j)) eq.add_at(row, off[d] + r * X.dims[d] + i, -Xf.at(i, j));
          }
        blocks.push_back(std::move(eq));
      }
    }
  Matrix K = blocks.empty() ? Matrix::identity(F, unknowns) : kernel_basis(vstack(blocks, F, unknowns));
  std::vector<ModuleMap> out;
  for (std::size_t k = 0; k < K.cols(); ++k) {
    ModuleMap m;
    for (std::size_t c = 0; c < n; ++c) {
      Matrix comp(F, Y.dims[c], X.dims[c]);
      for (std::size_t i = 0; i < Y.dims[c]; ++i)
        for (std::size_t j = 0; j < X.dims[c]; ++j) {
          std::size_t idx = off[c] + i * X.dims[c] + j;
          if (!K.is_zero_at(idx, k)) comp.set(i, j, K.at(idx, k));
        }
      m.comp.push_back(std::move(comp));
    }
    out.push_back(std::move(m));
  }
  return out;
}

std::size_t Submodule::total_dim() const {
  std::size_t t = 0;
  for (auto& b : basis) t += b.cols();
  return t;
}

Submodule zero_submodule(const CatModule& X) {
  Submodule S;
  for (auto d : X.dims) S.basis.push_back(Matrix(X.field(), d, 0));
  return S;
}

Submodule full_submodule(const CatModule& X) {
  Submodule S;
  for (auto d : X.dims) S.basis.push_back(Matrix::identity(X.field(), d));
  return S;
}

Submodule generated_submodule(const CatModule& X, const std::vector<Matrix>& seeds) {
  // All morphisms are spanned by the basis, which is closed under composition,
  // so one pass over the basis suffices.
  const LinearCategory& C = *X.cat;
  const std::size_t n = C.size();
  Submodule S;
  for (std::size_t d = 0; d < n; ++d) {
    std::vector<Matrix> cols;
    for (std::size_t c = 0; c < n; ++c) {
      if (seeds[c].cols() == 0 || X.dims[c] == 0) continue;
      for (std::size_t f = 0; f < C.dim(c, d); ++f) cols.push_back(X.action[c][d][f] * seeds[c]);
    }
    S.basis.push_back(span_basis(hstack(cols, X.field(), X.dims[d])));
  }
  return S;
}

Submodule submodule_sum(const Submodule& a, const Submodule& b) {
  Submodule S;
  for (std::size_t c = 0; c < a.basis.size(); ++c) S.basis.push_back(span_sum(a.basis[c], b.basis[c]));
  return S;
}

Submodule image(const ModuleMap& f, const CatModule& Y) {
  Submodule S;
  for (std::size_t c = 0; c < f.comp.size(); ++c)
    S.basis.push_back(f.comp[c].cols() == 0 ? Matrix(Y.field(), Y.dims[c], 0) : span_basis(f.comp[c]));
  return S;
}

Submodule kernel(const ModuleMap& f, const CatModule& X) {
  Submodule S;
  for (std::size_t c = 0; c < f.comp.size(); ++c)
    S.basis.push_back(X.dims[c] == 0 ? Matrix(X.field(), 0, 0) : kernel_basis(f.comp[c]));
  return S;
}

bool is_submodule(const CatModule& X, const Submodule& S) {
  const LinearCategory& C = *X.cat;
  for (std::size_t c = 0; c < C.size(); ++c)
    for (std::size_t d = 0; d < C.size(); ++d) {
      if (S.basis[c].cols() == 0) continue;
      for (std::size_t f = 0; f < C.dim(c, d); ++f)
        if (!in_span(S.basis[d], X.action[c][d][f] * S.basis[c])) return false;
    }
  return true;
}

bool contains(const Submodule& big, const Submodule& small) {
  for (std::size_t c = 0; c < big.basis.size(); ++c)
    if (small.basis[c].cols() && !in_span(big.basis[c], small.basis[c])) return false;
  return true;
}

SubObject as_module(const CatModule& X, const Submodule& S) {
  const LinearCategory& C = *X.cat;
  const std::size_t n = C.size();
  SubObject out;
  CatModule& M = out.module;
  M.cat = X.cat;
  M.side = X.side;
  for (auto& b : S.basis) M.dims.push_back(b.cols());
  M.action.assign(n, std::vector<std::vector<Matrix>>(n));
  for (std::size_t c = 0; c < n; ++c)
    for (std::size_t d = 0; d < n; ++d)
      for (std::size_t f = 0; f < C.dim(c, d); ++f) {
        if (M.dims[c] == 0 || M.dims[d] == 0) {
          M.action[c][d].push_back(Matrix(X.field(), M.dims[d], M.dims[c]));
          continue;
        }
        auto x = solve(S.basis[d], X.action[c][d][f] * S.basis[c]);
        if (!x) throw std::invalid_argument("subspace family is not a submodule");
        M.action[c][d].push_back(*x);
      }
  out.inclusion.comp = S.basis;
  return out;
}

QuotientObject quotient(const CatModule& X, const Submodule& S) {
  const LinearCategory& C = *X.cat;
  const std::size_t n = C.size();
  QuotientObject out;
  std::vector<Cokernel> ck;
  for (std::size_t c = 0; c < n; ++c) {
    Matrix b = S.basis[c].rows() == X.dims[c] ? S.basis[c] : Matrix(X.field(), X.dims[c], 0);
    ck.push_back(cokernel(b));
  }
  CatModule& M = out.module;
  M.cat = X.cat;
  M.side = X.side;
  for (auto& k : ck) M.dims.push_back(k.dim);
  M.action.assign(n, std::vector<std::vector<Matrix>>(n));
  for (std::size_t c = 0; c < n; ++c)
    for (std::size_t d = 0; d < n; ++d)
      for (std::size_t f = 0; f < C.dim(c, d); ++f)
        M.action[c][d].push_back(ck[d].projection * X.action[c][d][f] * ck[c].lift);
  for (auto& k : ck) {
    out.projection.comp.push_back(k.projection);
    out.lift.push_back(k.lift);
  }
  return out;
}

DirectSum direct_sum(const std::vector<CatModule>& parts, const CatPtr& cat, Side side) {
  const LinearCategory& C = *cat;
  const std::size_t n = C.size();
  const Field& F = C.field;
  DirectSum out;
  CatModule& M = out.module;
  M.cat = cat;
  M.side = side;
  M.dims.assign(n, 0);
  std::vector<std::vector<std::size_t>> off(parts.size(), std::vector<std::size_t>(n, 0));
  for (std::size_t k = 0; k < parts.size(); ++k)
    for (std::size_t c = 0; c < n; ++c) {
      off[k][c] = M.dims[c];
      M.dims[c] += parts[k].dims[c];
    }
  M.action.assign(n, std::vector<std::vector<Matrix>>(n));
  for (std::size_t c = 0; c < n; ++c)
    for (std::size_t d = 0; d < n; ++d)
      for (std::size_t f = 0; f < C.dim(c, d); ++f) {
        Matrix a(F, M.dims[d], M.dims[c]);
        for (std::size_t k = 0; k < parts.size(); ++k)
          if (parts[k].dims[c] && parts[k].dims[d]) a.set_block(off[k][d], off[k][c], parts[k].action[c][d][f]);
        M.action[c][d].push_back(std::move(a));
      }
  for (std::size_t k = 0; k < parts.size(); ++k) {
    ModuleMap inc, proj;
    for (std::size_t c = 0; c < n; ++c) {
      Matrix i(F, M.dims[c], parts[k].dims[c]);
      if (parts[k].dims[c]) i.set_block(off[k][c], 0, Matrix::identity(F, parts[k].dims[c]));
      proj.comp.push_back(i.transpose());
      inc.comp.push_back(std::move(i));
    }
    out.inclusions.push_back(std::move(inc));
    out.projections.push_back(std::move(proj));
  }
  return out;
}

Submodule ideal_submodule(const CatModule& rep, const SpanTable& ideal, std::size_t c) {
  Submodule S;
  for (std::size_t d = 0; d < rep.size(); ++d)
    S.basis.push_back(rep.side == Side::Left ? ideal[c][d] : ideal[d][c]);
  return S;
}

CatModule standard_module(const CatPtr& cat, const ReedyStructure& rs, std::size_t c, Side side) {
  CatModule rep = representable(cat, c, side);
  DegreeIdeal I = degree_ideal(*cat, rs, rs.degree[c]);
  return quotient(rep, ideal_submodule(rep, I.span, c)).module;
}

namespace {

Radical compute_radical(const LinearCategory& C) {
  const Field& F = C.field;
  const std::size_t n = C.size();
  if (F.is_prime_field() && F.p <= C.total_dim())
    throw FieldUnsupported("field-unsupported: GF(" + std::to_string(F.p) +
                           ") needs p > total dimension " + std::to_string(C.total_dim()));
  // t[p](k) = trace of left multiplication by the k-th basis element of Hom(p,p)
  std::vector<Matrix> t(n);
  for (std::size_t p = 0; p < n; ++p) {
    t[p] = Matrix(F, 1, C.dim(p, p));
    for (std::size_t k = 0; k < C.dim(p, p); ++k) {
      Scalar s = Scalar::zero(F);
      for (std::size_t r = 0; r < n; ++r) {
        Matrix L = C.post_matrix(r, p, p, C.basis_vector(p, p, k));
        for (std::size_t i = 0; i < L.rows(); ++i) s = s + L.at(i, i);
      }
      t[p].set(0, k, s);
    }
  }
  Radical R;
  R.span.assign(n, std::vector<Matrix>(n));
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b) {
      const std::size_t dab = C.dim(a, b), dba = C.dim(b, a);
      Matrix M(F, dba, dab);
      if (dab && dba) {
        Matrix row = t[b] * C.comp[b][a][b];  // column x * dba + y holds t(x o y)
        for (std::size_t x = 0; x < dab; ++x)
          for (std::size_t y = 0; y < dba; ++y) M.set(y, x, row.at(0, x * dba + y));
      }
      R.span[a][b] = dab ? kernel_basis(M) : Matrix(F, 0, 0);
      R.dim += R.span[a][b].cols();
    }
  if (!is_two_sided_ideal(C, R.span)) throw std::logic_error("trace-form radical is not a two-sided ideal");
  // Nilpotency certificate: J^k = 0 for some k <= total dimension + 1.
  SpanTable power = R.span;
  std::size_t k = 1;
  auto is_zero_table = [&](const SpanTable& T) {
    for (auto& row : T)
      for (auto& m : row)
        if (m.cols()) return false;
    return true;
  };
  while (!is_zero_table(power)) {
    if (k > C.total_dim() + 1) throw std::logic_error("trace-form radical is not nilpotent");
    SpanTable next(n, std::vector<Matrix>(n));
    for (std::size_t c = 0; c < n; ++c)
      for (std::size_t e = 0; e < n; ++e) {
        std::vector<Matrix> cols;
        for (std::size_t d = 0; d < n; ++d)
          if (power[c][d].cols() && R.span[d][e].cols())
            cols.push_back(C.comp[c][d][e] * kron(R.span[d][e], power[c][d]));
        next[c][e] = span_basis(hstack(cols, F, C.dim(c, e)));
      }
    power = std::move(next);
    ++k;
  }
  R.nilpotency = is_zero_table(R.span) ? 1 : k;
  return R;
}

Submodule radical_of(const CatModule& X, const Submodule& S) {
  const LinearCategory& C = *X.cat;
  const Radical& J = jacobson_radical(C);
  const std::size_t n = C.size();
  Submodule out;
  for (std::size_t d = 0; d < n; ++d) {
    std::vector<Matrix> cols;
    for (std::size_t c = 0; c < n; ++c) {
      if (S.basis[c].cols() == 0) continue;
      for (std::size_t k = 0; k < J.span[c][d].cols(); ++k) cols.push_back(X.act(c, d, J.span[c][d].col(k)) * S.basis[c]);
    }
    out.basis.push_back(span_basis(hstack(cols, X.field(), X.dims[d])));
  }
  return out;
}

CatModule subquotient(const CatModule& X, const Submodule& big, const Submodule& small) {
  SubObject B = as_module(X, big);
  Submodule rel;
  for (std::size_t c = 0; c < X.size(); ++c) {
    if (small.basis[c].cols() == 0) {
      rel.basis.push_back(Matrix(X.field(), big.basis[c].cols(), 0));
      continue;
    }
    auto x = solve(big.basis[c], small.basis[c]);
    if (!x) throw std::invalid_argument("subquotient: not nested");
    rel.basis.push_back(*x);
  }
  return quotient(B.module, rel).module;
}

}  // namespace

const Radical& jacobson_radical(const LinearCategory& cat) {
  std::lock_guard<std::mutex> lock(cat.radical_cache.mutex);
  if (!cat.radical_cache.value) cat.radical_cache.value = std::make_shared<const Radical>(compute_radical(cat));
  return *cat.radical_cache.value;
}

Submodule radical_submodule(const CatModule& X) { return radical_of(X, full_submodule(X)); }

SimpleCertificate certify_simple(const CatModule& X) {
  SimpleCertificate cert;
  const LinearCategory& C = *X.cat;
  const std::size_t n = C.size();
  if (X.total_dim() == 0) return cert;
  cert.end_dim = hom_space(X, X).size();
  for (std::size_t c = 0; c < n; ++c) {
    if (X.dims[c] != 1) continue;
    std::vector<Matrix> seeds;
    for (std::size_t d = 0; d < n; ++d) seeds.push_back(d == c ? Matrix::identity(X.field(), 1) : Matrix(X.field(), X.dims[d], 0));
    if (generated_submodule(X, seeds).total_dim() != X.total_dim()) continue;
    // every nonzero vector must reach X(c)
    bool reaches = true;
    for (std::size_t d = 0; d < n && reaches; ++d) {
      if (X.dims[d] == 0) continue;
      std::vector<Matrix> rows;
      for (std::size_t f = 0; f < C.dim(d, c); ++f) rows.push_back(X.action[d][c][f]);
      if (rows.empty() || rank(vstack(rows, X.field(), X.dims[d])) != X.dims[d]) reaches = false;
    }
    if (reaches) {
      cert.simple = true;
      cert.top = c;
      return cert;
    }
  }
  return cert;
}

CatModule simple_module(const CatPtr& cat, const ReedyStructure& rs, std::size_t c) {
  CatModule D = standard_module(cat, rs, c, Side::Left);
  CatModule L = quotient(D, radical_submodule(D)).module;
  if (!certify_simple(L).simple)
    throw std::logic_error("top of the standard module at " + cat->objects[c] + " is not simple");
  return L;
}

Submodule trace_submodule(const CatModule& X, const ReedyStructure& rs, int alpha) {
  std::vector<Matrix> seeds;
  for (std::size_t c = 0; c < X.size(); ++c)
    seeds.push_back(rs.degree[c] < alpha ? Matrix::identity(X.field(), X.dims[c]) : Matrix(X.field(), X.dims[c], 0));
  return generated_submodule(X, seeds);
}

Submodule trace_submodule_yoneda(const CatModule& X, const ReedyStructure& rs, int alpha) {
  Submodule S = zero_submodule(X);
  for (std::size_t c = 0; c < X.size(); ++c) {
    if (rs.degree[c] >= alpha) continue;
    CatModule rep = representable(X.cat, c, Side::Left);
    for (auto& m : hom_space(rep, X)) S = submodule_sum(S, image(m, X));
  }
  return S;
}

IsoSearch find_isomorphism(const CatModule& X, const CatModule& Y, std::uint64_t seed) {
  IsoSearch out;
  out.exhaustive = true;
  if (X.dims != Y.dims) return out;
  if (X.total_dim() == 0) {
    out.map = identity_map(X);
    return out;
  }
  auto H = hom_space(X, Y);
  const std::size_t d = H.size();
  if (d == 0) return out;
  const Field& F = X.field();
  auto combo = [&](const std::vector<Scalar>& coef) {
    ModuleMap m = zero_map(X, Y);
    for (std::size_t k = 0; k < d; ++k)
      if (!coef[k].is_zero()) m = add(m, scale(H[k], coef[k]));
    return m;
  };
  if (d == 1) {
    if (is_isomorphism(H[0])) out.map = H[0];
    return out;
  }
  std::mt19937_64 rng(seed);
  for (int s = 0; s < 200; ++s) {
    std::vector<Scalar> coef;
    for (std::size_t k = 0; k < d; ++k) coef.push_back(random_scalar(F, rng));
    ModuleMap m = combo(coef);
    if (is_isomorphism(m)) {
      out.map = m;
      return out;
    }
  }
  if (F.is_prime_field()) {
    double space = 1;
    for (std::size_t k = 0; k < d && space <= 1e6; ++k) space *= F.p;
    if (space <= 1e6) {
      std::vector<long> digits(d, 0);
      while (true) {
        std::size_t k = 0;
        while (k < d && ++digits[k] == static_cast<long>(F.p)) digits[k++] = 0;
        if (k == d) break;
        std::vector<Scalar> coef;
        for (auto v : digits) coef.push_back(Scalar(F, v));
        ModuleMap m = combo(coef);
        if (is_isomorphism(m)) {
          out.map = m;
          return out;
        }
      }
      return out;
    }
  }
  out.exhaustive = false;
  out.warning = "undecided-treated-as-None: 200 random elements of a " + std::to_string(d) +
                "-dimensional hom space were not invertible";
  return out;
}

std::optional<std::vector<std::size_t>> semisimple_multiplicities(const CatModule& S,
                                                                  const std::vector<CatModule>& simples,
                                                                  const ReedyStructure& rs) {
  const std::size_t n = S.size();
  std::vector<long> m(n, 0);
  for (std::size_t c : ascending_degree_order(rs)) {
    if (simples[c].dims[c] != 1) return std::nullopt;
    long v = static_cast<long>(S.dims[c]);
    for (std::size_t d = 0; d < n; ++d)
      if (d != c) v -= m[d] * static_cast<long>(simples[d].dims[c]);
    if (v < 0) return std::nullopt;
    m[c] = v;
  }
  for (std::size_t c = 0; c < n; ++c) {
    long total = 0;
    for (std::size_t d = 0; d < n; ++d) total += m[d] * static_cast<long>(simples[d].dims[c]);
    if (total != static_cast<long>(S.dims[c])) return std::nullopt;
  }
  return std::vector<std::size_t>(m.begin(), m.end());
}

std::optional<std::vector<std::size_t>> composition_multiplicities(const CatModule& X,
                                                                   const std::vector<CatModule>& simples,
                                                                   const ReedyStructure& rs) {
  std::vector<std::size_t> total(X.size(), 0);
  Submodule layer = full_submodule(X);
  while (layer.total_dim() > 0) {
    Submodule next = radical_of(X, layer);
    if (next.total_dim() == layer.total_dim()) return std::nullopt;
    auto m = semisimple_multiplicities(subquotient(X, layer, next), simples, rs);
    if (!m) return std::nullopt;
    for (std::size_t c = 0; c < total.size(); ++c) total[c] += (*m)[c];
    layer = std::move(next);
  }
  return total;
}

FiltrationReport verify_standard_filtration(const CatModule& X, const ReedyStructure& rs) {
  FiltrationReport rep;
  rep.verdict = true;
  const std::size_t n = X.size();
  std::vector<std::optional<CatModule>> standards(n);
  for (int alpha = 0; alpha <= rs.max_degree(); ++alpha) {
    FiltrationLayer layer;
    layer.alpha = alpha;
    Submodule lo = trace_submodule(X, rs, alpha), hi = trace_submodule(X, rs, alpha + 1);
    CatModule Q = subquotient(X, hi, lo);
    std::vector<CatModule> parts;
    for (std::size_t c = 0; c < n; ++c) {
      if (rs.degree[c] != alpha) continue;
      layer.multiplicity[c] = Q.dims[c];
      if (Q.dims[c] && !standards[c]) standards[c] = standard_module(X.cat, rs, c, Side::Left);
      for (std::size_t k = 0; k < Q.dims[c]; ++k) parts.push_back(*standards[c]);
    }
    CatModule target = direct_sum(parts, X.cat).module;
    IsoSearch iso = find_isomorphism(Q, target);
    layer.ok = iso.map.has_value();
    if (!layer.ok) {
      std::ostringstream s;
      s << "layer " << alpha << " has dims " << Q.dims_str() << " but the candidate sum of standards has dims "
        << target.dims_str();
      if (!iso.warning.empty()) s << " (" << iso.warning << ")";
      layer.detail = s.str();
      rep.verdict = false;
    }
    rep.layers.push_back(std::move(layer));
  }
  return rep;
}

CatModule restrict_module(const LinearFunctor& F, const CatModule& X) {
  const LinearCategory& D = *F.source;
  const std::size_t m = D.size();
  CatModule R;
  R.cat = F.source;
  R.side = X.side;
  for (std::size_t a = 0; a < m; ++a) R.dims.push_back(X.dims[F.object_map[a]]);
  R.action.assign(m, std::vector<std::vector<Matrix>>(m));
  for (std::size_t a = 0; a < m; ++a)
    for (std::size_t b = 0; b < m; ++b)
      for (std::size_t i = 0; i < D.dim(a, b); ++i)
        R.action[a][b].push_back(X.act(F.object_map[a], F.object_map[b], F.hom[a][b].col(i)));
  return R;
}

Induced induce(const LinearFunctor& F, const CatModule& X) {
  const LinearCategory& D = *F.source;
  const LinearCategory& C = *F.target;
  const Field& K = C.field;
  const std::size_t m = D.size(), n = C.size();
  Induced out;
  out.offsets.assign(n, std::vector<std::size_t>(m + 1, 0));
  for (std::size_t e = 0; e < n; ++e) {
    for (std::size_t d = 0; d < m; ++d)
      out.offsets[e][d + 1] = out.offsets[e][d] + C.dim(F.object_map[d], e) * X.dims[d];
    const std::size_t total = out.offsets[e][m];
    std::vector<Matrix> rel;
    for (std::size_t d1 = 0; d1 < m; ++d1)
      for (std::size_t d = 0; d < m; ++d) {
        const std::size_t Fd1 = F.object_map[d1], Fd = F.object_map[d];
        const std::size_t ged = C.dim(Fd, e);
        if (ged == 0 || X.dims[d1] == 0) continue;
        for (std::size_t mi = 0; mi < D.dim(d1, d); ++mi) {
          // (g o F m) (x) x  -  g (x) X(m) x
          Matrix R(K, total, ged * X.dims[d1]);
          Matrix pre = C.pre_matrix(Fd1, Fd, e, F.hom[d1][d].col(mi));
          R.set_block(out.offsets[e][d1], 0, kron(pre, Matrix::identity(K, X.dims[d1])));
          if (X.dims[d]) {
            Matrix right = -kron(Matrix::identity(K, ged), X.action[d1][d][mi]);
            Matrix cur = R.block(out.offsets[e][d], 0, right.rows(), right.cols());
            R.set_block(out.offsets[e][d], 0, cur + right);
          }
          rel.push_back(std::move(R));
        }
      }
    out.ck.push_back(cokernel(hstack(rel, K, total)));
  }
  CatModule& M = out.module;
  M.cat = F.target;
  M.side = X.side;
  for (auto& k : out.ck) M.dims.push_back(k.dim);
  M.action.assign(n, std::vector<std::vector<Matrix>>(n));
  for (std::size_t e = 0; e < n; ++e)
    for (std::size_t e2 = 0; e2 < n; ++e2)
      for (std::size_t h = 0; h < C.dim(e, e2); ++h) {
        Matrix B(K, out.offsets[e2][m], out.offsets[e][m]);
        for (std::size_t d = 0; d < m; ++d) {
          const std::size_t Fd = F.object_map[d];
          if (X.dims[d] == 0 || C.dim(Fd, e) == 0 || C.dim(Fd, e2) == 0) continue;
          B.set_block(out.offsets[e2][d], out.offsets[e][d],
                      kron(C.post_matrix(Fd, e, e2, C.basis_vector(e, e2, h)), Matrix::identity(K, X.dims[d])));
        }
        M.action[e][e2].push_back(out.ck[e2].projection * B * out.ck[e].lift);
      }
  return out;
}

ModuleMap induce_map(const LinearFunctor& F, const Induced& src, const Induced& dst, const CatModule& X,
                     const ModuleMap& f) {
  const LinearCategory& C = *F.target;
  const std::size_t m = F.source->size();
  ModuleMap out;
  for (std::size_t e = 0; e < C.size(); ++e) {
    Matrix B(C.field, dst.offsets[e][m], src.offsets[e][m]);
    for (std::size_t d = 0; d < m; ++d) {
      const std::size_t ged = C.dim(F.object_map[d], e);
      if (ged == 0) continue;
      if (X.dims[d] == 0 || f.comp[d].rows() == 0) continue;
      B.set_block(dst.offsets[e][d], src.offsets[e][d], kron(Matrix::identity(C.field, ged), f.comp[d]));
    }
    out.comp.push_back(dst.ck[e].projection * B * src.ck[e].lift);
  }
  return out;
}

LinearFunctor minus_subcategory(const CatPtr& cat, const ReedyStructure& rs) {
  return wide_subcategory(cat, rs.minus, "m");
}

LinearFunctor plus_subcategory(const CatPtr& cat, const ReedyStructure& rs) {
  return wide_subcategory(cat, rs.plus, "p");
}

MinusInduction induce_minus(const CatPtr& cat, const ReedyStructure& rs, const LinearFunctor& minus,
                            const CatModule& X) {
  MinusInduction out{minus, induce(minus, X), false};
  out.dimension_formula_ok = true;
  for (std::size_t c = 0; c < cat->size(); ++c) {
    std::size_t expect = 0;
    for (std::size_t d = 0; d < cat->size(); ++d)
      if (rs.degree[d] <= rs.degree[c]) expect += rs.plus[d][c].cols() * X.dims[d];
    if (expect != out.induced.module.dims[c]) out.dimension_formula_ok = false;
  }
  return out;
}

ReedyStructure minus_reedy(const LinearCategory& minus_cat, const ReedyStructure& rs) {
  const std::size_t n = minus_cat.size();
  ReedyStructure r;
  r.degree = rs.degree;
  r.plus.assign(n, std::vector<Matrix>(n));
  r.minus.assign(n, std::vector<Matrix>(n));
  for (std::size_t c = 0; c < n; ++c)
    for (std::size_t d = 0; d < n; ++d) {
      r.plus[c][d] = c == d ? minus_cat.identity[c] : Matrix(minus_cat.field, minus_cat.dim(c, d), 0);
      r.minus[c][d] = Matrix::identity(minus_cat.field, minus_cat.dim(c, d));
    }
  return r;
}

Scalar random_scalar(const Field& f, std::mt19937_64& rng) {
  if (f.is_prime_field()) return Scalar(f, static_cast<long>(rng() % f.p));
  return Scalar(f, static_cast<long>(rng() % 7) - 3);
}

Matrix random_matrix(const Field& f, std::size_t rows, std::size_t cols, std::mt19937_64& rng) {
  Matrix m(f, rows, cols);
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < cols; ++j) m.set(i, j, random_scalar(f, rng));
  return m;
}

namespace {

std::vector<Matrix> random_seed(const CatModule& X, std::mt19937_64& rng, std::size_t object) {
  std::vector<Matrix> seeds;
  for (std::size_t c = 0; c < X.size(); ++c)
    seeds.push_back(c == object ? random_matrix(X.field(), X.dims[c], 1, rng) : Matrix(X.field(), X.dims[c], 0));
  return seeds;
}

std::size_t random_object_with_support(const CatModule& X, std::mt19937_64& rng) {
  std::vector<std::size_t> support;
  for (std::size_t c = 0; c < X.size(); ++c)
    if (X.dims[c]) support.push_back(c);
  return support[rng() % support.size()];
}

}  // namespace

CatModule random_module(const CatPtr& cat, std::mt19937_64& rng, std::size_t max_dim) {
  const std::size_t n = cat->size();
  std::vector<CatModule> parts;
  const std::size_t k = 1 + rng() % 2;
  for (std::size_t i = 0; i < k; ++i) parts.push_back(representable(cat, rng() % n, Side::Left));
  CatModule X = direct_sum(parts, cat).module;
  const std::size_t relations = rng() % 3;
  for (std::size_t r = 0; r < relations && X.total_dim(); ++r)
    X = quotient(X, generated_submodule(X, random_seed(X, rng, random_object_with_support(X, rng)))).module;
  while (X.total_dim()) {
    std::size_t worst = 0;
    for (std::size_t c = 0; c < n; ++c)
      if (X.dims[c] > X.dims[worst]) worst = c;
    if (X.dims[worst] <= max_dim) break;
    X = quotient(X, generated_submodule(X, random_seed(X, rng, worst))).module;
  }
  return X;
}

ShortExact random_short_exact(const CatPtr& cat, std::mt19937_64& rng, std::size_t max_dim) {
  ShortExact s;
  s.middle = random_module(cat, rng, max_dim);
  Submodule S = zero_submodule(s.middle);
  if (s.middle.total_dim()) S = generated_submodule(s.middle, random_seed(s.middle, rng, random_object_with_support(s.middle, rng)));
  SubObject sub = as_module(s.middle, S);
  QuotientObject q = quotient(s.middle, S);
  s.left = sub.module;
  s.i = sub.inclusion;
  s.right = q.module;
  s.p = q.projection;
  return s;
}

bool is_short_exact(const CatModule& A, const CatModule& B, const CatModule& C, const ModuleMap& i,
                    const ModuleMap& p) {
  if (!is_natural(A, B, i) || !is_natural(B, C, p)) return false;
  if (!is_injective(i) || !is_surjective(p, C)) return false;
  for (std::size_t c = 0; c < B.size(); ++c) {
    if (A.dims[c] + C.dims[c] != B.dims[c]) return false;
    if (A.dims[c] && C.dims[c] && !(p.comp[c] * i.comp[c]).is_zero()) return false;
  }
  return true;
}

}  // namespace reedy
