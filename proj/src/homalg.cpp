#include "reedy/homalg.hpp"

#include <string>

namespace reedy {

TensorProduct tensor_over_C(const CatModule& W, const CatModule& X) {
  const LinearCategory& C = *X.cat;
  const Field& F = C.field;
  const std::size_t n = C.size();
  TensorProduct t;
  t.offset.assign(n + 1, 0);
  for (std::size_t c = 0; c < n; ++c) t.offset[c + 1] = t.offset[c] + W.dims[c] * X.dims[c];
  const std::size_t total = t.offset[n];
  std::vector<Matrix> rel;
  for (std::size_t c = 0; c < n; ++c)
    for (std::size_t d = 0; d < n; ++d) {
      if (W.dims[d] == 0 || X.dims[c] == 0) continue;
      for (std::size_t i = 0; i < C.dim(c, d); ++i) {
        // W(f) w (x) x - w (x) X(f) x for f : c -> d, w in W(d), x in X(c)
        Matrix R(F, total, W.dims[d] * X.dims[c]);
        if (W.dims[c]) R.set_block(t.offset[c], 0, kron(W.action[d][c][i], Matrix::identity(F, X.dims[c])));
        if (X.dims[d]) {
          Matrix right = -kron(Matrix::identity(F, W.dims[d]), X.action[c][d][i]);
          R.set_block(t.offset[d], 0, R.block(t.offset[d], 0, right.rows(), right.cols()) + right);
        }
        rel.push_back(std::move(R));
      }
    }
  t.ck = cokernel(hstack(rel, F, total));
  t.dim = t.ck.dim;
  return t;
}

Matrix tensor_map(const TensorProduct& src, const TensorProduct& dst, const CatModule& W, const CatModule& X,
                  const ModuleMap& a, const ModuleMap& b) {
  const Field& F = X.field();
  const std::size_t n = X.size();
  Matrix B(F, dst.offset[n], src.offset[n]);
  for (std::size_t c = 0; c < n; ++c) {
    if (W.dims[c] == 0 || X.dims[c] == 0) continue;
    Matrix k = kron(a.comp[c], b.comp[c]);
    if (k.rows()) B.set_block(dst.offset[c], src.offset[c], k);
  }
  return dst.ck.projection * B * src.ck.lift;
}

HomOverC hom_over_C(const CatModule& U, const CatModule& X) {
  HomOverC h;
  h.basis = hom_space(U, X);
  h.dim = h.basis.size();
  return h;
}

std::vector<std::pair<std::size_t, Matrix>> top_generators(const CatModule& X) {
  std::vector<std::pair<std::size_t, Matrix>> gens;
  const Field& F = X.field();
  const std::size_t n = X.size();
  Submodule R = radical_submodule(X);
  Submodule G = zero_submodule(X);
  for (std::size_t c : X.cat->order()) {
    Matrix covered = span_sum(R.basis[c], G.basis[c]);
    if (covered.cols() == X.dims[c]) continue;
    std::vector<Matrix> seeds(n);
    for (std::size_t d = 0; d < n; ++d) seeds[d] = Matrix(F, X.dims[d], 0);
    for (std::size_t i = 0; i < X.dims[c] && covered.cols() < X.dims[c]; ++i) {
      Matrix v = Matrix::unit_column(F, X.dims[c], i);
      if (in_span(covered, v)) continue;
      covered = span_sum(covered, v);
      gens.emplace_back(c, v);
      seeds[c] = hstack(seeds[c], v);
    }
    G = submodule_sum(G, generated_submodule(X, seeds));
  }
  return gens;
}

namespace {

// Evaluation map (+)_j C(c_j, -) -> X sending the j-th generator to v_j.
ModuleMap evaluation(const CatModule& P, const std::vector<std::pair<std::size_t, Matrix>>& gens, const CatModule& X) {
  const LinearCategory& C = *X.cat;
  ModuleMap e;
  for (std::size_t d = 0; d < C.size(); ++d) {
    Matrix m(C.field, X.dims[d], P.dims[d]);
    std::size_t col = 0;
    for (auto& [c, v] : gens)
      for (std::size_t f = 0; f < C.dim(c, d); ++f, ++col)
        if (X.dims[d]) m.set_block(0, col, X.action[c][d][f] * v);
    e.comp.push_back(std::move(m));
  }
  return e;
}

// Offsets of the summands C(c_i, d) inside P(d).
std::vector<std::size_t> summand_offsets(const LinearCategory& C, const std::vector<std::size_t>& gens, std::size_t d) {
  std::vector<std::size_t> off(gens.size() + 1, 0);
  for (std::size_t i = 0; i < gens.size(); ++i) off[i + 1] = off[i] + C.dim(gens[i], d);
  return off;
}

}  // namespace

Resolution projective_resolution(const CatModule& X, std::size_t cap) {
  const CatPtr& cat = X.cat;
  Resolution res;
  res.cap = cap;
  CatModule K = X;
  ModuleMap incl = identity_map(X);  // K -> previous term
  for (std::size_t n = 0;; ++n) {
    if (K.total_dim() == 0) return res;
    if (n > cap) {
      res.truncated = true;
      return res;
    }
    auto gens = top_generators(K);
    std::vector<CatModule> reps;
    std::vector<std::size_t> objs;
    for (auto& g : gens) {
      reps.push_back(representable(cat, g.first, Side::Left));
      objs.push_back(g.first);
    }
    CatModule P = direct_sum(reps, cat, K.side).module;
    ModuleMap eps = evaluation(P, gens, K);
    if (!is_surjective(eps, K)) res.exact = false;
    ModuleMap d = compose(incl, eps);
    std::vector<Matrix> imgs;
    for (auto& g : gens) imgs.push_back(incl.comp[g.first] * g.second);
    if (n > 0)
      for (auto& m : compose(res.differentials.back(), d).comp)
        if (!m.is_zero()) res.exact = false;
    res.gens.push_back(objs);
    res.modules.push_back(P);
    res.images.push_back(std::move(imgs));
    res.differentials.push_back(d);
    SubObject ker = as_module(P, kernel(eps, P));
    K = ker.module;
    incl = ker.inclusion;
  }
}

Resolution projective_resolution(const CatModule& X) { return projective_resolution(X, X.cat->total_dim()); }

namespace {

void require(const Resolution& r, std::size_t n) {
  if (r.truncated && n + 1 >= r.modules.size())
    throw ResolutionTruncated("resolution-truncated: degree " + std::to_string(n + 1) + " beyond the cap " +
                              std::to_string(r.cap));
}

// delta_n : Hom(P_{n-1}, Y) -> Hom(P_n, Y), with Hom(P_n, Y) = (+)_j Y(c_j).
Matrix cochain_map(const Resolution& r, const CatModule& Y, std::size_t n) {
  const LinearCategory& C = *Y.cat;
  const auto& src = r.gens[n - 1];
  const auto& dst = r.gens[n];
  std::vector<std::size_t> so(src.size() + 1, 0), dof(dst.size() + 1, 0);
  for (std::size_t i = 0; i < src.size(); ++i) so[i + 1] = so[i] + Y.dims[src[i]];
  for (std::size_t j = 0; j < dst.size(); ++j) dof[j + 1] = dof[j] + Y.dims[dst[j]];
  Matrix M(C.field, dof.back(), so.back());
  for (std::size_t j = 0; j < dst.size(); ++j) {
    const std::size_t cj = dst[j];
    auto off = summand_offsets(C, src, cj);
    const Matrix& z = r.images[n][j];
    for (std::size_t i = 0; i < src.size(); ++i) {
      const std::size_t ci = src[i];
      if (Y.dims[ci] == 0 || Y.dims[cj] == 0) continue;
      Matrix blk(C.field, Y.dims[cj], Y.dims[ci]);
      for (std::size_t k = 0; k < C.dim(ci, cj); ++k)
        if (!z.is_zero_at(off[i] + k, 0)) blk.add_scaled(z.at(off[i] + k, 0), Y.action[ci][cj][k]);
      M.set_block(dof[j], so[i], blk);
    }
  }
  return M;
}

std::size_t cochain_dim(const Resolution& r, const CatModule& Y, std::size_t n) {
  std::size_t s = 0;
  if (n < r.gens.size())
    for (auto c : r.gens[n]) s += Y.dims[c];
  return s;
}

// partial_n : P_n (x) X -> P_{n-1} (x) X for P_n = (+)_j C(-, c_j) over the opposite.
Matrix chain_map(const Resolution& r, const CatModule& X, std::size_t n) {
  const LinearCategory& Cop = *r.modules[n].cat;
  const auto& src = r.gens[n];
  const auto& dst = r.gens[n - 1];
  std::vector<std::size_t> so(src.size() + 1, 0), dof(dst.size() + 1, 0);
  for (std::size_t j = 0; j < src.size(); ++j) so[j + 1] = so[j] + X.dims[src[j]];
  for (std::size_t i = 0; i < dst.size(); ++i) dof[i + 1] = dof[i] + X.dims[dst[i]];
  Matrix M(X.field(), dof.back(), so.back());
  for (std::size_t j = 0; j < src.size(); ++j) {
    const std::size_t cj = src[j];
    auto off = summand_offsets(Cop, dst, cj);
    const Matrix& z = r.images[n][j];
    for (std::size_t i = 0; i < dst.size(); ++i) {
      const std::size_t ci = dst[i];
      if (X.dims[ci] == 0 || X.dims[cj] == 0) continue;
      Matrix blk(X.field(), X.dims[ci], X.dims[cj]);
      // z component lies in Cop(ci, cj) = C(cj, ci), acting on X by X.action[cj][ci]
      for (std::size_t k = 0; k < Cop.dim(ci, cj); ++k)
        if (!z.is_zero_at(off[i] + k, 0)) blk.add_scaled(z.at(off[i] + k, 0), X.action[cj][ci][k]);
      M.set_block(dof[i], so[j], blk);
    }
  }
  return M;
}

}  // namespace

std::size_t ext(const Resolution& resX, const CatModule& Y, std::size_t n) {
  require(resX, n);
  const std::size_t cn = cochain_dim(resX, Y, n);
  if (cn == 0) return 0;
  std::size_t ker = cn;
  if (n + 1 < resX.gens.size()) ker = cn - rank(cochain_map(resX, Y, n + 1));
  std::size_t im = n == 0 ? 0 : rank(cochain_map(resX, Y, n));
  return ker - im;
}

std::size_t ext(const CatModule& X, const CatModule& Y, std::size_t n) {
  return ext(projective_resolution(X), Y, n);
}

std::size_t tor(const Resolution& resW, const CatModule& X, std::size_t n) {
  require(resW, n);
  const std::size_t cn = cochain_dim(resW, X, n);
  if (cn == 0) return 0;
  std::size_t ker = n == 0 ? cn : cn - rank(chain_map(resW, X, n));
  std::size_t im = n + 1 < resW.gens.size() ? rank(chain_map(resW, X, n + 1)) : 0;
  return ker - im;
}

std::size_t tor(const CatModule& W, const CatModule& X, std::size_t n) {
  return tor(projective_resolution(W), X, n);
}

std::size_t tor_via_left(const CatModule& W, const Resolution& resX, std::size_t n) {
  // Tor_n(W, X) = Tor_n^{op}(X, W), with X read as a right module over the opposite.
  return tor(resX, W, n);
}

bool has_left_lifting(const CatModule& A, const CatModule& B, const ModuleMap& l, const CatModule& C,
                      const CatModule& D, const ModuleMap& r) {
  const Field& F = A.field();
  auto HBC = hom_space(B, C);
  auto HAC = hom_space(A, C);
  auto HBD = hom_space(B, D);
  std::size_t ac = 0, bd = 0, ad = 0;
  for (std::size_t c = 0; c < A.size(); ++c) {
    ac += C.dims[c] * A.dims[c];
    bd += D.dims[c] * B.dims[c];
    ad += D.dims[c] * A.dims[c];
  }
  // commutative squares: r u = v l
  std::vector<Matrix> sq;
  for (auto& u : HAC) sq.push_back(flatten(compose(r, u)));
  for (auto& v : HBD) sq.push_back(-flatten(compose(v, l)));
  const std::size_t squares = HAC.size() + HBD.size() - (sq.empty() ? 0 : rank(hstack(sq, F, ad)));
  std::vector<Matrix> img;
  for (auto& h : HBC) img.push_back(vstack(flatten(compose(h, l)), flatten(compose(r, h))));
  const std::size_t lifts = img.empty() ? 0 : rank(hstack(img, F, ac + bd));
  return lifts == squares;
}

DimTable ext_table(const CatPtr& cat, const ReedyStructure& rs, std::size_t max_n) {
  const std::size_t n = cat->size();
  std::vector<CatModule> D;
  for (std::size_t c = 0; c < n; ++c) D.push_back(standard_module(cat, rs, c, Side::Left));
  DimTable t(n, std::vector<std::vector<std::size_t>>(n));
  for (std::size_t c = 0; c < n; ++c) {
    Resolution r = projective_resolution(D[c]);
    for (std::size_t d = 0; d < n; ++d)
      for (std::size_t k = 0; k <= max_n; ++k) t[c][d].push_back(ext(r, D[d], k));
  }
  return t;
}

DimTable tor_table(const CatPtr& cat, const ReedyStructure& rs, std::size_t max_n) {
  const std::size_t n = cat->size();
  std::vector<CatModule> Dl, Dr;
  for (std::size_t c = 0; c < n; ++c) {
    Dl.push_back(standard_module(cat, rs, c, Side::Left));
    Dr.push_back(standard_module(cat, rs, c, Side::Right));
  }
  DimTable t(n, std::vector<std::vector<std::size_t>>(n));
  for (std::size_t c = 0; c < n; ++c) {
    Resolution r = projective_resolution(Dr[c]);
    for (std::size_t d = 0; d < n; ++d)
      for (std::size_t k = 0; k <= max_n; ++k) t[c][d].push_back(tor(r, Dl[d], k));
  }
  return t;
}

}  // namespace reedy
