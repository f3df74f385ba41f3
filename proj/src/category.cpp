#include "reedy/category.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace reedy {

std::size_t LinearCategory::total_dim() const {
  std::size_t t = 0;
  for (std::size_t c = 0; c < size(); ++c)
    for (std::size_t d = 0; d < size(); ++d) t += dim(c, d);
  return t;
}

std::size_t LinearCategory::object_index(const std::string& name) const {
  for (std::size_t i = 0; i < objects.size(); ++i)
    if (objects[i] == name) return i;
  throw std::invalid_argument("unknown object: " + name);
}

Matrix LinearCategory::compose(std::size_t c, std::size_t d, std::size_t e, const Matrix& g,
                               const Matrix& f) const {
  return comp[c][d][e] * kron(g, f);
}

Matrix LinearCategory::post_matrix(std::size_t c, std::size_t d, std::size_t e, const Matrix& g) const {
  return comp[c][d][e] * kron(g, Matrix::identity(field, dim(c, d)));
}

Matrix LinearCategory::pre_matrix(std::size_t c, std::size_t d, std::size_t e, const Matrix& f) const {
  return comp[c][d][e] * kron(Matrix::identity(field, dim(d, e)), f);
}

std::vector<std::size_t> LinearCategory::order() const {
  if (generation_order.size() == size()) return generation_order;
  std::vector<std::size_t> o(size());
  std::iota(o.begin(), o.end(), 0);
  return o;
}

namespace {

std::string triple_name(const LinearCategory& cat, std::size_t a, std::size_t b, std::size_t c, std::size_t d,
                        std::size_t col) {
  const std::size_t dab = cat.dim(a, b), dbc = cat.dim(b, c);
  std::size_t f = col % dab, rest = col / dab;
  std::size_t g = rest % dbc, h = rest / dbc;
  return "(" + cat.labels[c][d][h] + ", " + cat.labels[b][c][g] + ", " + cat.labels[a][b][f] + ") over objects " +
         cat.objects[a] + "," + cat.objects[b] + "," + cat.objects[c] + "," + cat.objects[d];
}

}  // namespace

Report verify_category(const LinearCategory& cat) {
  Report r;
  const std::size_t n = cat.size();
  const Field& F = cat.field;
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b) {
      const std::size_t dab = cat.dim(a, b);
      Matrix Iab = Matrix::identity(F, dab);
      if (cat.comp[a][a][b].rows() != dab || cat.identity[a].rows() != cat.dim(a, a)) {
        r.fail("shape mismatch at " + cat.objects[a] + "," + cat.objects[b]);
        continue;
      }
      if (!(cat.comp[a][a][b] * kron(Iab, cat.identity[a]) == Iab))
        r.fail("right unit law fails on Hom(" + cat.objects[a] + "," + cat.objects[b] + ")");
      if (!(cat.comp[a][b][b] * kron(cat.identity[b], Iab) == Iab))
        r.fail("left unit law fails on Hom(" + cat.objects[a] + "," + cat.objects[b] + ")");
    }
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b)
      for (std::size_t c = 0; c < n; ++c)
        for (std::size_t d = 0; d < n; ++d) {
          if (cat.dim(a, b) == 0 || cat.dim(b, c) == 0 || cat.dim(c, d) == 0) continue;
          Matrix lhs = cat.comp[a][b][d] * kron(cat.comp[b][c][d], Matrix::identity(F, cat.dim(a, b)));
          Matrix rhs = cat.comp[a][c][d] * kron(Matrix::identity(F, cat.dim(c, d)), cat.comp[a][b][c]);
          if (lhs == rhs) continue;
          Matrix diff = lhs - rhs;
          for (std::size_t col = 0; col < diff.cols(); ++col) {
            bool bad = false;
            for (std::size_t i = 0; i < diff.rows() && !bad; ++i) bad = !diff.is_zero_at(i, col);
            if (bad) {
              r.fail("associativity fails on triple " + triple_name(cat, a, b, c, d, col));
              break;
            }
          }
        }
  return r;
}

int ReedyStructure::max_degree() const {
  int m = 0;
  for (int d : degree) m = std::max(m, d);
  return m;
}

SpanTable close_under_composition(const LinearCategory& cat, const SpanTable& seeds) {
  const std::size_t n = cat.size();
  SpanTable S(n, std::vector<Matrix>(n));
  for (std::size_t c = 0; c < n; ++c)
    for (std::size_t d = 0; d < n; ++d) {
      Matrix m = seeds.empty() ? Matrix(cat.field, cat.dim(c, d), 0) : seeds[c][d];
      if (c == d) m = hstack(m, cat.identity[c]);
      S[c][d] = span_basis(m);
    }
  bool changed = true;
  while (changed) {
    changed = false;
    for (std::size_t c = 0; c < n; ++c)
      for (std::size_t d = 0; d < n; ++d)
        for (std::size_t e = 0; e < n; ++e) {
          if (S[c][d].cols() == 0 || S[d][e].cols() == 0) continue;
          Matrix prod = cat.comp[c][d][e] * kron(S[d][e], S[c][d]);
          if (in_span(S[c][e], prod)) continue;
          S[c][e] = span_sum(S[c][e], prod);
          changed = true;
        }
  }
  return S;
}

ReedyStructure reedy_from_generators(const LinearCategory& cat, std::vector<int> degree,
                                     const std::vector<Generator>& plus, const std::vector<Generator>& minus) {
  const std::size_t n = cat.size();
  if (degree.size() != n) throw std::invalid_argument("degree function has wrong size");
  auto seeds = [&](const std::vector<Generator>& gens) {
    SpanTable s(n, std::vector<Matrix>(n));
    for (std::size_t c = 0; c < n; ++c)
      for (std::size_t d = 0; d < n; ++d) s[c][d] = Matrix(cat.field, cat.dim(c, d), 0);
    for (auto& g : gens) s[g.source][g.target] = hstack(s[g.source][g.target], g.coords);
    return s;
  };
  ReedyStructure rs;
  rs.degree = std::move(degree);
  rs.plus = close_under_composition(cat, seeds(plus));
  rs.minus = close_under_composition(cat, seeds(minus));
  return rs;
}

Factorization reedy_factorization(const LinearCategory& cat, const ReedyStructure& rs, std::size_t c,
                                  std::size_t d) {
  Factorization f;
  std::vector<Matrix> cols;
  for (std::size_t e = 0; e < cat.size(); ++e) {
    const Matrix& P = rs.plus[e][d];
    const Matrix& Q = rs.minus[c][e];
    if (P.cols() == 0 || Q.cols() == 0) continue;
    Matrix prod = cat.comp[c][e][d] * kron(P, Q);
    for (std::size_t i = 0; i < P.cols(); ++i)
      for (std::size_t j = 0; j < Q.cols(); ++j) f.terms.push_back({e, i, j});
    cols.push_back(prod);
  }
  f.map = hstack(cols, cat.field, cat.dim(c, d));
  if (f.map.rows() == f.map.cols()) {
    auto inv = inverse(f.map);
    if (inv) {
      f.inverse = *inv;
      f.bijective = true;
    }
  }
  return f;
}

Report verify_reedy(const LinearCategory& cat, const ReedyStructure& rs) {
  Report r;
  const std::size_t n = cat.size();
  if (rs.degree.size() != n) {
    r.fail("degree function has wrong size");
    return r;
  }
  for (int d : rs.degree)
    if (d < 0) r.fail("negative degree");
  const char* names[2] = {"C+", "C-"};
  const SpanTable* tables[2] = {&rs.plus, &rs.minus};
  for (int t = 0; t < 2; ++t) {
    const SpanTable& S = *tables[t];
    for (std::size_t c = 0; c < n; ++c) {
      if (!in_span(S[c][c], cat.identity[c])) r.fail(std::string("(a) ") + names[t] + " misses identity of " + cat.objects[c]);
      if (S[c][c].cols() != 1)
        r.fail(std::string("(b) ") + names[t] + "(" + cat.objects[c] + "," + cat.objects[c] + ") has dimension " +
               std::to_string(S[c][c].cols()));
    }
    for (std::size_t c = 0; c < n; ++c)
      for (std::size_t d = 0; d < n; ++d)
        for (std::size_t e = 0; e < n; ++e) {
          if (S[c][d].cols() == 0 || S[d][e].cols() == 0) continue;
          if (!in_span(S[c][e], cat.comp[c][d][e] * kron(S[d][e], S[c][d])))
            r.fail(std::string("(a) ") + names[t] + " not closed under composition at " + cat.objects[c] + "->" +
                   cat.objects[d] + "->" + cat.objects[e]);
        }
    for (std::size_t c = 0; c < n; ++c)
      for (std::size_t d = 0; d < n; ++d) {
        if (c == d || S[c][d].cols() == 0) continue;
        bool ok = t == 0 ? rs.degree[c] < rs.degree[d] : rs.degree[c] > rs.degree[d];
        if (!ok)
          r.fail(std::string("(c) ") + names[t] + "(" + cat.objects[c] + "," + cat.objects[d] + ") is nonzero but " +
                 (t == 0 ? "does not raise" : "does not lower") + " degree (" + std::to_string(rs.degree[c]) + " -> " +
                 std::to_string(rs.degree[d]) + ")");
      }
  }
  for (std::size_t c = 0; c < n; ++c)
    for (std::size_t d = 0; d < n; ++d) {
      Factorization f = reedy_factorization(cat, rs, c, d);
      if (!f.bijective)
        r.fail("(d) factorization map into Hom(" + cat.objects[c] + "," + cat.objects[d] + ") has source dim " +
               std::to_string(f.map.cols()) + ", target dim " + std::to_string(cat.dim(c, d)) + ", rank " +
               std::to_string(rank(f.map)));
    }
  return r;
}

bool is_two_sided_ideal(const LinearCategory& cat, const SpanTable& I) {
  const std::size_t n = cat.size();
  for (std::size_t c = 0; c < n; ++c)
    for (std::size_t d = 0; d < n; ++d) {
      if (I[c][d].cols() == 0) continue;
      for (std::size_t e = 0; e < n; ++e) {
        if (cat.dim(d, e) > 0) {
          Matrix post = cat.comp[c][d][e] * kron(Matrix::identity(cat.field, cat.dim(d, e)), I[c][d]);
          if (!in_span(I[c][e], post)) return false;
        }
        if (cat.dim(e, c) > 0) {
          Matrix pre = cat.comp[e][c][d] * kron(I[c][d], Matrix::identity(cat.field, cat.dim(e, c)));
          if (!in_span(I[e][d], pre)) return false;
        }
      }
    }
  return true;
}

DegreeIdeal degree_ideal(const LinearCategory& cat, const ReedyStructure& rs, int alpha) {
  const std::size_t n = cat.size();
  DegreeIdeal I;
  I.alpha = alpha;
  I.span.assign(n, std::vector<Matrix>(n));
  for (std::size_t c = 0; c < n; ++c)
    for (std::size_t d = 0; d < n; ++d) {
      std::vector<Matrix> cols;
      for (std::size_t e = 0; e < n; ++e) {
        if (rs.degree[e] >= alpha) continue;
        if (rs.plus[e][d].cols() == 0 || rs.minus[c][e].cols() == 0) continue;
        cols.push_back(cat.comp[c][e][d] * kron(rs.plus[e][d], rs.minus[c][e]));
      }
      I.span[c][d] = span_basis(hstack(cols, cat.field, cat.dim(c, d)));
    }
  if (!is_two_sided_ideal(cat, I.span))
    throw std::logic_error("degree ideal below " + std::to_string(alpha) + " is not a two-sided ideal");
  return I;
}

QuotientCategory quotient_category(const LinearCategory& cat, const ReedyStructure& rs, int alpha) {
  QuotientCategory q;
  for (std::size_t c = 0; c < cat.size(); ++c)
    if (rs.degree[c] >= alpha) q.kept.push_back(c);
  q.empty = q.kept.empty();
  DegreeIdeal I = degree_ideal(cat, rs, alpha);
  const std::size_t m = q.kept.size();
  auto out = std::make_shared<LinearCategory>();
  out->field = cat.field;
  std::vector<std::vector<Cokernel>> ck(m, std::vector<Cokernel>(m));
  out->labels.assign(m, std::vector<std::vector<std::string>>(m));
  for (std::size_t i = 0; i < m; ++i) {
    out->objects.push_back(cat.objects[q.kept[i]]);
    for (std::size_t j = 0; j < m; ++j) {
      std::size_t c = q.kept[i], d = q.kept[j];
      ck[i][j] = cokernel(I.span[c][d]);
      for (std::size_t t = 0; t < ck[i][j].dim; ++t)
        for (std::size_t row = 0; row < cat.dim(c, d); ++row)
          if (!ck[i][j].lift.is_zero_at(row, t)) out->labels[i][j].push_back(cat.labels[c][d][row]);
    }
  }
  out->comp.assign(m, std::vector<std::vector<Matrix>>(m, std::vector<Matrix>(m)));
  for (std::size_t i = 0; i < m; ++i) {
    out->identity.push_back(ck[i][i].projection * cat.identity[q.kept[i]]);
    for (std::size_t j = 0; j < m; ++j)
      for (std::size_t k = 0; k < m; ++k)
        out->comp[i][j][k] = ck[i][k].projection * cat.comp[q.kept[i]][q.kept[j]][q.kept[k]] *
                             kron(ck[j][k].lift, ck[i][j].lift);
  }
  std::vector<std::size_t> index(cat.size(), cat.size());
  for (std::size_t i = 0; i < m; ++i) index[q.kept[i]] = i;
  for (auto& g : cat.generators) {
    if (index[g.source] == cat.size() || index[g.target] == cat.size()) continue;
    out->generators.push_back(
        {g.name, index[g.source], index[g.target], ck[index[g.source]][index[g.target]].projection * g.coords});
  }
  q.rs.degree.resize(m);
  q.rs.plus.assign(m, std::vector<Matrix>(m));
  q.rs.minus.assign(m, std::vector<Matrix>(m));
  for (std::size_t i = 0; i < m; ++i) {
    q.rs.degree[i] = rs.degree[q.kept[i]] - alpha;
    for (std::size_t j = 0; j < m; ++j) {
      q.rs.plus[i][j] = span_basis(ck[i][j].projection * rs.plus[q.kept[i]][q.kept[j]]);
      q.rs.minus[i][j] = span_basis(ck[i][j].projection * rs.minus[q.kept[i]][q.kept[j]]);
    }
  }
  out->generation_order = ascending_degree_order(q.rs);
  q.cat = out;
  return q;
}

std::shared_ptr<LinearCategory> opposite(const LinearCategory& cat) {
  const std::size_t n = cat.size();
  auto op = std::make_shared<LinearCategory>();
  op->field = cat.field;
  op->objects = cat.objects;
  op->identity = cat.identity;
  op->generation_order = cat.generation_order;
  op->labels.assign(n, std::vector<std::vector<std::string>>(n));
  for (std::size_t c = 0; c < n; ++c)
    for (std::size_t d = 0; d < n; ++d) op->labels[c][d] = cat.labels[d][c];
  op->comp.assign(n, std::vector<std::vector<Matrix>>(n, std::vector<Matrix>(n)));
  for (std::size_t c = 0; c < n; ++c)
    for (std::size_t d = 0; d < n; ++d)
      for (std::size_t e = 0; e < n; ++e) {
        // op: Hom(e,d) (x) Hom(d,c) -> Hom(e,c) with reversed factors
        const Matrix& src = cat.comp[e][d][c];
        const std::size_t ged = cat.dim(e, d), fdc = cat.dim(d, c);
        Matrix m(cat.field, cat.dim(e, c), ged * fdc);
        for (std::size_t g = 0; g < ged; ++g)
          for (std::size_t f = 0; f < fdc; ++f)
            m.set_block(0, g * fdc + f, src.col(f * ged + g));
        op->comp[c][d][e] = m;
      }
  for (auto& g : cat.generators) op->generators.push_back({g.name, g.target, g.source, g.coords});
  return op;
}

ReedyStructure opposite(const ReedyStructure& rs) {
  ReedyStructure o;
  o.degree = rs.degree;
  const std::size_t n = rs.degree.size();
  o.plus.assign(n, std::vector<Matrix>(n));
  o.minus.assign(n, std::vector<Matrix>(n));
  for (std::size_t c = 0; c < n; ++c)
    for (std::size_t d = 0; d < n; ++d) {
      o.plus[c][d] = rs.minus[d][c];
      o.minus[c][d] = rs.plus[d][c];
    }
  return o;
}

bool structurally_equal(const LinearCategory& a, const LinearCategory& b) {
  if (!(a.field == b.field) || a.size() != b.size()) return false;
  for (std::size_t c = 0; c < a.size(); ++c) {
    if (!(a.identity[c] == b.identity[c])) return false;
    for (std::size_t d = 0; d < a.size(); ++d) {
      if (a.dim(c, d) != b.dim(c, d)) return false;
      for (std::size_t e = 0; e < a.size(); ++e)
        if (!(a.comp[c][d][e] == b.comp[c][d][e])) return false;
    }
  }
  return true;
}

bool structurally_opposite(const LinearCategory& a, const LinearCategory& b) {
  return structurally_equal(*opposite(a), b);
}

LinearFunctor full_subcategory(const CatPtr& cat, const std::vector<std::size_t>& objs) {
  const std::size_t m = objs.size();
  auto sub = std::make_shared<LinearCategory>();
  sub->field = cat->field;
  sub->labels.assign(m, std::vector<std::vector<std::string>>(m));
  sub->comp.assign(m, std::vector<std::vector<Matrix>>(m, std::vector<Matrix>(m)));
  LinearFunctor F;
  F.target = cat;
  F.object_map = objs;
  F.hom.assign(m, std::vector<Matrix>(m));
  std::vector<std::size_t> index(cat->size(), cat->size());
  for (std::size_t i = 0; i < m; ++i) {
    index[objs[i]] = i;
    sub->objects.push_back(cat->objects[objs[i]]);
    sub->identity.push_back(cat->identity[objs[i]]);
    for (std::size_t j = 0; j < m; ++j) {
      sub->labels[i][j] = cat->labels[objs[i]][objs[j]];
      F.hom[i][j] = Matrix::identity(cat->field, cat->dim(objs[i], objs[j]));
      for (std::size_t k = 0; k < m; ++k) sub->comp[i][j][k] = cat->comp[objs[i]][objs[j]][objs[k]];
    }
  }
  for (auto& g : cat->generators)
    if (index[g.source] < m && index[g.target] < m)
      sub->generators.push_back({g.name, index[g.source], index[g.target], g.coords});
  for (auto o : cat->order())
    if (index[o] < m) sub->generation_order.push_back(index[o]);
  F.source = sub;
  return F;
}

LinearFunctor wide_subcategory(const CatPtr& cat, const SpanTable& spans, const std::string& suffix) {
  const std::size_t n = cat->size();
  auto sub = std::make_shared<LinearCategory>();
  sub->field = cat->field;
  sub->objects = cat->objects;
  sub->generation_order = cat->generation_order;
  sub->labels.assign(n, std::vector<std::vector<std::string>>(n));
  sub->comp.assign(n, std::vector<std::vector<Matrix>>(n, std::vector<Matrix>(n)));
  LinearFunctor F;
  F.target = cat;
  F.object_map.resize(n);
  std::iota(F.object_map.begin(), F.object_map.end(), 0);
  F.hom = spans;
  for (std::size_t c = 0; c < n; ++c)
    for (std::size_t d = 0; d < n; ++d) {
      const Matrix& B = spans[c][d];
      for (std::size_t t = 0; t < B.cols(); ++t) {
        std::size_t nz = 0, where = 0;
        for (std::size_t i = 0; i < B.rows(); ++i)
          if (!B.is_zero_at(i, t)) {
            ++nz;
            where = i;
          }
        sub->labels[c][d].push_back(nz == 1 && B.at(where, t).is_one() ? cat->labels[c][d][where]
                                                                        : suffix + std::to_string(t));
      }
    }
  for (std::size_t c = 0; c < n; ++c) {
    auto id = solve(spans[c][c], cat->identity[c]);
    if (!id) throw std::invalid_argument("subcategory misses an identity");
    sub->identity.push_back(*id);
    for (std::size_t d = 0; d < n; ++d)
      for (std::size_t e = 0; e < n; ++e) {
        Matrix img = cat->comp[c][d][e] * kron(spans[d][e], spans[c][d]);
        auto x = solve(spans[c][e], img);
        if (!x) throw std::invalid_argument("subcategory not closed under composition");
        sub->comp[c][d][e] = *x;
      }
  }
  for (auto& g : cat->generators) {
    auto x = solve(spans[g.source][g.target], g.coords);
    if (x) sub->generators.push_back({g.name, g.source, g.target, *x});
  }
  F.source = sub;
  return F;
}

LinearFunctor compose_functors(const LinearFunctor& G, const LinearFunctor& F) {
  LinearFunctor H;
  H.source = F.source;
  H.target = G.target;
  const std::size_t m = F.object_map.size();
  H.hom.assign(m, std::vector<Matrix>(m));
  for (std::size_t a = 0; a < m; ++a) {
    H.object_map.push_back(G.object_map[F.object_map[a]]);
    for (std::size_t b = 0; b < m; ++b) H.hom[a][b] = G.hom[F.object_map[a]][F.object_map[b]] * F.hom[a][b];
  }
  return H;
}

LinearFunctor opposite_functor(const LinearFunctor& F) {
  LinearFunctor O;
  O.source = opposite(*F.source);
  O.target = opposite(*F.target);
  O.object_map = F.object_map;
  const std::size_t m = F.object_map.size();
  O.hom.assign(m, std::vector<Matrix>(m));
  for (std::size_t a = 0; a < m; ++a)
    for (std::size_t b = 0; b < m; ++b) O.hom[a][b] = F.hom[b][a];
  return O;
}

ReedyStructure restrict_reedy(const LinearFunctor& inc, const ReedyStructure& rs) {
  const std::size_t m = inc.object_map.size();
  ReedyStructure r;
  r.plus.assign(m, std::vector<Matrix>(m));
  r.minus.assign(m, std::vector<Matrix>(m));
  for (std::size_t i = 0; i < m; ++i) {
    r.degree.push_back(rs.degree[inc.object_map[i]]);
    for (std::size_t j = 0; j < m; ++j) {
      r.plus[i][j] = rs.plus[inc.object_map[i]][inc.object_map[j]];
      r.minus[i][j] = rs.minus[inc.object_map[i]][inc.object_map[j]];
    }
  }
  return r;
}

std::shared_ptr<LinearCategory> tensor_category(const LinearCategory& A, const LinearCategory& B) {
  if (!(A.field == B.field)) throw std::invalid_argument("tensor of categories over different fields");
  const std::size_t na = A.size(), nb = B.size(), n = na * nb;
  auto T = std::make_shared<LinearCategory>();
  T->field = A.field;
  auto obj = [nb](std::size_t c, std::size_t v) { return c * nb + v; };
  T->objects.resize(n);
  T->labels.assign(n, std::vector<std::vector<std::string>>(n));
  T->identity.resize(n);
  for (std::size_t c = 0; c < na; ++c)
    for (std::size_t v = 0; v < nb; ++v) {
      T->objects[obj(c, v)] = "(" + A.objects[c] + "," + B.objects[v] + ")";
      T->identity[obj(c, v)] = kron(A.identity[c], B.identity[v]);
      for (std::size_t d = 0; d < na; ++d)
        for (std::size_t w = 0; w < nb; ++w)
          for (auto& la : A.labels[c][d])
            for (auto& lb : B.labels[v][w]) T->labels[obj(c, v)][obj(d, w)].push_back(la + "⊗" + lb);
    }
  T->comp.assign(n, std::vector<std::vector<Matrix>>(n, std::vector<Matrix>(n)));
  for (std::size_t c = 0; c < na; ++c)
    for (std::size_t v = 0; v < nb; ++v)
      for (std::size_t d = 0; d < na; ++d)
        for (std::size_t w = 0; w < nb; ++w)
          for (std::size_t e = 0; e < na; ++e)
            for (std::size_t x = 0; x < nb; ++x) {
              const std::size_t dcd = A.dim(c, d), dde = A.dim(d, e);
              const std::size_t bvw = B.dim(v, w), bwx = B.dim(w, x);
              const Matrix& CA = A.comp[c][d][e];
              const Matrix& CB = B.comp[v][w][x];
              Matrix K = kron(CA, CB);  // column (gA*dcd+fA)*(bwx*bvw) + (gB*bvw+fB)
              const std::size_t src_fg = dcd * bvw;  // dim Hom((c,v),(d,w))
              Matrix M(A.field, A.dim(c, e) * B.dim(v, x), dde * bwx * src_fg);
              for (std::size_t gA = 0; gA < dde; ++gA)
                for (std::size_t gB = 0; gB < bwx; ++gB)
                  for (std::size_t fA = 0; fA < dcd; ++fA)
                    for (std::size_t fB = 0; fB < bvw; ++fB) {
                      std::size_t G = gA * bwx + gB, Fi = fA * bvw + fB;
                      std::size_t kcol = (gA * dcd + fA) * (bwx * bvw) + (gB * bvw + fB);
                      M.set_block(0, G * src_fg + Fi, K.col(kcol));
                    }
              T->comp[obj(c, v)][obj(d, w)][obj(e, x)] = M;
            }
  for (auto& g : A.generators)
    for (std::size_t v = 0; v < nb; ++v)
      T->generators.push_back({g.name + "⊗e(" + B.objects[v] + ")", obj(g.source, v), obj(g.target, v),
                               kron(g.coords, B.identity[v])});
  for (auto& g : B.generators)
    for (std::size_t c = 0; c < na; ++c)
      T->generators.push_back({"e(" + A.objects[c] + ")⊗" + g.name, obj(c, g.source), obj(c, g.target),
                               kron(A.identity[c], g.coords)});
  return T;
}

ReedyStructure tensor_reedy(const LinearCategory& A, const ReedyStructure& ra, const LinearCategory& B,
                            const ReedyStructure& rb) {
  const std::size_t na = A.size(), nb = B.size(), n = na * nb;
  ReedyStructure r;
  r.degree.resize(n);
  r.plus.assign(n, std::vector<Matrix>(n));
  r.minus.assign(n, std::vector<Matrix>(n));
  for (std::size_t c = 0; c < na; ++c)
    for (std::size_t v = 0; v < nb; ++v) {
      r.degree[c * nb + v] = ra.degree[c] + rb.degree[v];
      for (std::size_t d = 0; d < na; ++d)
        for (std::size_t w = 0; w < nb; ++w) {
          r.plus[c * nb + v][d * nb + w] = kron(ra.plus[c][d], rb.plus[v][w]);
          r.minus[c * nb + v][d * nb + w] = kron(ra.minus[c][d], rb.minus[v][w]);
        }
    }
  return r;
}

std::vector<std::size_t> ascending_degree_order(const ReedyStructure& rs) {
  std::vector<std::size_t> o(rs.degree.size());
  std::iota(o.begin(), o.end(), 0);
  std::stable_sort(o.begin(), o.end(), [&](std::size_t a, std::size_t b) { return rs.degree[a] < rs.degree[b]; });
  return o;
}

std::shared_ptr<LinearCategory> with_order(const LinearCategory& cat, std::vector<std::size_t> order) {
  auto c = std::make_shared<LinearCategory>(cat);
  c->generation_order = std::move(order);
  return c;
}

std::shared_ptr<LinearCategory> discrete_category(const Field& f, std::size_t n) {
  auto c = std::make_shared<LinearCategory>();
  c->field = f;
  c->labels.assign(n, std::vector<std::vector<std::string>>(n));
  c->comp.assign(n, std::vector<std::vector<Matrix>>(n, std::vector<Matrix>(n)));
  for (std::size_t i = 0; i < n; ++i) {
    c->objects.push_back("o" + std::to_string(i));
    c->labels[i][i] = {"e(o" + std::to_string(i) + ")"};
    c->identity.push_back(Matrix::identity(f, 1));
  }
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b)
      for (std::size_t d = 0; d < n; ++d)
        c->comp[a][b][d] = (a == b && b == d) ? Matrix::identity(f, 1) : Matrix(f, c->dim(a, d), c->dim(b, d) * c->dim(a, b));
  return c;
}

}  // namespace reedy
