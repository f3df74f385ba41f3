#pragma once
// Reference computations used only by the tests. None of them call into the
// algorithms they check; they enumerate, count or solve from first principles.

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "reedy/repmod.hpp"

namespace oracle {

// Number of vectors x in GF(p)^cols with M x = 0, by enumeration.
inline std::uint64_t null_count(const std::vector<std::vector<long>>& M, std::size_t cols, long p) {
  std::uint64_t total = 1, count = 0;
  for (std::size_t i = 0; i < cols; ++i) total *= static_cast<std::uint64_t>(p);
  std::vector<long> x(cols);
  for (std::uint64_t code = 0; code < total; ++code) {
    std::uint64_t t = code;
    for (std::size_t i = 0; i < cols; ++i, t /= p) x[i] = static_cast<long>(t % p);
    bool zero = true;
    for (auto& row : M) {
      long s = 0;
      for (std::size_t j = 0; j < cols; ++j) s = (s + row[j] * x[j]) % p;
      zero = zero && s == 0;
    }
    count += zero;
  }
  return count;
}

// Paths in a quiver avoiding a set of forbidden consecutive arrow pairs
// (first applied, then applied), including the trivial paths.
struct MonomialQuiver {
  std::size_t vertices = 0;
  std::vector<std::pair<std::size_t, std::size_t>> arrows;  // source, target
  std::vector<std::pair<std::size_t, std::size_t>> forbidden;
};
inline std::size_t count_paths(const MonomialQuiver& q, std::size_t max_length) {
  std::size_t total = q.vertices;
  std::vector<std::size_t> frontier;  // last arrow of each path of the current length
  for (std::size_t a = 0; a < q.arrows.size(); ++a) frontier.push_back(a);
  for (std::size_t len = 1; len <= max_length && !frontier.empty(); ++len) {
    total += frontier.size();
    std::vector<std::size_t> next;
    for (std::size_t last : frontier)
      for (std::size_t a = 0; a < q.arrows.size(); ++a) {
        if (q.arrows[a].first != q.arrows[last].second) continue;
        bool bad = false;
        for (auto& f : q.forbidden) bad = bad || (f.first == last && f.second == a);
        if (!bad) next.push_back(a);
      }
    frontier = std::move(next);
  }
  return total;
}

// Order-preserving maps {0..m} -> {0..n}.
inline std::size_t monotone_maps(std::size_t m, std::size_t n) {
  std::function<std::size_t(std::size_t, std::size_t)> rec = [&](std::size_t i, std::size_t lo) -> std::size_t {
    if (i > m) return 1;
    std::size_t s = 0;
    for (std::size_t v = lo; v <= n; ++v) s += rec(i + 1, v);
    return s;
  };
  return rec(0, 0);
}

// Total algebra of a finite category and a module as a representation of it.
// Basis element k is (c, d, i): the i-th basis morphism of Hom(c, d).
struct TotalAlgebra {
  struct Element {
    std::size_t c, d, i;
  };
  std::vector<Element> basis;
  explicit TotalAlgebra(const reedy::LinearCategory& C) {
    for (std::size_t c = 0; c < C.size(); ++c)
      for (std::size_t d = 0; d < C.size(); ++d)
        for (std::size_t i = 0; i < C.dim(c, d); ++i) basis.push_back({c, d, i});
  }
};

// Block matrix of the action of basis morphism e on the total space of X.
inline reedy::Matrix total_action(const reedy::CatModule& X, const TotalAlgebra::Element& e) {
  std::vector<std::size_t> off(X.size() + 1, 0);
  for (std::size_t c = 0; c < X.size(); ++c) off[c + 1] = off[c] + X.dims[c];
  reedy::Matrix m(X.field(), off.back(), off.back());
  if (X.dims[e.c] && X.dims[e.d]) m.set_block(off[e.d], off[e.c], X.action[e.c][e.d][e.i]);
  return m;
}

// dim Ext^1(X, Y) as derivations A -> Hom_k(X, Y) modulo inner derivations.
inline std::size_t ext1_by_derivations(const reedy::CatModule& X, const reedy::CatModule& Y) {
  using reedy::Matrix;
  const reedy::LinearCategory& C = *X.cat;
  const reedy::Field& F = X.field();
  TotalAlgebra A(C);
  const std::size_t N = A.basis.size(), dx = X.total_dim(), dy = Y.total_dim(), h = dx * dy;
  if (h == 0) return 0;
  std::vector<Matrix> ax, ay;
  for (auto& e : A.basis) {
    ax.push_back(total_action(X, e));
    ay.push_back(total_action(Y, e));
  }
  // Unknowns: delta(b_k) as a dy x dx matrix, entries (r, s) at k*h + r*dx + s.
  auto vec_index = [&](std::size_t k, std::size_t r, std::size_t s) { return k * h + r * dx + s; };
  std::vector<std::vector<reedy::Scalar>> rows;
  for (std::size_t a = 0; a < N; ++a)
    for (std::size_t b = 0; b < N; ++b) {
      const auto& ea = A.basis[a];
      const auto& eb = A.basis[b];
      // b_a b_b = composite when eb ends where ea starts, else 0.
      Matrix prod(F, N, 1);
      if (eb.d == ea.c) {
        Matrix g = C.basis_vector(ea.c, ea.d, ea.i), f = C.basis_vector(eb.c, eb.d, eb.i);
        Matrix gf = C.compose(eb.c, eb.d, ea.d, g, f);
        for (std::size_t k = 0; k < N; ++k)
          if (A.basis[k].c == eb.c && A.basis[k].d == ea.d) prod.set(k, 0, gf.at(A.basis[k].i, 0));
      }
      // delta(ab) - a delta(b) - delta(a) b = 0, entrywise.
      for (std::size_t r = 0; r < dy; ++r)
        for (std::size_t s = 0; s < dx; ++s) {
          std::vector<reedy::Scalar> row(N * h, reedy::Scalar::zero(F));
          for (std::size_t k = 0; k < N; ++k) row[vec_index(k, r, s)] = row[vec_index(k, r, s)] + prod.at(k, 0);
          for (std::size_t t = 0; t < dy; ++t) row[vec_index(b, t, s)] = row[vec_index(b, t, s)] - ay[a].at(r, t);
          for (std::size_t t = 0; t < dx; ++t) row[vec_index(a, r, t)] = row[vec_index(a, r, t)] - ax[b].at(t, s);
          rows.push_back(std::move(row));
        }
    }
  Matrix eq(F, rows.size(), N * h);
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (std::size_t j = 0; j < N * h; ++j)
      if (!rows[i][j].is_zero()) eq.set(i, j, rows[i][j]);
  const std::size_t der = N * h - reedy::rank(eq);
  // Inner derivations a |-> a phi - phi a, phi in Hom_k(X, Y).
  Matrix inner(F, N * h, h);
  for (std::size_t r = 0; r < dy; ++r)
    for (std::size_t s = 0; s < dx; ++s) {
      Matrix phi(F, dy, dx);
      phi.set(r, s, 1L);
      for (std::size_t k = 0; k < N; ++k) {
        Matrix d = ay[k] * phi - phi * ax[k];
        for (std::size_t u = 0; u < dy; ++u)
          for (std::size_t w = 0; w < dx; ++w)
            if (!d.is_zero_at(u, w)) inner.set(vec_index(k, u, w), r * dx + s, d.at(u, w));
      }
    }
  return der - reedy::rank(inner);
}

// dim Hom(X, Y) over GF(p) by enumerating all families of component matrices.
inline std::size_t hom_dim_by_enumeration(const reedy::CatModule& X, const reedy::CatModule& Y) {
  const reedy::Field& F = X.field();
  const long p = F.p;
  std::size_t entries = 0;
  for (std::size_t c = 0; c < X.size(); ++c) entries += X.dims[c] * Y.dims[c];
  std::uint64_t total = 1;
  for (std::size_t i = 0; i < entries; ++i) total *= static_cast<std::uint64_t>(p);
  std::uint64_t natural = 0;
  for (std::uint64_t code = 0; code < total; ++code) {
    std::uint64_t t = code;
    std::vector<reedy::Matrix> comp;
    for (std::size_t c = 0; c < X.size(); ++c) {
      reedy::Matrix m(F, Y.dims[c], X.dims[c]);
      for (std::size_t r = 0; r < Y.dims[c]; ++r)
        for (std::size_t s = 0; s < X.dims[c]; ++s, t /= p) m.set(r, s, static_cast<long>(t % p));
      comp.push_back(m);
    }
    bool ok = true;
    for (std::size_t c = 0; c < X.size() && ok; ++c)
      for (std::size_t d = 0; d < X.size() && ok; ++d)
        for (std::size_t i = 0; i < X.action[c][d].size() && ok; ++i)
          ok = comp[d] * X.action[c][d][i] == Y.action[c][d][i] * comp[c];
    natural += ok;
  }
  std::size_t dim = 0;
  while (natural > 1) {
    natural /= static_cast<std::uint64_t>(p);
    ++dim;
  }
  return dim;
}

}  // namespace oracle
