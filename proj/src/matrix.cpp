#include "reedy/matrix.hpp"

#include <sstream>
#include <stdexcept>

namespace reedy {

namespace {

struct FpOps {
  using E = std::uint32_t;
  std::uint32_t p;
  E zero() const { return 0; }
  E one() const { return 1; }
  E add(E a, E b) const {
    E s = a + b;
    return s >= p ? s - p : s;
  }
  E sub(E a, E b) const { return a >= b ? a - b : a + p - b; }
  E mul(E a, E b) const { return static_cast<E>(static_cast<std::uint64_t>(a) * b % p); }
  E neg(E a) const { return a ? p - a : 0; }
  E inv(E a) const { return inverse_mod(a, p); }
  bool is_zero(E a) const { return a == 0; }
  static std::vector<E>& data(Matrix& m) { return m.fp_data(); }
  static const std::vector<E>& data(const Matrix& m) { return m.fp_data(); }
};

struct QOps {
  using E = mpq_class;
  E zero() const { return 0; }
  E one() const { return 1; }
  E add(const E& a, const E& b) const { return a + b; }
  E sub(const E& a, const E& b) const { return a - b; }
  E mul(const E& a, const E& b) const { return a * b; }
  E neg(const E& a) const { return -a; }
  E inv(const E& a) const { return 1 / a; }
  bool is_zero(const E& a) const { return sgn(a) == 0; }
  static std::vector<E>& data(Matrix& m) { return m.q_data(); }
  static const std::vector<E>& data(const Matrix& m) { return m.q_data(); }
};

template <class F>
decltype(auto) with_ops(const Field& f, F&& fn) {
  if (f.is_prime_field()) return fn(FpOps{f.p});
  return fn(QOps{});
}

void check_same_field(const Matrix& a, const Matrix& b) {
  if (!(a.field() == b.field())) throw std::invalid_argument("matrix field mismatch");
}

// In-place reduced row echelon form; returns pivot columns.
template <class Ops>
std::vector<std::size_t> rref_in_place(Ops ops, Matrix& m) {
  auto& d = Ops::data(m);
  const std::size_t R = m.rows(), C = m.cols();
  std::vector<std::size_t> pivots;
  std::size_t row = 0;
  for (std::size_t col = 0; col < C && row < R; ++col) {
    std::size_t sel = R;
    for (std::size_t i = row; i < R; ++i)
      if (!ops.is_zero(d[i * C + col])) {
        sel = i;
        break;
      }
    if (sel == R) continue;
    if (sel != row)
      for (std::size_t j = col; j < C; ++j) std::swap(d[sel * C + j], d[row * C + j]);
    auto inv = ops.inv(d[row * C + col]);
    for (std::size_t j = col; j < C; ++j) d[row * C + j] = ops.mul(d[row * C + j], inv);
    for (std::size_t i = 0; i < R; ++i) {
      if (i == row || ops.is_zero(d[i * C + col])) continue;
      auto factor = d[i * C + col];
      for (std::size_t j = col; j < C; ++j) {
        if (ops.is_zero(d[row * C + j])) continue;
        d[i * C + j] = ops.sub(d[i * C + j], ops.mul(factor, d[row * C + j]));
      }
    }
    pivots.push_back(col);
    ++row;
  }
  return pivots;
}

}  // namespace

Matrix::Matrix(const Field& f, std::size_t rows, std::size_t cols)
    : field_(f), rows_(rows), cols_(cols) {
  if (f.is_prime_field())
    fp_.assign(rows * cols, 0);
  else
    q_.assign(rows * cols, mpq_class(0));
}

Matrix Matrix::identity(const Field& f, std::size_t n) {
  Matrix m(f, n, n);
  for (std::size_t i = 0; i < n; ++i) m.set(i, i, 1L);
  return m;
}

Matrix Matrix::from_rows(const Field& f, const std::vector<std::vector<long>>& rows) {
  std::size_t r = rows.size(), c = r ? rows[0].size() : 0;
  Matrix m(f, r, c);
  for (std::size_t i = 0; i < r; ++i) {
    if (rows[i].size() != c) throw std::invalid_argument("ragged matrix rows");
    for (std::size_t j = 0; j < c; ++j) m.set(i, j, rows[i][j]);
  }
  return m;
}

Matrix Matrix::from_rows(const Field& f, std::initializer_list<std::initializer_list<long>> rows) {
  std::vector<std::vector<long>> v;
  for (auto& r : rows) v.emplace_back(r);
  return from_rows(f, v);
}

Matrix Matrix::column(const std::vector<Scalar>& entries, const Field& f) {
  Matrix m(f, entries.size(), 1);
  for (std::size_t i = 0; i < entries.size(); ++i) m.set(i, 0, entries[i]);
  return m;
}

Matrix Matrix::unit_column(const Field& f, std::size_t n, std::size_t i) {
  Matrix m(f, n, 1);
  m.set(i, 0, 1L);
  return m;
}

Scalar Matrix::at(std::size_t i, std::size_t j) const {
  if (field_.is_prime_field()) return Scalar(field_, static_cast<long>(fp_[i * cols_ + j]));
  return Scalar(field_, q_[i * cols_ + j]);
}

void Matrix::set(std::size_t i, std::size_t j, const Scalar& v) {
  if (field_.is_prime_field())
    fp_[i * cols_ + j] = v.fp();
  else
    q_[i * cols_ + j] = v.q();
}

void Matrix::set(std::size_t i, std::size_t j, long v) { set(i, j, Scalar(field_, v)); }

void Matrix::add_at(std::size_t i, std::size_t j, const Scalar& v) {
  if (field_.is_prime_field())
    fp_[i * cols_ + j] = FpOps{field_.p}.add(fp_[i * cols_ + j], v.fp());
  else
    q_[i * cols_ + j] += v.q();
}

bool Matrix::is_zero_at(std::size_t i, std::size_t j) const {
  return field_.is_prime_field() ? fp_[i * cols_ + j] == 0 : sgn(q_[i * cols_ + j]) == 0;
}

bool Matrix::is_zero() const {
  if (field_.is_prime_field()) {
    for (auto v : fp_)
      if (v) return false;
    return true;
  }
  for (auto& v : q_)
    if (sgn(v) != 0) return false;
  return true;
}

bool Matrix::operator==(const Matrix& o) const {
  return field_ == o.field_ && rows_ == o.rows_ && cols_ == o.cols_ && fp_ == o.fp_ && q_ == o.q_;
}

Matrix Matrix::operator*(const Matrix& o) const {
  check_same_field(*this, o);
  if (cols_ != o.rows_) throw std::invalid_argument("matrix product shape mismatch");
  Matrix r(field_, rows_, o.cols_);
  with_ops(field_, [&](auto ops) {
    using Ops = decltype(ops);
    const auto& a = Ops::data(*this);
    const auto& b = Ops::data(o);
    auto& c = Ops::data(r);
    const std::size_t K = cols_, N = o.cols_;
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t k = 0; k < K; ++k) {
        const auto& aik = a[i * K + k];
        if (ops.is_zero(aik)) continue;
        for (std::size_t j = 0; j < N; ++j) {
          const auto& bkj = b[k * N + j];
          if (ops.is_zero(bkj)) continue;
          c[i * N + j] = ops.add(c[i * N + j], ops.mul(aik, bkj));
        }
      }
  });
  return r;
}

Matrix Matrix::operator+(const Matrix& o) const {
  Matrix r = *this;
  r += o;
  return r;
}

Matrix& Matrix::operator+=(const Matrix& o) {
  check_same_field(*this, o);
  if (rows_ != o.rows_ || cols_ != o.cols_) throw std::invalid_argument("matrix sum shape mismatch");
  with_ops(field_, [&](auto ops) {
    using Ops = decltype(ops);
    auto& a = Ops::data(*this);
    const auto& b = Ops::data(o);
    for (std::size_t i = 0; i < a.size(); ++i) a[i] = ops.add(a[i], b[i]);
  });
  return *this;
}

Matrix Matrix::operator-() const {
  Matrix r = *this;
  with_ops(field_, [&](auto ops) {
    using Ops = decltype(ops);
    for (auto& v : Ops::data(r)) v = ops.neg(v);
  });
  return r;
}

Matrix Matrix::operator-(const Matrix& o) const { return *this + (-o); }

Matrix Matrix::scaled(const Scalar& s) const {
  Matrix r = *this;
  with_ops(field_, [&](auto ops) {
    using Ops = decltype(ops);
    typename Ops::E k;
    if constexpr (std::is_same_v<Ops, FpOps>)
      k = s.fp();
    else
      k = s.q();
    for (auto& v : Ops::data(r)) v = ops.mul(v, k);
  });
  return r;
}

void Matrix::add_scaled(const Scalar& s, const Matrix& o) {
  check_same_field(*this, o);
  if (rows_ != o.rows_ || cols_ != o.cols_) throw std::invalid_argument("add_scaled shape mismatch");
  if (s.is_zero()) return;
  with_ops(field_, [&](auto ops) {
    using Ops = decltype(ops);
    typename Ops::E k;
    if constexpr (std::is_same_v<Ops, FpOps>)
      k = s.fp();
    else
      k = s.q();
    auto& a = Ops::data(*this);
    const auto& b = Ops::data(o);
    for (std::size_t i = 0; i < a.size(); ++i)
      if (!ops.is_zero(b[i])) a[i] = ops.add(a[i], ops.mul(k, b[i]));
  });
}

Matrix Matrix::transpose() const {
  Matrix r(field_, cols_, rows_);
  with_ops(field_, [&](auto ops) {
    using Ops = decltype(ops);
    const auto& a = Ops::data(*this);
    auto& b = Ops::data(r);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) b[j * rows_ + i] = a[i * cols_ + j];
  });
  return r;
}

Matrix Matrix::block(std::size_t r0, std::size_t c0, std::size_t nr, std::size_t nc) const {
  if (r0 + nr > rows_ || c0 + nc > cols_) throw std::out_of_range("block out of range");
  Matrix r(field_, nr, nc);
  with_ops(field_, [&](auto ops) {
    using Ops = decltype(ops);
    const auto& a = Ops::data(*this);
    auto& b = Ops::data(r);
    for (std::size_t i = 0; i < nr; ++i)
      for (std::size_t j = 0; j < nc; ++j) b[i * nc + j] = a[(r0 + i) * cols_ + c0 + j];
  });
  return r;
}

void Matrix::set_block(std::size_t r0, std::size_t c0, const Matrix& m) {
  check_same_field(*this, m);
  if (r0 + m.rows_ > rows_ || c0 + m.cols_ > cols_) throw std::out_of_range("set_block out of range");
  with_ops(field_, [&](auto ops) {
    using Ops = decltype(ops);
    auto& a = Ops::data(*this);
    const auto& b = Ops::data(m);
    for (std::size_t i = 0; i < m.rows_; ++i)
      for (std::size_t j = 0; j < m.cols_; ++j) a[(r0 + i) * cols_ + c0 + j] = b[i * m.cols_ + j];
  });
}

Matrix Matrix::col(std::size_t j) const { return block(0, j, rows_, 1); }

Matrix Matrix::select_cols(const std::vector<std::size_t>& idx) const {
  Matrix r(field_, rows_, idx.size());
  for (std::size_t k = 0; k < idx.size(); ++k)
    for (std::size_t i = 0; i < rows_; ++i) r.set(i, k, at(i, idx[k]));
  return r;
}

Matrix Matrix::select_rows(const std::vector<std::size_t>& idx) const {
  Matrix r(field_, idx.size(), cols_);
  for (std::size_t k = 0; k < idx.size(); ++k) r.set_block(k, 0, block(idx[k], 0, 1, cols_));
  return r;
}

std::vector<Scalar> Matrix::column_entries(std::size_t j) const {
  std::vector<Scalar> v;
  v.reserve(rows_);
  for (std::size_t i = 0; i < rows_; ++i) v.push_back(at(i, j));
  return v;
}

std::string Matrix::str() const {
  std::ostringstream os;
  os << "[";
  for (std::size_t i = 0; i < rows_; ++i) {
    os << (i ? ", [" : "[");
    for (std::size_t j = 0; j < cols_; ++j) os << (j ? ", " : "") << at(i, j).str();
    os << "]";
  }
  os << "]";
  return os.str();
}

Matrix kron(const Matrix& a, const Matrix& b) {
  check_same_field(a, b);
  Matrix r(a.field(), a.rows() * b.rows(), a.cols() * b.cols());
  with_ops(a.field(), [&](auto ops) {
    using Ops = decltype(ops);
    const auto& da = Ops::data(a);
    const auto& db = Ops::data(b);
    auto& dr = Ops::data(r);
    const std::size_t RC = r.cols();
    for (std::size_t i = 0; i < a.rows(); ++i)
      for (std::size_t j = 0; j < a.cols(); ++j) {
        const auto& x = da[i * a.cols() + j];
        if (ops.is_zero(x)) continue;
        for (std::size_t k = 0; k < b.rows(); ++k)
          for (std::size_t l = 0; l < b.cols(); ++l) {
            const auto& y = db[k * b.cols() + l];
            if (ops.is_zero(y)) continue;
            dr[(i * b.rows() + k) * RC + j * b.cols() + l] = ops.mul(x, y);
          }
      }
  });
  return r;
}

Matrix hstack(const std::vector<Matrix>& parts, const Field& f, std::size_t rows) {
  std::size_t c = 0;
  for (auto& p : parts) {
    if (p.rows() != rows) throw std::invalid_argument("hstack row mismatch");
    c += p.cols();
  }
  Matrix r(f, rows, c);
  std::size_t off = 0;
  for (auto& p : parts) {
    r.set_block(0, off, p);
    off += p.cols();
  }
  return r;
}

Matrix vstack(const std::vector<Matrix>& parts, const Field& f, std::size_t cols) {
  std::size_t rr = 0;
  for (auto& p : parts) {
    if (p.cols() != cols) throw std::invalid_argument("vstack column mismatch");
    rr += p.rows();
  }
  Matrix r(f, rr, cols);
  std::size_t off = 0;
  for (auto& p : parts) {
    r.set_block(off, 0, p);
    off += p.rows();
  }
  return r;
}

Matrix hstack(const Matrix& a, const Matrix& b) { return hstack({a, b}, a.field(), a.rows()); }
Matrix vstack(const Matrix& a, const Matrix& b) { return vstack({a, b}, a.field(), a.cols()); }

Matrix direct_sum(const Matrix& a, const Matrix& b) {
  Matrix r(a.field(), a.rows() + b.rows(), a.cols() + b.cols());
  r.set_block(0, 0, a);
  r.set_block(a.rows(), a.cols(), b);
  return r;
}

Echelon rref(const Matrix& m) {
  Echelon e{m, {}};
  e.pivots = with_ops(m.field(), [&](auto ops) { return rref_in_place(ops, e.reduced); });
  return e;
}

std::size_t rank(const Matrix& m) { return rref(m).pivots.size(); }

Matrix kernel_basis(const Matrix& m) {
  Echelon e = rref(m);
  const std::size_t C = m.cols();
  std::vector<bool> is_pivot(C, false);
  for (auto p : e.pivots) is_pivot[p] = true;
  std::vector<std::size_t> free_cols;
  for (std::size_t j = 0; j < C; ++j)
    if (!is_pivot[j]) free_cols.push_back(j);
  Matrix k(m.field(), C, free_cols.size());
  for (std::size_t t = 0; t < free_cols.size(); ++t) {
    std::size_t f = free_cols[t];
    k.set(f, t, 1L);
    for (std::size_t r = 0; r < e.pivots.size(); ++r) {
      if (e.reduced.is_zero_at(r, f)) continue;
      k.set(e.pivots[r], t, -e.reduced.at(r, f));
    }
  }
  return k;
}

std::optional<Matrix> solve(const Matrix& m, const Matrix& b) {
  if (b.rows() != m.rows()) throw std::invalid_argument("solve: dimension mismatch");
  const std::size_t C = m.cols();
  Echelon e = rref(hstack(m, b));
  Matrix x(m.field(), C, b.cols());
  for (std::size_t r = 0; r < e.pivots.size(); ++r) {
    if (e.pivots[r] >= C) return std::nullopt;
    for (std::size_t j = 0; j < b.cols(); ++j) x.set(e.pivots[r], j, e.reduced.at(r, C + j));
  }
  return x;
}

Matrix span_basis(const Matrix& m) {
  Echelon e = rref(m.transpose());
  return e.reduced.block(0, 0, e.pivots.size(), m.rows()).transpose();
}

Cokernel cokernel(const Matrix& m) {
  const Field& f = m.field();
  const std::size_t n = m.rows();
  Echelon e = rref(m.transpose());
  const std::size_t r = e.pivots.size();
  // Column-reduced basis S: S[pivot_k][k'] = delta.
  std::vector<bool> is_pivot(n, false);
  for (auto p : e.pivots) is_pivot[p] = true;
  std::vector<std::size_t> rest;
  for (std::size_t i = 0; i < n; ++i)
    if (!is_pivot[i]) rest.push_back(i);
  Cokernel c;
  c.dim = rest.size();
  c.projection = Matrix(f, c.dim, n);
  c.lift = Matrix(f, n, c.dim);
  for (std::size_t t = 0; t < rest.size(); ++t) {
    std::size_t row = rest[t];
    c.projection.set(t, row, 1L);
    c.lift.set(row, t, 1L);
    for (std::size_t k = 0; k < r; ++k) {
      if (e.reduced.is_zero_at(k, row)) continue;
      c.projection.set(t, e.pivots[k], -e.reduced.at(k, row));
    }
  }
  return c;
}

bool same_span(const Matrix& a, const Matrix& b) { return span_basis(a) == span_basis(b); }

bool in_span(const Matrix& basis, const Matrix& v) {
  if (v.cols() == 0) return true;
  return rank(hstack(basis, v)) == rank(basis);
}

Matrix span_sum(const Matrix& a, const Matrix& b) { return span_basis(hstack(a, b)); }

Matrix span_intersection(const Matrix& a, const Matrix& b) {
  Matrix ab = span_basis(a), bb = span_basis(b);
  Matrix k = kernel_basis(hstack(ab, -bb));
  return span_basis(ab * k.block(0, 0, ab.cols(), k.cols()));
}

std::optional<Matrix> inverse(const Matrix& m) {
  if (m.rows() != m.cols()) return std::nullopt;
  auto x = solve(m, Matrix::identity(m.field(), m.rows()));
  if (!x || rank(m) != m.rows()) return std::nullopt;
  return x;
}

}  // namespace reedy
