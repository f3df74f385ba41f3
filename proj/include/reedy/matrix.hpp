#pragma once

#include <cstddef>
#include <initializer_list>
#include <optional>
#include <string>
#include <vector>

#include "reedy/field.hpp"

namespace reedy {

// Dense row-major matrix over an exact field. Prime-field entries are kept
// as machine integers, rational entries as GMP rationals; only the vector
// matching the field kind is populated.
class Matrix {
 public:
  Matrix() = default;
  Matrix(const Field& f, std::size_t rows, std::size_t cols);

  static Matrix identity(const Field& f, std::size_t n);
  static Matrix from_rows(const Field& f, const std::vector<std::vector<long>>& rows);
  static Matrix from_rows(const Field& f, std::initializer_list<std::initializer_list<long>> rows);
  static Matrix column(const std::vector<Scalar>& entries, const Field& f);
  static Matrix unit_column(const Field& f, std::size_t n, std::size_t i);

  const Field& field() const { return field_; }
  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool empty() const { return rows_ == 0 || cols_ == 0; }

  Scalar at(std::size_t i, std::size_t j) const;
  void set(std::size_t i, std::size_t j, const Scalar& v);
  void set(std::size_t i, std::size_t j, long v);
  void add_at(std::size_t i, std::size_t j, const Scalar& v);
  bool is_zero_at(std::size_t i, std::size_t j) const;

  bool is_zero() const;
  bool operator==(const Matrix& o) const;

  Matrix operator*(const Matrix& o) const;
  Matrix operator+(const Matrix& o) const;
  Matrix operator-(const Matrix& o) const;
  Matrix operator-() const;
  Matrix& operator+=(const Matrix& o);
  Matrix scaled(const Scalar& s) const;
  // this += s * o
  void add_scaled(const Scalar& s, const Matrix& o);

  Matrix transpose() const;
  Matrix block(std::size_t r0, std::size_t c0, std::size_t nr, std::size_t nc) const;
  void set_block(std::size_t r0, std::size_t c0, const Matrix& m);
  Matrix col(std::size_t j) const;
  Matrix select_cols(const std::vector<std::size_t>& idx) const;
  Matrix select_rows(const std::vector<std::size_t>& idx) const;

  std::vector<Scalar> column_entries(std::size_t j) const;
  std::string str() const;

  // Raw access for the elimination kernels.
  std::vector<std::uint32_t>& fp_data() { return fp_; }
  const std::vector<std::uint32_t>& fp_data() const { return fp_; }
  std::vector<mpq_class>& q_data() { return q_; }
  const std::vector<mpq_class>& q_data() const { return q_; }

 private:
  Field field_;
  std::size_t rows_ = 0, cols_ = 0;
  std::vector<std::uint32_t> fp_;
  std::vector<mpq_class> q_;
};

Matrix kron(const Matrix& a, const Matrix& b);
Matrix hstack(const std::vector<Matrix>& parts, const Field& f, std::size_t rows);
Matrix vstack(const std::vector<Matrix>& parts, const Field& f, std::size_t cols);
Matrix hstack(const Matrix& a, const Matrix& b);
Matrix vstack(const Matrix& a, const Matrix& b);
Matrix direct_sum(const Matrix& a, const Matrix& b);

struct Echelon {
  Matrix reduced;                    // reduced row echelon form
  std::vector<std::size_t> pivots;   // pivot column of each nonzero row
};

Echelon rref(const Matrix& m);
std::size_t rank(const Matrix& m);
// Columns span the kernel; one column per free variable of the reduced form.
Matrix kernel_basis(const Matrix& m);
// Solves m x = b for every column of b; nullopt if some column is outside the image.
std::optional<Matrix> solve(const Matrix& m, const Matrix& b);

struct Cokernel {
  Matrix projection;  // dim x rows(m), kernel = column space of m
  Matrix lift;        // rows(m) x dim, projection * lift = identity
  std::size_t dim = 0;
};
Cokernel cokernel(const Matrix& m);

// Canonical basis of the column space (reduced column echelon form).
Matrix span_basis(const Matrix& m);
bool same_span(const Matrix& a, const Matrix& b);
// True iff every column of v lies in the column space of basis.
bool in_span(const Matrix& basis, const Matrix& v);
Matrix span_sum(const Matrix& a, const Matrix& b);
Matrix span_intersection(const Matrix& a, const Matrix& b);
std::optional<Matrix> inverse(const Matrix& m);

}  // namespace reedy
