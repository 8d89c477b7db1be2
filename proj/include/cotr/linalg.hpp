#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "cotr/errors.hpp"

namespace cotr {

using Scalar = std::uint32_t;

bool is_prime(std::uint64_t n);
Scalar mod_inverse(Scalar a, Scalar p);
Scalar reduce(long long v, Scalar p);

// Dense row-major matrix over F_p. Every matrix carries its own p.
class Matrix {
 public:
  Matrix() = default;
  Matrix(int rows, int cols, Scalar p);

  static Matrix zero(int rows, int cols, Scalar p) { return Matrix(rows, cols, p); }
  static Matrix identity(int n, Scalar p);
  static Matrix from_rows(const std::vector<std::vector<long long>>& rows, Scalar p,
                          int cols_if_empty = 0);
  static Matrix column(const std::vector<Scalar>& v, Scalar p);

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  Scalar p() const { return p_; }
  bool empty() const { return rows_ == 0 || cols_ == 0; }

  Scalar operator()(int i, int j) const { return data_[std::size_t(i) * cols_ + j]; }
  Scalar& at(int i, int j) { return data_[std::size_t(i) * cols_ + j]; }
  void set(int i, int j, long long v) { at(i, j) = reduce(v, p_); }
  const Scalar* row_ptr(int i) const { return data_.data() + std::size_t(i) * cols_; }
  Scalar* row_ptr(int i) { return data_.data() + std::size_t(i) * cols_; }
  const std::vector<Scalar>& data() const { return data_; }

  bool is_zero() const;
  bool is_identity() const;
  Matrix transpose() const;
  Matrix operator*(const Matrix& o) const;
  Matrix operator+(const Matrix& o) const;
  Matrix operator-(const Matrix& o) const;
  Matrix operator-() const;
  Matrix scaled(Scalar c) const;
  bool operator==(const Matrix& o) const;
  bool operator!=(const Matrix& o) const { return !(*this == o); }

  Matrix block(int r0, int c0, int nr, int nc) const;
  void set_block(int r0, int c0, const Matrix& b);
  Matrix col(int j) const;
  Matrix select_cols(const std::vector<int>& idx) const;
  Matrix select_rows(const std::vector<int>& idx) const;
  std::vector<Scalar> col_vector(int j) const;
  // Column-major flattening, used to vectorize Hom elements.
  std::vector<Scalar> vec() const;
  static Matrix unvec(const std::vector<Scalar>& v, int rows, int cols, Scalar p);

  std::vector<std::vector<long long>> to_rows() const;
  std::string to_string() const;

 private:
  int rows_ = 0, cols_ = 0;
  Scalar p_ = 2;
  std::vector<Scalar> data_;
};

Matrix hcat(const std::vector<Matrix>& ms, int rows, Scalar p);
Matrix vcat(const std::vector<Matrix>& ms, int cols, Scalar p);

struct RrefResult {
  Matrix reduced;
  std::vector<int> pivots;
};

RrefResult rref(const Matrix& m);
int rank(const Matrix& m);
// Columns form a basis of the null space; free variables enumerated left to right.
Matrix kernel_basis(const Matrix& m);
// Pivot columns of m, a basis of its column space.
Matrix image_basis(const Matrix& m);
std::optional<Matrix> solve(const Matrix& m, const Matrix& b);
Matrix invert(const Matrix& m);
bool is_invertible(const Matrix& m);
Matrix compose(const Matrix& a, const Matrix& b);
Matrix direct_sum(const Matrix& a, const Matrix& b);
Matrix direct_sum(const std::vector<Matrix>& ms, Scalar p);
Matrix kronecker(const Matrix& a, const Matrix& b);
// P^{-1} m P.
Matrix change_of_basis(const Matrix& m, const Matrix& P);
// Q^{-1} m P for m: V -> W with new bases P of V, Q of W.
Matrix change_of_basis(const Matrix& m, const Matrix& P, const Matrix& Q);

// Matrix L with L*m = I, for m of full column rank.
Matrix left_inverse(const Matrix& m);
// Columns extending a basis of col(sub) to a basis of F_p^n (sub need not be independent).
Matrix complement_basis(const Matrix& sub, int n);
// Basis of col(a) ∩ col(b).
Matrix intersect_spaces(const Matrix& a, const Matrix& b);
bool in_span(const Matrix& basis, const Matrix& v);
// Independent columns of [a | b] taken greedily: a basis of col(a) + col(b).
Matrix sum_spaces(const Matrix& a, const Matrix& b);
// Row-reduced basis of the column space, used as a canonical key.
Matrix canonical_span(const Matrix& cols);

}  // namespace cotr
