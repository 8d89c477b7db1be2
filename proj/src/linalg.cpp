#include "cotr/linalg.hpp"

#include <sstream>

#include "cotr/kernels.hpp"

namespace cotr {

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

Scalar reduce(long long v, Scalar p) {
  long long r = v % static_cast<long long>(p);
  if (r < 0) r += p;
  return Scalar(r);
}

Scalar mod_inverse(Scalar a, Scalar p) {
  long long t = 0, nt = 1, r = p, nr = a % p;
  while (nr != 0) {
    long long q = r / nr;
    t -= q * nt;
    std::swap(t, nt);
    r -= q * nr;
    std::swap(r, nr);
  }
  if (r != 1) throw SingularMatrix("no inverse of " + std::to_string(a) + " mod " + std::to_string(p));
  return reduce(t, p);
}

Matrix::Matrix(int rows, int cols, Scalar p)
    : rows_(rows), cols_(cols), p_(p), data_(std::size_t(rows) * std::size_t(cols), 0) {
  if (rows < 0 || cols < 0) throw DimensionMismatch("negative matrix shape");
}

Matrix Matrix::identity(int n, Scalar p) {
  Matrix m(n, n, p);
  for (int i = 0; i < n; ++i) m.at(i, i) = 1 % p;
  return m;
}

Matrix Matrix::from_rows(const std::vector<std::vector<long long>>& rows, Scalar p,
                         int cols_if_empty) {
  int nc = rows.empty() ? cols_if_empty : int(rows[0].size());
  Matrix m(int(rows.size()), nc, p);
  for (int i = 0; i < m.rows_; ++i) {
    if (int(rows[i].size()) != nc) throw DimensionMismatch("ragged matrix rows");
    for (int j = 0; j < nc; ++j) m.set(i, j, rows[i][j]);
  }
  return m;
}

Matrix Matrix::column(const std::vector<Scalar>& v, Scalar p) {
  Matrix m(int(v.size()), 1, p);
  for (int i = 0; i < m.rows_; ++i) m.at(i, 0) = v[i] % p;
  return m;
}

bool Matrix::is_zero() const {
  for (Scalar v : data_)
    if (v) return false;
  return true;
}

bool Matrix::is_identity() const {
  if (rows_ != cols_) return false;
  for (int i = 0; i < rows_; ++i)
    for (int j = 0; j < cols_; ++j)
      if ((*this)(i, j) != (i == j ? 1u : 0u)) return false;
  return true;
}

Matrix Matrix::transpose() const {
  Matrix t(cols_, rows_, p_);
  for (int i = 0; i < rows_; ++i)
    for (int j = 0; j < cols_; ++j) t.at(j, i) = (*this)(i, j);
  return t;
}

Matrix Matrix::operator*(const Matrix& o) const {
  if (cols_ != o.rows_) throw DimensionMismatch("product of " + std::to_string(rows_) + "x" +
                                                std::to_string(cols_) + " and " +
                                                std::to_string(o.rows_) + "x" +
                                                std::to_string(o.cols_));
  Matrix r(rows_, o.cols_, p_);
  if (o.cols_ == 0) return r;
  auto axpy = kernels::axpy();
  for (int i = 0; i < rows_; ++i) {
    Scalar* dst = r.row_ptr(i);
    const Scalar* a = row_ptr(i);
    for (int k = 0; k < cols_; ++k)
      if (a[k]) axpy(dst, o.row_ptr(k), a[k], std::size_t(o.cols_), p_);
  }
  return r;
}

Matrix Matrix::operator+(const Matrix& o) const {
  if (rows_ != o.rows_ || cols_ != o.cols_) throw DimensionMismatch("sum shape");
  Matrix r(*this);
  for (std::size_t i = 0; i < data_.size(); ++i) r.data_[i] = (data_[i] + o.data_[i]) % p_;
  return r;
}

Matrix Matrix::operator-() const {
  Matrix r(*this);
  for (auto& v : r.data_) v = v ? p_ - v : 0;
  return r;
}

Matrix Matrix::operator-(const Matrix& o) const { return *this + (-o); }

Matrix Matrix::scaled(Scalar c) const {
  Matrix r(*this);
  for (auto& v : r.data_) v = Scalar((std::uint64_t(v) * c) % p_);
  return r;
}

bool Matrix::operator==(const Matrix& o) const {
  return rows_ == o.rows_ && cols_ == o.cols_ && p_ == o.p_ && data_ == o.data_;
}

Matrix Matrix::block(int r0, int c0, int nr, int nc) const {
  if (r0 < 0 || c0 < 0 || r0 + nr > rows_ || c0 + nc > cols_) throw DimensionMismatch("block range");
  Matrix b(nr, nc, p_);
  for (int i = 0; i < nr; ++i)
    for (int j = 0; j < nc; ++j) b.at(i, j) = (*this)(r0 + i, c0 + j);
  return b;
}

void Matrix::set_block(int r0, int c0, const Matrix& b) {
  if (r0 < 0 || c0 < 0 || r0 + b.rows_ > rows_ || c0 + b.cols_ > cols_)
    throw DimensionMismatch("set_block range");
  for (int i = 0; i < b.rows_; ++i)
    for (int j = 0; j < b.cols_; ++j) at(r0 + i, c0 + j) = b(i, j);
}

Matrix Matrix::col(int j) const { return block(0, j, rows_, 1); }

Matrix Matrix::select_cols(const std::vector<int>& idx) const {
  Matrix r(rows_, int(idx.size()), p_);
  for (int i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < idx.size(); ++j) r.at(i, int(j)) = (*this)(i, idx[j]);
  return r;
}

Matrix Matrix::select_rows(const std::vector<int>& idx) const {
  Matrix r(int(idx.size()), cols_, p_);
  for (std::size_t i = 0; i < idx.size(); ++i)
    for (int j = 0; j < cols_; ++j) r.at(int(i), j) = (*this)(idx[i], j);
  return r;
}

std::vector<Scalar> Matrix::col_vector(int j) const {
  std::vector<Scalar> v(rows_);
  for (int i = 0; i < rows_; ++i) v[i] = (*this)(i, j);
  return v;
}

std::vector<Scalar> Matrix::vec() const {
  std::vector<Scalar> v(data_.size());
  for (int j = 0; j < cols_; ++j)
    for (int i = 0; i < rows_; ++i) v[std::size_t(j) * rows_ + i] = (*this)(i, j);
  return v;
}

Matrix Matrix::unvec(const std::vector<Scalar>& v, int rows, int cols, Scalar p) {
  if (v.size() != std::size_t(rows) * cols) throw DimensionMismatch("unvec length");
  Matrix m(rows, cols, p);
  for (int j = 0; j < cols; ++j)
    for (int i = 0; i < rows; ++i) m.at(i, j) = v[std::size_t(j) * rows + i];
  return m;
}

std::vector<std::vector<long long>> Matrix::to_rows() const {
  std::vector<std::vector<long long>> r(rows_, std::vector<long long>(cols_));
  for (int i = 0; i < rows_; ++i)
    for (int j = 0; j < cols_; ++j) r[i][j] = (*this)(i, j);
  return r;
}

std::string Matrix::to_string() const {
  std::ostringstream os;
  os << "[";
  for (int i = 0; i < rows_; ++i) {
    os << (i ? ",[" : "[");
    for (int j = 0; j < cols_; ++j) os << (j ? "," : "") << (*this)(i, j);
    os << "]";
  }
  os << "]";
  return os.str();
}

Matrix hcat(const std::vector<Matrix>& ms, int rows, Scalar p) {
  int c = 0;
  for (auto& m : ms) {
    if (m.rows() != rows) throw DimensionMismatch("hcat rows");
    c += m.cols();
  }
  Matrix r(rows, c, p);
  int off = 0;
  for (auto& m : ms) {
    r.set_block(0, off, m);
    off += m.cols();
  }
  return r;
}

Matrix vcat(const std::vector<Matrix>& ms, int cols, Scalar p) {
  int rr = 0;
  for (auto& m : ms) {
    if (m.cols() != cols) throw DimensionMismatch("vcat cols");
    rr += m.rows();
  }
  Matrix r(rr, cols, p);
  int off = 0;
  for (auto& m : ms) {
    r.set_block(off, 0, m);
    off += m.rows();
  }
  return r;
}

RrefResult rref(const Matrix& m) {
  Matrix a(m);
  const Scalar p = a.p();
  const int R = a.rows(), C = a.cols();
  auto axpy = kernels::axpy();
  std::vector<int> pivots;
  int r = 0;
  for (int c = 0; c < C && r < R; ++c) {
    int piv = -1;
    for (int i = r; i < R; ++i)
      if (a(i, c)) {
        piv = i;
        break;
      }
    if (piv < 0) continue;
    if (piv != r)
      for (int j = c; j < C; ++j) std::swap(a.at(piv, j), a.at(r, j));
    Scalar inv = mod_inverse(a(r, c), p);
    if (inv != 1)
      for (int j = c; j < C; ++j) a.at(r, j) = Scalar((std::uint64_t(a(r, j)) * inv) % p);
    const Scalar* src = a.row_ptr(r) + c;
    for (int i = 0; i < R; ++i) {
      if (i == r || a(i, c) == 0) continue;
      axpy(a.row_ptr(i) + c, src, p - a(i, c), std::size_t(C - c), p);
    }
    pivots.push_back(c);
    ++r;
  }
  return {std::move(a), std::move(pivots)};
}

int rank(const Matrix& m) { return int(rref(m).pivots.size()); }

Matrix kernel_basis(const Matrix& m) {
  auto [a, piv] = rref(m);
  const int C = m.cols();
  const Scalar p = m.p();
  std::vector<int> is_piv(C, -1);
  for (std::size_t k = 0; k < piv.size(); ++k) is_piv[piv[k]] = int(k);
  std::vector<int> free;
  for (int c = 0; c < C; ++c)
    if (is_piv[c] < 0) free.push_back(c);
  Matrix k(C, int(free.size()), p);
  for (std::size_t f = 0; f < free.size(); ++f) {
    int fc = free[f];
    k.at(fc, int(f)) = 1 % p;
    for (std::size_t r = 0; r < piv.size(); ++r) {
      Scalar v = a(int(r), fc);
      k.at(piv[r], int(f)) = v ? p - v : 0;
    }
  }
  return k;
}

Matrix image_basis(const Matrix& m) { return m.select_cols(rref(m).pivots); }

std::optional<Matrix> solve(const Matrix& m, const Matrix& b) {
  if (b.rows() != m.rows()) throw DimensionMismatch("solve: rhs rows");
  const int C = m.cols(), B = b.cols();
  const Scalar p = m.p();
  auto [a, piv] = rref(hcat({m, b}, m.rows(), p));
  for (int c : piv)
    if (c >= C) return std::nullopt;
  Matrix x(C, B, p);
  for (std::size_t r = 0; r < piv.size(); ++r)
    for (int j = 0; j < B; ++j) x.at(piv[r], j) = a(int(r), C + j);
  return x;
}

Matrix invert(const Matrix& m) {
  if (m.rows() != m.cols()) throw SingularMatrix("non-square matrix");
  const int n = m.rows();
  auto [a, piv] = rref(hcat({m, Matrix::identity(n, m.p())}, n, m.p()));
  if (int(piv.size()) < n || (n > 0 && piv[n - 1] != n - 1)) throw SingularMatrix("matrix is singular");
  return a.block(0, n, n, n);
}

bool is_invertible(const Matrix& m) { return m.rows() == m.cols() && rank(m) == m.rows(); }

Matrix compose(const Matrix& a, const Matrix& b) { return a * b; }

Matrix direct_sum(const Matrix& a, const Matrix& b) {
  Matrix r(a.rows() + b.rows(), a.cols() + b.cols(), a.p());
  r.set_block(0, 0, a);
  r.set_block(a.rows(), a.cols(), b);
  return r;
}

Matrix direct_sum(const std::vector<Matrix>& ms, Scalar p) {
  int R = 0, C = 0;
  for (auto& m : ms) R += m.rows(), C += m.cols();
  Matrix r(R, C, p);
  int ro = 0, co = 0;
  for (auto& m : ms) {
    r.set_block(ro, co, m);
    ro += m.rows();
    co += m.cols();
  }
  return r;
}

Matrix kronecker(const Matrix& a, const Matrix& b) {
  const Scalar p = a.p();
  Matrix r(a.rows() * b.rows(), a.cols() * b.cols(), p);
  for (int i = 0; i < a.rows(); ++i)
    for (int j = 0; j < a.cols(); ++j) {
      Scalar v = a(i, j);
      if (!v) continue;
      for (int k = 0; k < b.rows(); ++k)
        for (int l = 0; l < b.cols(); ++l)
          r.at(i * b.rows() + k, j * b.cols() + l) = Scalar((std::uint64_t(v) * b(k, l)) % p);
    }
  return r;
}

Matrix change_of_basis(const Matrix& m, const Matrix& P) { return invert(P) * m * P; }

Matrix change_of_basis(const Matrix& m, const Matrix& P, const Matrix& Q) {
  return invert(Q) * m * P;
}

Matrix left_inverse(const Matrix& m) {
  const int R = m.rows(), C = m.cols();
  auto [a, piv] = rref(hcat({m, Matrix::identity(R, m.p())}, R, m.p()));
  if (int(piv.size()) < C || (C > 0 && piv[C - 1] != C - 1))
    throw SingularMatrix("left_inverse: columns are dependent");
  return a.block(0, C, C, R);
}

Matrix complement_basis(const Matrix& sub, int n) {
  const Scalar p = sub.p();
  auto [a, piv] = rref(hcat({sub, Matrix::identity(n, p)}, n, p));
  std::vector<int> extra;
  for (int c : piv)
    if (c >= sub.cols()) extra.push_back(c - sub.cols());
  return Matrix::identity(n, p).select_cols(extra);
}

Matrix intersect_spaces(const Matrix& a, const Matrix& b) {
  const Scalar p = a.p();
  Matrix ab = image_basis(a), bb = image_basis(b);
  if (ab.cols() == 0 || bb.cols() == 0) return Matrix(a.rows(), 0, p);
  Matrix k = kernel_basis(hcat({ab, -bb}, a.rows(), p));
  return image_basis(ab * k.block(0, 0, ab.cols(), k.cols()));
}

bool in_span(const Matrix& basis, const Matrix& v) {
  if (basis.cols() == 0) return v.is_zero();
  return solve(basis, v).has_value();
}

Matrix sum_spaces(const Matrix& a, const Matrix& b) {
  return image_basis(hcat({a, b}, a.rows(), a.p()));
}

Matrix canonical_span(const Matrix& cols) {
  auto [a, piv] = rref(cols.transpose());
  return a.block(0, 0, int(piv.size()), a.cols());
}

}  // namespace cotr
