#include <random>

#include "cotr/kernels.hpp"
#include "cotr/linalg.hpp"
#include "doctest.h"

using namespace cotr;

namespace {

Matrix random_matrix(std::mt19937_64& rng, int r, int c, Scalar p, int zero_bias = 0) {
  Matrix m(r, c, p);
  std::uniform_int_distribution<Scalar> d(0, p - 1);
  std::uniform_int_distribution<int> z(0, 3);
  for (int i = 0; i < r; ++i)
    for (int j = 0; j < c; ++j) m.at(i, j) = (z(rng) < zero_bias) ? 0 : d(rng);
  return m;
}

// Brute-force null space size over F_p for tiny matrices.
long long count_kernel(const Matrix& m) {
  const int n = m.cols();
  long long total = 1, hits = 0;
  for (int i = 0; i < n; ++i) total *= m.p();
  for (long long code = 0; code < total; ++code) {
    Matrix x(n, 1, m.p());
    long long c = code;
    for (int i = 0; i < n; ++i) {
      x.at(i, 0) = Scalar(c % m.p());
      c /= m.p();
    }
    if ((m * x).is_zero()) ++hits;
  }
  return hits;
}

}  // namespace

TEST_CASE("rref fixed examples") {
  auto id = rref(Matrix::identity(3, 2));
  CHECK(id.reduced == Matrix::identity(3, 2));
  CHECK(id.pivots == std::vector<int>{0, 1, 2});

  auto z = rref(Matrix::zero(2, 4, 2));
  CHECK(z.reduced.is_zero());
  CHECK(z.pivots.empty());

  auto r = rref(Matrix::from_rows({{1, 1}, {1, 1}}, 2));
  CHECK(r.reduced == Matrix::from_rows({{1, 1}, {0, 0}}, 2));
  CHECK(r.pivots == std::vector<int>{0});
}

TEST_CASE("kernel_basis fixed examples") {
  CHECK(kernel_basis(Matrix::identity(2, 2)).cols() == 0);
  CHECK(kernel_basis(Matrix::identity(2, 2)).rows() == 2);
  CHECK(kernel_basis(Matrix::zero(2, 3, 2)) == Matrix::identity(3, 2));
  CHECK(kernel_basis(Matrix::from_rows({{1, 1}}, 2)) == Matrix::from_rows({{1}, {1}}, 2));
}

TEST_CASE("solve fixed examples") {
  Matrix b = Matrix::from_rows({{1, 0}, {1, 1}, {0, 1}}, 3);
  CHECK(*solve(Matrix::identity(3, 3), b) == b);
  CHECK(*solve(Matrix::from_rows({{1, 1}}, 2), Matrix::from_rows({{1}}, 2)) ==
        Matrix::from_rows({{1}, {0}}, 2));
  CHECK_FALSE(solve(Matrix::from_rows({{0}}, 2), Matrix::from_rows({{1}}, 2)).has_value());
  CHECK_THROWS_AS(solve(Matrix::identity(2, 2), Matrix::zero(3, 1, 2)), DimensionMismatch);
}

TEST_CASE("invert and singular matrices") {
  Matrix m = Matrix::from_rows({{1, 2}, {3, 4}}, 5);
  CHECK(invert(m) * m == Matrix::identity(2, 5));
  CHECK_THROWS_AS(invert(Matrix::from_rows({{1, 1}, {1, 1}}, 2)), SingularMatrix);
}

TEST_CASE("rank-nullity and kernel agree with brute force") {
  std::mt19937_64 rng(11);
  for (Scalar p : {2u, 3u, 5u}) {
    for (int trial = 0; trial < 40; ++trial) {
      std::uniform_int_distribution<int> d(0, 4);
      Matrix m = random_matrix(rng, d(rng), d(rng), p, trial % 3);
      Matrix k = kernel_basis(m);
      CHECK(rank(m) + k.cols() == m.cols());
      CHECK((m * k).is_zero());
      CHECK(rank(k) == k.cols());
      long long expect = 1;
      for (int i = 0; i < k.cols(); ++i) expect *= p;
      CHECK(count_kernel(m) == expect);
    }
  }
}

TEST_CASE("rref is idempotent and solve is exact") {
  std::mt19937_64 rng(12);
  for (Scalar p : {2u, 3u, 7u, 101u}) {
    for (int trial = 0; trial < 50; ++trial) {
      std::uniform_int_distribution<int> d(1, 7);
      Matrix m = random_matrix(rng, d(rng), d(rng), p, trial % 4);
      auto r = rref(m);
      CHECK(rref(r.reduced).reduced == r.reduced);
      for (std::size_t i = 1; i < r.pivots.size(); ++i) CHECK(r.pivots[i - 1] < r.pivots[i]);
      Matrix x0 = random_matrix(rng, m.cols(), 2, p);
      Matrix b = m * x0;
      auto x = solve(m, b);
      REQUIRE(x.has_value());
      CHECK(m * *x == b);
    }
  }
}

TEST_CASE("kronecker mixed product") {
  std::mt19937_64 rng(13);
  for (int trial = 0; trial < 20; ++trial) {
    Scalar p = trial % 2 ? 3 : 2;
    Matrix A = random_matrix(rng, 2, 3, p), C = random_matrix(rng, 3, 2, p);
    Matrix B = random_matrix(rng, 3, 1, p), D = random_matrix(rng, 1, 4, p);
    CHECK(kronecker(A, B) * kronecker(C, D) == kronecker(A * C, B * D));
  }
}

TEST_CASE("direct sum and change of basis") {
  Matrix a = Matrix::from_rows({{1}}, 3), b = Matrix::from_rows({{2, 1}}, 3);
  Matrix s = direct_sum(a, b);
  CHECK(s.rows() == 2);
  CHECK(s.cols() == 3);
  CHECK(s(1, 1) == 2);
  CHECK(s(0, 1) == 0);
  Matrix m = Matrix::from_rows({{0, 1}, {0, 0}}, 3);
  Matrix P = Matrix::from_rows({{1, 1}, {0, 1}}, 3);
  CHECK(P * change_of_basis(m, P) == m * P);
}

TEST_CASE("subspace helpers") {
  Matrix a = Matrix::from_rows({{1, 0}, {0, 1}, {0, 0}}, 2);
  Matrix b = Matrix::from_rows({{1}, {1}, {1}}, 2);
  CHECK(intersect_spaces(a, b).cols() == 0);
  CHECK(complement_basis(a, 3).cols() == 1);
  CHECK(rank(hcat({a, complement_basis(a, 3)}, 3, 2)) == 3);
  CHECK(sum_spaces(a, b).cols() == 3);
  Matrix c = Matrix::from_rows({{1}, {1}, {0}}, 2);
  CHECK(intersect_spaces(a, c).cols() == 1);
  CHECK(in_span(a, c));
  Matrix L = left_inverse(hcat({a, b}, 3, 2));
  CHECK(L * hcat({a, b}, 3, 2) == Matrix::identity(3, 2));
}

TEST_CASE("axpy kernels agree with the scalar reference") {
  if (!kernels::avx2_available()) {
    MESSAGE("avx2 unavailable; only the scalar kernel is exercised");
    return;
  }
#if defined(__x86_64__) || defined(__i386__)
  std::mt19937_64 rng(14);
  for (std::uint32_t p : {2u, 3u, 5u, 251u, 4093u, 65521u}) {
    for (std::size_t n : {0u, 1u, 7u, 8u, 9u, 31u, 64u, 257u}) {
      std::uniform_int_distribution<std::uint32_t> d(0, p - 1);
      std::vector<std::uint32_t> src(n), a(n);
      for (std::size_t j = 0; j < n; ++j) src[j] = d(rng), a[j] = d(rng);
      for (std::uint32_t c : {0u, 1u, p - 1, d(rng)}) {
        if (p == 2 && c > 1) continue;
        auto x = a, y = a;
        kernels::axpy_scalar(x.data(), src.data(), c, n, p);
        kernels::axpy_avx2(y.data(), src.data(), c, n, p);
        CHECK(x == y);
      }
    }
  }
  // Whole-pipeline equivalence: rref under each kernel.
  for (Scalar p : {2u, 3u, 31u}) {
    Matrix m = random_matrix(rng, 20, 35, p, 1);
    REQUIRE(kernels::select_kernel("scalar"));
    auto r1 = rref(m);
    REQUIRE(kernels::select_kernel("avx2"));
    auto r2 = rref(m);
    CHECK(r1.reduced == r2.reduced);
    CHECK(r1.pivots == r2.pivots);
  }
#endif
}
