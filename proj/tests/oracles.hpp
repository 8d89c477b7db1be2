#pragma once

// Brute-force reference computations for tiny modules over small fields. They share
// nothing with the library beyond Matrix arithmetic and rref.

#include <cstdint>
#include <set>
#include <vector>

#include "cotr/linalg.hpp"
#include "cotr/module.hpp"

namespace oracle {

using cotr::Matrix;
using cotr::Module;
using cotr::Scalar;

inline std::uint64_t ipow(std::uint64_t b, int e) {
  std::uint64_t r = 1;
  while (e-- > 0) r *= b;
  return r;
}

inline Matrix decode_matrix(std::uint64_t code, int rows, int cols, Scalar p) {
  Matrix m(rows, cols, p);
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < cols; ++j) {
      m.at(i, j) = Scalar(code % p);
      code /= p;
    }
  return m;
}

// Key of a subspace: its rref row basis, flattened.
inline std::vector<Scalar> span_key(const Matrix& cols) {
  Matrix t = cols.transpose();
  auto r = cotr::rref(t);
  std::vector<Scalar> key;
  for (std::size_t i = 0; i < r.pivots.size(); ++i)
    for (int j = 0; j < t.cols(); ++j) key.push_back(r.reduced(int(i), j));
  key.push_back(Scalar(r.pivots.size()));
  return key;
}

// Every subspace of F_p^n, as column bases.
inline std::vector<Matrix> all_subspaces(int n, Scalar p) {
  std::set<std::vector<Scalar>> seen;
  std::vector<Matrix> out, frontier{Matrix(n, 0, p)};
  seen.insert(span_key(frontier[0]));
  out.push_back(frontier[0]);
  const std::uint64_t total = ipow(p, n);
  while (!frontier.empty()) {
    std::vector<Matrix> next;
    for (auto& U : frontier)
      for (std::uint64_t code = 1; code < total; ++code) {
        Matrix v = decode_matrix(code, n, 1, p);
        Matrix W = cotr::hcat({U, v}, n, p);
        if (cotr::rank(W) == U.cols()) continue;
        auto key = span_key(W);
        if (seen.insert(key).second) {
          out.push_back(W);
          next.push_back(W);
        }
      }
    frontier = std::move(next);
  }
  return out;
}

inline bool invariant(const Module& m, const Matrix& U) {
  for (auto& a : m.actions()) {
    Matrix img = a * U;
    if (cotr::rank(cotr::hcat({U, img}, m.dim(), m.p())) != cotr::rank(U)) return false;
  }
  return true;
}

inline int count_submodules(const Module& m) {
  int c = 0;
  for (auto& U : all_subspaces(m.dim(), m.p()))
    if (invariant(m, U)) ++c;
  return c;
}

inline bool intertwines(const Module& m, const Module& n, const Matrix& f) {
  for (int b = 0; b < int(m.actions().size()); ++b)
    if (f * m.act(b) != n.act(b) * f) return false;
  return true;
}

// log_p of the number of intertwiners.
inline int hom_dim(const Module& m, const Module& n) {
  const Scalar p = m.p();
  const std::uint64_t total = ipow(p, m.dim() * n.dim());
  std::uint64_t count = 0;
  for (std::uint64_t code = 0; code < total; ++code)
    if (intertwines(m, n, decode_matrix(code, n.dim(), m.dim(), p))) ++count;
  int d = 0;
  while (count > 1) count /= p, ++d;
  return d;
}

inline bool isomorphic(const Module& m, const Module& n) {
  if (m.dim() != n.dim()) return false;
  const Scalar p = m.p();
  const std::uint64_t total = ipow(p, m.dim() * n.dim());
  for (std::uint64_t code = 0; code < total; ++code) {
    Matrix f = decode_matrix(code, n.dim(), m.dim(), p);
    if (cotr::is_invertible(f) && intertwines(m, n, f)) return true;
  }
  return m.dim() == 0;
}

}  // namespace oracle
