#pragma once

#include <vector>

#include "cotr/module.hpp"

// Helpers shared between translation units; not part of the public surface.
namespace cotr::detail {

// A module with the algebra basis element behind each of its coordinates.
struct IndexedModule {
  Module mod;
  std::vector<int> basis;
};
IndexedModule projective_indexed(const AlgebraPtr& a, int v);  // coordinate k = b_k in A e_v
IndexedModule injective_indexed(const AlgebraPtr& a, int v);   // coordinate k = b_k^* for b_k in e_v A

Matrix matrix_power(const Matrix& m, long long e);
// Monic minimal polynomial, coefficients from the constant term up.
std::vector<Scalar> minimal_polynomial(const Matrix& m);
std::vector<Scalar> polynomial_roots(const std::vector<Scalar>& poly, Scalar p);
bool is_nilpotent(const Matrix& m);

// Module structure from action matrices in arbitrary coordinates: the basis is
// regrouped along the vertex idempotents. T has the new basis as columns.
struct Regrouped {
  Module mod;
  Matrix T, Tinv;
};
Regrouped regroup(const AlgebraPtr& a, const std::vector<Matrix>& act);

}  // namespace cotr::detail
