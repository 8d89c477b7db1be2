#pragma once

#include <string>
#include <tuple>
#include <vector>

#include "cotr/algebra.hpp"

namespace cotr {

// All paths of the given length as monomial relations (rad^k = 0).
std::vector<Relation> radical_power_relations(const Quiver& q, int k);

Quiver make_quiver(const std::vector<std::string>& vertices,
                   const std::vector<std::tuple<std::string, std::string, std::string>>& arrows);

// Small algebras used by the fixtures and tests.
AlgebraPtr a2_algebra(Scalar p = 2);            // 1 -a-> 2
AlgebraPtr dual_numbers_algebra(Scalar p = 2);  // one loop x with x.x = 0
AlgebraPtr ex28_algebra(Scalar p = 2);          // 1<->2, 3->2, 4->3, 4<->5, rad^2 = 0
AlgebraPtr semisimple_algebra(int vertices, Scalar p = 2);

}  // namespace cotr
