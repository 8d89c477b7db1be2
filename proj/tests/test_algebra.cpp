#include "cotr/algebra.hpp"
#include "cotr/catalog.hpp"
#include "cotr/errors.hpp"
#include "cotr/modrep.hpp"
#include "cotr/module.hpp"
#include "doctest.h"

using namespace cotr;

namespace {

bool tables_transposed(const Algebra& a, const Algebra& b) {
  if (a.dim() != b.dim()) return false;
  for (int i = 0; i < a.dim(); ++i)
    for (int j = 0; j < a.dim(); ++j)
      if (a.mul(i, j) != b.mul(j, i)) return false;
  return true;
}

// Sum of products of all basis triples, expanded densely.
bool associative(const Algebra& a) {
  for (int i = 0; i < a.dim(); ++i)
    for (int j = 0; j < a.dim(); ++j)
      for (int k = 0; k < a.dim(); ++k) {
        Vec x = a.basis_vector(i), y = a.basis_vector(j), z = a.basis_vector(k);
        if (a.product(a.product(x, y), z) != a.product(x, a.product(y, z))) return false;
      }
  return true;
}

}  // namespace

TEST_CASE("path algebra bases") {
  auto a2 = a2_algebra();
  CHECK(a2->dim() == 3);
  CHECK(a2->labels() == std::vector<std::string>{"e1", "e2", "a"});
  auto dn = dual_numbers_algebra();
  CHECK(dn->dim() == 2);
  CHECK(ex28_algebra()->dim() == 11);
  CHECK(semisimple_algebra(2)->dim() == 2);

  Quiver loop = make_quiver({"1"}, {{"x", "1", "1"}});
  CHECK_THROWS_AS(path_algebra_quotient(loop, {}, 4), NotFiniteDimensional);

  // Commutative square 1 -> 2 -> 4, 1 -> 3 -> 4 with a.b = c.d: two length-2 paths identified.
  Quiver sq = make_quiver({"1", "2", "3", "4"},
                          {{"a", "1", "2"}, {"b", "2", "4"}, {"c", "1", "3"}, {"d", "3", "4"}});
  auto comm = path_algebra_quotient(sq, {Relation{{{1, {0, 1}}, {-1, {2, 3}}}}}, 4, 3);
  CHECK(comm->dim() == 9);
  auto free_sq = path_algebra_quotient(sq, {}, 4, 3);
  CHECK(free_sq->dim() == 10);
  auto zero_sq = path_algebra_quotient(sq, radical_power_relations(sq, 2), 4, 3);
  CHECK(zero_sq->dim() == 8);
  CHECK(associative(*comm));

  Quiver kron = make_quiver({"1", "2"}, {{"x", "1", "2"}, {"y", "1", "2"}});
  CHECK(path_algebra_quotient(kron, {}, 3)->dim() == 4);
}

TEST_CASE("relation validation") {
  Quiver q = make_quiver({"1", "2", "3"}, {{"a", "1", "2"}, {"b", "2", "3"}, {"c", "1", "3"}});
  CHECK_THROWS_AS(path_algebra_quotient(q, {Relation{{{1, {0}}}}}, 4), InvalidInput);
  CHECK_THROWS_AS(path_algebra_quotient(q, {Relation{{{1, {1, 0}}}}}, 4), InvalidInput);
  CHECK_THROWS_AS(path_algebra_quotient(q, {Relation{{{1, {0, 1}}, {1, {2}}}}}, 4), InvalidInput);
  CHECK_THROWS_AS(path_algebra_quotient(q, {}, 0), InvalidInput);
  CHECK_THROWS_AS(path_algebra_quotient(q, {}, 2, 4), InvalidInput);
}

TEST_CASE("structural data") {
  auto a2 = a2_algebra();
  CHECK(radical(a2) == std::vector<int>{2});
  CHECK(a2->loewy_length() == 2);
  CHECK(a2->left_vertex(2) == 1);
  CHECK(a2->right_vertex(2) == 0);
  auto dn = dual_numbers_algebra();
  CHECK(radical(dn) == std::vector<int>{1});
  CHECK(dn->mul(1, 1).empty());
  CHECK(radical(semisimple_algebra(2)).empty());
  CHECK(semisimple_algebra(2)->loewy_length() == 1);
  auto ex = ex28_algebra();
  CHECK(ex->radical_basis().size() == 6);
  CHECK(ex->radical_generators().size() == 6);
  CHECK(ex->loewy_length() == 2);
  for (auto& alg : {a2, dn, ex}) {
    CHECK(associative(*alg));
    Vec one = alg->unit();
    for (int i = 0; i < alg->dim(); ++i) {
      CHECK(alg->product(one, alg->basis_vector(i)) == alg->basis_vector(i));
      CHECK(alg->product(alg->basis_vector(i), one) == alg->basis_vector(i));
    }
  }
}

TEST_CASE("opposite") {
  auto dn = dual_numbers_algebra();
  auto dnop = opposite(dn);
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) CHECK(dnop->mul(i, j) == dn->mul(i, j));

  auto a2 = a2_algebra();
  auto op = opposite(a2);
  CHECK(tables_transposed(*a2, *op));
  CHECK(opposite(op) == a2);
  // Reversed quiver 2 -> 1 gives the same tables after swapping the vertex order.
  auto rev = path_algebra_quotient(make_quiver({"1", "2"}, {{"a", "2", "1"}}), {}, 4);
  CHECK(rev->dim() == 3);
  CHECK(op->left_vertex(2) == rev->left_vertex(2));
  CHECK(op->right_vertex(2) == rev->right_vertex(2));
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) CHECK(op->mul(i, j) == rev->mul(i, j));
  CHECK(associative(*opposite(ex28_algebra())));
}

TEST_CASE("enveloping algebra") {
  auto f = field_algebra(2);
  CHECK(enveloping(f, f).env->dim() == 1);
  auto a2 = a2_algebra();
  auto env = enveloping(a2, a2);
  CHECK(env.env->dim() == 9);
  Vec u = env.env->unit();
  int ones = 0;
  for (auto x : u) ones += x;
  CHECK(ones == 4);  // e_i (x) e_j over all vertex pairs
  CHECK(associative(*env.env));
}

TEST_CASE("matlis dual bimodule") {
  auto a2 = a2_algebra();
  auto D = matlis_dual_bimodule(a2);
  CHECK(D.dim == 3);
  auto dec = decompose(D.left_module);
  REQUIRE(dec.summands.size() == 2);
  std::vector<std::vector<int>> dvs;
  for (auto& s : dec.summands) dvs.push_back(s.dimvec());
  std::sort(dvs.begin(), dvs.end());
  CHECK(dvs == std::vector<std::vector<int>>{{1, 0}, {1, 1}});
  CHECK(is_isomorphic(D.left_module, direct_sum_module({injective_module(a2, 0), injective_module(a2, 1)})));

  // D(F_2[x]/(x^2)) is isomorphic to the regular bimodule: brute force over GL_2(F_2).
  auto dn = dual_numbers_algebra();
  auto Dd = matlis_dual_bimodule(dn);
  auto R = regular_bimodule(dn);
  bool found = false;
  for (int code = 0; code < 16 && !found; ++code) {
    Matrix T = Matrix::from_rows({{code & 1, (code >> 1) & 1}, {(code >> 2) & 1, (code >> 3) & 1}}, 2);
    if (!is_invertible(T)) continue;
    bool ok = true;
    for (int b = 0; b < 2; ++b)
      ok = ok && T * R.left[b] == Dd.left[b] * T && T * R.right[b] == Dd.right[b] * T;
    found = ok;
  }
  CHECK(found);

  // D(D(A)) is A with the double-dual map the identity in these coordinates.
  for (auto& alg : {a2, dn, ex28_algebra()}) {
    auto reg = regular_bimodule(alg);
    auto d1 = dual_bimodule(reg);
    auto md = matlis_dual_bimodule(alg);
    CHECK(d1.lv == md.lv);
    CHECK(d1.left == md.left);
    CHECK(d1.right == md.right);
    auto dd = dual_bimodule(d1);
    CHECK(dd.left == reg.left);
    CHECK(dd.right == reg.right);
  }
}
