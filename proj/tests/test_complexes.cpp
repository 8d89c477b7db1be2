#include "cotr/catalog.hpp"
#include "cotr/complexes.hpp"
#include "cotr/errors.hpp"
#include "doctest.h"
#include "oracles.hpp"

using namespace cotr;

namespace {

AlgebraPtr a3_radical_square_zero() {
  Quiver q = make_quiver({"1", "2", "3"}, {{"a", "1", "2"}, {"b", "2", "3"}});
  return path_algebra_quotient(q, radical_power_relations(q, 2), 4, 2, "a3_rad2");
}

Morphism some_map(const Module& a, const Module& b, int which = 0) {
  HomSpace h = hom_space(a, b);
  REQUIRE(h.dim() > which);
  return {a, b, h.basis[which]};
}

Complex two_term(const Morphism& f, int lo = 0) { return Complex::make(f.src.algebra(), lo, {f.src, f.tgt}, {f}); }

// Dimension of H^n from ranks alone.
int cohomology_dim(const Complex& c, int n) {
  return c.term(n).dim() - rank(c.diff(n).mat) - rank(c.diff(n - 1).mat);
}

struct Fixture {
  std::string name;
  SemidualizingReport rep;
  std::vector<Module> mods;
};

std::vector<Fixture> fixtures() {
  auto a2 = a2_algebra();
  auto dn = dual_numbers_algebra();
  auto a3 = a3_radical_square_zero();
  auto am = enumerate_modules(a2, 4, 1 << 16);
  auto dm = enumerate_modules(dn, 3, 1 << 16);
  return {{"A2 D", check_semidualizing(matlis_dual_bimodule(a2)), am},
          {"A2 R", check_semidualizing(regular_bimodule(a2)), am},
          {"dual numbers R", check_semidualizing(regular_bimodule(dn)), dm},
          {"A3/rad^2 D", check_semidualizing(matlis_dual_bimodule(a3)), enumerate_modules(a3, 3, 1 << 16)}};
}

}  // namespace

TEST_CASE("cohomology: examples") {
  auto a = a2_algebra();
  Module s1 = simple_module(a, 0), s2 = simple_module(a, 1);
  Module i1 = injective_module(a, 0), i2 = injective_module(a, 1);

  SUBCASE("module in degree 0") {
    Complex c = Complex::module(i2);
    CHECK(is_isomorphic(cohomology(c, 0), i2));
    auto r = sup_inf_amp(c);
    CHECK_FALSE(r.zero);
    CHECK(r.sup == 0);
    CHECK(r.inf == 0);
    CHECK(r.amp.is_exactly(0));
  }
  SUBCASE("injective resolution of S(2) as a complex") {
    Complex c = two_term(some_map(i2, i1));
    CHECK(is_isomorphic(cohomology(c, 0), s2));
    CHECK(cohomology(c, 1).is_zero());
    CHECK(sup_inf_amp(c).amp.is_exactly(0));
  }
  SUBCASE("exact complex") {
    Complex c = two_term(identity_morphism(i2));
    for (int n = -1; n <= 2; ++n) CHECK(cohomology(c, n).is_zero());
    auto r = sup_inf_amp(c);
    CHECK(r.zero);
    CHECK(r.amp.status == BoundedAnswer::Status::MinusInfinity);
  }
  SUBCASE("the zero complex") {
    auto r = sup_inf_amp(Complex::zero(a));
    CHECK(r.zero);
  }
  SUBCASE("differentials must compose to zero") {
    Module p1 = projective_module(a, 0);
    Morphism f = some_map(s2, p1), g = some_map(p1, s1);
    CHECK_NOTHROW(Complex::make(a, 0, {s2, p1, s1}, {f, g}));
    Morphism id = identity_morphism(p1);
    CHECK_THROWS_AS(Complex::make(a, 0, {p1, p1, p1}, {id, id}), InvalidInput);
  }
}

TEST_CASE("shift") {
  auto a = a2_algebra();
  Complex c = two_term(some_map(injective_module(a, 1), injective_module(a, 0)));
  SUBCASE("by 0") {
    Complex s = shift(c, 0);
    CHECK(s.lo == c.lo);
    CHECK(s.d[0].mat == c.d[0].mat);
  }
  SUBCASE("module moves to degree i") {
    for (int i = 0; i <= 3; ++i) {
      Complex s = shift(Complex::module(simple_module(a, 1)), -i);
      CHECK(s.lo == i);
      CHECK(!cohomology(s, i).is_zero());
    }
  }
  SUBCASE("cohomology moves and the sign follows the parity") {
    for (int m = -3; m <= 3; ++m) {
      Complex s = shift(c, m);
      for (int t = -5; t <= 5; ++t) CHECK(cohomology(s, t).dim() == cohomology(c, t + m).dim());
      CHECK(s.d[0].mat == (m % 2 == 0 ? c.d[0].mat : -c.d[0].mat));
      Complex back = shift(shift(c, m), -m);
      CHECK(back.lo == c.lo);
      CHECK(back.d[0].mat == c.d[0].mat);
    }
  }
  SUBCASE("composition") {
    for (int x = -2; x <= 2; ++x)
      for (int y = -2; y <= 2; ++y) {
        Complex l = shift(shift(c, x), y), r = shift(c, x + y);
        CHECK(l.lo == r.lo);
        CHECK(l.d[0].mat == r.d[0].mat);
      }
  }
}

TEST_CASE("truncation and the v operator") {
  auto a = a2_algebra();
  Module s1 = simple_module(a, 0), s2 = simple_module(a, 1);
  Complex ires = two_term(some_map(injective_module(a, 1), injective_module(a, 0)));
  SUBCASE("truncation at the window start") {
    Complex t = hard_left_truncation(ires, ires.lo);
    CHECK(t.lo == ires.lo);
    CHECK(t.terms.size() == ires.terms.size());
    CHECK(hard_left_truncation(ires, 5).is_zero());
    CHECK(hard_left_truncation(ires, 1).lo == 1);
  }
  SUBCASE("v of the injective resolution of S(2) is coOmega^1 in degree 0") {
    Complex v = v_operator(ires);
    CHECK(v.lo == 0);
    CHECK(is_isomorphic(cohomology(v, 0), cosyzygy(s2, 1)));
    CHECK(is_isomorphic(cohomology(v, 0), s1));
  }
  SUBCASE("requires injective terms") {
    Complex c = two_term(some_map(s2, projective_module(a, 0)));
    CHECK_THROWS_AS(v_operator(c), NotInjectiveComplex);
  }
  SUBCASE("module resolutions over every fixture") {
    for (auto& fx : fixtures()) {
      for (auto& m : fx.mods) {
        auto r = truncated_injective_resolution(Complex::module(m), 4);
        Complex v = v_operator(r.I, 0);
        CHECK(is_isomorphic(cohomology(v, 0), cosyzygy(m, 1)));
      }
    }
  }
}

TEST_CASE("injective resolutions of complexes: examples") {
  auto a = a2_algebra();
  Module s1 = simple_module(a, 0), s2 = simple_module(a, 1);
  Module i1 = injective_module(a, 0), i2 = injective_module(a, 1);
  SUBCASE("injective module") {
    auto r = injective_resolution_complex(Complex::module(i2));
    CHECK(r.complete);
    CHECK(r.I.lo == 0);
    REQUIRE(r.I.terms.size() == 1);
    CHECK(is_isomorphic(r.I.terms[0], i2));
    CHECK(is_quasi_iso(r.q));
  }
  SUBCASE("S(2)") {
    auto r = injective_resolution_complex(Complex::module(s2));
    REQUIRE(r.I.terms.size() == 2);
    CHECK(is_isomorphic(r.I.term(0), i2));
    CHECK(is_isomorphic(r.I.term(1), i1));
    CHECK(is_quasi_iso(r.q));
  }
  SUBCASE("P(2) -> P(1) is S(1) in degree 1") {
    Complex c = two_term(some_map(projective_module(a, 1), projective_module(a, 0)));
    CHECK(cohomology(c, 0).is_zero());
    CHECK(is_isomorphic(cohomology(c, 1), s1));
    auto r = injective_resolution_complex(c);
    CHECK(r.I.lo == 1);
    REQUIRE(r.I.terms.size() == 1);
    CHECK(is_isomorphic(r.I.term(1), i1));
    CHECK(is_quasi_iso(r.q));
  }
  SUBCASE("non-terminating resolutions") {
    auto dn = dual_numbers_algebra();
    Complex c = Complex::module(simple_module(dn, 0));
    CHECK_THROWS_AS(injective_resolution_complex(c, 3), BoundExceeded);
    auto r = truncated_injective_resolution(c, 3);
    CHECK_FALSE(r.complete);
    CHECK(is_quasi_iso(r.q, -1, r.reliable_below - 1));
    CHECK(is_isomorphic(r.tail, simple_module(dn, 0)));
  }
}

TEST_CASE("injective resolutions are quasi-isomorphisms") {
  for (auto& fx : fixtures()) {
    const auto& mods = fx.mods;
    for (std::size_t x = 0; x < mods.size() && x < 12; ++x)
      for (std::size_t y = 0; y < mods.size() && y < 12; ++y) {
        HomSpace h = hom_space(mods[x], mods[y]);
        for (auto& b : h.basis) {
          Complex c = two_term({mods[x], mods[y], b}, -1);
          auto r = truncated_injective_resolution(c, 3);
          CHECK(r.q.commutes());
          for (int n = r.I.lo; n <= r.I.hi(); ++n) CHECK(is_injective(r.I.term(n)));
          CHECK(r.I.lo == sup_inf_amp(c).inf);
          const int top = r.complete ? r.I.hi() + 1 : r.reliable_below - 1;
          CHECK_MESSAGE(is_quasi_iso(r.q, -3, top), fx.name);
        }
      }
  }
}

TEST_CASE("mapping cones") {
  auto a = a2_algebra();
  Module s2 = simple_module(a, 1), i2 = injective_module(a, 1);
  SUBCASE("cone of the identity is exact") {
    Complex c = two_term(some_map(i2, injective_module(a, 0)));
    Cone cn = mapping_cone(identity_chain_map(c));
    CHECK(sup_inf_amp(cn.mod).zero);
    CHECK(cone_sequence_exact(cn, -3, 3));
  }
  SUBCASE("cone of 0 -> M") {
    Module m = regular_module(a);
    Complex M = Complex::module(m);
    Cone cn = mapping_cone(make_chain_map(Complex::zero(a), M, 0, {}));
    CHECK(is_isomorphic(cohomology(cn.mod, 0), m));
    CHECK(sup_inf_amp(cn.mod).amp.is_exactly(0));
  }
  SUBCASE("cone of M -> 0 is M[1]") {
    Module m = regular_module(a);
    Cone cn = mapping_cone(make_chain_map(Complex::module(m), Complex::zero(a), 0, {}));
    CHECK(is_isomorphic(cohomology(cn.mod, -1), m));
  }
  SUBCASE("cone of S(2) -> I(2)") {
    Morphism f = some_map(s2, i2);
    Cone cn = mapping_cone(make_chain_map(Complex::module(s2), Complex::module(i2), 0, {f}));
    CHECK(cohomology(cn.mod, -1).is_zero());
    CHECK(is_isomorphic(cohomology(cn.mod, 0), simple_module(a, 0)));
    CHECK(cone_sequence_exact(cn, -3, 3));
    // The sign convention: d^{-1} = [[-d_A^0, 0], [f^0, d_B^{-1}]] = f on the A^0 part.
    CHECK(cn.mod.diff(-1).mat == f.mat);
  }
}

TEST_CASE("cone long exact sequences") {
  for (auto& fx : fixtures()) {
    auto& mods = fx.mods;
    const std::size_t lim = std::min<std::size_t>(mods.size(), 8);
    for (std::size_t x = 0; x < lim; ++x)
      for (std::size_t y = 0; y < lim; ++y) {
        HomSpace h = hom_space(mods[x], mods[y]);
        if (h.dim() == 0) continue;
        // N[-1] -> (M -f-> N) -> M, the inclusion and the projection of the brutal filtration.
        for (auto& b : h.basis) {
          Morphism f{mods[x], mods[y], b};
          Complex src = Complex::module(mods[x]);
          Complex mid = two_term(f, 0);
          Cone cn = mapping_cone(make_chain_map(Complex::module(mods[y], 1), mid, 1, {identity_morphism(mods[y])}));
          CHECK(cone_sequence_exact(cn, -2, 3));
          Cone cq = mapping_cone(make_chain_map(mid, src, 0, {identity_morphism(mods[x])}));
          CHECK(cone_sequence_exact(cq, -2, 3));
          Cone c2 = mapping_cone(make_chain_map(src, Complex::module(mods[y]), 0, {f}));
          CHECK(cone_sequence_exact(c2, -2, 2));
          int euler = 0;
          for (int n = -2; n <= 2; ++n) euler += (n % 2 == 0 ? 1 : -1) * cohomology_dim(c2.mod, n);
          CHECK(euler == mods[y].dim() - mods[x].dim());
        }
      }
  }
}

TEST_CASE("Bass injective dimension of complexes: examples") {
  auto a = a2_algebra();
  auto rep = check_semidualizing(matlis_dual_bimodule(a));
  SUBCASE("injective module") {
    for (int v = 0; v < 2; ++v) {
      auto b = bass_id_complex(rep, Complex::module(injective_module(a, v)));
      CHECK(b.membership == Membership::In);
      CHECK(b.value.is_exactly(0));
    }
  }
  SUBCASE("S(2)") {
    auto b = bass_id_complex(rep, Complex::module(simple_module(a, 1)));
    CHECK(b.membership == Membership::In);
    CHECK(b.value.is_exactly(1));
    CHECK(bass_id(rep, simple_module(a, 1)).value.is_exactly(1));
  }
  SUBCASE("acyclic") {
    Module p = projective_module(a, 0);
    auto b = bass_id_complex(rep, two_term(identity_morphism(p)));
    CHECK(b.value.status == BoundedAnswer::Status::ZeroModule);
  }
  SUBCASE("wrong algebra") {
    CHECK_THROWS_AS(bass_id_complex(rep, Complex::module(simple_module(dual_numbers_algebra(), 0))), InvalidInput);
  }
}

TEST_CASE("complex membership agrees with module Bass dimension") {
  for (auto& fx : fixtures()) {
    for (auto& m : fx.mods) {
      DimAnswer d = bass_id(fx.rep, m);
      auto b = bass_id_complex(fx.rep, Complex::module(m));
      const bool finite = d.value.is_exact();
      const bool member = b.membership != Membership::Out && b.value.is_exact();
      CHECK_MESSAGE(finite == member, fx.name << " module of dimension " << m.dim() << ": " << d.status() << " vs "
                                               << b.value.to_string() << " " << b.annotation);
      // The value is sup RHom(w, M), the highest nonvanishing Ext.
      if (member) {
        auto sup = ext_sup(fx.rep.omega, m);
        if (sup.is_exact()) CHECK(b.value.value == sup.value);
      }
    }
  }
}

TEST_CASE("Bass dimension under shifts") {
  for (auto& fx : fixtures()) {
    for (std::size_t k = 0; k < fx.mods.size() && k < 10; ++k) {
      Complex c = Complex::module(fx.mods[k]);
      auto b0 = bass_id_complex(fx.rep, c);
      if (!b0.value.is_exact()) continue;
      for (int m = -2; m <= 2; ++m) {
        auto bm = bass_id_complex(fx.rep, shift(c, m));
        REQUIRE(bm.value.is_exact());
        // sup moves down by m under M[m]^n = M^{m+n}.
        CHECK(bm.value.value == b0.value.value - m);
      }
    }
  }
}

TEST_CASE("the v operator shifts cohomology down") {
  for (auto& fx : fixtures()) {
    auto& mods = fx.mods;
    for (std::size_t x = 0; x < mods.size() && x < 10; ++x)
      for (std::size_t y = 0; y < mods.size() && y < 10; ++y) {
        HomSpace h = hom_space(mods[x], mods[y]);
        for (auto& b : h.basis) {
          Complex c = two_term({mods[x], mods[y], b}, 0);
          auto rr = sup_inf_amp(c);
          if (rr.zero) continue;
          auto r = truncated_injective_resolution(c, 3);
          Complex v = v_operator(r.I, rr.sup);
          const int top = r.complete ? r.I.hi() + 1 : r.reliable_below - 1;
          for (int t = rr.inf + 1; t + 1 <= top; ++t)
            CHECK(cohomology(v, t).dim() == cohomology(r.I, t + 1).dim());
        }
      }
  }
}

TEST_CASE("Bass replacement: examples") {
  auto a = a2_algebra();
  auto rep = check_semidualizing(matlis_dual_bimodule(a));
  Module s2 = simple_module(a, 1);
  SUBCASE("Bass-class module") {
    Module i2 = injective_module(a, 1);
    REQUIRE(class_membership(rep, i2, ClassKind::Bass).in());
    auto r = bass_replacement(rep, Complex::module(i2));
    CHECK(r.verified);
    REQUIRE(r.Y.terms.size() == 1);
    CHECK(r.Y.lo == 0);
    CHECK(is_isomorphic(r.Y.term(0), i2));
  }
  SUBCASE("S(2)") {
    auto r = bass_replacement(rep, Complex::module(s2));
    CHECK(r.verified);
    REQUIRE(r.Y.terms.size() == 2);
    CHECK(is_isomorphic(r.Y.term(0), injective_module(a, 1)));
    CHECK(is_isomorphic(r.Y.term(1), injective_module(a, 0)));
    for (auto& cl : r.term_classes) CHECK(cl.in());
  }
  SUBCASE("amplitude one") {
    Module s1 = simple_module(a, 0);
    Complex c = Complex::make(a, 0, {s2, s1}, {zero_morphism(s2, s1)});
    CHECK(sup_inf_amp(c).amp.is_exactly(1));
    auto r = bass_replacement(rep, c);
    CHECK(r.verified);
    for (auto& cl : r.term_classes) CHECK(cl.in());
    for (int n = -1; n <= 2; ++n) CHECK(cohomology(r.Y, n).dim() == cohomology(c, n).dim());
  }
  SUBCASE("zero") {
    auto r = bass_replacement(rep, Complex::zero(a));
    CHECK(r.verified);
    CHECK(r.Y.is_zero());
  }
}

TEST_CASE("Bass replacements over every fixture") {
  for (auto& fx : fixtures()) {
    auto& mods = fx.mods;
    int amp_one = 0;
    for (std::size_t x = 0; x < mods.size() && x < 10; ++x)
      for (std::size_t y = 0; y < mods.size() && y < 10; ++y) {
        HomSpace h = hom_space(mods[x], mods[y]);
        std::vector<Matrix> maps = h.basis;
        maps.push_back(Matrix(mods[y].dim(), mods[x].dim(), mods[x].p()));
        for (auto& b : maps) {
          Complex c = two_term({mods[x], mods[y], b}, 0);
          auto bi = bass_id_complex(fx.rep, c);
          if (!bi.value.is_exact()) continue;
          auto r = bass_replacement(fx.rep, c);
          CHECK_MESSAGE(r.verified, fx.name << " " << c.describe());
          for (auto& cl : r.term_classes) CHECK(cl.in());
          if (sup_inf_amp(c).amp.is_exactly(1)) ++amp_one;
        }
      }
    CHECK(amp_one > 0);
  }
}
