#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "cotr/module.hpp"

namespace cotr {

// ---- standard modules ----
Module simple_module(const AlgebraPtr& a, int v);
std::vector<Module> simple_modules(const AlgebraPtr& a);
Module projective_module(const AlgebraPtr& a, int v);  // A e_v
Module injective_module(const AlgebraPtr& a, int v);   // D(e_v A)
Module regular_module(const AlgebraPtr& a);            // left regular A
Module injective_cogenerator(const AlgebraPtr& a);     // D(A_A) as a left module
// Linear dual, a module over the opposite algebra.
Module dual_module(const Module& m);
Morphism dual_morphism(const Morphism& f, const Module& dsrc, const Module& dtgt);

struct DirectSum {
  Module mod;
  std::vector<Morphism> incl, proj;
};
DirectSum direct_sum(const std::vector<Module>& ms);
Module direct_sum_module(const std::vector<Module>& ms);
// Sum of morphisms between direct sums: block matrix with blocks [i][j]: src_j -> tgt_i.
Morphism block_morphism(const DirectSum& src, const DirectSum& tgt,
                        const std::vector<std::vector<Matrix>>& blocks);

// ---- subquotients ----
// Z/B for action-invariant subspaces B <= Z of X (columns span them).
struct Subquotient {
  Module mod;
  Matrix reps;  // X.dim x mod.dim: a representative per basis vector
  Matrix proj;  // mod.dim x X.dim: coordinates of the class of z in Z
  Matrix zbasis, bbasis;
};
Subquotient subquotient(const Module& X, const Matrix& Z, const Matrix& B);
// Submodule (Z, 0) and quotient (X, B) shortcuts.
Subquotient submodule(const Module& X, const Matrix& Z);
Subquotient quotient_module(const Module& X, const Matrix& B);
// Map between subquotients induced by F: X -> X' (needs F(Z) <= Z', F(B) <= B').
Morphism induced_map(const Subquotient& a, const Subquotient& b, const Matrix& F);

struct SubResult {
  Module mod;
  Morphism map;  // inclusion for kernel/image/socle/rad, projection for cokernel/top
};
enum class SubKind { Kernel, Cokernel, Image };
SubResult subquotient(const Morphism& f, SubKind kind);
SubResult kernel(const Morphism& f);
SubResult cokernel(const Morphism& f);
SubResult image(const Morphism& f);
// f restricted to its image: src -> Im f, with image(f).map composed after it giving f.
Morphism corestrict_to_image(const Morphism& f, const SubResult& im);
// The unique g with incl o g = f when Im f <= Im incl (incl mono).
Morphism factor_through_mono(const Morphism& f, const Morphism& incl);
// The unique g with g o epi = f when Ker epi <= Ker f (epi surjective).
Morphism factor_through_epi(const Morphism& f, const Morphism& epi);

// ---- Hom ----
struct HomSpace {
  Module src, tgt;
  std::vector<Matrix> basis;
  Matrix vecs;  // (tgt.dim*src.dim) x h, column k = vec(basis[k])
  Matrix linv;  // left inverse of vecs
  int dim() const { return int(basis.size()); }
  Matrix element(const std::vector<Scalar>& coords) const;
  // Coordinates of f; assumes f lies in the space.
  std::vector<Scalar> coords(const Matrix& f) const;
  bool contains(const Matrix& f) const;
};
HomSpace hom_space(const Module& m, const Module& n);
int hom_dim(const Module& m, const Module& n);

// ---- radical layers and envelopes ----
SubResult socle(const Module& m);
SubResult radical_submodule(const Module& m);
SubResult top(const Module& m);
SubResult injective_envelope(const Module& m);  // map: m -> E
SubResult projective_cover(const Module& m);    // map: P -> m
std::vector<int> socle_multiplicities(const Module& m);
std::vector<int> top_multiplicities(const Module& m);
bool is_injective(const Module& m);
bool is_projective(const Module& m);

// ---- lifting along Hom bases ----
// Some F: b -> c with F o a = target (a: x -> b, target: x -> c).
std::optional<Morphism> extend_along(const Morphism& a, const Morphism& target);
// Some F: x -> b with b o F = target (b: b -> c, target: x -> c).
std::optional<Morphism> lift_through(const Morphism& b, const Morphism& target);
Morphism extend_along_or_throw(const Morphism& a, const Morphism& target, const char* what);
Morphism lift_through_or_throw(const Morphism& b, const Morphism& target, const char* what);

// ---- limits ----
struct Pullback {
  Module mod;
  Morphism p1, p2;  // to A and B
};
Pullback pullback(const Morphism& f, const Morphism& g);  // f: A -> C, g: B -> C
struct Pushout {
  Module mod;
  Morphism i1, i2;  // from B and C
};
Pushout pushout(const Morphism& f, const Morphism& g);  // f: A -> B, g: A -> C

// ---- isomorphism, decomposition, enumeration ----
struct SearchOptions {
  std::uint64_t seed = 1;
  std::uint64_t cap = 4096;  // enumeration cap on |Hom| = p^h
  int random_trials = 64;
};
std::uint64_t default_cap(Scalar p);
std::optional<Morphism> is_isomorphic(const Module& m, const Module& n, const SearchOptions& opt = {});

struct Decomposition {
  std::vector<Module> summands;
  std::vector<Morphism> incl, proj;
};
Decomposition decompose(const Module& m, const SearchOptions& opt = {});
bool is_indecomposable(const Module& m, const SearchOptions& opt = {});
// Isomorphism test for indecomposable modules via Hom-basis pairs.
std::optional<Morphism> indecomposable_iso(const Module& a, const Module& b);
bool is_in_add(const Module& m, const Decomposition& w, const SearchOptions& opt = {});
bool is_in_add(const Module& m, const Module& w, const SearchOptions& opt = {});

std::vector<Subquotient> submodules(const Module& m, std::uint64_t cap);
std::vector<Subquotient> quotients(const Module& m, std::uint64_t cap);
// Smallest submodule containing the columns of v.
Matrix generated_submodule(const Module& m, const Matrix& v);

// All nonzero modules of dimension <= max_dim over a quiver-presented algebra, one per
// isomorphism class, ordered by dimension vector and discovery. Brute force over the
// arrow matrices of every dimension vector; throws EnumerationTooLarge when one vector
// needs more than cap candidates.
std::vector<Module> enumerate_modules(const AlgebraPtr& a, int max_dim, std::uint64_t cap,
                                      const SearchOptions& opt = {});

// Endomorphism algebra of a basic module, rebased into split form: idempotents are
// the projections onto the indecomposable summands.
struct EndomorphismAlgebra {
  AlgebraPtr alg;            // product b_i * b_j = b_i o b_j
  std::vector<Matrix> maps;  // maps[k] acting on m
  Decomposition decomposition;
};
EndomorphismAlgebra endomorphism_algebra(const Module& m, const SearchOptions& opt = {});
// The (R, End(m)^op)-bimodule m with End acting on the right.
Bimodule bimodule_over_endomorphisms(const Module& m, const SearchOptions& opt = {});

}  // namespace cotr
