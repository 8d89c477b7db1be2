#pragma once

#include <map>
#include <memory>
#include <string>
#include <vector>

#include "cotr/algebra.hpp"

namespace cotr {

// Finite-dimensional left module. The basis is grouped by vertex, so e_v acts
// as the projection onto a contiguous block of coordinates.
class Module {
 public:
  Module() = default;

  // action[b] is the matrix of basis element b. Set check to validate the module laws.
  static Module make(AlgebraPtr alg, std::vector<int> dimvec, std::vector<Matrix> action,
                     bool check = true);
  static Module zero(AlgebraPtr alg);

  const AlgebraPtr& algebra() const { return d_->alg; }
  Scalar p() const { return d_->alg->p(); }
  int dim() const { return d_->dim; }
  const std::vector<int>& dimvec() const { return d_->dimvec; }
  int dim_at(int v) const { return d_->dimvec[v]; }
  int offset(int v) const { return d_->offset[v]; }
  int vertex_of(int coord) const { return d_->vertex_of[coord]; }
  const Matrix& act(int b) const { return d_->action[b]; }
  const std::vector<Matrix>& actions() const { return d_->action; }
  bool is_zero() const { return d_->dim == 0; }
  bool valid() const { return bool(d_); }

  // Throws InvalidInput when the action disagrees with the structure constants.
  void validate() const;

  std::string describe() const;

 private:
  struct Data {
    AlgebraPtr alg;
    std::vector<int> dimvec, offset, vertex_of;
    int dim = 0;
    std::vector<Matrix> action;
  };
  std::shared_ptr<const Data> d_;
};

struct Morphism {
  Module src, tgt;
  Matrix mat;  // tgt.dim x src.dim
};

Morphism identity_morphism(const Module& m);
Morphism zero_morphism(const Module& a, const Module& b);
Morphism compose(const Morphism& g, const Morphism& f);  // g after f
bool is_homomorphism(const Morphism& f);
bool is_mono(const Morphism& f);
bool is_epi(const Morphism& f);
bool is_iso(const Morphism& f);
Morphism operator+(const Morphism& a, const Morphism& b);
Morphism operator-(const Morphism& a);

// Builds a module over a quiver-presented algebra from arrow matrices
// (d_target x d_source). Arrows map the source-vertex component to the target one.
Module module_from_arrows(const AlgebraPtr& a, const std::vector<int>& dimvec,
                          const std::map<std::string, Matrix>& arrows, bool check = true);

// Module structure on F_p^n given by arbitrary action matrices (one per basis element)
// together with a vertex label per coordinate; coordinates are regrouped by vertex.
// The returned basis change T has columns = new basis vectors in old coordinates.
Module module_from_coordinates(const AlgebraPtr& a, const std::vector<int>& vertex_of_coord,
                               const std::vector<Matrix>& action, Matrix* T = nullptr);

// (R,S)-bimodule with basis grouped by (left vertex, right vertex), left-major.
// right[s] is the matrix of x -> x*s, so right[s]*right[t] = right[t*s].
struct Bimodule {
  AlgebraPtr R, S;
  int dim = 0;
  std::vector<int> lv, rv;
  std::vector<Matrix> left, right;
  Module left_module;   // over R, same basis
  Module right_module;  // over S^op, basis permuted right-vertex major
  Matrix right_perm;    // columns: right_module basis in bimodule coordinates

  // Basis arbitrary; lv/rv give the Peirce component of each basis vector.
  static Bimodule make(AlgebraPtr R, AlgebraPtr S, std::vector<int> lv, std::vector<int> rv,
                       std::vector<Matrix> left, std::vector<Matrix> right, bool check = true);
  void validate() const;
  Scalar p() const { return R->p(); }
  // The same data seen as an (S^op, R^op)-bimodule.
  Bimodule flip() const;
  // Right vertex of each basis vector, in bimodule coordinates.
  int right_vertex(int i) const { return rv[i]; }
};

Bimodule regular_bimodule(const AlgebraPtr& a);
Bimodule matlis_dual_bimodule(const AlgebraPtr& a);
// Linear dual of an (R,S)-bimodule as an (S,R)-bimodule: (s.f)(x) = f(x.s), (f.r)(x) = f(r.x).
Bimodule dual_bimodule(const Bimodule& b);

}  // namespace cotr
