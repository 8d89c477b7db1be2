#pragma once

#include <vector>

#include "cotr/modrep.hpp"

namespace cotr {

// Hom_R(w, m) as a left S-module, (s.f)(x) = f(x.s).
struct Star {
  Module src;                // m
  Module mod;                // over S
  std::vector<Matrix> maps;  // maps[j]: w -> m, the R-homomorphism behind basis vector j
  Matrix vecs, linv;         // vec(maps) as columns and a left inverse
  std::vector<Scalar> coords(const Matrix& f) const;
};
Star star(const Bimodule& w, const Module& m);
// g_*: a.src -> b.src induces a.mod -> b.mod.
Morphism star_map(const Star& a, const Star& b, const Morphism& g);

// w (x)_S n as a left R-module: the quotient of w (x)_k n (index x * dim n + y)
// by the span of x.s (x) y - x (x) s.y.
struct Tensor {
  Module src;  // n
  Module mod;  // over R
  Matrix proj;  // mod.dim x (dim w * dim n)
  Matrix reps;  // (dim w * dim n) x mod.dim
  Matrix relations;
  int wdim = 0;
};
Tensor cotensor(const Bimodule& w, const Module& n);
Morphism cotensor_map(const Tensor& a, const Tensor& b, const Morphism& h);

// theta_m: w (x)_S m_* -> m, x (x) f -> f(x).
struct Counit {
  Star star;
  Tensor tensor;
  Morphism map;
};
Counit theta(const Bimodule& w, const Module& m);
Counit theta(const Bimodule& w, const Star& s);

// mu_n: n -> (w (x)_S n)_*, y -> (x -> x (x) y).
struct Unit {
  Tensor tensor;
  Star star;
  Morphism map;
};
Unit mu(const Bimodule& w, const Module& n);
Unit mu(const Bimodule& w, const Tensor& t);

// Hom_R(m, w) as a left S^op-module, (s.f)(y) = f(y).s.
struct CoHom {
  Module src;
  Module mod;  // over S^op
  std::vector<Matrix> maps;
  Matrix vecs, linv;
  std::vector<Scalar> coords(const Matrix& f) const;
};
CoHom hom_into(const Module& m, const Bimodule& w);
// g: m -> m' gives Hom(m', w) -> Hom(m, w); a is for m, b for m'.
Morphism hom_into_map(const CoHom& a, const CoHom& b, const Morphism& g);

}  // namespace cotr
