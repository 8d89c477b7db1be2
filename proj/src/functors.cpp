#include "cotr/functors.hpp"

#include "cotr/internal.hpp"

namespace cotr {

namespace detail {

Regrouped regroup(const AlgebraPtr& a, const std::vector<Matrix>& act) {
  const Scalar p = a->p();
  const int n = act.empty() ? 0 : act[0].rows();
  std::vector<Matrix> parts;
  std::vector<int> dv(a->num_vertices(), 0);
  for (int v = 0; v < a->num_vertices(); ++v) {
    Matrix b = image_basis(act[a->idempotent(v)]);
    dv[v] = b.cols();
    parts.push_back(b);
  }
  Regrouped r;
  r.T = hcat(parts, n, p);
  r.Tinv = invert(r.T);
  std::vector<Matrix> na;
  na.reserve(act.size());
  for (auto& m : act) na.push_back(r.Tinv * m * r.T);
  r.mod = Module::make(a, dv, std::move(na), false);
  return r;
}

}  // namespace detail

using namespace detail;

namespace {

Matrix vec_columns(const std::vector<Matrix>& maps, int len, Scalar p) {
  std::vector<Matrix> cols;
  for (auto& f : maps) cols.push_back(Matrix::column(f.vec(), p));
  return hcat(cols, len, p);
}

std::vector<Scalar> coords_of(const Matrix& linv, const Matrix& f, int h) {
  if (h == 0) return {};
  return (linv * Matrix::column(f.vec(), f.p())).col_vector(0);
}

}  // namespace

std::vector<Scalar> Star::coords(const Matrix& f) const { return coords_of(linv, f, mod.dim()); }
std::vector<Scalar> CoHom::coords(const Matrix& f) const { return coords_of(linv, f, mod.dim()); }

Star star(const Bimodule& w, const Module& m) {
  if (!same_algebra(w.R, m.algebra())) throw InvalidInput("star: module is not over the left algebra");
  const Scalar p = m.p();
  HomSpace H = hom_space(w.left_module, m);
  const int h = H.dim();
  std::vector<Matrix> act;
  for (int s = 0; s < w.S->dim(); ++s) {
    Matrix A(h, h, p);
    for (int k = 0; k < h; ++k) {
      auto c = H.coords(H.basis[k] * w.right[s]);
      for (int i = 0; i < h; ++i) A.at(i, k) = c[i];
    }
    act.push_back(A);
  }
  Star out;
  out.src = m;
  if (h == 0) {
    out.mod = Module::zero(w.S);
    out.vecs = Matrix(m.dim() * w.dim, 0, p);
    out.linv = Matrix(0, m.dim() * w.dim, p);
    return out;
  }
  auto r = regroup(w.S, act);
  out.mod = r.mod;
  for (int j = 0; j < h; ++j) {
    Matrix f(m.dim(), w.dim, p);
    for (int k = 0; k < h; ++k)
      if (r.T(k, j)) f = f + H.basis[k].scaled(r.T(k, j));
    out.maps.push_back(f);
  }
  out.vecs = vec_columns(out.maps, m.dim() * w.dim, p);
  out.linv = r.Tinv * H.linv;
  return out;
}

Morphism star_map(const Star& a, const Star& b, const Morphism& g) {
  const Scalar p = g.mat.p();
  Matrix m(b.mod.dim(), a.mod.dim(), p);
  for (int j = 0; j < a.mod.dim(); ++j) {
    auto c = b.coords(g.mat * a.maps[j]);
    for (int i = 0; i < b.mod.dim(); ++i) m.at(i, j) = c[i];
  }
  return {a.mod, b.mod, m};
}

Tensor cotensor(const Bimodule& w, const Module& n) {
  if (!same_algebra(w.S, n.algebra())) throw InvalidInput("cotensor: module is not over the right algebra");
  const Scalar p = n.p();
  const int dw = w.dim, dn = n.dim(), N = dw * dn;
  Matrix Iw = Matrix::identity(dw, p), In = Matrix::identity(dn, p);
  std::vector<Matrix> rel;
  std::vector<int> gens;
  for (int u = 0; u < w.S->num_vertices(); ++u) gens.push_back(w.S->idempotent(u));
  for (int g : w.S->radical_generators()) gens.push_back(g);
  for (int s : gens) rel.push_back(kronecker(w.right[s], In) - kronecker(Iw, n.act(s)));
  Matrix K = rel.empty() || N == 0 ? Matrix(N, 0, p) : image_basis(hcat(rel, N, p));
  std::vector<Matrix> act;
  for (int r = 0; r < w.R->dim(); ++r) act.push_back(kronecker(w.left[r], In));
  std::vector<int> dv(w.R->num_vertices(), 0);
  for (int v : w.lv) dv[v] += dn;
  Module V = Module::make(w.R, dv, std::move(act), false);
  auto q = quotient_module(V, K);
  return {n, q.mod, q.proj, q.reps, K, dw};
}

Morphism cotensor_map(const Tensor& a, const Tensor& b, const Morphism& h) {
  const Scalar p = h.mat.p();
  Matrix lift = kronecker(Matrix::identity(a.wdim, p), h.mat);
  return {a.mod, b.mod, b.proj * lift * a.reps};
}

Counit theta(const Bimodule& w, const Star& s) {
  const Scalar p = w.p();
  const int h = s.mod.dim();
  Tensor t = cotensor(w, s.mod);
  const Module& m = s.src;
  Matrix full(m.dim(), w.dim * h, p);
  for (int x = 0; x < w.dim; ++x)
    for (int j = 0; j < h; ++j)
      for (int i = 0; i < m.dim(); ++i) full.at(i, x * h + j) = s.maps[j](i, x);
  if (t.relations.cols() && !(full * t.relations).is_zero())
    throw InvariantViolation("evaluation does not vanish on the tensor relations");
  return {s, t, {t.mod, m, full * t.reps}};
}

Counit theta(const Bimodule& w, const Module& m) { return theta(w, star(w, m)); }

Unit mu(const Bimodule& w, const Tensor& t) {
  const Scalar p = w.p();
  const int dn = t.src.dim();
  Star s = star(w, t.mod);
  Matrix m(s.mod.dim(), dn, p);
  for (int y = 0; y < dn; ++y) {
    Matrix phi(t.mod.dim(), w.dim, p);
    for (int x = 0; x < w.dim; ++x) phi.set_block(0, x, t.proj.col(x * dn + y));
    auto c = s.coords(phi);
    for (int i = 0; i < s.mod.dim(); ++i) m.at(i, y) = c[i];
  }
  return {t, s, {t.src, s.mod, m}};
}

Unit mu(const Bimodule& w, const Module& n) { return mu(w, cotensor(w, n)); }

CoHom hom_into(const Module& m, const Bimodule& w) {
  if (!same_algebra(w.R, m.algebra())) throw InvalidInput("hom_into: module is not over the left algebra");
  const Scalar p = m.p();
  HomSpace H = hom_space(m, w.left_module);
  const int h = H.dim();
  AlgebraPtr sop = w.S->opposite();
  CoHom out;
  out.src = m;
  if (h == 0) {
    out.mod = Module::zero(sop);
    out.vecs = Matrix(m.dim() * w.dim, 0, p);
    out.linv = Matrix(0, m.dim() * w.dim, p);
    return out;
  }
  std::vector<Matrix> act;
  for (int s = 0; s < w.S->dim(); ++s) {
    Matrix A(h, h, p);
    for (int k = 0; k < h; ++k) {
      auto c = H.coords(w.right[s] * H.basis[k]);
      for (int i = 0; i < h; ++i) A.at(i, k) = c[i];
    }
    act.push_back(A);
  }
  auto r = regroup(sop, act);
  out.mod = r.mod;
  for (int j = 0; j < h; ++j) {
    Matrix f(w.dim, m.dim(), p);
    for (int k = 0; k < h; ++k)
      if (r.T(k, j)) f = f + H.basis[k].scaled(r.T(k, j));
    out.maps.push_back(f);
  }
  out.vecs = vec_columns(out.maps, m.dim() * w.dim, p);
  out.linv = r.Tinv * H.linv;
  return out;
}

Morphism hom_into_map(const CoHom& a, const CoHom& b, const Morphism& g) {
  const Scalar p = g.mat.p();
  Matrix m(a.mod.dim(), b.mod.dim(), p);
  for (int j = 0; j < b.mod.dim(); ++j) {
    auto c = a.coords(b.maps[j] * g.mat);
    for (int i = 0; i < a.mod.dim(); ++i) m.at(i, j) = c[i];
  }
  return {b.mod, a.mod, m};
}

}  // namespace cotr
