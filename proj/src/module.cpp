#include "cotr/module.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

namespace cotr {

namespace {

Matrix structure_combination(const Algebra& a, const std::vector<Matrix>& act, int i, int j,
                             int n) {
  Matrix acc(n, n, a.p());
  for (auto [k, c] : a.mul(i, j)) acc = acc + act[k].scaled(c);
  return acc;
}

Matrix vertex_projection(const std::vector<int>& vertex_of, int v, Scalar p) {
  const int n = int(vertex_of.size());
  Matrix m(n, n, p);
  for (int i = 0; i < n; ++i)
    if (vertex_of[i] == v) m.at(i, i) = 1;
  return m;
}

}  // namespace

Module Module::make(AlgebraPtr alg, std::vector<int> dimvec, std::vector<Matrix> action,
                    bool check) {
  if (!alg) throw InvalidInput("module without algebra");
  if (int(dimvec.size()) != alg->num_vertices())
    throw InvalidInput("dimension vector has " + std::to_string(dimvec.size()) + " entries, expected " +
                       std::to_string(alg->num_vertices()));
  if (int(action.size()) != alg->dim()) throw InvalidInput("action list does not cover the basis");
  auto d = std::make_shared<Data>();
  d->alg = alg;
  d->dimvec = dimvec;
  d->offset.resize(dimvec.size());
  int off = 0;
  for (std::size_t v = 0; v < dimvec.size(); ++v) {
    if (dimvec[v] < 0) throw InvalidInput("negative dimension");
    d->offset[v] = off;
    for (int k = 0; k < dimvec[v]; ++k) d->vertex_of.push_back(int(v));
    off += dimvec[v];
  }
  d->dim = off;
  for (auto& m : action)
    if (m.rows() != off || m.cols() != off || m.p() != alg->p())
      throw InvalidInput("action matrix has the wrong shape");
  d->action = std::move(action);
  Module M;
  M.d_ = std::move(d);
  if (check) M.validate();
  return M;
}

Module Module::zero(AlgebraPtr alg) {
  std::vector<Matrix> act(alg->dim(), Matrix(0, 0, alg->p()));
  return make(alg, std::vector<int>(alg->num_vertices(), 0), std::move(act), false);
}

void Module::validate() const {
  const Algebra& a = *d_->alg;
  const int n = d_->dim;
  for (int v = 0; v < a.num_vertices(); ++v)
    if (act(a.idempotent(v)) != vertex_projection(d_->vertex_of, v, a.p()))
      throw InvalidInput("vertex idempotent " + a.vertex_labels()[v] +
                         " does not act as the block projection");
  for (int i = 0; i < a.dim(); ++i)
    for (int j = 0; j < a.dim(); ++j)
      if (act(i) * act(j) != structure_combination(a, d_->action, i, j, n))
        throw InvalidInput("action violates the relation " + a.labels()[i] + "*" + a.labels()[j]);
}

std::string Module::describe() const {
  std::ostringstream os;
  os << "dim " << dim() << " (";
  for (std::size_t v = 0; v < dimvec().size(); ++v) os << (v ? "," : "") << dimvec()[v];
  os << ")";
  return os.str();
}

Morphism identity_morphism(const Module& m) { return {m, m, Matrix::identity(m.dim(), m.p())}; }

Morphism zero_morphism(const Module& a, const Module& b) {
  return {a, b, Matrix(b.dim(), a.dim(), a.p())};
}

Morphism compose(const Morphism& g, const Morphism& f) {
  if (g.src.dim() != f.tgt.dim()) throw DimensionMismatch("morphisms are not composable");
  return {f.src, g.tgt, g.mat * f.mat};
}

bool is_homomorphism(const Morphism& f) {
  if (f.mat.rows() != f.tgt.dim() || f.mat.cols() != f.src.dim()) return false;
  if (!same_algebra(f.src.algebra(), f.tgt.algebra())) return false;
  const Algebra& a = *f.src.algebra();
  for (int b = 0; b < a.dim(); ++b)
    if (f.mat * f.src.act(b) != f.tgt.act(b) * f.mat) return false;
  return true;
}

bool is_mono(const Morphism& f) { return rank(f.mat) == f.src.dim(); }
bool is_epi(const Morphism& f) { return rank(f.mat) == f.tgt.dim(); }
bool is_iso(const Morphism& f) { return f.src.dim() == f.tgt.dim() && is_mono(f); }

Morphism operator+(const Morphism& a, const Morphism& b) { return {a.src, a.tgt, a.mat + b.mat}; }
Morphism operator-(const Morphism& a) { return {a.src, a.tgt, -a.mat}; }

Module module_from_arrows(const AlgebraPtr& a, const std::vector<int>& dimvec,
                          const std::map<std::string, Matrix>& arrows, bool check) {
  if (!a->presentation()) throw UnsupportedPresentation("module_from_arrows needs a quiver presentation");
  const Presentation& pr = *a->presentation();
  const Quiver& q = pr.quiver;
  if (int(dimvec.size()) != a->num_vertices()) throw InvalidInput("dimension vector length");
  std::vector<int> off(dimvec.size());
  int n = 0;
  for (std::size_t v = 0; v < dimvec.size(); ++v) off[v] = n, n += dimvec[v];
  const Scalar p = a->p();
  std::vector<Matrix> full(q.arrows.size(), Matrix(n, n, p));
  for (auto& [name, m] : arrows) {
    int ai = q.arrow_index(name);
    if (ai < 0) throw InvalidInput("unknown arrow " + name);
    const Arrow& ar = q.arrows[ai];
    if (m.rows() != dimvec[ar.target] || m.cols() != dimvec[ar.source])
      throw InvalidInput("arrow " + name + " matrix must be " + std::to_string(dimvec[ar.target]) + "x" +
                         std::to_string(dimvec[ar.source]));
    full[ai].set_block(off[ar.target], off[ar.source], m);
  }
  std::vector<Matrix> act;
  for (int b = 0; b < a->dim(); ++b) {
    if (a->is_idempotent_basis(b)) {
      int v = a->vertex_of_idempotent(b);
      Matrix e(n, n, p);
      for (int k = 0; k < dimvec[v]; ++k) e.at(off[v] + k, off[v] + k) = 1;
      act.push_back(e);
    } else {
      Matrix m = Matrix::identity(n, p);
      for (int ai : pr.basis_paths[b]) m = full[ai] * m;
      act.push_back(m);
    }
  }
  return Module::make(a, dimvec, std::move(act), check);
}

Module module_from_coordinates(const AlgebraPtr& a, const std::vector<int>& vertex_of_coord,
                               const std::vector<Matrix>& action, Matrix* T) {
  const int n = int(vertex_of_coord.size());
  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](int x, int y) { return vertex_of_coord[x] < vertex_of_coord[y]; });
  Matrix P(n, n, a->p());
  for (int k = 0; k < n; ++k) P.at(order[k], k) = 1;
  Matrix Pt = P.transpose();
  std::vector<Matrix> act;
  act.reserve(action.size());
  for (auto& m : action) act.push_back(Pt * m * P);
  std::vector<int> dv(a->num_vertices(), 0);
  for (int v : vertex_of_coord) dv[v]++;
  if (T) *T = P;
  return Module::make(a, dv, std::move(act), false);
}

Bimodule Bimodule::make(AlgebraPtr R, AlgebraPtr S, std::vector<int> lv, std::vector<int> rv,
                        std::vector<Matrix> left, std::vector<Matrix> right, bool check) {
  const int n = int(lv.size());
  if (int(rv.size()) != n || int(left.size()) != R->dim() || int(right.size()) != S->dim())
    throw InvalidInput("bimodule data has inconsistent sizes");
  if (R->p() != S->p()) throw InvalidInput("bimodule algebras over different fields");
  for (auto& m : left)
    if (m.rows() != n || m.cols() != n) throw InvalidInput("left action matrix shape");
  for (auto& m : right)
    if (m.rows() != n || m.cols() != n) throw InvalidInput("right action matrix shape");
  const Scalar p = R->p();
  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](int x, int y) {
    return std::pair(lv[x], rv[x]) < std::pair(lv[y], rv[y]);
  });
  Matrix P(n, n, p);
  for (int k = 0; k < n; ++k) P.at(order[k], k) = 1;
  Matrix Pt = P.transpose();
  Bimodule B;
  B.R = R;
  B.S = S;
  B.dim = n;
  for (int k = 0; k < n; ++k) {
    B.lv.push_back(lv[order[k]]);
    B.rv.push_back(rv[order[k]]);
  }
  for (auto& m : left) B.left.push_back(Pt * m * P);
  for (auto& m : right) B.right.push_back(Pt * m * P);
  std::vector<int> dl(R->num_vertices(), 0);
  for (int v : B.lv) {
    if (v < 0 || v >= R->num_vertices()) throw InvalidInput("left vertex out of range");
    dl[v]++;
  }
  for (int u : B.rv)
    if (u < 0 || u >= S->num_vertices()) throw InvalidInput("right vertex out of range");
  B.left_module = Module::make(R, dl, B.left, check);
  B.right_module = module_from_coordinates(S->opposite(), B.rv, B.right, &B.right_perm);
  if (check) B.validate();
  return B;
}

void Bimodule::validate() const {
  left_module.validate();
  right_module.validate();
  std::vector<int> rgen, sgen;
  for (int v = 0; v < R->num_vertices(); ++v) rgen.push_back(R->idempotent(v));
  for (int g : R->radical_generators()) rgen.push_back(g);
  for (int u = 0; u < S->num_vertices(); ++u) sgen.push_back(S->idempotent(u));
  for (int g : S->radical_generators()) sgen.push_back(g);
  for (int r : rgen)
    for (int s : sgen)
      if (left[r] * right[s] != right[s] * left[r])
        throw InvalidInput("left and right actions do not commute");
  for (int u = 0; u < S->num_vertices(); ++u)
    if (right[S->idempotent(u)] != vertex_projection(rv, u, p()))
      throw InvalidInput("right idempotents do not match the basis grouping");
}

Bimodule Bimodule::flip() const {
  return make(S->opposite(), R->opposite(), rv, lv, right, left, false);
}

Bimodule regular_bimodule(const AlgebraPtr& a) {
  const int n = a->dim();
  const Scalar p = a->p();
  std::vector<int> lv(n), rv(n);
  for (int b = 0; b < n; ++b) lv[b] = a->left_vertex(b), rv[b] = a->right_vertex(b);
  std::vector<Matrix> left(n, Matrix(n, n, p)), right(n, Matrix(n, n, p));
  for (int r = 0; r < n; ++r)
    for (int j = 0; j < n; ++j) {
      for (auto [k, c] : a->mul(r, j)) left[r].at(k, j) = c;
      for (auto [k, c] : a->mul(j, r)) right[r].at(k, j) = c;
    }
  return Bimodule::make(a, a, lv, rv, left, right, true);
}

Bimodule matlis_dual_bimodule(const AlgebraPtr& a) {
  const int n = a->dim();
  const Scalar p = a->p();
  std::vector<int> lv(n), rv(n);
  for (int b = 0; b < n; ++b) lv[b] = a->right_vertex(b), rv[b] = a->left_vertex(b);
  std::vector<Matrix> left(n, Matrix(n, n, p)), right(n, Matrix(n, n, p));
  for (int k = 0; k < n; ++k)
    for (int m = 0; m < n; ++m) {
      for (auto [i, c] : a->mul(m, k)) left[k].at(m, i) = c;
      for (auto [i, c] : a->mul(k, m)) right[k].at(m, i) = c;
    }
  return Bimodule::make(a, a, lv, rv, left, right, true);
}

Bimodule dual_bimodule(const Bimodule& b) {
  std::vector<Matrix> left, right;
  for (auto& m : b.right) left.push_back(m.transpose());
  for (auto& m : b.left) right.push_back(m.transpose());
  return Bimodule::make(b.S, b.R, b.rv, b.lv, left, right, true);
}

}  // namespace cotr
