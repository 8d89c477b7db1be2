#include "cotr/modrep.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <numeric>
#include <random>
#include <set>

#include "cotr/internal.hpp"

namespace cotr {

// ---------- standard modules ----------

Module simple_module(const AlgebraPtr& a, int v) {
  std::vector<int> dv(a->num_vertices(), 0);
  dv[v] = 1;
  std::vector<Matrix> act(a->dim(), Matrix(1, 1, a->p()));
  act[a->idempotent(v)].at(0, 0) = 1;
  return Module::make(a, dv, std::move(act), false);
}

std::vector<Module> simple_modules(const AlgebraPtr& a) {
  std::vector<Module> out;
  for (int v = 0; v < a->num_vertices(); ++v) out.push_back(simple_module(a, v));
  return out;
}

namespace detail {

IndexedModule projective_indexed(const AlgebraPtr& a, int v) {
  std::vector<int> idx;
  for (int b = 0; b < a->dim(); ++b)
    if (a->right_vertex(b) == v) idx.push_back(b);
  std::stable_sort(idx.begin(), idx.end(),
                   [&](int x, int y) { return a->left_vertex(x) < a->left_vertex(y); });
  const int n = int(idx.size());
  std::vector<int> pos(a->dim(), -1);
  for (int k = 0; k < n; ++k) pos[idx[k]] = k;
  std::vector<Matrix> act(a->dim(), Matrix(n, n, a->p()));
  for (int r = 0; r < a->dim(); ++r)
    for (int k = 0; k < n; ++k)
      for (auto [m, c] : a->mul(r, idx[k])) act[r].at(pos[m], k) = c;
  std::vector<int> dv(a->num_vertices(), 0);
  for (int b : idx) dv[a->left_vertex(b)]++;
  return {Module::make(a, dv, std::move(act), false), idx};
}

IndexedModule injective_indexed(const AlgebraPtr& a, int v) {
  std::vector<int> idx;
  for (int b = 0; b < a->dim(); ++b)
    if (a->left_vertex(b) == v) idx.push_back(b);
  std::stable_sort(idx.begin(), idx.end(),
                   [&](int x, int y) { return a->right_vertex(x) < a->right_vertex(y); });
  const int n = int(idx.size());
  std::vector<int> pos(a->dim(), -1);
  for (int k = 0; k < n; ++k) pos[idx[k]] = k;
  // (b_r . b_j^*)(b_m) = coefficient of b_j in b_m b_r.
  std::vector<Matrix> act(a->dim(), Matrix(n, n, a->p()));
  for (int r = 0; r < a->dim(); ++r)
    for (int mi = 0; mi < n; ++mi)
      for (auto [j, c] : a->mul(idx[mi], r))
        if (pos[j] >= 0) act[r].at(mi, pos[j]) = c;
  std::vector<int> dv(a->num_vertices(), 0);
  for (int b : idx) dv[a->right_vertex(b)]++;
  return {Module::make(a, dv, std::move(act), false), idx};
}

Matrix matrix_power(const Matrix& m, long long e) {
  Matrix r = Matrix::identity(m.rows(), m.p()), b = m;
  while (e > 0) {
    if (e & 1) r = r * b;
    b = b * b;
    e >>= 1;
  }
  return r;
}

std::vector<Scalar> minimal_polynomial(const Matrix& m) {
  const int n = m.rows();
  const Scalar p = m.p();
  std::vector<Matrix> powers{Matrix::identity(n, p)};
  Matrix cols = Matrix::column(powers[0].vec(), p);
  for (int k = 1; k <= n + 1; ++k) {
    Matrix next = powers.back() * m;
    Matrix v = Matrix::column(next.vec(), p);
    auto c = solve(cols, v);
    if (c) {
      std::vector<Scalar> poly(k + 1, 0);
      for (int i = 0; i < k; ++i) poly[i] = (*c)(i, 0) ? p - (*c)(i, 0) : 0;
      poly[k] = 1;
      return poly;
    }
    powers.push_back(next);
    cols = hcat({cols, v}, cols.rows(), p);
  }
  throw InvariantViolation("minimal polynomial search overran");
}

std::vector<Scalar> polynomial_roots(const std::vector<Scalar>& poly, Scalar p) {
  std::vector<Scalar> roots;
  for (Scalar x = 0; x < p; ++x) {
    std::uint64_t acc = 0;
    for (int i = int(poly.size()) - 1; i >= 0; --i) acc = (acc * x + poly[i]) % p;
    if (acc == 0) roots.push_back(x);
  }
  return roots;
}

bool is_nilpotent(const Matrix& m) { return matrix_power(m, std::max(1, m.rows())).is_zero(); }

}  // namespace detail

using namespace detail;

Module projective_module(const AlgebraPtr& a, int v) { return projective_indexed(a, v).mod; }
Module injective_module(const AlgebraPtr& a, int v) { return injective_indexed(a, v).mod; }

Module regular_module(const AlgebraPtr& a) { return regular_bimodule(a).left_module; }
Module injective_cogenerator(const AlgebraPtr& a) { return matlis_dual_bimodule(a).left_module; }

Module dual_module(const Module& m) {
  std::vector<Matrix> act;
  for (auto& x : m.actions()) act.push_back(x.transpose());
  return Module::make(m.algebra()->opposite(), m.dimvec(), std::move(act), false);
}

Morphism dual_morphism(const Morphism& f, const Module& dsrc, const Module& dtgt) {
  // f: M -> N gives D(N) -> D(M); dsrc = D(M), dtgt = D(N).
  return {dtgt, dsrc, f.mat.transpose()};
}

DirectSum direct_sum(const std::vector<Module>& ms) {
  if (ms.empty()) throw InvalidInput("direct sum of no modules");
  const AlgebraPtr& a = ms[0].algebra();
  const Scalar p = a->p();
  std::vector<int> vertex_of;
  std::vector<int> base;
  int n = 0;
  for (auto& m : ms) {
    base.push_back(n);
    for (int c = 0; c < m.dim(); ++c) vertex_of.push_back(m.vertex_of(c));
    n += m.dim();
  }
  std::vector<Matrix> act;
  for (int b = 0; b < a->dim(); ++b) {
    std::vector<Matrix> blocks;
    for (auto& m : ms) blocks.push_back(m.act(b));
    act.push_back(direct_sum(blocks, p));
  }
  Matrix T;
  DirectSum out;
  out.mod = module_from_coordinates(a, vertex_of, act, &T);
  // T: new coordinates -> concatenated coordinates (a permutation).
  Matrix Tt = T.transpose();
  for (std::size_t i = 0; i < ms.size(); ++i) {
    Matrix e(n, ms[i].dim(), p);
    for (int c = 0; c < ms[i].dim(); ++c) e.at(base[i] + c, c) = 1;
    Matrix inc = Tt * e;
    out.incl.push_back({ms[i], out.mod, inc});
    out.proj.push_back({out.mod, ms[i], inc.transpose()});
  }
  return out;
}

Module direct_sum_module(const std::vector<Module>& ms) { return direct_sum(ms).mod; }

Morphism block_morphism(const DirectSum& src, const DirectSum& tgt,
                        const std::vector<std::vector<Matrix>>& blocks) {
  Matrix m(tgt.mod.dim(), src.mod.dim(), src.mod.p());
  for (std::size_t i = 0; i < tgt.incl.size(); ++i)
    for (std::size_t j = 0; j < src.proj.size(); ++j)
      if (!blocks[i][j].empty()) m = m + tgt.incl[i].mat * blocks[i][j] * src.proj[j].mat;
  return {src.mod, tgt.mod, m};
}

// ---------- subquotients ----------

Subquotient subquotient(const Module& X, const Matrix& Z, const Matrix& B) {
  const AlgebraPtr& a = X.algebra();
  const Scalar p = X.p();
  const int n = X.dim();
  std::vector<Matrix> bparts, rparts;
  std::vector<int> vertex_of;
  int nb = 0;
  for (int v = 0; v < a->num_vertices(); ++v) {
    const Matrix& e = X.act(a->idempotent(v));
    Matrix Bv = B.cols() ? image_basis(e * B) : Matrix(n, 0, p);
    Matrix Zv = Z.cols() ? e * Z : Matrix(n, 0, p);
    auto piv = rref(hcat({Bv, Zv}, n, p)).pivots;
    std::vector<int> pick;
    for (int c : piv)
      if (c >= Bv.cols()) pick.push_back(c - Bv.cols());
    if (int(piv.size()) - int(pick.size()) != Bv.cols())
      throw InvariantViolation("subquotient: B is not contained in Z");
    Matrix Rv = Zv.select_cols(pick);
    bparts.push_back(Bv);
    rparts.push_back(Rv);
    nb += Bv.cols();
    for (int k = 0; k < Rv.cols(); ++k) vertex_of.push_back(v);
  }
  Matrix Bb = hcat(bparts, n, p), R = hcat(rparts, n, p);
  Matrix C = complement_basis(hcat({Bb, R}, n, p), n);
  Matrix full = hcat({Bb, R, C}, n, p);
  Matrix inv = invert(full);
  Subquotient s;
  s.reps = R;
  s.proj = inv.block(nb, 0, R.cols(), n);
  s.zbasis = hcat({Bb, R}, n, p);
  s.bbasis = Bb;
  std::vector<Matrix> act;
  act.reserve(a->dim());
  for (int b = 0; b < a->dim(); ++b) act.push_back(s.proj * X.act(b) * R);
  std::vector<int> dv(a->num_vertices(), 0);
  for (int v : vertex_of) dv[v]++;
  s.mod = Module::make(a, dv, std::move(act), false);
  return s;
}

Subquotient submodule(const Module& X, const Matrix& Z) {
  return subquotient(X, Z, Matrix(X.dim(), 0, X.p()));
}

Subquotient quotient_module(const Module& X, const Matrix& B) {
  return subquotient(X, Matrix::identity(X.dim(), X.p()), B);
}

Morphism induced_map(const Subquotient& a, const Subquotient& b, const Matrix& F) {
  return {a.mod, b.mod, b.proj * F * a.reps};
}

SubResult subquotient(const Morphism& f, SubKind kind) {
  switch (kind) {
    case SubKind::Kernel: {
      auto s = submodule(f.src, kernel_basis(f.mat));
      return {s.mod, {s.mod, f.src, s.reps}};
    }
    case SubKind::Image: {
      auto s = submodule(f.tgt, image_basis(f.mat));
      return {s.mod, {s.mod, f.tgt, s.reps}};
    }
    case SubKind::Cokernel: {
      auto s = quotient_module(f.tgt, image_basis(f.mat));
      return {s.mod, {f.tgt, s.mod, s.proj}};
    }
  }
  throw InvariantViolation("unknown subquotient kind");
}

SubResult kernel(const Morphism& f) { return subquotient(f, SubKind::Kernel); }
SubResult cokernel(const Morphism& f) { return subquotient(f, SubKind::Cokernel); }
SubResult image(const Morphism& f) { return subquotient(f, SubKind::Image); }

Morphism corestrict_to_image(const Morphism& f, const SubResult& im) {
  return {f.src, im.mod, left_inverse(im.map.mat) * f.mat};
}

Morphism factor_through_mono(const Morphism& f, const Morphism& incl) {
  auto g = solve(incl.mat, f.mat);
  if (!g) throw InvariantViolation("map does not factor through the monomorphism");
  return {f.src, incl.src, *g};
}

Morphism factor_through_epi(const Morphism& f, const Morphism& epi) {
  auto s = solve(epi.mat, Matrix::identity(epi.tgt.dim(), epi.mat.p()));
  if (!s) throw InvariantViolation("factor_through_epi: map is not surjective");
  Morphism g{epi.tgt, f.tgt, f.mat * *s};
  if (g.mat * epi.mat != f.mat) throw InvariantViolation("map does not factor through the epimorphism");
  return g;
}

// ---------- Hom ----------

Matrix HomSpace::element(const std::vector<Scalar>& c) const {
  Matrix m(tgt.dim(), src.dim(), src.p());
  for (std::size_t k = 0; k < basis.size(); ++k)
    if (c[k]) m = m + basis[k].scaled(c[k]);
  return m;
}

std::vector<Scalar> HomSpace::coords(const Matrix& f) const {
  if (basis.empty()) return {};
  return (linv * Matrix::column(f.vec(), f.p())).col_vector(0);
}

bool HomSpace::contains(const Matrix& f) const {
  if (basis.empty()) return f.is_zero();
  auto c = coords(f);
  return element(c) == f;
}

HomSpace hom_space(const Module& M, const Module& N) {
  if (!same_algebra(M.algebra(), N.algebra())) throw InvalidInput("hom_space: modules over different algebras");
  const Algebra& a = *M.algebra();
  const Scalar p = a.p();
  const int nv = a.num_vertices();
  std::vector<int> var_off(nv);
  int nvars = 0;
  for (int v = 0; v < nv; ++v) var_off[v] = nvars, nvars += N.dim_at(v) * M.dim_at(v);
  auto var = [&](int v, int i, int j) { return var_off[v] + i * M.dim_at(v) + j; };
  int neq = 0;
  for (int g : a.radical_generators()) neq += N.dim_at(a.left_vertex(g)) * M.dim_at(a.right_vertex(g));
  Matrix E(neq, nvars, p);
  int row = 0;
  for (int g : a.radical_generators()) {
    int l = a.left_vertex(g), r = a.right_vertex(g);
    Matrix A = M.act(g).block(M.offset(l), M.offset(r), M.dim_at(l), M.dim_at(r));
    Matrix B = N.act(g).block(N.offset(l), N.offset(r), N.dim_at(l), N.dim_at(r));
    for (int i = 0; i < N.dim_at(l); ++i)
      for (int j = 0; j < M.dim_at(r); ++j, ++row) {
        for (int k = 0; k < N.dim_at(r); ++k)
          if (B(i, k)) E.at(row, var(r, k, j)) = (E(row, var(r, k, j)) + B(i, k)) % p;
        for (int k = 0; k < M.dim_at(l); ++k)
          if (A(k, j)) E.at(row, var(l, i, k)) = (E(row, var(l, i, k)) + p - A(k, j)) % p;
      }
  }
  Matrix K = kernel_basis(E);
  HomSpace H;
  H.src = M;
  H.tgt = N;
  for (int c = 0; c < K.cols(); ++c) {
    Matrix f(N.dim(), M.dim(), p);
    for (int v = 0; v < nv; ++v)
      for (int i = 0; i < N.dim_at(v); ++i)
        for (int j = 0; j < M.dim_at(v); ++j) f.at(N.offset(v) + i, M.offset(v) + j) = K(var(v, i, j), c);
    H.basis.push_back(f);
  }
  std::vector<Matrix> cols;
  for (auto& f : H.basis) cols.push_back(Matrix::column(f.vec(), p));
  H.vecs = hcat(cols, N.dim() * M.dim(), p);
  H.linv = H.basis.empty() ? Matrix(0, N.dim() * M.dim(), p) : left_inverse(H.vecs);
  return H;
}

int hom_dim(const Module& m, const Module& n) { return hom_space(m, n).dim(); }

// ---------- radical layers ----------

SubResult socle(const Module& m) {
  const Algebra& a = *m.algebra();
  std::vector<Matrix> rows;
  for (int b : a.radical_basis()) rows.push_back(m.act(b));
  Matrix K = rows.empty() ? Matrix::identity(m.dim(), m.p()) : kernel_basis(vcat(rows, m.dim(), m.p()));
  auto s = submodule(m, K);
  return {s.mod, {s.mod, m, s.reps}};
}

SubResult radical_submodule(const Module& m) {
  const Algebra& a = *m.algebra();
  std::vector<Matrix> cols;
  for (int b : a.radical_basis()) cols.push_back(m.act(b));
  Matrix I = cols.empty() ? Matrix(m.dim(), 0, m.p()) : image_basis(hcat(cols, m.dim(), m.p()));
  auto s = submodule(m, I);
  return {s.mod, {s.mod, m, s.reps}};
}

SubResult top(const Module& m) { return cokernel(radical_submodule(m).map); }

std::vector<int> socle_multiplicities(const Module& m) { return socle(m).mod.dimvec(); }
std::vector<int> top_multiplicities(const Module& m) { return top(m).mod.dimvec(); }

SubResult injective_envelope(const Module& m) {
  const AlgebraPtr& a = m.algebra();
  const Scalar p = m.p();
  if (m.is_zero()) return {Module::zero(a), zero_morphism(m, Module::zero(a))};
  auto soc = socle(m);
  std::vector<Module> parts;
  std::vector<Matrix> maps;
  for (int v = 0; v < a->num_vertices(); ++v) {
    int k = soc.mod.dim_at(v);
    if (!k) continue;
    Matrix Sv = soc.map.mat.block(m.offset(v), soc.mod.offset(v), m.dim_at(v), k);
    Matrix L = left_inverse(Sv);  // k x d_v
    auto inj = injective_indexed(a, v);
    for (int i = 0; i < k; ++i) {
      Matrix lambda(1, m.dim(), p);
      lambda.set_block(0, m.offset(v), L.block(i, 0, 1, m.dim_at(v)));
      Matrix phi(inj.mod.dim(), m.dim(), p);
      for (int c = 0; c < inj.mod.dim(); ++c) phi.set_block(c, 0, lambda * m.act(inj.basis[c]));
      parts.push_back(inj.mod);
      maps.push_back(phi);
    }
  }
  auto ds = direct_sum(parts);
  Matrix total(ds.mod.dim(), m.dim(), p);
  for (std::size_t i = 0; i < parts.size(); ++i) total = total + ds.incl[i].mat * maps[i];
  return {ds.mod, {m, ds.mod, total}};
}

SubResult projective_cover(const Module& m) {
  const AlgebraPtr& a = m.algebra();
  const Scalar p = m.p();
  if (m.is_zero()) return {Module::zero(a), zero_morphism(Module::zero(a), m)};
  auto rad = radical_submodule(m);
  std::vector<Module> parts;
  std::vector<Matrix> maps;
  for (int v = 0; v < a->num_vertices(); ++v) {
    if (!m.dim_at(v)) continue;
    const Matrix& e = m.act(a->idempotent(v));
    Matrix Rv = image_basis(e * rad.map.mat);
    Matrix Ev(m.dim(), m.dim_at(v), p);
    for (int k = 0; k < m.dim_at(v); ++k) Ev.at(m.offset(v) + k, k) = 1;
    auto piv = rref(hcat({Rv, Ev}, m.dim(), p)).pivots;
    auto proj = projective_indexed(a, v);
    for (int c : piv) {
      if (c < Rv.cols()) continue;
      Matrix gen = Ev.col(c - Rv.cols());
      Matrix phi(m.dim(), proj.mod.dim(), p);
      for (int k = 0; k < proj.mod.dim(); ++k) phi.set_block(0, k, m.act(proj.basis[k]) * gen);
      parts.push_back(proj.mod);
      maps.push_back(phi);
    }
  }
  auto ds = direct_sum(parts);
  Matrix total(m.dim(), ds.mod.dim(), p);
  for (std::size_t i = 0; i < parts.size(); ++i) total = total + maps[i] * ds.proj[i].mat;
  return {ds.mod, {ds.mod, m, total}};
}

bool is_injective(const Module& m) { return injective_envelope(m).mod.dim() == m.dim(); }
bool is_projective(const Module& m) { return projective_cover(m).mod.dim() == m.dim(); }

// ---------- lifting ----------

std::optional<Morphism> extend_along(const Morphism& a, const Morphism& target) {
  // F: a.tgt -> target.tgt with F * a = target.
  HomSpace H = hom_space(a.tgt, target.tgt);
  const Scalar p = a.mat.p();
  if (H.dim() == 0) {
    if (target.mat.is_zero()) return Morphism{a.tgt, target.tgt, Matrix(target.tgt.dim(), a.tgt.dim(), p)};
    return std::nullopt;
  }
  std::vector<Matrix> cols;
  for (auto& F : H.basis) cols.push_back(Matrix::column((F * a.mat).vec(), p));
  auto c = solve(hcat(cols, target.mat.rows() * target.mat.cols(), p), Matrix::column(target.mat.vec(), p));
  if (!c) return std::nullopt;
  return Morphism{a.tgt, target.tgt, H.element(c->col_vector(0))};
}

std::optional<Morphism> lift_through(const Morphism& b, const Morphism& target) {
  HomSpace H = hom_space(target.src, b.src);
  const Scalar p = b.mat.p();
  if (H.dim() == 0) {
    if (target.mat.is_zero()) return Morphism{target.src, b.src, Matrix(b.src.dim(), target.src.dim(), p)};
    return std::nullopt;
  }
  std::vector<Matrix> cols;
  for (auto& F : H.basis) cols.push_back(Matrix::column((b.mat * F).vec(), p));
  auto c = solve(hcat(cols, target.mat.rows() * target.mat.cols(), p), Matrix::column(target.mat.vec(), p));
  if (!c) return std::nullopt;
  return Morphism{target.src, b.src, H.element(c->col_vector(0))};
}

Morphism extend_along_or_throw(const Morphism& a, const Morphism& target, const char* what) {
  auto r = extend_along(a, target);
  if (!r) throw LiftingFailed(std::string("no extension exists: ") + what);
  return *r;
}

Morphism lift_through_or_throw(const Morphism& b, const Morphism& target, const char* what) {
  auto r = lift_through(b, target);
  if (!r) throw LiftingFailed(std::string("no lift exists: ") + what);
  return *r;
}

// ---------- limits ----------

Pullback pullback(const Morphism& f, const Morphism& g) {
  auto ds = direct_sum({f.src, g.src});
  Morphism h{ds.mod, f.tgt, f.mat * ds.proj[0].mat - g.mat * ds.proj[1].mat};
  auto k = kernel(h);
  return {k.mod, compose(ds.proj[0], k.map), compose(ds.proj[1], k.map)};
}

Pushout pushout(const Morphism& f, const Morphism& g) {
  auto ds = direct_sum({f.tgt, g.tgt});
  Morphism h{f.src, ds.mod, ds.incl[0].mat * f.mat - ds.incl[1].mat * g.mat};
  auto c = cokernel(h);
  return {c.mod, compose(c.map, ds.incl[0]), compose(c.map, ds.incl[1])};
}

// ---------- isomorphism and decomposition ----------

std::uint64_t default_cap(Scalar p) {
  std::uint64_t c = 1;
  for (int i = 0; i < 12; ++i) {
    if (c > (std::uint64_t(1) << 50) / p) return std::uint64_t(1) << 50;
    c *= p;
  }
  return c;
}

namespace {

bool power_within(Scalar p, int h, std::uint64_t cap, std::uint64_t* total = nullptr) {
  std::uint64_t t = 1;
  for (int i = 0; i < h; ++i) {
    if (t > cap / p) return false;
    t *= p;
  }
  if (total) *total = t;
  return t <= cap;
}

std::vector<Scalar> decode(std::uint64_t code, int h, Scalar p) {
  std::vector<Scalar> c(h);
  for (int i = 0; i < h; ++i) {
    c[i] = Scalar(code % p);
    code /= p;
  }
  return c;
}

}  // namespace

std::optional<Morphism> indecomposable_iso(const Module& a, const Module& b) {
  if (a.dimvec() != b.dimvec()) return std::nullopt;
  HomSpace F = hom_space(a, b);
  for (auto& f : F.basis)
    if (is_invertible(f)) return Morphism{a, b, f};
  HomSpace G = hom_space(b, a);
  for (auto& f : F.basis)
    for (auto& g : G.basis)
      if (is_invertible(g * f)) return Morphism{a, b, f};
  return std::nullopt;
}

namespace {

struct Split {
  Matrix K, I;  // complementary submodules
};

std::optional<Split> fitting_split(const Module& m, const Matrix& phi) {
  const int n = m.dim();
  for (Scalar lam : polynomial_roots(minimal_polynomial(phi), m.p())) {
    Matrix psi = matrix_power(phi - Matrix::identity(n, m.p()).scaled(lam), n);
    Matrix K = kernel_basis(psi);
    if (K.cols() > 0 && K.cols() < n) return Split{K, image_basis(psi)};
  }
  return std::nullopt;
}

// Certifies End(m) local: each basis element has a unique eigenvalue and the
// shifted elements span a nilpotent ideal.
bool certify_local(const Module& m, const HomSpace& E) {
  const Scalar p = m.p();
  const int n = m.dim();
  std::vector<Matrix> rad;
  for (auto& f : E.basis) {
    auto roots = polynomial_roots(minimal_polynomial(f), p);
    if (roots.size() != 1) return false;
    Matrix g = f - Matrix::identity(n, p).scaled(roots[0]);
    if (!is_nilpotent(g)) return false;
    rad.push_back(g);
  }
  std::vector<Matrix> cols;
  for (auto& g : rad) cols.push_back(Matrix::column(g.vec(), p));
  Matrix span = image_basis(hcat(cols, n * n, p));
  if (span.cols() + 1 != E.dim()) return false;
  // Closure under composition with E and nilpotency of the span.
  for (auto& g : rad)
    for (auto& f : E.basis) {
      if (!in_span(span, Matrix::column((g * f).vec(), p))) return false;
      if (!in_span(span, Matrix::column((f * g).vec(), p))) return false;
    }
  Matrix power = span;
  for (int k = 0; k <= n && power.cols() > 0; ++k) {
    std::vector<Matrix> next;
    for (int c = 0; c < power.cols(); ++c)
      for (auto& g : rad) {
        Matrix x = Matrix::unvec(power.col_vector(c), n, n, p);
        next.push_back(Matrix::column((g * x).vec(), p));
      }
    Matrix nb = image_basis(hcat(next, n * n, p));
    if (nb.cols() == power.cols()) return false;
    power = nb;
  }
  return power.cols() == 0;
}

std::optional<Split> find_split(const Module& m, const SearchOptions& opt, bool* certified_local) {
  HomSpace E = hom_space(m, m);
  if (certified_local) *certified_local = false;
  for (auto& f : E.basis)
    if (auto s = fitting_split(m, f)) return s;
  if (certify_local(m, E)) {
    if (certified_local) *certified_local = true;
    return std::nullopt;
  }
  std::mt19937_64 rng(opt.seed);
  std::uniform_int_distribution<Scalar> d(0, m.p() - 1);
  for (int t = 0; t < opt.random_trials; ++t) {
    std::vector<Scalar> c(E.dim());
    for (auto& x : c) x = d(rng);
    if (auto s = fitting_split(m, E.element(c))) return s;
  }
  std::uint64_t total = 0;
  if (!power_within(m.p(), E.dim(), opt.cap, &total))
    throw SearchExhausted("endomorphism space of dimension " + std::to_string(E.dim()) +
                          " exceeds the enumeration cap");
  for (std::uint64_t code = 1; code < total; ++code)
    if (auto s = fitting_split(m, E.element(decode(code, E.dim(), m.p())))) return s;
  throw InvariantViolation("endomorphism ring neither local nor split");
}

void decompose_into(const Module& m, const Matrix& incl, const SearchOptions& opt,
                    std::vector<Module>& out, std::vector<Matrix>& incls) {
  if (m.is_zero()) return;
  bool local = false;
  auto s = m.dim() == 1 ? std::nullopt : find_split(m, opt, &local);
  if (!s) {
    out.push_back(m);
    incls.push_back(incl);
    return;
  }
  auto K = submodule(m, s->K);
  auto I = submodule(m, s->I);
  decompose_into(K.mod, incl * K.reps, opt, out, incls);
  decompose_into(I.mod, incl * I.reps, opt, out, incls);
}

}  // namespace

Decomposition decompose(const Module& m, const SearchOptions& opt) {
  Decomposition d;
  std::vector<Matrix> incls;
  decompose_into(m, Matrix::identity(m.dim(), m.p()), opt, d.summands, incls);
  if (d.summands.empty()) return d;
  Matrix all = hcat(incls, m.dim(), m.p());
  Matrix inv = invert(all);
  int off = 0;
  for (std::size_t i = 0; i < d.summands.size(); ++i) {
    int k = d.summands[i].dim();
    d.incl.push_back({d.summands[i], m, incls[i]});
    d.proj.push_back({m, d.summands[i], inv.block(off, 0, k, m.dim())});
    off += k;
  }
  return d;
}

bool is_indecomposable(const Module& m, const SearchOptions& opt) {
  if (m.is_zero()) return false;
  return decompose(m, opt).summands.size() == 1;
}

std::optional<Morphism> is_isomorphic(const Module& m, const Module& n, const SearchOptions& opt) {
  if (!same_algebra(m.algebra(), n.algebra())) throw InvalidInput("is_isomorphic: different algebras");
  if (m.dimvec() != n.dimvec()) return std::nullopt;
  if (m.is_zero()) return Morphism{m, n, Matrix(0, 0, m.p())};
  const AlgebraPtr& a = m.algebra();
  for (auto& s : simple_modules(a)) {
    if (hom_dim(s, m) != hom_dim(s, n)) return std::nullopt;
    if (hom_dim(m, s) != hom_dim(n, s)) return std::nullopt;
  }
  HomSpace H = hom_space(m, n);
  int hmm = hom_dim(m, m);
  if (H.dim() != hmm || hom_dim(n, m) != hmm || hom_dim(n, n) != hmm) return std::nullopt;
  for (auto& f : H.basis)
    if (is_invertible(f)) return Morphism{m, n, f};
  std::mt19937_64 rng(opt.seed);
  std::uniform_int_distribution<Scalar> d(0, m.p() - 1);
  for (int t = 0; t < opt.random_trials; ++t) {
    std::vector<Scalar> c(H.dim());
    for (auto& x : c) x = d(rng);
    Matrix f = H.element(c);
    if (is_invertible(f)) return Morphism{m, n, f};
  }
  std::uint64_t total = 0;
  if (power_within(m.p(), H.dim(), opt.cap, &total)) {
    for (std::uint64_t code = 1; code < total; ++code) {
      Matrix f = H.element(decode(code, H.dim(), m.p()));
      if (is_invertible(f)) return Morphism{m, n, f};
    }
    return std::nullopt;
  }
  // Above the cap: match indecomposable summands (Krull-Schmidt), which is exact.
  auto dm = decompose(m, opt), dn = decompose(n, opt);
  if (dm.summands.size() != dn.summands.size()) return std::nullopt;
  std::vector<bool> used(dn.summands.size(), false);
  Matrix iso(n.dim(), m.dim(), m.p());
  for (std::size_t i = 0; i < dm.summands.size(); ++i) {
    bool found = false;
    for (std::size_t j = 0; j < dn.summands.size() && !found; ++j) {
      if (used[j]) continue;
      if (auto f = indecomposable_iso(dm.summands[i], dn.summands[j])) {
        used[j] = true;
        found = true;
        iso = iso + dn.incl[j].mat * f->mat * dm.proj[i].mat;
      }
    }
    if (!found) return std::nullopt;
  }
  return Morphism{m, n, iso};
}

bool is_in_add(const Module& m, const Decomposition& w, const SearchOptions& opt) {
  if (m.is_zero()) return true;
  for (auto& x : decompose(m, opt).summands) {
    bool found = false;
    for (auto& y : w.summands)
      if (indecomposable_iso(x, y)) {
        found = true;
        break;
      }
    if (!found) return false;
  }
  return true;
}

bool is_in_add(const Module& m, const Module& w, const SearchOptions& opt) {
  return is_in_add(m, decompose(w, opt), opt);
}

// ---------- enumeration ----------

Matrix generated_submodule(const Module& m, const Matrix& v) {
  const Algebra& a = *m.algebra();
  const Scalar p = m.p();
  const int n = m.dim();
  std::vector<Matrix> parts;
  for (int w = 0; w < a.num_vertices(); ++w) parts.push_back(m.act(a.idempotent(w)) * v);
  Matrix span = image_basis(hcat(parts, n, p));
  while (true) {
    std::vector<Matrix> more{span};
    for (int g : a.radical_generators()) more.push_back(m.act(g) * span);
    Matrix next = image_basis(hcat(more, n, p));
    if (next.cols() == span.cols()) return span;
    span = next;
  }
}

std::vector<Subquotient> submodules(const Module& m, std::uint64_t cap) {
  const Scalar p = m.p();
  const int n = m.dim();
  if (!power_within(p, n, cap))
    throw EnumerationTooLarge("p^" + std::to_string(n) + " exceeds the enumeration cap " + std::to_string(cap));
  const Algebra& a = *m.algebra();
  std::map<std::vector<Scalar>, Matrix> found;
  auto key_of = [&](const Matrix& basis) {
    Matrix c = canonical_span(basis);
    std::vector<Scalar> k{Scalar(c.rows())};
    k.insert(k.end(), c.data().begin(), c.data().end());
    return k;
  };
  std::deque<Matrix> queue;
  Matrix zero(n, 0, p);
  found.emplace(key_of(zero), zero);
  queue.push_back(zero);
  while (!queue.empty()) {
    Matrix U = queue.front();
    queue.pop_front();
    for (int w = 0; w < a.num_vertices(); ++w) {
      int dw = m.dim_at(w);
      if (!dw) continue;
      Matrix Uw = U.cols() ? m.act(a.idempotent(w)) * U : Matrix(n, 0, p);
      Matrix Ew(n, dw, p);
      for (int k = 0; k < dw; ++k) Ew.at(m.offset(w) + k, k) = 1;
      auto piv = rref(hcat({Uw, Ew}, n, p)).pivots;
      std::vector<int> pick;
      for (int c : piv)
        if (c >= Uw.cols()) pick.push_back(c - Uw.cols());
      Matrix C = Ew.select_cols(pick);
      const int c = C.cols();
      std::uint64_t total = 0;
      power_within(p, c, ~std::uint64_t(0) >> 1, &total);
      for (std::uint64_t code = 1; code < total; ++code) {
        auto coef = decode(code, c, p);
        int lead = c - 1;
        while (lead >= 0 && coef[lead] == 0) --lead;
        if (coef[lead] != 1) continue;  // one representative per line
        Matrix v(n, 1, p);
        for (int k = 0; k < c; ++k)
          if (coef[k]) v = v + C.col(k).scaled(coef[k]);
        Matrix W = generated_submodule(m, hcat({U, v}, n, p));
        auto key = key_of(W);
        if (found.count(key)) continue;
        found.emplace(key, W);
        queue.push_back(W);
      }
    }
  }
  std::vector<std::pair<std::vector<Scalar>, Matrix>> sorted(found.begin(), found.end());
  std::stable_sort(sorted.begin(), sorted.end(),
                   [](auto& x, auto& y) { return x.second.cols() < y.second.cols(); });
  std::vector<Subquotient> out;
  for (auto& [k, basis] : sorted) out.push_back(submodule(m, basis));
  return out;
}

std::vector<Subquotient> quotients(const Module& m, std::uint64_t cap) {
  std::vector<Subquotient> out;
  for (auto& s : submodules(m, cap)) out.push_back(quotient_module(m, s.zbasis));
  return out;
}

// ---------- endomorphism algebras ----------

EndomorphismAlgebra endomorphism_algebra(const Module& m, const SearchOptions& opt) {
  if (m.is_zero()) throw InvalidInput("endomorphism algebra of the zero module");
  const Scalar p = m.p();
  const int n = m.dim();
  EndomorphismAlgebra out;
  out.decomposition = decompose(m, opt);
  const auto& D = out.decomposition;
  const int k = int(D.summands.size());
  for (int i = 0; i < k; ++i)
    for (int j = i + 1; j < k; ++j)
      if (indecomposable_iso(D.summands[i], D.summands[j]))
        throw UnsupportedPresentation("module is not basic: summands " + std::to_string(i + 1) + " and " +
                                      std::to_string(j + 1) + " are isomorphic");
  AlgebraSpec s;
  s.p = p;
  std::vector<Matrix> maps;
  for (int i = 0; i < k; ++i) {
    s.vertex_labels.push_back(std::to_string(i + 1));
    s.idempotent.push_back(int(maps.size()));
    s.labels.push_back("e" + std::to_string(i + 1));
    s.left_vertex.push_back(i);
    s.right_vertex.push_back(i);
    maps.push_back(D.incl[i].mat * D.proj[i].mat);
  }
  for (int i = 0; i < k; ++i) {
    const Module& X = D.summands[i];
    HomSpace E = hom_space(X, X);
    std::vector<Matrix> rad;
    for (auto& f : E.basis) {
      auto roots = polynomial_roots(minimal_polynomial(f), p);
      if (roots.size() != 1)
        throw UnsupportedPresentation("endomorphism ring of a summand is not split local");
      rad.push_back(f - Matrix::identity(X.dim(), p).scaled(roots[0]));
    }
    std::vector<Matrix> cols;
    for (auto& g : rad) cols.push_back(Matrix::column(g.vec(), p));
    auto piv = rref(hcat(cols, X.dim() * X.dim(), p)).pivots;
    if (int(piv.size()) + 1 != E.dim())
      throw UnsupportedPresentation("endomorphism ring of a summand has a non-prime residue field");
    int c = 0;
    for (int idx : piv) {
      s.labels.push_back("r" + std::to_string(i + 1) + "_" + std::to_string(++c));
      s.left_vertex.push_back(i);
      s.right_vertex.push_back(i);
      maps.push_back(D.incl[i].mat * rad[idx] * D.proj[i].mat);
    }
  }
  for (int i = 0; i < k; ++i)
    for (int j = 0; j < k; ++j) {
      if (i == j) continue;
      HomSpace H = hom_space(D.summands[j], D.summands[i]);
      int c = 0;
      for (auto& f : H.basis) {
        s.labels.push_back("h" + std::to_string(i + 1) + "_" + std::to_string(j + 1) + "_" + std::to_string(++c));
        s.left_vertex.push_back(i);
        s.right_vertex.push_back(j);
        maps.push_back(D.incl[i].mat * f * D.proj[j].mat);
      }
    }
  const int dim = int(maps.size());
  std::vector<Matrix> cols;
  for (auto& f : maps) cols.push_back(Matrix::column(f.vec(), p));
  Matrix L = left_inverse(hcat(cols, n * n, p));
  s.table.assign(std::size_t(dim) * dim, {});
  for (int a = 0; a < dim; ++a)
    for (int b = 0; b < dim; ++b) {
      Matrix prod = maps[a] * maps[b];
      if (prod.is_zero()) continue;
      auto c = (L * Matrix::column(prod.vec(), p)).col_vector(0);
      Matrix check(n, n, p);
      for (int t = 0; t < dim; ++t)
        if (c[t]) {
          s.table[std::size_t(a) * dim + b].emplace_back(t, c[t]);
          check = check + maps[t].scaled(c[t]);
        }
      if (check != prod) throw InvariantViolation("endomorphism basis is not closed under composition");
    }
  s.name = "End";
  out.alg = Algebra::make(std::move(s));
  out.maps = std::move(maps);
  return out;
}

Bimodule bimodule_over_endomorphisms(const Module& m, const SearchOptions& opt) {
  auto E = endomorphism_algebra(m, opt);
  AlgebraPtr S = E.alg->opposite();
  const auto& D = E.decomposition;
  const Scalar p = m.p();
  Matrix T = hcat([&] {
    std::vector<Matrix> v;
    for (auto& i : D.incl) v.push_back(i.mat);
    return v;
  }(), m.dim(), p);
  Matrix Ti = invert(T);
  std::vector<int> lv, rv;
  for (std::size_t i = 0; i < D.summands.size(); ++i)
    for (int c = 0; c < D.summands[i].dim(); ++c) {
      lv.push_back(D.summands[i].vertex_of(c));
      rv.push_back(int(i));
    }
  std::vector<Matrix> left, right;
  for (auto& x : m.actions()) left.push_back(Ti * x * T);
  for (auto& x : E.maps) right.push_back(Ti * x * T);
  return Bimodule::make(m.algebra(), S, lv, rv, left, right, true);
}

}  // namespace cotr

namespace cotr {

namespace {

void dimension_vectors(int nv, int max_dim, std::vector<int>& cur, std::vector<std::vector<int>>& out) {
  if (int(cur.size()) == nv) {
    int t = std::accumulate(cur.begin(), cur.end(), 0);
    if (t > 0) out.push_back(cur);
    return;
  }
  int used = std::accumulate(cur.begin(), cur.end(), 0);
  for (int d = 0; d + used <= max_dim; ++d) {
    cur.push_back(d);
    dimension_vectors(nv, max_dim, cur, out);
    cur.pop_back();
  }
}

std::vector<int> module_invariants(const Module& m) {
  std::vector<int> key = m.dimvec();
  for (int b : m.algebra()->radical_basis()) key.push_back(rank(m.act(b)));
  for (int x : socle_multiplicities(m)) key.push_back(x);
  for (int x : top_multiplicities(m)) key.push_back(x);
  return key;
}

}  // namespace

namespace {

// Radical basis elements as combinations of words in the radical generators.
struct GeneratorWords {
  std::vector<std::vector<int>> words;  // indices into radical_generators()
  Matrix expr;                          // expr(w, k): coefficient of word w in radical_basis()[k]
};

GeneratorWords generator_words(const AlgebraPtr& a) {
  GeneratorWords gw;
  const auto& gens = a->radical_generators();
  const Scalar p = a->p();
  std::vector<Vec> vals;
  std::vector<std::vector<int>> frontier;
  std::vector<Vec> fvals;
  for (int g = 0; g < int(gens.size()); ++g) {
    frontier.push_back({g});
    fvals.push_back(a->basis_vector(gens[g]));
  }
  while (!frontier.empty()) {
    std::vector<std::vector<int>> next;
    std::vector<Vec> nvals;
    for (std::size_t i = 0; i < frontier.size(); ++i) {
      bool zero = std::all_of(fvals[i].begin(), fvals[i].end(), [](Scalar c) { return c == 0; });
      if (zero) continue;
      gw.words.push_back(frontier[i]);
      vals.push_back(fvals[i]);
      for (int g = 0; g < int(gens.size()); ++g) {
        auto w = frontier[i];
        w.push_back(g);
        next.push_back(w);
        nvals.push_back(a->product(fvals[i], a->basis_vector(gens[g])));
      }
    }
    frontier = std::move(next);
    fvals = std::move(nvals);
  }
  const auto& rad = a->radical_basis();
  Matrix V(a->dim(), int(vals.size()), p), E(a->dim(), int(rad.size()), p);
  for (int w = 0; w < int(vals.size()); ++w)
    for (int i = 0; i < a->dim(); ++i) V.at(i, w) = vals[w][i];
  for (int k = 0; k < int(rad.size()); ++k) E.at(rad[k], k) = 1;
  auto x = solve(V, E);
  if (!x) throw InvariantViolation("radical generators do not generate the radical");
  gw.expr = *x;
  return gw;
}

std::optional<Module> module_from_generators(const AlgebraPtr& a, const std::vector<int>& dv,
                                             const std::vector<int>& off, const std::vector<Matrix>& gen_act,
                                             const GeneratorWords& gw) {
  const Scalar p = a->p();
  const int n = off.empty() ? 0 : off.back() + dv.back();
  std::vector<Matrix> wact;
  for (auto& w : gw.words) {
    Matrix m = Matrix::identity(n, p);
    for (int g : w) m = m * gen_act[g];
    wact.push_back(m);
  }
  std::vector<Matrix> action(a->dim(), Matrix(n, n, p));
  for (int b = 0; b < a->dim(); ++b)
    if (a->is_idempotent_basis(b)) {
      int v = a->vertex_of_idempotent(b);
      for (int i = 0; i < dv[v]; ++i) action[b].at(off[v] + i, off[v] + i) = 1;
    }
  const auto& rad = a->radical_basis();
  for (int k = 0; k < int(rad.size()); ++k)
    for (int w = 0; w < int(wact.size()); ++w)
      if (Scalar c = gw.expr(w, k)) action[rad[k]] = action[rad[k]] + wact[w].scaled(c);
  try {
    return Module::make(a, dv, action, true);
  } catch (const InvalidInput&) {
    return std::nullopt;
  }
}

}  // namespace

std::vector<Module> enumerate_modules(const AlgebraPtr& a, int max_dim, std::uint64_t cap,
                                      const SearchOptions& opt) {
  const Scalar p = a->p();
  // Without a presentation the radical generators play the role of arrows, and each
  // candidate is checked against the structure constants.
  const bool presented = a->presentation().has_value();
  std::vector<Arrow> arrows;
  if (presented) {
    arrows = a->presentation()->quiver.arrows;
  } else {
    for (int g : a->radical_generators()) arrows.push_back({a->labels()[g], a->right_vertex(g), a->left_vertex(g)});
  }
  GeneratorWords words;
  if (!presented) words = generator_words(a);
  std::vector<std::vector<int>> dvs;
  std::vector<int> cur;
  dimension_vectors(a->num_vertices(), max_dim, cur, dvs);
  std::stable_sort(dvs.begin(), dvs.end(), [](auto& x, auto& y) {
    return std::accumulate(x.begin(), x.end(), 0) < std::accumulate(y.begin(), y.end(), 0);
  });
  std::vector<Module> out;
  for (auto& dv : dvs) {
    int vars = 0;
    for (auto& ar : arrows) vars += dv[ar.target] * dv[ar.source];
    std::uint64_t total = 0;
    if (!power_within(p, vars, cap, &total))
      throw EnumerationTooLarge("dimension vector needs p^" + std::to_string(vars) + " candidates");
    std::vector<int> off(dv.size());
    int n = 0;
    for (std::size_t v = 0; v < dv.size(); ++v) off[v] = n, n += dv[v];
    std::map<std::vector<int>, std::vector<Module>> buckets;
    for (std::uint64_t code = 0; code < total; ++code) {
      auto c = decode(code, vars, p);
      std::vector<Matrix> full(arrows.size(), Matrix(n, n, p));
      std::map<std::string, Matrix> mats;
      int k = 0;
      for (std::size_t ai = 0; ai < arrows.size(); ++ai) {
        const Arrow& ar = arrows[ai];
        Matrix m(dv[ar.target], dv[ar.source], p);
        for (int i = 0; i < m.rows(); ++i)
          for (int j = 0; j < m.cols(); ++j) m.at(i, j) = c[k++];
        full[ai].set_block(off[ar.target], off[ar.source], m);
        mats.emplace(ar.name, m);
      }
      std::optional<Module> cand;
      if (!presented) {
        cand = module_from_generators(a, dv, off, full, words);
        if (!cand) continue;
      }
      bool ok = true;
      if (presented)
      for (auto& rel : a->presentation()->relations) {
        Matrix acc(n, n, p);
        for (auto& [coef, path] : rel.terms) {
          Matrix m = Matrix::identity(n, p);
          for (int ai : path) m = full[ai] * m;
          acc = acc + m.scaled(reduce(coef, p));
        }
        if (!acc.is_zero()) {
          ok = false;
          break;
        }
      }
      if (!ok) continue;
      Module m = presented ? module_from_arrows(a, dv, mats, false) : *cand;
      auto& bucket = buckets[module_invariants(m)];
      bool seen = false;
      for (auto& r : bucket)
        if (is_isomorphic(m, r, opt)) {
          seen = true;
          break;
        }
      if (!seen) bucket.push_back(m);
    }
    for (auto& [key, ms] : buckets) out.insert(out.end(), ms.begin(), ms.end());
  }
  return out;
}

}  // namespace cotr
