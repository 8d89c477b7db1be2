#include "cotr/homology.hpp"

#include <algorithm>
#include <sstream>

namespace cotr {

// ---------- BoundedAnswer ----------

BoundedAnswer BoundedAnswer::exactly(int n, std::string ev) {
  return {Status::Exactly, n, 0, 0, std::move(ev)};
}
BoundedAnswer BoundedAnswer::unknown_beyond(int bound, std::string ev) {
  return {Status::UnknownBeyond, bound, 0, 0, std::move(ev)};
}
BoundedAnswer BoundedAnswer::periodic(int j, int k, std::string ev) {
  return {Status::InfiniteByPeriodicity, 0, j, k, std::move(ev)};
}
BoundedAnswer BoundedAnswer::plus_infinity(std::string ev) {
  return {Status::PlusInfinity, 0, 0, 0, std::move(ev)};
}
BoundedAnswer BoundedAnswer::minus_infinity(std::string ev) {
  return {Status::MinusInfinity, 0, 0, 0, std::move(ev)};
}
BoundedAnswer BoundedAnswer::zero_module() { return {Status::ZeroModule, 0, 0, 0, "zero module"}; }

std::optional<int> BoundedAnswer::finite() const {
  if (status == Status::Exactly) return value;
  return std::nullopt;
}

std::string BoundedAnswer::to_string() const {
  switch (status) {
    case Status::Exactly: return "Exactly(" + std::to_string(value) + ")";
    case Status::UnknownBeyond: return "UnknownBeyond(" + std::to_string(value) + ")";
    case Status::InfiniteByPeriodicity:
      return "InfiniteByPeriodicity(" + std::to_string(j) + "," + std::to_string(k) + ")";
    case Status::PlusInfinity: return "+inf";
    case Status::MinusInfinity: return "-inf";
    case Status::ZeroModule: return "ZeroModule";
  }
  return "?";
}

std::string BoundedAnswer::certainty() const {
  switch (status) {
    case Status::UnknownBeyond: return "unknown_beyond(" + std::to_string(value) + ")";
    case Status::InfiniteByPeriodicity:
      return "infinite_by_periodicity(" + std::to_string(j) + "," + std::to_string(k) + ")";
    default: return "exact";
  }
}

bool operator==(const BoundedAnswer& a, const BoundedAnswer& b) {
  if (a.status != b.status) return false;
  switch (a.status) {
    case BoundedAnswer::Status::Exactly:
    case BoundedAnswer::Status::UnknownBeyond: return a.value == b.value;
    case BoundedAnswer::Status::InfiniteByPeriodicity: return a.j == b.j && a.k == b.k;
    default: return true;
  }
}

// ---------- resolutions ----------

Morphism Resolution::differential(int i) const {
  if (kind == Kind::Projective) {
    if (i >= 1 && i - 1 < int(maps.size())) return maps[i - 1];
    return zero_morphism(term(i), term(i - 1));
  }
  if (i >= 0 && i < int(maps.size())) return maps[i];
  return zero_morphism(term(i), term(i + 1));
}

const Module& Resolution::term(int i) const {
  return i >= 0 && i < int(terms.size()) ? terms[i] : zero;
}

Resolution min_projective_resolution(const Module& m, int bound) {
  Resolution r;
  r.kind = Resolution::Kind::Projective;
  r.base = m;
  r.zero = Module::zero(m.algebra());
  r.syz.push_back(m);
  for (int i = 0; i <= bound; ++i) {
    if (r.syz[i].is_zero()) {
      r.terminated = true;
      r.length = i - 1;
      break;
    }
    auto cover = projective_cover(r.syz[i]);
    r.terms.push_back(cover.mod);
    if (i == 0)
      r.aug = cover.map;
    else
      r.maps.push_back(compose(r.syz_maps[i - 1], cover.map));
    auto k = kernel(cover.map);
    r.syz.push_back(k.mod);
    r.syz_maps.push_back(k.map);
  }
  if (!r.terminated && r.syz.back().is_zero()) {
    r.terminated = true;
    r.length = int(r.terms.size()) - 1;
  }
  if (m.is_zero()) r.aug = zero_morphism(m, m);
  r.computed = int(r.terms.size());
  return r;
}

Resolution min_injective_resolution(const Module& m, int bound) {
  Resolution r;
  r.kind = Resolution::Kind::Injective;
  r.base = m;
  r.zero = Module::zero(m.algebra());
  r.syz.push_back(m);
  for (int i = 0; i <= bound; ++i) {
    if (r.syz[i].is_zero()) {
      r.terminated = true;
      r.length = i - 1;
      break;
    }
    auto env = injective_envelope(r.syz[i]);
    r.terms.push_back(env.mod);
    if (i == 0)
      r.aug = env.map;
    else
      r.maps.push_back(compose(env.map, r.syz_maps[i - 1]));
    auto c = cokernel(env.map);
    r.syz.push_back(c.mod);
    r.syz_maps.push_back(c.map);
  }
  if (!r.terminated && r.syz.back().is_zero()) {
    r.terminated = true;
    r.length = int(r.terms.size()) - 1;
  }
  if (m.is_zero()) r.aug = zero_morphism(m, m);
  r.computed = int(r.terms.size());
  return r;
}

Module syzygy(const Module& m, int n) {
  auto r = min_projective_resolution(m, std::max(0, n - 1));
  return n < int(r.syz.size()) ? r.syz[n] : Module::zero(m.algebra());
}

Module cosyzygy(const Module& m, int n) {
  auto r = min_injective_resolution(m, std::max(0, n - 1));
  return n < int(r.syz.size()) ? r.syz[n] : Module::zero(m.algebra());
}

std::optional<Cycle> detect_syzygy_cycle(const Resolution& r, const SearchOptions& opt) {
  for (int k = 1; k < int(r.syz.size()); ++k)
    for (int j = 0; j < k; ++j) {
      if (r.syz[j].is_zero() || r.syz[j].dimvec() != r.syz[k].dimvec()) continue;
      if (auto f = is_isomorphic(r.syz[j], r.syz[k], opt)) return Cycle{j, k, *f};
    }
  return std::nullopt;
}

BoundedAnswer dimension(const Module& m, DimKind kind, int bound, const SearchOptions& opt) {
  if (m.is_zero()) return BoundedAnswer::zero_module();
  const bool proj = kind != DimKind::Id;
  Resolution r = proj ? min_projective_resolution(m, bound) : min_injective_resolution(m, bound);
  const char* name = proj ? "projective" : "injective";
  if (r.terminated && r.length <= bound)
    return BoundedAnswer::exactly(r.length, std::string("minimal ") + name + " resolution of length " +
                                                std::to_string(r.length));
  if (auto c = detect_syzygy_cycle(r, opt)) {
    std::string sym = proj ? "Omega^" : "coOmega^";
    return BoundedAnswer::periodic(c->j, c->k, sym + std::to_string(c->j) + " ~ " + sym + std::to_string(c->k));
  }
  return BoundedAnswer::unknown_beyond(bound, std::string("minimal ") + name + " resolution does not stop");
}

// ---------- homology of functor complexes ----------

Subquotient homology_at(const Module& x, const Matrix& in, const Matrix& out) {
  const int n = x.dim();
  const Scalar p = x.p();
  Matrix Z = out.rows() == 0 ? Matrix::identity(n, p) : kernel_basis(out);
  Matrix B = in.cols() == 0 ? Matrix(n, 0, p) : image_basis(in);
  return subquotient(x, Z, B);
}

namespace {

Matrix mat_or_empty(const std::vector<Morphism>& v, int i, int rows, int cols, Scalar p) {
  if (i >= 0 && i < int(v.size())) return v[i].mat;
  return Matrix(rows, cols, p);
}

}  // namespace

int ExtTable::top_degree() const { return res.terminated ? 1 << 28 : res.computed - 2; }

Subquotient ExtTable::ext_subquotient(int i) const {
  if (i > top_degree()) throw BoundExceeded("Ext degree " + std::to_string(i) + " beyond the computed window");
  const Scalar p = res.base.p();
  if (i >= int(stars.size())) {
    AlgebraPtr S = stars.empty() ? AlgebraPtr() : stars[0].mod.algebra();
    Subquotient z;
    z.mod = Module::zero(S ? S : res.base.algebra());
    return z;
  }
  const Module& x = stars[i].mod;
  int prev = i > 0 ? stars[i - 1].mod.dim() : 0;
  int next = i + 1 < int(stars.size()) ? stars[i + 1].mod.dim() : 0;
  Matrix in = mat_or_empty(dstar, i - 1, x.dim(), prev, p);
  Matrix out = mat_or_empty(dstar, i, next, x.dim(), p);
  return homology_at(x, in, out);
}

Module ExtTable::ext(int i) const { return ext_subquotient(i).mod; }

ExtTable ext_table(const Bimodule& w, const Module& n, int bound) {
  ExtTable t;
  t.res = min_injective_resolution(n, bound + 1);
  for (auto& I : t.res.terms) t.stars.push_back(star(w, I));
  for (std::size_t i = 0; i + 1 < t.stars.size(); ++i)
    t.dstar.push_back(star_map(t.stars[i], t.stars[i + 1], t.res.maps[i]));
  if (t.stars.empty()) {
    // Zero module: keep the S side available for zero answers.
    t.stars.push_back(star(w, n));
  }
  return t;
}

Module ext(const Bimodule& w, const Module& n, int i, int bound) {
  return ext_table(w, n, std::max(bound, i)).ext(i);
}

namespace {

// Matrix of f -> f o d from Hom(b, n) to Hom(a, n), for d: a -> b.
Matrix precompose(const HomSpace& from, const HomSpace& to, const Matrix& d) {
  Matrix m(to.dim(), from.dim(), d.p());
  for (int k = 0; k < from.dim(); ++k) {
    auto c = to.coords(from.basis[k] * d);
    for (int i = 0; i < to.dim(); ++i) m.at(i, k) = c[i];
  }
  return m;
}

Matrix postcompose(const HomSpace& from, const HomSpace& to, const Matrix& d) {
  Matrix m(to.dim(), from.dim(), d.p());
  for (int k = 0; k < from.dim(); ++k) {
    auto c = to.coords(d * from.basis[k]);
    for (int i = 0; i < to.dim(); ++i) m.at(i, k) = c[i];
  }
  return m;
}

}  // namespace

std::vector<int> ext_dims(const Module& m, const Module& n, int upto, int bound) {
  Resolution r = min_projective_resolution(m, std::max(bound, upto) + 1);
  std::vector<HomSpace> H;
  for (auto& P : r.terms) H.push_back(hom_space(P, n));
  std::vector<int> ranks(H.size() + 1, 0);  // ranks[i] = rank of Hom(P_{i-1}) -> Hom(P_i)
  for (int i = 1; i < int(H.size()); ++i) ranks[i] = rank(precompose(H[i - 1], H[i], r.maps[i - 1].mat));
  std::vector<int> out;
  for (int i = 0; i <= upto; ++i) {
    if (i >= int(H.size())) {
      if (!r.terminated) throw BoundExceeded("Ext degree beyond the computed window");
      out.push_back(0);
      continue;
    }
    if (i + 1 >= int(H.size()) && !r.terminated) throw BoundExceeded("Ext degree beyond the computed window");
    out.push_back(H[i].dim() - ranks[i] - ranks[i + 1]);
  }
  return out;
}

int ext_dim(const Module& m, const Module& n, int i, int bound) { return ext_dims(m, n, i, bound)[i]; }

int ext_dim_injective(const Module& m, const Module& n, int i, int bound) {
  Resolution r = min_injective_resolution(n, std::max(bound, i) + 1);
  if (i >= r.computed) {
    if (!r.terminated) throw BoundExceeded("Ext degree beyond the computed window");
    return 0;
  }
  if (i + 1 >= r.computed && !r.terminated) throw BoundExceeded("Ext degree beyond the computed window");
  auto hom = [&](int k) { return hom_space(m, r.terms[k]); };
  HomSpace Hi = hom(i);
  int out_rank = 0, in_rank = 0;
  if (i + 1 < r.computed) out_rank = rank(postcompose(Hi, hom(i + 1), r.maps[i].mat));
  if (i >= 1) in_rank = rank(postcompose(hom(i - 1), Hi, r.maps[i - 1].mat));
  return Hi.dim() - out_rank - in_rank;
}

int TorTable::top_degree() const { return res.terminated ? 1 << 28 : res.computed - 2; }

Module TorTable::tor(int i) const {
  if (i > top_degree()) throw BoundExceeded("Tor degree " + std::to_string(i) + " beyond the computed window");
  if (i >= int(tensors.size())) return Module::zero(tensors.empty() ? res.base.algebra() : tensors[0].mod.algebra());
  const Scalar p = res.base.p();
  const Module& x = tensors[i].mod;
  int above = i + 1 < int(tensors.size()) ? tensors[i + 1].mod.dim() : 0;
  int below = i > 0 ? tensors[i - 1].mod.dim() : 0;
  Matrix in = mat_or_empty(dten, i, x.dim(), above, p);
  Matrix out = mat_or_empty(dten, i - 1, below, x.dim(), p);
  return homology_at(x, in, out).mod;
}

Subquotient TorTable::tor_subquotient(int i) const {
  if (i > top_degree()) throw BoundExceeded("Tor degree " + std::to_string(i) + " beyond the computed window");
  const Scalar p = res.base.p();
  if (i >= int(tensors.size())) {
    Subquotient z;
    z.mod = Module::zero(tensors.empty() ? res.base.algebra() : tensors[0].mod.algebra());
    return z;
  }
  const Module& x = tensors[i].mod;
  int above = i + 1 < int(tensors.size()) ? tensors[i + 1].mod.dim() : 0;
  int below = i > 0 ? tensors[i - 1].mod.dim() : 0;
  Matrix in = mat_or_empty(dten, i, x.dim(), above, p);
  Matrix out = mat_or_empty(dten, i - 1, below, x.dim(), p);
  return homology_at(x, in, out);
}

TorTable tor_table(const Bimodule& w, const Module& n, int bound) {
  TorTable t;
  t.res = min_projective_resolution(n, bound + 1);
  for (auto& P : t.res.terms) t.tensors.push_back(cotensor(w, P));
  for (std::size_t i = 0; i + 1 < t.tensors.size(); ++i)
    t.dten.push_back(cotensor_map(t.tensors[i + 1], t.tensors[i], t.res.maps[i]));
  if (t.tensors.empty()) t.tensors.push_back(cotensor(w, n));
  return t;
}

Module tor(const Bimodule& w, const Module& n, int i, int bound) {
  return tor_table(w, n, std::max(bound, i)).tor(i);
}

int CoExtTable::top_degree() const { return res.terminated ? 1 << 28 : res.computed - 2; }

Module CoExtTable::ext(int i) const {
  if (i > top_degree()) throw BoundExceeded("Ext degree " + std::to_string(i) + " beyond the computed window");
  if (i >= int(homs.size())) return Module::zero(homs[0].mod.algebra());
  const Scalar p = res.base.p();
  const Module& x = homs[i].mod;
  int prev = i > 0 ? homs[i - 1].mod.dim() : 0;
  int next = i + 1 < int(homs.size()) ? homs[i + 1].mod.dim() : 0;
  Matrix in = mat_or_empty(dhom, i - 1, x.dim(), prev, p);
  Matrix out = mat_or_empty(dhom, i, next, x.dim(), p);
  return homology_at(x, in, out).mod;
}

CoExtTable coext_table(const Module& m, const Bimodule& w, int bound) {
  CoExtTable t;
  t.res = min_projective_resolution(m, bound + 1);
  for (auto& P : t.res.terms) t.homs.push_back(hom_into(P, w));
  for (std::size_t i = 0; i + 1 < t.homs.size(); ++i)
    t.dhom.push_back(hom_into_map(t.homs[i + 1], t.homs[i], t.res.maps[i]));
  if (t.homs.empty()) t.homs.push_back(hom_into(m, w));
  return t;
}

BoundedAnswer ext_sup(const Bimodule& w, const Module& m, int bound, const SearchOptions& opt) {
  if (m.is_zero()) return BoundedAnswer::zero_module();
  ExtTable t = ext_table(w, m, bound);
  auto sup_upto = [&](int n) {
    int best = -1;
    for (int i = 0; i <= n; ++i)
      if (!t.ext(i).is_zero()) best = i;
    return best;
  };
  auto answer = [&](int s, const std::string& why) {
    return s < 0 ? BoundedAnswer::minus_infinity("Ext^i vanishes for all i; " + why)
                 : BoundedAnswer::exactly(s, why);
  };
  if (t.res.terminated) return answer(sup_upto(t.res.length), "id of the module is " + std::to_string(t.res.length));
  Resolution pw = min_projective_resolution(w.left_module, bound);
  if (pw.terminated && pw.length <= bound)
    return answer(sup_upto(pw.length), "pd of w is " + std::to_string(pw.length));
  if (auto c = detect_syzygy_cycle(t.res, opt)) {
    if (c->k <= t.top_degree()) {
      bool vanish = true;
      int first = -1;
      for (int i = c->j + 1; i <= c->k; ++i)
        if (!t.ext(i).is_zero() && first < 0) first = i;
      vanish = first < 0;
      std::string ev = "coOmega^" + std::to_string(c->j) + " ~ coOmega^" + std::to_string(c->k);
      if (vanish) return answer(sup_upto(c->j), ev + " with a vanishing period");
      auto a = BoundedAnswer::periodic(c->j, c->k, ev + " with a nonvanishing period");
      a.seen = first;
      return a;
    }
  }
  int last = sup_upto(std::min(bound, t.top_degree()));
  auto a = BoundedAnswer::unknown_beyond(bound, "largest nonvanishing degree seen: " + std::to_string(last));
  a.seen = last;
  return a;
}

BoundedAnswer tor_sup(const Bimodule& w, const Module& n, int bound, const SearchOptions& opt) {
  if (n.is_zero()) return BoundedAnswer::zero_module();
  TorTable t = tor_table(w, n, bound);
  auto sup_upto = [&](int m) {
    int best = -1;
    for (int i = 0; i <= m; ++i)
      if (!t.tor(i).is_zero()) best = i;
    return best;
  };
  auto answer = [&](int s, const std::string& why) {
    return s < 0 ? BoundedAnswer::minus_infinity("Tor_i vanishes for all i; " + why)
                 : BoundedAnswer::exactly(s, why);
  };
  if (t.res.terminated) return answer(sup_upto(t.res.length), "pd of the module is " + std::to_string(t.res.length));
  Resolution fw = min_projective_resolution(w.flip().left_module, bound);
  if (fw.terminated && fw.length <= bound)
    return answer(sup_upto(fw.length), "flat dimension of w is " + std::to_string(fw.length));
  if (auto c = detect_syzygy_cycle(t.res, opt)) {
    if (c->k <= t.top_degree()) {
      bool vanish = true;
      int first = -1;
      for (int i = c->j + 1; i <= c->k; ++i)
        if (!t.tor(i).is_zero() && first < 0) first = i;
      vanish = first < 0;
      std::string ev = "Omega^" + std::to_string(c->j) + " ~ Omega^" + std::to_string(c->k);
      if (vanish) return answer(sup_upto(c->j), ev + " with a vanishing period");
      auto a = BoundedAnswer::periodic(c->j, c->k, ev + " with a nonvanishing period");
      a.seen = first;
      return a;
    }
  }
  int last = sup_upto(std::min(bound, t.top_degree()));
  auto a = BoundedAnswer::unknown_beyond(bound, "largest nonvanishing degree seen: " + std::to_string(last));
  a.seen = last;
  return a;
}

std::optional<int> positive_degree_witness(const BoundedAnswer& sup) {
  switch (sup.status) {
    case BoundedAnswer::Status::Exactly: return sup.value >= 1 ? std::optional<int>(sup.value) : std::nullopt;
    case BoundedAnswer::Status::InfiniteByPeriodicity: return sup.seen;
    case BoundedAnswer::Status::UnknownBeyond: return sup.seen >= 1 ? std::optional<int>(sup.seen) : std::nullopt;
    default: return std::nullopt;
  }
}

std::vector<Morphism> lift_to_injective_resolutions(const Resolution& a, const Resolution& b, const Morphism& f,
                                                    int upto) {
  std::vector<Morphism> phi;
  if (upto < 0) return phi;
  Morphism aug_a = a.terms.empty() ? zero_morphism(a.base, a.zero) : a.aug;
  Morphism aug_b = b.terms.empty() ? zero_morphism(b.base, b.zero) : b.aug;
  phi.push_back(extend_along_or_throw(aug_a, compose(aug_b, f), "chain map in degree 0"));
  for (int k = 0; k < upto; ++k)
    phi.push_back(extend_along_or_throw(a.differential(k), compose(b.differential(k), phi[k]), "chain map"));
  return phi;
}

std::vector<Morphism> lift_to_projective_resolutions(const Resolution& a, const Resolution& b, const Morphism& f,
                                                     int upto) {
  std::vector<Morphism> phi;
  if (upto < 0) return phi;
  Morphism aug_a = a.terms.empty() ? zero_morphism(a.zero, a.base) : a.aug;
  Morphism aug_b = b.terms.empty() ? zero_morphism(b.zero, b.base) : b.aug;
  phi.push_back(lift_through_or_throw(aug_b, compose(f, aug_a), "chain map in degree 0"));
  for (int k = 1; k <= upto; ++k)
    phi.push_back(lift_through_or_throw(b.differential(k), compose(phi[k - 1], a.differential(k)), "chain map"));
  return phi;
}

Morphism ext_map(const ExtTable& a, const ExtTable& b, const Morphism& f, int i) {
  Subquotient sa = a.ext_subquotient(i), sb = b.ext_subquotient(i);
  if (i >= int(a.stars.size()) || i >= int(b.stars.size()) || sa.mod.is_zero() || sb.mod.is_zero() ||
      a.res.terms.empty() || b.res.terms.empty())
    return zero_morphism(sa.mod, sb.mod);
  auto phi = lift_to_injective_resolutions(a.res, b.res, f, i);
  Morphism fs = star_map(a.stars[i], b.stars[i], phi[i]);
  return induced_map(sa, sb, fs.mat);
}

Morphism ext_map(const Bimodule& w, const Morphism& f, int i, int bound) {
  const int b = std::max(bound, i);
  return ext_map(ext_table(w, f.src, b), ext_table(w, f.tgt, b), f, i);
}

Morphism tor_map(const TorTable& a, const TorTable& b, const Morphism& f, int i) {
  Subquotient sa = a.tor_subquotient(i), sb = b.tor_subquotient(i);
  if (i >= int(a.res.terms.size()) || i >= int(b.res.terms.size()) || sa.mod.is_zero() || sb.mod.is_zero())
    return zero_morphism(sa.mod, sb.mod);
  auto phi = lift_to_projective_resolutions(a.res, b.res, f, i);
  Morphism ft = cotensor_map(a.tensors[i], b.tensors[i], phi[i]);
  return induced_map(sa, sb, ft.mat);
}

Morphism tor_map(const Bimodule& w, const Morphism& f, int i, int bound) {
  const int b = std::max(bound, i);
  return tor_map(tor_table(w, f.src, b), tor_table(w, f.tgt, b), f, i);
}

}  // namespace cotr
