#include "cotr/dims.hpp"

#include <algorithm>

#include "cotr/errors.hpp"
#include "cotr/internal.hpp"

namespace cotr {

std::string to_string(Quantity q) {
  switch (q) {
    case Quantity::POmegaPd: return "P_w-pd";
    case Quantity::FOmegaPd: return "F_w-pd";
    case Quantity::IOmegaId: return "I_w-id";
    case Quantity::POmegaId: return "P_w-id";
    case Quantity::BassId: return "B_w-id";
    case Quantity::ExtSup: return "ext_sup";
  }
  return "?";
}

std::string DimAnswer::status() const {
  if (!exists) return certificate && !certificate->right ? "NoCoresolution" : "NoResolution";
  return value.to_string();
}

std::string DimAnswer::certainty() const {
  if (verified_up_to >= 0) return "verified_up_to(" + std::to_string(verified_up_to) + ")";
  return value.certainty();
}

// ---------- approximations ----------

AddClass add_class(const Module& generator, const SearchOptions& opt) {
  AddClass c;
  for (auto& s : decompose(generator, opt).summands) {
    bool dup = false;
    for (auto& u : c.indec)
      if (u.dimvec() == s.dimvec() && indecomposable_iso(u, s)) dup = true;
    if (!dup) c.indec.push_back(s);
  }
  const int k = int(c.indec.size());
  const Scalar p = generator.p();
  c.rad.assign(k, std::vector<std::vector<Matrix>>(k));
  for (int j = 0; j < k; ++j)
    for (int i = 0; i < k; ++i) {
      HomSpace h = hom_space(c.indec[j], c.indec[i]);
      if (i != j) {
        c.rad[j][i] = h.basis;
        continue;
      }
      // Local endomorphism ring with residue field F_p: phi - lambda is radical.
      for (auto& phi : h.basis) {
        auto roots = detail::polynomial_roots(detail::minimal_polynomial(phi), p);
        if (roots.size() != 1)
          throw UnsupportedPresentation("summand endomorphism ring is not local with residue field F_p");
        c.rad[j][i].push_back(phi - Matrix::identity(phi.rows(), p).scaled(roots[0]));
      }
    }
  return c;
}

namespace {

// Columns of a coordinate matrix spanning those of the given maps.
Matrix coordinate_span(const HomSpace& h, const std::vector<Matrix>& maps, Scalar p) {
  Matrix out(h.dim(), int(maps.size()), p);
  for (int k = 0; k < int(maps.size()); ++k) {
    auto c = h.coords(maps[k]);
    for (int r = 0; r < h.dim(); ++r) out.at(r, k) = c[r];
  }
  return out;
}

Approximation approximate(const AddClass& c, const Module& m, bool right) {
  const Scalar p = m.p();
  const int k = int(c.indec.size());
  std::vector<HomSpace> hs;
  for (int j = 0; j < k; ++j) hs.push_back(right ? hom_space(c.indec[j], m) : hom_space(m, c.indec[j]));
  Approximation a;
  std::vector<Module> parts;
  std::vector<Matrix> chosen;
  for (int j = 0; j < k; ++j) {
    std::vector<Matrix> radical;
    for (int i = 0; i < k; ++i)
      for (auto& f : hs[i].basis)
        for (auto& r : right ? c.rad[j][i] : c.rad[i][j]) radical.push_back(right ? f * r : r * f);
    Matrix sub = coordinate_span(hs[j], radical, p);
    Matrix comp = complement_basis(sub, hs[j].dim());
    a.multiplicity.push_back(comp.cols());
    for (int t = 0; t < comp.cols(); ++t) {
      parts.push_back(c.indec[j]);
      chosen.push_back(hs[j].element(comp.col_vector(t)));
    }
  }
  if (parts.empty()) {
    a.W = Module::zero(m.algebra());
    a.map = right ? zero_morphism(a.W, m) : zero_morphism(m, a.W);
    return a;
  }
  DirectSum ds = direct_sum(parts);
  a.W = ds.mod;
  Matrix mat = right ? Matrix(m.dim(), a.W.dim(), p) : Matrix(a.W.dim(), m.dim(), p);
  for (std::size_t t = 0; t < chosen.size(); ++t)
    mat = mat + (right ? chosen[t] * ds.proj[t].mat : ds.incl[t].mat * chosen[t]);
  a.map = right ? Morphism{a.W, m, mat} : Morphism{m, a.W, mat};
  return a;
}

std::optional<std::pair<int, int>> module_cycle(const std::vector<Module>& ms, const SearchOptions& opt) {
  for (int k = 1; k < int(ms.size()); ++k)
    for (int j = 0; j < k; ++j)
      if (!ms[j].is_zero() && ms[j].dimvec() == ms[k].dimvec() && is_isomorphic(ms[j], ms[k], opt))
        return std::pair(j, k);
  return std::nullopt;
}

}  // namespace

Approximation right_approximation(const AddClass& c, const Module& m) { return approximate(c, m, true); }
Approximation left_approximation(const AddClass& c, const Module& m) { return approximate(c, m, false); }

Morphism RelativeResolution::differential(int i) const {
  if (right) return compose(links.at(i - 1), approx.at(i));  // terms[i] -> terms[i-1]
  return compose(approx.at(i), links.at(i - 1));             // terms[i-1] -> terms[i]
}

RelativeResolution relative_resolution(const AddClass& c, const Module& m, bool right, int bound) {
  RelativeResolution r;
  r.right = right;
  r.syz.push_back(m);
  if (m.is_zero()) {
    r.terminated = true;
    return r;
  }
  for (int i = 0; i <= bound; ++i) {
    Approximation a = right ? right_approximation(c, r.syz[i]) : left_approximation(c, r.syz[i]);
    if (right ? !is_epi(a.map) : !is_mono(a.map)) {
      r.exists = false;
      break;
    }
    r.terms.push_back(a.W);
    r.approx.push_back(a.map);
    r.multiplicity.push_back(a.multiplicity);
    if (is_iso(a.map)) {
      r.terminated = true;
      r.length = i;
      break;
    }
    SubResult next = right ? kernel(a.map) : cokernel(a.map);
    r.links.push_back(next.map);
    r.syz.push_back(next.mod);
  }
  return r;
}

// ---------- relative dimensions ----------

namespace {

void require(const SemidualizingReport& rep) {
  if (!rep.semidualizing()) throw PreconditionNotCertified("bimodule is not semidualizing");
}

DimAnswer relative_dimension(Quantity q, const AddClass& c, const Module& m, bool right, int bound,
                             const SearchOptions& opt) {
  DimAnswer d;
  d.quantity = q;
  if (m.is_zero()) {
    d.value = BoundedAnswer::zero_module();
    return d;
  }
  RelativeResolution r = relative_resolution(c, m, right, bound);
  const char* what = right ? "resolution" : "coresolution";
  d.annotation = std::string("greedy-certified: minimal approximation ") + what;
  if (!r.exists) {
    d.exists = false;
    d.value = BoundedAnswer::plus_infinity(std::string(right ? "approximation is not onto" : "approximation is not one-to-one") +
                                           " in degree " + std::to_string(r.terms.size()));
  } else if (r.terminated) {
    d.value = BoundedAnswer::exactly(r.length, std::string("approximation ") + what + " of length " +
                                                   std::to_string(r.length));
  } else if (auto cyc = module_cycle(r.syz, opt)) {
    std::string sym = right ? "K" : "C";
    d.value = BoundedAnswer::periodic(cyc->first, cyc->second,
                                      sym + std::to_string(cyc->first) + " ~ " + sym + std::to_string(cyc->second));
  } else {
    d.value = BoundedAnswer::unknown_beyond(bound, std::string("approximation ") + what + " does not stop");
  }
  d.certificate = std::move(r);
  return d;
}

}  // namespace

DimAnswer p_omega_pd(const SemidualizingReport& rep, const Module& m, int bound, const SearchOptions& opt) {
  require(rep);
  return relative_dimension(Quantity::POmegaPd, add_class(rep.omega.left_module, opt), m, true, bound, opt);
}

DimAnswer f_omega_pd(const SemidualizingReport& rep, const Module& m, int bound, const SearchOptions& opt) {
  DimAnswer d = p_omega_pd(rep, m, bound, opt);
  d.quantity = Quantity::FOmegaPd;
  d.annotation += "; flat = projective for finite-dimensional modules, so F_w-pd = P_w-pd";
  return d;
}

DimAnswer i_omega_id(const SemidualizingReport& rep, const Module& n, int bound, const SearchOptions& opt) {
  require(rep);
  const Bimodule& w = rep.omega;
  if (n.algebra() != w.S) throw InvalidInput("I_w-id takes a module over S");
  Module es = star(w, injective_cogenerator(w.R)).mod;
  return relative_dimension(Quantity::IOmegaId, add_class(es, opt), n, false, bound, opt);
}

DimAnswer p_omega_id(const SemidualizingReport& rep, const Module& m, int bound, const SearchOptions& opt) {
  require(rep);
  return relative_dimension(Quantity::POmegaId, add_class(rep.omega.left_module, opt), m, false, bound, opt);
}

DimAnswer bass_id(const SemidualizingReport& rep, const Module& m, int bound, const SearchOptions& opt) {
  require(rep);
  DimAnswer d;
  d.quantity = Quantity::BassId;
  if (m.is_zero()) {
    d.value = BoundedAnswer::zero_module();
    return d;
  }
  Resolution res = min_injective_resolution(m, bound);
  std::optional<int> found;
  const int last = std::min<int>(bound, int(res.syz.size()) - 1);
  for (int n = 0; n <= last && !found; ++n) {
    d.bass_certificates.push_back(class_membership(rep, res.syz[n], ClassKind::Bass, bound, opt));
    const ClassReport& c = d.bass_certificates.back();
    if (c.in()) {
      found = n;
      if (c.verdict == Membership::VerifiedUpTo) d.verified_up_to = bound;
    }
  }
  if (found) {
    d.value = BoundedAnswer::exactly(*found, "coOmega^" + std::to_string(*found) + " is the first cosyzygy in the Bass class");
  } else if (auto cyc = detect_syzygy_cycle(res, opt); cyc && cyc->k <= last) {
    d.value = BoundedAnswer::periodic(cyc->j, cyc->k, "cosyzygies cycle outside the Bass class");
  } else {
    d.value = BoundedAnswer::unknown_beyond(bound, "no cosyzygy up to the bound is in the Bass class");
  }
  // Under a finite Bass injective dimension, the value is the least n with Ext^{>n}(w, M) = 0.
  d.ext_check = ext_sup(rep.omega, m, bound, opt);
  if (found && d.ext_check->is_exact()) {
    d.agrees = *found == std::max(d.ext_check->value, 0);
  } else if (found && d.ext_check->status == BoundedAnswer::Status::MinusInfinity) {
    d.agrees = *found == 0;
  } else if (found && d.ext_check->status == BoundedAnswer::Status::InfiniteByPeriodicity) {
    d.agrees = false;
  }
  d.annotation = d.agrees ? "consistent with the Ext criterion" : "disagrees with the Ext criterion";
  return d;
}

BoundedAnswer semi_tilting(const Bimodule& w, TiltSide side, int bound, const SearchOptions& opt) {
  return dimension(side == TiltSide::Left ? w.left_module : w.flip().left_module, DimKind::Pd, bound, opt);
}

BoundedAnswer ext_based_pd(const SemidualizingReport& rep, const Module& m, int bound, const SearchOptions& opt) {
  DimAnswer pd = p_omega_pd(rep, m, bound, opt);
  if (pd.value.status == BoundedAnswer::Status::ZeroModule) return pd.value;
  if (!pd.value.is_exact()) throw PreconditionNotCertified("P_w-pd is not certified finite: " + pd.status());
  const int n = pd.value.value;
  CoExtTable t = coext_table(m, rep.omega, std::max(bound, n + 1));
  const int top = std::min(t.top_degree(), std::max(bound, n + 1));
  int s = -1;
  for (int i = 0; i <= top; ++i)
    if (!t.ext(i).is_zero()) s = i;
  BoundedAnswer out;
  if (t.res.terminated) {
    out = BoundedAnswer::exactly(s, "pd of the module is " + std::to_string(t.res.length));
  } else if (rep.axiom("c1").verdict == Verdict::Pass) {
    // A finite add(w)-resolution and Ext^{>=1}(w, w) = 0 kill the degrees above its length.
    out = BoundedAnswer::exactly(s, "add(w)-resolution of length " + std::to_string(n));
  } else {
    out = BoundedAnswer::unknown_beyond(top, "largest nonvanishing degree seen: " + std::to_string(s));
    out.seen = s;
    return out;
  }
  if (s != n)
    throw InvariantViolation("sup of Ext(M, w) is " + std::to_string(s) + " but P_w-pd is " + std::to_string(n));
  return out;
}

// ---------- Bass approximations ----------

bool ShortExact::exact() const {
  if (!is_homomorphism(f) || !is_homomorphism(g)) return false;
  if (!is_mono(f) || !is_epi(g)) return false;
  if (!(g.mat * f.mat).is_zero()) return false;
  return a.dim() + c.dim() == b.dim();
}

namespace {

struct Builder {
  const SemidualizingReport& rep;
  AddClass cls;
  int bound;
  SearchOptions opt;

  // 0 -> M -> X -> W -> 0 with X in the Bass class and P_w-id W <= n - 1.
  ShortExact upper(const Module& m, int n) {
    if (class_membership(rep, m, ClassKind::Bass, bound, opt).in()) {
      Module z = Module::zero(m.algebra());
      return {m, m, z, identity_morphism(m), zero_morphism(m, z)};
    }
    if (n == 0) throw PreconditionNotCertified("module is outside the Bass class at n = 0");
    SubResult env = injective_envelope(m);
    SubResult ck = cokernel(env.map);  // I0 -> C
    ShortExact low = lower(ck.mod, n - 1);
    Pullback pb = pullback(ck.map, low.g);
    DirectSum ds = direct_sum({env.mod, low.b});
    Morphism joint = compose(ds.incl[0], pb.p1) + compose(ds.incl[1], pb.p2);
    Morphism into = lift_through_or_throw(joint, compose(ds.incl[0], env.map), "M into the pullback");
    return {m, pb.mod, low.b, into, pb.p2};
  }

  ShortExact lower_from(const ShortExact& up) {
    Approximation a = right_approximation(cls, up.b);
    SubResult wm = kernel(compose(up.g, a.map));
    Morphism g = factor_through_mono(compose(a.map, wm.map), up.f);
    SubResult xm = kernel(g);
    return {xm.mod, wm.mod, up.a, xm.map, g};
  }

  // 0 -> X -> W -> M -> 0 with X in the Bass class and P_w-id W <= n.
  ShortExact lower(const Module& m, int n) { return lower_from(upper(m, n)); }
};

bool id_within(const DimAnswer& d, int n) {
  if (d.value.status == BoundedAnswer::Status::ZeroModule) return true;
  return d.value.is_exact() && d.value.value <= n;
}

}  // namespace

BassApproximations theorem_4_2_approximations(const SemidualizingReport& rep, const Module& m, int n, int bound,
                                              const SearchOptions& opt) {
  require(rep);
  DimAnswer b = bass_id(rep, m, bound, opt);
  if (!(b.value.is_exact() && b.value.value <= n) && b.value.status != BoundedAnswer::Status::ZeroModule)
    throw PreconditionNotCertified("Bass injective dimension is not certified at most " + std::to_string(n) + ": " +
                                   b.status());
  Builder bld{rep, add_class(rep.omega.left_module, opt), bound, opt};
  BassApproximations out;
  out.n = n;
  out.upper = bld.upper(m, n);
  out.lower = bld.lower_from(out.upper);
  out.upper_class = class_membership(rep, out.upper.b, ClassKind::Bass, bound, opt);
  out.lower_class = class_membership(rep, out.lower.a, ClassKind::Bass, bound, opt);
  out.upper_id = p_omega_id(rep, out.upper.c, bound, opt);
  out.lower_id = p_omega_id(rep, out.lower.b, bound, opt);
  out.split = lift_through(out.lower.g, identity_morphism(m)).has_value();
  out.verified = out.upper.exact() && out.lower.exact() && out.upper_class.in() && out.lower_class.in() &&
                 id_within(out.upper_id, n - 1) && id_within(out.lower_id, n);
  return out;
}

}  // namespace cotr
