#include "cotr/complexes.hpp"

#include <algorithm>

#include "cotr/errors.hpp"

namespace cotr {

// ---------- complexes ----------

Complex Complex::zero(const AlgebraPtr& a) {
  Complex c;
  c.alg = a;
  c.zero_ = Module::zero(a);
  return c;
}

Complex Complex::module(const Module& m, int degree) {
  Complex c = zero(m.algebra());
  c.lo = degree;
  if (!m.is_zero()) c.terms = {m};
  return c;
}

Complex Complex::make(const AlgebraPtr& a, int lo, std::vector<Module> terms, std::vector<Morphism> d) {
  Complex c = zero(a);
  c.lo = lo;
  if (terms.empty() ? !d.empty() : d.size() + 1 != terms.size())
    throw DimensionMismatch("a complex with " + std::to_string(terms.size()) + " terms needs one differential fewer");
  c.terms = std::move(terms);
  c.d = std::move(d);
  c.validate();
  return c;
}

const Module& Complex::term(int n) const {
  if (!zero_.valid()) throw InvalidInput("complex without an algebra");
  return in_window(n) ? terms[n - lo] : zero_;
}

Morphism Complex::diff(int n) const {
  if (in_window(n) && in_window(n + 1)) return d[n - lo];
  return zero_morphism(term(n), term(n + 1));
}

bool Complex::is_zero() const {
  return std::all_of(terms.begin(), terms.end(), [](const Module& m) { return m.is_zero(); });
}

void Complex::validate() const {
  for (auto& t : terms)
    if (t.algebra() != alg) throw InvalidInput("complex terms over different algebras");
  for (std::size_t k = 0; k < d.size(); ++k) {
    if (d[k].src.dim() != terms[k].dim() || d[k].tgt.dim() != terms[k + 1].dim())
      throw DimensionMismatch("differential " + std::to_string(lo + int(k)) + " has the wrong shape");
    if (!is_homomorphism(d[k])) throw InvalidInput("differential " + std::to_string(lo + int(k)) + " is not a homomorphism");
    if (k + 1 < d.size() && !(d[k + 1].mat * d[k].mat).is_zero())
      throw InvalidInput("d^" + std::to_string(lo + int(k) + 1) + " d^" + std::to_string(lo + int(k)) + " != 0");
  }
}

Complex Complex::trimmed() const {
  int a = 0, b = int(terms.size()) - 1;
  while (a <= b && terms[a].is_zero()) ++a;
  while (b >= a && terms[b].is_zero()) --b;
  Complex c = zero(alg);
  if (a > b) return c;
  c.lo = lo + a;
  c.terms.assign(terms.begin() + a, terms.begin() + b + 1);
  c.d.assign(d.begin() + a, d.begin() + b);
  return c;
}

std::string Complex::describe() const {
  if (terms.empty()) return "0";
  std::string s = "degrees " + std::to_string(lo) + ".." + std::to_string(hi()) + ", dims";
  for (auto& t : terms) s += " " + std::to_string(t.dim());
  return s;
}

// ---------- chain maps ----------

Morphism ChainMap::at(int n) const {
  if (n >= lo && n < lo + int(comps.size())) return comps[n - lo];
  return zero_morphism(src.term(n), tgt.term(n));
}

bool ChainMap::commutes() const {
  const int a = std::min({src.lo, tgt.lo, lo}) - 1;
  const int b = std::max({src.hi(), tgt.hi(), lo + int(comps.size()) - 1});
  for (int n = a; n <= b; ++n) {
    Matrix l = tgt.diff(n).mat * at(n).mat, r = at(n + 1).mat * src.diff(n).mat;
    if (l != r) return false;
  }
  return true;
}

ChainMap make_chain_map(const Complex& src, const Complex& tgt, int lo, std::vector<Morphism> comps) {
  ChainMap f{src, tgt, lo, std::move(comps)};
  for (std::size_t k = 0; k < f.comps.size(); ++k) {
    const int n = lo + int(k);
    if (f.comps[k].src.dim() != src.term(n).dim() || f.comps[k].tgt.dim() != tgt.term(n).dim())
      throw DimensionMismatch("chain map component " + std::to_string(n) + " has the wrong shape");
  }
  if (!f.commutes()) throw InvariantViolation("components do not commute with the differentials");
  return f;
}

ChainMap identity_chain_map(const Complex& c) {
  std::vector<Morphism> comps;
  for (auto& t : c.terms) comps.push_back(identity_morphism(t));
  return {c, c, c.lo, comps};
}

ChainMap compose(const ChainMap& g, const ChainMap& f) {
  const int a = std::min({f.src.lo, g.tgt.lo, f.lo, g.lo});
  const int b = std::max({f.src.hi(), g.tgt.hi(), f.lo + int(f.comps.size()) - 1, g.lo + int(g.comps.size()) - 1});
  std::vector<Morphism> comps;
  for (int n = a; n <= b; ++n) comps.push_back(compose(g.at(n), f.at(n)));
  return {f.src, g.tgt, a, comps};
}

// ---------- cohomology ----------

Subquotient cohomology_subquotient(const Complex& c, int n) {
  return homology_at(c.term(n), c.diff(n - 1).mat, c.diff(n).mat);
}

Module cohomology(const Complex& c, int n) { return cohomology_subquotient(c, n).mod; }

CohomologyRange sup_inf_amp(const Complex& c, int upto) {
  CohomologyRange r;
  for (int n = c.lo; n <= c.hi() && n < upto; ++n) {
    if (cohomology(c, n).is_zero()) continue;
    if (r.zero) r.inf = n;
    r.sup = n;
    r.zero = false;
  }
  r.amp = r.zero ? BoundedAnswer::minus_infinity("no cohomology") : BoundedAnswer::exactly(r.sup - r.inf);
  return r;
}

Morphism induced_on_cohomology(const ChainMap& f, int n) {
  return induced_map(cohomology_subquotient(f.src, n), cohomology_subquotient(f.tgt, n), f.at(n).mat);
}

bool is_quasi_iso(const ChainMap& f, int from, int to) {
  for (int n = from; n <= to; ++n) {
    Morphism h = induced_on_cohomology(f, n);
    if (h.src.dim() != h.tgt.dim() || rank(h.mat) != h.src.dim()) return false;
  }
  return true;
}

bool is_quasi_iso(const ChainMap& f) {
  return is_quasi_iso(f, std::min(f.src.lo, f.tgt.lo), std::max(f.src.hi(), f.tgt.hi()));
}

// ---------- shift and truncations ----------

Complex shift(const Complex& c, int m) {
  Complex s = c;
  s.lo = c.lo - m;
  if (m % 2 != 0)
    for (auto& x : s.d) x = -x;
  return s;
}

ChainMap shift(const ChainMap& f, int m) { return {shift(f.src, m), shift(f.tgt, m), f.lo - m, f.comps}; }

Complex hard_left_truncation(const Complex& c, int n) {
  if (n <= c.lo) return c;
  Complex t = Complex::zero(c.alg);
  if (n > c.hi()) return t;
  const int k = n - c.lo;
  t.lo = n;
  t.terms.assign(c.terms.begin() + k, c.terms.end());
  t.d.assign(c.d.begin() + k, c.d.end());
  return t;
}

Complex v_operator(const Complex& i_complex, std::optional<int> sup) {
  for (int n = i_complex.lo; n <= i_complex.hi(); ++n)
    if (!is_injective(i_complex.term(n)))
      throw NotInjectiveComplex("term in degree " + std::to_string(n) + " is not injective");
  CohomologyRange r = sup_inf_amp(i_complex, sup ? *sup + 1 : INT_MAX);
  if (r.zero) throw InvalidInput("the complex has no cohomology");
  return shift(hard_left_truncation(i_complex, r.inf + 1), 1);
}

// ---------- injective resolutions ----------

namespace {

// An injective complex with nothing but split exact terms below `inf`, and chain maps
// into (proj) and out of (incl) the complex with those terms split off.
struct Normalized {
  Complex c;
  std::vector<Morphism> proj, incl;  // by degree from the original lo
};

Normalized split_below(const Complex& c, int inf) {
  std::vector<Module> terms = c.terms;
  std::vector<Morphism> d = c.d;
  std::vector<Morphism> proj, incl;
  for (auto& t : c.terms) {
    proj.push_back(identity_morphism(t));
    incl.push_back(identity_morphism(t));
  }
  int first = 0;  // index of the lowest remaining term
  while (c.lo + first < inf && first + 1 < int(terms.size())) {
    const Morphism& dj = d[first];
    Morphism r = extend_along_or_throw(dj, identity_morphism(terms[first]), "splitting of an exact injective term");
    SubResult C = kernel(r);
    Morphism p = factor_through_mono(identity_morphism(terms[first + 1]) + -compose(dj, r), C.map);
    proj[first] = zero_morphism(c.terms[first], Module::zero(c.alg));
    incl[first] = zero_morphism(Module::zero(c.alg), c.terms[first]);
    proj[first + 1] = compose(p, proj[first + 1]);
    incl[first + 1] = compose(incl[first + 1], C.map);
    if (first + 1 < int(d.size())) d[first + 1] = compose(d[first + 1], C.map);
    terms[first + 1] = C.mod;
    ++first;
  }
  Normalized out;
  out.c = Complex::make(c.alg, c.lo + first, std::vector<Module>(terms.begin() + first, terms.end()),
                        std::vector<Morphism>(d.begin() + first, d.end()));
  out.proj = proj;
  out.incl = incl;
  return out;
}

ChainMap map_from_normalized(const Complex& src, const Normalized& n) {
  // src -> n.c through the projections, degree by degree.
  std::vector<Morphism> comps;
  for (int k = n.c.lo; k <= n.c.hi(); ++k) comps.push_back(n.proj[k - src.lo]);
  return make_chain_map(src, n.c, n.c.lo, comps);
}

ChainMap map_into_original(const Complex& dst, const Normalized& n) {
  std::vector<Morphism> comps;
  for (int k = n.c.lo; k <= n.c.hi(); ++k) comps.push_back(n.incl[k - dst.lo]);
  return make_chain_map(n.c, dst, n.c.lo, comps);
}

InjectiveResolution build_injective(const Complex& c0, int extra) {
  Complex c = c0.trimmed();
  const AlgebraPtr& a = c.alg;
  InjectiveResolution out;
  out.tail = Module::zero(a);
  CohomologyRange cr = sup_inf_amp(c);
  if (cr.zero) {
    out.I = Complex::zero(a);
    out.q = make_chain_map(c, out.I, c.lo, {});
    out.complete = true;
    return out;
  }
  const int lo = c.lo, hi = c.hi();
  const Module zero = Module::zero(a);
  std::vector<Module> I;
  std::vector<Morphism> dI, f;
  Morphism dprev = zero_morphism(zero, zero);         // d^{n-2}
  Morphism fprev = zero_morphism(c.term(lo - 1), zero);  // f^{n-1}
  bool complete = false;
  for (int n = lo; n <= hi + 1 + extra; ++n) {
    SubResult C = cokernel(dprev);
    Pushout P = pushout(compose(C.map, fprev), c.diff(n - 1));
    if (n == hi + 1) out.tail = P.mod;
    if (n > hi && P.mod.is_zero()) {
      complete = true;
      break;
    }
    SubResult E = injective_envelope(P.mod);
    Morphism dn = compose(E.map, compose(P.i1, C.map));
    Morphism fn = compose(E.map, P.i2);
    if (n > lo) dI.push_back(dn);
    I.push_back(E.mod);
    f.push_back(fn);
    dprev = dn;
    fprev = fn;
  }
  Complex raw = Complex::make(a, lo, I, dI);
  ChainMap q = make_chain_map(c, raw, lo, f);
  Normalized nm = split_below(raw, cr.inf);
  out.I = nm.c;
  out.q = compose(map_from_normalized(raw, nm), q);
  out.complete = complete;
  out.reliable_below = complete ? INT_MAX : raw.hi();
  if (complete) out.tail = zero;
  return out;
}

}  // namespace

InjectiveResolution injective_resolution_complex(const Complex& c, int bound) {
  InjectiveResolution r = build_injective(c, bound);
  if (!r.complete)
    throw BoundExceeded("injective resolution does not terminate within " + std::to_string(bound) +
                        " degrees past the top of the complex");
  return r;
}

InjectiveResolution truncated_injective_resolution(const Complex& c, int extra) {
  return build_injective(c, std::max(extra, 1));
}

// ---------- mapping cones ----------

Cone mapping_cone(const ChainMap& f) {
  const Complex& A = f.src;
  const Complex& B = f.tgt;
  const AlgebraPtr& alg = B.alg ? B.alg : A.alg;
  int lo = std::min(A.lo - 1, B.lo), hi = std::max(A.hi() - 1, B.hi());
  if (A.terms.empty()) lo = B.lo, hi = B.hi();
  if (B.terms.empty()) lo = A.lo - 1, hi = A.hi() - 1;
  std::vector<DirectSum> sums;
  std::vector<Module> terms;
  for (int n = lo; n <= hi; ++n) {
    sums.push_back(direct_sum({A.term(n + 1), B.term(n)}));
    terms.push_back(sums.back().mod);
  }
  std::vector<Morphism> d;
  for (int n = lo; n < hi; ++n) {
    const DirectSum& s = sums[n - lo];
    const DirectSum& t = sums[n + 1 - lo];
    Morphism top = compose(t.incl[0], compose(-A.diff(n + 1), s.proj[0]));
    Morphism bottom = compose(t.incl[1], compose(f.at(n + 1), s.proj[0])) + compose(t.incl[1], compose(B.diff(n), s.proj[1]));
    d.push_back(top + bottom);
  }
  Cone c;
  c.f = f;
  c.mod = terms.empty() ? Complex::zero(alg) : Complex::make(alg, lo, terms, d);
  std::vector<Morphism> inc, pr;
  for (int n = lo; n <= hi; ++n) {
    inc.push_back(sums[n - lo].incl[1]);
    pr.push_back(sums[n - lo].proj[0]);
  }
  c.parts_lo = lo;
  c.parts = sums;
  c.incl = make_chain_map(B, c.mod, lo, inc);
  c.proj = make_chain_map(c.mod, shift(A, 1), lo, pr);
  return c;
}

Morphism Cone::b_projection(int n) const {
  if (n < parts_lo || n >= parts_lo + int(parts.size())) return zero_morphism(mod.term(n), f.tgt.term(n));
  return parts[n - parts_lo].proj[1];
}

bool cone_sequence_exact(const Cone& c, int from, int to) {
  const ChainMap& f = c.f;
  Complex a1 = shift(f.src, 1);
  auto exact_at = [](const Morphism& in, const Morphism& out, int mid) {
    return (out.mat * in.mat).is_zero() && rank(in.mat) + rank(out.mat) == mid;
  };
  for (int n = from; n <= to; ++n) {
    Morphism fh = induced_on_cohomology(f, n);
    Morphism ih = induced_on_cohomology(c.incl, n);
    Morphism ph = induced_on_cohomology(c.proj, n);
    Morphism fnext = induced_map(cohomology_subquotient(a1, n), cohomology_subquotient(f.tgt, n + 1), f.at(n + 1).mat);
    if (!exact_at(fh, ih, fh.tgt.dim())) return false;
    if (!exact_at(ih, ph, ih.tgt.dim())) return false;
    if (!exact_at(ph, fnext, ph.tgt.dim())) return false;
  }
  return true;
}

// ---------- Bass injective dimension of complexes ----------

namespace {

struct ProjectiveResolution {
  Complex P;
  ChainMap g;  // P -> X
  bool complete = false;
  int reliable_above = INT_MIN;  // cohomology of P is correct in degrees > this
};

// Bounded above resolution of a bounded complex by projectives, built downward.
ProjectiveResolution projective_resolution_complex(const Complex& X, int steps) {
  const AlgebraPtr& a = X.alg;
  const Module zero = Module::zero(a);
  ProjectiveResolution out;
  std::vector<Module> P;
  std::vector<Morphism> dP, g;
  Morphism dnext = zero_morphism(zero, zero);          // d^{n+1}: P^{n+1} -> P^{n+2}
  Morphism gnext = zero_morphism(zero, X.term(X.hi() + 1));  // g^{n+1}
  int n = X.hi();
  for (; n >= X.lo - steps; --n) {
    SubResult K = kernel(dnext);
    Pullback Q = pullback(X.diff(n), compose(gnext, K.map));
    if (n < X.lo && Q.mod.is_zero()) {
      out.complete = true;
      break;
    }
    SubResult cov = projective_cover(Q.mod);
    Morphism dn = compose(K.map, compose(Q.p2, cov.map));
    Morphism gn = compose(Q.p1, cov.map);
    P.push_back(cov.mod);
    g.push_back(gn);
    if (P.size() > 1) dP.push_back(dn);
    dnext = dn;
    gnext = gn;
  }
  std::reverse(P.begin(), P.end());
  std::reverse(dP.begin(), dP.end());
  std::reverse(g.begin(), g.end());
  const int lo = X.hi() - int(P.size()) + 1;
  out.P = Complex::make(a, lo, P, dP);
  out.g = make_chain_map(out.P, X, lo, g);
  out.reliable_above = out.complete ? INT_MIN : lo;
  return out;
}

void require_semidualizing(const SemidualizingReport& rep) {
  if (!rep.semidualizing()) throw PreconditionNotCertified("bimodule is not semidualizing");
}

}  // namespace

BassComplexAnswer bass_id_complex(const SemidualizingReport& rep, const Complex& c0, int bound) {
  require_semidualizing(rep);
  const Bimodule& w = rep.omega;
  if (c0.alg != w.R) throw InvalidInput("the complex must be over R");
  Complex c = c0.trimmed();
  BassComplexAnswer out;
  out.rhom = Complex::zero(w.S);
  out.res = truncated_injective_resolution(c, bound);
  if (sup_inf_amp(c).zero) {
    out.value = BoundedAnswer::zero_module();
    out.annotation = "acyclic complex";
    return out;
  }

  // Above hi + 1 the resolution is an injective resolution of the tail module.
  std::optional<int> tail_sup;
  if (!out.res.complete) {
    BoundedAnswer s = ext_sup(w, out.res.tail, bound);
    using St = BoundedAnswer::Status;
    if (s.status == St::InfiniteByPeriodicity || s.status == St::PlusInfinity) {
      out.value = BoundedAnswer::plus_infinity("RHom(w, c) is unbounded: " + s.to_string());
      out.membership = Membership::Out;
      out.failing_degree = c.hi() + 2;
      out.annotation = "condition (1) fails";
      return out;
    }
    if (s.status == St::UnknownBeyond) {
      out.value = BoundedAnswer::unknown_beyond(bound, "Ext(w, tail) vanishing unknown beyond the bound");
      out.membership = Membership::VerifiedUpTo;
      out.annotation = "boundedness of RHom(w, c) not certified";
      return out;
    }
    tail_sup = s.is_exact() ? c.hi() + 1 + s.value : c.hi() + 1;
    if (*tail_sup + 2 > out.res.reliable_below) out.res = truncated_injective_resolution(c, *tail_sup - c.hi() + 2);
  }
  const InjectiveResolution& r = out.res;
  const Complex& J = r.I;

  std::vector<Star> st;
  std::vector<Module> xt;
  std::vector<Morphism> xd;
  for (int n = J.lo; n <= J.hi(); ++n) {
    st.push_back(star(w, J.term(n)));
    xt.push_back(st.back().mod);
  }
  for (int n = J.lo; n < J.hi(); ++n) xd.push_back(star_map(st[n - J.lo], st[n + 1 - J.lo], J.diff(n)));
  out.rhom = Complex::make(w.S, J.lo, xt, xd);
  const Complex& X = out.rhom;
  const int reliable = r.complete ? X.hi() + 1 : r.reliable_below;

  CohomologyRange rr = sup_inf_amp(X, reliable);
  if (rr.zero) {
    out.value = BoundedAnswer::plus_infinity("RHom(w, c) = 0 for a nonzero complex");
    out.membership = Membership::Out;
    out.failing_degree = sup_inf_amp(c).inf;
    out.annotation = "w (x) RHom(w, c) = 0";
    return out;
  }
  const int s = rr.sup;

  // tau_{<= s} X, quasi-isomorphic to X.
  SubResult Zs = kernel(X.diff(s));
  std::vector<Module> tt;
  std::vector<Morphism> td, into;
  for (int n = X.lo; n < s; ++n) {
    tt.push_back(X.term(n));
    into.push_back(identity_morphism(X.term(n)));
  }
  tt.push_back(Zs.mod);
  into.push_back(Zs.map);
  for (int n = X.lo; n + 1 < s; ++n) td.push_back(X.diff(n));
  if (s > X.lo) td.push_back(factor_through_mono(X.diff(s - 1), Zs.map));
  Complex Xs = Complex::make(w.S, X.lo, tt, td);

  ProjectiveResolution pr = projective_resolution_complex(Xs, bound);
  std::vector<Tensor> tens;
  std::vector<Module> tm;
  std::vector<Morphism> tdm, cmp;
  for (int n = pr.P.lo; n <= pr.P.hi(); ++n) {
    tens.push_back(cotensor(w, pr.P.term(n)));
    tm.push_back(tens.back().mod);
  }
  for (int n = pr.P.lo; n < pr.P.hi(); ++n)
    tdm.push_back(cotensor_map(tens[n - pr.P.lo], tens[n + 1 - pr.P.lo], pr.P.diff(n)));
  Complex T = Complex::make(w.R, pr.P.lo, tm, tdm);
  for (int n = T.lo; n <= T.hi(); ++n) {
    if (!J.in_window(n)) {
      cmp.push_back(zero_morphism(T.term(n), J.term(n)));
      continue;
    }
    Counit th = theta(w, st[n - J.lo]);
    Morphism toX = compose(into[n - X.lo], pr.g.at(n));  // P^n -> X^n
    cmp.push_back(compose(th.map, cotensor_map(tens[n - T.lo], th.tensor, toX)));
  }
  ChainMap counit = make_chain_map(T, J, T.lo, cmp);

  out.verified_from = pr.complete ? std::min(T.lo, J.lo) : pr.reliable_above + 1;
  out.verified_to = reliable - 1;
  for (int n = out.verified_from; n <= out.verified_to; ++n) {
    Morphism h = induced_on_cohomology(counit, n);
    if (h.src.dim() != h.tgt.dim() || rank(h.mat) != h.src.dim()) {
      out.value = BoundedAnswer::plus_infinity("w (x)L RHom(w, c) -> c fails in degree " + std::to_string(n));
      out.membership = Membership::Out;
      out.failing_degree = n;
      out.annotation = "condition (2) fails";
      return out;
    }
  }
  out.value = BoundedAnswer::exactly(s, "sup RHom(w, c)");
  if (pr.complete) {
    out.membership = Membership::In;
    out.verified_from = INT_MIN;
    out.verified_to = INT_MAX;
    out.annotation = "comparison certified in every degree";
  } else {
    out.membership = Membership::VerifiedUpTo;
    out.verified_to = INT_MAX;
    out.annotation = "comparison verified in degrees >= " + std::to_string(out.verified_from) +
                     "; the projective resolution of RHom(w, c) does not terminate within the bound";
  }
  return out;
}

// ---------- Bass replacement ----------

namespace {

struct Replaced {
  Complex Y;
  ChainMap q;  // Y -> J, mono in every degree
};

struct Replacer {
  const SemidualizingReport& rep;
  int bound;

  // J injective, starting at its inf i; cohomology only in [i, s]; degrees >= reliable not trusted.
  Replaced run(const Complex& J, int reliable, int i, int s) {
    const AlgebraPtr& a = J.alg;
    if (i == s) {
      for (int m = 0; i + m < reliable; ++m) {
        const int k = i + m;
        SubResult Z = kernel(J.diff(k));
        bool in = Z.mod.is_zero() || class_membership(rep, Z.mod, ClassKind::Bass, bound).in();
        if (!in) continue;
        std::vector<Module> terms;
        std::vector<Morphism> d, comps;
        for (int n = i; n < k; ++n) {
          terms.push_back(J.term(n));
          comps.push_back(identity_morphism(J.term(n)));
        }
        terms.push_back(Z.mod);
        comps.push_back(Z.map);
        for (int n = i; n + 1 < k; ++n) d.push_back(J.diff(n));
        if (k > i) d.push_back(factor_through_mono(J.diff(k - 1), Z.map));
        Complex Y = Complex::make(a, i, terms, d);
        return {Y, make_chain_map(Y, J, i, comps)};
      }
      throw PreconditionNotCertified("no cosyzygy in the Bass class within the computed resolution");
    }
    Complex v = v_operator(J, s);
    CohomologyRange vr = sup_inf_amp(v, s);
    Normalized vn = split_below(v, vr.inf);
    ChainMap incl = map_into_original(v, vn);
    Replaced sub = run(vn.c, reliable - 1, vn.c.lo, s - 1);
    ChainMap g1 = compose(incl, sub.q);  // Y1 -> v

    Complex A = Complex::module(J.term(i), i);
    Morphism alpha = J.diff(i);  // J^i -> J^{i+1} = v^i
    Morphism fi = alpha.mat.is_zero() ? zero_morphism(J.term(i), sub.Y.term(i))
                                      : factor_through_mono(Morphism{J.term(i), v.term(i), alpha.mat}, g1.at(i));
    ChainMap f = make_chain_map(A, sub.Y, i, {fi});
    Cone cn = mapping_cone(f);
    Complex Y = shift(cn.mod, -1);
    std::vector<Morphism> comps;
    for (int n = Y.lo; n <= Y.hi(); ++n) {
      // Y^n = cone^{n-1} = A^n (+) Y1^{n-1}; the A summand maps by -1, the Y1 summand by g1.
      // v^{i-1} is truncated away, so Y^i -> J^i only sees A^i.
      Matrix m = n == i ? -cn.proj.at(n - 1).mat : compose(g1.at(n - 1), cn.b_projection(n - 1)).mat;
      comps.push_back(Morphism{Y.term(n), J.term(n), m});
    }
    return {Y, make_chain_map(Y, J, Y.lo, comps)};
  }
};

}  // namespace

BassReplacement bass_replacement(const SemidualizingReport& rep, const Complex& c0, int bound) {
  BassComplexAnswer b = bass_id_complex(rep, c0, bound);
  if (!(b.value.is_exact() || b.value.status == BoundedAnswer::Status::ZeroModule))
    throw PreconditionNotCertified("Bass injective dimension of the complex is " + b.value.to_string());
  BassReplacement out;
  out.res = b.res;
  const Complex& J = out.res.I;
  Complex c = c0.trimmed();
  CohomologyRange cr = sup_inf_amp(c);
  if (cr.zero) {
    out.Y = Complex::zero(c.alg);
    out.to_injective = make_chain_map(out.Y, J, J.lo, {});
    out.verified = true;
    return out;
  }
  Replacer rp{rep, bound};
  Replaced r = rp.run(J, out.res.reliable_below, cr.inf, cr.sup);
  out.Y = r.Y.trimmed();
  std::vector<Morphism> comps;
  for (int n = out.Y.lo; n <= out.Y.hi(); ++n) comps.push_back(r.q.at(n));
  out.to_injective = make_chain_map(out.Y, J, out.Y.lo, comps);

  bool ok = true;
  for (int n = out.Y.lo; n <= out.Y.hi(); ++n) {
    out.term_classes.push_back(class_membership(rep, out.Y.term(n), ClassKind::Bass, bound));
    const ClassReport& cl = out.term_classes.back();
    if (!cl.in()) ok = false;
    if (cl.verdict == Membership::VerifiedUpTo) out.verified_up_to = std::max(out.verified_up_to, cl.bound);
  }
  const int top = out.res.complete ? std::max(J.hi(), out.Y.hi()) : out.res.reliable_below - 1;
  if (out.Y.hi() >= top && !out.res.complete) ok = false;
  const int from = std::min({c.lo, J.lo, out.Y.lo});
  ok = ok && out.to_injective.commutes() && is_quasi_iso(out.to_injective, from, top) &&
       is_quasi_iso(out.res.q, from, top);
  out.verified = ok;
  return out;
}

}  // namespace cotr
