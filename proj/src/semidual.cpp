#include "cotr/semidual.hpp"

#include <functional>

#include "cotr/errors.hpp"

namespace cotr {

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::Pass: return "pass";
    case Verdict::Fail: return "fail";
    case Verdict::VerifiedUpTo: return "verified_up_to";
  }
  return "?";
}

std::string to_string(Membership m) {
  switch (m) {
    case Membership::In: return "in";
    case Membership::Out: return "out";
    case Membership::VerifiedUpTo: return "verified_up_to";
  }
  return "?";
}

const AxiomStatus& SemidualizingReport::axiom(const std::string& name) const {
  for (auto& a : axioms)
    if (a.name == name) return a;
  throw InvalidInput("no axiom named " + name);
}

bool SemidualizingReport::semidualizing() const {
  for (auto& a : axioms)
    if (a.verdict == Verdict::Fail) return false;
  return true;
}

bool SemidualizingReport::certified() const {
  for (auto& a : axioms)
    if (a.verdict != Verdict::Pass) return false;
  return true;
}

std::string ClassReport::name() const {
  switch (kind) {
    case ClassKind::Bass: return "Bass";
    case ClassKind::Auslander: return "Auslander";
    case ClassKind::H: return "H";
    case ClassKind::Cotorsionfree:
      return n == kInfinity ? "InfCotorsionfree" : "Cotorsionfree(" + std::to_string(n) + ")";
  }
  return "?";
}

namespace {

// Matrix of r -> act[r] in the coordinates of an endomorphism space, or nothing when some
// act[r] is not an endomorphism.
std::optional<Matrix> homothety(const HomSpace& end, const std::vector<Matrix>& act, Scalar p) {
  Matrix H(end.dim(), int(act.size()), p);
  for (int r = 0; r < int(act.size()); ++r) {
    if (!end.contains(act[r])) return std::nullopt;
    auto c = end.coords(act[r]);
    for (int k = 0; k < end.dim(); ++k) H.at(k, r) = c[k];
  }
  return H;
}

AxiomStatus homothety_axiom(const std::string& name, const HomSpace& end, const std::vector<Matrix>& act,
                            Scalar p, Matrix* witness) {
  AxiomStatus a;
  a.name = name;
  a.evidence = BoundedAnswer::exactly(0);
  auto H = homothety(end, act, p);
  if (!H) {
    a.verdict = Verdict::Fail;
    a.detail = "an action matrix is not an endomorphism";
    return a;
  }
  *witness = *H;
  const int n = int(act.size());
  if (end.dim() == n && rank(*H) == n) {
    a.verdict = Verdict::Pass;
    a.detail = "homothety is bijective onto an endomorphism space of dimension " + std::to_string(n);
  } else {
    a.verdict = Verdict::Fail;
    a.detail = "algebra has dimension " + std::to_string(n) + ", endomorphisms " + std::to_string(end.dim()) +
               ", homothety rank " + std::to_string(rank(*H));
  }
  return a;
}

AxiomStatus self_ext_axiom(const std::string& name, const Bimodule& w, int bound, const SearchOptions& opt) {
  AxiomStatus a;
  a.name = name;
  a.bound = bound;
  a.evidence = ext_sup(w, w.left_module, bound, opt);
  if (auto d = positive_degree_witness(a.evidence)) {
    a.verdict = Verdict::Fail;
    a.detail = "Ext^" + std::to_string(*d) + " is nonzero";
  } else if (a.evidence.status == BoundedAnswer::Status::UnknownBeyond) {
    a.verdict = Verdict::VerifiedUpTo;
    a.detail = "positive degrees vanish up to " + std::to_string(bound);
  } else {
    a.verdict = Verdict::Pass;
    a.detail = "sup = " + a.evidence.to_string() + " (" + a.evidence.evidence + ")";
  }
  return a;
}

void require(const SemidualizingReport& rep) {
  if (!rep.semidualizing()) throw PreconditionNotCertified("bimodule is not semidualizing");
}

Membership from_sup(const BoundedAnswer& sup, std::optional<int>* degree) {
  *degree = positive_degree_witness(sup);
  if (*degree) return Membership::Out;
  return sup.status == BoundedAnswer::Status::UnknownBeyond ? Membership::VerifiedUpTo : Membership::In;
}

// Positive-degree vanishing of Ext(w, m) or Tor(w, n) as a condition.
Condition vanishing_condition(const std::string& tag, const std::string& what, const BoundedAnswer& sup,
                              const std::function<Module(int)>& module_at, ClassReport& rep) {
  std::optional<int> d;
  Condition c{tag, from_sup(sup, &d), {}};
  if (d) {
    Module w = module_at(*d);
    c.witness = what + " in degree " + std::to_string(*d) + " has dimension " + std::to_string(w.dim());
    if (!rep.failing_condition) {
      rep.witness_degree = *d;
      rep.witness_module = w;
    }
  } else {
    c.witness = what + ": " + sup.to_string();
  }
  return c;
}

Condition iso_condition(const std::string& tag, const std::string& map, const Morphism& f) {
  Condition c{tag, Membership::In, map + " is an isomorphism"};
  if (!is_mono(f)) {
    c.verdict = Membership::Out;
    c.witness = map + "-not-mono (kernel dimension " + std::to_string(f.src.dim() - rank(f.mat)) + ")";
  } else if (!is_epi(f)) {
    c.verdict = Membership::Out;
    c.witness = map + "-not-epi (cokernel dimension " + std::to_string(f.tgt.dim() - rank(f.mat)) + ")";
  }
  return c;
}

void add(ClassReport& rep, Condition c) {
  if (c.verdict == Membership::Out) {
    if (!rep.failing_condition) {
      rep.failing_condition = c.tag;
      rep.witness = c.witness;
    }
    rep.verdict = Membership::Out;
  } else if (c.verdict == Membership::VerifiedUpTo && rep.verdict == Membership::In) {
    rep.verdict = Membership::VerifiedUpTo;
  }
  rep.conditions.push_back(std::move(c));
}

Module tor_module(const Bimodule& w, const Module& n, int i, int bound) { return tor(w, n, i, std::max(bound, i)); }

}  // namespace

std::optional<int> faithfulness_witness(const Bimodule& w) {
  for (int v = 0; v < w.R->num_vertices(); ++v)
    if (hom_dim(w.left_module, simple_module(w.R, v)) == 0) return v;
  return std::nullopt;
}

SemidualizingReport check_semidualizing(const Bimodule& w, int bound, const SearchOptions& opt) {
  SemidualizingReport rep;
  rep.omega = w;
  rep.bound = bound;
  const Scalar p = w.p();
  const Bimodule f = w.flip();
  for (const char* n : {"a1", "a2"})
    rep.axioms.push_back({n, Verdict::Pass, 0, BoundedAnswer::exactly(0), "finite-dimensional, hence finitely presented"});
  rep.axioms.push_back(homothety_axiom("b1", hom_space(f.left_module, f.left_module), f.right, p, &rep.b1_witness));
  rep.axioms.push_back(homothety_axiom("b2", hom_space(w.left_module, w.left_module), w.right, p, &rep.b2_witness));
  rep.axioms.push_back(self_ext_axiom("c1", w, bound, opt));
  rep.axioms.push_back(self_ext_axiom("c2", f, bound, opt));
  if (auto v = faithfulness_witness(w)) {
    rep.f1 = false;
    rep.f1_vertex = *v;
    rep.f1_witness = simple_module(w.R, *v);
  }
  if (auto v = faithfulness_witness(f)) {
    rep.f2 = false;
    rep.f2_vertex = *v;
    rep.f2_witness = simple_module(f.R, *v);
  }
  return rep;
}

Cotranspose cotranspose(const SemidualizingReport& rep, const Module& m) {
  require(rep);
  const Bimodule& w = rep.omega;
  Cotranspose c;
  c.res = min_injective_resolution(m, 1);
  c.i0 = star(w, c.res.term(0));
  c.i1 = star(w, c.res.term(1));
  c.f0_star = star_map(c.i0, c.i1, c.res.differential(0));
  auto ck = cokernel(c.f0_star);
  c.mod = ck.mod;
  c.proj = ck.map;
  return c;
}

ClassReport cotorsionfree_class(const SemidualizingReport& rep, const Module& m, int n, int bound,
                                const SearchOptions& opt) {
  require(rep);
  const Bimodule& w = rep.omega;
  ClassReport out;
  out.kind = ClassKind::Cotorsionfree;
  out.n = n;
  out.bound = bound;
  Module ctr = cotranspose(rep, m).mod;
  if (n != kInfinity) {
    if (n < 1) throw InvalidInput("cotorsionfree degree must be positive");
    TorTable t = tor_table(w, ctr, n);
    for (int i = 1; i <= n; ++i) {
      Module ti = t.tor(i);
      Condition c{"Tor_" + std::to_string(i) + "(w,cTr)", Membership::In, "vanishes"};
      if (!ti.is_zero()) {
        c.verdict = Membership::Out;
        c.witness = "Tor_" + std::to_string(i) + "(w, cTr M) has dimension " + std::to_string(ti.dim());
        if (!out.failing_condition) {
          out.witness_degree = i;
          out.witness_module = ti;
        }
      }
      add(out, std::move(c));
    }
    return out;
  }

  Counit th = theta(w, m);
  add(out, iso_condition("theta", "theta", th.map));
  const Module& ms = th.star.mod;
  BoundedAnswer ts = tor_sup(w, ms, bound, opt);
  add(out, vanishing_condition("Tor(w,M_*)", "Tor(w, M_*)", ts, [&](int i) { return tor_module(w, ms, i, bound); },
                               out));

  // n-cotorsionfree for n >= 2 iff theta is iso and Tor_{1..n-2}(w, M_*) = 0.
  if (bound >= 2) {
    TorTable tc = tor_table(w, ctr, bound), tm = tor_table(w, ms, bound);
    bool finite_ok = true, char_ok = is_iso(th.map);
    for (int k = 1; k <= bound; ++k) {
      finite_ok = finite_ok && tc.tor(k).is_zero();
      if (k >= 2) {
        if (k >= 3) char_ok = char_ok && tm.tor(k - 2).is_zero();
        if (finite_ok != char_ok)
          throw InvariantViolation("cotorsionfree characterization disagrees with the cotranspose test at n = " +
                                   std::to_string(k));
      }
    }
  }
  return out;
}

ClassReport perp_membership(const SemidualizingReport& rep, const Module& m, int bound, const SearchOptions& opt) {
  require(rep);
  ClassReport out;
  out.kind = ClassKind::Bass;
  out.bound = bound;
  const Bimodule& w = rep.omega;
  add(out, vanishing_condition("B1", "Ext(w, M)", ext_sup(w, m, bound, opt),
                               [&](int i) { return ext(w, m, i, bound); }, out));
  return out;
}

ClassReport class_membership(const SemidualizingReport& rep, const Module& x, ClassKind which, int bound,
                             const SearchOptions& opt) {
  require(rep);
  const Bimodule& w = rep.omega;
  if (which == ClassKind::Cotorsionfree) return cotorsionfree_class(rep, x, kInfinity, bound, opt);
  const bool over_r = which == ClassKind::Bass;
  if (x.algebra() != (over_r ? w.R : w.S))
    throw InvalidInput("module is over the wrong side for the " + std::string(over_r ? "Bass" : "S-side") + " class");
  ClassReport out;
  out.kind = which;
  out.bound = bound;
  switch (which) {
    case ClassKind::Bass: {
      Counit th = theta(w, x);
      add(out, iso_condition("B3", "theta", th.map));
      add(out, vanishing_condition("B1", "Ext(w, M)", ext_sup(w, x, bound, opt),
                                   [&](int i) { return ext(w, x, i, bound); }, out));
      const Module& ms = th.star.mod;
      add(out, vanishing_condition("B2", "Tor(w, M_*)", tor_sup(w, ms, bound, opt),
                                   [&](int i) { return tor_module(w, ms, i, bound); }, out));
      break;
    }
    case ClassKind::Auslander: {
      Unit u = mu(w, x);
      add(out, iso_condition("A3", "mu", u.map));
      add(out, vanishing_condition("A1", "Tor(w, N)", tor_sup(w, x, bound, opt),
                                   [&](int i) { return tor_module(w, x, i, bound); }, out));
      const Module& wn = u.tensor.mod;
      add(out, vanishing_condition("A2", "Ext(w, w(x)N)", ext_sup(w, wn, bound, opt),
                                   [&](int i) { return ext(w, wn, i, bound); }, out));
      break;
    }
    case ClassKind::H: {
      Unit u = mu(w, x);
      add(out, iso_condition("Adst", "mu", u.map));
      // Ext^i_S(N, D(w)) is dual to Tor_i(w, N).
      add(out, vanishing_condition("KerExt(-,w+)", "Tor(w, N)", tor_sup(w, x, bound, opt),
                                   [&](int i) { return tor_module(w, x, i, bound); }, out));
      break;
    }
    default: break;
  }
  return out;
}

RoundTrip morita_round_trip(const SemidualizingReport& rep, const Module& x, Side side, int bound,
                            const SearchOptions& opt) {
  require(rep);
  const Bimodule& w = rep.omega;
  RoundTrip rt;
  if (side == Side::R) {
    auto cls = cotorsionfree_class(rep, x, kInfinity, bound, opt);
    if (!cls.in()) throw PreconditionNotCertified("module is not in cT(R): " + cls.witness);
    Counit th = theta(w, x);
    if (!is_iso(th.map)) throw InvariantViolation("theta is not invertible on a cotorsionfree module");
    rt.image = th.star.mod;
    rt.iso = th.map;
    rt.image_class = class_membership(rep, rt.image, ClassKind::H, bound, opt);
  } else {
    auto cls = class_membership(rep, x, ClassKind::H, bound, opt);
    if (!cls.in()) throw PreconditionNotCertified("module is not in H(w): " + cls.witness);
    Unit u = mu(w, x);
    if (!is_iso(u.map)) throw InvariantViolation("mu is not invertible on an H(w) member");
    rt.image = u.tensor.mod;
    rt.iso = u.map;
    rt.image_class = cotorsionfree_class(rep, rt.image, kInfinity, bound, opt);
  }
  if (!rt.image_class.in()) throw InvariantViolation("round trip left the target class: " + rt.image_class.witness);
  return rt;
}

}  // namespace cotr
