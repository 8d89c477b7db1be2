#include "cotr/cli.hpp"

#include <chrono>
#include <filesystem>
#include <functional>
#include <future>
#include <optional>
#include <ostream>
#include <sstream>

#include "CLI11.hpp"
#include "cotr/catalog.hpp"
#include "cotr/cograde.hpp"
#include "cotr/complexes.hpp"
#include "cotr/errors.hpp"
#include "cotr/io.hpp"

#ifndef COTR_FIXTURE_DIR
#define COTR_FIXTURE_DIR "fixtures"
#endif

namespace cotr::cli {

using json = nlohmann::json;
namespace fs = std::filesystem;

namespace {

// ---------- JSON views ----------

json matrix_json(const Matrix& m) {
  json rows = json::array();
  for (int i = 0; i < m.rows(); ++i) {
    json r = json::array();
    for (int j = 0; j < m.cols(); ++j) r.push_back(m(i, j));
    rows.push_back(r);
  }
  return {{"rows", m.rows()}, {"cols", m.cols()}, {"entries", rows}};
}

json module_json(const Module& m) { return {{"dim", m.dim()}, {"dimvec", m.dimvec()}}; }

std::string status_name(BoundedAnswer::Status s) {
  switch (s) {
    case BoundedAnswer::Status::Exactly: return "exactly";
    case BoundedAnswer::Status::UnknownBeyond: return "unknown_beyond";
    case BoundedAnswer::Status::InfiniteByPeriodicity: return "infinite_by_periodicity";
    case BoundedAnswer::Status::PlusInfinity: return "plus_infinity";
    case BoundedAnswer::Status::MinusInfinity: return "minus_infinity";
    case BoundedAnswer::Status::ZeroModule: return "zero_module";
  }
  return "?";
}

json bounded_json(const BoundedAnswer& b) {
  json j{{"status", status_name(b.status)}, {"text", b.to_string()}};
  if (b.status == BoundedAnswer::Status::Exactly) j["value"] = b.value;
  if (b.status == BoundedAnswer::Status::UnknownBeyond) j["bound"] = b.value;
  if (b.status == BoundedAnswer::Status::InfiniteByPeriodicity) j["j"] = b.j, j["k"] = b.k;
  if (!b.evidence.empty()) j["evidence"] = b.evidence;
  return j;
}

// "exact" | "verified_up_to(B)" | "infinite_by_periodicity(j,k)" | "unknown_beyond(B)".
json certainty_json(const std::string& text) {
  json j{{"text", text}};
  auto open = text.find('(');
  j["kind"] = text.substr(0, open);
  if (open != std::string::npos) {
    std::vector<int> args;
    std::stringstream in(text.substr(open + 1, text.size() - open - 2));
    for (std::string a; std::getline(in, a, ',');) args.push_back(std::stoi(a));
    if (args.size() == 2)
      j["j"] = args[0], j["k"] = args[1];
    else if (args.size() == 1)
      j["bound"] = args[0];
  }
  return j;
}

std::string verdict_name(Membership m) {
  switch (m) {
    case Membership::In: return "in";
    case Membership::Out: return "out";
    case Membership::VerifiedUpTo: return "verified_up_to";
  }
  return "?";
}

std::string verdict_name(Verdict v) {
  switch (v) {
    case Verdict::Pass: return "pass";
    case Verdict::Fail: return "fail";
    case Verdict::VerifiedUpTo: return "verified_up_to";
  }
  return "?";
}

json witness_module(const std::string& name, const Module& m) {
  json j = module_json(m);
  j["name"] = name;
  return j;
}

json witness_note(const std::string& name, const std::string& note) { return {{"name", name}, {"note", note}}; }

// ---------- execution context ----------

struct Globals {
  int bound = kDefaultBound;
  std::optional<std::uint64_t> cap;
  std::uint64_t seed = 1;
  bool json_out = false;
  std::string fixtures = COTR_FIXTURE_DIR;
};

struct Result {
  json answer = json::object();
  std::string certainty = "exact";
  json witnesses = json::array();
  std::string summary;
};

struct Context {
  Globals g;
  io::Loader loader;
  json inputs = json::array();

  explicit Context(const Globals& gl) : g(gl), loader({fs::path(gl.fixtures)}) {}

  std::uint64_t cap(Scalar p) const {
    if (g.cap) return *g.cap;
    std::uint64_t c = 1;
    for (int i = 0; i < 12 && c < (std::uint64_t(1) << 40); ++i) c *= p;
    return c;
  }
  SearchOptions opt(Scalar p) const {
    SearchOptions o;
    o.seed = g.seed;
    o.cap = cap(p);
    return o;
  }
  void note(const std::string& role, const std::string& path, const std::string& digest) {
    inputs.push_back({{"role", role}, {"path", path}, {"digest", digest}});
  }
  AlgebraPtr algebra(const std::string& path) {
    AlgebraPtr a = loader.algebra(path);
    note("algebra", path, io::digest(*a));
    return a;
  }
  Module module(const std::string& path, const AlgebraPtr& expected = nullptr) {
    Module m = loader.module(path, expected);
    note("module", path, io::digest(m));
    return m;
  }
  Bimodule bimodule(const std::string& path) {
    Bimodule b = loader.bimodule(path);
    note("omega", path, io::digest(b));
    return b;
  }
  Morphism morphism(const std::string& path) {
    Morphism f = loader.morphism(path);
    note("morphism", path, io::digest_text(io::digest(f.src) + io::digest(f.tgt) + io::format_matrix(f.mat)));
    return f;
  }
};

struct Opts {
  std::string input, omega, alg, out, builtin, fixture;
  std::map<std::string, bool> flags;
  std::optional<int> cotorsionfree, n, auslander, quasi;
  int degree = 0;
  int max_dim = 3;

  bool flag(const std::string& f) const {
    auto it = flags.find(f);
    return it != flags.end() && it->second;
  }
  std::string exactly_one(const std::vector<std::string>& names, const std::string& cmd) const {
    std::string chosen;
    int count = 0;
    for (auto& n : names)
      if (flag(n)) chosen = n, ++count;
    if (count != 1) {
      std::string all;
      for (auto& n : names) all += (all.empty() ? "--" : " | --") + n;
      throw InvalidInput(cmd + " needs exactly one of " + all);
    }
    return chosen;
  }
};

void need(const std::string& v, const std::string& what) {
  if (v.empty()) throw InvalidInput("missing " + what);
}

SemidualizingReport load_rep(Context& c, const Opts& o) {
  need(o.omega, "--omega");
  Bimodule w = c.bimodule(o.omega);
  return check_semidualizing(w, c.g.bound, c.opt(w.p()));
}

Module load_input_module(Context& c, const Opts& o, const AlgebraPtr& expected = nullptr) {
  need(o.input, "input module");
  AlgebraPtr a = expected;
  if (!o.alg.empty()) {
    AlgebraPtr given = c.algebra(o.alg);
    if (!a) a = given;
  }
  return c.module(o.input, a);
}

// ---------- commands ----------

Result cmd_check_semidualizing(Context& c, const Opts& o) {
  std::string path = !o.input.empty() ? o.input : o.omega;
  need(path, "bimodule");
  Bimodule w = c.bimodule(path);
  SemidualizingReport rep = check_semidualizing(w, c.g.bound, c.opt(w.p()));
  Result r;
  json axioms = json::array();
  int verified_up_to = -1;
  for (auto& a : rep.axioms) {
    json j{{"name", a.name}, {"verdict", verdict_name(a.verdict)}, {"bound", a.bound},
           {"evidence", bounded_json(a.evidence)}, {"detail", a.detail}};
    axioms.push_back(j);
    if (a.verdict == Verdict::VerifiedUpTo) verified_up_to = std::max(verified_up_to, a.bound);
    if (a.verdict == Verdict::Fail) r.witnesses.push_back(witness_note("axiom " + a.name, a.detail));
  }
  r.answer = {{"semidualizing", rep.semidualizing()}, {"certified", rep.certified()},
              {"faithful", rep.faithful()},         {"faithful_left", rep.f1},
              {"faithful_right", rep.f2},           {"axioms", axioms},
              {"left_algebra", w.R->name()},        {"right_algebra", w.S->name()},
              {"dim", w.dim}};
  if (rep.f1_witness) {
    r.answer["faithful_left_witness_vertex"] = w.R->vertex_labels()[rep.f1_vertex];
    r.witnesses.push_back(witness_module("simple killed by Hom(w,-) at vertex " + w.R->vertex_labels()[rep.f1_vertex],
                                         *rep.f1_witness));
  }
  if (rep.f2_witness) {
    r.answer["faithful_right_witness_vertex"] = w.S->vertex_labels()[rep.f2_vertex];
    r.witnesses.push_back(witness_module("simple right module killed at vertex " + w.S->vertex_labels()[rep.f2_vertex],
                                         *rep.f2_witness));
  }
  if (verified_up_to >= 0) r.certainty = "verified_up_to(" + std::to_string(verified_up_to) + ")";
  r.summary = std::string(rep.semidualizing() ? "semidualizing" : "not semidualizing") +
              (rep.faithful() ? ", faithful" : ", not faithful");
  return r;
}

Result cmd_cotranspose(Context& c, const Opts& o) {
  SemidualizingReport rep = load_rep(c, o);
  Module m = load_input_module(c, o, rep.omega.R);
  Cotranspose ct = cotranspose(rep, m);
  Result r;
  json res = json::array();
  for (int i = 0; i < 2; ++i) res.push_back(module_json(ct.res.term(i)));
  r.answer = {{"module", module_json(ct.mod)},
              {"injective_terms", res},
              {"i0_star", module_json(ct.i0.mod)},
              {"i1_star", module_json(ct.i1.mod)},
              {"f0_star", matrix_json(ct.f0_star.mat)}};
  r.summary = "cTr has dimension vector " + json(ct.mod.dimvec()).dump();
  return r;
}

json class_json(const ClassReport& cl) {
  json conds = json::array();
  for (auto& x : cl.conditions) conds.push_back({{"tag", x.tag}, {"verdict", verdict_name(x.verdict)}, {"witness", x.witness}});
  json j{{"class", cl.name()}, {"verdict", verdict_name(cl.verdict)}, {"bound", cl.bound}, {"conditions", conds}};
  if (cl.failing_condition) j["failing_condition"] = *cl.failing_condition;
  if (!cl.witness.empty()) j["witness"] = cl.witness;
  if (cl.witness_degree >= 0) j["witness_degree"] = cl.witness_degree;
  if (cl.witness_module) j["witness_module"] = module_json(*cl.witness_module);
  return j;
}

void class_witnesses(Result& r, const ClassReport& cl) {
  if (cl.verdict == Membership::Out) {
    r.witnesses.push_back(witness_note(cl.failing_condition.value_or("condition"), cl.witness));
    if (cl.witness_module) r.witnesses.push_back(witness_module("degree " + std::to_string(cl.witness_degree), *cl.witness_module));
  }
  if (cl.verdict == Membership::VerifiedUpTo) r.certainty = "verified_up_to(" + std::to_string(cl.bound) + ")";
}

Result cmd_class(Context& c, const Opts& o) {
  const std::string which = o.flag("cotorsionfree-set")
                                ? "cotorsionfree"
                                : o.exactly_one({"bass", "auslander", "h"}, "class");
  SemidualizingReport rep = load_rep(c, o);
  const bool left = which == "bass" || which == "cotorsionfree";
  Module x = load_input_module(c, o, left ? rep.omega.R : rep.omega.S);
  ClassReport cl = which == "bass"        ? class_membership(rep, x, ClassKind::Bass, c.g.bound, c.opt(x.p()))
                   : which == "auslander" ? class_membership(rep, x, ClassKind::Auslander, c.g.bound, c.opt(x.p()))
                   : which == "h"         ? class_membership(rep, x, ClassKind::H, c.g.bound, c.opt(x.p()))
                                          : cotorsionfree_class(rep, x, *o.cotorsionfree, c.g.bound, c.opt(x.p()));
  Result r;
  r.answer = class_json(cl);
  class_witnesses(r, cl);
  r.summary = cl.name() + ": " + verdict_name(cl.verdict) +
              (cl.failing_condition ? " (failing " + *cl.failing_condition + ")" : "");
  return r;
}

json relres_json(const RelativeResolution& rr) {
  json terms = json::array();
  for (auto& t : rr.terms) terms.push_back(module_json(t));
  return {{"right", rr.right}, {"terms", terms}, {"exists", rr.exists}, {"terminated", rr.terminated},
          {"length", rr.length}};
}

json dim_json(const DimAnswer& d) {
  json j{{"quantity", to_string(d.quantity)}, {"value", bounded_json(d.value)}, {"status", d.status()},
         {"exists", d.exists}, {"agrees", d.agrees}};
  if (!d.annotation.empty()) j["annotation"] = d.annotation;
  if (d.certificate) j["certificate"] = relres_json(*d.certificate);
  if (d.ext_check) j["ext_check"] = bounded_json(*d.ext_check);
  if (!d.bass_certificates.empty()) {
    json cs = json::array();
    for (auto& cl : d.bass_certificates) cs.push_back(verdict_name(cl.verdict));
    j["cosyzygy_classes"] = cs;
  }
  return j;
}

Result cmd_dim(Context& c, const Opts& o) {
  const std::string which = o.exactly_one({"bass-id", "pomega-pd", "iomega-id", "ext-sup", "pd", "id"}, "dim");
  Result r;
  if (which == "pd" || which == "id") {
    Module m = load_input_module(c, o);
    BoundedAnswer b = dimension(m, which == "pd" ? DimKind::Pd : DimKind::Id, c.g.bound, c.opt(m.p()));
    r.answer = {{"quantity", which}, {"value", bounded_json(b)}};
    r.certainty = b.certainty();
    r.summary = which + " = " + b.to_string();
    return r;
  }
  SemidualizingReport rep = load_rep(c, o);
  const bool s_side = which == "iomega-id";
  Module m = load_input_module(c, o, s_side ? rep.omega.S : rep.omega.R);
  if (which == "ext-sup") {
    BoundedAnswer b = ext_sup(rep.omega, m, c.g.bound, c.opt(m.p()));
    r.answer = {{"quantity", "ext_sup"}, {"value", bounded_json(b)}};
    r.certainty = b.certainty();
    r.summary = "ext_sup = " + b.to_string();
    return r;
  }
  DimAnswer d = which == "bass-id"     ? bass_id(rep, m, c.g.bound, c.opt(m.p()))
                : which == "pomega-pd" ? p_omega_pd(rep, m, c.g.bound, c.opt(m.p()))
                                       : i_omega_id(rep, m, c.g.bound, c.opt(m.p()));
  r.answer = dim_json(d);
  r.certainty = d.certainty();
  if (!d.exists) r.witnesses.push_back(witness_note("no relative resolution", d.annotation));
  if (d.value.status == BoundedAnswer::Status::InfiniteByPeriodicity)
    r.witnesses.push_back(witness_note("syzygy period", d.value.evidence));
  r.summary = to_string(d.quantity) + " = " + d.status();
  return r;
}

Result cmd_cograde(Context& c, const Opts& o) {
  const std::string which = o.exactly_one({"e", "t", "se", "st", "grade", "sgrade"}, "cograde");
  const CogradeKind kind = which == "e"       ? CogradeKind::ECograde
                           : which == "t"     ? CogradeKind::TCograde
                           : which == "se"    ? CogradeKind::SECograde
                           : which == "st"    ? CogradeKind::STCograde
                           : which == "grade" ? CogradeKind::Grade
                                              : CogradeKind::SGrade;
  Result r;
  CogradeAnswer a;
  if (kind == CogradeKind::Grade || kind == CogradeKind::SGrade) {
    Module x = load_input_module(c, o);
    Bimodule dummy = regular_bimodule(x.algebra());
    a = cograde(dummy, x, kind, c.g.bound, c.cap(x.p()));
  } else {
    SemidualizingReport rep = load_rep(c, o);
    const bool left = kind == CogradeKind::ECograde || kind == CogradeKind::SECograde;
    Module x = load_input_module(c, o, left ? rep.omega.R : rep.omega.S);
    a = cograde(rep.omega, x, kind, c.g.bound, c.cap(x.p()));
  }
  r.answer = {{"kind", to_string(a.kind)}, {"value", bounded_json(a.value)}};
  if (a.witness_degree >= 0) r.answer["witness_degree"] = a.witness_degree;
  if (a.witness) r.witnesses.push_back(witness_module("nonvanishing in degree " + std::to_string(a.witness_degree), *a.witness));
  if (a.witness_source) r.witnesses.push_back(witness_module("realizing sub/quotient", *a.witness_source));
  if (a.cap) r.answer["cap"] = a.cap, r.answer["examined"] = a.examined;
  r.certainty = a.value.certainty();
  r.summary = to_string(a.kind) + " = " + a.value.to_string();
  return r;
}

json iso_flags(const std::vector<Morphism>& maps) {
  json j = json::array();
  for (auto& m : maps) j.push_back(is_iso(m));
  return j;
}

Result cmd_approx(Context& c, const Opts& o) {
  if (!o.n) throw InvalidInput("approx needs --n");
  SemidualizingReport rep = load_rep(c, o);
  Module m = load_input_module(c, o, rep.omega.R);
  ApproximationResult a = dual_ab_approximation(rep, m, *o.n, c.g.bound);
  Result r;
  r.answer = {{"n", a.n},           {"U", module_json(a.U)}, {"f", matrix_json(a.f.mat)},
              {"certificate", dim_json(a.certificate)}, {"ext_isos", iso_flags(a.ext_maps)},
              {"verified", a.verified}};
  r.certainty = a.certificate.certainty();
  if (!a.verified) r.witnesses.push_back(witness_note("verification", "an Ext map is not bijective or the certificate exceeds n"));
  r.summary = std::string(a.verified ? "verified" : "not verified") + " approximation U with dimension vector " +
              json(a.U.dimvec()).dump();
  return r;
}

Result cmd_coapprox(Context& c, const Opts& o) {
  if (!o.n) throw InvalidInput("coapprox needs --n");
  SemidualizingReport rep = load_rep(c, o);
  Module n = load_input_module(c, o, rep.omega.S);
  CoapproximationResult a = dual_ab_coapproximation(rep, n, *o.n, c.g.bound);
  Result r;
  r.answer = {{"n", a.n},
              {"V", module_json(a.V)},
              {"g", matrix_json(a.g.mat)},
              {"certificate", relres_json(a.certificate)},
              {"certified_pd", a.certified_pd},
              {"tor_isos", iso_flags(a.tor_maps)},
              {"verified", a.verified}};
  if (!a.verified) r.witnesses.push_back(witness_note("verification", "a Tor map is not bijective or the certificate exceeds n"));
  r.summary = std::string(a.verified ? "verified" : "not verified") + " coapproximation V with dimension vector " +
              json(a.V.dimvec()).dump();
  return r;
}

json sequence_json(const FourTermSequence& s) {
  return {{"E1", module_json(s.e1)},
          {"N", module_json(s.n)},
          {"star_tensor_N", module_json(s.mu_target)},
          {"E2", module_json(s.e2)},
          {"L", module_json(s.L)},
          {"a", matrix_json(s.a.mat)},
          {"mu", matrix_json(s.mu.mat)},
          {"b", matrix_json(s.b.mat)},
          {"exact", s.exact},
          {"ext_identified", s.ext_identified},
          {"alternating_sum", s.alternating_sum()}};
}

Result cmd_seq(Context& c, const Opts& o) {
  const std::string which = o.exactly_one({"cor68", "prop67"}, "seq");
  SemidualizingReport rep = load_rep(c, o);
  FourTermSequence s;
  if (which == "cor68") {
    s = cor_6_8_sequence(rep, load_input_module(c, o, rep.omega.R), c.g.bound);
  } else {
    need(o.input, "presentation morphism (.hom)");
    Morphism g = c.morphism(o.input);
    if (!same_algebra(g.src.algebra(), rep.omega.S)) throw InvalidInput("the presentation must be over S");
    s = prop_6_7_sequence(rep.omega, g, c.g.bound);
  }
  Result r;
  r.answer = sequence_json(s);
  if (!s.exact) r.witnesses.push_back(witness_note("exactness", "ranks do not match at some position"));
  r.summary = std::string(s.exact ? "exact" : "not exact") + " four-term sequence, alternating sum " +
              std::to_string(s.alternating_sum());
  return r;
}

Result cmd_gorenstein(Context& c, const Opts& o) {
  need(o.alg.empty() ? o.input : o.alg, "--alg");
  AlgebraPtr a = c.algebra(o.alg.empty() ? o.input : o.alg);
  const int n = o.auslander ? *o.auslander : o.quasi ? *o.quasi : o.n.value_or(1);
  GorensteinReport g = gorenstein_report(a, n, c.g.bound, o.max_dim, c.cap(a->p()));
  auto checks = [](const std::vector<ConditionCheck>& v) {
    json j = json::array();
    for (auto& x : v) j.push_back({{"tag", x.tag}, {"holds", x.holds}, {"detail", x.detail}});
    return j;
  };
  auto bounded_list = [](const std::vector<BoundedAnswer>& v) {
    json j = json::array();
    for (auto& b : v) j.push_back(bounded_json(b));
    return j;
  };
  Result r;
  r.answer = {{"n", g.n},
              {"id_left", bounded_json(g.id_left)},
              {"id_right", bounded_json(g.id_right)},
              {"gorenstein", g.gorenstein},
              {"auslander", g.auslander},
              {"auslander_op", g.auslander_op},
              {"quasi_auslander_right", g.quasi_auslander_right},
              {"fd_injectives_left", bounded_list(g.fd_injectives_left)},
              {"fd_injectives_right", bounded_list(g.fd_injectives_right)},
              {"bass_conditions", checks(g.bass_conditions)},
              {"cograde_conditions", checks(g.cograde_conditions)},
              {"bass_conditions_agree", g.bass_conditions_agree()},
              {"cograde_conditions_agree", g.cograde_conditions_agree()},
              {"modules_checked", g.modules_checked}};
  if (o.auslander) r.answer["verdict"] = g.auslander;
  if (o.quasi) r.answer["verdict"] = g.quasi_auslander_right;
  for (auto& x : g.bass_conditions)
    if (!x.holds) r.witnesses.push_back(witness_note("condition " + x.tag, x.detail));
  for (auto& x : g.cograde_conditions)
    if (!x.holds) r.witnesses.push_back(witness_note("condition " + x.tag, x.detail));
  r.certainty = g.id_left.certainty();
  r.summary = "id = " + g.id_left.to_string() + " / " + g.id_right.to_string() +
              (g.gorenstein ? ", Gorenstein" : ", not Gorenstein") + " at n = " + std::to_string(n);
  return r;
}

json complex_json(const Complex& c) {
  json terms = json::array();
  for (auto& t : c.terms) terms.push_back(module_json(t));
  return {{"lo", c.lo}, {"terms", terms}};
}

Result cmd_complex(Context& c, const Opts& o) {
  const std::string which = o.exactly_one({"bass-id", "replace"}, "complex");
  SemidualizingReport rep = load_rep(c, o);
  need(o.input, "input (.mod or .hom)");
  Complex cx;
  if (fs::path(o.input).extension() == ".hom") {
    Morphism f = c.morphism(o.input);
    if (!same_algebra(f.src.algebra(), rep.omega.R)) throw InvalidInput("the complex must be over R");
    cx = Complex::make(f.src.algebra(), o.degree, {f.src, f.tgt}, {f});
  } else {
    cx = Complex::module(load_input_module(c, o, rep.omega.R), o.degree);
  }
  Result r;
  if (which == "bass-id") {
    BassComplexAnswer b = bass_id_complex(rep, cx, c.g.bound);
    r.answer = {{"value", bounded_json(b.value)},
                {"membership", verdict_name(b.membership)},
                {"resolution", complex_json(b.res.I)},
                {"resolution_complete", b.res.complete},
                {"annotation", b.annotation}};
    if (b.verified_from != INT_MIN) r.answer["verified_from"] = b.verified_from;
    if (b.verified_to != INT_MAX) r.answer["verified_to"] = b.verified_to;
    if (b.failing_degree != INT_MIN) r.answer["failing_degree"] = b.failing_degree;
    if (b.membership == Membership::Out)
      r.witnesses.push_back(witness_note("comparison map", b.annotation.empty() ? "not a quasi-isomorphism" : b.annotation));
    r.certainty = b.membership == Membership::VerifiedUpTo ? "verified_up_to(" + std::to_string(b.verified_to) + ")"
                                                           : b.value.certainty();
    r.summary = "Bass injective dimension " + b.value.to_string() + " (" + verdict_name(b.membership) + ")";
  } else {
    BassReplacement b = bass_replacement(rep, cx, c.g.bound);
    json cls = json::array();
    for (auto& cl : b.term_classes) cls.push_back(verdict_name(cl.verdict));
    r.answer = {{"Y", complex_json(b.Y)}, {"resolution", complex_json(b.res.I)}, {"term_classes", cls}, {"verified", b.verified}};
    if (b.verified_up_to >= 0) r.certainty = "verified_up_to(" + std::to_string(b.verified_up_to) + ")";
    if (!b.verified) r.witnesses.push_back(witness_note("verification", "a term is outside the Bass class or a map is not a quasi-isomorphism"));
    r.summary = std::string(b.verified ? "verified" : "unverified") + " Bass replacement with " +
                std::to_string(b.Y.terms.size()) + " terms from degree " + std::to_string(b.Y.lo);
  }
  return r;
}

// ---------- export ----------

Result cmd_export(Context& c, const Opts& o) {
  Result r;
  std::vector<std::pair<std::string, std::string>> files;
  const std::string ext = fs::path(o.input).extension().string();
  need(o.input, "input file");
  const std::string stem = fs::path(o.input).stem().string();
  json digests = json::object();
  if (ext == ".alg") {
    AlgebraPtr a = c.algebra(o.input);
    files.push_back({stem + ".alg", io::export_algebra(*a)});
    digests[stem + ".alg"] = io::digest(*a);
  } else if (ext == ".mod") {
    Module m = load_input_module(c, o);
    const std::string an = (m.algebra()->name().empty() ? stem + "_algebra" : m.algebra()->name()) + ".alg";
    files.push_back({an, io::export_algebra(*m.algebra())});
    files.push_back({stem + ".mod", io::export_module(m, an)});
    digests[an] = io::digest(*m.algebra());
    digests[stem + ".mod"] = io::digest(m);
  } else if (ext == ".bimod") {
    Bimodule b = c.bimodule(o.input);
    const std::string ln = (b.R->name().empty() ? stem + "_left" : b.R->name()) + ".alg";
    files.push_back({ln, io::export_algebra(*b.R)});
    digests[ln] = io::digest(*b.R);
    std::string rn;
    if (!same_algebra(b.R, b.S)) {
      rn = stem + ".right.alg";
      files.push_back({rn, io::export_algebra(*b.S)});
      digests[rn] = io::digest(*b.S);
    }
    files.push_back({stem + ".bimod", io::export_bimodule(b, ln, rn)});
    digests[stem + ".bimod"] = io::digest(b);
  } else {
    throw InvalidInput("export handles .alg, .mod and .bimod files");
  }
  json written = json::array();
  for (auto& [name, text] : files) {
    if (!o.out.empty()) io::write_file(fs::path(o.out) / name, text);
    written.push_back(name);
  }
  r.answer = {{"files", written}, {"digests", digests}};
  if (o.out.empty()) {
    r.answer["text"] = files.back().second;
    r.summary = files.back().second;
  } else {
    r.answer["out"] = o.out;
    r.summary = "wrote " + std::to_string(files.size()) + " files to " + o.out;
  }
  return r;
}

// ---------- suite ----------

json lookup(const json& j, const std::string& path) {
  const json* cur = &j;
  std::stringstream in(path);
  for (std::string seg; std::getline(in, seg, '.');) {
    if (cur->is_array()) {
      std::size_t i = std::stoul(seg);
      if (i >= cur->size()) return nullptr;
      cur = &(*cur)[i];
    } else if (cur->is_object() && cur->contains(seg)) {
      cur = &(*cur)[seg];
    } else {
      return nullptr;
    }
  }
  return *cur;
}

std::string scalar_text(const json& v) { return v.is_string() ? v.get<std::string>() : v.dump(); }

struct Expectation {
  std::string origin, id;
  std::vector<std::string> args;
  std::vector<std::pair<std::string, std::string>> checks;
  int line = 0;
};

struct Property {
  std::string name, omega;
  int max_dim = 3;
};

void parse_expectations(const fs::path& file, std::vector<Expectation>& ex, std::vector<Property>& props) {
  std::istringstream in(io::read_file(file));
  int lineno = 0;
  for (std::string raw; std::getline(in, raw);) {
    ++lineno;
    std::string line = raw.substr(0, raw.find('#'));
    std::istringstream ws(line);
    std::vector<std::string> w;
    for (std::string t; ws >> t;) w.push_back(t);
    if (w.empty()) continue;
    const std::string where = file.string() + ":" + std::to_string(lineno);
    if (w[0] == "property") {
      if (w.size() < 3) throw InvalidInput(where + ": property <name> <omega> [max_dim]");
      props.push_back({w[1], w[2], w.size() > 3 ? std::stoi(w[3]) : 3});
      continue;
    }
    if (w.size() < 4 || w[1].back() != ':') throw InvalidInput(where + ": <origin> <id>: <command...> => <checks>");
    Expectation e{w[0], w[1].substr(0, w[1].size() - 1), {}, {}, lineno};
    std::size_t i = 2;
    for (; i < w.size() && w[i] != "=>"; ++i) e.args.push_back(w[i]);
    if (i == w.size()) throw InvalidInput(where + ": missing '=>'");
    for (++i; i < w.size(); ++i) {
      auto eq = w[i].find('=');
      if (eq == std::string::npos) throw InvalidInput(where + ": checks are path=value");
      e.checks.push_back({w[i].substr(0, eq), w[i].substr(eq + 1)});
    }
    ex.push_back(std::move(e));
  }
}

json run_property(const Property& p, const fs::path& dir, const Globals& g) {
  io::Loader loader({dir, fs::path(g.fixtures)});
  Bimodule w = loader.bimodule(p.omega);
  SemidualizingReport rep = check_semidualizing(w, g.bound);
  json j{{"property", p.name}, {"omega", p.omega}, {"max_dim", p.max_dim}};
  int checked = 0, failed = 0;
  json failures = json::array();
  auto fail = [&](const Module& m, const std::string& why) {
    ++failed;
    if (failures.size() < 5) failures.push_back({{"module", module_json(m)}, {"reason", why}});
  };
  if (p.name == "semidualizing") {
    ++checked;
    if (!rep.semidualizing()) ++failed, failures.push_back("not semidualizing");
  } else {
    for (auto& m : enumerate_modules(w.R, p.max_dim, 1u << 20)) {
      ++checked;
      try {
        if (p.name == "four-term") {
          FourTermSequence s = cor_6_8_sequence(rep, m, g.bound);
          if (!s.exact || s.alternating_sum() != 0) fail(m, "sequence not exact");
        } else if (p.name == "bass-complex") {
          bool finite = bass_id(rep, m, g.bound).value.is_exact();
          auto b = bass_id_complex(rep, Complex::module(m), g.bound);
          bool member = b.membership != Membership::Out && b.value.is_exact();
          if (finite != member) fail(m, "module and complex Bass dimensions disagree");
        } else if (p.name == "round-trip") {
          Module back = io::parse_module(io::export_module(m), w.R);
          if (io::digest(back) != io::digest(m)) fail(m, "export does not re-parse identically");
        } else {
          throw InvalidInput("unknown property " + p.name);
        }
      } catch (const InvalidInput&) {
        throw;
      } catch (const Error& e) {
        fail(m, e.what());
      }
    }
  }
  j["checked"] = checked;
  j["failed"] = failed;
  j["passed"] = failed == 0;
  if (!failures.empty()) j["failures"] = failures;
  return j;
}

json round_trip_files(const fs::path& dir, const Globals& g) {
  io::Loader loader({dir, fs::path(g.fixtures)});
  std::vector<fs::path> files;
  for (auto& e : fs::directory_iterator(dir)) files.push_back(e.path());
  std::sort(files.begin(), files.end());
  json bad = json::array();
  int n = 0;
  for (auto& f : files) {
    const std::string ext = f.extension().string();
    if (ext == ".alg") {
      AlgebraPtr a = loader.algebra(f.string());
      if (io::digest(*io::parse_algebra(io::export_algebra(*a))) != io::digest(*a)) bad.push_back(f.filename().string());
    } else if (ext == ".mod") {
      Module m = loader.module(f.string());
      if (io::digest(io::parse_module(io::export_module(m), m.algebra())) != io::digest(m))
        bad.push_back(f.filename().string());
    } else if (ext == ".bimod") {
      Bimodule b = loader.bimodule(f.string());
      if (io::digest(io::parse_bimodule(io::export_bimodule(b), b.R, b.S)) != io::digest(b))
        bad.push_back(f.filename().string());
    } else {
      continue;
    }
    ++n;
  }
  return {{"files", n}, {"failed", bad}, {"passed", bad.empty()}};
}

}  // namespace

Outcome execute_impl(const std::vector<std::string>& args);

namespace {

json run_fixture(const fs::path& dir, const Globals& g, std::vector<json>& details) {
  std::vector<Expectation> ex;
  std::vector<Property> props;
  parse_expectations(dir / "expectations", ex, props);
  std::vector<std::string> base{"--fixtures", dir.string(), "--bound", std::to_string(g.bound), "--seed",
                                std::to_string(g.seed)};
  if (g.cap) base.insert(base.end(), {"--cap", std::to_string(*g.cap)});
  int passed = 0;
  json failures = json::array();
  std::string first_run;
  bool deterministic = true;
  for (auto& e : ex) {
    std::vector<std::string> a = e.args;
    // Fixture files win over same-named files in the working directory.
    for (auto& arg : a)
      if (!arg.starts_with("-") && fs::is_regular_file(dir / arg)) arg = (dir / arg).string();
    a.insert(a.end(), base.begin(), base.end());
    Outcome out = execute_impl(a);
    json rep = out.reports.empty() ? json::object() : out.reports.back();
    json mism = json::array();
    for (auto& [path, want] : e.checks) {
      std::string got = path == "exit" ? std::to_string(out.exit_code) : scalar_text(lookup(rep, path));
      if (got != want) mism.push_back({{"path", path}, {"expected", want}, {"got", got}});
    }
    if (first_run.empty()) {
      first_run = without_timing(rep);
      Outcome again = execute_impl(a);
      deterministic = !again.reports.empty() && without_timing(again.reports.back()) == first_run;
    }
    json d{{"fixture", dir.filename().string()}, {"id", e.id}, {"origin", e.origin}, {"passed", mism.empty()}};
    if (!mism.empty()) d["mismatches"] = mism, failures.push_back(e.id);
    else ++passed;
    details.push_back(d);
  }
  json ps = json::array();
  bool props_ok = true;
  for (auto& p : props) {
    json r = run_property(p, dir, g);
    props_ok = props_ok && r["passed"].get<bool>();
    ps.push_back(r);
  }
  json rt = round_trip_files(dir, g);
  return {{"fixture", dir.filename().string()},
          {"expectations", ex.size()},
          {"passed", passed},
          {"failures", failures},
          {"properties", ps},
          {"round_trip", rt},
          {"deterministic", deterministic},
          {"ok", failures.empty() && props_ok && rt["passed"].get<bool>() && deterministic}};
}

Result cmd_suite(Context& c, const Opts& o, std::vector<json>& extra) {
  std::vector<fs::path> dirs;
  fs::path root(c.g.fixtures);
  if (!o.fixture.empty()) {
    dirs.push_back(fs::is_directory(o.fixture) ? fs::path(o.fixture) : root / o.fixture);
  } else {
    for (auto& e : fs::directory_iterator(root))
      if (e.is_directory() && fs::exists(e.path() / "expectations")) dirs.push_back(e.path());
    std::sort(dirs.begin(), dirs.end());
  }
  if (dirs.empty()) throw InvalidInput("no fixtures with expectations under " + root.string());
  // Fixtures run concurrently; reports keep input order.
  std::vector<std::future<std::pair<json, std::vector<json>>>> jobs;
  for (auto& d : dirs)
    jobs.push_back(std::async(std::launch::async, [d, g = c.g] {
      std::vector<json> details;
      json s = run_fixture(d, g, details);
      return std::make_pair(s, details);
    }));
  json fixtures = json::array();
  bool ok = true;
  for (auto& j : jobs) {
    auto [s, details] = j.get();
    for (auto& d : details) extra.push_back(d);
    ok = ok && s["ok"].get<bool>();
    fixtures.push_back(s);
  }
  Result r;
  r.answer = {{"fixtures", fixtures}, {"ok", ok}};
  for (auto& f : fixtures)
    if (!f["ok"].get<bool>()) r.witnesses.push_back(witness_note("fixture " + f["fixture"].get<std::string>(), f.dump()));
  r.summary = ok ? "all fixture suites pass" : "fixture suite failures";
  return r;
}

json make_report(const std::string& cmd, const json& inputs, const Result& r, int exit_code, double ms) {
  return {{"schema", kSchema},   {"command", cmd},   {"inputs", inputs},
          {"answer", r.answer},  {"certainty", certainty_json(r.certainty)},
          {"witnesses", r.witnesses}, {"timing_ms", ms}, {"exit_code", exit_code}};
}

std::string human(const json& rep, const std::string& summary) {
  std::ostringstream o;
  o << rep["command"].get<std::string>() << ": " << summary;
  const auto& cert = rep["certainty"];
  if (cert["kind"] != "exact") o << " [" << cert["text"].get<std::string>() << "]";
  o << "\n";
  for (auto& w : rep["witnesses"]) {
    o << "  witness " << w.value("name", std::string("?"));
    if (w.contains("dimvec")) o << " dimvec " << w["dimvec"].dump();
    if (w.contains("note")) o << ": " << w["note"].get<std::string>();
    o << "\n";
  }
  return o.str();
}

}  // namespace

Outcome execute_impl(const std::vector<std::string>& args) {
  Outcome out;
  Globals g;
  Opts o;
  CLI::App app{"cotr: cotranspose, Bass class and cograde computations over finite-dimensional algebras", "cotr"};
  app.fallthrough();
  app.require_subcommand(1);
  app.add_option("--bound", g.bound, "degree bound for resolutions")->capture_default_str();
  std::uint64_t cap = 0;
  app.add_option("--cap", cap, "enumeration cap (default p^12)");
  app.add_option("--seed", g.seed, "seed for randomized searches")->capture_default_str();
  app.add_flag("--json", g.json_out, "newline-delimited JSON reports");
  app.add_option("--fixtures", g.fixtures, "fixture directory searched for input files")->capture_default_str();

  auto sub = [&](const std::string& name, const std::string& desc) {
    CLI::App* s = app.add_subcommand(name, desc);
    s->fallthrough();
    return s;
  };
  auto inputs = [&](CLI::App* s, bool omega = true) {
    s->add_option("input", o.input, "input file");
    if (omega) s->add_option("--omega", o.omega, "semidualizing bimodule (.bimod)");
    s->add_option("--alg", o.alg, "algebra (.alg), when the module file does not name it");
  };
  auto flag = [&](CLI::App* s, const std::string& name, const std::string& desc) {
    s->add_flag("--" + name, o.flags[name], desc);
  };

  CLI::App* check = sub("check-semidualizing", "check the semidualizing axioms and faithfulness");
  inputs(check);
  CLI::App* cotr = sub("cotranspose", "cotranspose of a left R-module");
  inputs(cotr);
  CLI::App* cls = sub("class", "class membership");
  inputs(cls);
  cls->set_help_flag("--help", "print help");  // --h names the H class
  flag(cls, "bass", "Bass class (R-module)");
  flag(cls, "auslander", "Auslander class (S-module)");
  flag(cls, "h", "the H class (S-module)");
  cls->add_option("--cotorsionfree", o.cotorsionfree, "n-cotorsionfree (n >= 1, or -1 for all n)");
  CLI::App* dim = sub("dim", "relative and absolute homological dimensions");
  inputs(dim);
  for (auto f : {"bass-id", "pomega-pd", "iomega-id", "ext-sup", "pd", "id"}) flag(dim, f, f);
  CLI::App* cg = sub("cograde", "Ext/Tor cogrades and grades");
  inputs(cg);
  for (auto f : {"e", "t", "se", "st", "grade", "sgrade"}) flag(cg, f, f);
  CLI::App* ap = sub("approx", "approximation with bijective Ext maps");
  inputs(ap);
  ap->add_option("--n", o.n, "n")->required();
  CLI::App* cap_ = sub("coapprox", "coapproximation with bijective Tor maps");
  inputs(cap_);
  cap_->add_option("--n", o.n, "n")->required();
  CLI::App* seq = sub("seq", "four-term exact sequences");
  inputs(seq);
  flag(seq, "cor68", "sequence of the cotranspose presentation of a module");
  flag(seq, "prop67", "sequence of a presentation given as a .hom file");
  CLI::App* gor = sub("gorenstein", "Gorenstein and Auslander conditions of an algebra");
  inputs(gor, false);
  gor->add_option("--auslander", o.auslander, "Auslander n-Gorenstein at this n");
  gor->add_option("--quasi", o.quasi, "quasi Auslander n-Gorenstein at this n");
  gor->add_option("--n", o.n, "n for the condition lists (default 1)");
  gor->add_option("--max-dim", o.max_dim, "module enumeration bound")->capture_default_str();
  CLI::App* cx = sub("complex", "Bass data of a complex given by a module or a two-term .hom");
  inputs(cx);
  flag(cx, "bass-id", "Bass injective dimension");
  flag(cx, "replace", "replacement by a bounded complex of Bass-class modules");
  cx->add_option("--degree", o.degree, "lowest degree of the complex")->capture_default_str();
  CLI::App* ex = sub("export", "re-emit a file (and its algebras) in canonical form");
  inputs(ex, false);
  ex->add_option("--out", o.out, "output directory");
  CLI::App* su = sub("suite", "run fixture expectations and property suites");
  su->add_option("--fixture", o.fixture, "a single fixture name or directory");

  std::string cmd = "cotr";
  auto t0 = std::chrono::steady_clock::now();
  json inputs_json = json::array();
  try {
    std::vector<std::string> rev(args.rbegin(), args.rend());
    app.parse(rev);
    if (cap) g.cap = cap;
    if (o.cotorsionfree) o.flags["cotorsionfree-set"] = true;
    CLI::App* chosen = app.get_subcommands().front();
    cmd = chosen->get_name();
    Context c(g);
    Result r;
    std::vector<json> extra;
    if (chosen == check) r = cmd_check_semidualizing(c, o);
    else if (chosen == cotr) r = cmd_cotranspose(c, o);
    else if (chosen == cls) r = cmd_class(c, o);
    else if (chosen == dim) r = cmd_dim(c, o);
    else if (chosen == cg) r = cmd_cograde(c, o);
    else if (chosen == ap) r = cmd_approx(c, o);
    else if (chosen == cap_) r = cmd_coapprox(c, o);
    else if (chosen == seq) r = cmd_seq(c, o);
    else if (chosen == gor) r = cmd_gorenstein(c, o);
    else if (chosen == cx) r = cmd_complex(c, o);
    else if (chosen == ex) r = cmd_export(c, o);
    else r = cmd_suite(c, o, extra);
    const double ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
    for (auto& d : extra) {
      Result dr;
      dr.answer = d;
      if (!d["passed"].get<bool>()) dr.witnesses.push_back(witness_note("mismatches", d["mismatches"].dump()));
      out.reports.push_back(make_report("suite.expectation", json::array(), dr, 0, 0));
      out.text += human(out.reports.back(), d["fixture"].get<std::string>() + "/" + d["id"].get<std::string>() +
                                                (d["passed"].get<bool>() ? " ok" : " FAILED"));
    }
    out.exit_code = chosen == su && !r.answer["ok"].get<bool>() ? int(ErrorKind::Invariant) : 0;
    out.reports.push_back(make_report(cmd, c.inputs, r, out.exit_code, double(std::llround(ms))));
    if (out.exit_code != 0)
      out.reports.back()["error"] = {{"tag", "SuiteFailure"}, {"kind", "invariant"}, {"message", r.summary}};
    out.text += human(out.reports.back(), r.summary);
    return out;
  } catch (const CLI::CallForHelp&) {
    out.text = app.help();
    out.exit_code = 0;
    return out;
  } catch (const CLI::ParseError& e) {
    out.exit_code = int(ErrorKind::Input);
    Result r;
    r.answer = nullptr;
    r.summary = std::string("usage error: ") + e.what();
    json rep = make_report(cmd, inputs_json, r, out.exit_code, 0);
    rep["error"] = {{"tag", "UsageError"}, {"kind", "input"}, {"message", e.what()}};
    out.reports.push_back(rep);
    out.text = r.summary + "\n";
    return out;
  } catch (const Error& e) {
    out.exit_code = int(e.kind());
    const char* kind = e.kind() == ErrorKind::Precondition ? "precondition" : e.kind() == ErrorKind::Input ? "input" : "invariant";
    Result r;
    r.answer = nullptr;
    r.witnesses.push_back(witness_note(e.tag(), e.what()));
    r.summary = std::string("error ") + e.what();
    json rep = make_report(cmd, inputs_json, r, out.exit_code, 0);
    rep["error"] = {{"tag", e.tag()}, {"kind", kind}, {"message", e.what()}};
    out.reports.push_back(rep);
    out.text = human(rep, r.summary);
    return out;
  } catch (const std::exception& e) {
    out.exit_code = int(ErrorKind::Invariant);
    Result r;
    r.answer = nullptr;
    r.witnesses.push_back(witness_note("exception", e.what()));
    r.summary = std::string("internal error ") + e.what();
    json rep = make_report(cmd, inputs_json, r, out.exit_code, 0);
    rep["error"] = {{"tag", "InternalError"}, {"kind", "invariant"}, {"message", e.what()}};
    out.reports.push_back(rep);
    out.text = human(rep, r.summary);
    return out;
  }
}

Outcome execute(const std::vector<std::string>& args) { return execute_impl(args); }

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Outcome o = execute(args);
  bool json_out = false;
  for (auto& a : args)
    if (a == "--json") json_out = true;
  if (json_out) {
    for (auto& r : o.reports) out << r.dump() << "\n";
  } else {
    (o.exit_code == 0 ? out : err) << o.text;
  }
  return o.exit_code;
}

std::string without_timing(const json& report) {
  json r = report;
  r.erase("timing_ms");
  return r.dump();
}

}  // namespace cotr::cli
