#pragma once

#include <optional>
#include <string>
#include <vector>

#include "cotr/functors.hpp"
#include "cotr/homology.hpp"

namespace cotr {

enum class Verdict { Pass, Fail, VerifiedUpTo };
std::string to_string(Verdict v);

struct AxiomStatus {
  std::string name;  // a1 a2 b1 b2 c1 c2
  Verdict verdict = Verdict::Pass;
  int bound = 0;
  BoundedAnswer evidence;
  std::string detail;
};

struct SemidualizingReport {
  Bimodule omega;
  int bound = kDefaultBound;
  std::vector<AxiomStatus> axioms;
  // Homothety matrices in the bases of R (resp. S) and of the endomorphism spaces.
  Matrix b1_witness, b2_witness;
  bool f1 = true, f2 = true;
  // A simple module killed by Hom(w, -): over R for f1, over S^op for f2.
  std::optional<Module> f1_witness, f2_witness;
  int f1_vertex = -1, f2_vertex = -1;

  const AxiomStatus& axiom(const std::string& name) const;
  // No axiom fails (some may hold only within the bound).
  bool semidualizing() const;
  // Every axiom certified exactly.
  bool certified() const;
  bool faithful() const { return f1 && f2; }
};

SemidualizingReport check_semidualizing(const Bimodule& w, int bound = kDefaultBound,
                                        const SearchOptions& opt = {});

// Hom(w, m) = 0 for a nonzero module m iff Hom(w, s) = 0 for some simple s. Returns
// the first such vertex, or nothing.
std::optional<int> faithfulness_witness(const Bimodule& w);

struct Cotranspose {
  Module mod;        // over S
  Resolution res;    // I^0 -> I^1 -> ... of the module
  Star i0, i1;       // I^0_* and I^1_*
  Morphism f0_star;  // I^0_* -> I^1_*
  Morphism proj;     // I^1_* -> cTr
};
Cotranspose cotranspose(const SemidualizingReport& rep, const Module& m);

enum class ClassKind { Bass, Auslander, H, Cotorsionfree };
enum class Membership { In, Out, VerifiedUpTo };
std::string to_string(Membership m);
constexpr int kInfinity = -1;

struct Condition {
  std::string tag;
  Membership verdict = Membership::In;
  std::string witness;
};

struct ClassReport {
  ClassKind kind = ClassKind::Bass;
  int n = kInfinity;  // Cotorsionfree only
  Membership verdict = Membership::In;
  int bound = 0;
  std::vector<Condition> conditions;  // in the order they are reported
  std::optional<std::string> failing_condition;
  std::string witness;
  // Degree and module of the failing Ext/Tor, when that is the witness.
  int witness_degree = -1;
  std::optional<Module> witness_module;

  bool in() const { return verdict != Membership::Out; }
  std::string name() const;
};

// n >= 1 or kInfinity.
ClassReport cotorsionfree_class(const SemidualizingReport& rep, const Module& m, int n,
                                int bound = kDefaultBound, const SearchOptions& opt = {});
// Bass and cotorsionfree take a left R-module; Auslander and H a left S-module.
ClassReport class_membership(const SemidualizingReport& rep, const Module& x, ClassKind which,
                             int bound = kDefaultBound, const SearchOptions& opt = {});
// Ext^{>=1}(w, m) = 0, as a class report.
ClassReport perp_membership(const SemidualizingReport& rep, const Module& m, int bound = kDefaultBound,
                            const SearchOptions& opt = {});

enum class Side { R, S };
struct RoundTrip {
  Module image;       // M_* or w (x) N
  Morphism iso;       // theta_M: w (x) M_* -> M, or mu_N: N -> (w (x) N)_*
  ClassReport image_class;  // H for M_*, cotorsionfree(inf) for w (x) N
};
// Throws PreconditionNotCertified when the input is not in cT(R) (side R) or H (side S).
RoundTrip morita_round_trip(const SemidualizingReport& rep, const Module& x, Side side,
                            int bound = kDefaultBound, const SearchOptions& opt = {});

}  // namespace cotr
