#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "cotr/dims.hpp"

namespace cotr {

// ECograde, SECograde: left R-modules, inf{i : Ext^i(w, X) != 0} (over all quotients X for the
// strong kind). TCograde, STCograde: left S-modules, Tor_i(w, -) (over all submodules).
// Grade, SGrade: any module, inf{i : Ext^i(X, A) != 0} over its own algebra A.
enum class CogradeKind { ECograde, TCograde, SECograde, STCograde, Grade, SGrade };
std::string to_string(CogradeKind k);

constexpr std::uint64_t kDefaultCogradeCap = 1u << 12;

struct CogradeAnswer {
  CogradeKind kind = CogradeKind::ECograde;
  BoundedAnswer value;  // PlusInfinity: nothing nonzero in any degree
  std::optional<Module> witness;         // the nonvanishing Ext/Tor module
  std::optional<Module> witness_source;  // strong kinds: the sub/quotient realizing the minimum
  int witness_degree = -1;
  std::uint64_t cap = 0;  // strong kinds: cap used
  int examined = 0;       // strong kinds: sub/quotients examined
};

CogradeAnswer cograde(const Bimodule& w, const Module& x, CogradeKind kind, int bound = kDefaultBound,
                      std::uint64_t cap = kDefaultCogradeCap);

// Certified "cograde >= i": false when the value is smaller or not known to be large enough.
bool at_least(const CogradeAnswer& c, int i);

// A map f: U -> M with P_w-id U <= n and Ext^i(w, f) bijective for 1 <= i <= n.
struct ApproximationResult {
  int n = 0;
  Module U;
  Morphism f;
  DimAnswer certificate;          // P_w-id of U
  std::vector<Morphism> ext_maps;  // ext_maps[i-1] = Ext^i(w, f)
  bool verified = false;
};
ApproximationResult dual_ab_approximation(const SemidualizingReport& rep, const Module& m, int n,
                                          int bound = kDefaultBound);

// A map g: N -> V with I_w-pd V <= n (resolution by add((D R)_*)) and Tor_i(w, g) bijective.
struct CoapproximationResult {
  int n = 0;
  Module V;
  Morphism g;
  RelativeResolution certificate;
  int certified_pd = -1;
  std::vector<Morphism> tor_maps;  // tor_maps[i-1] = Tor_i(w, g)
  bool verified = false;
};
CoapproximationResult dual_ab_coapproximation(const SemidualizingReport& rep, const Module& n, int k,
                                              int bound = kDefaultBound);

// 0 -> E1 -a-> N -mu_N-> (w (x) N)_* -b-> E2 -> 0 with E1 ~ Ext^1(w, L), E2 ~ Ext^2(w, L).
struct FourTermSequence {
  Module e1, n, mu_target, e2;
  Morphism a, mu, b;
  Module L;  // ker(1 (x) g)
  bool exact = false;
  bool ext_identified = false;  // E1, E2 isomorphic to Ext^1(w, L), Ext^2(w, L)
  int alternating_sum() const { return e1.dim() - n.dim() + mu_target.dim() - e2.dim(); }
};
// Presentation g: V1 -> V0 of N = coker g, over S. Throws HypothesisFailed("mu_V0" | "mu_V1" |
// "Ext1(w,w(x)V0)" | "Ext1(w,w(x)V1)" | "Ext2(w,w(x)V1)").
FourTermSequence prop_6_7_sequence(const Bimodule& w, const Morphism& g, int bound = kDefaultBound);
// The same sequence for the presentation I^0(M)_* -> I^1(M)_* of cTr M: L = M.
FourTermSequence cor_6_8_sequence(const SemidualizingReport& rep, const Module& m, int bound = kDefaultBound);

// Both sides of the strong cograde equivalence over modules of dimension <= max_dim.
struct CogradeEquivalence {
  int n = 0;
  bool tor_side = true;  // s.E-cograde Tor_i(w, N) >= i for every N and i <= n
  bool ext_side = true;  // s.T-cograde Ext^i(w, M) >= i for every M and i <= n
  std::optional<Module> tor_counterexample, ext_counterexample;
  int tor_degree = -1, ext_degree = -1;
  int modules_checked = 0;
  bool agree() const { return tor_side == ext_side; }
};
CogradeEquivalence strong_cograde_equivalence(const SemidualizingReport& rep, int n, int max_dim,
                                              int bound = kDefaultBound,
                                              std::uint64_t cap = kDefaultCogradeCap);

struct ConditionCheck {
  std::string tag;
  bool holds = false;
  std::string detail;
};

struct GorensteinReport {
  int n = 0;
  BoundedAnswer id_left, id_right;  // id of A as a left and as a right module
  bool gorenstein = false;          // id_left = id_right <= n
  std::vector<BoundedAnswer> fd_injectives_left, fd_injectives_right;  // terms 0..n-1
  bool auslander = false, auslander_op = false, quasi_auslander_right = false;
  std::vector<ConditionCheck> bass_conditions;    // simples, w = D(A): (1)..(5)
  std::vector<ConditionCheck> cograde_conditions;  // (1) (1op) (2) (2op) (3) (4)
  int modules_checked = 0;
  bool bass_conditions_agree() const;
  bool cograde_conditions_agree() const;
};
GorensteinReport gorenstein_report(const AlgebraPtr& a, int n, int bound = kDefaultBound, int max_dim = 3,
                                   std::uint64_t cap = kDefaultCogradeCap);

}  // namespace cotr
