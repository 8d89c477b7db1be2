#pragma once

#include <climits>
#include <optional>
#include <string>
#include <vector>

#include "cotr/dims.hpp"

namespace cotr {

// Bounded cochain complex: terms[k] sits in degree lo + k, d[k]: terms[k] -> terms[k+1].
struct Complex {
  AlgebraPtr alg;
  int lo = 0;
  std::vector<Module> terms;
  std::vector<Morphism> d;

  static Complex zero(const AlgebraPtr& a);
  static Complex module(const Module& m, int degree = 0);
  // Validates that consecutive differentials compose to zero.
  static Complex make(const AlgebraPtr& a, int lo, std::vector<Module> terms, std::vector<Morphism> d);

  int hi() const { return lo + int(terms.size()) - 1; }
  const Module& term(int n) const;
  Morphism diff(int n) const;  // d^n: M^n -> M^{n+1}, zero outside the window
  bool is_zero() const;
  bool in_window(int n) const { return n >= lo && n <= hi(); }
  void validate() const;
  // Drops zero terms at both ends.
  Complex trimmed() const;
  std::string describe() const;

 private:
  Module zero_;
};

struct ChainMap {
  Complex src, tgt;
  int lo = 0;
  std::vector<Morphism> comps;  // comps[k] in degree lo + k
  Morphism at(int n) const;     // zero outside the stored range
  bool commutes() const;
};
ChainMap make_chain_map(const Complex& src, const Complex& tgt, int lo, std::vector<Morphism> comps);
ChainMap identity_chain_map(const Complex& c);
ChainMap compose(const ChainMap& g, const ChainMap& f);

Subquotient cohomology_subquotient(const Complex& c, int n);
Module cohomology(const Complex& c, int n);

// sup/inf over nonzero cohomology in degrees below `upto`; a complex with no cohomology has
// zero = true and amp = MinusInfinity.
struct CohomologyRange {
  bool zero = true;
  int inf = 0, sup = 0;
  BoundedAnswer amp;
};
CohomologyRange sup_inf_amp(const Complex& c, int upto = INT_MAX);

Morphism induced_on_cohomology(const ChainMap& f, int n);
// Induced maps bijective in every degree of [from, to].
bool is_quasi_iso(const ChainMap& f, int from, int to);
bool is_quasi_iso(const ChainMap& f);

// M[m]^n = M^{m+n} with differential (-1)^m d.
Complex shift(const Complex& c, int m);
ChainMap shift(const ChainMap& f, int m);
// Terms of degree < n replaced by zero.
Complex hard_left_truncation(const Complex& c, int n);
// (truncation at inf + 1)[1]; every term must be injective. sup, when given, bounds the degrees
// scanned for inf (used for truncated resolutions whose top degree is unreliable).
Complex v_operator(const Complex& i_complex, std::optional<int> sup = std::nullopt);

// Bounded-below injective complex I with a quasi-isomorphism c -> I. Terms start at inf c.
// When not complete, degrees >= reliable_below carry a truncated tail.
struct InjectiveResolution {
  Complex I;
  ChainMap q;
  bool complete = false;
  int reliable_below = INT_MAX;
  Module tail;  // incomplete: I continues as an injective resolution of tail from degree hi(c) + 1
};
// Throws BoundExceeded when the resolution does not terminate within `bound` degrees past hi(c).
InjectiveResolution injective_resolution_complex(const Complex& c, int bound = kDefaultBound);
// As above, stopping after `extra` degrees past hi(c) without throwing.
InjectiveResolution truncated_injective_resolution(const Complex& c, int extra);

// Cone of f: A -> B, cone^n = A^{n+1} (+) B^n with d = [[-d_A, 0], [f, d_B]].
struct Cone {
  Complex mod;
  ChainMap f;
  ChainMap incl;  // B -> cone
  ChainMap proj;  // cone -> A[1]
  int parts_lo = 0;
  std::vector<DirectSum> parts;  // parts[k] in degree parts_lo + k: A^{n+1} (+) B^n
  Morphism b_projection(int n) const;  // cone^n -> B^n
};
Cone mapping_cone(const ChainMap& f);
// The long exact cohomology sequence of A -> B -> cone -> A[1] is exact in degrees [from, to].
bool cone_sequence_exact(const Cone& c, int from, int to);

struct BassComplexAnswer {
  BoundedAnswer value;  // sup RHom(w, c) when a member, PlusInfinity when not
  Membership membership = Membership::In;
  int failing_degree = INT_MIN;  // first degree where the comparison map fails, when it does
  InjectiveResolution res;
  Complex rhom;  // RHom(w, c) as the starred injective resolution
  int verified_from = INT_MIN, verified_to = INT_MAX;
  std::string annotation;
};
BassComplexAnswer bass_id_complex(const SemidualizingReport& rep, const Complex& c, int bound = kDefaultBound);

// Y bounded with terms in the Bass class; c -> res.I <- Y are both quasi-isomorphisms.
struct BassReplacement {
  Complex Y;
  InjectiveResolution res;
  ChainMap to_injective;  // Y -> res.I
  std::vector<ClassReport> term_classes;  // one per degree of Y
  int verified_up_to = -1;  // >= 0 when some term's membership holds only up to that bound
  bool verified = false;
};
// Requires a finite Bass injective dimension of c.
BassReplacement bass_replacement(const SemidualizingReport& rep, const Complex& c, int bound = kDefaultBound);

}  // namespace cotr
