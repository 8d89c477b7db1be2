#pragma once

#include <optional>
#include <string>
#include <vector>

#include "cotr/semidual.hpp"

namespace cotr {

// add(U) for a module U: pairwise non-isomorphic indecomposable summands, with
// rad[j][i] spanning the radical maps indec[j] -> indec[i].
struct AddClass {
  std::vector<Module> indec;
  std::vector<std::vector<std::vector<Matrix>>> rad;
};
AddClass add_class(const Module& generator, const SearchOptions& opt = {});

// Minimal right (W -> m) or left (m -> W) approximation by add(U). multiplicity[j] counts
// copies of indec[j] in W.
struct Approximation {
  Module W;
  Morphism map;
  std::vector<int> multiplicity;
};
Approximation right_approximation(const AddClass& c, const Module& m);
Approximation left_approximation(const AddClass& c, const Module& m);

// Greedy resolution (right approximations) or coresolution (left approximations).
// Resolution: approx[i]: terms[i] -> syz[i], syz[i+1] = ker approx[i]. Coresolution:
// approx[i]: syz[i] -> terms[i], syz[i+1] = coker approx[i].
struct RelativeResolution {
  bool right = true;
  std::vector<Module> terms, syz;
  std::vector<Morphism> approx, links;  // links[i]: syz[i+1] -> terms[i] (incl) or terms[i] -> syz[i+1] (proj)
  std::vector<std::vector<int>> multiplicity;
  bool exists = true;  // every approximation epi (resolution) / mono (coresolution)
  bool terminated = false;
  int length = -1;
  // The map between terms[i-1] and terms[i] (i >= 1), in the direction of the sequence.
  Morphism differential(int i) const;
};
RelativeResolution relative_resolution(const AddClass& c, const Module& m, bool right, int bound);

enum class Quantity { POmegaPd, FOmegaPd, IOmegaId, POmegaId, BassId, ExtSup };
std::string to_string(Quantity q);

struct DimAnswer {
  Quantity quantity = Quantity::POmegaPd;
  BoundedAnswer value;
  bool exists = true;  // false: no relative (co)resolution at all (NoResolution / NoCoresolution)
  std::string annotation;
  std::optional<RelativeResolution> certificate;
  std::vector<ClassReport> bass_certificates;  // bass_id: class reports on coOmega^0..n
  std::optional<BoundedAnswer> ext_check;        // bass_id: ext_sup(w, M)
  bool agrees = true;                            // bass_id against the Ext criterion, when comparable
  int verified_up_to = -1;                       // >= 0 when some membership holds only up to a bound

  std::string status() const;  // value.to_string(), or NoResolution / NoCoresolution
  std::string certainty() const;
};

DimAnswer p_omega_pd(const SemidualizingReport& rep, const Module& m, int bound = kDefaultBound,
                     const SearchOptions& opt = {});
DimAnswer f_omega_pd(const SemidualizingReport& rep, const Module& m, int bound = kDefaultBound,
                     const SearchOptions& opt = {});
// Coresolution of an S-module by add((D R)_*).
DimAnswer i_omega_id(const SemidualizingReport& rep, const Module& n, int bound = kDefaultBound,
                     const SearchOptions& opt = {});
// Coresolution of an R-module by add(w).
DimAnswer p_omega_id(const SemidualizingReport& rep, const Module& m, int bound = kDefaultBound,
                     const SearchOptions& opt = {});
DimAnswer bass_id(const SemidualizingReport& rep, const Module& m, int bound = kDefaultBound,
                  const SearchOptions& opt = {});

enum class TiltSide { Left, Right };
BoundedAnswer semi_tilting(const Bimodule& w, TiltSide side, int bound = kDefaultBound,
                           const SearchOptions& opt = {});

// sup{i : Ext^i(m, w) != 0}; requires a finite P_w-pd and checks equality with it.
BoundedAnswer ext_based_pd(const SemidualizingReport& rep, const Module& m, int bound = kDefaultBound,
                           const SearchOptions& opt = {});

struct ShortExact {
  Module a, b, c;
  Morphism f, g;  // a -> b -> c
  bool exact() const;
};

struct BassApproximations {
  int n = 0;
  ShortExact upper;  // 0 -> M -> X^M -> W^M -> 0
  ShortExact lower;  // 0 -> X_M -> W_M -> M -> 0
  ClassReport upper_class, lower_class;
  DimAnswer upper_id, lower_id;  // P_w-id of W^M and W_M
  bool split = false;            // lower sequence splits
  bool verified = false;
};
// Requires bass_id(M) = Exactly(m) with m <= n.
BassApproximations theorem_4_2_approximations(const SemidualizingReport& rep, const Module& m, int n,
                                              int bound = kDefaultBound, const SearchOptions& opt = {});

}  // namespace cotr
