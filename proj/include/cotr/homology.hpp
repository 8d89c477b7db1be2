#pragma once

#include <optional>
#include <string>
#include <vector>

#include "cotr/functors.hpp"
#include "cotr/modrep.hpp"

namespace cotr {

constexpr int kDefaultBound = 20;

// A degree-quantified quantity with its certification status.
struct BoundedAnswer {
  enum class Status { Exactly, UnknownBeyond, InfiniteByPeriodicity, PlusInfinity, MinusInfinity, ZeroModule };
  Status status = Status::UnknownBeyond;
  int value = 0;     // Exactly: the value; UnknownBeyond: the bound
  int j = 0, k = 0;  // InfiniteByPeriodicity: Omega^j ~ Omega^k
  std::string evidence;
  int seen = -1;     // UnknownBeyond: largest nonzero degree in the window; periodic: first nonzero in the period

  static BoundedAnswer exactly(int n, std::string ev = {});
  static BoundedAnswer unknown_beyond(int bound, std::string ev = {});
  static BoundedAnswer periodic(int j, int k, std::string ev = {});
  static BoundedAnswer plus_infinity(std::string ev = {});
  static BoundedAnswer minus_infinity(std::string ev = {});
  static BoundedAnswer zero_module();

  bool is_exactly(int n) const { return status == Status::Exactly && value == n; }
  bool is_exact() const { return status == Status::Exactly; }
  // Finite and certified.
  std::optional<int> finite() const;
  std::string to_string() const;
  // Certainty tag used by reports: exact | verified_up_to(B) | infinite_by_periodicity(j,k) | unknown_beyond(B).
  std::string certainty() const;
};
bool operator==(const BoundedAnswer& a, const BoundedAnswer& b);

struct Resolution {
  enum class Kind { Projective, Injective };
  Kind kind = Kind::Projective;
  Module base;
  // Projective: aug = P_0 -> base, maps[i] = d_{i+1}: P_{i+1} -> P_i.
  // Injective: aug = base -> I^0, maps[i] = d^i: I^i -> I^{i+1}.
  std::vector<Module> terms;
  Morphism aug;
  std::vector<Morphism> maps;
  // syz[i] is Omega^i (resp. coOmega^i); syz[0] = base. syz_maps[i] links syz[i+1]:
  // the inclusion Omega^{i+1} -> P_i, or the projection I^i -> coOmega^{i+1}.
  std::vector<Module> syz;
  std::vector<Morphism> syz_maps;
  bool terminated = false;
  int length = -1;  // last nonzero term when terminated
  int computed = 0;  // number of terms built
  Module zero;

  // Differential d: terms[i] -> terms[i-1] (projective) or terms[i] -> terms[i+1] (injective),
  // zero morphisms past the computed range.
  Morphism differential(int i) const;
  const Module& term(int i) const;
};

Resolution min_projective_resolution(const Module& m, int bound = kDefaultBound);
Resolution min_injective_resolution(const Module& m, int bound = kDefaultBound);
Module syzygy(const Module& m, int n);
Module cosyzygy(const Module& m, int n);

struct Cycle {
  int j = 0, k = 0;
  Morphism iso;  // syz[j] -> syz[k]
};
std::optional<Cycle> detect_syzygy_cycle(const Resolution& r, const SearchOptions& opt = {});

enum class DimKind { Pd, Id, Fd };
BoundedAnswer dimension(const Module& m, DimKind kind, int bound = kDefaultBound,
                        const SearchOptions& opt = {});

// H = ker(out) / im(in) at the middle object x.
Subquotient homology_at(const Module& x, const Matrix& in, const Matrix& out);

// Ext_R^i(w, n) with its S-module structure, from a minimal injective resolution of n.
struct ExtTable {
  Resolution res;
  std::vector<Star> stars;
  std::vector<Morphism> dstar;  // stars[i] -> stars[i+1]
  Module ext(int i) const;
  Subquotient ext_subquotient(int i) const;
  int top_degree() const;
};
ExtTable ext_table(const Bimodule& w, const Module& n, int bound = kDefaultBound);
Module ext(const Bimodule& w, const Module& n, int i, int bound = kDefaultBound);

// dim Ext_R^i(m, n): projective resolution of m (first) or injective resolution of n (second).
int ext_dim(const Module& m, const Module& n, int i, int bound = kDefaultBound);
int ext_dim_injective(const Module& m, const Module& n, int i, int bound = kDefaultBound);
std::vector<int> ext_dims(const Module& m, const Module& n, int upto, int bound = kDefaultBound);

// Tor_i^S(w, n) as an R-module, from a minimal projective resolution of n.
struct TorTable {
  Resolution res;
  std::vector<Tensor> tensors;
  std::vector<Morphism> dten;  // dten[i]: tensors[i+1] -> tensors[i]
  Module tor(int i) const;
  Subquotient tor_subquotient(int i) const;
  int top_degree() const;
};
TorTable tor_table(const Bimodule& w, const Module& n, int bound = kDefaultBound);
Module tor(const Bimodule& w, const Module& n, int i, int bound = kDefaultBound);

// Ext_R^i(m, w) as an S^op-module, from a minimal projective resolution of m.
struct CoExtTable {
  Resolution res;
  std::vector<CoHom> homs;
  std::vector<Morphism> dhom;  // homs[i] -> homs[i+1]
  Module ext(int i) const;
  int top_degree() const;
};
CoExtTable coext_table(const Module& m, const Bimodule& w, int bound = kDefaultBound);

// Chain maps over f between minimal resolutions, degrees 0..upto: injective resolutions of
// f.src and f.tgt, or projective ones.
std::vector<Morphism> lift_to_injective_resolutions(const Resolution& a, const Resolution& b, const Morphism& f,
                                                    int upto);
std::vector<Morphism> lift_to_projective_resolutions(const Resolution& a, const Resolution& b, const Morphism& f,
                                                     int upto);
// Ext^i(w, f): Ext^i(w, a.res.base) -> Ext^i(w, b.res.base), in the ext_subquotient bases.
Morphism ext_map(const ExtTable& a, const ExtTable& b, const Morphism& f, int i);
Morphism ext_map(const Bimodule& w, const Morphism& f, int i, int bound = kDefaultBound);
// Tor_i(w, f) in the tor_subquotient bases.
Morphism tor_map(const TorTable& a, const TorTable& b, const Morphism& f, int i);
Morphism tor_map(const Bimodule& w, const Morphism& f, int i, int bound = kDefaultBound);

// sup{i >= 0 : Ext^i(w, m) != 0}.
BoundedAnswer ext_sup(const Bimodule& w, const Module& m, int bound = kDefaultBound,
                      const SearchOptions& opt = {});
// sup{i >= 0 : Tor_i(w, n) != 0}, certified the same way.
BoundedAnswer tor_sup(const Bimodule& w, const Module& n, int bound = kDefaultBound,
                      const SearchOptions& opt = {});
// For a sup answer: some positive degree known to be nonzero, if any. Empty means the
// positive degrees vanish exactly (certified answers) or within the window (UnknownBeyond).
std::optional<int> positive_degree_witness(const BoundedAnswer& sup);

}  // namespace cotr
