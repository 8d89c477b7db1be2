#pragma once

#include <functional>
#include <optional>
#include <vector>

#include "cotr/modrep.hpp"
#include "oracles.hpp"

namespace oracle {

using namespace cotr;

// Exhaustive search over add(U)-resolutions: every map W -> M with W a sum of the
// given indecomposables and dim W <= dim M + slack, recursing on the kernels of the
// onto ones. Kernels are deduplicated up to isomorphism per level.
struct ExhaustiveResolutions {
  std::vector<Module> indec;
  int slack = 0;
  int max_hom = 12;
  bool truncated = false;

  bool in_add(const Module& m) {
    if (m.is_zero()) return true;
    for (auto& w : sums(m.dim(), m.dim()))
      if (w.dimvec() == m.dimvec() && is_isomorphic(w, m)) return true;
    return false;
  }

  // All direct sums with min_dim <= dim <= max_dim.
  std::vector<Module> sums(int min_dim, int max_dim) {
    std::vector<Module> out;
    std::vector<Module> parts;
    std::function<void(int, int)> go = [&](int from, int d) {
      if (d >= min_dim && d > 0) out.push_back(direct_sum_module(parts));
      for (int j = from; j < int(indec.size()); ++j)
        if (d + indec[j].dim() <= max_dim) {
          parts.push_back(indec[j]);
          go(j, d + indec[j].dim());
          parts.pop_back();
        }
    };
    go(0, 0);
    return out;
  }

  std::optional<int> shortest(const Module& m, int depth) {
    if (in_add(m)) return 0;
    if (depth == 0) return std::nullopt;
    std::vector<Module> kernels;
    for (auto& w : sums(m.dim(), m.dim() + slack)) {
      HomSpace h = hom_space(w, m);
      if (h.dim() > max_hom) {
        truncated = true;
        continue;
      }
      const Scalar p = m.p();
      const std::uint64_t total = oracle::ipow(p, h.dim());
      for (std::uint64_t code = 0; code < total; ++code) {
        std::vector<Scalar> c(h.dim());
        std::uint64_t x = code;
        for (auto& v : c) {
          v = Scalar(x % p);
          x /= p;
        }
        Morphism f{w, m, h.element(c)};
        if (!is_epi(f)) continue;
        Module k = kernel(f).mod;
        bool seen = false;
        for (auto& o : kernels)
          if (o.dimvec() == k.dimvec() && is_isomorphic(o, k)) seen = true;
        if (!seen) kernels.push_back(k);
      }
    }
    std::optional<int> best;
    for (auto& k : kernels)
      if (auto r = shortest(k, depth - 1); r && (!best || *r + 1 < *best)) best = *r + 1;
    return best;
  }
};

}  // namespace oracle
