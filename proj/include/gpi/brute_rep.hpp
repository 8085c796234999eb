#pragma once

#include <algorithm>
#include <cmath>
#include <map>
#include <optional>
#include <vector>

#include "gpi/brute.hpp"
#include "gpi/cohomology.hpp"
#include "gpi/rep.hpp"

namespace gpi {

inline bool brute_indecomposable(const Representation& R) { return brute_indecomposable(R.module()); }

// First u : Q -> GF(p)^d (in counting order) with f - g = b_u, b_u(x, y) = u(x) + x.u(y) - u(xy).
inline std::optional<CoboundaryWitness> brute_cohomologous(const Representation& theta, const Cocycle& f,
                                                          const Cocycle& g) {
  const Field F = Field::of(theta.F.p());
  const FiniteGroup& Q = theta.G();
  const int n = Q.order(), d = theta.d;
  if (f.n != n || g.n != n || f.d != d || g.d != d) throw InvalidInput("brute_cohomologous: shape mismatch");
  detail::require_small(F, n * d, 20.0);
  std::vector<Vec> diff(static_cast<std::size_t>(n) * n, Vec(d));
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y)
      for (int i = 0; i < d; ++i) diff[x * n + y][i] = F.sub(f.at(x, y)[i], g.at(x, y)[i]);
  Vec u(static_cast<std::size_t>(n) * d, 0);
  for (;;) {
    bool ok = true;
    for (int x = 0; x < n && ok; ++x)
      for (int y = 0; y < n && ok; ++y) {
        const int xy = Q.mul(x, y);
        for (int i = 0; i < d && ok; ++i) {
          Elt v = F.sub(u[x * d + i], u[xy * d + i]);
          for (int j = 0; j < d; ++j) v = F.add(v, F.mul(theta.images[x](i, j), u[y * d + j]));
          ok = v == diff[x * n + y][i];
        }
      }
    if (ok) return CoboundaryWitness{u};
    std::size_t k = 0;
    while (k < u.size() && u[k] == F.p() - 1) u[k++] = 0;
    if (k == u.size()) return std::nullopt;
    ++u[k];
  }
}

// Indecomposable representations of Q over GF(q), one per isomorphism type, of every dimension
// d whose generator-tuple space has q^(d^2 #gens) <= 2^log2_cap.
struct IndecomposableCensus {
  std::vector<Representation> types;
  int max_dim = 0;  // every dimension up to this was enumerated
};

inline IndecomposableCensus brute_indecomposable_census(const GroupRef& grp, const Field& F, double log2_cap = 20.0) {
  IndecomposableCensus out;
  const FiniteGroup& Q = grp->G;
  const int k = static_cast<int>(grp->gens.size());
  for (int d = 1;; ++d) {
    if (static_cast<double>(d * d * k) * std::log2(static_cast<double>(F.q())) > log2_cap) break;
    out.max_dim = d;
    // Candidate images per generator: invertible with order dividing the generator's order.
    std::vector<std::vector<Matrix>> cand(k);
    Matrix A(d, d);
    do {
      if (!is_invertible(F, A)) continue;
      for (int i = 0; i < k; ++i)
        if (mat_pow(F, A, element_order(Q, grp->gens[i])).is_identity()) cand[i].push_back(A);
    } while (detail::next_matrix(A, F.q()));
    // Isomorphism classes (all, decomposable included) bucketed by rank profile; the exhaustive
    // indecomposability test then runs once per class.
    std::vector<Representation> classes;
    std::map<std::vector<int>, std::vector<int>> buckets;
    std::vector<std::size_t> pick(k, 0);
    bool any = std::all_of(cand.begin(), cand.end(), [](const auto& c) { return !c.empty(); });
    while (any) {
      std::vector<Matrix> imgs;
      for (int i = 0; i < k; ++i) imgs.push_back(cand[i][pick[i]]);
      Representation R = rep_from_generators(grp, F, d, imgs);
      if (!check_representation(R)) {
        std::vector<int> key;
        for (int q = 0; q < Q.order(); ++q)
          for (int e = 1; e <= d; ++e)
            key.push_back(rank(F, mat_pow(F, mat_sub(F, R.images[q], Matrix::identity(d)), e)));
        auto& b = buckets[key];
        bool seen = false;
        for (int i : b)
          if (module_isomorphism(classes[i].module(), R.module()).isomorphic) {
            seen = true;
            break;
          }
        if (!seen) {
          b.push_back(static_cast<int>(classes.size()));
          classes.push_back(R);
          if (brute_indecomposable(R.module())) out.types.push_back(R);
        }
      }
      int i = 0;
      while (i < k && ++pick[i] == cand[i].size()) pick[i++] = 0;
      if (i == k) break;
    }
  }
  return out;
}

}  // namespace gpi
