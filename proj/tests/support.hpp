#pragma once

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "gpi/gpi.hpp"

namespace gpi::testing {

using Rng = std::mt19937_64;

inline int uniform(Rng& rng, int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); }

inline Matrix random_matrix(const Field& F, int r, int c, Rng& rng) {
  Matrix M(r, c);
  for (auto& x : M.a) x = static_cast<Elt>(uniform(rng, 0, F.q() - 1));
  return M;
}

inline Matrix random_invertible(const Field& F, int n, Rng& rng) {
  for (;;) {
    Matrix M = random_matrix(F, n, n, rng);
    if (is_invertible(F, M)) return M;
  }
}

inline Vec random_vec(const Field& F, int n, Rng& rng) {
  Vec v(n);
  for (auto& x : v) x = static_cast<Elt>(uniform(rng, 0, F.q() - 1));
  return v;
}

// Uniform relabeling fixing the identity.
inline std::vector<int> random_relabeling(int n, Rng& rng) {
  std::vector<int> s(n);
  std::iota(s.begin(), s.end(), 0);
  std::shuffle(s.begin() + 1, s.end(), rng);
  return s;
}

inline FiniteGroup random_relabel(const FiniteGroup& G, Rng& rng) { return relabel(G, random_relabeling(G.order(), rng)); }

// Closure of a set of permutations by BFS; independent of the stabilizer chain.
inline std::set<Perm> perm_closure(int degree, const std::vector<Perm>& gens) {
  std::set<Perm> seen{perm_identity(degree)};
  std::vector<Perm> frontier{perm_identity(degree)};
  while (!frontier.empty()) {
    Perm x = frontier.back();
    frontier.pop_back();
    for (const auto& g : gens) {
      Perm y = perm_mul(x, g);
      if (seen.insert(y).second) frontier.push_back(y);
    }
  }
  return seen;
}

inline Perm random_perm(int t, Rng& rng) {
  Perm p(t);
  std::iota(p.begin(), p.end(), 0);
  std::shuffle(p.begin(), p.end(), rng);
  return p;
}

// Direct sum of random indecomposable-ish pieces: conjugate of a block-diagonal sum of
// regular, trivial and permutation pieces. Always a representation.
inline Representation random_representation(const GroupRef& grp, const Field& F, int max_dim, Rng& rng) {
  const int n = grp->G.order();
  std::vector<Representation> parts;
  int d = 0;
  while (d < 1 || (d < max_dim && uniform(rng, 0, 2) != 0)) {
    int kind = uniform(rng, 0, 2);
    Representation R = kind == 0 || n + d > max_dim ? trivial_rep(grp, F, 1) : regular_rep(grp, F);
    if (kind == 2 && d + 1 <= max_dim) {
      // one-dimensional via a random homomorphism to F*: try scalars on generators.
      std::vector<Matrix> imgs;
      for (std::size_t i = 0; i < grp->gens.size(); ++i) {
        Matrix s(1, 1);
        s(0, 0) = static_cast<Elt>(uniform(rng, 1, F.q() - 1));
        imgs.push_back(s);
      }
      Representation T = rep_from_generators(grp, F, 1, imgs);
      if (!check_representation(T)) R = T;
    }
    if (d + R.d > max_dim) break;
    parts.push_back(R);
    d += R.d;
  }
  Representation S = parts[0];
  for (std::size_t i = 1; i < parts.size(); ++i) S = direct_sum(S, parts[i]);
  return conjugate_rep(S, random_invertible(F, S.d, rng));
}

// Normalized 1-cochain: u(identity) = 0, so b_u is normalized.
inline Vec random_u(const Representation& theta, Rng& rng) {
  Vec u = random_vec(theta.F, theta.G().order() * theta.d, rng);
  for (int i = 0; i < theta.d; ++i) u[i] = 0;
  return u;
}

// Uniform element of Z^2 via the basis of the cocycle space.
inline Cocycle random_cocycle(const CohomologySpace& S, const Representation& theta, Rng& rng) {
  const Field& F = theta.F;
  const int n = theta.G().order();
  Vec v(static_cast<std::size_t>(n) * n * theta.d, 0);
  for (const auto& z : S.z2_basis) F.axpy(v.data(), static_cast<Elt>(uniform(rng, 0, F.q() - 1)), z.data(), v.size());
  return Cocycle::from_flat(n, F.p(), theta.d, v);
}

struct NamedGroup {
  std::string name;
  FiniteGroup G;
};

inline std::vector<NamedGroup> small_corpus() {
  return {
      {"Z1", cyclic_group(1)},
      {"Z2", cyclic_group(2)},
      {"Z4", cyclic_group(4)},
      {"V4", elem_ab_group(2, 2)},
      {"S3", symmetric_group(3)},
      {"Z6", cyclic_group(6)},
      {"D8", dihedral_group(2)},
      {"Q8", quaternion_group(2)},
      {"Z2^3", elem_ab_group(2, 3)},
      {"Z9", cyclic_group(9)},
      {"D12", dihedral_order(12)},
      {"A4", alternating_group(4)},
      {"Z2xZ6", direct_product(cyclic_group(2), cyclic_group(6))},
      {"SD16", semidihedral_group(3)},
      {"Q16", quaternion_group(3)},
      {"D16", dihedral_group(3)},
      {"S4", symmetric_group(4)},
  };
}

}  // namespace gpi::testing
