#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "gpi/error.hpp"
#include "gpi/field.hpp"
#include "gpi/group.hpp"
#include "gpi/linalg.hpp"
#include "gpi/module.hpp"

namespace gpi {

// A group together with a fixed generating set and BFS words over it.
struct GroupContext {
  FiniteGroup G;
  std::vector<int> gens;
  std::vector<int> parent;     // element -> predecessor in BFS (x = parent * gens[via])
  std::vector<int> via;        // generator index, -1 for the identity
  std::vector<int> bfs_order;  // identity first
};

using GroupRef = std::shared_ptr<const GroupContext>;

inline GroupRef make_group_ref(const FiniteGroup& G) {
  auto ctx = std::make_shared<GroupContext>();
  ctx->G = G;
  ctx->gens = generating_set(G);
  ctx->parent.assign(G.order(), -1);
  ctx->via.assign(G.order(), -1);
  std::vector<char> seen(G.order(), 0);
  ctx->bfs_order.push_back(0);
  seen[0] = 1;
  for (std::size_t i = 0; i < ctx->bfs_order.size(); ++i)
    for (std::size_t k = 0; k < ctx->gens.size(); ++k) {
      int y = G.mul(ctx->bfs_order[i], ctx->gens[k]);
      if (seen[y]) continue;
      seen[y] = 1;
      ctx->parent[y] = ctx->bfs_order[i];
      ctx->via[y] = static_cast<int>(k);
      ctx->bfs_order.push_back(y);
    }
  return ctx;
}

// images[g] acts on column vectors; images[g] * images[h] = images[g h].
struct Representation {
  GroupRef group;
  Field F;
  int d = 0;
  std::vector<Matrix> images;

  const FiniteGroup& G() const { return group->G; }

  Module module() const {
    Module M{F, d, {}};
    for (int g : group->gens) M.gens.push_back(images[g]);
    return M;
  }
};

// Images on all elements from images of the context's generators.
inline Representation rep_from_generators(const GroupRef& grp, const Field& F, int d,
                                          const std::vector<Matrix>& gen_images) {
  if (gen_images.size() != grp->gens.size()) throw InvalidInput("wrong number of generator images");
  Representation R{grp, F, d, std::vector<Matrix>(grp->G.order())};
  R.images[0] = Matrix::identity(d);
  for (std::size_t i = 1; i < grp->bfs_order.size(); ++i) {
    int x = grp->bfs_order[i];
    R.images[x] = mat_mul(F, R.images[grp->parent[x]], gen_images[grp->via[x]]);
  }
  return R;
}

inline Representation rep_from_module(const GroupRef& grp, const Module& M) {
  return rep_from_generators(grp, M.F, M.d, M.gens);
}

struct RepViolation {
  int g = 0, h = 0;
  std::string what;
};

// Checks shapes, invertibility, images[0] = I and the homomorphism property.
inline std::optional<RepViolation> check_representation(const Representation& R) {
  const FiniteGroup& G = R.G();
  if (static_cast<int>(R.images.size()) != G.order()) return RepViolation{0, 0, "wrong number of images"};
  for (int g = 0; g < G.order(); ++g)
    if (R.images[g].rows != R.d || R.images[g].cols != R.d) return RepViolation{g, g, "image has wrong shape"};
  if (!R.images[0].is_identity()) return RepViolation{0, 0, "identity does not map to I"};
  for (int g = 0; g < G.order(); ++g)
    for (int h = 0; h < G.order(); ++h)
      if (mat_mul(R.F, R.images[g], R.images[h]) != R.images[G.mul(g, h)])
        return RepViolation{g, h, "homomorphism property fails"};
  return std::nullopt;
}

inline Representation trivial_rep(const GroupRef& grp, const Field& F, int d) {
  return Representation{grp, F, d, std::vector<Matrix>(grp->G.order(), Matrix::identity(d))};
}

// Left regular representation on the basis e_x: g e_x = e_{g x}.
inline Representation regular_rep(const GroupRef& grp, const Field& F) {
  const FiniteGroup& G = grp->G;
  const int n = G.order();
  Representation R{grp, F, n, {}};
  for (int g = 0; g < n; ++g) {
    Matrix M(n, n);
    for (int x = 0; x < n; ++x) M(G.mul(g, x), x) = 1;
    R.images.push_back(std::move(M));
  }
  return R;
}

inline void check_same_setting(const Representation& a, const Representation& b) {
  if (a.group != b.group && !(a.G() == b.G())) throw InvalidInput("representations of different groups");
  if (a.F != b.F) throw InvalidInput("representations over different fields");
}

inline std::vector<Matrix> rep_hom_space(const Representation& a, const Representation& b) {
  check_same_setting(a, b);
  return hom_space(a.module(), b.module());
}

inline IsoDecision rep_isomorphism(const Representation& a, const Representation& b, std::uint64_t seed = 0) {
  check_same_setting(a, b);
  auto r = module_isomorphism(a.module(), b.module(), seed);
  if (r.isomorphic)
    for (int g = 0; g < a.G().order(); ++g)
      if (mat_mul(a.F, r.C, a.images[g]) != mat_mul(a.F, b.images[g], r.C))
        throw VerificationFailure("module isomorphism fails on a group element");
  return r;
}

struct RepSummand {
  Representation rep;
  int multiplicity = 0;
};

struct RepDecomposition {
  Matrix C;  // C theta(g) C^{-1} is the block-diagonal sum of the summands
  Matrix basis;
  std::vector<RepSummand> summands;
  Decomposition raw;
};

inline RepDecomposition decompose_rep(const Representation& R, std::uint64_t seed = 0) {
  RepDecomposition out;
  out.raw = decompose_module(R.module(), seed);
  out.C = out.raw.C;
  out.basis = out.raw.basis;
  for (const auto& T : out.raw.types)
    out.summands.push_back({rep_from_module(R.group, T.rep), static_cast<int>(T.copy_bases.size())});
  // Generators determine everything, but recheck every element.
  for (int g = 0; g < R.G().order(); ++g) {
    std::vector<Matrix> blocks;
    for (const auto& s : out.summands)
      for (int c = 0; c < s.multiplicity; ++c) blocks.push_back(s.rep.images[g]);
    if (mat_mul(R.F, mat_mul(R.F, out.C, R.images[g]), out.basis) != block_diag(blocks))
      throw VerificationFailure("decomposition fails on a group element");
  }
  return out;
}

inline bool rep_is_indecomposable(const Representation& R) { return is_indecomposable(R.module()); }

inline std::vector<Matrix> rep_unit_group(const Representation& R, std::uint64_t seed = 0) {
  return module_unit_group(R.module(), seed);
}

inline Representation direct_sum(const Representation& a, const Representation& b) {
  check_same_setting(a, b);
  Representation R{a.group, a.F, a.d + b.d, {}};
  for (int g = 0; g < a.G().order(); ++g) R.images.push_back(block_diag({a.images[g], b.images[g]}));
  return R;
}

inline Representation conjugate_rep(const Representation& R, const Matrix& C) {
  Matrix Ci = inverse_or_throw(R.F, C);
  Representation out{R.group, R.F, R.d, {}};
  for (const auto& A : R.images) out.images.push_back(mat_mul(R.F, mat_mul(R.F, C, A), Ci));
  return out;
}

// Restriction to H, as a representation of H viewed as its own group (sorted elements).
inline Representation restrict_rep(const Representation& R, const Subgroup& H) {
  if (!is_subgroup(R.G(), H.elements)) throw InvalidInput("restrict_rep: not a subgroup");
  SubgroupGroup S = subgroup_as_group(R.G(), H);
  Representation out{make_group_ref(S.group), R.F, R.d, {}};
  for (int x : S.embed) out.images.push_back(R.images[x]);
  return out;
}

// Induction from H = embedding of R's group into Q, by the coset-permutation construction.
// Left coset representatives t_i are least elements; block (i, j) of g is R(h) where g t_j = t_i h.
inline Representation induce_rep(const Representation& R, const GroupRef& Q, const std::vector<int>& embed) {
  const FiniteGroup& G = Q->G;
  const int h_order = R.G().order();
  if (static_cast<int>(embed.size()) != h_order) throw InvalidInput("induce_rep: embedding has the wrong size");
  std::vector<int> index(G.order(), -1);
  for (int i = 0; i < h_order; ++i) index[embed[i]] = i;
  if (!is_subgroup(G, embed)) throw InvalidInput("induce_rep: image is not a subgroup");
  for (int a = 0; a < h_order; ++a)
    for (int b = 0; b < h_order; ++b)
      if (G.mul(embed[a], embed[b]) != embed[R.G().mul(a, b)])
        throw InvalidInput("induce_rep: embedding is not a homomorphism");
  std::vector<int> coset(G.order(), -1), reps;
  for (int x = 0; x < G.order(); ++x) {
    if (coset[x] >= 0) continue;
    int c = static_cast<int>(reps.size());
    reps.push_back(x);
    for (int hh : embed) coset[G.mul(x, hh)] = c;
  }
  const int r = static_cast<int>(reps.size()), d = R.d;
  Representation out{Q, R.F, r * d, {}};
  for (int g = 0; g < G.order(); ++g) {
    Matrix M(r * d, r * d);
    for (int j = 0; j < r; ++j) {
      int y = G.mul(g, reps[j]);
      int i = coset[y];
      int hh = index[G.mul(G.inv(reps[i]), y)];
      const Matrix& B = R.images[hh];
      for (int a = 0; a < d; ++a)
        for (int b = 0; b < d; ++b) M(i * d + a, j * d + b) = B(a, b);
    }
    out.images.push_back(std::move(M));
  }
  if (auto v = check_representation(out)) throw VerificationFailure("induced representation invalid: " + v->what);
  return out;
}

}  // namespace gpi
