#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <optional>
#include <tuple>
#include <vector>

#include "gpi/algebra.hpp"
#include "gpi/error.hpp"
#include "gpi/group.hpp"
#include "gpi/linalg.hpp"
#include "gpi/module.hpp"
#include "gpi/perm_group.hpp"

namespace gpi {

// ------------------------------------------------------------------ groups

namespace detail {

struct ElementInvariant {
  int order = 0;
  int centralizer = 0;
  int square_roots = 0;
  bool operator==(const ElementInvariant& o) const {
    return order == o.order && centralizer == o.centralizer && square_roots == o.square_roots;
  }
  bool operator<(const ElementInvariant& o) const {
    return std::tie(order, centralizer, square_roots) < std::tie(o.order, o.centralizer, o.square_roots);
  }
};

inline std::vector<ElementInvariant> element_invariants(const FiniteGroup& G) {
  const int n = G.order();
  std::vector<ElementInvariant> inv(n);
  for (int x = 0; x < n; ++x) {
    inv[x].order = element_order(G, x);
    for (int y = 0; y < n; ++y)
      if (G.mul(x, y) == G.mul(y, x)) ++inv[x].centralizer;
    ++inv[G.mul(x, x)].square_roots;
  }
  return inv;
}

// Backtracking search for homomorphic bijections G -> H defined on a generating tuple.
class IsoSearch {
 public:
  IsoSearch(const FiniteGroup& G, const FiniteGroup& H, std::uint64_t node_cap)
      : G_(G), H_(H), cap_(node_cap), ig_(element_invariants(G)), ih_(element_invariants(H)) {
    gens_ = small_generating_set(G);
    // Words: every element as parent * gens[via], in BFS order over the first i generators.
    levels_.resize(gens_.size() + 1);
    for (std::size_t i = 0; i <= gens_.size(); ++i) {
      std::vector<int> order{0};
      std::vector<char> seen(G.order(), 0);
      seen[0] = 1;
      for (std::size_t a = 0; a < order.size(); ++a)
        for (std::size_t j = 0; j < i; ++j) {
          int y = G.mul(order[a], gens_[j]);
          if (!seen[y]) {
            seen[y] = 1;
            order.push_back(y);
          }
        }
      levels_[i] = std::move(order);
    }
  }

  const std::vector<int>& gens() const { return gens_; }

  // Tries to extend images fixed for gens [0, prefix.size()). Calls visit for each
  // full isomorphism until it returns false.
  bool search(const std::vector<int>& prefix, const std::function<bool(const std::vector<int>&)>& visit) {
    std::vector<int> img = prefix;
    return rec(img, visit);
  }

  std::uint64_t nodes() const { return nodes_; }

 private:
  // Image map on <g_0..g_{i-1}> or nullopt on conflict.
  std::optional<std::vector<int>> extend(const std::vector<int>& img) const {
    const std::size_t i = img.size();
    std::vector<int> phi(G_.order(), -1);
    std::vector<char> used(H_.order(), 0);
    phi[0] = 0;
    used[0] = 1;
    for (int x : levels_[i]) {
      for (std::size_t j = 0; j < i; ++j) {
        int y = G_.mul(x, gens_[j]);
        int v = H_.mul(phi[x], img[j]);
        if (phi[y] < 0) {
          if (used[v]) return std::nullopt;
          phi[y] = v;
          used[v] = 1;
        } else if (phi[y] != v) {
          return std::nullopt;
        }
      }
    }
    return phi;
  }

  bool rec(std::vector<int>& img, const std::function<bool(const std::vector<int>&)>& visit) {
    if (++nodes_ > cap_) throw BudgetExceeded("brute-force isomorphism search exceeded its node budget");
    auto phi = extend(img);
    if (!phi) return true;
    if (img.size() == gens_.size()) return visit(*phi);
    const int g = gens_[img.size()];
    for (int y = 0; y < H_.order(); ++y) {
      if (!(ig_[g] == ih_[y])) continue;
      img.push_back(y);
      bool go_on = rec(img, visit);
      img.pop_back();
      if (!go_on) return false;
    }
    return true;
  }

  const FiniteGroup& G_;
  const FiniteGroup& H_;
  std::uint64_t cap_;
  std::uint64_t nodes_ = 0;
  std::vector<ElementInvariant> ig_, ih_;
  std::vector<int> gens_;
  std::vector<std::vector<int>> levels_;
};

}  // namespace detail

struct IsoViolation {
  int x = 0, y = 0;
  std::string what;
};

// Checks that map is a bijection G -> H with map(xy) = map(x) map(y).
inline std::optional<IsoViolation> verify_isomorphism(const FiniteGroup& G, const FiniteGroup& H,
                                                      const std::vector<int>& map) {
  if (G.order() != H.order() || static_cast<int>(map.size()) != G.order())
    return IsoViolation{0, 0, "orders differ or map is not total"};
  std::vector<char> seen(H.order(), 0);
  for (int v : map) {
    if (v < 0 || v >= H.order() || seen[v]) return IsoViolation{0, 0, "map is not a bijection"};
    seen[v] = 1;
  }
  for (int x = 0; x < G.order(); ++x)
    for (int y = 0; y < G.order(); ++y)
      if (map[G.mul(x, y)] != H.mul(map[x], map[y])) return IsoViolation{x, y, "product not preserved"};
  return std::nullopt;
}

inline std::optional<std::vector<int>> brute_iso(const FiniteGroup& G, const FiniteGroup& H,
                                                 std::uint64_t node_cap = 50000000) {
  if (G.order() > 200 || H.order() > 200) throw BudgetExceeded("brute_iso limited to order <= 200");
  if (G.order() != H.order()) return std::nullopt;
  auto a = detail::element_invariants(G), b = detail::element_invariants(H);
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  if (!(a == b)) return std::nullopt;
  detail::IsoSearch S(G, H, node_cap);
  std::optional<std::vector<int>> found;
  S.search({}, [&](const std::vector<int>& phi) {
    found = phi;
    return false;
  });
  if (found && verify_isomorphism(G, H, *found)) throw VerificationFailure("brute_iso produced a non-isomorphism");
  return found;
}

struct BruteAut {
  PermGroup group;  // acting on the elements of G
  std::uint64_t order = 0;
};

// Full automorphism group via a stabilizer chain on a generating tuple:
// level i collects automorphisms fixing g_0..g_{i-1} and moving g_i around its orbit.
inline BruteAut brute_aut(const FiniteGroup& G, std::uint64_t node_cap = 50000000) {
  if (G.order() > 200) throw BudgetExceeded("brute_aut limited to order <= 200");
  const int n = G.order();
  detail::IsoSearch S(G, G, node_cap);
  const auto& gens = S.gens();
  const int k = static_cast<int>(gens.size());
  const auto inv = detail::element_invariants(G);
  std::vector<Perm> auts;
  std::uint64_t order = 1;
  for (int i = k - 1; i >= 0; --i) {
    std::vector<char> in_orbit(n, 0);
    std::vector<int> orbit{gens[i]};
    in_orbit[gens[i]] = 1;
    auto close_orbit = [&]() {
      for (std::size_t a = 0; a < orbit.size(); ++a)
        for (const auto& p : auts) {
          int y = p[orbit[a]];
          if (!in_orbit[y]) {
            in_orbit[y] = 1;
            orbit.push_back(y);
          }
        }
    };
    close_orbit();
    std::vector<int> prefix(gens.begin(), gens.begin() + i);
    for (int y = 0; y < n; ++y) {
      if (in_orbit[y] || !(inv[y] == inv[gens[i]])) continue;
      auto pre = prefix;
      pre.push_back(y);
      std::optional<Perm> hit;
      S.search(pre, [&](const std::vector<int>& phi) {
        hit = phi;
        return false;
      });
      if (!hit) continue;
      auts.push_back(*hit);
      close_orbit();
    }
    order *= orbit.size();
  }
  for (const auto& p : auts)
    if (verify_isomorphism(G, G, p)) throw VerificationFailure("brute_aut produced a non-automorphism");
  BruteAut out{PermGroup(n, auts), order};
  if (out.group.order() != order) throw VerificationFailure("brute_aut: orbit product disagrees with BSGS order");
  return out;
}

// ------------------------------------------------------------------ modules

namespace detail {

inline bool next_matrix(Matrix& M, int q) {
  for (auto& x : M.a) {
    if (++x < q) return true;
    x = 0;
  }
  return false;
}

inline void require_small(const Field& F, int entries, double log2_cap) {
  if (entries * std::log2(static_cast<double>(F.q())) > log2_cap)
    throw BudgetExceeded("exhaustive search space too large");
}

}  // namespace detail

// Exhaustive: a nontrivial idempotent commuting with every generator.
inline bool brute_indecomposable(const Module& M) {
  detail::require_small(M.F, M.d * M.d, 20.0);
  const Field& F = M.F;
  Matrix e(M.d, M.d);
  while (detail::next_matrix(e, F.q())) {
    if (e.is_identity()) continue;
    if (mat_mul(F, e, e) != e) continue;
    bool commutes = true;
    for (const auto& A : M.gens)
      if (mat_mul(F, e, A) != mat_mul(F, A, e)) {
        commutes = false;
        break;
      }
    if (commutes) return false;
  }
  return true;
}

// Exhaustive GL(d, q) search for C with C M_i = N_i C.
inline std::optional<Matrix> brute_module_iso(const Module& M, const Module& N) {
  if (M.d != N.d) return std::nullopt;
  detail::require_small(M.F, M.d * M.d, 20.0);
  Matrix C(M.d, M.d);
  while (detail::next_matrix(C, M.F.q()))
    if (intertwines(M.F, C, M, N) && is_invertible(M.F, C)) return C;
  return std::nullopt;
}

// Exhaustive count of invertible elements of L.
inline std::uint64_t brute_unit_count(const MatrixAlgebra& L) {
  detail::require_small(L.F, L.dim(), 20.0);
  std::uint64_t count = 0;
  Vec c(L.dim(), 0);
  do {
    if (is_invertible(L.F, lin_comb(L.F, L.basis, c))) ++count;
  } while (detail::next_combination(c, L.F.q()));
  return count;
}

// Exhaustive radical of a unital algebra: {x : x y nilpotent for every y in L}.
inline std::vector<Matrix> brute_radical(const MatrixAlgebra& L) {
  detail::require_small(L.F, 2 * L.dim(), 20.0);
  const Field& F = L.F;
  std::vector<Matrix> elems;
  Vec c(L.dim(), 0);
  do elems.push_back(lin_comb(F, L.basis, c));
  while (detail::next_combination(c, F.q()));
  Echelon E(F, L.n * L.n);
  std::vector<Matrix> out;
  for (const auto& x : elems) {
    bool nil = true;
    for (const auto& y : elems)
      if (!is_nilpotent(F, mat_mul(F, x, y))) {
        nil = false;
        break;
      }
    if (nil && E.insert(x.a)) out.push_back(x);
  }
  return out;
}

}  // namespace gpi
