#pragma once

#include <algorithm>
#include <cstdint>
#include <functional>
#include <numeric>
#include <optional>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "gpi/error.hpp"

namespace gpi {

// p[x] is the image of x. Products read left to right: (a * b)[x] = b[a[x]].
using Perm = std::vector<int>;

inline Perm perm_identity(int t) {
  Perm p(t);
  std::iota(p.begin(), p.end(), 0);
  return p;
}

inline Perm perm_mul(const Perm& a, const Perm& b) {
  Perm c(a.size());
  for (std::size_t x = 0; x < a.size(); ++x) c[x] = b[a[x]];
  return c;
}

inline Perm perm_inv(const Perm& a) {
  Perm c(a.size());
  for (std::size_t x = 0; x < a.size(); ++x) c[a[x]] = static_cast<int>(x);
  return c;
}

inline bool perm_is_identity(const Perm& a) {
  for (std::size_t x = 0; x < a.size(); ++x)
    if (a[x] != static_cast<int>(x)) return false;
  return true;
}

inline bool is_permutation(const Perm& a, int t) {
  if (static_cast<int>(a.size()) != t) return false;
  std::vector<char> seen(t, 0);
  for (int v : a) {
    if (v < 0 || v >= t || seen[v]) return false;
    seen[v] = 1;
  }
  return true;
}

// Base and strong generating set built by deterministic Schreier-Sims.
class PermGroup {
 public:
  struct Level {
    int point = 0;
    std::vector<Perm> gens;   // strong generators fixing all earlier base points
    std::vector<int> orbit;   // BFS order from point
    std::vector<int> where;   // point -> index into reps, or -1
    std::vector<Perm> reps;   // reps[k] maps point to orbit[k]
  };

  PermGroup() = default;

  // Base points are taken from base_prefix first, then smallest moved point.
  PermGroup(int degree, const std::vector<Perm>& gens, const std::vector<int>& base_prefix = {})
      : degree_(degree) {
    for (const auto& g : gens)
      if (!is_permutation(g, degree))
        throw InvalidInput("permutation generator has inconsistent degree or is not a bijection");
    for (int b : base_prefix) {
      if (b < 0 || b >= degree) throw InvalidInput("base point out of range");
      if (std::find(base_.begin(), base_.end(), b) == base_.end()) base_.push_back(b);
    }
    for (const auto& g : gens)
      if (!perm_is_identity(g)) gens_.push_back(g);
    schreier_sims();
  }

  int degree() const { return degree_; }
  const std::vector<Perm>& generators() const { return gens_; }
  const std::vector<int>& base() const { return base_; }
  const std::vector<Level>& levels() const { return levels_; }

  std::uint64_t order() const {
    std::uint64_t r = 1;
    for (const auto& L : levels_) r *= L.orbit.size();
    return r;
  }

  // Residue after sifting from level `from`; second is the level where sifting stopped.
  std::pair<Perm, int> sift(Perm g, int from = 0) const {
    const int k = static_cast<int>(levels_.size());
    for (int i = from; i < k; ++i) {
      const auto& L = levels_[i];
      int beta = g[L.point];
      int w = L.where[beta];
      if (w < 0) return {g, i};
      g = perm_mul(g, perm_inv(L.reps[w]));
    }
    return {g, k};
  }

  bool contains(const Perm& g) const {
    if (static_cast<int>(g.size()) != degree_) return false;
    auto [r, lvl] = sift(g);
    return lvl == static_cast<int>(levels_.size()) && perm_is_identity(r);
  }

  // Same group with a new base prefix.
  PermGroup with_base(const std::vector<int>& prefix) const { return PermGroup(degree_, strong_generators(), prefix); }

  // Pointwise stabilizer of the first `lvl` base points, as its own BSGS.
  PermGroup chain_tail(int lvl) const {
    PermGroup H;
    H.degree_ = degree_;
    if (lvl < static_cast<int>(levels_.size())) {
      H.levels_.assign(levels_.begin() + lvl, levels_.end());
      H.gens_ = levels_[lvl].gens;
    }
    for (const auto& L : H.levels_) H.base_.push_back(L.point);
    return H;
  }

  std::vector<Perm> strong_generators() const {
    std::vector<Perm> out = gens_;
    for (const auto& L : levels_)
      for (const auto& g : L.gens)
        if (std::find(out.begin(), out.end(), g) == out.end()) out.push_back(g);
    return out;
  }

  // All elements; only for small groups.
  std::vector<Perm> elements(std::uint64_t cap = 1000000) const {
    if (order() > cap) throw BudgetExceeded("element enumeration exceeds cap");
    std::vector<Perm> out{perm_identity(degree_)};
    for (int i = static_cast<int>(levels_.size()) - 1; i >= 0; --i) {
      std::vector<Perm> next;
      for (const auto& h : out)
        for (const auto& u : levels_[i].reps) next.push_back(perm_mul(h, u));
      out = std::move(next);
    }
    return out;
  }

 private:
  void compute_orbit(Level& L) const {
    L.orbit.assign(1, L.point);
    L.where.assign(degree_, -1);
    L.reps.assign(1, perm_identity(degree_));
    L.where[L.point] = 0;
    for (std::size_t k = 0; k < L.orbit.size(); ++k)
      for (const auto& s : L.gens) {
        int y = s[L.orbit[k]];
        if (L.where[y] >= 0) continue;
        L.where[y] = static_cast<int>(L.orbit.size());
        L.orbit.push_back(y);
        L.reps.push_back(perm_mul(L.reps[k], s));
      }
  }

  static int first_moved(const Perm& g) {
    for (std::size_t x = 0; x < g.size(); ++x)
      if (g[x] != static_cast<int>(x)) return static_cast<int>(x);
    return -1;
  }

  bool fixes_base(const Perm& g, int upto) const {
    for (int j = 0; j < upto; ++j)
      if (g[base_[j]] != base_[j]) return false;
    return true;
  }

  void schreier_sims() {
    for (const auto& g : gens_)
      if (fixes_base(g, static_cast<int>(base_.size()))) base_.push_back(first_moved(g));
    levels_.assign(base_.size(), Level{});
    for (std::size_t i = 0; i < base_.size(); ++i) {
      levels_[i].point = base_[i];
      for (const auto& g : gens_)
        if (fixes_base(g, static_cast<int>(i))) levels_[i].gens.push_back(g);
      compute_orbit(levels_[i]);
    }
    int i = static_cast<int>(levels_.size()) - 1;
    while (i >= 0) {
      bool restart = false;
      // L may dangle after a new level is appended; the loops exit first.
      Level& L = levels_[i];
      for (std::size_t k = 0; !restart && k < L.orbit.size(); ++k)
        for (std::size_t si = 0; !restart && si < L.gens.size(); ++si) {
          const Perm& s = L.gens[si];
          int img = s[L.orbit[k]];
          Perm h = perm_mul(perm_mul(L.reps[k], s), perm_inv(L.reps[L.where[img]]));
          auto [y, j] = sift(h, i + 1);
          const int depth = static_cast<int>(levels_.size());
          if (j == depth && perm_is_identity(y)) continue;
          if (j == depth) {
            base_.push_back(first_moved(y));
            Level nl;
            nl.point = base_.back();
            levels_.push_back(nl);
          }
          for (int l = i + 1; l <= j && l < static_cast<int>(levels_.size()); ++l) {
            levels_[l].gens.push_back(y);
            compute_orbit(levels_[l]);
          }
          i = std::min(j, static_cast<int>(levels_.size()) - 1);
          restart = true;
        }
      if (!restart) --i;
    }
  }

  int degree_ = 0;
  std::vector<Perm> gens_;
  std::vector<int> base_;
  std::vector<Level> levels_;
};

struct PermCoset {
  bool empty = true;
  Perm rep;             // representative
  PermGroup subgroup;   // coset = subgroup * rep
};

inline PermCoset point_transporter(const PermGroup& P, int x, int y) {
  if (x < 0 || y < 0 || x >= P.degree() || y >= P.degree()) throw InvalidInput("point out of range");
  PermGroup B = P.with_base({x});
  PermCoset C;
  C.subgroup = B.chain_tail(1);
  const auto& L = B.levels()[0];
  if (L.where[y] < 0) return C;
  C.empty = false;
  C.rep = L.reps[L.where[y]];
  return C;
}

struct TransporterStats {
  std::uint64_t nodes = 0;
};

// {g in P : S^g = T} by backtracking over a stabilizer chain whose base
// starts with the points of S. Elements are g = u_{k-1} ... u_0 so that
// b_i^g = b_i^{u_i u_{i-1} ... u_0}.
inline PermCoset setwise_transporter(const PermGroup& P, std::vector<int> S, std::vector<int> T,
                                     std::uint64_t node_cap = 1000000, TransporterStats* stats = nullptr) {
  if (S.size() != T.size()) throw InvalidInput("setwise_transporter: |S| != |T|");
  std::sort(S.begin(), S.end());
  std::sort(T.begin(), T.end());
  if (std::adjacent_find(S.begin(), S.end()) != S.end() || std::adjacent_find(T.begin(), T.end()) != T.end())
    throw InvalidInput("setwise_transporter: repeated points");
  const int t = P.degree();
  for (int v : S)
    if (v < 0 || v >= t) throw InvalidInput("setwise_transporter: point out of range");
  for (int v : T)
    if (v < 0 || v >= t) throw InvalidInput("setwise_transporter: point out of range");
  const int k = static_cast<int>(S.size());
  PermGroup B = P.with_base(S);
  PermGroup pointwise = B.chain_tail(k);

  std::vector<char> inT(t, 0);
  for (int v : T) inT[v] = 1;
  std::uint64_t nodes = 0;
  PermCoset C;
  Perm rinv;
  // Setwise stabilizer of S is generated by the pointwise stabilizer and leaf * rep^-1.
  std::vector<Perm> gens = pointwise.strong_generators();
  PermGroup cur(t, gens);

  std::function<void(int, const Perm&)> rec = [&](int i, const Perm& prod) {
    if (++nodes > node_cap) throw BudgetExceeded("setwise transporter node budget exceeded");
    if (i == k) {
      if (C.empty) {
        C.empty = false;
        C.rep = prod;
        rinv = perm_inv(prod);
        return;
      }
      Perm h = perm_mul(prod, rinv);
      if (cur.contains(h)) return;
      gens.push_back(std::move(h));
      cur = PermGroup(t, gens);
      return;
    }
    const auto& L = B.levels()[i];
    for (std::size_t w = 0; w < L.orbit.size(); ++w) {
      if (!inT[prod[L.orbit[w]]]) continue;
      rec(i + 1, perm_mul(L.reps[w], prod));
    }
  };
  rec(0, perm_identity(t));
  if (stats) stats->nodes = nodes;
  if (!C.empty) C.subgroup = cur;
  return C;
}

// Orbit of `start` and its stabilizer, for a group given faithfully by
// permutations `gens` acting on an abstract point set through act(point, gen index).
// Points are opaque 64-bit codes. Stops collecting Schreier generators once
// |orbit| * |stabilizer| reaches group_order (when group_order > 0).
struct OrbitStabilizer {
  std::vector<std::uint64_t> orbit;
  std::vector<Perm> transversal;  // transversal[k] maps start to orbit[k]
  PermGroup stabilizer;
};

template <class Act>
OrbitStabilizer orbit_stabilizer(int degree, const std::vector<Perm>& gens, std::uint64_t start, Act act,
                                 std::uint64_t group_order = 0, std::uint64_t orbit_cap = 1000000) {
  OrbitStabilizer R;
  std::unordered_map<std::uint64_t, int> pos;
  auto find = [&](std::uint64_t c) -> int {
    auto it = pos.find(c);
    return it == pos.end() ? -1 : it->second;
  };
  auto add = [&](std::uint64_t c, Perm u) {
    pos.emplace(c, static_cast<int>(R.orbit.size()));
    R.orbit.push_back(c);
    R.transversal.push_back(std::move(u));
  };
  add(start, perm_identity(degree));
  for (std::size_t k = 0; k < R.orbit.size(); ++k)
    for (std::size_t g = 0; g < gens.size(); ++g) {
      std::uint64_t y = act(R.orbit[k], static_cast<int>(g));
      if (find(y) < 0) {
        if (R.orbit.size() >= orbit_cap) throw BudgetExceeded("orbit exceeds budget");
        add(y, perm_mul(R.transversal[k], gens[g]));
      }
    }
  std::vector<Perm> sgens;
  PermGroup stab(degree, {});
  for (std::size_t k = 0; k < R.orbit.size(); ++k) {
    for (std::size_t g = 0; g < gens.size(); ++g) {
      if (group_order && stab.order() * R.orbit.size() >= group_order) break;
      std::uint64_t y = act(R.orbit[k], static_cast<int>(g));
      Perm h = perm_mul(perm_mul(R.transversal[k], gens[g]), perm_inv(R.transversal[find(y)]));
      if (perm_is_identity(h) || stab.contains(h)) continue;
      sgens.push_back(h);
      stab = PermGroup(degree, sgens);
    }
  }
  R.stabilizer = stab;
  return R;
}

}  // namespace gpi
