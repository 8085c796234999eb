#pragma once

#include <cstdint>
#include <string>
#include <unordered_map>
#include <vector>

#include "gpi/error.hpp"
#include "gpi/group.hpp"
#include "gpi/linalg.hpp"
#include "gpi/perm_group.hpp"
#include "gpi/rep.hpp"

namespace gpi {

// (alpha, beta) in GL(d, p) x Aut(Q), acting on representations by
// theta^(alpha, beta)(q) = alpha theta(beta^-1 q) alpha^-1. The action is on the
// right, so (a, b)(a', b') = (a' a, b then b').
struct Pair {
  Matrix alpha;
  Perm beta;
};

inline Pair pair_identity(int d, int n) { return {Matrix::identity(d), perm_identity(n)}; }

inline Pair pair_mul(const Field& F, const Pair& x, const Pair& y) {
  return {mat_mul(F, y.alpha, x.alpha), perm_mul(x.beta, y.beta)};
}

inline Pair pair_inv(const Field& F, const Pair& x) { return {inverse_or_throw(F, x.alpha), perm_inv(x.beta)}; }

inline bool is_automorphism(const FiniteGroup& Q, const Perm& beta) {
  if (!is_permutation(beta, Q.order())) return false;
  for (int x = 0; x < Q.order(); ++x)
    for (int y = 0; y < Q.order(); ++y)
      if (beta[Q.mul(x, y)] != Q.mul(beta[x], beta[y])) return false;
  return true;
}

// theta^beta(q) = theta(beta^-1 q).
inline Representation rep_pullback(const Representation& R, const Perm& beta) {
  if (!is_automorphism(R.G(), beta)) throw InvalidInput("rep_pullback: beta is not an automorphism");
  Perm bi = perm_inv(beta);
  Representation out{R.group, R.F, R.d, std::vector<Matrix>(R.images.size())};
  for (int q = 0; q < R.G().order(); ++q) out.images[q] = R.images[bi[q]];
  return out;
}

inline Representation rep_act(const Representation& R, const Pair& x) {
  Representation pb = rep_pullback(R, x.beta);
  return conjugate_rep(pb, x.alpha);
}

inline bool reps_equal(const Representation& a, const Representation& b) { return a.images == b.images; }

// Faithful permutation image on Q ⊔ V: beta on the first n points, v -> alpha v
// on V. V is the orbit of the unit vectors under the alphas of `gens` (all of
// GF(q)^d when gens is empty), so only elements of <gens> can be converted.
class PairDomain {
 public:
  PairDomain(const Field& F, int n, int d, const std::vector<Pair>& gens = {}, std::size_t cap = 200000)
      : F_(F), n_(n), d_(d) {
    if (gens.empty()) {
      std::uint64_t total = 1;
      for (int i = 0; i < d; ++i) {
        total *= static_cast<std::uint64_t>(F.q());
        if (total > cap) throw BudgetExceeded("GF(q)^d too large for a permutation domain");
      }
      for (std::uint64_t c = 0; c < total; ++c) add(vec_of(c));
      return;
    }
    for (int j = 0; j < d; ++j) {
      Vec e(d, 0);
      e[j] = 1;
      if (index_.find(code_of(e)) == index_.end()) add(e);
    }
    for (std::size_t k = 0; k < vecs_.size(); ++k)
      for (const auto& g : gens) {
        Vec w = mat_vec(F_, g.alpha, vecs_[k]);
        if (index_.find(code_of(w)) != index_.end()) continue;
        if (vecs_.size() >= cap) throw BudgetExceeded("vector orbit too large for a permutation domain");
        add(std::move(w));
      }
  }

  int degree() const { return n_ + static_cast<int>(vecs_.size()); }
  int vectors() const { return static_cast<int>(vecs_.size()); }

  Perm to_perm(const Pair& x) const {
    Perm p(degree());
    for (int q = 0; q < n_; ++q) p[q] = x.beta[q];
    for (std::size_t v = 0; v < vecs_.size(); ++v) {
      auto it = index_.find(code_of(mat_vec(F_, x.alpha, vecs_[v])));
      if (it == index_.end()) throw InvalidInput("pair does not preserve the vector domain");
      p[n_ + v] = n_ + it->second;
    }
    return p;
  }

  Pair to_pair(const Perm& p) const {
    Pair x{Matrix(d_, d_), Perm(p.begin(), p.begin() + n_)};
    for (int j = 0; j < d_; ++j) {
      Vec e(d_, 0);
      e[j] = 1;
      const Vec& col = vecs_[p[n_ + index_.at(code_of(e))] - n_];
      for (int i = 0; i < d_; ++i) x.alpha(i, j) = col[i];
    }
    return x;
  }

 private:
  std::uint64_t code_of(const Vec& v) const {
    std::uint64_t c = 0;
    for (int i = d_ - 1; i >= 0; --i) c = c * F_.q() + v[i];
    return c;
  }
  Vec vec_of(std::uint64_t c) const {
    Vec v(d_);
    for (auto& x : v) {
      x = static_cast<Elt>(c % F_.q());
      c /= F_.q();
    }
    return v;
  }
  void add(Vec v) {
    index_.emplace(code_of(v), static_cast<int>(vecs_.size()));
    vecs_.push_back(std::move(v));
  }

  Field F_;
  int n_ = 0;
  int d_ = 0;
  std::vector<Vec> vecs_;
  std::unordered_map<std::uint64_t, int> index_;
};

}  // namespace gpi
