#pragma once

#include <algorithm>
#include <cstdint>
#include <functional>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "gpi/error.hpp"
#include "gpi/linalg.hpp"
#include "gpi/module.hpp"
#include "gpi/pairs.hpp"
#include "gpi/perm_group.hpp"
#include "gpi/rep.hpp"

namespace gpi {

struct ActCompOptions {
  std::uint64_t closure_budget = 10000;
  std::uint64_t transporter_budget = 1000000;
  std::uint64_t seed = 0;
};

// Pairwise non-isomorphic indecomposables closed under the given automorphisms.
struct ClosureTable {
  std::vector<Representation> items;
  std::vector<Perm> gen_actions;  // gen_actions[k][i] = index of items[i]^{beta_k}

  int size() const { return static_cast<int>(items.size()); }
};

namespace detail {

// rank(theta(q) - I) for every q: invariant under isomorphism.
inline std::vector<int> rep_fingerprint(const Representation& R) {
  std::vector<int> f{R.d};
  for (const auto& A : R.images) f.push_back(rank(R.F, mat_sub(R.F, A, Matrix::identity(R.d))));
  return f;
}

class ClosureIndex {
 public:
  explicit ClosureIndex(std::uint64_t seed) : seed_(seed) {}

  int find(const Representation& R) const {
    auto it = buckets_.find(rep_fingerprint(R));
    if (it == buckets_.end()) return -1;
    for (int i : it->second)
      if (rep_isomorphism(items_[i], R, seed_).isomorphic) return i;
    return -1;
  }

  int add(const Representation& R) {
    items_.push_back(R);
    buckets_[rep_fingerprint(R)].push_back(static_cast<int>(items_.size()) - 1);
    return static_cast<int>(items_.size()) - 1;
  }

  std::vector<Representation>& items() { return items_; }

 private:
  std::uint64_t seed_;
  std::vector<Representation> items_;
  std::map<std::vector<int>, std::vector<int>> buckets_;
};

}  // namespace detail

inline ClosureTable clo_closure(const std::vector<Representation>& S, const std::vector<Perm>& autQ,
                                std::uint64_t budget = 10000, std::uint64_t seed = 0) {
  detail::ClosureIndex idx(seed);
  for (const auto& R : S) {
    if (!rep_is_indecomposable(R)) throw InvalidInput("clo_closure: input is not indecomposable");
    if (!idx.items().empty()) check_same_setting(idx.items()[0], R);
    if (idx.find(R) < 0) idx.add(R);
  }
  for (const auto& b : autQ)
    if (!idx.items().empty() && !is_automorphism(idx.items()[0].G(), b))
      throw InvalidInput("clo_closure: generator is not an automorphism");
  std::vector<std::vector<int>> act(autQ.size());
  for (std::size_t i = 0; i < idx.items().size(); ++i)
    for (std::size_t k = 0; k < autQ.size(); ++k) {
      Representation img = rep_pullback(idx.items()[i], autQ[k]);
      int j = idx.find(img);
      if (j < 0) {
        if (idx.items().size() >= budget)
          throw BudgetExceeded("closure blow-up - likely wild input (more than " + std::to_string(budget) +
                               " indecomposables)");
        j = idx.add(img);
      }
      act[k].push_back(j);
    }
  ClosureTable T{std::move(idx.items()), {}};
  for (auto& a : act) {
    if (!is_permutation(a, T.size())) throw VerificationFailure("closure action is not a permutation");
    T.gen_actions.push_back(std::move(a));
  }
  return T;
}

// H-part generators plus one witness per K-generator; checked against in_target and,
// when expected_order is given, against the BSGS order (and an exhaustive closure up to 10^4).
inline std::vector<Pair> semidirect_generators(const Field& F, int n, int d, const std::vector<Pair>& h_gens,
                                               const std::vector<Pair>& witnesses,
                                               const std::function<bool(const Pair&)>& in_target,
                                               std::uint64_t expected_order = 0) {
  std::vector<Pair> out = h_gens;
  out.insert(out.end(), witnesses.begin(), witnesses.end());
  for (const auto& x : out)
    if (!in_target(x)) throw VerificationFailure("semidirect_generators: pair outside the target group");
  if (expected_order) {
    PairDomain dom(F, n, d, out);
    std::vector<Perm> perms;
    for (const auto& x : out) perms.push_back(dom.to_perm(x));
    PermGroup P(dom.degree(), perms);
    if (P.order() != expected_order)
      throw VerificationFailure("generated group has order " + std::to_string(P.order()) + ", expected " +
                                std::to_string(expected_order));
    if (expected_order <= 10000 && P.elements(10000).size() != expected_order)
      throw VerificationFailure("exhaustive closure disagrees with the stabilizer chain");
  }
  return out;
}

// {(alpha, beta) : theta^(alpha, beta) = eta} = <generators> * representative.
struct CompatCoset {
  bool empty = true;
  Pair representative;
  std::vector<Pair> generators;  // stabilizer of theta
  std::uint64_t stabilizer_order = 0;
  ClosureTable closure;
  std::string reason;  // why the coset is empty
};

inline CompatCoset action_compatibility(const Representation& theta, const Representation& eta,
                                        const std::vector<Perm>& autQ, const ActCompOptions& opt = {}) {
  check_same_setting(theta, eta);
  if (theta.d != eta.d) throw InvalidInput("action_compatibility: dimensions differ");
  const FiniteGroup& Q = theta.G();
  const int n = Q.order(), d = theta.d;
  const Field& F = theta.F;
  for (const auto& b : autQ)
    if (!is_automorphism(Q, b)) throw InvalidInput("action_compatibility: generator is not an automorphism");
  CompatCoset out;
  auto dt = decompose_rep(theta, opt.seed), de = decompose_rep(eta, opt.seed);
  auto shape = [](const RepDecomposition& D) {
    std::vector<std::pair<int, int>> s;
    for (const auto& x : D.summands) s.emplace_back(x.rep.d, x.multiplicity);
    std::sort(s.begin(), s.end());
    return s;
  };
  if (shape(dt) != shape(de)) {
    out.reason = "summand dimension/multiplicity multisets differ";
    return out;
  }
  std::vector<Representation> S;
  for (const auto& x : dt.summands) S.push_back(x.rep);
  for (const auto& x : de.summands) S.push_back(x.rep);
  out.closure = clo_closure(S, autQ, opt.closure_budget, opt.seed);
  const ClosureTable& T = out.closure;
  auto locate = [&](const Representation& R) {
    for (int i = 0; i < T.size(); ++i)
      if (T.items[i].d == R.d && rep_isomorphism(T.items[i], R, opt.seed).isomorphic) return i;
    throw VerificationFailure("summand missing from its closure");
  };
  std::map<int, std::vector<int>, std::greater<>> by_mult_theta, by_mult_eta;
  for (const auto& x : dt.summands) by_mult_theta[x.multiplicity].push_back(n + locate(x.rep));
  for (const auto& x : de.summands) by_mult_eta[x.multiplicity].push_back(n + locate(x.rep));

  // Aut(Q) acting on Q ⊔ Clo.
  const int deg = n + T.size();
  std::vector<Perm> gens;
  for (std::size_t k = 0; k < autQ.size(); ++k) {
    Perm g(deg);
    for (int q = 0; q < n; ++q) g[q] = autQ[k][q];
    for (int i = 0; i < T.size(); ++i) g[n + i] = n + T.gen_actions[k][i];
    gens.push_back(std::move(g));
  }
  PermGroup H(deg, gens);
  Perm rep = perm_identity(deg);
  // Coset H * rep; transport each multiplicity class inside the previous stabilizer.
  for (const auto& [m, src] : by_mult_theta) {
    std::vector<int> dst;
    Perm ri = perm_inv(rep);
    for (int v : by_mult_eta.at(m)) dst.push_back(ri[v]);
    PermCoset C = setwise_transporter(H, src, dst, opt.transporter_budget);
    if (C.empty) {
      out.reason = "no automorphism matches the multiplicity-" + std::to_string(m) + " summands";
      return out;
    }
    H = C.subgroup;
    rep = perm_mul(C.rep, rep);
  }

  auto beta_of = [&](const Perm& g) { return Perm(g.begin(), g.begin() + n); };
  const Perm beta0 = beta_of(rep);
  auto a0 = rep_isomorphism(rep_pullback(theta, beta0), eta, opt.seed);
  if (!a0.isomorphic) throw VerificationFailure("transported automorphism does not make the actions isomorphic");
  out.empty = false;
  out.representative = Pair{a0.C, beta0};

  std::vector<Pair> linear, witnesses;
  for (const auto& u : rep_unit_group(theta, opt.seed)) linear.push_back(Pair{u, perm_identity(n)});
  for (const auto& g : H.generators()) {
    Perm b = beta_of(g);
    auto a = rep_isomorphism(rep_pullback(theta, b), theta, opt.seed);
    if (!a.isomorphic) throw VerificationFailure("stabilizing automorphism has no linear partner");
    witnesses.push_back(Pair{a.C, b});
  }
  PairDomain dom(F, n, d, linear);
  std::vector<Perm> up;
  for (const auto& x : linear) up.push_back(dom.to_perm(x));
  const std::uint64_t units = PermGroup(dom.degree(), up).order();
  out.stabilizer_order = units * H.order();
  auto fixes = [&](const Pair& x) { return reps_equal(rep_act(theta, x), theta); };
  out.generators = semidirect_generators(F, n, d, linear, witnesses, fixes, out.stabilizer_order);
  if (!reps_equal(rep_act(theta, out.representative), eta))
    throw VerificationFailure("compatibility representative fails elementwise");
  return out;
}

}  // namespace gpi
