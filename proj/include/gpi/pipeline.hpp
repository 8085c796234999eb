#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "gpi/action_compat.hpp"
#include "gpi/brute.hpp"
#include "gpi/cohomology.hpp"
#include "gpi/error.hpp"
#include "gpi/group.hpp"
#include "gpi/pairs.hpp"
#include "gpi/perm_group.hpp"
#include "gpi/rep.hpp"

namespace gpi {

struct PipelineOptions {
  ActCompOptions act;
  std::uint64_t h2_budget = 1000000;
  std::uint64_t brute_cap = 50000000;
  std::string functor = "layer";  // layer | center | derived | o_p_of_radical
};

// Iso(G, H) = { a then witness : a in <aut_generators> }.
struct IsoCoset {
  bool empty = true;
  std::vector<int> witness;
  std::vector<Perm> aut_generators;
  std::uint64_t aut_order = 0;
};

struct TamenessReport {
  int p = 0;
  std::string sylow_type;  // trivial | cyclic | dihedral(m) | semidihedral(m) | quaternion(m) | wild
  bool tame() const { return sylow_type != "wild"; }
};

inline std::uint64_t perm_group_order(int degree, const std::vector<Perm>& gens) {
  return PermGroup(degree, gens).order();
}

// Verified witness and generators; spot-checks witness after each generator.
inline void verify_iso_coset(const FiniteGroup& G, const FiniteGroup& H, const IsoCoset& C) {
  if (C.empty) return;
  if (auto v = verify_isomorphism(G, H, C.witness)) throw VerificationFailure("iso witness invalid: " + v->what);
  for (const auto& a : C.aut_generators) {
    if (auto v = verify_isomorphism(G, G, a)) throw VerificationFailure("automorphism invalid: " + v->what);
    Perm comp = perm_mul(a, C.witness);
    for (int x = 0; x < G.order(); x += 1 + G.order() / 8)
      for (int y = 0; y < G.order(); y += 1 + G.order() / 8)
        if (comp[G.mul(x, y)] != H.mul(comp[x], comp[y]))
          throw VerificationFailure("automorphism followed by witness is not an isomorphism");
  }
}

inline TamenessReport tameness_report(const FiniteGroup& Q, int p) {
  TamenessReport R{p, "trivial"};
  Subgroup P = sylow_subgroup(Q, p);
  if (P.size() == 1) return R;
  SubgroupGroup S = subgroup_as_group(Q, P);
  bool cyclic = false;
  for (int x = 0; x < S.group.order(); ++x)
    if (element_order(S.group, x) == S.group.order()) cyclic = true;
  if (cyclic) {
    R.sylow_type = "cyclic";
  } else if (p == 2) {
    TameType t = recognize_tame_2group(S.group);
    R.sylow_type = t.kind == TameType::kNone ? "wild" : t.name() + "(" + std::to_string(t.m) + ")";
  } else {
    R.sylow_type = "wild";
  }
  return R;
}

// ------------------------------------------------------------------ EDPC

struct EdpcResult {
  bool empty = true;
  Pair representative;           // theta^rep = eta and f^rep - g = b_u
  std::vector<Pair> generators;  // stabilizer of (theta, [f])
  std::uint64_t stabilizer_order = 0;
  CoboundaryWitness witness;
  std::string reason;
};

inline EdpcResult edpc(const Representation& theta, const Cocycle& f, const Representation& eta, const Cocycle& g,
                       const std::vector<Perm>& autQ, const PipelineOptions& opt = {}) {
  require_cocycle(theta, f);
  require_cocycle(eta, g);
  EdpcResult out;
  CompatCoset C = action_compatibility(theta, eta, autQ, opt.act);
  if (C.empty) {
    out.reason = "actions incompatible: " + C.reason;
    return out;
  }
  const Field& F = theta.F;
  const FiniteGroup& Q = theta.G();
  // g pulled back to theta's action.
  Pair x0 = C.representative;
  Cocycle g0 = cocycle_action(Q, g, pair_inv(F, x0));
  require_cocycle(theta, g0);
  CCIsoResult R = cciso(theta, f, g0, C.generators, opt.h2_budget);
  out.generators = R.generators;
  out.stabilizer_order = R.stabilizer_order;
  if (R.empty) {
    out.reason = "no compatible pair matches the cohomology classes";
    return out;
  }
  out.empty = false;
  out.representative = pair_mul(F, R.representative, x0);
  if (!reps_equal(rep_act(theta, out.representative), eta)) throw VerificationFailure("edpc pair fails on actions");
  auto w = CohomologySpace(eta).cohomologous(cocycle_action(Q, f, out.representative), g);
  if (!w) throw VerificationFailure("edpc pair fails on cohomology classes");
  out.witness = *w;
  return out;
}

// ------------------------------------------------------------------ layers

// Layer subgroups are characteristic, so every isomorphism G -> H maps S(G) onto S(H).
inline Subgroup layer_subgroup(const FiniteGroup& G, const std::string& functor, int* prime = nullptr) {
  auto largest_op = [&](int& p) {
    Subgroup R = solvable_radical(G);
    Subgroup best = Subgroup::trivial(G.order());
    p = 0;
    for (int q : prime_divisors(R.size())) {
      Subgroup O = o_p_subgroup(G, q);
      if (O.size() > 1) {
        best = O;
        p = q;
      }
    }
    return best;
  };
  int p = 0;
  Subgroup S;
  if (functor == "center") {
    S = center(G);
  } else if (functor == "derived") {
    S = derived_subgroup(G);
  } else if (functor == "o_p_of_radical") {
    S = largest_op(p);
  } else if (functor == "layer") {
    // Elements of order p in Z(O_p(rad G)).
    Subgroup O = largest_op(p);
    std::vector<int> els{0};
    for (int x : O.elements) {
      bool central = true;
      for (int y : O.elements)
        if (G.mul(x, y) != G.mul(y, x)) {
          central = false;
          break;
        }
      if (central && x != 0 && element_order(G, x) == p) els.push_back(x);
    }
    S = Subgroup::from_elements(G.order(), els);
  } else {
    throw InvalidInput("unknown functor '" + functor + "' (expected layer, center, derived or o_p_of_radical)");
  }
  if (prime) {
    auto ps = prime_divisors(S.size());
    *prime = ps.empty() ? 0 : ps.back();
  }
  return S;
}

// ------------------------------------------------------------------ lifting through one layer

struct LiftResult {
  IsoCoset coset;
  std::optional<TamenessReport> report;
  std::string reason;
};

namespace detail {

// a s(q) -> (alpha a + u(beta q)) t(phi(beta q)).
inline std::vector<int> assemble_iso(const FiniteGroup& G, const ExtensionData& X, const FiniteGroup& H,
                                     const ExtensionData& Y, const std::vector<int>& phi, const Pair& x,
                                     const Vec& u) {
  const Field F = Field::of(X.A.p);
  const int d = X.A.d;
  std::vector<int> map(G.order());
  for (int g = 0; g < G.order(); ++g) {
    const int q = X.quotient.proj[g];
    const int a_el = G.mul(g, G.inv(X.section[q]));
    const Vec& a = X.A.coords[a_el];
    const int r = x.beta[q];
    Vec b = mat_vec(F, x.alpha, a);
    for (int i = 0; i < d; ++i) b[i] = F.add(b[i], u[r * d + i]);
    map[g] = H.mul(Y.A.element_of(b), Y.section[phi[r]]);
  }
  return map;
}

}  // namespace detail

// Iso(G, H) from Iso(G/A, H/B) with A, B elementary abelian and normal.
inline LiftResult iso_from_layers(const FiniteGroup& G, const Subgroup& A, const FiniteGroup& H, const Subgroup& B,
                                  const IsoCoset& isoQ, const PipelineOptions& opt = {}) {
  LiftResult out;
  if (G.order() != H.order()) {
    out.reason = "orders differ";
    return out;
  }
  ExtensionData X = extension_data(G, A);
  if (A.size() != B.size()) {
    out.reason = "layer sizes differ";
    return out;
  }
  ExtensionData Y = extension_data(H, B);
  if (X.A.p != Y.A.p || X.A.d != Y.A.d) {
    out.reason = "layers are not isomorphic";
    return out;
  }
  out.report = tameness_report(X.quotient.group, X.A.p);
  if (isoQ.empty) {
    out.reason = "quotients are not isomorphic";
    return out;
  }
  const FiniteGroup& QG = X.quotient.group;
  const std::vector<int>& phi = isoQ.witness;
  if (auto v = verify_isomorphism(QG, Y.quotient.group, phi))
    throw InvalidInput("quotient isomorphism does not identify the quotients: " + v->what);
  // H's data transported to Q_G along phi.
  Representation eta{X.Q, X.theta.F, X.A.d, std::vector<Matrix>(QG.order())};
  Cocycle g = Cocycle::zero(QG.order(), X.A.p, X.A.d);
  for (int q = 0; q < QG.order(); ++q) {
    eta.images[q] = Y.theta.images[phi[q]];
    for (int r = 0; r < QG.order(); ++r) g.at(q, r) = Y.f.at(phi[q], phi[r]);
  }
  EdpcResult E;
  try {
    E = edpc(X.theta, X.f, eta, g, isoQ.aut_generators, opt);
  } catch (const BudgetExceeded& e) {
    throw BudgetExceeded(std::string(e.what()) + " [layer p=" + std::to_string(out.report->p) +
                         ", Sylow type of quotient: " + out.report->sylow_type + "]");
  }
  if (E.empty) {
    out.reason = E.reason;
    return out;
  }
  IsoCoset& C = out.coset;
  C.empty = false;
  C.witness = detail::assemble_iso(G, X, H, Y, phi, E.representative, E.witness.u);
  std::vector<int> id(QG.order());
  for (int q = 0; q < QG.order(); ++q) id[q] = q;
  CohomologySpace S(X.theta);
  for (const auto& s : E.generators) {
    auto w = S.cohomologous(cocycle_action(QG, X.f, s), X.f);
    if (!w) throw VerificationFailure("stabilizer pair moves the class of f");
    C.aut_generators.push_back(detail::assemble_iso(G, X, G, X, id, s, w->u));
  }
  for (const auto& z : z1_basis(X.theta))
    C.aut_generators.push_back(
        detail::assemble_iso(G, X, G, X, id, Pair{Matrix::identity(X.A.d), perm_identity(QG.order())}, z));
  C.aut_order = perm_group_order(G.order(), C.aut_generators);
  verify_iso_coset(G, H, C);
  return out;
}

inline LiftResult iso_from_quotient(const FiniteGroup& G, const FiniteGroup& H, const std::string& functor,
                                    const IsoCoset& isoQ, const PipelineOptions& opt = {}) {
  Subgroup A = layer_subgroup(G, functor), B = layer_subgroup(H, functor);
  for (const auto* S : {&A, &B}) {
    const FiniteGroup& K = S == &A ? G : H;
    auto chk = elem_ab_structure(K, *S);
    if (!chk.structure || chk.structure->d == 0)
      throw InvalidInput("functor '" + functor + "' image is not a nontrivial elementary abelian group" +
                         (chk.reason.empty() ? "" : ": " + chk.reason));
  }
  return iso_from_layers(G, A, H, B, isoQ, opt);
}

// ------------------------------------------------------------------ full driver

struct GpiResult {
  IsoCoset coset;
  std::vector<TamenessReport> layers;  // outermost first
  std::string reason;
};

inline IsoCoset brute_iso_coset(const FiniteGroup& G, const FiniteGroup& H, std::uint64_t cap) {
  IsoCoset C;
  auto w = brute_iso(G, H, cap);
  if (!w) return C;
  C.empty = false;
  C.witness = *w;
  BruteAut A = brute_aut(G, cap);
  C.aut_generators = A.group.generators();
  C.aut_order = A.order;
  return C;
}

inline GpiResult gpi_full(const FiniteGroup& G, const FiniteGroup& H, const PipelineOptions& opt = {}) {
  GpiResult out;
  if (G.order() != H.order()) {
    out.reason = "orders differ";
    return out;
  }
  Subgroup RG = solvable_radical(G), RH = solvable_radical(H);
  if (RG.size() != RH.size()) {
    out.reason = "solvable radicals differ in order";
    return out;
  }
  if (RG.size() == 1) {
    out.coset = brute_iso_coset(G, H, opt.brute_cap);
    if (out.coset.empty) out.reason = "no isomorphism (brute force on the radical-free quotient)";
    return out;
  }
  int pg = 0, ph = 0;
  Subgroup A = layer_subgroup(G, "layer", &pg), B = layer_subgroup(H, "layer", &ph);
  if (pg != ph || A.size() != B.size()) {
    out.reason = "canonical layers differ";
    return out;
  }
  Quotient QG = quotient_group(G, A), QH = quotient_group(H, B);
  GpiResult inner = gpi_full(QG.group, QH.group, opt);
  if (inner.coset.empty) {
    out.layers.push_back(tameness_report(QG.group, pg));
    out.layers.insert(out.layers.end(), inner.layers.begin(), inner.layers.end());
    out.reason = "quotients not isomorphic: " + inner.reason;
    return out;
  }
  LiftResult L = iso_from_layers(G, A, H, B, inner.coset, opt);
  if (L.report) out.layers.push_back(*L.report);
  out.layers.insert(out.layers.end(), inner.layers.begin(), inner.layers.end());
  out.coset = L.coset;
  out.reason = L.reason;
  return out;
}

// gpi_full, except that the outermost layer comes from opt.functor when it is not "layer".
inline GpiResult gpi_iso(const FiniteGroup& G, const FiniteGroup& H, const PipelineOptions& opt = {}) {
  if (opt.functor == "layer") return gpi_full(G, H, opt);
  GpiResult out;
  if (G.order() != H.order()) {
    out.reason = "orders differ";
    return out;
  }
  Subgroup A = layer_subgroup(G, opt.functor), B = layer_subgroup(H, opt.functor);
  if (A.size() != B.size()) {
    out.reason = "functor images differ in order";
    return out;
  }
  auto chk = elem_ab_structure(G, A);
  if (!chk.structure || chk.structure->d == 0)
    throw InvalidInput("functor '" + opt.functor + "' image is not a nontrivial elementary abelian group" +
                       (chk.reason.empty() ? "" : ": " + chk.reason));
  auto chk_h = elem_ab_structure(H, B);
  if (!chk_h.structure || chk_h.structure->p != chk.structure->p) {
    out.reason = "functor images are not isomorphic";
    return out;
  }
  Quotient QG = quotient_group(G, A), QH = quotient_group(H, B);
  PipelineOptions inner_opt = opt;
  inner_opt.functor = "layer";
  GpiResult inner = gpi_full(QG.group, QH.group, inner_opt);
  if (inner.coset.empty) {
    out.layers = inner.layers;
    out.reason = "quotients not isomorphic: " + inner.reason;
    return out;
  }
  LiftResult L = iso_from_layers(G, A, H, B, inner.coset, opt);
  if (L.report) out.layers.push_back(*L.report);
  out.layers.insert(out.layers.end(), inner.layers.begin(), inner.layers.end());
  out.coset = L.coset;
  out.reason = L.reason;
  return out;
}

}  // namespace gpi
