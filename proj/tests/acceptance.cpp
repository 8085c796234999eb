// Acceptance suite: one PASS/FAIL line per criterion; exit status 1 if any criterion fails.
// Every comparison is exact (no numeric tolerances anywhere).

#include <chrono>
#include <cstdio>
#include <functional>
#include <map>
#include <sstream>

#include "support.hpp"

namespace gpi {
namespace {

using testing::Rng;

struct Outcome {
  bool pass = true;
  std::ostringstream detail;
  std::string first_failure;

  void fail(const std::string& why) {
    if (pass) first_failure = why;
    pass = false;
  }
  void check(bool ok, const std::string& why) {
    if (!ok) fail(why);
  }
};

using Named = testing::NamedGroup;

// ------------------------------------------------------------------ corpus

Representation random_rep_of_dim(const GroupRef& grp, const Field& F, int d, Rng& rng) {
  for (;;) {
    Representation R = testing::random_representation(grp, F, d, rng);
    if (R.d == d) return R;
  }
}

std::vector<Named> tame_quotients() {
  return {{"Z2", cyclic_group(2)},          {"Z4", cyclic_group(4)},          {"S3", symmetric_group(3)},
          {"V4", dihedral_group(1)},        {"D8", dihedral_group(2)},        {"D16", dihedral_group(3)},
          {"SD16", semidihedral_group(3)},  {"Q8", quaternion_group(2)},      {"Q16", quaternion_group(3)}};
}

// Extensions of tame quotients by GF(p)^d with random action and random cocycle, order <= cap.
std::vector<Named> random_extensions(Rng& rng, int per_setting, int cap) {
  std::vector<Named> out;
  for (const auto& q : tame_quotients()) {
    auto grp = make_group_ref(q.G);
    for (int p : {2, 3, 5}) {
      Field F = Field::of(p);
      for (int d = 1, size = p; d <= 3 && q.G.order() * size <= cap; ++d, size *= p)
        for (int t = 0; t < per_setting; ++t) {
          Representation theta = random_rep_of_dim(grp, F, d, rng);
          CohomologySpace S(theta);
          Cocycle f = testing::random_cocycle(S, theta, rng);
          out.push_back({"ext(" + q.name + ",GF(" + std::to_string(p) + ")^" + std::to_string(d) + ")#" +
                             std::to_string(t),
                         extension_from_data(theta, f)});
        }
    }
  }
  return out;
}

std::vector<Named> constructed_groups() {
  std::vector<Named> out;
  for (int n : {2, 3, 4, 5, 6, 7, 8, 9, 10, 12, 16, 18, 24, 27, 32})
    out.push_back({"Z" + std::to_string(n), cyclic_group(n)});
  for (int m = 1; m <= 4; ++m) out.push_back({"D(m=" + std::to_string(m) + ")", dihedral_group(m)});
  for (int m = 3; m <= 4; ++m) out.push_back({"SD(m=" + std::to_string(m) + ")", semidihedral_group(m)});
  for (int m = 2; m <= 4; ++m) out.push_back({"Q(m=" + std::to_string(m) + ")", quaternion_group(m)});
  for (int k : {3, 5, 6, 9, 10, 12}) out.push_back({"Dih" + std::to_string(2 * k), dihedral_order(2 * k)});
  for (auto [p, d] : std::vector<std::pair<int, int>>{{2, 2}, {2, 3}, {2, 4}, {3, 2}, {3, 3}})
    out.push_back({"E" + std::to_string(p) + "^" + std::to_string(d), elem_ab_group(p, d)});
  out.push_back({"S3", symmetric_group(3)});
  out.push_back({"S4", symmetric_group(4)});
  out.push_back({"A4", alternating_group(4)});
  const std::vector<Named> factors{{"Z2", cyclic_group(2)}, {"Z3", cyclic_group(3)}, {"Z4", cyclic_group(4)},
                                   {"S3", symmetric_group(3)}, {"D8", dihedral_group(2)}, {"Q8", quaternion_group(2)},
                                   {"A4", alternating_group(4)}};
  // Products of two order-8 nonabelian groups are left out: their layer quotient is Z2^4,
  // whose Sylow 2-subgroup is wild, so the lift is budget-limited by design.
  auto wild_product = [&](std::size_t i, std::size_t j) { return factors[i].G.order() == 8 && factors[j].G.order() == 8; };
  for (std::size_t i = 0; i < factors.size(); ++i)
    for (std::size_t j = i; j < factors.size(); ++j)
      if (factors[i].G.order() * factors[j].G.order() <= 64 && !wild_product(i, j))
        out.push_back({factors[i].name + "x" + factors[j].name, direct_product(factors[i].G, factors[j].G)});
  return out;
}

// ------------------------------------------------------------------ criteria

// 1. End-to-end verdicts and |Aut| against brute force.
void criterion1(Outcome& o) {
  Rng rng(1001);
  std::vector<Named> groups = constructed_groups();
  for (auto& e : random_extensions(rng, 2, 64)) groups.push_back(std::move(e));
  std::map<int, std::vector<int>> by_order;
  for (int i = 0; i < static_cast<int>(groups.size()); ++i) by_order[groups[i].G.order()].push_back(i);

  std::vector<std::pair<Named, Named>> pairs;
  for (const auto& g : groups) pairs.push_back({g, {g.name + "'", testing::random_relabel(g.G, rng)}});
  for (const auto& [n, idx] : by_order)
    for (std::size_t a = 0; a + 1 < idx.size(); ++a) {
      const Named& x = groups[idx[a]];
      const Named& y = groups[idx[a + 1]];
      pairs.push_back({x, {y.name + "'", testing::random_relabel(y.G, rng)}});
    }

  int iso = 0, non = 0;
  std::map<std::string, std::uint64_t> aut_cache;
  for (const auto& [G, H] : pairs) {
    GpiResult R;
    try {
      R = gpi_full(G.G, H.G);
    } catch (const std::exception& e) {
      o.fail(G.name + " vs " + H.name + ": " + e.what());
      continue;
    }
    bool want = brute_iso(G.G, H.G).has_value();
    o.check(!R.coset.empty == want, "verdict mismatch on " + G.name + " vs " + H.name);
    if (!R.coset.empty) {
      ++iso;
      o.check(!verify_isomorphism(G.G, H.G, R.coset.witness), "unverified witness on " + G.name);
      auto it = aut_cache.find(G.name);
      if (it == aut_cache.end()) it = aut_cache.emplace(G.name, brute_aut(G.G).order).first;
      o.check(R.coset.aut_order == it->second, "|Aut| mismatch on " + G.name + ": " +
                                                   std::to_string(R.coset.aut_order) + " vs " +
                                                   std::to_string(it->second));
    } else {
      ++non;
    }
  }
  o.check(pairs.size() >= 200, "fewer than 200 pairs");
  o.detail << pairs.size() << " pairs (" << iso << " isomorphic, " << non << " not), " << groups.size()
           << " groups of order <= 64";
}

// 2. Twisted extensions are recognized as isomorphic.
void criterion2(Outcome& o) {
  Rng rng(1002);
  int instances = 0;
  const std::vector<Named> quotients{{"Z2", cyclic_group(2)}, {"Z4", cyclic_group(4)},  {"S3", symmetric_group(3)},
                                     {"V4", dihedral_group(1)}, {"D8", dihedral_group(2)}, {"Q8", quaternion_group(2)}};
  for (const auto& q : quotients) {
    auto grp = make_group_ref(q.G);
    IsoCoset selfQ = brute_iso_coset(q.G, q.G, 50000000);
    auto auts = brute_aut(q.G).group.elements();
    for (int p : {2, 3}) {
      Field F = Field::of(p);
      for (int d = 1, size = p; d <= 3 && q.G.order() * size <= 64; ++d, size *= p)
        for (int t = 0; t < 3; ++t) {
          Representation theta = random_rep_of_dim(grp, F, d, rng);
          CohomologySpace S(theta);
          Cocycle f = testing::random_cocycle(S, theta, rng);
          Pair x0{testing::random_invertible(F, d, rng), auts[testing::uniform(rng, 0, static_cast<int>(auts.size()) - 1)]};
          Representation eta = rep_act(theta, x0);
          Cocycle g = cocycle_sub(F, cocycle_action(q.G, f, x0), coboundary(eta, testing::random_u(eta, rng)));
          FiniteGroup G = extension_from_data(theta, f), H = extension_from_data(eta, g);
          std::vector<int> layer(size);
          std::iota(layer.begin(), layer.end(), 0);
          Subgroup A = Subgroup::from_elements(G.order(), layer);
          const std::string tag = q.name + " p=" + std::to_string(p) + " d=" + std::to_string(d);
          EdpcResult E = edpc(theta, f, eta, g, selfQ.aut_generators);
          o.check(!E.empty, "edpc empty on " + tag);
          LiftResult L = iso_from_layers(G, A, H, Subgroup::from_elements(H.order(), layer), selfQ);
          o.check(!L.coset.empty, "empty coset on " + tag);
          if (!L.coset.empty)
            o.check(!verify_isomorphism(G, H, L.coset.witness), "unverified witness on " + tag);
          ++instances;
        }
    }
  }
  o.check(instances >= 50, "fewer than 50 instances");
  o.detail << instances << " twisted instances";
}

// Direct sum of random pieces from a pool, conjugated; dimension in [1, max_dim].
Representation module_from_pool(const std::vector<Representation>& pool, int max_dim, Rng& rng) {
  const int target = testing::uniform(rng, 1, max_dim);
  std::optional<Representation> M;
  int d = 0;
  for (int tries = 0; tries < 50 && d < target; ++tries) {
    const auto& piece = pool[testing::uniform(rng, 0, static_cast<int>(pool.size()) - 1)];
    if (d + piece.d > target) continue;
    M = M ? direct_sum(*M, piece) : piece;
    d += piece.d;
  }
  if (!M) M = pool.front();
  return conjugate_rep(*M, testing::random_invertible(M->F, M->d, rng));
}

std::vector<Representation> indecomposable_pool(const GroupRef& grp, const Field& F) {
  auto C = brute_indecomposable_census(grp, F, 16.0);
  std::vector<Representation> pool = C.types;
  if (grp->G.order() <= 6) pool.push_back(regular_rep(grp, F));
  return pool;
}

// 3. Cohomology dimension bounds.
void criterion3(Outcome& o) {
  Rng rng(1003);
  int cyclic_modules = 0, indecomposables = 0, tame_modules = 0;
  const std::vector<Named> cyclic_sylow{{"Z2", cyclic_group(2)}, {"Z3", cyclic_group(3)}, {"Z4", cyclic_group(4)},
                                        {"Z5", cyclic_group(5)}, {"Z6", cyclic_group(6)}, {"S3", symmetric_group(3)},
                                        {"Dih10", dihedral_order(10)}, {"Z9", cyclic_group(9)}};
  for (const auto& q : cyclic_sylow) {
    auto grp = make_group_ref(q.G);
    for (int p : prime_divisors(q.G.order())) {
      if (tameness_report(q.G, p).sylow_type != "cyclic") continue;
      Field F = Field::of(p);
      auto pool = indecomposable_pool(grp, F);
      for (const auto& iota : pool) {
        if (!is_indecomposable(iota.module())) continue;
        ++indecomposables;
        for (int j : {1, 2})
          o.check(cohomology(iota, j).dim <= 1,
                  "H^" + std::to_string(j) + " of an indecomposable exceeds 1 for " + q.name);
      }
      for (int t = 0; t < 12; ++t) {
        Representation M = module_from_pool(pool, 6, rng);
        for (int j : {1, 2})
          o.check(cohomology(M, j).dim <= M.d, "H^" + std::to_string(j) + " exceeds dim M for " + q.name);
        ++cyclic_modules;
      }
    }
  }
  const std::vector<Named> tame{{"V4", dihedral_group(1)},      {"D8", dihedral_group(2)}, {"D16", dihedral_group(3)},
                                {"SD16", semidihedral_group(3)}, {"Q8", quaternion_group(2)}, {"Q16", quaternion_group(3)}};
  Field F2 = Field::of(2);
  for (const auto& q : tame) {
    auto grp = make_group_ref(q.G);
    auto pool = indecomposable_pool(grp, F2);
    pool.push_back(trivial_rep(grp, F2, 1));
    for (int t = 0; t < 8; ++t) {
      Representation M = module_from_pool(pool, 6, rng);
      o.check(CohomologySpace(M).dim_h2() <= 3 * M.d, "H^2 exceeds 3 dim M for " + q.name);
      ++tame_modules;
    }
  }
  o.check(cyclic_modules >= 100, "fewer than 100 cyclic-Sylow modules");
  o.detail << cyclic_modules << " cyclic-Sylow modules, " << indecomposables << " indecomposables, " << tame_modules
           << " tame 2-group modules";
}

// 4. Higman: at most |Q| indecomposable types.
void criterion4(Outcome& o) {
  const std::vector<Named> groups{{"Z2", cyclic_group(2)}, {"Z3", cyclic_group(3)}, {"Z4", cyclic_group(4)},
                                  {"V4", elem_ab_group(2, 2)}, {"Z5", cyclic_group(5)}, {"Z6", cyclic_group(6)},
                                  {"S3", symmetric_group(3)}};
  int cases = 0;
  for (const auto& q : groups)
    for (int p : {2, 3, 5}) {
      std::string type = tameness_report(q.G, p).sylow_type;
      if (type != "cyclic" && type != "trivial") continue;
      auto C = brute_indecomposable_census(make_group_ref(q.G), Field::of(p));
      const int count = static_cast<int>(C.types.size());
      o.check(count <= q.G.order(), q.name + " over GF(" + std::to_string(p) + ") has " + std::to_string(count));
      o.detail << (cases ? ", " : "") << q.name << "/" << p << ":" << count << "(d<=" << C.max_dim << ")";
      ++cases;
    }
}

// 5. Semidihedral enumeration at l = 1, d <= 8.
void criterion5(Outcome& o) {
  for (int d = 1; d <= 8; ++d) {
    auto all = materialize_dimension(1, d);
    for (const auto& M : all) {
      auto v = sd_relation_violation(M.a, M.b, 1);
      o.check(!v, "relation failure at d=" + std::to_string(d) + " " + word_to_string(M.word));
      if (d <= 6) o.check(is_indecomposable(M.module()), "decomposable module at d=" + std::to_string(d));
    }
    CountReport R = count_indecomposables(1, d);
    o.check(R.within_bounds(), "bound exceeded at d=" + std::to_string(d));
    o.check(R.unexplained_duplicates == 0, "unexplained duplicate at d=" + std::to_string(d));
    o.detail << (d > 1 ? " " : "") << "d" << d << "=" << R.counts[WordClass::kAsymString] << "/"
             << R.counts[WordClass::kSymString] << "/" << R.counts[WordClass::kAsymBand] << "/"
             << R.counts[WordClass::kSymBand] << "(+" << R.duplicates << " degenerate)";
  }
}

// 6. Wild lower bound with pinned regression counts.
void criterion6(Outcome& o) {
  WildReport a = wild_family(2, 2), b = wild_family(3, 2);
  o.check(static_cast<std::uint64_t>(a.classes) >= a.lower_bound && a.lower_bound == 4, "p=2 below bound");
  o.check(static_cast<std::uint64_t>(b.classes) >= b.lower_bound && b.lower_bound == 9, "p=3 below bound");
  o.check(a.classes == 10, "p=2 regression count changed");
  o.check(b.classes == 33, "p=3 regression count changed");
  o.detail << "wild(2,2)=" << a.classes << ">=" << a.lower_bound << ", wild(3,2)=" << b.classes << ">=" << b.lower_bound;
}

// 7. Subroutines against exhaustive oracles.
void criterion7(Outcome& o) {
  Rng rng(1007);
  int transporters = 0, isos = 0, units = 0, cohos = 0;
  for (int t = 0; t < 200; ++t) {
    int deg = testing::uniform(rng, 3, 8);
    std::vector<Perm> gens;
    for (int i = 0, k = testing::uniform(rng, 1, 2); i < k; ++i) gens.push_back(testing::random_perm(deg, rng));
    auto all = testing::perm_closure(deg, gens);
    if (all.size() > 10000) continue;
    PermGroup P(deg, gens);
    int x = testing::uniform(rng, 0, deg - 1), y = testing::uniform(rng, 0, deg - 1);
    std::set<Perm> want, got;
    for (const auto& g : all)
      if (g[x] == y) want.insert(g);
    auto pc = point_transporter(P, x, y);
    if (!pc.empty)
      for (const auto& h : pc.subgroup.elements()) got.insert(perm_mul(h, pc.rep));
    o.check(got == want, "point transporter mismatch");
    int size = testing::uniform(rng, 1, deg - 1);
    Perm a = testing::random_perm(deg, rng), b = testing::random_perm(deg, rng);
    std::set<int> S(a.begin(), a.begin() + size), T(b.begin(), b.begin() + size);
    want.clear();
    got.clear();
    for (const auto& g : all) {
      std::set<int> img;
      for (int s : S) img.insert(g[s]);
      if (img == T) want.insert(g);
    }
    auto sc = setwise_transporter(P, std::vector<int>(S.begin(), S.end()), std::vector<int>(T.begin(), T.end()));
    if (!sc.empty)
      for (const auto& h : sc.subgroup.elements()) got.insert(perm_mul(h, sc.rep));
    o.check(got == want, "setwise transporter mismatch");
    ++transporters;
  }
  for (auto [q, d] : std::vector<std::pair<int, int>>{{2, 2}, {2, 3}, {2, 4}, {3, 2}, {4, 2}}) {
    Field F = Field::of(q);
    for (int t = 0; t < 30; ++t) {
      Module M{F, d, {}};
      for (int i = 0, k = testing::uniform(rng, 1, 2); i < k; ++i) M.gens.push_back(testing::random_matrix(F, d, d, rng));
      Module N = conjugate_module(M, testing::random_invertible(F, d, rng));
      if (t % 2) N.gens[0].a[0] = F.add(N.gens[0].a[0], 1);
      o.check(module_isomorphism(M, N).isomorphic == brute_module_iso(M, N).has_value(), "module iso mismatch");
      ++isos;
    }
  }
  for (int t = 0; t < 200 && units < 60; ++t) {
    int q = t % 3 == 0 ? 3 : (t % 3 == 1 ? 4 : 2);
    Field F = Field::of(q);
    int n = testing::uniform(rng, 2, 4);
    std::vector<Matrix> gens{testing::random_matrix(F, n, n, rng)};
    if (t % 2) gens.push_back(testing::random_matrix(F, n, n, rng));
    auto L = algebra_span(F, n, gens, true);
    if (L.dim() * std::log2(q) > 16) continue;
    o.check(matrix_group_order(F, n, unit_group(L, t)) == brute_unit_count(L), "unit group order mismatch");
    ++units;
  }
  for (const auto& Q : {cyclic_group(2), cyclic_group(4), symmetric_group(3), elem_ab_group(2, 2)}) {
    auto grp = make_group_ref(Q);
    for (int p : {2, 3}) {
      Field F = Field::of(p);
      for (int t = 0; t < 8; ++t) {
        Representation theta = testing::random_representation(grp, F, 3, rng);
        if (std::pow(p, Q.order() * theta.d) > (1 << 20)) continue;
        CohomologySpace S(theta);
        Cocycle f = testing::random_cocycle(S, theta, rng);
        Cocycle g = t % 2 ? cocycle_sub(F, f, coboundary(theta, testing::random_u(theta, rng)))
                          : testing::random_cocycle(S, theta, rng);
        o.check(is_cohomologous(theta, f, g).has_value() == brute_cohomologous(theta, f, g).has_value(),
                "cohomologous verdict mismatch");
        ++cohos;
      }
    }
  }
  o.detail << transporters << " transporter cases, " << isos << " module iso, " << units << " unit groups, " << cohos
           << " cohomology checks";
}

// 8. Round trips.
void criterion8(Outcome& o) {
  Rng rng(1008);
  std::vector<Named> groups = testing::small_corpus();
  for (auto& g : constructed_groups())
    if (g.G.order() <= 48) groups.push_back(g);
  for (auto& e : random_extensions(rng, 1, 48)) groups.push_back(std::move(e));
  int trips = 0;
  for (const auto& g : groups) {
    if (g.G.order() > 48) continue;
    for (const char* fn : {"layer", "center", "derived"}) {
      Subgroup A = layer_subgroup(g.G, fn);
      auto chk = elem_ab_structure(g.G, A);
      if (!chk.structure || chk.structure->d == 0) continue;
      ExtensionData X = extension_data(g.G, A);
      o.check(brute_iso(g.G, extension_from_data(X)).has_value(), "round trip failed on " + g.name + " via " + fn);
      ++trips;
    }
  }
  int recog = 0;
  auto expect = [&](const FiniteGroup& G, TameType::Kind kind, int m, const std::string& name) {
    TameType T = recognize_tame_2group(testing::random_relabel(G, rng));
    o.check(T.kind == kind && T.m == m, "recognize failed on " + name);
    ++recog;
  };
  for (int m = 1; m <= 4; ++m) expect(make_group("dihedral", {m}), TameType::kDihedral, m, "D" + std::to_string(m));
  for (int m = 3; m <= 4; ++m)
    expect(make_group("semidihedral", {m}), TameType::kSemidihedral, m, "SD" + std::to_string(m));
  for (int m = 2; m <= 4; ++m) expect(make_group("quaternion", {m}), TameType::kQuaternion, m, "Q" + std::to_string(m));
  o.detail << trips << " extension round trips over " << groups.size() << " groups, " << recog << " recognitions";
}

// 9. Dihedral group of order 12 against Z2 x S3.
void criterion9(Outcome& o) {
  FiniteGroup G = dihedral_order(12);
  FiniteGroup H = direct_product(cyclic_group(2), dihedral_order(6));
  GpiResult R = gpi_full(G, H);
  bool brute = brute_iso(G, H).has_value();
  o.check(!R.coset.empty == brute, "pipeline disagrees with brute force");
  o.check(brute, "regression: D12 and Z2 x D6 are isomorphic");
  o.detail << "pipeline=" << (R.coset.empty ? "not isomorphic" : "isomorphic")
           << " brute=" << (brute ? "isomorphic" : "not isomorphic");
  if (!R.coset.empty) o.detail << " |Aut|=" << R.coset.aut_order;
}

}  // namespace
}  // namespace gpi

int main() {
  using Clock = std::chrono::steady_clock;
  const std::vector<std::pair<int, std::function<void(gpi::Outcome&)>>> criteria{
      {1, gpi::criterion1}, {2, gpi::criterion2}, {3, gpi::criterion3}, {4, gpi::criterion4}, {5, gpi::criterion5},
      {6, gpi::criterion6}, {7, gpi::criterion7}, {8, gpi::criterion8}, {9, gpi::criterion9}};
  // Runtime limits in seconds; criteria without a stated limit share the suite timeout.
  const std::map<int, double> limits{{1, 600.0}, {5, 300.0}};
  bool all = true;
  for (const auto& [id, run] : criteria) {
    gpi::Outcome o;
    auto t0 = Clock::now();
    try {
      run(o);
    } catch (const std::exception& e) {
      o.fail(std::string("exception: ") + e.what());
    }
    double secs = std::chrono::duration<double>(Clock::now() - t0).count();
    if (auto it = limits.find(id); it != limits.end() && secs > it->second)
      o.fail("runtime " + std::to_string(secs) + "s over the " + std::to_string(it->second) + "s limit");
    std::printf("criterion %d: %s [%.1fs] %s%s%s\n", id, o.pass ? "PASS" : "FAIL", secs, o.detail.str().c_str(),
                o.pass ? "" : " | ", o.first_failure.c_str());
    std::fflush(stdout);
    all = all && o.pass;
  }
  return all ? 0 : 1;
}
