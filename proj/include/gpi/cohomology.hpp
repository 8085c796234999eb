#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "gpi/error.hpp"
#include "gpi/field.hpp"
#include "gpi/group.hpp"
#include "gpi/linalg.hpp"
#include "gpi/pairs.hpp"
#include "gpi/perm_group.hpp"
#include "gpi/rep.hpp"

namespace gpi {

// Function Q x Q -> GF(p)^d, stored row-major in (q, q').
struct Cocycle {
  int n = 0;
  int p = 0;
  int d = 0;
  std::vector<Vec> values;

  static Cocycle zero(int n, int p, int d) { return {n, p, d, std::vector<Vec>(static_cast<std::size_t>(n) * n, Vec(d, 0))}; }

  const Vec& at(int q, int r) const { return values[static_cast<std::size_t>(q) * n + r]; }
  Vec& at(int q, int r) { return values[static_cast<std::size_t>(q) * n + r]; }

  Vec flat() const {
    Vec v;
    v.reserve(values.size() * d);
    for (const auto& x : values) v.insert(v.end(), x.begin(), x.end());
    return v;
  }

  static Cocycle from_flat(int n, int p, int d, const Vec& v) {
    Cocycle f = zero(n, p, d);
    for (std::size_t k = 0; k < f.values.size(); ++k)
      for (int i = 0; i < d; ++i) f.values[k][i] = v[k * d + i];
    return f;
  }

  bool operator==(const Cocycle& o) const { return n == o.n && p == o.p && d == o.d && values == o.values; }
};

// Functions Q -> GF(p)^d are flat vectors indexed by q * d + i.
struct CoboundaryWitness {
  Vec u;
};

namespace detail {

inline Field action_field(const Representation& theta) {
  if (!theta.F.prime()) throw InvalidInput("cohomology requires an action over a prime field");
  return theta.F;
}

inline Vec vec_sub(const Field& F, Vec a, const Vec& b) {
  F.axpy(a.data(), F.neg(1), b.data(), static_cast<int>(a.size()));
  return a;
}

inline Elt dot(const Field& F, const Vec& a, const Vec& b) {
  Elt s = 0;
  for (std::size_t i = 0; i < a.size(); ++i)
    if (a[i] && b[i]) s = F.add(s, F.mul(a[i], b[i]));
  return s;
}

inline Vec vec_add(const Field& F, Vec a, const Vec& b) {
  F.axpy(a.data(), 1, b.data(), static_cast<int>(a.size()));
  return a;
}

}  // namespace detail

inline void check_cocycle_shape(const Representation& theta, const Cocycle& f) {
  const int n = theta.G().order();
  if (f.n != n || f.d != theta.d || f.p != theta.F.p())
    throw InvalidInput("cocycle shape (n, p, d) does not match the action");
  if (f.values.size() != static_cast<std::size_t>(n) * n) throw InvalidInput("cocycle table has the wrong size");
  for (const auto& v : f.values) {
    if (static_cast<int>(v.size()) != f.d) throw InvalidInput("cocycle value has the wrong length");
    for (Elt c : v)
      if (c >= f.p) throw InvalidInput("cocycle entry out of range");
  }
}

// First violated condition, or nullopt for a valid (optionally normalized) 2-cocycle.
inline std::optional<std::string> cocycle_violation(const Representation& theta, const Cocycle& f,
                                                    bool normalized = true) {
  check_cocycle_shape(theta, f);
  const Field F = detail::action_field(theta);
  const FiniteGroup& Q = theta.G();
  const int n = Q.order();
  if (normalized)
    for (int q = 0; q < n; ++q)
      if (!is_zero_vec(f.at(0, q)) || !is_zero_vec(f.at(q, 0)))
        return "not normalized at q = " + std::to_string(q);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      for (int c = 0; c < n; ++c) {
        Vec lhs = detail::vec_add(F, f.at(a, b), f.at(Q.mul(a, b), c));
        Vec rhs = detail::vec_add(F, mat_vec(F, theta.images[a], f.at(b, c)), f.at(a, Q.mul(b, c)));
        if (lhs != rhs)
          return "cocycle identity fails at (" + std::to_string(a) + "," + std::to_string(b) + "," +
                 std::to_string(c) + ")";
      }
  return std::nullopt;
}

inline void require_cocycle(const Representation& theta, const Cocycle& f) {
  if (auto v = cocycle_violation(theta, f)) throw InvalidInput("invalid cocycle: " + *v);
}

// b_u(q, q') = u(q) + theta_q u(q') - u(q q').
inline Cocycle coboundary(const Representation& theta, const Vec& u) {
  const Field F = detail::action_field(theta);
  const FiniteGroup& Q = theta.G();
  const int n = Q.order(), d = theta.d;
  if (static_cast<int>(u.size()) != n * d) throw InvalidInput("coboundary: u has the wrong length");
  auto at = [&](int q) { return Vec(u.begin() + q * d, u.begin() + (q + 1) * d); };
  Cocycle b = Cocycle::zero(n, F.p(), d);
  for (int q = 0; q < n; ++q)
    for (int r = 0; r < n; ++r)
      b.at(q, r) = detail::vec_sub(F, detail::vec_add(F, at(q), mat_vec(F, theta.images[q], at(r))), at(Q.mul(q, r)));
  return b;
}

inline Cocycle cocycle_sub(const Field& F, const Cocycle& f, const Cocycle& g) {
  Cocycle h = f;
  for (std::size_t k = 0; k < h.values.size(); ++k) h.values[k] = detail::vec_sub(F, f.values[k], g.values[k]);
  return h;
}

// Any cocycle is cohomologous to f - b_c with c the constant f(1,1); that one is normalized.
inline Cocycle normalize_cocycle(const Representation& theta, const Cocycle& f) {
  if (auto v = cocycle_violation(theta, f, false)) throw InvalidInput("invalid cocycle: " + *v);
  const int n = theta.G().order(), d = theta.d;
  Vec u(static_cast<std::size_t>(n) * d);
  for (int q = 0; q < n; ++q)
    for (int i = 0; i < d; ++i) u[q * d + i] = f.at(0, 0)[i];
  Cocycle g = cocycle_sub(theta.F, f, coboundary(theta, u));
  require_cocycle(theta, g);
  return g;
}

// Z^2, B^2 and a complement of B^2 in Z^2, all over normalized cocycles.
class CohomologySpace {
 public:
  explicit CohomologySpace(const Representation& theta) : theta_(theta), F_(detail::action_field(theta)) {
    if (auto v = check_representation(theta)) throw InvalidInput("action is not a representation: " + v->what);
    build_z2();
    build_b2();
    for (const auto& z : z2_basis)
      if (coords_.insert(z)) h2_reps.push_back(Cocycle::from_flat(n_, F_.p(), d_, z));
    for (const auto& r : h2_reps) require_cocycle(theta_, r);
    if (dim_z2() != dim_b2() + dim_h2()) throw VerificationFailure("dim Z2 != dim B2 + dim H2");
  }

  std::vector<Vec> z2_basis;  // flat cocycles
  std::vector<Vec> b2_basis;
  std::vector<Vec> b2_u;      // b2_basis[i] = b_{b2_u[i]}
  std::vector<Cocycle> h2_reps;

  int dim_z2() const { return static_cast<int>(z2_basis.size()); }
  int dim_b2() const { return static_cast<int>(b2_basis.size()); }
  int dim_h2() const { return static_cast<int>(h2_reps.size()); }
  const Representation& theta() const { return theta_; }

  // p^dim H2, refusing past budget.
  std::uint64_t class_count(std::uint64_t budget = 1000000) const {
    std::uint64_t c = 1;
    for (int i = 0; i < dim_h2(); ++i) {
      c *= static_cast<std::uint64_t>(F_.p());
      if (c > budget) throw BudgetExceeded("H^2 has more than " + std::to_string(budget) + " classes");
    }
    return c;
  }

  // Coordinates of the class of f over h2_reps. Throws if f is not a normalized cocycle.
  Vec class_coords(const Cocycle& f) const {
    auto c = split(f);
    return Vec(c.begin() + dim_b2(), c.end());
  }

  static std::uint64_t code_of(const Vec& c, int p) {
    std::uint64_t code = 0;
    for (int i = static_cast<int>(c.size()) - 1; i >= 0; --i) code = code * p + c[i];
    return code;
  }
  Vec coords_of_code(std::uint64_t code) const {
    Vec c(dim_h2());
    for (auto& x : c) {
      x = static_cast<Elt>(code % F_.p());
      code /= F_.p();
    }
    return c;
  }

  Cocycle class_rep(const Vec& coords) const {
    Cocycle f = Cocycle::zero(n_, F_.p(), d_);
    Vec v(static_cast<std::size_t>(n_) * n_ * d_, 0);
    for (int i = 0; i < dim_h2(); ++i) F_.axpy(v.data(), coords[i], h2_reps[i].flat().data(), static_cast<int>(v.size()));
    return Cocycle::from_flat(n_, F_.p(), d_, v);
  }

  // u with f - g = b_u, or nullopt when the classes differ.
  std::optional<CoboundaryWitness> cohomologous(const Cocycle& f, const Cocycle& g) const {
    auto c = split(cocycle_sub(F_, f, g));
    for (int i = dim_b2(); i < static_cast<int>(c.size()); ++i)
      if (c[i]) return std::nullopt;
    Vec u(static_cast<std::size_t>(n_) * d_, 0);
    for (int i = 0; i < dim_b2(); ++i) F_.axpy(u.data(), c[i], b2_u[i].data(), static_cast<int>(u.size()));
    if (coboundary(theta_, u) != cocycle_sub(F_, f, g)) throw VerificationFailure("coboundary witness is wrong");
    return CoboundaryWitness{u};
  }

 private:
  Vec split(const Cocycle& f) const {
    check_cocycle_shape(theta_, f);
    auto c = coords_.coordinates(f.flat());
    if (!c) throw InvalidInput("function is not a normalized 2-cocycle for this action");
    return *c;
  }

  // Unknowns F(x, j) = f(x, g_j) for x != 1. The recursion
  // f(x, y' g) = f(x, y') + F(x y', g) - theta_x F(y', g) along the BFS tree
  // reproduces every normalized cocycle from its F; associativity against
  // generators (and A) suffices for the cocycle identity everywhere.
  void build_z2() {
    const GroupContext& ctx = *theta_.group;
    const FiniteGroup& Q = ctx.G;
    n_ = Q.order();
    d_ = theta_.d;
    const int k = static_cast<int>(ctx.gens.size());
    const int N = (n_ - 1) * k * d_;
    coords_ = Echelon(F_, n_ * n_ * d_, true);
    z2_ = Echelon(F_, n_ * n_ * d_);
    if (N == 0 || d_ == 0) return;
    auto unk = [&](int z, int j, int i) { return ((z - 1) * k + j) * d_ + i; };
    // L[(x * n + y) * d + i] = coefficient row of f(x, y)_i.
    std::vector<Vec> L(static_cast<std::size_t>(n_) * n_ * d_, Vec(N, 0));
    auto row = [&](int x, int y, int i) -> Vec& { return L[(static_cast<std::size_t>(x) * n_ + y) * d_ + i]; };
    for (std::size_t t = 1; t < ctx.bfs_order.size(); ++t) {
      const int y = ctx.bfs_order[t], yp = ctx.parent[y], j = ctx.via[y];
      for (int x = 1; x < n_; ++x) {
        const Matrix& T = theta_.images[x];
        const int xyp = Q.mul(x, yp);
        for (int i = 0; i < d_; ++i) {
          Vec& r = row(x, y, i);
          r = row(x, yp, i);
          if (xyp != 0) r[unk(xyp, j, i)] = F_.add(r[unk(xyp, j, i)], 1);
          if (yp != 0)
            for (int l = 0; l < d_; ++l) r[unk(yp, j, l)] = F_.sub(r[unk(yp, j, l)], T(i, l));
        }
      }
    }
    Echelon eq(F_, N);
    for (int x = 1; x < n_ && !eq.full(); ++x)
      for (int y = 1; y < n_ && !eq.full(); ++y)
        for (int j = 0; j < k; ++j) {
          const int z = ctx.gens[j];
          const Matrix& T = theta_.images[x];
          for (int i = 0; i < d_; ++i) {
            Vec r = row(x, y, i);
            F_.axpy(r.data(), 1, row(Q.mul(x, y), z, i).data(), N);
            F_.axpy(r.data(), F_.neg(1), row(x, Q.mul(y, z), i).data(), N);
            for (int l = 0; l < d_; ++l)
              if (T(i, l)) F_.axpy(r.data(), F_.neg(T(i, l)), row(y, z, l).data(), N);
            eq.insert(std::move(r));
          }
        }
    Echelon z2(F_, n_ * n_ * d_);
    for (const auto& kv : eq.kernel()) {
      Vec f(L.size(), 0);
      for (std::size_t e = 0; e < L.size(); ++e) f[e] = detail::dot(F_, L[e], kv);
      if (z2.insert(f)) z2_basis.push_back(std::move(f));
    }
    for (const auto& z : z2_basis)
      if (auto v = cocycle_violation(theta_, Cocycle::from_flat(n_, F_.p(), d_, z)))
        throw VerificationFailure("Z2 basis vector is not a cocycle: " + *v);
    z2_ = std::move(z2);
  }

  void build_b2() {
    for (int q = 1; q < n_; ++q)
      for (int i = 0; i < d_; ++i) {
        Vec u(static_cast<std::size_t>(n_) * d_, 0);
        u[q * d_ + i] = 1;
        Vec b = coboundary(theta_, u).flat();
        if (!coords_.insert(b)) continue;
        if (!z2_.contains(b)) throw VerificationFailure("coboundary outside the computed Z2");
        b2_basis.push_back(std::move(b));
        b2_u.push_back(std::move(u));
      }
  }

  Representation theta_;
  Field F_;
  int n_ = 0;
  int d_ = 0;
  Echelon z2_;
  Echelon coords_;  // b2_basis then h2_reps, tracked
};

inline std::optional<CoboundaryWitness> is_cohomologous(const Representation& theta, const Cocycle& f,
                                                         const Cocycle& g) {
  require_cocycle(theta, f);
  require_cocycle(theta, g);
  return CohomologySpace(theta).cohomologous(f, g);
}

// Fixed points M^Q.
inline std::vector<Vec> h0_basis(const Representation& theta) {
  const Field& F = theta.F;
  const int d = theta.d;
  Matrix S(static_cast<int>(theta.group->gens.size()) * d, d);
  int r = 0;
  for (int g : theta.group->gens) {
    Matrix D = mat_sub(F, theta.images[g], Matrix::identity(d));
    for (int i = 0; i < d; ++i, ++r)
      for (int j = 0; j < d; ++j) S(r, j) = D(i, j);
  }
  return nullspace(F, S);
}

// Crossed homomorphisms u(xy) = u(x) + theta_x u(y), as flat functions Q -> GF(p)^d.
inline std::vector<Vec> z1_basis(const Representation& theta) {
  const Field F = detail::action_field(theta);
  const GroupContext& ctx = *theta.group;
  const int n = ctx.G.order(), d = theta.d, k = static_cast<int>(ctx.gens.size()), N = k * d;
  // U[x * d + i] = coefficient row of u(x)_i in the unknowns c_{j,l} = u(g_j)_l.
  std::vector<Vec> U(static_cast<std::size_t>(n) * d, Vec(N, 0));
  for (std::size_t t = 1; t < ctx.bfs_order.size(); ++t) {
    const int y = ctx.bfs_order[t], yp = ctx.parent[y], j = ctx.via[y];
    for (int i = 0; i < d; ++i) {
      Vec r = U[yp * d + i];
      for (int l = 0; l < d; ++l) r[j * d + l] = F.add(r[j * d + l], theta.images[yp](i, l));
      U[y * d + i] = std::move(r);
    }
  }
  Echelon eq(F, N);
  for (int x = 0; x < n; ++x)
    for (int j = 0; j < k; ++j) {
      const int y = ctx.G.mul(x, ctx.gens[j]);
      for (int i = 0; i < d; ++i) {
        Vec r = U[y * d + i];
        F.axpy(r.data(), F.neg(1), U[x * d + i].data(), N);
        for (int l = 0; l < d; ++l) r[j * d + l] = F.sub(r[j * d + l], theta.images[x](i, l));
        eq.insert(std::move(r));
      }
    }
  std::vector<Vec> out;
  for (const auto& kv : eq.kernel()) {
    Vec u(U.size());
    for (std::size_t e = 0; e < U.size(); ++e) u[e] = detail::dot(F, U[e], kv);
    out.push_back(std::move(u));
  }
  for (const auto& u : out)
    for (int x = 0; x < n; ++x)
      for (int y = 0; y < n; ++y) {
        Vec ux(u.begin() + x * d, u.begin() + (x + 1) * d), uy(u.begin() + y * d, u.begin() + (y + 1) * d);
        int xy = ctx.G.mul(x, y);
        Vec uxy(u.begin() + xy * d, u.begin() + (xy + 1) * d);
        if (detail::vec_add(F, ux, mat_vec(F, theta.images[x], uy)) != uxy)
          throw VerificationFailure("Z1 basis vector is not a crossed homomorphism");
      }
  return out;
}

struct LowCohomology {
  int dim = 0;
  std::vector<Vec> basis;  // H^0: fixed vectors; H^1: crossed homomorphisms spanning a complement of B^1
};

// j in {0, 1, 2}; for j = 2 the basis holds flat cocycle representatives.
inline LowCohomology cohomology(const Representation& theta, int j) {
  LowCohomology out;
  if (j == 0) {
    out.basis = h0_basis(theta);
  } else if (j == 1) {
    const Field& F = theta.F;
    const int n = theta.G().order(), d = theta.d;
    Echelon E(F, n * d);
    for (int i = 0; i < d; ++i) {
      Vec a(d, 0), u(static_cast<std::size_t>(n) * d);
      a[i] = 1;
      for (int x = 0; x < n; ++x) {
        Vec v = detail::vec_sub(F, mat_vec(F, theta.images[x], a), a);
        for (int l = 0; l < d; ++l) u[x * d + l] = v[l];
      }
      E.insert(u);
    }
    for (auto& z : z1_basis(theta))
      if (E.insert(z)) out.basis.push_back(std::move(z));
  } else if (j == 2) {
    CohomologySpace S(theta);
    for (const auto& r : S.h2_reps) out.basis.push_back(r.flat());
  } else {
    throw InvalidInput("cohomology degree must be 0, 1 or 2");
  }
  out.dim = static_cast<int>(out.basis.size());
  return out;
}

// ------------------------------------------------------------------ extensions

struct ExtensionData {
  Quotient quotient;
  GroupRef Q;
  ElemAbStructure A;
  Representation theta;
  Cocycle f;
  std::vector<int> section;  // Q element -> G element, section[0] = identity
};

// theta_q(a) = s(q) a s(q)^-1, f(q, q') = s(q) s(q') s(qq')^-1 with s the least coset representative.
inline ExtensionData extension_data(const FiniteGroup& G, const Subgroup& A) {
  auto chk = elem_ab_structure(G, A);
  if (!chk.structure) throw InvalidInput("subgroup is not elementary abelian: " + chk.reason);
  if (chk.structure->d == 0) throw InvalidInput("extension data needs a nontrivial subgroup");
  ExtensionData X{quotient_group(G, A), nullptr, *chk.structure, {}, {}, {}};
  X.Q = make_group_ref(X.quotient.group);
  X.section = X.quotient.reps;
  const ElemAbStructure& E = X.A;
  const Field F = Field::of(E.p);
  const int n = X.quotient.group.order(), d = E.d;
  X.theta = Representation{X.Q, F, d, std::vector<Matrix>(n)};
  for (int q = 0; q < n; ++q) {
    const int s = X.section[q];
    std::vector<Vec> cols;
    for (int b : E.basis) cols.push_back(E.coords[G.conj(s, b)]);
    X.theta.images[q] = from_columns(d, cols);
  }
  if (auto v = check_representation(X.theta)) throw VerificationFailure("conjugation action invalid: " + v->what);
  X.f = Cocycle::zero(n, E.p, d);
  for (int q = 0; q < n; ++q)
    for (int r = 0; r < n; ++r) {
      int a = G.mul(G.mul(X.section[q], X.section[r]), G.inv(X.section[X.quotient.group.mul(q, r)]));
      if (E.coords[a].empty()) throw VerificationFailure("section product leaves A");
      X.f.at(q, r) = E.coords[a];
    }
  require_cocycle(X.theta, X.f);
  return X;
}

// Group on pairs (a, q), index q * p^d + index(a), with
// (a, q)(a', q') = (a + theta_q a' + f(q, q'), q q').
inline FiniteGroup extension_from_data(const Representation& theta, const Cocycle& f) {
  require_cocycle(theta, f);
  const Field& F = theta.F;
  const FiniteGroup& Q = theta.G();
  const int n = Q.order(), d = theta.d;
  int P = 1;
  for (int i = 0; i < d; ++i) P *= F.p();
  if (static_cast<long>(P) * n > 4096) throw BudgetExceeded("extension order exceeds 4096");
  std::vector<Vec> vecs(P, Vec(d));
  for (int a = 0; a < P; ++a)
    for (int i = 0, c = a; i < d; ++i, c /= F.p()) vecs[a][i] = static_cast<Elt>(c % F.p());
  auto idx_of = [&](const Vec& v) {
    int idx = 0;
    for (int i = d - 1; i >= 0; --i) idx = idx * F.p() + v[i];
    return idx;
  };
  std::vector<std::vector<int>> table(P * n, std::vector<int>(P * n));
  for (int q = 0; q < n; ++q)
    for (int a = 0; a < P; ++a)
      for (int r = 0; r < n; ++r) {
        Vec base = detail::vec_add(F, vecs[a], f.at(q, r));
        for (int b = 0; b < P; ++b) {
          Vec c = detail::vec_add(F, base, mat_vec(F, theta.images[q], vecs[b]));
          table[q * P + a][r * P + b] = Q.mul(q, r) * P + idx_of(c);
        }
      }
  return load_group(table);
}

inline FiniteGroup extension_from_data(const ExtensionData& X) { return extension_from_data(X.theta, X.f); }

// f^(alpha, beta)(q, q') = alpha f(beta^-1 q, beta^-1 q').
inline Cocycle cocycle_action(const FiniteGroup& Q, const Cocycle& f, const Pair& x) {
  if (x.alpha.rows != f.d || x.alpha.cols != f.d) throw InvalidInput("cocycle_action: alpha has the wrong shape");
  const Field F = Field::of(f.p);
  if (!is_invertible(F, x.alpha)) throw InvalidInput("cocycle_action: alpha is not invertible");
  if (!is_automorphism(Q, x.beta)) throw InvalidInput("cocycle_action: beta is not an automorphism");
  Perm bi = perm_inv(x.beta);
  Cocycle g = Cocycle::zero(f.n, f.p, f.d);
  for (int q = 0; q < f.n; ++q)
    for (int r = 0; r < f.n; ++r) g.at(q, r) = mat_vec(F, x.alpha, f.at(bi[q], bi[r]));
  return g;
}

// ------------------------------------------------------------------ CCIso

struct CCIsoResult {
  bool empty = true;
  Pair representative;
  std::vector<Pair> generators;  // stabilizer of the class of f inside the given group
  std::uint64_t stabilizer_order = 0;
  CoboundaryWitness witness;     // f^rep - g = b_u
};

// Pairs x in <stab> with f^x cohomologous to g. Every stab generator must fix theta.
inline CCIsoResult cciso(const Representation& theta, const Cocycle& f, const Cocycle& g, const std::vector<Pair>& stab,
                         std::uint64_t budget = 1000000) {
  const Field F = detail::action_field(theta);
  const FiniteGroup& Q = theta.G();
  const int n = Q.order(), d = theta.d;
  for (const auto& x : stab)
    if (!reps_equal(rep_act(theta, x), theta)) throw VerificationFailure("cciso: a stabilizer generator moves theta");
  CohomologySpace S(theta);
  S.class_count(budget);
  Vec cf = S.class_coords(f), cg = S.class_coords(g);
  const int h = S.dim_h2(), p = F.p();
  // Linear action on class coordinates; columns are images of the representatives.
  std::vector<Matrix> M;
  for (const auto& x : stab) {
    std::vector<Vec> cols;
    for (const auto& r : S.h2_reps) {
      Cocycle img = cocycle_action(Q, r, x);
      cols.push_back(S.class_coords(img));
    }
    M.push_back(from_columns(h, cols));
  }
  PairDomain dom(F, n, d, stab);
  std::vector<Perm> perms;
  for (const auto& x : stab) perms.push_back(dom.to_perm(x));
  const std::uint64_t order = PermGroup(dom.degree(), perms).order();
  auto act = [&](std::uint64_t code, int gi) {
    return CohomologySpace::code_of(mat_vec(F, M[gi], S.coords_of_code(code)), p);
  };
  auto os = orbit_stabilizer(dom.degree(), perms, CohomologySpace::code_of(cf, p), act, order, budget);
  CCIsoResult out;
  out.stabilizer_order = os.stabilizer.order();
  for (const auto& s : os.stabilizer.generators()) out.generators.push_back(dom.to_pair(s));
  const std::uint64_t target = CohomologySpace::code_of(cg, p);
  for (std::size_t k = 0; k < os.orbit.size(); ++k) {
    if (os.orbit[k] != target) continue;
    out.empty = false;
    out.representative = dom.to_pair(os.transversal[k]);
    auto w = S.cohomologous(cocycle_action(Q, f, out.representative), g);
    if (!w) throw VerificationFailure("cciso representative does not map the class of f to that of g");
    out.witness = *w;
    break;
  }
  for (const auto& s : out.generators)
    if (!S.cohomologous(cocycle_action(Q, f, s), f)) throw VerificationFailure("cciso stabilizer generator moves f");
  if (out.stabilizer_order * os.orbit.size() != order) throw VerificationFailure("orbit-stabilizer count mismatch");
  return out;
}

}  // namespace gpi
