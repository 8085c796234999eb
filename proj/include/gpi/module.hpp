#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <optional>
#include <random>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "gpi/algebra.hpp"
#include "gpi/error.hpp"
#include "gpi/field.hpp"
#include "gpi/linalg.hpp"
#include "gpi/poly.hpp"

namespace gpi {

// Module over a finitely generated algebra: the action matrices of the generators on GF(q)^d.
struct Module {
  Field F;
  int d = 0;
  std::vector<Matrix> gens;
};

inline void check_compatible(const Module& M, const Module& N) {
  if (M.F != N.F) throw InvalidInput("modules over different fields");
  if (M.gens.size() != N.gens.size()) throw InvalidInput("modules for different numbers of generators");
}

// Basis of {C : C M_i = N_i C}; C is N.d x M.d.
inline std::vector<Matrix> hom_space(const Module& M, const Module& N) {
  check_compatible(M, N);
  const Field& F = M.F;
  const int d = M.d, e = N.d, n = d * e;
  if (n == 0) return {};
  Echelon E(F, n);
  Vec row(n);
  for (std::size_t g = 0; g < M.gens.size(); ++g) {
    const Matrix& A = M.gens[g];
    const Matrix& B = N.gens[g];
    for (int r = 0; r < e; ++r)
      for (int c = 0; c < d; ++c) {
        std::fill(row.begin(), row.end(), 0);
        for (int k = 0; k < d; ++k) row[r * d + k] = F.add(row[r * d + k], A(k, c));
        for (int k = 0; k < e; ++k) row[k * d + c] = F.sub(row[k * d + c], B(r, k));
        if (!E.full()) E.insert(row);
      }
  }
  std::vector<Matrix> out;
  for (auto& v : E.kernel()) out.push_back(unflatten(e, d, v));
  return out;
}

inline bool intertwines(const Field& F, const Matrix& C, const Module& M, const Module& N) {
  for (std::size_t g = 0; g < M.gens.size(); ++g)
    if (mat_mul(F, C, M.gens[g]) != mat_mul(F, N.gens[g], C)) return false;
  return true;
}

// Action on the invariant subspace spanned by `basis`, in that basis.
inline Module restrict_to(const Module& M, const std::vector<Vec>& basis) {
  const Field& F = M.F;
  Echelon E(F, M.d, true);
  for (const auto& v : basis)
    if (!E.insert(v)) throw InvalidInput("restrict_to: basis is dependent");
  Module S{F, static_cast<int>(basis.size()), {}};
  for (const auto& A : M.gens) {
    Matrix X(S.d, S.d);
    for (int j = 0; j < S.d; ++j) {
      auto c = E.coordinates(mat_vec(F, A, basis[j]));
      if (!c) throw InvalidInput("restrict_to: subspace is not invariant");
      for (int i = 0; i < S.d; ++i) X(i, j) = (*c)[i];
    }
    S.gens.push_back(std::move(X));
  }
  return S;
}

inline Module conjugate_module(const Module& M, const Matrix& C) {
  Matrix Ci = inverse_or_throw(M.F, C);
  Module R{M.F, M.d, {}};
  for (const auto& A : M.gens) R.gens.push_back(mat_mul(M.F, mat_mul(M.F, C, A), Ci));
  return R;
}

inline Module direct_sum(const Module& M, const Module& N) {
  check_compatible(M, N);
  Module R{M.F, M.d + N.d, {}};
  for (std::size_t g = 0; g < M.gens.size(); ++g) R.gens.push_back(block_diag({M.gens[g], N.gens[g]}));
  return R;
}

struct ModuleSplit {
  std::vector<Vec> first, second;  // complementary invariant subspaces
};

// Splits by the Fitting decomposition of f1(x)^e1 when the minimal polynomial
// of x has at least two distinct irreducible factors.
inline std::optional<ModuleSplit> split_by_element(const Field& F, const Matrix& x) {
  auto fac = factor_univariate(F, minimal_polynomial(F, x));
  if (fac.size() < 2) return std::nullopt;
  Poly f = fac[0].poly;
  Poly fe{1};
  for (int i = 0; i < fac[0].multiplicity; ++i) fe = poly_mul(F, fe, f);
  auto fs = fitting_split(F, poly_eval(F, fe, x));
  if (fs.kernel_part.empty() || fs.image_part.empty()) throw VerificationFailure("split_by_element: trivial Fitting split");
  return ModuleSplit{fs.kernel_part, fs.image_part};
}

// Semisimple quotient E/J presented by a complement basis.
struct SemisimpleQuotient {
  Field F;
  std::vector<Matrix> J;           // radical basis
  std::vector<Matrix> complement;  // lifts of a basis of E/J
  Echelon coords;                  // J first, then complement; tracked

  int dim() const { return static_cast<int>(complement.size()); }

  // Coordinates of the class of x in the complement basis.
  Vec class_of(const Matrix& x) const {
    auto c = coords.coordinates(x.a);
    if (!c) throw VerificationFailure("element outside the algebra");
    return Vec(c->begin() + J.size(), c->end());
  }
  Matrix lift(const Vec& v) const { return lin_comb(F, complement, v); }
};

inline SemisimpleQuotient semisimple_quotient(const MatrixAlgebra& E) {
  SemisimpleQuotient S{E.F, algebra_radical(E), {}, Echelon(E.F, E.n * E.n, true)};
  for (const auto& j : S.J) S.coords.insert(j.a);
  for (const auto& b : E.basis)
    if (S.coords.insert(b.a)) S.complement.push_back(b);
  return S;
}

inline bool quotient_commutative(const SemisimpleQuotient& S) {
  for (std::size_t i = 0; i < S.complement.size(); ++i)
    for (std::size_t j = 0; j < i; ++j) {
      Matrix c = mat_sub(S.F, mat_mul(S.F, S.complement[i], S.complement[j]),
                         mat_mul(S.F, S.complement[j], S.complement[i]));
      if (!is_zero_vec(S.class_of(c))) return false;
    }
  return true;
}

// Kernel of x -> x^q - x on a commutative semisimple quotient, as lifts.
inline std::vector<Matrix> berlekamp_kernel(const SemisimpleQuotient& S) {
  const int r = S.dim();
  Matrix Phi(r, r);
  for (int i = 0; i < r; ++i) {
    Matrix y = mat_sub(S.F, mat_pow(S.F, S.complement[i], S.F.q()), S.complement[i]);
    Vec c = S.class_of(y);
    for (int k = 0; k < r; ++k) Phi(k, i) = c[k];
  }
  std::vector<Matrix> out;
  for (const auto& v : nullspace(S.F, Phi)) out.push_back(S.lift(v));
  return out;
}

inline MatrixAlgebra endomorphism_algebra(const Module& M) { return MatrixAlgebra{M.F, M.d, hom_space(M, M)}; }

// End(M) is local iff E/J is commutative with a one-dimensional Berlekamp kernel.
inline bool is_indecomposable(const Module& M) {
  if (M.d == 0) throw InvalidInput("zero module");
  MatrixAlgebra E = endomorphism_algebra(M);
  if (E.dim() == 1) return true;
  SemisimpleQuotient S = semisimple_quotient(E);
  if (!quotient_commutative(S)) return false;
  return berlekamp_kernel(S).size() == 1;
}

// A nontrivial decomposition M = U + W into invariant subspaces, or nullopt when M is indecomposable.
inline std::optional<ModuleSplit> find_split(const Module& M, std::uint64_t seed = 0, int random_tries = 256) {
  const Field& F = M.F;
  MatrixAlgebra E = endomorphism_algebra(M);
  if (E.dim() == 1) return std::nullopt;
  for (const auto& b : E.basis)
    if (auto s = split_by_element(F, b)) return s;
  SemisimpleQuotient S = semisimple_quotient(E);
  if (quotient_commutative(S)) {
    auto ker = berlekamp_kernel(S);
    if (ker.size() == 1) return std::nullopt;
    for (const auto& x : ker)
      if (auto s = split_by_element(F, x)) return s;
    throw VerificationFailure("find_split: Berlekamp kernel produced no split");
  }
  for (std::size_t i = 0; i < E.basis.size(); ++i)
    for (std::size_t j = 0; j < i; ++j) {
      if (auto s = split_by_element(F, mat_add(F, E.basis[i], E.basis[j]))) return s;
      if (auto s = split_by_element(F, mat_mul(F, E.basis[i], E.basis[j]))) return s;
    }
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> coin(0, F.q() - 1);
  for (int t = 0; t < random_tries; ++t) {
    Vec c(E.dim());
    for (auto& x : c) x = static_cast<Elt>(coin(rng));
    if (auto s = split_by_element(F, lin_comb(F, E.basis, c))) return s;
  }
  throw Undecided("find_split: no splitting endomorphism found within the retry budget");
}

// Isomorphism of indecomposable modules: for M ≅ N the non-isomorphisms form a
// proper subspace of Hom(M, N), so some basis vector is invertible.
inline std::optional<Matrix> indecomposable_isomorphism(const Module& M, const Module& N) {
  if (M.d != N.d) return std::nullopt;
  for (const auto& h : hom_space(M, N))
    if (is_invertible(M.F, h)) return h;
  return std::nullopt;
}

struct DecompositionType {
  Module rep;                                // iso-type representative
  std::vector<std::vector<Vec>> copy_bases;  // each copy's basis, aligned so the action equals rep
};

struct Decomposition {
  std::vector<DecompositionType> types;
  Matrix C;      // C A C^{-1} is block diagonal: types in order, each repeated
  Matrix basis;  // C^{-1}: columns are the concatenated aligned copy bases

  std::vector<int> multiplicities() const {
    std::vector<int> m;
    for (const auto& t : types) m.push_back(static_cast<int>(t.copy_bases.size()));
    return m;
  }
};

namespace detail {

inline void split_recursive(const Module& M, const std::vector<Vec>& basis, std::uint64_t seed,
                            std::vector<std::pair<Module, std::vector<Vec>>>& out) {
  auto s = find_split(M, seed);
  if (!s) {
    out.push_back({M, basis});
    return;
  }
  const Field& F = M.F;
  Matrix B = from_columns(static_cast<int>(basis[0].size()), basis);
  for (const auto* part : {&s->first, &s->second}) {
    std::vector<Vec> orig;
    for (const auto& v : *part) orig.push_back(mat_vec(F, B, v));
    split_recursive(restrict_to(M, *part), orig, seed, out);
  }
}

}  // namespace detail

// Krull-Schmidt decomposition with summands grouped into iso-types.
inline Decomposition decompose_module(const Module& M, std::uint64_t seed = 0) {
  if (M.d == 0) throw InvalidInput("zero module");
  const Field& F = M.F;
  std::vector<Vec> std_basis;
  for (int i = 0; i < M.d; ++i) {
    Vec e(M.d, 0);
    e[i] = 1;
    std_basis.push_back(e);
  }
  std::vector<std::pair<Module, std::vector<Vec>>> parts;
  detail::split_recursive(M, std_basis, seed, parts);
  Decomposition D;
  for (auto& [S, B] : parts) {
    bool placed = false;
    for (auto& T : D.types) {
      auto iso = indecomposable_isomorphism(S, T.rep);
      if (!iso) continue;
      // New basis B * iso^{-1} carries the action of T.rep.
      Matrix Bm = from_columns(M.d, B);
      Matrix Bn = mat_mul(F, Bm, inverse_or_throw(F, *iso));
      std::vector<Vec> cols;
      for (int j = 0; j < Bn.cols; ++j) {
        Vec c(M.d);
        for (int i = 0; i < M.d; ++i) c[i] = Bn(i, j);
        cols.push_back(c);
      }
      T.copy_bases.push_back(cols);
      placed = true;
      break;
    }
    if (!placed) D.types.push_back({S, {B}});
  }
  std::vector<Vec> all;
  for (const auto& T : D.types)
    for (const auto& cb : T.copy_bases) all.insert(all.end(), cb.begin(), cb.end());
  D.basis = from_columns(M.d, all);
  D.C = inverse_or_throw(F, D.basis);
  for (std::size_t g = 0; g < M.gens.size(); ++g) {
    std::vector<Matrix> blocks;
    for (const auto& T : D.types)
      for (std::size_t c = 0; c < T.copy_bases.size(); ++c) blocks.push_back(T.rep.gens[g]);
    if (mat_mul(F, mat_mul(F, D.C, M.gens[g]), D.basis) != block_diag(blocks))
      throw VerificationFailure("decomposition does not block-diagonalize the module");
  }
  return D;
}

struct IsoDecision {
  bool isomorphic = false;
  Matrix C;           // C M_i = N_i C when isomorphic
  std::string method; // which rung decided
};

namespace detail {

inline bool next_combination(Vec& c, int q) {
  for (auto& x : c) {
    if (++x < q) return true;
    x = 0;
  }
  return false;
}

}  // namespace detail

// Layered search for an invertible intertwiner; the final structural rung is
// complete, so the only failure mode is Undecided from a split search.
inline IsoDecision module_isomorphism(const Module& M, const Module& N, std::uint64_t seed = 0) {
  check_compatible(M, N);
  const Field& F = M.F;
  IsoDecision R;
  if (M.d != N.d) {
    R.method = "dimension";
    return R;
  }
  if (M.gens == N.gens) {
    R = {true, Matrix::identity(M.d), "identical"};
    return R;
  }
  auto H = hom_space(M, N);
  if (H.empty()) {
    R.method = "hom-space";
    return R;
  }
  for (const auto& h : H)
    if (is_invertible(F, h)) {
      R = {true, h, "basis-vector"};
      return R;
    }
  double log2_size = static_cast<double>(H.size()) * std::log2(static_cast<double>(F.q()));
  if (log2_size <= 16.0) {
    Vec c(H.size(), 0);
    while (detail::next_combination(c, F.q())) {
      Matrix h = lin_comb(F, H, c);
      if (is_invertible(F, h)) {
        R = {true, h, "exhaustive"};
        return R;
      }
    }
    R.method = "exhaustive";
    return R;
  }
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> coin(0, F.q() - 1);
  for (std::size_t t = 0; t < 64 * H.size(); ++t) {
    Vec c(H.size());
    for (auto& x : c) x = static_cast<Elt>(coin(rng));
    Matrix h = lin_comb(F, H, c);
    if (is_invertible(F, h)) {
      R = {true, h, "random"};
      return R;
    }
  }
  // Structural: compare Krull-Schmidt decompositions.
  R.method = "structural";
  Decomposition DM = decompose_module(M, seed), DN = decompose_module(N, seed);
  if (DM.types.size() != DN.types.size()) return R;
  std::vector<char> used(DN.types.size(), 0);
  std::vector<Vec> src, dst;
  for (const auto& TM : DM.types) {
    bool found = false;
    for (std::size_t k = 0; k < DN.types.size() && !found; ++k) {
      if (used[k] || DN.types[k].copy_bases.size() != TM.copy_bases.size()) continue;
      auto X = indecomposable_isomorphism(TM.rep, DN.types[k].rep);
      if (!X) continue;
      used[k] = 1;
      found = true;
      for (std::size_t c = 0; c < TM.copy_bases.size(); ++c) {
        Matrix Q = from_columns(N.d, DN.types[k].copy_bases[c]);
        Matrix QX = mat_mul(F, Q, *X);
        for (int j = 0; j < QX.cols; ++j) {
          Vec v(N.d);
          for (int i = 0; i < N.d; ++i) v[i] = QX(i, j);
          dst.push_back(v);
        }
        src.insert(src.end(), TM.copy_bases[c].begin(), TM.copy_bases[c].end());
      }
    }
    if (!found) return R;
  }
  Matrix C = mat_mul(F, from_columns(N.d, dst), inverse_or_throw(F, from_columns(M.d, src)));
  if (!is_invertible(F, C) || !intertwines(F, C, M, N))
    throw VerificationFailure("structural isomorphism failed verification");
  R.isomorphic = true;
  R.C = C;
  return R;
}

// ------------------------------------------------------------------ unit groups

namespace detail {

inline std::uint64_t upow(std::uint64_t b, int e) {
  std::uint64_t r = 1;
  while (e-- > 0) r *= b;
  return r;
}

inline std::vector<std::uint64_t> prime_factors_u64(std::uint64_t n) {
  std::vector<std::uint64_t> ps;
  for (std::uint64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) {
      ps.push_back(d);
      while (n % d == 0) n /= d;
    }
  if (n > 1) ps.push_back(n);
  return ps;
}

// Lift of a primitive element of the residue field of a local algebra.
inline Matrix residue_primitive_element(const SemisimpleQuotient& S, int n) {
  const Field& F = S.F;
  const std::uint64_t order = upow(F.q(), S.dim()) - 1;
  const Vec one = S.class_of(Matrix::identity(n));
  auto ps = prime_factors_u64(order);
  if (order == 1) return Matrix::identity(n);
  Vec c(S.dim(), 0);
  while (next_combination(c, F.q())) {
    Matrix z = S.lift(c);
    bool ok = true;
    for (auto r : ps)
      if (S.class_of(mat_pow(F, z, static_cast<long>(order / r))) == one) {
        ok = false;
        break;
      }
    if (ok && S.class_of(mat_pow(F, z, static_cast<long>(order))) == one) return z;
  }
  throw VerificationFailure("residue algebra has no primitive element; End is not local");
}

}  // namespace detail

// Generators of the unit group of End(M): 1 + J from a filtration-adapted
// basis, plus lifts of GL_m(K) generators for each iso-type of multiplicity m
// with residue field K.
inline std::vector<Matrix> module_unit_group(const Module& M, std::uint64_t seed = 0) {
  const Field& F = M.F;
  const int d = M.d;
  std::vector<Matrix> gens;
  auto push = [&](Matrix u) {
    if (u.is_identity()) return;
    if (!is_invertible(F, u) || !intertwines(F, u, M, M))
      throw VerificationFailure("unit generator is not an invertible endomorphism");
    if (std::find(gens.begin(), gens.end(), u) == gens.end()) gens.push_back(std::move(u));
  };
  MatrixAlgebra E = endomorphism_algebra(M);
  for (const auto& b : filtration_basis_fp(F, algebra_radical(E))) push(mat_add(F, Matrix::identity(d), b));

  Decomposition D = decompose_module(M, seed);
  int offset = 0;
  std::vector<int> type_offset;
  for (const auto& T : D.types) {
    type_offset.push_back(offset);
    offset += T.rep.d * static_cast<int>(T.copy_bases.size());
  }
  for (std::size_t t = 0; t < D.types.size(); ++t) {
    const Module& iota = D.types[t].rep;
    const int k = iota.d;
    const int m = static_cast<int>(D.types[t].copy_bases.size());
    SemisimpleQuotient S = semisimple_quotient(endomorphism_algebra(iota));
    Matrix z = detail::residue_primitive_element(S, k);
    int fp_dim = S.dim() * (F.prime() ? 1 : 2);
    std::vector<Matrix> lambda;
    Matrix zp = Matrix::identity(k);
    for (int i = 0; i < fp_dim; ++i) {
      lambda.push_back(zp);
      zp = mat_mul(F, zp, z);
    }
    // Block matrix in decomposition coordinates; entries are k x k blocks of the type-t region.
    auto embed = [&](const std::vector<std::pair<std::pair<int, int>, Matrix>>& blocks) {
      Matrix U = Matrix::identity(d);
      for (const auto& [ij, X] : blocks) {
        int r0 = type_offset[t] + ij.first * k, c0 = type_offset[t] + ij.second * k;
        for (int a = 0; a < k; ++a)
          for (int b = 0; b < k; ++b) U(r0 + a, c0 + b) = X(a, b);
      }
      return mat_mul(F, mat_mul(F, D.basis, U), D.C);
    };
    push(embed({{{0, 0}, z}}));
    for (int i = 0; i < m; ++i)
      for (int j = 0; j < m; ++j) {
        if (i == j) continue;
        for (const auto& lam : lambda) push(embed({{{i, j}, lam}}));
      }
  }
  return gens;
}

// Order of the group generated by invertible matrices, by closure; capped.
inline std::uint64_t matrix_group_order(const Field& F, int n, const std::vector<Matrix>& gens,
                                        std::uint64_t cap = 1u << 20) {
  std::set<Vec> seen;
  std::vector<Matrix> frontier{Matrix::identity(n)};
  seen.insert(frontier[0].a);
  for (std::size_t i = 0; i < frontier.size(); ++i)
    for (const auto& g : gens) {
      Matrix y = mat_mul(F, frontier[i], g);
      if (seen.insert(y.a).second) {
        if (seen.size() > cap) throw BudgetExceeded("matrix group closure exceeds cap");
        frontier.push_back(std::move(y));
      }
    }
  return seen.size();
}

// Right regular module of a unital algebra: generator k acts by x -> x b_k in basis coordinates.
inline Module right_regular_module(const MatrixAlgebra& L) {
  const Field& F = L.F;
  Echelon E(F, L.n * L.n, true);
  for (const auto& b : L.basis) E.insert(b.a);
  Module R{F, L.dim(), {}};
  for (const auto& bk : L.basis) {
    Matrix X(L.dim(), L.dim());
    for (int j = 0; j < L.dim(); ++j) {
      auto c = E.coordinates(mat_mul(F, L.basis[j], bk).a);
      if (!c) throw InvalidInput("algebra is not closed under multiplication");
      for (int i = 0; i < L.dim(); ++i) X(i, j) = (*c)[i];
    }
    R.gens.push_back(std::move(X));
  }
  return R;
}

// Generators of the unit group of a unital algebra L. Units of L are the
// images phi(1) of units phi of End(L_L), which acts by left multiplication.
inline std::vector<Matrix> unit_group(const MatrixAlgebra& L, std::uint64_t seed = 0) {
  const Field& F = L.F;
  Echelon E(F, L.n * L.n, true);
  for (const auto& b : L.basis) E.insert(b.a);
  auto one = E.coordinates(Matrix::identity(L.n).a);
  if (!one) throw InvalidInput("unit_group: algebra is not unital");
  std::vector<Matrix> out;
  try {
    for (const auto& phi : module_unit_group(right_regular_module(L), seed)) {
      Matrix a = lin_comb(F, L.basis, mat_vec(F, phi, *one));
      if (!is_invertible(F, a)) throw VerificationFailure("lifted unit is singular");
      out.push_back(std::move(a));
    }
    return out;
  } catch (const Undecided&) {
    double log2_size = L.dim() * std::log2(static_cast<double>(F.q()));
    if (log2_size > 20.0) throw;
  }
  // Exhaustive fallback: add units not yet generated.
  std::set<Vec> generated{Matrix::identity(L.n).a};
  Vec c(L.dim(), 0);
  while (detail::next_combination(c, F.q())) {
    Matrix a = lin_comb(F, L.basis, c);
    if (generated.count(a.a) || !is_invertible(F, a)) continue;
    out.push_back(a);
    std::vector<Matrix> frontier;
    for (const auto& v : generated) frontier.push_back(unflatten(L.n, L.n, v));
    for (std::size_t i = 0; i < frontier.size(); ++i)
      for (const auto& g : out) {
        Matrix y = mat_mul(F, frontier[i], g);
        if (generated.insert(y.a).second) frontier.push_back(std::move(y));
      }
  }
  return out;
}

}  // namespace gpi
