#pragma once

#include <cstdint>
#include <vector>

#include "gpi/error.hpp"
#include "gpi/field.hpp"
#include "gpi/linalg.hpp"

namespace gpi {

// Subalgebra of M(n, q) given by a basis.
struct MatrixAlgebra {
  Field F;
  int n = 0;
  std::vector<Matrix> basis;

  int dim() const { return static_cast<int>(basis.size()); }
};

// Closure of gens (plus I when unital) under products.
inline MatrixAlgebra algebra_span(const Field& F, int n, const std::vector<Matrix>& gens, bool unital) {
  MatrixAlgebra L{F, n, {}};
  Echelon E(F, n * n);
  auto push = [&](const Matrix& M) {
    if (M.rows != n || M.cols != n) throw InvalidInput("algebra_span: generator has the wrong shape");
    if (E.insert(M.a)) L.basis.push_back(M);
  };
  if (unital) push(Matrix::identity(n));
  for (const auto& g : gens) push(g);
  for (std::size_t i = 0; i < L.basis.size(); ++i)
    for (std::size_t j = 0; j <= i; ++j) {
      Matrix a = L.basis[i], b = L.basis[j];
      push(mat_mul(F, a, b));
      push(mat_mul(F, b, a));
    }
  return L;
}

inline void check_algebra_closed(const MatrixAlgebra& L) {
  Echelon E(L.F, L.n * L.n);
  for (const auto& b : L.basis)
    if (!E.insert(b.a)) throw InvalidInput("algebra basis is linearly dependent");
  for (std::size_t i = 0; i < L.basis.size(); ++i)
    for (std::size_t j = 0; j < L.basis.size(); ++j)
      if (!E.contains(mat_mul(L.F, L.basis[i], L.basis[j]).a))
        throw InvalidInput("algebra is not closed: product of basis elements " + std::to_string(i) + " and " +
                           std::to_string(j) + " leaves the span");
}

inline bool algebra_contains(const MatrixAlgebra& L, const Matrix& M) {
  Echelon E(L.F, L.n * L.n);
  for (const auto& b : L.basis) E.insert(b.a);
  return E.contains(M.a);
}

// Span of products X*Y for X in A, Y in B.
inline std::vector<Matrix> product_span(const Field& F, const std::vector<Matrix>& A, const std::vector<Matrix>& B) {
  std::vector<Matrix> out;
  if (A.empty() || B.empty()) return out;
  const int n = A[0].rows;
  Echelon E(F, n * n);
  for (const auto& x : A)
    for (const auto& y : B) {
      Matrix p = mat_mul(F, x, y);
      if (E.insert(p.a)) out.push_back(std::move(p));
    }
  return out;
}

// J, J^2, ... until zero; throws if the sequence stalls (J not nilpotent).
inline std::vector<std::vector<Matrix>> power_filtration(const Field& F, const std::vector<Matrix>& J) {
  std::vector<std::vector<Matrix>> out;
  std::vector<Matrix> cur = J;
  while (!cur.empty()) {
    out.push_back(cur);
    auto next = product_span(F, cur, J);
    if (next.size() >= cur.size()) throw VerificationFailure("ideal is not nilpotent");
    cur = std::move(next);
  }
  return out;
}

namespace detail {

using IMat = std::vector<std::int64_t>;

inline IMat imat_mul(const IMat& A, const IMat& B, int n, std::int64_t mod) {
  IMat C(static_cast<std::size_t>(n) * n, 0);
  for (int i = 0; i < n; ++i)
    for (int k = 0; k < n; ++k) {
      std::int64_t a = A[static_cast<std::size_t>(i) * n + k];
      if (!a) continue;
      for (int j = 0; j < n; ++j) {
        auto& c = C[static_cast<std::size_t>(i) * n + j];
        c = (c + a * B[static_cast<std::size_t>(k) * n + j]) % mod;
      }
    }
  return C;
}

// Tr(lift(a)^{p^i}) / p^i mod p.
inline int trace_form(const Matrix& a, int p, int i) {
  const int n = a.rows;
  std::int64_t mod = 1;
  for (int t = 0; t <= i; ++t) mod *= p;
  IMat A(a.a.begin(), a.a.end());
  for (int t = 0; t < i; ++t) {
    // A <- A^p
    IMat R = A;
    for (int s = 1; s < p; ++s) R = imat_mul(R, A, n, mod);
    A = std::move(R);
  }
  std::int64_t tr = 0;
  for (int k = 0; k < n; ++k) tr = (tr + A[static_cast<std::size_t>(k) * n + k]) % mod;
  std::int64_t pi = mod / p;
  if (tr % pi != 0) throw VerificationFailure("trace form not divisible by p^i");
  return static_cast<int>((tr / pi) % p);
}

// Radical of an algebra over a prime field via iterated trace forms.
inline std::vector<Matrix> radical_prime(const Field& F, int n, const std::vector<Matrix>& A) {
  const int p = F.p();
  int k = 0;
  for (long pk = p; pk <= n; pk *= p) ++k;
  std::vector<Matrix> I = A;
  for (int i = 0; i <= k && !I.empty(); ++i) {
    // Rows indexed by y in A, columns by x in I: want c with sum_x c_x g_i(x y) = 0 for all y.
    Matrix G(static_cast<int>(A.size()), static_cast<int>(I.size()));
    for (std::size_t x = 0; x < I.size(); ++x)
      for (std::size_t y = 0; y < A.size(); ++y)
        G(static_cast<int>(y), static_cast<int>(x)) =
            static_cast<Elt>(trace_form(mat_mul(F, I[x], A[y]), p, i));
    std::vector<Matrix> next;
    for (const auto& c : nullspace(F, G)) next.push_back(lin_comb(F, I, c));
    I = std::move(next);
  }
  return I;
}

// GF(4) -> M(2, GF(2)): multiplication by c0 + c1 w on the basis (1, w).
inline Matrix embed_gf4(const Matrix& M) {
  Matrix B(2 * M.rows, 2 * M.cols);
  for (int i = 0; i < M.rows; ++i)
    for (int j = 0; j < M.cols; ++j) {
      int c = M(i, j), c0 = c & 1, c1 = c >> 1;
      B(2 * i, 2 * j) = static_cast<Elt>(c0);
      B(2 * i + 1, 2 * j) = static_cast<Elt>(c1);
      B(2 * i, 2 * j + 1) = static_cast<Elt>(c1);
      B(2 * i + 1, 2 * j + 1) = static_cast<Elt>(c0 ^ c1);
    }
  return B;
}

inline Matrix unembed_gf4(const Matrix& B) {
  Matrix M(B.rows / 2, B.cols / 2);
  for (int i = 0; i < M.rows; ++i)
    for (int j = 0; j < M.cols; ++j)
      M(i, j) = static_cast<Elt>(B(2 * i, 2 * j) | (B(2 * i + 1, 2 * j) << 1));
  return M;
}

}  // namespace detail

// Basis of the Jacobson radical of L; verified to be a nilpotent two-sided ideal.
inline std::vector<Matrix> algebra_radical(const MatrixAlgebra& L) {
  const Field& F = L.F;
  std::vector<Matrix> J;
  if (L.basis.empty()) return J;
  if (F.prime()) {
    J = detail::radical_prime(F, L.n, L.basis);
  } else {
    const Field F2 = Field::of(2);
    std::vector<Matrix> A2;
    for (const auto& b : L.basis) {
      A2.push_back(detail::embed_gf4(b));
      A2.push_back(detail::embed_gf4(mat_scale(F, 2, b)));
    }
    Echelon E(F, L.n * L.n);
    for (const auto& j2 : detail::radical_prime(F2, 2 * L.n, A2)) {
      Matrix j = detail::unembed_gf4(j2);
      if (E.insert(j.a)) J.push_back(j);
    }
  }
  // Postcondition: two-sided ideal and nilpotent.
  Echelon EJ(F, L.n * L.n);
  for (const auto& j : J) EJ.insert(j.a);
  for (const auto& j : J)
    for (const auto& b : L.basis)
      if (!EJ.contains(mat_mul(F, j, b).a) || !EJ.contains(mat_mul(F, b, j).a))
        throw VerificationFailure("computed radical is not an ideal");
  power_filtration(F, J);
  return J;
}

// F_p-basis of J adapted to J ⊃ J^2 ⊃ ...: deepest layer first.
inline std::vector<Matrix> filtration_basis_fp(const Field& F, const std::vector<Matrix>& J) {
  std::vector<Matrix> out;
  if (J.empty()) return out;
  auto layers = power_filtration(F, J);
  const int n = J[0].rows;
  Echelon E(F, n * n);
  for (int t = static_cast<int>(layers.size()) - 1; t >= 0; --t)
    for (const auto& b : layers[t])
      if (E.insert(b.a)) {
        out.push_back(b);
        if (!F.prime()) out.push_back(mat_scale(F, 2, b));
      }
  return out;
}

}  // namespace gpi
