#pragma once

#include <algorithm>
#include <cstdint>
#include <random>
#include <utility>
#include <vector>

#include "gpi/error.hpp"
#include "gpi/field.hpp"
#include "gpi/linalg.hpp"

namespace gpi {

// Coefficients low degree first; no trailing zeros (the zero polynomial is empty).
using Poly = std::vector<Elt>;

inline void poly_trim(Poly& f) {
  while (!f.empty() && f.back() == 0) f.pop_back();
}

inline int poly_deg(const Poly& f) { return static_cast<int>(f.size()) - 1; }

inline Poly poly_add(const Field& F, Poly a, const Poly& b) {
  if (a.size() < b.size()) a.resize(b.size(), 0);
  for (std::size_t i = 0; i < b.size(); ++i) a[i] = F.add(a[i], b[i]);
  poly_trim(a);
  return a;
}

inline Poly poly_sub(const Field& F, Poly a, const Poly& b) {
  if (a.size() < b.size()) a.resize(b.size(), 0);
  for (std::size_t i = 0; i < b.size(); ++i) a[i] = F.sub(a[i], b[i]);
  poly_trim(a);
  return a;
}

inline Poly poly_mul(const Field& F, const Poly& a, const Poly& b) {
  if (a.empty() || b.empty()) return {};
  Poly c(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i)
    if (a[i]) F.axpy(c.data() + i, a[i], b.data(), b.size());
  poly_trim(c);
  return c;
}

inline Poly poly_monic(const Field& F, Poly f) {
  if (f.empty()) return f;
  Elt s = F.inv(f.back());
  F.scale(f.data(), s, f.size());
  return f;
}

// Returns (quotient, remainder).
inline std::pair<Poly, Poly> poly_divmod(const Field& F, Poly a, const Poly& b) {
  if (b.empty()) throw InvalidInput("polynomial division by zero");
  if (a.size() < b.size()) return {{}, a};
  Poly q(a.size() - b.size() + 1, 0);
  Elt lead_inv = F.inv(b.back());
  for (int i = poly_deg(a); i >= poly_deg(b); --i) {
    Elt c = F.mul(a[i], lead_inv);
    if (!c) continue;
    int shift = i - poly_deg(b);
    q[shift] = c;
    F.axpy(a.data() + shift, F.neg(c), b.data(), b.size());
  }
  poly_trim(a);
  poly_trim(q);
  return {q, a};
}

inline Poly poly_mod(const Field& F, const Poly& a, const Poly& b) { return poly_divmod(F, a, b).second; }

inline Poly poly_gcd(const Field& F, Poly a, Poly b) {
  while (!b.empty()) {
    Poly r = poly_mod(F, a, b);
    a = std::move(b);
    b = std::move(r);
  }
  return poly_monic(F, a);
}

inline Poly poly_powmod(const Field& F, Poly base, std::uint64_t e, const Poly& m) {
  Poly r{1};
  base = poly_mod(F, base, m);
  while (e > 0) {
    if (e & 1) r = poly_mod(F, poly_mul(F, r, base), m);
    e >>= 1;
    if (e) base = poly_mod(F, poly_mul(F, base, base), m);
  }
  return poly_mod(F, r, m);
}

inline Poly poly_derivative(const Field& F, const Poly& f) {
  if (f.size() <= 1) return {};
  Poly d(f.size() - 1, 0);
  for (std::size_t i = 1; i < f.size(); ++i) {
    Elt k = F.from_int(static_cast<long>(i % F.p()));
    d[i - 1] = F.mul(k, f[i]);
  }
  poly_trim(d);
  return d;
}

// x -> x^{q/p} is the inverse Frobenius on GF(q).
inline Poly poly_pth_root(const Field& F, const Poly& f) {
  const int p = F.p();
  Poly r((f.size() + p - 1) / p, 0);
  for (std::size_t i = 0; i < f.size(); i += p) r[i / p] = F.pow(f[i], F.q() / p);
  poly_trim(r);
  return r;
}

inline Matrix poly_eval(const Field& F, const Poly& f, const Matrix& A) {
  Matrix R(A.rows, A.cols);
  for (int i = poly_deg(f); i >= 0; --i) {
    R = mat_mul(F, R, A);
    for (int k = 0; k < A.rows; ++k) R(k, k) = F.add(R(k, k), f[i]);
  }
  return R;
}

namespace detail {

inline std::uint64_t ipow(std::uint64_t b, int e) {
  std::uint64_t r = 1;
  while (e-- > 0) r *= b;
  return r;
}

// Square-free factorization: returns (g, multiplicity) with g square-free.
inline std::vector<std::pair<Poly, int>> square_free(const Field& F, Poly f) {
  std::vector<std::pair<Poly, int>> out;
  f = poly_monic(F, f);
  if (poly_deg(f) <= 0) return out;
  Poly df = poly_derivative(F, f);
  if (df.empty()) {
    for (auto& [g, m] : square_free(F, poly_pth_root(F, f))) out.push_back({g, m * F.p()});
    return out;
  }
  Poly c = poly_gcd(F, f, df);
  Poly w = poly_divmod(F, f, c).first;
  int i = 1;
  while (poly_deg(w) > 0) {
    Poly y = poly_gcd(F, w, c);
    Poly z = poly_divmod(F, w, y).first;
    if (poly_deg(z) > 0) out.push_back({poly_monic(F, z), i});
    ++i;
    w = y;
    c = poly_divmod(F, c, y).first;
  }
  if (poly_deg(c) > 0)
    for (auto& [g, m] : square_free(F, poly_pth_root(F, c))) out.push_back({g, m * F.p()});
  return out;
}

// Distinct-degree factorization of a monic square-free polynomial.
inline std::vector<std::pair<Poly, int>> distinct_degree(const Field& F, Poly f) {
  std::vector<std::pair<Poly, int>> out;
  Poly x{0, 1};
  Poly h = x;
  int d = 0;
  while (poly_deg(f) >= 2 * (d + 1)) {
    ++d;
    h = poly_powmod(F, h, F.q(), f);
    Poly g = poly_gcd(F, f, poly_sub(F, h, x));
    if (poly_deg(g) > 0) {
      out.push_back({g, d});
      f = poly_divmod(F, f, g).first;
      h = poly_mod(F, h, f);
    }
  }
  if (poly_deg(f) > 0) out.push_back({f, poly_deg(f)});
  return out;
}

// Equal-degree splitting (Cantor-Zassenhaus), seeded for determinism.
inline void equal_degree(const Field& F, const Poly& f, int d, std::mt19937_64& rng,
                         std::vector<Poly>& out) {
  const int n = poly_deg(f);
  if (n == d) {
    out.push_back(f);
    return;
  }
  std::uniform_int_distribution<int> coin(0, F.q() - 1);
  for (int attempt = 0; attempt < 10000; ++attempt) {
    Poly a(n, 0);
    for (auto& c : a) c = static_cast<Elt>(coin(rng));
    poly_trim(a);
    if (poly_deg(a) < 1) continue;
    Poly g;
    if (F.p() == 2) {
      // Trace map a + a^2 + ... + a^{2^{k d - 1}} where q^d = 2^{k d}.
      int k = (F.q() == 4) ? 2 : 1;
      Poly t = a, s = a;
      for (int i = 1; i < k * d; ++i) {
        s = poly_mod(F, poly_mul(F, s, s), f);
        t = poly_add(F, t, s);
      }
      g = poly_gcd(F, f, t);
    } else {
      std::uint64_t e = (ipow(F.q(), d) - 1) / 2;
      Poly b = poly_sub(F, poly_powmod(F, a, e, f), Poly{1});
      g = poly_gcd(F, f, b);
    }
    if (poly_deg(g) > 0 && poly_deg(g) < n) {
      equal_degree(F, g, d, rng, out);
      equal_degree(F, poly_divmod(F, f, g).first, d, rng, out);
      return;
    }
  }
  throw Undecided("equal-degree factorization did not split");
}

}  // namespace detail

// Rabin irreducibility test for a polynomial of positive degree.
inline bool poly_is_irreducible(const Field& F, Poly f) {
  f = poly_monic(F, f);
  const int n = poly_deg(f);
  if (n <= 0) return false;
  if (n == 1) return true;
  Poly x{0, 1};
  std::vector<int> primes;
  for (int r = 2, m = n; r <= m; ++r)
    if (m % r == 0) {
      primes.push_back(r);
      while (m % r == 0) m /= r;
    }
  // x^{q^k} mod f for k = 1..n.
  std::vector<Poly> frob(n + 1);
  frob[0] = x;
  for (int k = 1; k <= n; ++k) frob[k] = poly_powmod(F, frob[k - 1], F.q(), f);
  if (!poly_sub(F, frob[n], poly_mod(F, x, f)).empty()) return false;
  for (int r : primes) {
    Poly g = poly_gcd(F, f, poly_sub(F, frob[n / r], x));
    if (poly_deg(g) != 0) return false;
  }
  return true;
}

struct Factor {
  Poly poly;  // monic irreducible
  int multiplicity = 0;
};

// Irreducible factorization of a nonzero polynomial (leading unit dropped).
// Factors are sorted by degree, then coefficients.
inline std::vector<Factor> factor_univariate(const Field& F, const Poly& f_in) {
  Poly f = f_in;
  poly_trim(f);
  if (f.empty()) throw InvalidInput("factor_univariate: zero polynomial");
  std::vector<Factor> out;
  std::mt19937_64 rng(0x5eed);
  for (auto& [g, mult] : detail::square_free(F, f)) {
    for (auto& [h, d] : detail::distinct_degree(F, g)) {
      std::vector<Poly> parts;
      detail::equal_degree(F, poly_monic(F, h), d, rng, parts);
      for (auto& part : parts) out.push_back({poly_monic(F, part), mult});
    }
  }
  std::sort(out.begin(), out.end(), [](const Factor& a, const Factor& b) {
    if (a.poly.size() != b.poly.size()) return a.poly.size() < b.poly.size();
    std::vector<Elt> ra(a.poly.rbegin(), a.poly.rend()), rb(b.poly.rbegin(), b.poly.rend());
    return ra < rb;
  });
  // Merge equal factors that arrive from different square-free layers.
  std::vector<Factor> merged;
  for (auto& fac : out) {
    if (!merged.empty() && merged.back().poly == fac.poly)
      merged.back().multiplicity += fac.multiplicity;
    else
      merged.push_back(fac);
  }
  return merged;
}

// Minimal polynomial of a square matrix (monic).
inline Poly minimal_polynomial(const Field& F, const Matrix& A) {
  const int n = A.rows;
  Echelon E(F, n * n, true);
  Matrix P = Matrix::identity(n);
  for (int k = 0; k <= n; ++k) {
    auto coords = E.coordinates(P.a);
    if (coords) {
      Poly m(k + 1, 0);
      m[k] = 1;
      for (int i = 0; i < k; ++i) m[i] = F.neg((*coords)[i]);
      return m;
    }
    E.insert(P.a);
    P = mat_mul(F, P, A);
  }
  throw VerificationFailure("minimal polynomial degree exceeds matrix size");
}

}  // namespace gpi
