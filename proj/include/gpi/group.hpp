#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <numeric>
#include <optional>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "gpi/error.hpp"
#include "gpi/field.hpp"
#include "gpi/linalg.hpp"

namespace gpi {

// Cayley-table group; element 0 is the identity.
class FiniteGroup {
 public:
  FiniteGroup() : n_(1), table_{0}, inv_{0} {}

  int order() const { return n_; }
  int mul(int a, int b) const { return table_[static_cast<std::size_t>(a) * n_ + b]; }
  int inv(int a) const { return inv_[a]; }
  const std::vector<int>& table() const { return table_; }
  int conj(int g, int x) const { return mul(mul(g, x), inv(g)); }  // g x g^-1
  int commutator(int x, int y) const { return mul(mul(inv(x), inv(y)), mul(x, y)); }
  int power(int x, long e) const {
    int r = 0;
    if (e < 0) {
      x = inv(x);
      e = -e;
    }
    while (e > 0) {
      if (e & 1) r = mul(r, x);
      x = mul(x, x);
      e >>= 1;
    }
    return r;
  }

  std::vector<std::vector<int>> rows() const {
    std::vector<std::vector<int>> t(n_, std::vector<int>(n_));
    for (int i = 0; i < n_; ++i)
      for (int j = 0; j < n_; ++j) t[i][j] = mul(i, j);
    return t;
  }

  bool operator==(const FiniteGroup& o) const { return table_ == o.table_; }

  friend FiniteGroup load_group(const std::vector<std::vector<int>>& table);
  friend FiniteGroup group_from_flat(int n, std::vector<int> flat);

 private:
  int n_;
  std::vector<int> table_;
  std::vector<int> inv_;
};

// Validates a Cayley table. Errors name the first violated axiom.
inline FiniteGroup load_group(const std::vector<std::vector<int>>& t) {
  const int n = static_cast<int>(t.size());
  if (n == 0) throw InvalidInput("group table is empty");
  for (int i = 0; i < n; ++i)
    if (static_cast<int>(t[i].size()) != n)
      throw InvalidInput("group table is not square: row " + std::to_string(i) + " has " +
                         std::to_string(t[i].size()) + " entries");
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (t[i][j] < 0 || t[i][j] >= n)
        throw InvalidInput("entry (" + std::to_string(i) + "," + std::to_string(j) + ") out of range");
  for (int i = 0; i < n; ++i) {
    std::vector<char> seen_r(n, 0), seen_c(n, 0);
    for (int j = 0; j < n; ++j) {
      if (seen_r[t[i][j]]++)
        throw InvalidInput("row " + std::to_string(i) + " is not a permutation");
      if (seen_c[t[j][i]]++)
        throw InvalidInput("column " + std::to_string(i) + " is not a permutation");
    }
  }
  for (int i = 0; i < n; ++i)
    if (t[0][i] != i || t[i][0] != i)
      throw InvalidInput("identity axiom violated: element 0 is not a two-sided identity (at " +
                         std::to_string(i) + ")");
  auto assoc_fail = [&](int a, int b, int c) {
    return t[t[a][b]][c] != t[a][t[b][c]];
  };
  auto witness = [](int a, int b, int c) {
    return InvalidInput("associativity violated at (" + std::to_string(a) + "," + std::to_string(b) +
                        "," + std::to_string(c) + ")");
  };
  if (n <= 512) {
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b)
        for (int c = 0; c < n; ++c)
          if (assoc_fail(a, b, c)) throw witness(a, b, c);
  } else {
    std::mt19937 rng(12345);
    std::uniform_int_distribution<int> pick(0, n - 1);
    for (int s = 0; s < 200000; ++s) {
      int a = pick(rng), b = pick(rng), c = pick(rng);
      if (assoc_fail(a, b, c)) throw witness(a, b, c);
    }
  }
  FiniteGroup G;
  G.n_ = n;
  G.table_.resize(static_cast<std::size_t>(n) * n);
  G.inv_.assign(n, -1);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      G.table_[static_cast<std::size_t>(i) * n + j] = t[i][j];
      if (t[i][j] == 0) G.inv_[i] = j;
    }
  return G;
}

inline FiniteGroup group_from_flat(int n, std::vector<int> flat) {
  std::vector<std::vector<int>> t(n, std::vector<int>(n));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) t[i][j] = flat[static_cast<std::size_t>(i) * n + j];
  return load_group(t);
}

// Sorted element list of a subgroup, with a membership bitmap.
struct Subgroup {
  std::vector<int> elements;
  std::vector<char> member;

  int size() const { return static_cast<int>(elements.size()); }
  bool contains(int x) const { return member[x] != 0; }
  bool operator==(const Subgroup& o) const { return elements == o.elements; }

  static Subgroup from_elements(int n, std::vector<int> els) {
    Subgroup S;
    std::sort(els.begin(), els.end());
    els.erase(std::unique(els.begin(), els.end()), els.end());
    S.member.assign(n, 0);
    for (int x : els) S.member[x] = 1;
    S.elements = std::move(els);
    return S;
  }
  static Subgroup whole(int n) {
    std::vector<int> all(n);
    std::iota(all.begin(), all.end(), 0);
    return from_elements(n, all);
  }
  static Subgroup trivial(int n) { return from_elements(n, {0}); }
};

inline int element_order(const FiniteGroup& G, int x) {
  int k = 1;
  for (int y = x; y != 0; y = G.mul(y, x)) ++k;
  return k;
}

// BFS closure; deterministic. Returns elements in discovery order.
inline std::vector<int> closure_bfs(const FiniteGroup& G, const std::vector<int>& gens) {
  std::vector<char> seen(G.order(), 0);
  std::vector<int> out{0};
  seen[0] = 1;
  for (std::size_t i = 0; i < out.size(); ++i)
    for (int g : gens) {
      int y = G.mul(out[i], g);
      if (!seen[y]) {
        seen[y] = 1;
        out.push_back(y);
      }
    }
  return out;
}

inline Subgroup subgroup_closure(const FiniteGroup& G, const std::vector<int>& gens) {
  for (int g : gens)
    if (g < 0 || g >= G.order()) throw InvalidInput("generator out of range");
  return Subgroup::from_elements(G.order(), closure_bfs(G, gens));
}

inline bool is_subgroup(const FiniteGroup& G, const std::vector<int>& els) {
  std::vector<char> m(G.order(), 0);
  for (int x : els) {
    if (x < 0 || x >= G.order()) return false;
    m[x] = 1;
  }
  if (!m[0]) return false;
  for (int x : els)
    for (int y : els)
      if (!m[G.mul(x, G.inv(y))]) return false;
  return true;
}

inline Subgroup center(const FiniteGroup& G) {
  std::vector<int> z;
  for (int x = 0; x < G.order(); ++x) {
    bool central = true;
    for (int g = 0; g < G.order() && central; ++g) central = G.mul(x, g) == G.mul(g, x);
    if (central) z.push_back(x);
  }
  return Subgroup::from_elements(G.order(), z);
}

// Derived subgroup of the subgroup H (pass the whole group for G').
inline Subgroup derived_of(const FiniteGroup& G, const Subgroup& H) {
  std::vector<int> comms;
  std::vector<char> seen(G.order(), 0);
  for (int x : H.elements)
    for (int y : H.elements) {
      int c = G.commutator(x, y);
      if (!seen[c]) {
        seen[c] = 1;
        comms.push_back(c);
      }
    }
  return subgroup_closure(G, comms);
}

inline Subgroup derived_subgroup(const FiniteGroup& G) { return derived_of(G, Subgroup::whole(G.order())); }

inline bool is_solvable_subgroup(const FiniteGroup& G, Subgroup H) {
  while (H.size() > 1) {
    Subgroup D = derived_of(G, H);
    if (D.size() == H.size()) return false;
    H = std::move(D);
  }
  return true;
}

inline bool is_abelian(const FiniteGroup& G, const Subgroup& H) {
  for (int x : H.elements)
    for (int y : H.elements)
      if (G.mul(x, y) != G.mul(y, x)) return false;
  return true;
}

inline Subgroup normal_closure(const FiniteGroup& G, const std::vector<int>& S) {
  std::vector<int> gens;
  std::vector<char> seen(G.order(), 0);
  for (int s : S)
    for (int g = 0; g < G.order(); ++g) {
      int c = G.conj(g, s);
      if (!seen[c]) {
        seen[c] = 1;
        gens.push_back(c);
      }
    }
  return subgroup_closure(G, gens);
}

struct NormalityWitness {
  int g = 0;  // conjugating element
  int x = 0;  // subgroup element with g x g^-1 outside
};

inline std::optional<NormalityWitness> normality_violation(const FiniteGroup& G, const Subgroup& N) {
  for (int g = 0; g < G.order(); ++g)
    for (int x : N.elements)
      if (!N.contains(G.conj(g, x))) return NormalityWitness{g, x};
  return std::nullopt;
}

inline bool is_normal(const FiniteGroup& G, const Subgroup& N) { return !normality_violation(G, N); }

struct Quotient {
  FiniteGroup group;
  std::vector<int> proj;  // element -> coset index
  std::vector<int> reps;  // coset index -> least representative
};

inline Quotient quotient_group(const FiniteGroup& G, const Subgroup& N) {
  if (auto w = normality_violation(G, N))
    throw InvalidInput("subgroup is not normal: conjugating " + std::to_string(w->x) + " by " +
                       std::to_string(w->g) + " leaves it");
  const int n = G.order();
  Quotient Q;
  Q.proj.assign(n, -1);
  for (int x = 0; x < n; ++x) {
    if (Q.proj[x] >= 0) continue;
    int idx = static_cast<int>(Q.reps.size());
    Q.reps.push_back(x);
    for (int a : N.elements) Q.proj[G.mul(x, a)] = idx;
  }
  const int m = static_cast<int>(Q.reps.size());
  std::vector<int> flat(static_cast<std::size_t>(m) * m);
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j) flat[static_cast<std::size_t>(i) * m + j] = Q.proj[G.mul(Q.reps[i], Q.reps[j])];
  Q.group = group_from_flat(m, std::move(flat));
  return Q;
}

inline std::vector<int> prime_divisors(long n) {
  std::vector<int> ps;
  for (long d = 2; d * d <= n; ++d)
    if (n % d == 0) {
      ps.push_back(static_cast<int>(d));
      while (n % d == 0) n /= d;
    }
  if (n > 1) ps.push_back(static_cast<int>(n));
  return ps;
}

inline long p_part(long n, int p) {
  long r = 1;
  while (n % p == 0) {
    n /= p;
    r *= p;
  }
  return r;
}

inline Subgroup normalizer(const FiniteGroup& G, const Subgroup& H) {
  std::vector<int> els;
  for (int g = 0; g < G.order(); ++g) {
    bool ok = true;
    for (int x : H.elements)
      if (!H.contains(G.conj(g, x))) {
        ok = false;
        break;
      }
    if (ok) els.push_back(g);
  }
  return Subgroup::from_elements(G.order(), els);
}

// Grows a p-subgroup inside its normalizer until it has full p-part order.
inline Subgroup sylow_subgroup(const FiniteGroup& G, int p) {
  if (!is_prime(p)) throw InvalidInput("sylow_subgroup: " + std::to_string(p) + " is not prime");
  const long target = p_part(G.order(), p);
  Subgroup P = Subgroup::trivial(G.order());
  while (P.size() < target) {
    Subgroup N = normalizer(G, P);
    bool grown = false;
    for (int x : N.elements) {
      if (P.contains(x)) continue;
      int k = 1;
      for (int y = x; !P.contains(y); y = G.mul(y, x)) ++k;
      if (k % p != 0) continue;
      int y = G.power(x, k / p);
      std::vector<int> gens = P.elements;
      gens.push_back(y);
      P = subgroup_closure(G, gens);
      grown = true;
      break;
    }
    if (!grown) throw VerificationFailure("sylow_subgroup: normalizer quotient has no element of order p");
  }
  return P;
}

inline Subgroup intersect(const FiniteGroup& G, const Subgroup& A, const Subgroup& B) {
  std::vector<int> els;
  for (int x : A.elements)
    if (B.contains(x)) els.push_back(x);
  return Subgroup::from_elements(G.order(), els);
}

// Largest normal p-subgroup: the core of a Sylow p-subgroup.
inline Subgroup o_p_subgroup(const FiniteGroup& G, int p) {
  Subgroup P = sylow_subgroup(G, p);
  std::vector<char> keep(G.order(), 0);
  for (int x : P.elements) keep[x] = 1;
  for (int g = 0; g < G.order(); ++g)
    for (int x : P.elements)
      if (keep[x] && !P.contains(G.conj(g, x))) keep[x] = 0;
  std::vector<int> els;
  for (int x : P.elements)
    if (keep[x]) els.push_back(x);
  return Subgroup::from_elements(G.order(), els);
}

inline Subgroup solvable_radical(const FiniteGroup& G) {
  std::vector<char> in_rad(G.order(), 0);
  in_rad[0] = 1;
  std::vector<int> gens;
  for (int x = 1; x < G.order(); ++x) {
    if (in_rad[x]) continue;
    if (!is_solvable_subgroup(G, normal_closure(G, {x}))) continue;
    gens.push_back(x);
    for (int y : closure_bfs(G, gens)) in_rad[y] = 1;
  }
  return subgroup_closure(G, gens);
}

struct ElemAbStructure {
  int p = 0;
  int d = 0;
  std::vector<int> basis;
  std::vector<Vec> coords;       // indexed by group element; empty when outside
  std::vector<int> elements;     // indexed by coordinate number sum c_i p^i

  int size() const { return static_cast<int>(elements.size()); }
  int index_of(const Vec& v) const {
    int idx = 0;
    for (int i = d - 1; i >= 0; --i) idx = idx * p + v[i];
    return idx;
  }
  int element_of(const Vec& v) const { return elements[index_of(v)]; }
};

struct ElemAbCheck {
  std::optional<ElemAbStructure> structure;
  std::string reason;  // witness when not elementary abelian
};

inline ElemAbCheck elem_ab_structure(const FiniteGroup& G, const Subgroup& S) {
  ElemAbCheck out;
  for (int x : S.elements)
    for (int y : S.elements)
      if (G.mul(x, y) != G.mul(y, x)) {
        out.reason = "non-commuting pair (" + std::to_string(x) + "," + std::to_string(y) + ")";
        return out;
      }
  ElemAbStructure E;
  if (S.size() == 1) {
    E.p = 1;
    E.d = 0;
    E.coords.assign(G.order(), Vec{});
    E.elements = {0};
    out.structure = E;
    return out;
  }
  auto ps = prime_divisors(S.size());
  if (ps.size() != 1) {
    out.reason = "order " + std::to_string(S.size()) + " is not a prime power";
    return out;
  }
  const int p = ps[0];
  for (int x : S.elements)
    if (x != 0 && element_order(G, x) != p) {
      out.reason = "element " + std::to_string(x) + " has order " + std::to_string(element_order(G, x));
      return out;
    }
  E.p = p;
  std::vector<char> in_span(G.order(), 0);
  std::vector<int> span{0};
  in_span[0] = 1;
  for (int x : S.elements) {
    if (in_span[x]) continue;
    E.basis.push_back(x);
    std::vector<int> next;
    for (int k = 0; k < p; ++k) {
      int xk = G.power(x, k);
      for (int s : span) next.push_back(G.mul(s, xk));
    }
    span = next;
    for (int s : span) in_span[s] = 1;
  }
  E.d = static_cast<int>(E.basis.size());
  E.coords.assign(G.order(), Vec{});
  long total = 1;
  for (int i = 0; i < E.d; ++i) total *= p;
  E.elements.assign(total, 0);
  for (long idx = 0; idx < total; ++idx) {
    Vec v(E.d);
    long r = idx;
    int g = 0;
    for (int i = 0; i < E.d; ++i) {
      v[i] = static_cast<Elt>(r % p);
      r /= p;
      g = G.mul(g, G.power(E.basis[i], v[i]));
    }
    E.elements[idx] = g;
    E.coords[g] = v;
  }
  out.structure = E;
  return out;
}

// ---------------------------------------------------------------- constructors

inline FiniteGroup cyclic_group(int n) {
  if (n < 1) throw InvalidInput("cyclic group order must be >= 1");
  std::vector<int> flat(static_cast<std::size_t>(n) * n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) flat[static_cast<std::size_t>(i) * n + j] = (i + j) % n;
  return group_from_flat(n, std::move(flat));
}

inline FiniteGroup elem_ab_group(int p, int d) {
  if (!is_prime(p)) throw InvalidInput("elem_ab: p must be prime");
  if (d < 0) throw InvalidInput("elem_ab: d must be >= 0");
  long n = 1;
  for (int i = 0; i < d; ++i) {
    n *= p;
    if (n > 4096) throw InvalidInput("elem_ab: group too large for a Cayley table");
  }
  std::vector<int> flat(static_cast<std::size_t>(n) * n);
  for (long a = 0; a < n; ++a)
    for (long b = 0; b < n; ++b) {
      long x = a, y = b, s = 0, w = 1;
      for (int i = 0; i < d; ++i) {
        s += ((x % p + y % p) % p) * w;
        x /= p;
        y /= p;
        w *= p;
      }
      flat[static_cast<std::size_t>(a * n + b)] = static_cast<int>(s);
    }
  return group_from_flat(static_cast<int>(n), std::move(flat));
}

namespace detail {

// Groups of order 2N with elements x^a y^b (index a*N + b), y of order N,
// y x = x y^r and x^2 = y^s.
inline FiniteGroup metacyclic_2(int N, int r, int s) {
  const int n = 2 * N;
  auto mod = [N](long v) { return static_cast<int>(((v % N) + N) % N); };
  std::vector<long> rpow{1, r};
  std::vector<int> flat(static_cast<std::size_t>(n) * n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      int a = i / N, b = i % N, c = j / N, e = j % N;
      // y^b x^c = x^c y^{b r^c}
      long exp = mod(static_cast<long>(b) * (c ? r : 1) + e);
      int xa = a + c;
      if (xa == 2) {
        xa = 0;
        exp = mod(exp + s);
      }
      flat[static_cast<std::size_t>(i) * n + j] = xa * N + static_cast<int>(exp);
    }
  return group_from_flat(n, std::move(flat));
}

}  // namespace detail

inline FiniteGroup dihedral_group(int m) {
  if (m < 1) throw InvalidInput("dihedral: m must be >= 1");
  if (m > 10) throw InvalidInput("dihedral: m too large");
  const int N = 1 << m;
  return detail::metacyclic_2(N, N - 1, 0);
}

// Requires m >= 3: at m = 2 the relation degenerates to the abelian Z2 x Z4.
inline FiniteGroup semidihedral_group(int m) {
  if (m < 3) throw InvalidInput("semidihedral: m must be >= 3 (m = 2 gives the abelian group Z2 x Z4)");
  if (m > 10) throw InvalidInput("semidihedral: m too large");
  const int N = 1 << m;
  return detail::metacyclic_2(N, (1 << (m - 1)) - 1, 0);
}

inline FiniteGroup quaternion_group(int m) {
  if (m < 2) throw InvalidInput("quaternion: m must be >= 2");
  if (m > 10) throw InvalidInput("quaternion: m too large");
  const int N = 1 << m;
  return detail::metacyclic_2(N, N - 1, N / 2);
}

// Dihedral group of order 2k (symmetries of a k-gon); used for non-2-power orders.
inline FiniteGroup dihedral_order(int two_k) {
  if (two_k < 2 || two_k % 2) throw InvalidInput("dihedral_order: order must be even and >= 2");
  const int k = two_k / 2;
  return detail::metacyclic_2(k, k - 1 < 1 ? 0 : k - 1, 0);
}

inline FiniteGroup direct_product(const FiniteGroup& G, const FiniteGroup& H) {
  const int a = G.order(), b = H.order(), n = a * b;
  if (n > 4096) throw InvalidInput("direct_product: group too large");
  std::vector<int> flat(static_cast<std::size_t>(n) * n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      flat[static_cast<std::size_t>(i) * n + j] = G.mul(i / b, j / b) * b + H.mul(i % b, j % b);
  return group_from_flat(n, std::move(flat));
}

// Symmetric group on k points; elements in lexicographic order, product "x then y".
inline FiniteGroup symmetric_group(int k) {
  if (k < 1 || k > 5) throw InvalidInput("symmetric: k must be in [1,5]");
  std::vector<std::vector<int>> perms;
  std::vector<int> p(k);
  std::iota(p.begin(), p.end(), 0);
  do perms.push_back(p);
  while (std::next_permutation(p.begin(), p.end()));
  std::map<std::vector<int>, int> index;
  for (std::size_t i = 0; i < perms.size(); ++i) index[perms[i]] = static_cast<int>(i);
  const int n = static_cast<int>(perms.size());
  std::vector<int> flat(static_cast<std::size_t>(n) * n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      std::vector<int> c(k);
      for (int t = 0; t < k; ++t) c[t] = perms[j][perms[i][t]];
      flat[static_cast<std::size_t>(i) * n + j] = index[c];
    }
  return group_from_flat(n, std::move(flat));
}

// Subgroup of even permutations of symmetric_group(k), as a group.
inline FiniteGroup alternating_group(int k) {
  FiniteGroup S = symmetric_group(k);
  std::vector<std::vector<int>> perms;
  std::vector<int> p(k);
  std::iota(p.begin(), p.end(), 0);
  std::vector<int> even;
  int idx = 0;
  do {
    int inversions = 0;
    for (int a = 0; a < k; ++a)
      for (int b = a + 1; b < k; ++b)
        if (p[a] > p[b]) ++inversions;
    if (inversions % 2 == 0) even.push_back(idx);
    ++idx;
  } while (std::next_permutation(p.begin(), p.end()));
  std::vector<int> pos(S.order(), -1);
  for (std::size_t i = 0; i < even.size(); ++i) pos[even[i]] = static_cast<int>(i);
  const int n = static_cast<int>(even.size());
  std::vector<int> flat(static_cast<std::size_t>(n) * n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) flat[static_cast<std::size_t>(i) * n + j] = pos[S.mul(even[i], even[j])];
  return group_from_flat(n, std::move(flat));
}

// Relabels G by a permutation sigma of [0,n) fixing 0: new element sigma[x] plays x.
inline FiniteGroup relabel(const FiniteGroup& G, const std::vector<int>& sigma) {
  const int n = G.order();
  if (static_cast<int>(sigma.size()) != n || sigma[0] != 0) throw InvalidInput("relabel: bad permutation");
  std::vector<int> flat(static_cast<std::size_t>(n) * n);
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y) flat[static_cast<std::size_t>(sigma[x]) * n + sigma[y]] = sigma[G.mul(x, y)];
  return group_from_flat(n, std::move(flat));
}

inline FiniteGroup make_group(const std::string& family, const std::vector<int>& params) {
  auto need = [&](std::size_t k) {
    if (params.size() != k)
      throw InvalidInput("make_group " + family + ": expected " + std::to_string(k) + " parameter(s)");
  };
  if (family == "cyclic") {
    need(1);
    return cyclic_group(params[0]);
  }
  if (family == "elem_ab" || family == "elem-ab") {
    need(2);
    return elem_ab_group(params[0], params[1]);
  }
  if (family == "dihedral") {
    need(1);
    return dihedral_group(params[0]);
  }
  if (family == "semidihedral") {
    need(1);
    return semidihedral_group(params[0]);
  }
  if (family == "quaternion") {
    need(1);
    return quaternion_group(params[0]);
  }
  if (family == "symmetric") {
    need(1);
    return symmetric_group(params[0]);
  }
  if (family == "alternating") {
    need(1);
    return alternating_group(params[0]);
  }
  if (family == "dihedral_order" || family == "dihedral-order") {
    need(1);
    return dihedral_order(params[0]);
  }
  throw InvalidInput("unknown group family '" + family + "'");
}

// ---------------------------------------------------------------- recognition

struct TameType {
  enum Kind { kCyclic, kDihedral, kSemidihedral, kQuaternion, kNone };
  Kind kind = kNone;
  int m = 0;           // family parameter; for cyclic the exponent of 2 in the order
  std::string reason;  // why none

  std::string name() const {
    switch (kind) {
      case kCyclic: return "cyclic";
      case kDihedral: return "dihedral";
      case kSemidihedral: return "semidihedral";
      case kQuaternion: return "quaternion";
      default: return "none";
    }
  }
  bool operator==(const TameType& o) const { return kind == o.kind && m == o.m; }
};

inline TameType recognize_tame_2group(const FiniteGroup& P) {
  TameType out;
  const int n = P.order();
  int k = 0;
  while ((1 << k) < n) ++k;
  if ((1 << k) != n) {
    out.reason = "not a 2-group";
    return out;
  }
  std::vector<int> ord(n);
  for (int x = 0; x < n; ++x) ord[x] = element_order(P, x);
  if (std::find(ord.begin(), ord.end(), n) != ord.end()) {
    out.kind = TameType::kCyclic;
    out.m = k;
    return out;
  }
  const int m = k - 1;
  if (m < 1) {
    out.reason = "order too small";
    return out;
  }
  const int N = 1 << m;
  // Family presentation test for a pair: y of order N, relation y x = x y^r,
  // x^2 = y^s, and x outside <y> (which then forces generation).
  auto search = [&](int r, int s) {
    for (int y = 0; y < n; ++y) {
      if (ord[y] != N) continue;
      std::vector<char> in_y(n, 0);
      for (int t = 0, e = 0; t < N; ++t, e = P.mul(e, y)) in_y[e] = 1;
      for (int x = 0; x < n; ++x) {
        if (in_y[x]) continue;
        if (P.mul(x, x) != P.power(y, s)) continue;
        if (P.mul(y, x) != P.mul(x, P.power(y, r))) continue;
        return true;
      }
    }
    return false;
  };
  if (search(-1, 0)) {
    out.kind = TameType::kDihedral;
    out.m = m;
    return out;
  }
  if (m >= 3 && search((1 << (m - 1)) - 1, 0)) {
    out.kind = TameType::kSemidihedral;
    out.m = m;
    return out;
  }
  if (m >= 2 && search(-1, N / 2)) {
    out.kind = TameType::kQuaternion;
    out.m = m;
    return out;
  }
  out.reason = "no generating pair satisfies a cyclic, dihedral, semidihedral or quaternion presentation";
  return out;
}

// Subgroup as a standalone group, with the embedding (new index -> old element).
struct SubgroupGroup {
  FiniteGroup group;
  std::vector<int> embed;
  std::vector<int> index;  // old element -> new index or -1
};

inline SubgroupGroup subgroup_as_group(const FiniteGroup& G, const Subgroup& H) {
  SubgroupGroup out;
  out.embed = H.elements;  // sorted, so 0 comes first
  out.index.assign(G.order(), -1);
  for (std::size_t i = 0; i < out.embed.size(); ++i) out.index[out.embed[i]] = static_cast<int>(i);
  const int m = H.size();
  std::vector<int> flat(static_cast<std::size_t>(m) * m);
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j) {
      int v = out.index[G.mul(out.embed[i], out.embed[j])];
      if (v < 0) throw InvalidInput("subgroup_as_group: set is not closed");
      flat[static_cast<std::size_t>(i) * m + j] = v;
    }
  out.group = group_from_flat(m, std::move(flat));
  return out;
}

// Greedy small generating set: repeatedly adds the element enlarging the
// generated subgroup the most (ties to the smallest index).
inline std::vector<int> small_generating_set(const FiniteGroup& G) {
  std::vector<int> gens;
  Subgroup cur = Subgroup::trivial(G.order());
  while (cur.size() < G.order()) {
    int best = -1, best_size = -1;
    for (int x = 0; x < G.order(); ++x) {
      if (cur.contains(x)) continue;
      auto g2 = gens;
      g2.push_back(x);
      int s = static_cast<int>(closure_bfs(G, g2).size());
      if (s > best_size) {
        best_size = s;
        best = x;
      }
    }
    gens.push_back(best);
    cur = subgroup_closure(G, gens);
  }
  return gens;
}

// Irredundant generating set built greedily by scanning elements of largest order first.
inline std::vector<int> generating_set(const FiniteGroup& G) {
  if (G.order() <= 256) return small_generating_set(G);
  std::vector<int> idx(G.order());
  std::iota(idx.begin(), idx.end(), 0);
  std::stable_sort(idx.begin(), idx.end(),
                   [&](int a, int b) { return element_order(G, a) > element_order(G, b); });
  std::vector<int> gens;
  std::vector<char> in(G.order(), 0);
  in[0] = 1;
  for (int x : idx) {
    if (in[x]) continue;
    gens.push_back(x);
    for (int y : closure_bfs(G, gens)) in[y] = 1;
  }
  return gens;
}

}  // namespace gpi
