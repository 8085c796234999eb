#pragma once

#include <algorithm>
#include <cctype>
#include <cmath>
#include <functional>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <tuple>
#include <vector>

#include "gpi/brute.hpp"
#include "gpi/error.hpp"
#include "gpi/field.hpp"
#include "gpi/linalg.hpp"
#include "gpi/module.hpp"

namespace gpi {

// ------------------------------------------------------------------ words

struct Letter {
  char c = 'a';  // 'a' or 'b'
  int i = 0;     // a: |i| <= l + 1; b: +-1

  Letter inv() const { return {c, -i}; }
  bool operator==(const Letter& o) const { return c == o.c && i == o.i; }
  bool operator!=(const Letter& o) const { return !(*this == o); }
  bool operator<(const Letter& o) const { return std::tie(c, i) < std::tie(o.c, o.i); }
};

using Word = std::vector<Letter>;

inline Word word_inverse(const Word& w) {
  Word r;
  for (auto it = w.rbegin(); it != w.rend(); ++it) r.push_back(it->inv());
  return r;
}

inline std::string word_to_string(const Word& w) {
  if (w.empty()) return "()";
  std::string s;
  for (const auto& x : w) {
    if (!s.empty()) s += ' ';
    s += x.c;
    s += std::to_string(x.i);
  }
  return s;
}

// Parses "b1 a-2 a0 ..." (whitespace separated).
inline Word parse_word(const std::string& text) {
  Word w;
  std::size_t k = 0;
  while (k < text.size()) {
    while (k < text.size() && std::isspace(static_cast<unsigned char>(text[k]))) ++k;
    if (k >= text.size()) break;
    char c = text[k++];
    if (c != 'a' && c != 'b') throw InvalidInput("word letters must be a<i> or b<j>");
    std::size_t used = 0;
    int i = std::stoi(text.substr(k), &used);
    k += used;
    w.push_back({c, i});
  }
  return w;
}

enum class WordClass { kInvalid, kAsymString, kSymString, kAsymBand, kSymBand };

inline std::string class_name(WordClass c) {
  switch (c) {
    case WordClass::kAsymString: return "asym_string";
    case WordClass::kSymString: return "sym_string";
    case WordClass::kAsymBand: return "asym_band";
    case WordClass::kSymBand: return "sym_band";
    default: return "invalid";
  }
}

namespace detail {

inline bool alternates(const Word& w, bool cyclic) {
  for (std::size_t k = 0; k + 1 < w.size(); ++k)
    if (w[k].c == w[k + 1].c) return false;
  if (cyclic && w.size() > 1 && w.front().c == w.back().c) return false;
  return true;
}

inline bool letters_in_range(const Word& w, int l) {
  for (const auto& x : w) {
    if (x.c == 'a' && std::abs(x.i) > l + 1) return false;
    if (x.c == 'b' && std::abs(x.i) != 1) return false;
  }
  return true;
}

// First forbidden subword of w (read as written), or empty.
inline std::string forbidden_in(const Word& w, int l) {
  const Letter b1{'b', 1};
  for (std::size_t k = 0; k < w.size(); ++k) {
    if (k + 2 < w.size() && w[k] == b1 && w[k + 1] == Letter{'a', l} && w[k + 2] == b1)
      return "contains b1 a" + std::to_string(l) + " b1";
    if (k + 1 < w.size() && w[k] == Letter{'a', l + 1} && w[k + 1] == b1)
      return "contains a" + std::to_string(l + 1) + " b1";
    if (k + 1 < w.size() && w[k] == b1 && w[k + 1] == Letter{'a', l + 1})
      return "contains b1 a" + std::to_string(l + 1);
    if (k + 2 < w.size() && w[k].c == 'a' && w[k].i > 0 && w[k + 1] == b1 && w[k + 2].c == 'a' && w[k + 2].i > 0)
      return "contains a_i b1 a_j with i, j > 0";
  }
  return {};
}

// Checks w and w^-1; bands are checked on w^3 so every cyclic subword of length <= 3 appears.
inline std::string word_violation(const Word& w, int l, bool cyclic) {
  if (!letters_in_range(w, l)) return "letter out of range";
  if (!alternates(w, cyclic)) return "letters do not alternate between a and b";
  Word x = w;
  if (cyclic)
    for (int r = 0; r < 2; ++r) x.insert(x.end(), w.begin(), w.end());
  std::string s = forbidden_in(x, l);
  if (s.empty()) s = forbidden_in(word_inverse(x), l);
  return s;
}

inline Word rotate(const Word& w, std::size_t k) {
  Word r(w.begin() + k, w.end());
  r.insert(r.end(), w.begin(), w.begin() + k);
  return r;
}

inline bool is_power(const Word& w) {
  const std::size_t n = w.size();
  for (std::size_t p = 1; p < n; ++p)
    if (n % p == 0 && rotate(w, p) == w) return true;
  return false;
}

inline std::vector<Word> band_orbit(const Word& w) {
  std::vector<Word> out;
  Word wi = word_inverse(w);
  for (std::size_t k = 0; k < w.size(); ++k) {
    out.push_back(rotate(w, k));
    out.push_back(rotate(wi, k));
  }
  return out;
}

}  // namespace detail

struct WordVerdict {
  WordClass cls = WordClass::kInvalid;
  std::string reason;
};

// Strings unless as_band; bands are even-length non-powers up to rotation and inversion.
inline WordVerdict classify_word(const Word& w, int l, bool as_band = false) {
  WordVerdict v;
  v.reason = detail::word_violation(w, l, as_band);
  if (!v.reason.empty()) return v;
  if (!as_band) {
    v.cls = w == word_inverse(w) ? WordClass::kSymString : WordClass::kAsymString;
    return v;
  }
  if (w.empty() || w.size() % 2) {
    v.reason = "band words have positive even length";
    return v;
  }
  if (detail::is_power(w)) {
    v.reason = "band word is a proper power";
    return v;
  }
  Word wi = word_inverse(w);
  bool sym = false;
  for (std::size_t k = 0; k < w.size(); ++k)
    if (detail::rotate(w, k) == wi) sym = true;
  v.cls = sym ? WordClass::kSymBand : WordClass::kAsymBand;
  return v;
}

// w < w' in the word order.
inline bool word_less(const Word& w, const Word& wp) {
  std::size_t k = 0;
  while (k < w.size() && k < wp.size() && w[k] == wp[k]) ++k;
  if (k < w.size() && k < wp.size()) return w[k].i > wp[k].i;
  if (k == wp.size() && k < w.size()) return w[k].i > 0;
  if (k == w.size() && k < wp.size()) return wp[k].i < 0;
  return false;
}

// ------------------------------------------------------------------ auxiliary modules

struct AuxChoice {
  WordClass cls = WordClass::kAsymString;
  int e = 1;            // sym strings: e acts as 1 or 0
  int jordan = 1;       // asym bands: Jordan block size
  Elt eigen = 1;        // asym bands: nonzero eigenvalue
  int e_bit = 0;        // sym bands, one-dimensional: e and f as 0/1
  int f_bit = 0;
  int family_n = 0;     // sym bands: 2n-dimensional family when > 0
  Elt family_lambda = 0;

  // A zero loop idempotent removes its gadget, so the module collapses onto a string.
  bool degenerate() const {
    if (cls == WordClass::kSymString) return e == 0;
    if (cls == WordClass::kSymBand) return family_n == 0 && (e_bit == 0 || f_bit == 0);
    return false;
  }

  std::string describe() const {
    switch (cls) {
      case WordClass::kSymString: return "e=" + std::to_string(e);
      case WordClass::kAsymBand: return "J_" + std::to_string(jordan) + "(" + std::to_string(eigen) + ")";
      case WordClass::kSymBand:
        if (family_n > 0) return "pair_family(n=" + std::to_string(family_n) + ",lambda=" + std::to_string(family_lambda) + ")";
        return "e=" + std::to_string(e_bit) + ",f=" + std::to_string(f_bit);
      default: return "F";
    }
  }
};

struct AuxModule {
  int k = 1;
  Matrix X;  // band parameter
  Matrix E;  // idempotent for the e loop
  Matrix Fm; // idempotent for the f loop
};

inline AuxModule aux_module(const Field& F, const AuxChoice& a) {
  AuxModule m;
  switch (a.cls) {
    case WordClass::kAsymString:
      m.k = 1;
      break;
    case WordClass::kSymString:
      m.k = 1;
      m.E = Matrix(1, 1);
      m.E(0, 0) = static_cast<Elt>(a.e ? 1 : 0);
      break;
    case WordClass::kAsymBand: {
      if (a.jordan < 1 || a.eigen == 0) throw InvalidInput("band Jordan block needs size >= 1 and nonzero eigenvalue");
      m.k = a.jordan;
      m.X = Matrix(m.k, m.k);
      for (int i = 0; i < m.k; ++i) {
        m.X(i, i) = a.eigen;
        if (i + 1 < m.k) m.X(i, i + 1) = 1;
      }
      break;
    }
    case WordClass::kSymBand: {
      if (a.family_n == 0) {
        m.k = 1;
        m.E = Matrix(1, 1);
        m.Fm = Matrix(1, 1);
        m.E(0, 0) = static_cast<Elt>(a.e_bit);
        m.Fm(0, 0) = static_cast<Elt>(a.f_bit);
        break;
      }
      // V = X1 + X2; e projects onto X1 along X2, f onto {(x,x)} along {(y, Jy)}.
      const int n = a.family_n;
      if (a.family_lambda == 0 || a.family_lambda == 1) throw InvalidInput("pair family needs lambda outside {0, 1}");
      m.k = 2 * n;
      m.E = Matrix(m.k, m.k);
      for (int i = 0; i < n; ++i) m.E(i, i) = 1;
      Matrix J(n, n);
      for (int i = 0; i < n; ++i) {
        J(i, i) = a.family_lambda;
        if (i + 1 < n) J(i, i + 1) = 1;
      }
      std::vector<Vec> cols;
      for (int j = 0; j < n; ++j) {
        Vec c(m.k, 0);
        c[j] = 1;
        c[n + j] = 1;
        cols.push_back(c);
      }
      for (int j = 0; j < n; ++j) {
        Vec c(m.k, 0);
        c[j] = 1;
        for (int i = 0; i < n; ++i) c[n + i] = J(i, j);
        cols.push_back(c);
      }
      Matrix P = from_columns(m.k, cols);  // basis adapted to image + kernel
      Matrix D(m.k, m.k);
      for (int i = 0; i < n; ++i) D(i, i) = 1;
      m.Fm = mat_mul(F, mat_mul(F, P, D), inverse_or_throw(F, P));
      break;
    }
    default:
      throw InvalidInput("no auxiliary module for an invalid word");
  }
  return m;
}

// ------------------------------------------------------------------ quivers

enum class Space { kV, kImE, kImF };

enum class EdgeMap { kIdentity, kScalar, kX, kIotaE, kProjE, kIotaF, kProjF };

struct QuiverEdge {
  int src = 0;
  int dst = 0;
  char op = 'a';  // which generator acts along the edge
  EdgeMap map = EdgeMap::kIdentity;
  Elt scalar = 1;
  std::string label;
};

struct ExpandedQuiver {
  std::vector<Space> vertices;
  std::vector<QuiverEdge> edges;
  std::vector<std::string> gadgets;

  int add_vertex(Space s) {
    vertices.push_back(s);
    return static_cast<int>(vertices.size()) - 1;
  }
  void add_edge(int s, int d, char op, EdgeMap m, std::string label, Elt c = 1) {
    edges.push_back({s, d, op, m, c, std::move(label)});
  }
};

namespace detail {

// lambda = w, mu = w^2 in GF(4); lambda - mu = 1.
constexpr Elt kLambda = 2;
constexpr Elt kMu = 3;

// Letter edge between spine vertices; toward_left means directed to `left`.
inline void expand_letter(ExpandedQuiver& Q, const Letter& x, int left, int right, bool toward_left, int l,
                          bool band_x) {
  const int src = toward_left ? right : left, dst = toward_left ? left : right;
  if (x.c == 'b') {
    if (band_x)
      Q.add_edge(src, dst, 'b', EdgeMap::kX, "b=x");
    else
      Q.add_edge(src, dst, 'b', EdgeMap::kIdentity, "b");
    return;
  }
  const int k = std::abs(x.i);
  if (k == 1) {
    Q.add_edge(src, dst, 'a', EdgeMap::kIdentity, "a");
  } else if (k > 1) {
    // a (b a)^{k-1} from src to dst through 2k - 2 new vertices.
    Q.gadgets.push_back("a_" + std::to_string(k));
    int prev = src;
    for (int t = 0; t < 2 * k - 2; ++t) {
      int v = Q.add_vertex(Space::kV);
      Q.add_edge(prev, v, t % 2 == 0 ? 'a' : 'b', EdgeMap::kIdentity, t % 2 == 0 ? "a" : "b");
      prev = v;
    }
    Q.add_edge(prev, dst, 'a', EdgeMap::kIdentity, "a");
  } else {
    // V1 --a--> dst, V1 --a=mu--> src, dst --a=l/(l-m)--> V_{2l+2}, src --a=1/(l-m)--> V_{2l+2},
    // and the chain V1 -b-> V2 -a-> ... -b-> V_{2l+2}.
    Q.gadgets.push_back("a_0");
    const Field F = Field::of(4);
    const Elt diff = F.sub(kLambda, kMu);
    std::vector<int> chain;
    for (int t = 0; t < 2 * l + 2; ++t) chain.push_back(Q.add_vertex(Space::kV));
    for (int t = 0; t + 1 < 2 * l + 2; ++t)
      Q.add_edge(chain[t], chain[t + 1], t % 2 == 0 ? 'b' : 'a', EdgeMap::kIdentity, t % 2 == 0 ? "b" : "a");
    Q.add_edge(chain.front(), dst, 'a', EdgeMap::kIdentity, "a");
    Q.add_edge(chain.front(), src, 'a', EdgeMap::kScalar, "a=mu", kMu);
    Q.add_edge(dst, chain.back(), 'a', EdgeMap::kScalar, "a=lambda/(lambda-mu)", F.div(kLambda, diff));
    Q.add_edge(src, chain.back(), 'a', EdgeMap::kScalar, "a=1/(lambda-mu)", F.inv(diff));
  }
}

// I_1 --a=iota--> V --a=e--> I_{2l+2} plus the chain I_1 -b-> I_2 -a-> ... -b-> I_{2l+2}.
inline void expand_loop(ExpandedQuiver& Q, int v, bool is_e, int l) {
  Q.gadgets.push_back(is_e ? "e" : "f");
  const Space s = is_e ? Space::kImE : Space::kImF;
  std::vector<int> chain;
  for (int t = 0; t < 2 * l + 2; ++t) chain.push_back(Q.add_vertex(s));
  for (int t = 0; t + 1 < 2 * l + 2; ++t)
    Q.add_edge(chain[t], chain[t + 1], t % 2 == 0 ? 'b' : 'a', EdgeMap::kIdentity, t % 2 == 0 ? "b" : "a");
  Q.add_edge(chain.front(), v, 'a', is_e ? EdgeMap::kIotaE : EdgeMap::kIotaF, is_e ? "a=iota" : "a=iota_f");
  Q.add_edge(v, chain.back(), 'a', is_e ? EdgeMap::kProjE : EdgeMap::kProjF, is_e ? "a=e" : "a=f");
}

// Direction of the edge for letter w[i] in a linear word: toward v_i (left) for positive
// letters; for a_0 when the inverse prefix exceeds the suffix.
inline bool toward_left_linear(const Word& w, std::size_t i) {
  if (w[i].i != 0) return w[i].i > 0;
  Word left = word_inverse(Word(w.begin(), w.begin() + i));
  Word right(w.begin() + i + 1, w.end());
  return word_less(right, left);
}

inline bool toward_left_cyclic(const Word& w, std::size_t i) {
  if (w[i].i != 0) return w[i].i > 0;
  const std::size_t n = w.size();
  Word right, left;
  for (std::size_t t = 1; t < n; ++t) right.push_back(w[(i + t) % n]);
  for (std::size_t t = 1; t < n; ++t) left.push_back(w[(i + n - t) % n].inv());
  return word_less(right, left);
}

}  // namespace detail

// Canonical words for the classes: sym strings are z a0 z^-1, sym bands z a0 z^-1 a0,
// asym bands start with b1.
inline ExpandedQuiver build_quiver(const Word& w, WordClass cls, int l) {
  ExpandedQuiver Q;
  switch (cls) {
    case WordClass::kAsymString:
    case WordClass::kSymString: {
      std::size_t n = w.size();
      if (cls == WordClass::kSymString) {
        if (n % 2 == 0 || w[n / 2] != Letter{'a', 0}) throw InvalidInput("symmetric string must be z a0 z^-1");
        n /= 2;  // spine for z; the middle a0 becomes the e loop
      }
      for (std::size_t t = 0; t <= n; ++t) Q.add_vertex(Space::kV);
      for (std::size_t t = 0; t < n; ++t)
        detail::expand_letter(Q, w[t], static_cast<int>(t), static_cast<int>(t + 1), detail::toward_left_linear(w, t), l,
                              false);
      if (cls == WordClass::kSymString) detail::expand_loop(Q, static_cast<int>(n), true, l);
      break;
    }
    case WordClass::kAsymBand: {
      const std::size_t n = w.size();
      if (n == 0 || w[0] != Letter{'b', 1}) throw InvalidInput("asymmetric band must start with b1");
      for (std::size_t t = 0; t < n; ++t) Q.add_vertex(Space::kV);
      for (std::size_t t = 0; t < n; ++t)
        detail::expand_letter(Q, w[t], static_cast<int>(t), static_cast<int>((t + 1) % n),
                              detail::toward_left_cyclic(w, t), l, t == 0);
      break;
    }
    case WordClass::kSymBand: {
      const std::size_t N = w.size();
      if (N < 2 || w[N - 1] != Letter{'a', 0} || w[(N - 2) / 2] != Letter{'a', 0})
        throw InvalidInput("symmetric band must be z a0 z^-1 a0");
      const std::size_t n = (N - 2) / 2;
      for (std::size_t t = 0; t <= n; ++t) Q.add_vertex(Space::kV);
      for (std::size_t t = 0; t < n; ++t)
        detail::expand_letter(Q, w[t], static_cast<int>(t), static_cast<int>(t + 1), detail::toward_left_cyclic(w, t), l,
                              false);
      detail::expand_loop(Q, 0, false, l);
      detail::expand_loop(Q, static_cast<int>(n), true, l);
      break;
    }
    default:
      throw InvalidInput("cannot build a quiver for an invalid word");
  }
  return Q;
}

struct SDModule {
  int dim = 0;
  Matrix a;
  Matrix b;
  Word word;
  WordClass cls = WordClass::kInvalid;
  AuxChoice aux;

  Module module() const { return Module{Field::of(4), dim, {a, b}}; }
};

// a^3 = b^2 = 0 and a^2 = (ba)^l b.
inline std::optional<std::string> sd_relation_violation(const Matrix& a, const Matrix& b, int l) {
  const Field F = Field::of(4);
  if (!mat_pow(F, a, 3).is_zero()) return std::string("a^3 != 0");
  if (!mat_mul(F, b, b).is_zero()) return std::string("b^2 != 0");
  if (mat_mul(F, a, a) != mat_mul(F, mat_pow(F, mat_mul(F, b, a), l), b)) return std::string("a^2 != (ba)^l b");
  return std::nullopt;
}

inline SDModule build_module(const Word& w, WordClass cls, const AuxChoice& aux, int l) {
  const Field F = Field::of(4);
  if (aux.cls != cls) throw InvalidInput("auxiliary choice does not match the word class");
  ExpandedQuiver Q = build_quiver(w, cls, l);
  AuxModule V = aux_module(F, aux);
  // im e / im f bases and the maps V -> im.
  struct Image {
    int r = 0;
    Matrix iota, proj;
  };
  auto image_of = [&](const Matrix& E) {
    Image I;
    if (E.rows == 0) return I;
    std::vector<Vec> cols = column_space(F, E);
    I.r = static_cast<int>(cols.size());
    I.iota = from_columns(V.k, cols);
    I.proj = Matrix(I.r, V.k);
    for (int j = 0; j < V.k; ++j) {
      Vec col(V.k);
      for (int i = 0; i < V.k; ++i) col[i] = E(i, j);
      auto s = solve_linear(F, I.iota, col);
      if (!s.consistent) throw VerificationFailure("idempotent image basis inconsistent");
      for (int i = 0; i < I.r; ++i) I.proj(i, j) = s.x[i];
    }
    return I;
  };
  Image IE = image_of(V.E), IF = image_of(V.Fm);
  std::vector<int> off, dim;
  int total = 0;
  for (Space s : Q.vertices) {
    int dv = s == Space::kV ? V.k : s == Space::kImE ? IE.r : IF.r;
    off.push_back(total);
    dim.push_back(dv);
    total += dv;
  }
  SDModule M{total, Matrix(total, total), Matrix(total, total), w, cls, aux};
  for (const auto& e : Q.edges) {
    if (dim[e.src] == 0 || dim[e.dst] == 0) continue;
    Matrix blk;
    switch (e.map) {
      case EdgeMap::kIdentity: blk = Matrix::identity(dim[e.src]); break;
      case EdgeMap::kScalar: blk = mat_scale(F, e.scalar, Matrix::identity(dim[e.src])); break;
      case EdgeMap::kX: blk = V.X; break;
      case EdgeMap::kIotaE: blk = IE.iota; break;
      case EdgeMap::kProjE: blk = IE.proj; break;
      case EdgeMap::kIotaF: blk = IF.iota; break;
      case EdgeMap::kProjF: blk = IF.proj; break;
    }
    Matrix& T = e.op == 'a' ? M.a : M.b;
    for (int i = 0; i < blk.rows; ++i)
      for (int j = 0; j < blk.cols; ++j)
        T(off[e.dst] + i, off[e.src] + j) = F.add(T(off[e.dst] + i, off[e.src] + j), blk(i, j));
  }
  if (auto v = sd_relation_violation(M.a, M.b, l))
    throw VerificationFailure("module for " + word_to_string(w) + " (" + class_name(cls) + ", " + aux.describe() +
                              ") violates " + *v);
  return M;
}

// ------------------------------------------------------------------ enumeration

struct WordEntry {
  Word word;
  WordClass cls;
};

namespace detail {

inline std::vector<Letter> letters_of(char c, int l) {
  std::vector<Letter> out;
  if (c == 'a')
    for (int i = -(l + 1); i <= l + 1; ++i) out.push_back({'a', i});
  else
    out = {{'b', -1}, {'b', 1}};
  return out;
}

inline void all_alternating(int l, std::size_t len, std::vector<Word>& out) {
  if (len == 0) {
    out.push_back({});
    return;
  }
  for (char first : {'a', 'b'}) {
    Word w;
    std::function<void()> rec = [&]() {
      if (w.size() == len) {
        out.push_back(w);
        return;
      }
      char c = (w.size() % 2 == 0) ? first : (first == 'a' ? 'b' : 'a');
      for (const auto& x : letters_of(c, l)) {
        w.push_back(x);
        rec();
        w.pop_back();
      }
    };
    rec();
  }
}

// Number of expanded vertices contributed by letters (spine vertices excluded).
inline int gadget_vertices(const Word& w, int l) {
  int extra = 0;
  for (const auto& x : w)
    if (x.c == 'a') {
      int k = std::abs(x.i);
      if (k > 1) extra += 2 * k - 2;
      if (k == 0) extra += 2 * l + 2;
    }
  return extra;
}

}  // namespace detail

// Canonical representatives (least in their class orbit) of all valid words whose spine has at
// most max_len letters: the whole word for asymmetric classes, z for z a0 z^-1 and z a0 z^-1 a0.
inline std::vector<WordEntry> enumerate_words(int l, int max_len) {
  if (max_len > 16) throw BudgetExceeded("enumerate_words limited to length 16");
  if (l < 1) throw InvalidInput("l must be positive");
  if (max_len < 0) return {};
  std::vector<WordEntry> out;
  std::set<Word> sym_bands;
  const Letter a0{'a', 0};
  for (int n = 0; n <= max_len; ++n) {
    std::vector<Word> all;
    detail::all_alternating(l, static_cast<std::size_t>(n), all);
    std::sort(all.begin(), all.end());
    all.erase(std::unique(all.begin(), all.end()), all.end());
    for (const auto& w : all) {
      if (n > 0) {
        auto v = classify_word(w, l, false);
        if (v.cls == WordClass::kAsymString && !(word_inverse(w) < w)) out.push_back({w, v.cls});
      }
      if (n > 0 && n % 2 == 0) {
        auto v = classify_word(w, l, true);
        if (v.cls == WordClass::kAsymBand) {
          auto orb = detail::band_orbit(w);
          if (*std::min_element(orb.begin(), orb.end()) == w) out.push_back({w, v.cls});
        }
      }
      // w plays z.
      Word zi = word_inverse(w);
      Word s = w;
      s.push_back(a0);
      s.insert(s.end(), zi.begin(), zi.end());
      if (classify_word(s, l, false).cls == WordClass::kSymString) out.push_back({s, WordClass::kSymString});
      s.push_back(a0);
      if (classify_word(s, l, true).cls == WordClass::kSymBand) {
        auto orb = detail::band_orbit(s);
        Word canon = *std::min_element(orb.begin(), orb.end());
        if (sym_bands.insert(canon).second) out.push_back({canon, WordClass::kSymBand});
      }
    }
  }
  std::stable_sort(out.begin(), out.end(), [](const WordEntry& x, const WordEntry& y) {
    return std::make_tuple(x.word.size(), static_cast<int>(x.cls), x.word) <
           std::make_tuple(y.word.size(), static_cast<int>(y.cls), y.word);
  });
  return out;
}

// Rewrites a band class representative into the layout build_quiver expects.
inline Word band_layout(const Word& w, WordClass cls) {
  auto orb = detail::band_orbit(w);
  std::sort(orb.begin(), orb.end());
  for (const auto& x : orb) {
    if (cls == WordClass::kAsymBand && x[0] == Letter{'b', 1}) return x;
    if (cls == WordClass::kSymBand) {
      const std::size_t N = x.size();
      if (x[N - 1] != Letter{'a', 0} || x[(N - 2) / 2] != Letter{'a', 0}) continue;
      Word z(x.begin(), x.begin() + (N - 2) / 2);
      Word rest(x.begin() + (N - 2) / 2 + 1, x.end() - 1);
      if (rest == word_inverse(z)) return x;
    }
  }
  throw InvalidInput("band has no layout of the required shape");
}

struct CountReport {
  int l = 0;
  int d = 0;
  std::map<WordClass, int> enumerated;  // before deduplication
  std::map<WordClass, int> counts;      // distinct isomorphism classes
  std::map<WordClass, long double> bounds;
  int duplicates = 0;                   // modules isomorphic to an earlier one
  int unexplained_duplicates = 0;       // duplicates whose auxiliary choice is not degenerate
  std::vector<std::string> duplicate_notes;
  std::vector<SDModule> modules;        // distinct ones
  bool within_bounds() const {
    for (const auto& [c, n] : counts)
      if (static_cast<long double>(n) > bounds.at(c)) return false;
    return true;
  }
  int total() const {
    int t = 0;
    for (const auto& [c, n] : counts) t += n;
    return t;
  }
};

// All configurations of dimension exactly d.
inline std::vector<SDModule> materialize_dimension(int l, int d) {
  std::vector<SDModule> out;
  const int max_len = std::min(d, 16);
  for (const auto& e : enumerate_words(l, max_len)) {
    const Word& w = e.word;
    const int extra = detail::gadget_vertices(w, l);
    switch (e.cls) {
      case WordClass::kAsymString:
        if (static_cast<int>(w.size()) + 1 + extra == d) out.push_back(build_module(w, e.cls, {e.cls}, l));
        break;
      case WordClass::kSymString: {
        // The middle a0 is the loop, not an a0 gadget.
        const int base = static_cast<int>(w.size()) / 2 + 1 + (extra - (2 * l + 2)) / 2;
        for (int ev : {1, 0}) {
          AuxChoice a{e.cls};
          a.e = ev;
          if (base + ev * (2 * l + 2) == d) out.push_back(build_module(w, e.cls, a, l));
        }
        break;
      }
      case WordClass::kAsymBand: {
        const int unit = static_cast<int>(w.size()) + extra;
        if (d % unit) break;
        Word lw = band_layout(w, e.cls);
        for (Elt ev : {Elt(1), Elt(2), Elt(3)}) {
          AuxChoice a{e.cls};
          a.jordan = d / unit;
          a.eigen = ev;
          out.push_back(build_module(lw, e.cls, a, l));
        }
        break;
      }
      case WordClass::kSymBand: {
        Word lw = band_layout(w, e.cls);
        const int n = (static_cast<int>(lw.size()) - 2) / 2;
        Word z(lw.begin(), lw.begin() + n);
        const int spine = n + 1 + detail::gadget_vertices(z, l), loop = 2 * l + 2;
        for (int eb = 0; eb < 2; ++eb)
          for (int fb = 0; fb < 2; ++fb)
            if (spine + (eb + fb) * loop == d) {
              AuxChoice a{e.cls};
              a.e_bit = eb;
              a.f_bit = fb;
              out.push_back(build_module(lw, e.cls, a, l));
            }
        // 2k-dimensional family: e and f both of rank k.
        for (int k = 1; 2 * k * spine + 2 * k * loop <= d; ++k)
          if (2 * k * spine + 2 * k * loop == d)
            for (Elt lam : {Elt(2), Elt(3)}) {
              AuxChoice a{e.cls};
              a.family_n = k;
              a.family_lambda = lam;
              out.push_back(build_module(lw, e.cls, a, l));
            }
        break;
      }
      default:
        break;
    }
  }
  return out;
}

namespace detail {

inline std::vector<int> sd_fingerprint(const SDModule& M) {
  const Field F = Field::of(4);
  std::vector<int> f{M.dim};
  Matrix ab = mat_mul(F, M.a, M.b), ba = mat_mul(F, M.b, M.a);
  for (const Matrix* x : std::initializer_list<const Matrix*>{&M.a, &M.b, &ab, &ba}) f.push_back(rank(F, *x));
  f.push_back(rank(F, mat_mul(F, M.a, M.a)));
  f.push_back(rank(F, mat_mul(F, ab, ab)));
  return f;
}

}  // namespace detail

inline CountReport count_indecomposables(int l, int d, std::uint64_t seed = 0) {
  if (d < 1 || d > 10) throw InvalidInput("count_indecomposables supports 1 <= d <= 10");
  CountReport R;
  R.l = l;
  R.d = d;
  const long double p4 = std::pow(4.0L, d);
  R.bounds[WordClass::kSymString] = 2 * p4;
  R.bounds[WordClass::kAsymString] = 4 * p4;
  R.bounds[WordClass::kAsymBand] = 3.0L * d * p4;
  R.bounds[WordClass::kSymBand] = d * 4 * p4;
  for (auto c : {WordClass::kAsymString, WordClass::kSymString, WordClass::kAsymBand, WordClass::kSymBand}) {
    R.enumerated[c] = 0;
    R.counts[c] = 0;
  }
  std::map<std::vector<int>, std::vector<int>> buckets;
  for (auto& M : materialize_dimension(l, d)) {
    ++R.enumerated[M.cls];
    auto key = detail::sd_fingerprint(M);
    int dup = -1;
    for (int i : buckets[key])
      if (module_isomorphism(R.modules[i].module(), M.module(), seed).isomorphic) {
        dup = i;
        break;
      }
    if (dup >= 0) {
      ++R.duplicates;
      if (!M.aux.degenerate() && !R.modules[dup].aux.degenerate()) ++R.unexplained_duplicates;
      const auto& o = R.modules[dup];
      R.duplicate_notes.push_back(class_name(M.cls) + " " + word_to_string(M.word) + " [" + M.aux.describe() + "] ~ " +
                                  class_name(o.cls) + " " + word_to_string(o.word) + " [" + o.aux.describe() + "]");
      continue;
    }
    buckets[key].push_back(static_cast<int>(R.modules.size()));
    ++R.counts[M.cls];
    R.modules.push_back(std::move(M));
  }
  return R;
}

// ------------------------------------------------------------------ wild family

struct WildReport {
  int p = 0;
  int d = 0;
  int pairs = 0;
  int classes = 0;
  std::uint64_t lower_bound = 0;  // p^(d^2 - d)
};

// A = J_d(0) fixed, B arbitrary; classes under simultaneous conjugacy.
inline WildReport wild_family(int p, int d, std::uint64_t seed = 0) {
  const Field F = Field::of(p);
  if (!F.prime()) throw InvalidInput("wild_family expects a prime p");
  detail::require_small(F, d * d, 20.0);
  Matrix A(d, d);
  for (int i = 0; i + 1 < d; ++i) A(i, i + 1) = 1;
  WildReport R{p, d, 0, 0, detail::upow(static_cast<std::uint64_t>(p), d * d - d)};
  std::vector<Module> reps;
  std::map<std::vector<int>, std::vector<int>> buckets;
  Matrix B(d, d);
  do {
    ++R.pairs;
    Module M{F, d, {A, B}};
    std::vector<int> key{rank(F, B), rank(F, mat_mul(F, A, B)), rank(F, mat_mul(F, B, A)),
                         rank(F, mat_mul(F, B, B))};
    bool seen = false;
    for (int i : buckets[key])
      if (module_isomorphism(reps[i], M, seed).isomorphic) {
        seen = true;
        break;
      }
    if (!seen) {
      buckets[key].push_back(static_cast<int>(reps.size()));
      reps.push_back(M);
    }
  } while (detail::next_matrix(B, p));
  R.classes = static_cast<int>(reps.size());
  return R;
}

// ------------------------------------------------------------------ Klein four cross-check

// Non-projective indecomposables of GF(2)[x, y]/(x^2, y^2) of dimension d from strings and bands:
// strings alternate x/y and direct/inverse letters; bands are (x y^-1) with a Jordan block at 1.
inline std::vector<Module> klein_four_census(int d) {
  const Field F = Field::of(2);
  std::vector<Module> out;
  if (d < 1) return out;
  // Strings of length d - 1 up to inversion: start with x or y, first letter direct.
  const int L = d - 1;
  std::vector<std::vector<std::pair<char, bool>>> strings;
  if (L == 0) strings.push_back({});
  else
    for (char first : {'x', 'y'}) {
      std::vector<std::pair<char, bool>> w;
      for (int t = 0; t < L; ++t) w.push_back({(t % 2 == 0) ? first : (first == 'x' ? 'y' : 'x'), t % 2 == 0});
      strings.push_back(w);
    }
  for (const auto& w : strings) {
    Matrix X(d, d), Y(d, d);
    for (int t = 0; t < L; ++t) {
      // direct letter: v_{t+1} -> v_t
      int src = w[t].second ? t + 1 : t, dst = w[t].second ? t : t + 1;
      (w[t].first == 'x' ? X : Y)(dst, src) = 1;
    }
    out.push_back(Module{F, d, {X, Y}});
  }
  if (d % 2 == 0) {
    const int k = d / 2;
    // x: V2 -> V1 identity, y: V2 -> V1 by J_k(1).
    Matrix X(d, d), Y(d, d);
    for (int i = 0; i < k; ++i) {
      X(i, k + i) = 1;
      Y(i, k + i) = 1;
      if (i + 1 < k) Y(i, k + i + 1) = 1;
    }
    out.push_back(Module{F, d, {X, Y}});
  }
  return out;
}

// Exhaustive: indecomposable modules with x^2 = y^2 = 0, xy = yx, up to isomorphism (projective included).
inline std::vector<Module> brute_klein_four(int d) {
  const Field F = Field::of(2);
  detail::require_small(F, 2 * d * d, 20.0);
  std::vector<Matrix> sq0;
  Matrix X(d, d);
  do
    if (mat_mul(F, X, X).is_zero()) sq0.push_back(X);
  while (detail::next_matrix(X, 2));
  std::vector<Module> reps;
  for (const auto& x : sq0)
    for (const auto& y : sq0) {
      if (mat_mul(F, x, y) != mat_mul(F, y, x)) continue;
      Module M{F, d, {x, y}};
      if (!brute_indecomposable(M)) continue;
      bool seen = false;
      for (const auto& r : reps)
        if (brute_module_iso(r, M)) {
          seen = true;
          break;
        }
      if (!seen) reps.push_back(M);
    }
  return reps;
}

}  // namespace gpi
