#pragma once

#include <array>
#include <cstdint>
#include <memory>
#include <mutex>
#include <string>
#include <vector>

#include "gpi/error.hpp"

namespace gpi {

using Elt = std::uint8_t;

inline bool is_prime(long n) {
  if (n < 2) return false;
  for (long d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

namespace detail {

struct FieldTables {
  int q = 0;
  int p = 0;
  std::vector<Elt> add, mul;
  std::vector<Elt> neg, inv;
};

inline std::unique_ptr<FieldTables> build_field(int q) {
  auto t = std::make_unique<FieldTables>();
  t->q = q;
  t->add.resize(q * q);
  t->mul.resize(q * q);
  t->neg.resize(q);
  t->inv.resize(q);
  if (q == 4) {
    // 0, 1, 2 = w, 3 = w^2 = w + 1; addition is xor.
    static const int kMul[4][4] = {
        {0, 0, 0, 0}, {0, 1, 2, 3}, {0, 2, 3, 1}, {0, 3, 1, 2}};
    t->p = 2;
    for (int a = 0; a < 4; ++a)
      for (int b = 0; b < 4; ++b) {
        t->add[a * 4 + b] = static_cast<Elt>(a ^ b);
        t->mul[a * 4 + b] = static_cast<Elt>(kMul[a][b]);
      }
  } else {
    t->p = q;
    for (int a = 0; a < q; ++a)
      for (int b = 0; b < q; ++b) {
        t->add[a * q + b] = static_cast<Elt>((a + b) % q);
        t->mul[a * q + b] = static_cast<Elt>((a * b) % q);
      }
  }
  for (int a = 0; a < q; ++a) {
    for (int b = 0; b < q; ++b) {
      if (t->add[a * q + b] == 0) t->neg[a] = static_cast<Elt>(b);
      if (t->mul[a * q + b] == 1) t->inv[a] = static_cast<Elt>(b);
    }
  }
  return t;
}

}  // namespace detail

// Handle to GF(q) for q a prime <= 251 or q = 4. Cheap to copy.
class Field {
 public:
  Field() = default;

  static Field of(int q) {
    if (!(q == 4 || (q <= 251 && is_prime(q))))
      throw InvalidInput("unsupported field size " + std::to_string(q) +
                         ": only GF(p) with p prime <= 251 and GF(4)");
    static std::array<std::unique_ptr<detail::FieldTables>, 252> cache;
    static std::mutex mu;
    std::lock_guard<std::mutex> lock(mu);
    if (!cache[q]) cache[q] = detail::build_field(q);
    Field f;
    f.t_ = cache[q].get();
    return f;
  }

  bool valid() const { return t_ != nullptr; }
  int q() const { return t_->q; }
  int p() const { return t_->p; }
  bool prime() const { return t_->q == t_->p; }

  Elt add(Elt a, Elt b) const { return t_->add[a * t_->q + b]; }
  Elt sub(Elt a, Elt b) const { return t_->add[a * t_->q + t_->neg[b]]; }
  Elt mul(Elt a, Elt b) const { return t_->mul[a * t_->q + b]; }
  Elt neg(Elt a) const { return t_->neg[a]; }
  Elt inv(Elt a) const {
    if (a == 0) throw InvalidInput("inverse of zero");
    return t_->inv[a];
  }
  Elt div(Elt a, Elt b) const { return mul(a, inv(b)); }
  Elt pow(Elt a, long e) const {
    Elt r = 1;
    while (e > 0) {
      if (e & 1) r = mul(r, a);
      a = mul(a, a);
      e >>= 1;
    }
    return r;
  }
  Elt from_int(long v) const {
    if (t_->q == 4) {
      if (v < 0 || v > 3) throw InvalidInput("GF(4) element out of range");
      return static_cast<Elt>(v);
    }
    long m = v % t_->q;
    if (m < 0) m += t_->q;
    return static_cast<Elt>(m);
  }

  // dst[i] += c * src[i] for i < n.
  void axpy(Elt* dst, Elt c, const Elt* src, std::size_t n) const {
    if (c == 0) return;
    const int q = t_->q;
    if (q == 2) {
      for (std::size_t i = 0; i < n; ++i) dst[i] ^= src[i];
    } else if (q == 4) {
      const Elt* row = &t_->mul[c * 4];
      for (std::size_t i = 0; i < n; ++i) dst[i] ^= row[src[i]];
    } else {
      const unsigned cc = c;
      for (std::size_t i = 0; i < n; ++i)
        dst[i] = static_cast<Elt>((dst[i] + cc * src[i]) % q);
    }
  }

  void scale(Elt* dst, Elt c, std::size_t n) const {
    for (std::size_t i = 0; i < n; ++i) dst[i] = mul(c, dst[i]);
  }

  bool operator==(const Field& o) const { return t_ == o.t_; }
  bool operator!=(const Field& o) const { return t_ != o.t_; }

 private:
  const detail::FieldTables* t_ = nullptr;
};

}  // namespace gpi
