#pragma once

#include <algorithm>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "gpi/error.hpp"
#include "gpi/field.hpp"

namespace gpi {

using Vec = std::vector<Elt>;

// Dense row-major matrix; the field is passed to each operation.
struct Matrix {
  int rows = 0;
  int cols = 0;
  std::vector<Elt> a;

  Matrix() = default;
  Matrix(int r, int c) : rows(r), cols(c), a(static_cast<std::size_t>(r) * c, 0) {}

  Elt& operator()(int i, int j) { return a[static_cast<std::size_t>(i) * cols + j]; }
  Elt operator()(int i, int j) const { return a[static_cast<std::size_t>(i) * cols + j]; }
  Elt* row(int i) { return a.data() + static_cast<std::size_t>(i) * cols; }
  const Elt* row(int i) const { return a.data() + static_cast<std::size_t>(i) * cols; }

  static Matrix identity(int n) {
    Matrix m(n, n);
    for (int i = 0; i < n; ++i) m(i, i) = 1;
    return m;
  }
  bool square() const { return rows == cols; }
  bool is_zero() const {
    return std::all_of(a.begin(), a.end(), [](Elt x) { return x == 0; });
  }
  bool is_identity() const {
    if (!square()) return false;
    for (int i = 0; i < rows; ++i)
      for (int j = 0; j < cols; ++j)
        if ((*this)(i, j) != (i == j ? 1 : 0)) return false;
    return true;
  }
  bool operator==(const Matrix& o) const {
    return rows == o.rows && cols == o.cols && a == o.a;
  }
  bool operator!=(const Matrix& o) const { return !(*this == o); }
  bool operator<(const Matrix& o) const {
    if (rows != o.rows) return rows < o.rows;
    if (cols != o.cols) return cols < o.cols;
    return a < o.a;
  }
};

inline Matrix mat_mul(const Field& F, const Matrix& A, const Matrix& B) {
  if (A.cols != B.rows) throw InvalidInput("matrix product dimension mismatch");
  Matrix C(A.rows, B.cols);
  for (int i = 0; i < A.rows; ++i)
    for (int k = 0; k < A.cols; ++k) F.axpy(C.row(i), A(i, k), B.row(k), B.cols);
  return C;
}

inline Matrix mat_add(const Field& F, const Matrix& A, const Matrix& B) {
  if (A.rows != B.rows || A.cols != B.cols) throw InvalidInput("matrix sum dimension mismatch");
  Matrix C = A;
  F.axpy(C.a.data(), 1, B.a.data(), C.a.size());
  return C;
}

inline Matrix mat_sub(const Field& F, const Matrix& A, const Matrix& B) {
  if (A.rows != B.rows || A.cols != B.cols) throw InvalidInput("matrix difference dimension mismatch");
  Matrix C = A;
  F.axpy(C.a.data(), F.neg(1), B.a.data(), C.a.size());
  return C;
}

inline Matrix mat_scale(const Field& F, Elt c, const Matrix& A) {
  Matrix C = A;
  F.scale(C.a.data(), c, C.a.size());
  return C;
}

// A += c * B.
inline void mat_axpy(const Field& F, Matrix& A, Elt c, const Matrix& B) {
  F.axpy(A.a.data(), c, B.a.data(), A.a.size());
}

inline Matrix transpose(const Matrix& A) {
  Matrix T(A.cols, A.rows);
  for (int i = 0; i < A.rows; ++i)
    for (int j = 0; j < A.cols; ++j) T(j, i) = A(i, j);
  return T;
}

inline Matrix mat_pow(const Field& F, Matrix A, long e) {
  Matrix R = Matrix::identity(A.rows);
  while (e > 0) {
    if (e & 1) R = mat_mul(F, R, A);
    e >>= 1;
    if (e) A = mat_mul(F, A, A);
  }
  return R;
}

inline Vec mat_vec(const Field& F, const Matrix& A, const Vec& v) {
  Vec r(A.rows, 0);
  for (int i = 0; i < A.rows; ++i) {
    Elt s = 0;
    for (int j = 0; j < A.cols; ++j) s = F.add(s, F.mul(A(i, j), v[j]));
    r[i] = s;
  }
  return r;
}

inline Matrix from_columns(int n, const std::vector<Vec>& cols) {
  Matrix M(n, static_cast<int>(cols.size()));
  for (int j = 0; j < M.cols; ++j)
    for (int i = 0; i < n; ++i) M(i, j) = cols[j][i];
  return M;
}

inline Matrix block_diag(const std::vector<Matrix>& blocks) {
  int r = 0, c = 0;
  for (const auto& b : blocks) r += b.rows, c += b.cols;
  Matrix M(r, c);
  int i0 = 0, j0 = 0;
  for (const auto& b : blocks) {
    for (int i = 0; i < b.rows; ++i)
      for (int j = 0; j < b.cols; ++j) M(i0 + i, j0 + j) = b(i, j);
    i0 += b.rows;
    j0 += b.cols;
  }
  return M;
}

inline bool is_zero_vec(const Vec& v) {
  return std::all_of(v.begin(), v.end(), [](Elt x) { return x == 0; });
}

// Incremental reduced row echelon basis of a subspace of GF(q)^n.
// Rows stay fully reduced, so reducing a vector needs one pass over its
// entries at pivot columns. With tracking, each row also records its
// expression in the independent vectors accepted so far.
class Echelon {
 public:
  Echelon() = default;
  Echelon(Field F, int n, bool track = false) : F_(F), n_(n), track_(track), piv_row_(n, -1) {}

  int dim() const { return n_; }
  int rank() const { return static_cast<int>(rows_.size()); }
  const std::vector<Vec>& rows() const { return rows_; }
  const std::vector<int>& pivots() const { return pivots_; }
  const Field& field() const { return F_; }
  bool full() const { return rank() == n_; }

  // Reduces v in place; returns true iff v lies in the span.
  bool reduce(Vec& v) const {
    for (std::size_t r = 0; r < rows_.size(); ++r) {
      Elt c = v[pivots_[r]];
      if (c) F_.axpy(v.data(), F_.neg(c), rows_[r].data(), n_);
    }
    return is_zero_vec(v);
  }

  bool contains(Vec v) const { return reduce(v); }

  // Inserts v if independent. Returns true if the rank grew.
  bool insert(Vec v) {
    Vec comb;
    if (track_) {
      comb.assign(accepted_ + 1, 0);
      comb[accepted_] = 1;
      for (auto& c : combs_) c.resize(accepted_ + 1, 0);
    }
    for (std::size_t r = 0; r < rows_.size(); ++r) {
      Elt c = v[pivots_[r]];
      if (!c) continue;
      Elt nc = F_.neg(c);
      F_.axpy(v.data(), nc, rows_[r].data(), n_);
      if (track_) F_.axpy(comb.data(), nc, combs_[r].data(), accepted_ + 1);
    }
    int piv = -1;
    for (int j = 0; j < n_; ++j)
      if (v[j]) {
        piv = j;
        break;
      }
    if (piv < 0) {
      if (track_)
        for (auto& c : combs_) c.resize(accepted_, 0);
      return false;
    }
    Elt s = F_.inv(v[piv]);
    F_.scale(v.data(), s, n_);
    if (track_) F_.scale(comb.data(), s, comb.size());
    for (std::size_t r = 0; r < rows_.size(); ++r) {
      Elt c = rows_[r][piv];
      if (!c) continue;
      Elt nc = F_.neg(c);
      F_.axpy(rows_[r].data(), nc, v.data(), n_);
      if (track_) F_.axpy(combs_[r].data(), nc, comb.data(), accepted_ + 1);
    }
    piv_row_[piv] = static_cast<int>(rows_.size());
    rows_.push_back(std::move(v));
    pivots_.push_back(piv);
    if (track_) {
      combs_.push_back(std::move(comb));
      ++accepted_;
    }
    return true;
  }

  // Coordinates of v in the accepted vectors (insertion order); requires tracking.
  std::optional<Vec> coordinates(Vec v) const {
    if (!track_) throw InvalidInput("coordinates require a tracking echelon");
    Vec coeff(accepted_, 0);
    for (std::size_t r = 0; r < rows_.size(); ++r) {
      Elt c = v[pivots_[r]];
      if (!c) continue;
      F_.axpy(v.data(), F_.neg(c), rows_[r].data(), n_);
      F_.axpy(coeff.data(), c, combs_[r].data(), accepted_);
    }
    if (!is_zero_vec(v)) return std::nullopt;
    return coeff;
  }

  // Basis of {x : r.x = 0 for every row r}.
  std::vector<Vec> kernel() const {
    std::vector<Vec> ker;
    for (int f = 0; f < n_; ++f) {
      if (piv_row_[f] >= 0) continue;
      Vec x(n_, 0);
      x[f] = 1;
      for (std::size_t r = 0; r < rows_.size(); ++r) x[pivots_[r]] = F_.neg(rows_[r][f]);
      ker.push_back(std::move(x));
    }
    return ker;
  }

  // Sorted-pivot copy of the rows (RREF order).
  std::vector<Vec> sorted_rows() const {
    std::vector<int> idx(rows_.size());
    for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = static_cast<int>(i);
    std::sort(idx.begin(), idx.end(), [&](int x, int y) { return pivots_[x] < pivots_[y]; });
    std::vector<Vec> out;
    for (int i : idx) out.push_back(rows_[i]);
    return out;
  }

 private:
  Field F_;
  int n_ = 0;
  bool track_ = false;
  std::vector<Vec> rows_;
  std::vector<int> pivots_;
  std::vector<Vec> combs_;
  std::vector<int> piv_row_;
  int accepted_ = 0;
};

// Reduced row echelon form with leftmost pivots.
inline std::pair<Matrix, std::vector<int>> rref(const Field& F, Matrix M) {
  std::vector<int> piv;
  int r = 0;
  for (int c = 0; c < M.cols && r < M.rows; ++c) {
    int s = -1;
    for (int i = r; i < M.rows; ++i)
      if (M(i, c)) {
        s = i;
        break;
      }
    if (s < 0) continue;
    if (s != r)
      for (int j = 0; j < M.cols; ++j) std::swap(M(s, j), M(r, j));
    F.scale(M.row(r), F.inv(M(r, c)), M.cols);
    for (int i = 0; i < M.rows; ++i)
      if (i != r && M(i, c)) F.axpy(M.row(i), F.neg(M(i, c)), M.row(r), M.cols);
    piv.push_back(c);
    ++r;
  }
  return {M, piv};
}

inline int rank(const Field& F, const Matrix& M) {
  return static_cast<int>(rref(F, M).second.size());
}

inline std::vector<Vec> nullspace(const Field& F, const Matrix& A) {
  auto [R, piv] = rref(F, A);
  std::vector<bool> is_piv(A.cols, false);
  for (int c : piv) is_piv[c] = true;
  std::vector<Vec> ker;
  for (int f = 0; f < A.cols; ++f) {
    if (is_piv[f]) continue;
    Vec x(A.cols, 0);
    x[f] = 1;
    for (std::size_t r = 0; r < piv.size(); ++r) x[piv[r]] = F.neg(R(static_cast<int>(r), f));
    ker.push_back(std::move(x));
  }
  return ker;
}

struct SolveResult {
  bool consistent = false;
  Vec x;                      // particular solution when consistent
  std::vector<Vec> kernel;    // basis of ker A
};

inline SolveResult solve_linear(const Field& F, const Matrix& A, const Vec& b) {
  if (static_cast<int>(b.size()) != A.rows)
    throw InvalidInput("solve_linear: right-hand side has " + std::to_string(b.size()) +
                       " entries, matrix has " + std::to_string(A.rows) + " rows");
  Matrix Ab(A.rows, A.cols + 1);
  for (int i = 0; i < A.rows; ++i) {
    for (int j = 0; j < A.cols; ++j) Ab(i, j) = A(i, j);
    Ab(i, A.cols) = b[i];
  }
  auto [R, piv] = rref(F, Ab);
  SolveResult res;
  res.kernel = nullspace(F, A);
  if (!piv.empty() && piv.back() == A.cols) return res;
  res.consistent = true;
  res.x.assign(A.cols, 0);
  for (std::size_t r = 0; r < piv.size(); ++r) res.x[piv[r]] = R(static_cast<int>(r), A.cols);
  return res;
}

inline std::optional<Matrix> matrix_inverse(const Field& F, const Matrix& A) {
  if (!A.square()) throw InvalidInput("matrix_inverse: matrix is not square");
  const int n = A.rows;
  Matrix Ai(n, 2 * n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) Ai(i, j) = A(i, j);
    Ai(i, n + i) = 1;
  }
  auto [R, piv] = rref(F, Ai);
  if (static_cast<int>(piv.size()) < n || piv[n - 1] != n - 1) return std::nullopt;
  Matrix B(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) B(i, j) = R(i, n + j);
  return B;
}

inline Matrix inverse_or_throw(const Field& F, const Matrix& A) {
  auto B = matrix_inverse(F, A);
  if (!B) throw VerificationFailure("expected an invertible matrix");
  return *B;
}

inline bool is_invertible(const Field& F, const Matrix& A) {
  return A.square() && rank(F, A) == A.rows;
}

inline bool is_nilpotent(const Field& F, const Matrix& A) {
  return mat_pow(F, A, A.rows).is_zero();
}

// Basis of the column space, as vectors, in RREF order of the transpose.
inline std::vector<Vec> column_space(const Field& F, const Matrix& A) {
  Echelon E(F, A.rows);
  for (int j = 0; j < A.cols; ++j) {
    Vec c(A.rows);
    for (int i = 0; i < A.rows; ++i) c[i] = A(i, j);
    E.insert(std::move(c));
  }
  return E.sorted_rows();
}

struct FittingSplit {
  std::vector<Vec> kernel_part;  // basis of ker f^n
  std::vector<Vec> image_part;   // basis of im f^n
};

inline FittingSplit fitting_split(const Field& F, const Matrix& f) {
  if (!f.square()) throw InvalidInput("fitting_split: endomorphism must be square");
  Matrix g = mat_pow(F, f, f.rows);
  return {nullspace(F, g), column_space(F, g)};
}

inline Vec flatten(const Matrix& M) { return M.a; }

inline Matrix unflatten(int r, int c, const Vec& v) {
  Matrix M(r, c);
  M.a = v;
  return M;
}

inline Matrix lin_comb(const Field& F, const std::vector<Matrix>& basis, const Vec& coeffs) {
  Matrix M(basis.at(0).rows, basis.at(0).cols);
  for (std::size_t i = 0; i < basis.size(); ++i) mat_axpy(F, M, coeffs[i], basis[i]);
  return M;
}

}  // namespace gpi
