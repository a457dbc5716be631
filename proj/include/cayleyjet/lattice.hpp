#ifndef CAYLEYJET_LATTICE_HPP
#define CAYLEYJET_LATTICE_HPP

// Exact integer and rational linear algebra: lattice vectors, dense matrices,
// fraction-free elimination, kernels and unimodular completions.

#include <algorithm>
#include <cassert>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <ostream>
#include <span>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "cayleyjet/error.hpp"

namespace cayleyjet {

using Integer = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

inline Integer numerator_of(const Rational& q) { return boost::multiprecision::numerator(q); }
inline Integer denominator_of(const Rational& q) { return boost::multiprecision::denominator(q); }

inline Integer abs_value(const Integer& a) { return a < 0 ? Integer(-a) : a; }

inline Integer gcd(const Integer& a, const Integer& b) {
  return boost::multiprecision::gcd(abs_value(a), abs_value(b));
}

inline Integer lcm(const Integer& a, const Integer& b) {
  if (a == 0 || b == 0) return 0;
  return abs_value(a) / gcd(a, b) * abs_value(b);
}

inline Integer floor_of(const Rational& q) {
  Integer n = numerator_of(q), d = denominator_of(q);
  Integer f = n / d;  // truncates toward zero
  if (f * d > n) --f;
  return f;
}

inline Integer ceil_of(const Rational& q) {
  Integer f = floor_of(q);
  return Rational(f) == q ? f : Integer(f + 1);
}

inline bool is_integral(const Rational& q) { return denominator_of(q) == 1; }

inline std::string to_string(const Integer& a) { return a.str(); }

inline std::string to_string(const Rational& q) {
  if (is_integral(q)) return numerator_of(q).str();
  return numerator_of(q).str() + "/" + denominator_of(q).str();
}

/// Extended gcd: returns (g, x, y) with a*x + b*y = g >= 0.
struct ExtendedGcd {
  Integer g, x, y;
};

inline ExtendedGcd extended_gcd(Integer a, Integer b) {
  Integer x0 = 1, y0 = 0, x1 = 0, y1 = 1;
  while (b != 0) {
    Integer q = a / b;
    Integer t = a - q * b;
    a = b;
    b = t;
    t = x0 - q * x1;
    x0 = x1;
    x1 = t;
    t = y0 - q * y1;
    y0 = y1;
    y1 = t;
  }
  if (a < 0) return {-a, -x0, -y0};
  return {a, x0, y0};
}

// ---------------------------------------------------------------------------
// LatticeVector

/// A point of Z^n (or of the dual lattice; the type does not distinguish).
class LatticeVector {
 public:
  LatticeVector() = default;
  explicit LatticeVector(std::size_t dim) : coords_(dim) {}
  explicit LatticeVector(std::vector<Integer> coords) : coords_(std::move(coords)) {}
  LatticeVector(std::initializer_list<long long> coords) {
    coords_.reserve(coords.size());
    for (long long c : coords) coords_.emplace_back(c);
  }

  static LatticeVector unit(std::size_t dim, std::size_t i) {
    LatticeVector e(dim);
    e[i] = 1;
    return e;
  }

  std::size_t dim() const noexcept { return coords_.size(); }
  const std::vector<Integer>& coords() const noexcept { return coords_; }

  Integer& operator[](std::size_t i) { return coords_[i]; }
  const Integer& operator[](std::size_t i) const { return coords_[i]; }

  auto begin() const { return coords_.begin(); }
  auto end() const { return coords_.end(); }

  bool is_zero() const {
    return std::all_of(coords_.begin(), coords_.end(), [](const Integer& c) { return c == 0; });
  }

  Integer max_abs() const {
    Integer m = 0;
    for (const auto& c : coords_) m = std::max(m, abs_value(c));
    return m;
  }

  LatticeVector& operator+=(const LatticeVector& o) {
    assert(dim() == o.dim());
    for (std::size_t i = 0; i < dim(); ++i) coords_[i] += o.coords_[i];
    return *this;
  }
  LatticeVector& operator-=(const LatticeVector& o) {
    assert(dim() == o.dim());
    for (std::size_t i = 0; i < dim(); ++i) coords_[i] -= o.coords_[i];
    return *this;
  }
  LatticeVector& operator*=(const Integer& s) {
    for (auto& c : coords_) c *= s;
    return *this;
  }

  friend LatticeVector operator+(LatticeVector a, const LatticeVector& b) { return a += b; }
  friend LatticeVector operator-(LatticeVector a, const LatticeVector& b) { return a -= b; }
  friend LatticeVector operator*(const Integer& s, LatticeVector a) { return a *= s; }
  friend LatticeVector operator-(LatticeVector a) {
    for (auto& c : a.coords_) c = -c;
    return a;
  }

  friend bool operator==(const LatticeVector& a, const LatticeVector& b) {
    return a.coords_ == b.coords_;
  }
  /// Lexicographic order.
  friend bool operator<(const LatticeVector& a, const LatticeVector& b) {
    return std::lexicographical_compare(a.coords_.begin(), a.coords_.end(), b.coords_.begin(),
                                        b.coords_.end());
  }

  friend std::ostream& operator<<(std::ostream& os, const LatticeVector& v) {
    os << '(';
    for (std::size_t i = 0; i < v.dim(); ++i) os << (i ? "," : "") << v[i];
    return os << ')';
  }

 private:
  std::vector<Integer> coords_;
};

inline std::string to_string(const LatticeVector& v) {
  std::ostringstream os;
  os << v;
  return os.str();
}

inline Integer dot(const LatticeVector& a, const LatticeVector& b) {
  assert(a.dim() == b.dim());
  Integer s = 0;
  for (std::size_t i = 0; i < a.dim(); ++i) s += a[i] * b[i];
  return s;
}

using RationalVector = std::vector<Rational>;

inline Rational dot(const LatticeVector& a, const RationalVector& b) {
  assert(a.dim() == b.size());
  Rational s = 0;
  for (std::size_t i = 0; i < a.dim(); ++i) s += Rational(a[i]) * b[i];
  return s;
}

inline RationalVector to_rational(const LatticeVector& v) {
  RationalVector r;
  r.reserve(v.dim());
  for (const auto& c : v) r.emplace_back(c);
  return r;
}

struct PrimitiveDecomposition {
  Integer g;
  LatticeVector p;
};

/// v = g * p with p primitive and g >= 0; the zero vector gives g = 0, p = v.
inline PrimitiveDecomposition primitive(const LatticeVector& v) {
  Integer g = 0;
  for (const auto& c : v) g = gcd(g, c);
  if (g == 0) return {0, v};
  LatticeVector p = v;
  for (std::size_t i = 0; i < p.dim(); ++i) p[i] /= g;
  return {g, p};
}

/// Flips sign so that the first nonzero coordinate is positive.
inline LatticeVector sign_normalized(LatticeVector v) {
  for (const auto& c : v) {
    if (c != 0) {
      if (c < 0) v = -v;
      break;
    }
  }
  return v;
}

// ---------------------------------------------------------------------------
// Matrix

template <typename T>
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}

  static Matrix identity(std::size_t n) {
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
    return m;
  }

  static Matrix from_rows(const std::vector<std::vector<T>>& rows, std::size_t cols) {
    Matrix m(rows.size(), cols);
    for (std::size_t i = 0; i < rows.size(); ++i) {
      assert(rows[i].size() == cols);
      for (std::size_t j = 0; j < cols; ++j) m(i, j) = rows[i][j];
    }
    return m;
  }

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  std::span<const T> entries() const noexcept { return data_; }

  T& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const T& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  std::vector<T> row(std::size_t i) const {
    return std::vector<T>(data_.begin() + i * cols_, data_.begin() + (i + 1) * cols_);
  }

  void swap_rows(std::size_t a, std::size_t b) {
    if (a == b) return;
    for (std::size_t j = 0; j < cols_; ++j) std::swap((*this)(a, j), (*this)(b, j));
  }

  Matrix transpose() const {
    Matrix t(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    return t;
  }

  friend Matrix operator*(const Matrix& a, const Matrix& b) {
    assert(a.cols_ == b.rows_);
    Matrix c(a.rows_, b.cols_);
    for (std::size_t i = 0; i < a.rows_; ++i)
      for (std::size_t k = 0; k < a.cols_; ++k) {
        if (a(i, k) == 0) continue;
        for (std::size_t j = 0; j < b.cols_; ++j) c(i, j) += a(i, k) * b(k, j);
      }
    return c;
  }

  friend bool operator==(const Matrix& a, const Matrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
  }

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<T> data_;
};

using IntegerMatrix = Matrix<Integer>;
using RationalMatrix = Matrix<Rational>;

inline IntegerMatrix matrix_from_rows(const std::vector<LatticeVector>& rows, std::size_t cols) {
  IntegerMatrix m(rows.size(), cols);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    assert(rows[i].dim() == cols);
    for (std::size_t j = 0; j < cols; ++j) m(i, j) = rows[i][j];
  }
  return m;
}

inline IntegerMatrix matrix_from_columns(const std::vector<LatticeVector>& cols, std::size_t rows) {
  return matrix_from_rows(cols, rows).transpose();
}

inline LatticeVector row_vector(const IntegerMatrix& m, std::size_t i) {
  return LatticeVector(m.row(i));
}

inline LatticeVector multiply(const IntegerMatrix& m, const LatticeVector& v) {
  assert(m.cols() == v.dim());
  LatticeVector out(m.rows());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) out[i] += m(i, j) * v[j];
  return out;
}

inline RationalVector multiply(const IntegerMatrix& m, const RationalVector& v) {
  assert(m.cols() == v.size());
  RationalVector out(m.rows());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j)
      if (m(i, j) != 0) out[i] += Rational(m(i, j)) * v[j];
  return out;
}

/// Scales each row by the lcm of its denominators; preserves rank and kernel.
inline IntegerMatrix clear_denominators(const RationalMatrix& m) {
  IntegerMatrix out(m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i) {
    Integer l = 1;
    for (std::size_t j = 0; j < m.cols(); ++j) l = lcm(l, denominator_of(m(i, j)));
    for (std::size_t j = 0; j < m.cols(); ++j)
      out(i, j) = numerator_of(m(i, j)) * (l / denominator_of(m(i, j)));
  }
  return out;
}

// ---------------------------------------------------------------------------
// Fraction-free elimination

/// Result of fraction-free Gauss-Jordan elimination. `reduced` equals
/// `pivot` times the reduced row echelon form of the row-permuted input;
/// every intermediate entry is a minor of the input, so all divisions are
/// exact.
struct FractionFreeReduction {
  IntegerMatrix reduced;
  std::vector<std::size_t> pivot_columns;
  Integer pivot = 1;
  bool odd_permutation = false;

  std::size_t rank() const noexcept { return pivot_columns.size(); }
};

inline FractionFreeReduction reduce_fraction_free(IntegerMatrix a) {
  FractionFreeReduction out;
  Integer previous = 1;
  std::size_t r = 0;
  for (std::size_t c = 0; c < a.cols() && r < a.rows(); ++c) {
    std::size_t p = r;
    while (p < a.rows() && a(p, c) == 0) ++p;
    if (p == a.rows()) continue;
    if (p != r) {
      a.swap_rows(p, r);
      out.odd_permutation = !out.odd_permutation;
    }
    const Integer piv = a(r, c);
    for (std::size_t i = 0; i < a.rows(); ++i) {
      if (i == r) continue;
      const Integer factor = a(i, c);
      for (std::size_t j = 0; j < a.cols(); ++j) {
        Integer value = piv * a(i, j) - factor * a(r, j);
        assert(value % previous == 0);
        a(i, j) = value / previous;
      }
    }
    previous = piv;
    out.pivot_columns.push_back(c);
    ++r;
  }
  out.pivot = previous;
  out.reduced = std::move(a);
  return out;
}

inline std::vector<LatticeVector> kernel_basis(const IntegerMatrix& m);

namespace detail {

inline constexpr std::uint64_t rank_prime = (std::uint64_t(1) << 61) - 1;

inline std::uint64_t mul_mod(std::uint64_t a, std::uint64_t b) {
  return std::uint64_t((unsigned __int128)a * b % rank_prime);
}

inline std::uint64_t pow_mod(std::uint64_t a, std::uint64_t e) {
  std::uint64_t r = 1;
  for (; e; e >>= 1, a = mul_mod(a, a))
    if (e & 1) r = mul_mod(r, a);
  return r;
}

/// Pivot columns of the row echelon form over F_p. Their number, the rank
/// over F_p, never exceeds the rank over Q.
inline std::vector<std::size_t> pivots_mod_prime(const IntegerMatrix& m) {
  const std::size_t rows = m.rows(), cols = m.cols();
  std::vector<std::uint64_t> a(rows * cols);
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < cols; ++j) {
      Integer x = m(i, j) % rank_prime;
      if (x < 0) x += rank_prime;
      a[i * cols + j] = x.convert_to<std::uint64_t>();
    }
  std::vector<std::size_t> pivots;
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t p = r;
    while (p < rows && a[p * cols + c] == 0) ++p;
    if (p == rows) continue;
    if (p != r)
      for (std::size_t j = c; j < cols; ++j) std::swap(a[p * cols + j], a[r * cols + j]);
    const auto inv = pow_mod(a[r * cols + c], rank_prime - 2);
    for (std::size_t i = r + 1; i < rows; ++i) {
      const auto f = mul_mod(a[i * cols + c], inv);
      if (f == 0) continue;
      for (std::size_t j = c; j < cols; ++j)
        a[i * cols + j] = (a[i * cols + j] + rank_prime - mul_mod(f, a[r * cols + j])) % rank_prime;
    }
    pivots.push_back(c);
    ++r;
  }
  return pivots;
}

/// Bareiss forward elimination; only the rank is kept.
inline std::size_t rank_bareiss(IntegerMatrix a) {
  Integer previous = 1;
  std::size_t r = 0;
  for (std::size_t c = 0; c < a.cols() && r < a.rows(); ++c) {
    std::size_t p = r;
    while (p < a.rows() && a(p, c) == 0) ++p;
    if (p == a.rows()) continue;
    if (p != r) a.swap_rows(p, r);
    const Integer piv = a(r, c);
    for (std::size_t i = r + 1; i < a.rows(); ++i) {
      const Integer factor = a(i, c);
      for (std::size_t j = c + 1; j < a.cols(); ++j) a(i, j) = (piv * a(i, j) - factor * a(r, j)) / previous;
      a(i, c) = 0;
    }
    previous = piv;
    ++r;
  }
  return r;
}

}  // namespace detail

/// Rank over the rationals, computed exactly. A full rank modulo a prime
/// already certifies full rank over Q; otherwise Bareiss elimination decides.
inline std::size_t rank_exact(const IntegerMatrix& m) {
  // Eliminating along the shorter side is cheaper and gives the same rank.
  if (m.rows() > m.cols()) return rank_exact(m.transpose());
  if (m.rows() == 0) return 0;
  const auto pivots = detail::pivots_mod_prime(m);
  if (pivots.size() == m.rows()) return m.rows();
  // The modular rank is exact if the left kernel of the pivot columns, which
  // has rows - rank vectors over Q, annihilates every column.
  IntegerMatrix sub(m.rows(), pivots.size());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < pivots.size(); ++j) sub(i, j) = m(i, pivots[j]);
  const auto left = kernel_basis(sub.transpose());
  bool certified = left.size() == m.rows() - pivots.size();
  for (std::size_t t = 0; t < left.size() && certified; ++t)
    for (std::size_t j = 0; j < m.cols() && certified; ++j) {
      Integer s = 0;
      for (std::size_t i = 0; i < m.rows(); ++i)
        if (left[t][i] != 0) s += left[t][i] * m(i, j);
      certified = s == 0;
    }
  return certified ? pivots.size() : detail::rank_bareiss(m);
}

inline std::size_t rank_exact(const RationalMatrix& m) { return rank_exact(clear_denominators(m)); }

inline Integer determinant(const IntegerMatrix& m) {
  if (m.rows() != m.cols()) throw Error(ErrorKind::InvalidParams, "determinant of a non-square matrix");
  if (m.rows() == 0) return 1;
  auto red = reduce_fraction_free(m);
  if (red.rank() < m.rows()) return 0;
  return red.odd_permutation ? Integer(-red.pivot) : red.pivot;
}

/// Basis of the rational null space {v : m v = 0}, one primitive integer
/// vector per free column, each with its first nonzero entry positive.
inline std::vector<LatticeVector> kernel_basis(const IntegerMatrix& m) {
  const auto red = reduce_fraction_free(m);
  std::vector<bool> is_pivot(m.cols(), false);
  for (auto c : red.pivot_columns) is_pivot[c] = true;

  std::vector<LatticeVector> basis;
  for (std::size_t f = 0; f < m.cols(); ++f) {
    if (is_pivot[f]) continue;
    LatticeVector v(m.cols());
    v[f] = red.pivot;
    for (std::size_t i = 0; i < red.pivot_columns.size(); ++i)
      v[red.pivot_columns[i]] = -red.reduced(i, f);
    basis.push_back(sign_normalized(primitive(v).p));
  }
  return basis;
}

inline std::vector<LatticeVector> kernel_basis(const RationalMatrix& m) {
  return kernel_basis(clear_denominators(m));
}

/// True iff `vs` has exactly `dim` vectors whose determinant is +-1.
inline bool is_lattice_basis(const std::vector<LatticeVector>& vs, std::size_t dim) {
  if (vs.size() != dim) return false;
  for (const auto& v : vs)
    if (v.dim() != dim) return false;
  return abs_value(determinant(matrix_from_rows(vs, dim))) == 1;
}

inline bool is_lattice_basis(const std::vector<LatticeVector>& vs) {
  if (vs.empty()) return false;
  return is_lattice_basis(vs, vs.front().dim());
}

/// Inverse of a unimodular matrix; throws InvalidParams if |det| != 1.
inline IntegerMatrix inverse_unimodular(const IntegerMatrix& m) {
  const std::size_t n = m.rows();
  if (m.cols() != n) throw Error(ErrorKind::InvalidParams, "inverse of a non-square matrix");
  IntegerMatrix aug(n, 2 * n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) aug(i, j) = m(i, j);
    aug(i, n + i) = 1;
  }
  auto red = reduce_fraction_free(aug);
  if (red.rank() < n || red.pivot_columns[n - 1] != n - 1 || abs_value(red.pivot) != 1)
    throw Error(ErrorKind::InvalidParams, "matrix is not unimodular");
  IntegerMatrix inv(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) inv(i, j) = red.reduced(i, n + j) / red.pivot;
  return inv;
}

/// Column operations V (unimodular) with rows * V = [I_r | 0].
/// Throws InvalidParams when `rows` does not map Z^n onto Z^r.
inline IntegerMatrix surjection_right_inverse_basis(const IntegerMatrix& rows) {
  const std::size_t r = rows.rows(), n = rows.cols();
  if (r > n) throw Error(ErrorKind::InvalidParams, "more functionals than ambient dimension");
  IntegerMatrix a = rows;
  IntegerMatrix v = IntegerMatrix::identity(n);

  auto column_op = [&](std::size_t i, std::size_t j, const Integer& p, const Integer& q,
                       const Integer& s, const Integer& t) {
    // (col_i, col_j) <- (p col_i + q col_j, s col_i + t col_j), with p t - q s = +-1
    for (IntegerMatrix* mat : {&a, &v}) {
      for (std::size_t k = 0; k < mat->rows(); ++k) {
        Integer ci = (*mat)(k, i), cj = (*mat)(k, j);
        (*mat)(k, i) = p * ci + q * cj;
        (*mat)(k, j) = s * ci + t * cj;
      }
    }
  };

  for (std::size_t i = 0; i < r; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      if (a(i, j) == 0) continue;
      const Integer x = a(i, i), y = a(i, j);
      auto eg = extended_gcd(x, y);
      // new col_i = eg.x col_i + eg.y col_j carries the gcd; col_j becomes zero in row i.
      column_op(i, j, eg.x, eg.y, -y / eg.g, x / eg.g);
    }
    if (abs_value(a(i, i)) != 1)
      throw Error(ErrorKind::InvalidParams, "functionals are not a lattice surjection");
    if (a(i, i) < 0)
      for (IntegerMatrix* mat : {&a, &v})
        for (std::size_t k = 0; k < mat->rows(); ++k) (*mat)(k, i) = -(*mat)(k, i);
    for (std::size_t j = 0; j < i; ++j) {
      if (a(i, j) == 0) continue;
      Integer f = a(i, j);
      for (IntegerMatrix* mat : {&a, &v})
        for (std::size_t k = 0; k < mat->rows(); ++k) (*mat)(k, j) -= f * (*mat)(k, i);
    }
  }
  return v;
}

/// Unimodular n x n matrix whose first r rows are `rows`.
inline IntegerMatrix complete_to_unimodular(const IntegerMatrix& rows) {
  return inverse_unimodular(surjection_right_inverse_basis(rows));
}

}  // namespace cayleyjet

#endif  // CAYLEYJET_LATTICE_HPP
