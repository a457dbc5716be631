#ifndef CAYLEYJET_TESTS_ORACLES_HPP
#define CAYLEYJET_TESTS_ORACLES_HPP

// Independent brute-force reference computations used only by the tests.
// Nothing here calls into the elimination or hull code under test.

#include <algorithm>
#include <functional>
#include <random>
#include <set>
#include <vector>

#include "cayleyjet/lattice.hpp"

namespace oracle {

using cayleyjet::Integer;
using cayleyjet::IntegerMatrix;
using cayleyjet::LatticeVector;
using cayleyjet::Rational;

/// Laplace expansion along the first row.
inline Integer laplace_determinant(const std::vector<std::vector<Integer>>& a) {
  const std::size_t n = a.size();
  if (n == 0) return 1;
  if (n == 1) return a[0][0];
  Integer det = 0;
  for (std::size_t c = 0; c < n; ++c) {
    if (a[0][c] == 0) continue;
    std::vector<std::vector<Integer>> minor;
    for (std::size_t r = 1; r < n; ++r) {
      std::vector<Integer> row;
      for (std::size_t j = 0; j < n; ++j)
        if (j != c) row.push_back(a[r][j]);
      minor.push_back(row);
    }
    Integer term = a[0][c] * laplace_determinant(minor);
    det += (c % 2 == 0) ? term : Integer(-term);
  }
  return det;
}

inline void subsets(std::size_t n, std::size_t k, std::size_t start, std::vector<std::size_t>& cur,
                    std::vector<std::vector<std::size_t>>& out) {
  if (cur.size() == k) {
    out.push_back(cur);
    return;
  }
  for (std::size_t i = start; i < n; ++i) {
    cur.push_back(i);
    subsets(n, k, i + 1, cur, out);
    cur.pop_back();
  }
}

inline std::vector<std::vector<std::size_t>> subsets(std::size_t n, std::size_t k) {
  std::vector<std::vector<std::size_t>> out;
  std::vector<std::size_t> cur;
  subsets(n, k, 0, cur, out);
  return out;
}

/// Largest r with a nonzero r x r minor.
inline std::size_t rank_by_minors(const IntegerMatrix& m) {
  for (std::size_t r = std::min(m.rows(), m.cols()); r > 0; --r) {
    for (const auto& rows : subsets(m.rows(), r))
      for (const auto& cols : subsets(m.cols(), r)) {
        std::vector<std::vector<Integer>> sub(r, std::vector<Integer>(r));
        for (std::size_t i = 0; i < r; ++i)
          for (std::size_t j = 0; j < r; ++j) sub[i][j] = m(rows[i], cols[j]);
        if (laplace_determinant(sub) != 0) return r;
      }
  }
  return 0;
}

inline IntegerMatrix random_matrix(std::mt19937_64& rng, std::size_t rows, std::size_t cols,
                                   int lo, int hi) {
  std::uniform_int_distribution<int> dist(lo, hi);
  IntegerMatrix m(rows, cols);
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < cols; ++j) m(i, j) = dist(rng);
  return m;
}

/// Random unimodular matrix as a product of elementary operations.
inline IntegerMatrix random_unimodular(std::mt19937_64& rng, std::size_t n, int steps = 6) {
  IntegerMatrix u = IntegerMatrix::identity(n);
  if (n < 2) return u;
  std::uniform_int_distribution<std::size_t> idx(0, n - 1);
  std::uniform_int_distribution<int> coef(-2, 2);
  for (int s = 0; s < steps; ++s) {
    std::size_t i = idx(rng), j = idx(rng);
    if (i == j) continue;
    int c = coef(rng);
    for (std::size_t k = 0; k < n; ++k) u(i, k) += c * u(j, k);
  }
  return u;
}

/// Facets of a lattice polygon by brute force over vertex pairs: the line
/// through two vertices is a facet iff every vertex lies on one side.
inline std::set<std::pair<LatticeVector, Integer>> polygon_facets(const std::vector<LatticeVector>& vs) {
  std::set<std::pair<LatticeVector, Integer>> out;
  for (std::size_t i = 0; i < vs.size(); ++i)
    for (std::size_t j = i + 1; j < vs.size(); ++j) {
      LatticeVector d = vs[j] - vs[i];
      LatticeVector n{0, 0};
      n[0] = -d[1];
      n[1] = d[0];
      Integer g = cayleyjet::gcd(n[0], n[1]);
      n[0] /= g;
      n[1] /= g;
      Integer base = cayleyjet::dot(n, vs[i]);
      bool ge = true, le = true;
      for (const auto& v : vs) {
        Integer val = cayleyjet::dot(n, v);
        if (val < base) ge = false;
        if (val > base) le = false;
      }
      if (ge) out.insert({n, -base});
      if (le) out.insert({-n, base});
    }
  return out;
}

/// Lattice points of the box [lo, hi] satisfying pred, lexicographic.
template <typename Pred>
std::vector<LatticeVector> box_scan(const LatticeVector& lo, const LatticeVector& hi, Pred pred) {
  std::vector<LatticeVector> out;
  std::function<void(LatticeVector&, std::size_t)> rec = [&](LatticeVector& x, std::size_t i) {
    if (i == x.dim()) {
      if (pred(x)) out.push_back(x);
      return;
    }
    for (Integer c = lo[i]; c <= hi[i]; ++c) {
      x[i] = c;
      rec(x, i + 1);
    }
  };
  LatticeVector x = lo;
  rec(x, 0);
  return out;
}

/// Extreme points of a finite planar point set: p is extreme iff some
/// integer direction in the box [-12, 12]^2 has p as its unique maximizer.
inline std::vector<LatticeVector> planar_extreme_points(const std::vector<LatticeVector>& pts) {
  std::vector<LatticeVector> out;
  for (const auto& p : pts) {
    bool extreme = false;
    for (int a = -12; a <= 12 && !extreme; ++a)
      for (int b = -12; b <= 12 && !extreme; ++b) {
        if (a == 0 && b == 0) continue;
        LatticeVector u{a, b};
        Integer vp = cayleyjet::dot(u, p);
        bool unique = true;
        for (const auto& q : pts)
          if (!(q == p) && cayleyjet::dot(u, q) >= vp) unique = false;
        extreme = unique;
      }
    if (extreme) out.push_back(p);
  }
  std::sort(out.begin(), out.end());
  return out;
}

inline Integer binomial(unsigned n, unsigned k) {
  Integer r = 1;
  for (unsigned i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

}  // namespace oracle

#endif  // CAYLEYJET_TESTS_ORACLES_HPP
