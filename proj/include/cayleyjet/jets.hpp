#ifndef CAYLEYJET_JETS_HPP
#define CAYLEYJET_JETS_HPP

// Matrices of k-jets for the monomial basis of a lattice polytope, and the
// jet-spannedness order at torus fixpoints and at the general point.

#include <algorithm>
#include <climits>
#include <optional>
#include <random>
#include <set>
#include <variant>
#include <vector>

#include "cayleyjet/lattice.hpp"
#include "cayleyjet/polytope.hpp"

namespace cayleyjet {

struct MultiIndex {
  std::vector<unsigned> exponents;

  unsigned order() const {
    unsigned s = 0;
    for (auto e : exponents) s += e;
    return s;
  }

  friend bool operator==(const MultiIndex&, const MultiIndex&) = default;
  friend bool operator<(const MultiIndex& a, const MultiIndex& b) { return a.exponents < b.exponents; }
};

/// All multi-indices in n variables of order <= k, graded by order and
/// lexicographically descending inside each degree (x^2, xy, y^2, ...).
inline std::vector<MultiIndex> multi_indices(std::size_t n, unsigned k) {
  std::vector<MultiIndex> out;
  for (unsigned d = 0; d <= k; ++d) {
    std::vector<unsigned> e(n, 0);
    // Enumerate compositions of d into n parts in descending lex order.
    auto rec = [&](auto&& self, std::size_t i, unsigned left) -> void {
      if (i + 1 == n) {
        e[i] = left;
        out.push_back({e});
        return;
      }
      for (unsigned c = left + 1; c-- > 0;) {
        e[i] = c;
        self(self, i + 1, left - c);
      }
    };
    if (n == 0) {
      if (d == 0) out.push_back({});
      continue;
    }
    rec(rec, 0, d);
  }
  return out;
}

inline std::size_t binomial_count(std::size_t n, std::size_t k) {
  std::size_t r = 1;
  for (std::size_t i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

/// m (m-1) ... (m-a+1); equals d^a/dx^a x^m at x = 1.
inline Integer falling_factorial(const Integer& m, unsigned a) {
  Integer r = 1;
  for (unsigned i = 0; i < a; ++i) r *= m - i;
  return r;
}

inline Integer power(const Integer& base, unsigned e) {
  Integer r = 1;
  for (unsigned i = 0; i < e; ++i) r *= base;
  return r;
}

inline Rational power(const Rational& base, const Integer& e) {
  Rational r = 1;
  const Rational b = e < 0 ? Rational(1 / base) : base;
  for (Integer i = 0; i < abs_value(e); ++i) r *= b;
  return r;
}

inline Integer factorial(unsigned a) {
  Integer r = 1;
  for (unsigned i = 2; i <= a; ++i) r *= i;
  return r;
}

inline unsigned to_unsigned(const Integer& v) {
  if (v < 0 || v > UINT_MAX) throw Error(ErrorKind::InvalidParams, "value does not fit a jet order");
  return v.convert_to<unsigned>();
}

struct AllOnes {};
struct Fixpoint {
  std::size_t vertex = 0;
};
struct RationalPoint {
  RationalVector coords;
};
using EvalMode = std::variant<AllOnes, Fixpoint, RationalPoint>;

/// Rows are derivatives d^a with |a| <= k, columns the monomials x^m for the
/// lattice points m of P.
struct JetMatrix {
  unsigned k = 0;
  std::vector<MultiIndex> row_index;
  std::vector<LatticeVector> col_index;
  IntegerMatrix entries;
  EvalMode mode;

  bool has_full_rank() const { return rank_exact(entries) == row_index.size(); }
};

/// AllOnes: entry(a, m) is the product of falling factorials.
/// Fixpoint: entry(a, m) = a! if chart(m) = a, else 0.
/// RationalPoint: d^a x^m evaluated at the point, each row scaled by the lcm
/// of its denominators (rank is unchanged).
inline JetMatrix jet_matrix(const LatticePolytope& p, unsigned k, const EvalMode& mode = AllOnes{}) {
  const std::size_t n = p.dim();
  JetMatrix jm;
  jm.k = k;
  jm.mode = mode;
  jm.row_index = multi_indices(n, k);
  jm.col_index = p.lattice_points();
  const std::size_t rows = jm.row_index.size(), cols = jm.col_index.size();
  jm.entries = IntegerMatrix(rows, cols);

  // Per-axis coordinate range, for the lookup tables below.
  std::vector<Integer> lo(n), hi(n);
  for (std::size_t i = 0; i < n; ++i) {
    lo[i] = hi[i] = jm.col_index.front()[i];
    for (const auto& m : jm.col_index) {
      lo[i] = std::min(lo[i], m[i]);
      hi[i] = std::max(hi[i], m[i]);
    }
  }
  auto offset = [&](std::size_t i, const Integer& m) { return (m - lo[i]).convert_to<std::size_t>(); };
  // falls[i][m - lo_i][a] = m (m - 1) ... (m - a + 1)
  std::vector<std::vector<std::vector<Integer>>> falls(n);
  for (std::size_t i = 0; i < n; ++i)
    for (Integer m = lo[i]; m <= hi[i]; ++m) {
      std::vector<Integer> row;
      for (unsigned a = 0; a <= k; ++a) row.push_back(falling_factorial(m, a));
      falls[i].push_back(std::move(row));
    }

  if (std::holds_alternative<AllOnes>(mode)) {
    for (std::size_t r = 0; r < rows; ++r)
      for (std::size_t c = 0; c < cols; ++c) {
        Integer v = 1;
        for (std::size_t i = 0; i < n && v != 0; ++i)
          v *= falls[i][offset(i, jm.col_index[c][i])][jm.row_index[r].exponents[i]];
        jm.entries(r, c) = v;
      }
  } else if (const auto* fp = std::get_if<Fixpoint>(&mode)) {
    if (fp->vertex >= p.vertices().size() || !is_smooth_at(p, fp->vertex))
      throw Error(ErrorKind::NotSmoothAtVertex, "fixpoint jets need a smooth vertex");
    const auto chart = vertex_chart(p, fp->vertex);
    const auto& origin = p.vertices()[fp->vertex];
    for (std::size_t c = 0; c < cols; ++c) {
      const LatticeVector y = multiply(chart.map, jm.col_index[c] - origin);
      for (std::size_t r = 0; r < rows; ++r) {
        const auto& a = jm.row_index[r].exponents;
        bool match = true;
        for (std::size_t i = 0; i < n && match; ++i) match = (y[i] == a[i]);
        if (!match) continue;
        Integer v = 1;
        for (auto e : a) v *= factorial(e);
        jm.entries(r, c) = v;
      }
    }
  } else {
    const auto& x = std::get<RationalPoint>(mode).coords;
    if (x.size() != n) throw Error(ErrorKind::InvalidParams, "evaluation point has the wrong dimension");
    // powers[i][e - lo_i + k] = x_i^e for lo_i - k <= e <= hi_i
    std::vector<std::vector<Rational>> powers(n);
    for (std::size_t i = 0; i < n; ++i)
      for (Integer e = lo[i] - k; e <= hi[i]; ++e) powers[i].push_back(power(x[i], e));
    RationalMatrix values(rows, cols);
    for (std::size_t r = 0; r < rows; ++r)
      for (std::size_t c = 0; c < cols; ++c) {
        Rational v = 1;
        for (std::size_t i = 0; i < n && v != 0; ++i) {
          const auto a = jm.row_index[r].exponents[i];
          const auto o = offset(i, jm.col_index[c][i]);
          const auto& f = falls[i][o][a];
          if (f == 0) v = 0;
          else v *= f * powers[i][o + k - a];
        }
        values(r, c) = v;
      }
    jm.entries = clear_denominators(values);
  }
  return jm;
}

/// Evaluation of monomials at lattice points: rows are points, columns are
/// multi-indices of order <= k, entry m^a with 0^0 = 1.
inline IntegerMatrix power_matrix(const std::vector<LatticeVector>& points, std::size_t n, unsigned k) {
  const auto monomials = multi_indices(n, k);
  IntegerMatrix m(points.size(), monomials.size());
  for (std::size_t r = 0; r < points.size(); ++r)
    for (std::size_t c = 0; c < monomials.size(); ++c) {
      Integer v = 1;
      for (std::size_t i = 0; i < n && v != 0; ++i) v *= power(points[r][i], monomials[c].exponents[i]);
      m(r, c) = v;
    }
  return m;
}

/// Largest k with {a : |a| <= k} contained in the chart image of P ∩ M.
inline unsigned chart_jet_order(const LatticePolytope& p, std::size_t v) {
  const auto chart = vertex_chart(p, v);
  const std::set<LatticeVector> pts(chart.points.begin(), chart.points.end());
  unsigned k = 0;
  while (true) {
    for (const auto& a : multi_indices(p.dim(), k + 1)) {
      if (a.order() != k + 1) continue;
      LatticeVector x(p.dim());
      for (std::size_t i = 0; i < p.dim(); ++i) x[i] = a.exponents[i];
      if (!pts.count(x)) return k;
    }
    ++k;
  }
}

/// s(L, x(v)): the smallest lattice length of an edge through v.
inline unsigned fixpoint_jet_order(const LatticePolytope& p, std::size_t v) {
  if (v >= p.vertices().size() || !is_smooth_at(p, v))
    throw Error(ErrorKind::NotSmoothAtVertex, "polytope is not smooth at the vertex");
  Integer m = -1;
  for (auto i : p.edges_at(v)) {
    const auto& len = p.edges()[i].lattice_length;
    if (m < 0 || len < m) m = len;
  }
  return to_unsigned(m);
}

/// Minimum coordinate-axis width: the product of (x_i - c - j) over that axis
/// vanishes on P ∩ M, so the generic order never exceeds it.
inline unsigned default_jet_bound(const LatticePolytope& p) {
  auto [lo, hi] = p.bounding_box();
  Integer best = hi[0] - lo[0];
  for (std::size_t i = 1; i < p.dim(); ++i) best = std::min(best, Integer(hi[i] - lo[i]));
  return to_unsigned(best);
}

inline bool spans_generic_jets(const LatticePolytope& p, unsigned k) {
  const std::size_t monomials = binomial_count(p.dim() + k, k);
  if (monomials > p.lattice_points().size()) return false;
  return rank_exact(power_matrix(p.lattice_points(), p.dim(), k)) == monomials;
}

struct GenericJetOrder {
  unsigned order = 0;
  bool reached_bound = false;  // true means "at least `order`"
};

/// s(L, general point): the largest k <= k_max such that no nonzero
/// polynomial of degree <= k vanishes on P ∩ M.
inline GenericJetOrder generic_jet_order(const LatticePolytope& p, std::optional<unsigned> k_max = {}) {
  const unsigned bound = k_max.value_or(default_jet_bound(p));
  unsigned k = 0;
  while (k < bound && spans_generic_jets(p, k + 1)) ++k;
  return {k, k == bound && k_max.has_value() && spans_generic_jets(p, k + 1)};
}

struct Polynomial {
  std::vector<MultiIndex> monomials;
  std::vector<Integer> coefficients;

  Integer evaluate(const LatticeVector& x) const {
    Integer s = 0;
    for (std::size_t i = 0; i < monomials.size(); ++i) {
      if (coefficients[i] == 0) continue;
      Integer term = coefficients[i];
      for (std::size_t j = 0; j < x.dim(); ++j) term *= power(x[j], monomials[i].exponents[j]);
      s += term;
    }
    return s;
  }
};

/// A primitive nonzero polynomial of degree <= k vanishing on P ∩ M, with
/// positive leading coefficient in graded order, or nothing when none exists.
inline std::optional<Polynomial> vanishing_polynomial(const LatticePolytope& p, unsigned k) {
  auto kernel = kernel_basis(power_matrix(p.lattice_points(), p.dim(), k));
  if (kernel.empty()) return std::nullopt;
  Polynomial poly{multi_indices(p.dim(), k), kernel.front().coords()};
  for (std::size_t i = poly.coefficients.size(); i-- > 0;) {
    if (poly.coefficients[i] == 0) continue;
    if (poly.coefficients[i] < 0)
      for (auto& c : poly.coefficients) c = -c;
    break;
  }
  return poly;
}

struct JetReport {
  std::vector<unsigned> per_fixpoint;  // indexed by vertex
  GenericJetOrder generic;
  std::optional<unsigned> constant_k;
};

inline JetReport jet_report(const LatticePolytope& p, std::optional<unsigned> k_max = {}) {
  const auto smooth = is_smooth(p);
  if (!smooth) throw Error(ErrorKind::NotSmooth, "jet report needs a smooth polytope");
  JetReport report;
  for (std::size_t v = 0; v < p.vertices().size(); ++v)
    report.per_fixpoint.push_back(fixpoint_jet_order(p, v));
  report.generic = generic_jet_order(p, k_max);
  const unsigned g = report.generic.order;
  const bool agree = std::all_of(report.per_fixpoint.begin(), report.per_fixpoint.end(),
                                 [&](unsigned s) { return s == g; });
  if (agree && !report.generic.reached_bound) report.constant_k = g;
  return report;
}

/// Positive rationals with denominators <= 7, reproducible from `seed`.
inline std::vector<RationalVector> random_evaluation_points(std::size_t n, std::size_t count,
                                                            std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> num(1, 12), den(1, 7);
  std::vector<RationalVector> out;
  for (std::size_t t = 0; t < count; ++t) {
    RationalVector x;
    for (std::size_t i = 0; i < n; ++i) x.emplace_back(num(rng), den(rng));
    out.push_back(std::move(x));
  }
  return out;
}

}  // namespace cayleyjet

#endif  // CAYLEYJET_JETS_HPP
