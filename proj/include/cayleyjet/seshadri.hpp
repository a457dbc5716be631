#ifndef CAYLEYJET_SESHADRI_HPP
#define CAYLEYJET_SESHADRI_HPP

// Lattice width s2, the recursive projection invariant s1 (as a certified
// lower bound), Seshadri constants at fixpoints and the general point, and a
// checker for the five equivalent characterizations of constant order k.

#include <algorithm>
#include <array>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "cayleyjet/cayley.hpp"
#include "cayleyjet/hull.hpp"
#include "cayleyjet/jets.hpp"
#include "cayleyjet/lattice.hpp"
#include "cayleyjet/polytope.hpp"

namespace cayleyjet {

/// A primitive functional u together with a basis of ker u; with any preimage
/// of 1 the kernel basis gives a basis of the lattice.
struct LatticeProjection {
  LatticeVector functional;
  std::vector<LatticeVector> kernel_basis;
  IntegerMatrix coordinates;  // unimodular, first row = functional
};

inline LatticeProjection make_projection(const LatticeVector& u) {
  if (primitive(u).g != 1) throw Error(ErrorKind::InvalidParams, "functional is not primitive");
  const std::size_t n = u.dim();
  LatticeProjection pr{u, {}, complete_to_unimodular(matrix_from_rows({u}, n))};
  const auto inv = inverse_unimodular(pr.coordinates);
  for (std::size_t j = 1; j < n; ++j) {
    LatticeVector col(n);
    for (std::size_t i = 0; i < n; ++i) col[i] = inv(i, j);
    pr.kernel_basis.push_back(std::move(col));
  }
  return pr;
}

/// Primitive vectors with ||u||_inf <= bound and first nonzero entry positive,
/// in lexicographic order.
inline std::vector<LatticeVector> primitive_directions(std::size_t n, int bound) {
  std::vector<LatticeVector> out;
  LatticeVector u(n);
  std::function<void(std::size_t)> rec = [&](std::size_t i) {
    if (i == n) {
      if (primitive(u).g == 1 && sign_normalized(u) == u) out.push_back(u);
      return;
    }
    for (int c = -bound; c <= bound; ++c) {
      u[i] = c;
      rec(i + 1);
    }
  };
  if (n > 0 && bound > 0) rec(0);
  std::sort(out.begin(), out.end());
  return out;
}

inline Integer width_along(const LatticePolytope& p, const LatticeVector& u) {
  Integer lo = dot(p.vertices().front(), u), hi = lo;
  for (const auto& v : p.vertices()) {
    const auto x = dot(v, u);
    lo = std::min(lo, x);
    hi = std::max(hi, x);
  }
  return hi - lo;
}

struct WidthResult {
  Integer width;
  LatticeVector direction;
  int bound = 0;
  bool certified = false;  // no direction outside the box can be narrower
};

namespace detail {

inline std::optional<RationalMatrix> rational_inverse(const IntegerMatrix& m) {
  const std::size_t n = m.rows();
  RationalMatrix a(n, 2 * n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) a(i, j) = Rational(m(i, j));
    a(i, n + i) = 1;
  }
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t piv = c;
    while (piv < n && a(piv, c) == 0) ++piv;
    if (piv == n) return std::nullopt;
    a.swap_rows(piv, c);
    const Rational d = a(c, c);
    for (std::size_t j = 0; j < 2 * n; ++j) a(c, j) /= d;
    for (std::size_t i = 0; i < n; ++i) {
      if (i == c || a(i, c) == 0) continue;
      const Rational f = a(i, c);
      for (std::size_t j = 0; j < 2 * n; ++j) a(i, j) -= f * a(c, j);
    }
  }
  RationalMatrix inv(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) inv(i, j) = a(i, n + j);
  return inv;
}

/// Smallest max-row-sum norm of D^{-1} over simplices D of vertex
/// differences, scanning at most `limit` vertex subsets.
inline std::optional<Rational> best_inverse_norm(const LatticePolytope& p, std::size_t limit = 400) {
  const std::size_t n = p.dim(), nv = p.vertices().size();
  std::optional<Rational> best;
  std::size_t seen = 0;
  for_each_combination(nv, n + 1, [&](const std::vector<std::size_t>& idx) {
    if (seen++ >= limit) return;
    IntegerMatrix d(n, n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) d(i, j) = p.vertices()[idx[i + 1]][j] - p.vertices()[idx[0]][j];
    auto inv = rational_inverse(d);
    if (!inv) return;
    Rational norm = 0;
    for (std::size_t i = 0; i < n; ++i) {
      Rational row = 0;
      for (std::size_t j = 0; j < n; ++j) row += abs((*inv)(i, j));
      norm = std::max(norm, row);
    }
    if (!best || norm < *best) best = norm;
  });
  return best;
}

}  // namespace detail

/// Minimum width over the box of directions. For a simplex of vertex
/// differences D, width(u) >= ||D u||_inf >= ||u||_inf / ||D^-1||_inf, which
/// certifies the box minimum once (bound + 1) / ||D^-1|| reaches it.
inline WidthResult lattice_width(const LatticePolytope& p, int bound = 5) {
  if (bound <= 0) throw Error(ErrorKind::InvalidParams, "width bound must be positive");
  WidthResult res;
  res.bound = bound;
  bool first = true;
  for (const auto& u : primitive_directions(p.dim(), bound)) {
    auto w = width_along(p, u);
    if (first || w < res.width) {
      res.width = w;
      res.direction = u;
      first = false;
    }
  }
  if (auto norm = detail::best_inverse_norm(p)) res.certified = Rational(bound + 1) / *norm >= Rational(res.width);
  return res;
}

struct S1Step {
  LatticeVector direction;  // in the coordinates of the current fiber lattice
  Rational image_length;
  Rational level;
};

struct S1Result {
  Rational value;
  std::vector<S1Step> witness;
  int bound = 0;
  unsigned depth_levels = 0;
};

struct S1Options {
  int bound = 2;
  unsigned depth_levels = 2;       // samples per interval between critical levels
  std::optional<Rational> cap;     // stop once this value is reached
  std::vector<LatticeVector> priority;  // tried first at the top level, any norm
};

namespace detail {

using RPoint = Point<Rational>;

inline Rational rdot(const LatticeVector& u, const RPoint& x) {
  Rational s = 0;
  for (std::size_t i = 0; i < x.size(); ++i)
    if (u[i] != 0) s += Rational(u[i]) * x[i];
  return s;
}

/// Directions ordered by 1-norm, then lexicographically: coordinate
/// functionals come first, which is where good witnesses usually are.
inline const std::vector<LatticeVector>& s1_directions(std::size_t m, int bound) {
  thread_local std::map<std::pair<std::size_t, int>, std::vector<LatticeVector>> cache;
  auto& dirs = cache[{m, bound}];
  if (dirs.empty()) {
    dirs = primitive_directions(m, bound);
    std::stable_sort(dirs.begin(), dirs.end(), [](const LatticeVector& a, const LatticeVector& b) {
      Integer na = 0, nb = 0;
      for (const auto& c : a.coords()) na += abs_value(c);
      for (const auto& c : b.coords()) nb += abs_value(c);
      return na < nb;
    });
  }
  return dirs;
}

inline const IntegerMatrix& s1_coordinates(const LatticeVector& u) {
  thread_local std::map<LatticeVector, IntegerMatrix> cache;
  auto it = cache.find(u);
  if (it == cache.end()) it = cache.emplace(u, complete_to_unimodular(matrix_from_rows({u}, u.dim()))).first;
  return it->second;
}

/// Best value found by the enumeration, never above `cap`. Directions whose
/// image is no longer than `floor` cannot improve on the caller's value and
/// are skipped.
inline Rational s1_search(const std::vector<RPoint>& verts, std::size_t m, Rational floor, const Rational& cap,
                          const S1Options& opt, std::vector<S1Step>& witness,
                          const std::vector<LatticeVector>& first = {}) {
  if (m == 1) {
    Rational lo = verts.front()[0], hi = lo;
    for (const auto& v : verts) {
      lo = std::min(lo, v[0]);
      hi = std::max(hi, v[0]);
    }
    witness.clear();
    return hi - lo;
  }
  Rational best = 0;
  std::vector<LatticeVector> order;
  for (const auto& u : first) {
    if (u.dim() != m || u.is_zero()) continue;
    const auto g = sign_normalized(primitive(u).p);
    if (std::find(order.begin(), order.end(), g) == order.end()) order.push_back(g);
  }
  for (const auto& u : s1_directions(m, opt.bound))
    if (std::find(order.begin(), order.end(), u) == order.end()) order.push_back(u);
  for (const auto& u : order) {
    std::vector<Rational> vals;
    for (const auto& v : verts) vals.push_back(rdot(u, v));
    std::vector<Rational> crit(vals);
    std::sort(crit.begin(), crit.end());
    crit.erase(std::unique(crit.begin(), crit.end()), crit.end());
    const Rational w = crit.back() - crit.front();
    if (w <= std::max(floor, best)) continue;
    const Rational target = std::min(w, cap);

    std::vector<Rational> levels;
    for (std::size_t i = 0; i < crit.size(); ++i) {
      levels.push_back(crit[i]);
      if (i + 1 < crit.size())
        for (unsigned j = 1; j < opt.depth_levels; ++j)
          levels.push_back(crit[i] + (crit[i + 1] - crit[i]) * Rational(j, opt.depth_levels));
    }
    const auto& coords = s1_coordinates(u);

    Rational inner = 0;
    std::vector<S1Step> inner_witness;
    Rational inner_level = 0;
    for (const auto& t : levels) {
      std::vector<RPoint> fiber;
      auto push = [&](const RPoint& x) {
        RPoint y(m - 1);
        for (std::size_t i = 1; i < m; ++i) y[i - 1] = rdot(row_vector(coords, i), x);
        fiber.push_back(std::move(y));
      };
      for (std::size_t a = 0; a < verts.size(); ++a) {
        if (vals[a] == t) push(verts[a]);
        if (vals[a] >= t) continue;
        for (std::size_t b = 0; b < verts.size(); ++b) {
          if (vals[b] <= t) continue;
          const Rational lam = (t - vals[a]) / (vals[b] - vals[a]);
          RPoint x(m);
          for (std::size_t i = 0; i < m; ++i) x[i] = verts[a][i] + lam * (verts[b][i] - verts[a][i]);
          push(x);
        }
      }
      std::sort(fiber.begin(), fiber.end());
      fiber.erase(std::unique(fiber.begin(), fiber.end()), fiber.end());
      if (affine_dimension(fiber) != m - 1) continue;
      // Widths along short directions bound s1 of the fiber from above.
      Rational cheap = -1;
      for (const auto& d : s1_directions(m - 1, 1)) {
        Rational lo = rdot(d, fiber.front()), hi = lo;
        for (const auto& y : fiber) {
          const auto x = rdot(d, y);
          lo = std::min(lo, x);
          hi = std::max(hi, x);
        }
        if (cheap < 0 || hi - lo < cheap) cheap = hi - lo;
      }
      const Rational need = std::max({floor, best, inner});
      if (cheap <= need) continue;
      if (m - 1 >= 2) {
        auto hull = convex_hull(fiber, m - 1);
        std::vector<RPoint> vs;
        for (auto i : hull.vertices) vs.push_back(hull.points[i]);
        fiber = std::move(vs);
      }
      std::vector<S1Step> w_inner;
      const Rational got = s1_search(fiber, m - 1, need, target, opt, w_inner);
      if (got > inner) {
        inner = got;
        inner_witness = std::move(w_inner);
        inner_level = t;
      }
      if (inner >= target) break;
    }
    const Rational value = std::min(w, inner);
    if (value > best) {
      best = std::min(value, cap);
      witness.clear();
      witness.push_back({u, w, inner_level});
      witness.insert(witness.end(), inner_witness.begin(), inner_witness.end());
    }
    if (best >= cap) break;
  }
  return best;
}

}  // namespace detail

/// Lower bound for s1 by enumerating projections with ||u|| <= bound at
/// every rank and evaluating fibers at the critical levels and between them.
inline S1Result s1(const LatticePolytope& p, const S1Options& opt = {}) {
  if (opt.bound <= 0 || opt.depth_levels == 0) throw Error(ErrorKind::InvalidParams, "s1 search parameters must be positive");
  std::vector<detail::RPoint> verts;
  for (const auto& v : p.vertices()) verts.push_back(to_rational(v));
  // s1 never exceeds any single image length, so the smallest coordinate
  // width is a safe cap when none is given.
  Rational cap = opt.cap.value_or(Rational(default_jet_bound(p)));
  S1Result res;
  res.bound = opt.bound;
  res.depth_levels = opt.depth_levels;
  res.value = detail::s1_search(verts, p.dim(), 0, cap, opt, res.witness, opt.priority);
  return res;
}

/// Seshadri constant at the fixpoint of vertex v: the jet order there.
inline unsigned epsilon_fixpoint(const LatticePolytope& p, std::size_t v) {
  if (v >= p.vertices().size() || !is_smooth_at(p, v))
    throw Error(ErrorKind::NotSmooth, "Seshadri constant at a fixpoint needs smoothness there");
  return fixpoint_jet_order(p, v);
}

struct GenericEpsilon {
  Rational lower;
  Rational upper;
  std::optional<Rational> exact;
  S1Result s1;
  WidthResult s2;
};

struct SeshadriOptions {
  int width_bound = 5;
  S1Options s1;
};

inline GenericEpsilon epsilon_generic(const LatticePolytope& p, const SeshadriOptions& opt = {}) {
  GenericEpsilon g;
  g.s2 = lattice_width(p, opt.width_bound);
  S1Options s1opt = opt.s1;
  if (!s1opt.cap || *s1opt.cap > Rational(g.s2.width)) s1opt.cap = Rational(g.s2.width);
  // A narrowest direction often realizes s1 as well, so it goes first.
  s1opt.priority.insert(s1opt.priority.begin(), g.s2.direction);
  g.s1 = s1(p, s1opt);
  g.lower = g.s1.value;
  g.upper = Rational(g.s2.width);
  if (g.lower == g.upper) g.exact = g.lower;
  return g;
}

struct SeshadriReport {
  std::vector<unsigned> per_fixpoint_epsilon;
  GenericEpsilon generic;
};

inline SeshadriReport seshadri_report(const LatticePolytope& p, const SeshadriOptions& opt = {}) {
  if (!is_smooth(p)) throw Error(ErrorKind::NotSmooth, "Seshadri report needs a smooth polytope");
  SeshadriReport r;
  for (std::size_t v = 0; v < p.vertices().size(); ++v) r.per_fixpoint_epsilon.push_back(epsilon_fixpoint(p, v));
  r.generic = epsilon_generic(p, opt);
  return r;
}

struct Condition {
  std::optional<bool> value;  // empty when undecided
  std::string witness;
};

struct EquivalenceVerdict {
  unsigned k = 0;
  std::array<Condition, 5> conditions;
  bool consistent = true;
  std::vector<std::string> notes;

  bool violation() const { return !consistent; }
};

struct VerifyOptions {
  SeshadriOptions seshadri;
  CayleyOptions cayley;
  std::optional<unsigned> max_k;
};

/// Evaluates the five characterizations of "order k everywhere":
/// (1) jet order k at every point, (2) jet order k at the fixpoints and the
/// general point, (3) Seshadri constant k everywhere, (4) Seshadri constant k
/// at the fixpoints and the general point, (5) Cayley of order k with every
/// edge of length >= k. (3) is not computable pointwise; it is reported as
/// (4) together with (1), which is how it follows from the jet argument.
namespace detail {

inline EquivalenceVerdict verify_with(const LatticePolytope& p, unsigned k, const VerifyOptions& opt,
                                      const JetReport& jets, const SeshadriReport& eps) {
  EquivalenceVerdict out;
  out.k = k;

  std::string orders;
  for (auto s : jets.per_fixpoint) orders += (orders.empty() ? "" : ",") + std::to_string(s);
  const std::string generic_text = (jets.generic.reached_bound ? ">=" : "") + std::to_string(jets.generic.order);
  const std::string jet_witness = "fixpoint orders [" + orders + "], generic " + generic_text;

  const bool fix_all_k = std::all_of(jets.per_fixpoint.begin(), jets.per_fixpoint.end(),
                                     [&](unsigned s) { return s == k; });
  std::optional<bool> generic_is_k;
  if (!jets.generic.reached_bound) generic_is_k = jets.generic.order == k;
  else if (jets.generic.order > k) generic_is_k = false;
  if (!generic_is_k) out.notes.push_back("generic jet order reached the search cap");

  out.conditions[0] = {jets.constant_k ? std::optional<bool>(*jets.constant_k == k)
                                       : (fix_all_k && !generic_is_k ? std::optional<bool>() : false),
                       jet_witness};
  out.conditions[1] = {!fix_all_k ? std::optional<bool>(false)
                                  : generic_is_k,
                       jet_witness};

  const auto& g = eps.generic;
  const bool eps_fix_k = std::all_of(eps.per_fixpoint_epsilon.begin(), eps.per_fixpoint_epsilon.end(),
                                     [&](unsigned e) { return e == k; });
  std::optional<bool> eps_generic_k;
  if (g.exact) eps_generic_k = *g.exact == Rational(k);
  else if (Rational(k) < g.lower || Rational(k) > g.upper) eps_generic_k = false;
  std::optional<bool> cond4;
  if (!eps_fix_k) cond4 = false;
  else cond4 = eps_generic_k;
  const std::string eps_witness = "generic epsilon in [" + to_string(g.lower) + ", " + to_string(g.upper) + "]";
  out.conditions[3] = {cond4, eps_witness};
  if (!cond4)
    out.notes.push_back("generic Seshadri constant not pinned down: s1 lower bound " + to_string(g.lower) +
                        " < s2 = " + to_string(g.upper));

  std::optional<bool> cond3;
  const auto& c1 = out.conditions[0].value;
  if ((cond4 && !*cond4) || (c1 && !*c1)) cond3 = false;
  else if (cond4 && c1) cond3 = true;
  out.conditions[2] = {cond3, "conjunction of (4) and (1)"};

  const auto d = detect_cayley(p, k, opt.cayley);
  const auto shortest = min_edge_length(p);
  std::string cay_witness = d ? "witness " + to_string(row_vector(d->projection, 0)) : "no witness";
  cay_witness += ", shortest edge " + to_string(shortest);
  out.conditions[4] = {d.has_value() && shortest >= k, cay_witness};

  std::optional<bool> seen;
  for (const auto& c : out.conditions) {
    if (!c.value) continue;
    if (seen && *seen != *c.value) out.consistent = false;
    seen = c.value;
  }
  if (!out.consistent) out.notes.push_back("VIOLATION: decided conditions disagree");
  return out;
}

}  // namespace detail

inline EquivalenceVerdict verify_corollary(const LatticePolytope& p, unsigned k, const VerifyOptions& opt = {}) {
  if (!is_smooth(p)) throw Error(ErrorKind::NotSmooth, "verification needs a smooth polytope");
  return detail::verify_with(p, k, opt, jet_report(p, opt.max_k), seshadri_report(p, opt.seshadri));
}

/// Same as calling verify_corollary for each order, sharing the jet and
/// Seshadri computations.
inline std::vector<EquivalenceVerdict> verify_corollary(const LatticePolytope& p, const std::vector<unsigned>& orders,
                                                        const VerifyOptions& opt = {}) {
  if (!is_smooth(p)) throw Error(ErrorKind::NotSmooth, "verification needs a smooth polytope");
  std::vector<EquivalenceVerdict> out;
  if (orders.empty()) return out;
  const auto jets = jet_report(p, opt.max_k);
  const auto eps = seshadri_report(p, opt.seshadri);
  for (auto k : orders) out.push_back(detail::verify_with(p, k, opt, jets, eps));
  return out;
}

}  // namespace cayleyjet

#endif  // CAYLEYJET_SESHADRI_HPP
