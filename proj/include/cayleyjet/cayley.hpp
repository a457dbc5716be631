#ifndef CAYLEYJET_CAYLEY_HPP
#define CAYLEYJET_CAYLEY_HPP

// Cayley structure [P_0 * ... * P_r]^s: a surjection onto Z^r taking P onto a
// translate of s·Δ_r with every vertex landing on a vertex of s·Δ_r.

#include <algorithm>
#include <functional>
#include <optional>
#include <set>
#include <vector>

#include "cayleyjet/lattice.hpp"
#include "cayleyjet/polytope.hpp"

namespace cayleyjet {

enum class StrictMode {
  EqualDim,  // slices of different dimension are never strict
  Project,   // point slices are ignored; the remaining ones must agree
};

inline std::string_view to_string(StrictMode m) { return m == StrictMode::EqualDim ? "equal-dim" : "project"; }

struct CayleyOptions {
  int box_bound = 3;
  StrictMode strict_mode = StrictMode::EqualDim;
};

/// Slice vertices in fiber coordinates; the slice may be lower-dimensional.
struct CayleySlice {
  std::vector<LatticeVector> vertices;
  std::size_t affine_dim = 0;
};

struct CayleyDecomposition {
  unsigned order = 0;
  std::size_t length = 0;          // r + 1
  IntegerMatrix projection;        // r x n, onto Z^r
  LatticeVector translation;       // projection(P) = translation + s·Δ_r
  std::vector<std::size_t> level_map;  // vertex -> 0..r (i > 0 means s·e_i)
  IntegerMatrix fiber_map;         // (n - r) x n, completes projection to a basis
  std::vector<CayleySlice> slices;
  bool strict = false;
  bool dimension_mismatch = false;
  int search_bound = 0;
};

namespace detail {

inline std::size_t affine_dim(const std::vector<LatticeVector>& pts) {
  if (pts.size() < 2) return 0;
  std::vector<LatticeVector> diffs;
  for (std::size_t i = 1; i < pts.size(); ++i) diffs.push_back(pts[i] - pts[0]);
  return rank_exact(matrix_from_rows(diffs, pts[0].dim()));
}

inline void add_direction(std::set<LatticeVector>& out, const LatticeVector& u) {
  auto [g, p] = primitive(u);
  if (g != 0) out.insert(sign_normalized(p));
}

/// Combinatorial normal-fan data of a point set: the primitive facet normals
/// inside its own affine span and, for each vertex, the set of normals tight
/// there. Coordinates are the pivot coordinates of the span, which identify
/// the span linearly with Q^d; the same identification is used for every
/// slice being compared, so fan equality is preserved.
struct FanData {
  std::set<LatticeVector> normals;
  std::set<std::set<LatticeVector>> incidence;
  friend bool operator==(const FanData&, const FanData&) = default;
};

inline FanData fan_data(const std::vector<LatticeVector>& pts, const std::vector<std::size_t>& coords) {
  FanData fd;
  if (coords.empty()) return fd;
  std::vector<LatticeVector> local;
  for (const auto& x : pts) {
    LatticeVector y(coords.size());
    for (std::size_t i = 0; i < coords.size(); ++i) y[i] = x[coords[i]] - pts[0][coords[i]];
    local.push_back(std::move(y));
  }
  auto q = LatticePolytope::hull_of(local);
  for (const auto& f : q.facets()) fd.normals.insert(f.normal);
  for (std::size_t v = 0; v < q.vertices().size(); ++v) {
    std::set<LatticeVector> tight;
    for (const auto& f : q.facets())
      if (std::find(f.vertices.begin(), f.vertices.end(), v) != f.vertices.end()) tight.insert(f.normal);
    fd.incidence.insert(std::move(tight));
  }
  return fd;
}

/// Normal equivalence of point sets living in one lattice. Sets with
/// different direction spaces are never equivalent.
inline bool normally_equivalent(const std::vector<std::vector<LatticeVector>>& sets) {
  if (sets.size() < 2) return true;
  const std::size_t m = sets.front().front().dim();
  std::vector<LatticeVector> all_diffs;
  std::size_t d = 0;
  for (std::size_t i = 0; i < sets.size(); ++i) {
    const auto di = affine_dim(sets[i]);
    if (i == 0) d = di;
    if (di != d) return false;
    for (std::size_t j = 1; j < sets[i].size(); ++j) all_diffs.push_back(sets[i][j] - sets[i][0]);
  }
  if (d == 0) return true;
  const auto joint = matrix_from_rows(all_diffs, m);
  if (rank_exact(joint) != d) return false;
  const auto coords = reduce_fraction_free(joint).pivot_columns;
  const auto first = fan_data(sets.front(), coords);
  for (std::size_t i = 1; i < sets.size(); ++i)
    if (!(fan_data(sets[i], coords) == first)) return false;
  return true;
}

inline bool surjective(const IntegerMatrix& rows) {
  try {
    surjection_right_inverse_basis(rows);
    return true;
  } catch (const Error&) {
    return false;
  }
}

}  // namespace detail

/// Facet normals, their pairwise sums and differences, normals to every
/// spanning (n-1)-set of edge directions, and the box ||u|| <= bound. All
/// primitive with first nonzero entry positive, sorted.
///
/// A length-two witness annihilates every edge inside both slices, and those
/// edges span its orthogonal complement, so the edge-direction normals alone
/// already contain every witness; the rest only helps lattice-width search.
inline std::vector<LatticeVector> candidate_directions(const LatticePolytope& p, int box_bound) {
  const std::size_t n = p.dim();
  std::set<LatticeVector> out;
  const auto& fs = p.facets();
  for (std::size_t i = 0; i < fs.size(); ++i) {
    detail::add_direction(out, fs[i].normal);
    for (std::size_t j = i + 1; j < fs.size(); ++j) {
      detail::add_direction(out, fs[i].normal + fs[j].normal);
      detail::add_direction(out, fs[i].normal - fs[j].normal);
    }
  }

  std::set<LatticeVector> dirs;
  for (const auto& e : p.edges()) dirs.insert(sign_normalized(e.direction));
  const std::vector<LatticeVector> dv(dirs.begin(), dirs.end());
  if (n == 1) out.insert(LatticeVector::unit(1, 0));
  std::vector<LatticeVector> chosen;
  std::function<void(std::size_t)> rec = [&](std::size_t start) {
    if (chosen.size() + 1 == n) {
      auto ker = kernel_basis(matrix_from_rows(chosen, n));
      if (ker.size() == 1) detail::add_direction(out, ker.front());
      return;
    }
    for (std::size_t i = start; i < dv.size(); ++i) {
      chosen.push_back(dv[i]);
      // Prune dependent prefixes early.
      if (rank_exact(matrix_from_rows(chosen, n)) == chosen.size()) rec(i + 1);
      chosen.pop_back();
    }
  };
  if (n >= 2) rec(0);

  if (box_bound > 0) {
    LatticeVector u(n);
    std::function<void(std::size_t)> box = [&](std::size_t i) {
      if (i == n) {
        detail::add_direction(out, u);
        return;
      }
      for (int c = -box_bound; c <= box_bound; ++c) {
        u[i] = c;
        box(i + 1);
      }
    };
    box(0);
  }
  return {out.begin(), out.end()};
}

/// A functional with exactly two values on the vertices, `low` and low + s.
struct CayleyWitness {
  LatticeVector direction;
  Integer low;
  std::vector<bool> top;  // per vertex: at low + s
};

/// Length-two witnesses among the candidates, in candidate order.
inline std::vector<CayleyWitness> cayley_witnesses(const LatticePolytope& p, unsigned s,
                                                   const CayleyOptions& opt = {}) {
  std::vector<CayleyWitness> out;
  if (s == 0) return out;
  for (const auto& u : candidate_directions(p, opt.box_bound)) {
    std::vector<Integer> vals;
    for (const auto& v : p.vertices()) vals.push_back(dot(v, u));
    const auto [lo, hi] = std::minmax_element(vals.begin(), vals.end());
    if (*hi - *lo != s) continue;
    if (!std::all_of(vals.begin(), vals.end(), [&](const Integer& x) { return x == *lo || x == *hi; }))
      continue;
    CayleyWitness w{u, *lo, {}};
    for (const auto& x : vals) w.top.push_back(x == *hi);
    out.push_back(std::move(w));
  }
  return out;
}

namespace detail {

inline std::pair<bool, bool> strictness(const std::vector<CayleySlice>& slices, std::size_t fiber_rank,
                                        StrictMode mode) {
  if (fiber_rank == 0) return {true, false};
  bool all_full = std::all_of(slices.begin(), slices.end(),
                              [&](const CayleySlice& s) { return s.affine_dim == fiber_rank; });
  std::vector<std::vector<LatticeVector>> sets;
  if (all_full) {
    for (const auto& s : slices) sets.push_back(s.vertices);
    return {normally_equivalent(sets), false};
  }
  if (mode == StrictMode::EqualDim) return {false, true};
  for (const auto& s : slices)
    if (s.affine_dim > 0) sets.push_back(s.vertices);
  return {normally_equivalent(sets), true};
}

inline CayleyDecomposition assemble(const LatticePolytope& p, unsigned s, const std::vector<LatticeVector>& rows,
                                    const LatticeVector& translation, std::vector<std::size_t> level_map,
                                    const CayleyOptions& opt) {
  const std::size_t n = p.dim(), r = rows.size();
  CayleyDecomposition d;
  d.order = s;
  d.length = r + 1;
  d.projection = matrix_from_rows(rows, n);
  d.translation = translation;
  d.level_map = std::move(level_map);
  d.search_bound = opt.box_bound;
  const auto full = complete_to_unimodular(d.projection);
  d.fiber_map = IntegerMatrix(n - r, n);
  for (std::size_t i = r; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) d.fiber_map(i - r, j) = full(i, j);
  d.slices.resize(r + 1);
  for (std::size_t v = 0; v < p.vertices().size(); ++v)
    d.slices[d.level_map[v]].vertices.push_back(multiply(d.fiber_map, p.vertices()[v]));
  for (auto& sl : d.slices) {
    std::sort(sl.vertices.begin(), sl.vertices.end());
    sl.affine_dim = affine_dim(sl.vertices);
  }
  std::tie(d.strict, d.dimension_mismatch) = strictness(d.slices, n - r, opt.strict_mode);
  return d;
}

}  // namespace detail

/// Length-two detection; the witness with the lexicographically smallest
/// normalized direction wins. Level 0 is the minimum of the functional.
inline std::optional<CayleyDecomposition> detect_cayley(const LatticePolytope& p, unsigned s,
                                                        const CayleyOptions& opt = {}) {
  auto ws = cayley_witnesses(p, s, opt);
  if (ws.empty()) return std::nullopt;
  const auto& w = ws.front();
  std::vector<std::size_t> levels;
  for (bool t : w.top) levels.push_back(t ? 1 : 0);
  return detail::assemble(p, s, {w.direction}, LatticeVector{std::vector<Integer>{w.low}}, std::move(levels),
                          opt);
}

/// Calls f on every decomposition of length r + 1 and order s until f
/// returns true. Tuples are visited in lexicographic order of oriented
/// witnesses, so the first one is the canonical answer.
inline void for_each_cayley(const LatticePolytope& p, unsigned s, std::size_t r, const CayleyOptions& opt,
                            const std::function<bool(const CayleyDecomposition&)>& f) {
  if (r == 0 || r > p.dim() || s == 0) return;
  std::vector<CayleyWitness> oriented;
  for (const auto& w : cayley_witnesses(p, s, opt)) {
    oriented.push_back(w);
    CayleyWitness flipped{-w.direction, -(w.low + s), {}};
    for (bool t : w.top) flipped.top.push_back(!t);
    oriented.push_back(std::move(flipped));
  }
  if (r == 1) {
    // Both orientations describe the same decomposition; keep the normalized one.
    for (std::size_t i = 0; i < oriented.size(); i += 2) {
      std::vector<std::size_t> levels;
      for (bool t : oriented[i].top) levels.push_back(t ? 1 : 0);
      if (f(detail::assemble(p, s, {oriented[i].direction}, LatticeVector{std::vector<Integer>{oriented[i].low}},
                             std::move(levels), opt)))
        return;
    }
    return;
  }
  std::sort(oriented.begin(), oriented.end(),
            [](const CayleyWitness& a, const CayleyWitness& b) { return a.direction < b.direction; });

  const std::size_t nv = p.vertices().size();
  std::vector<std::size_t> pick;
  std::vector<int> owner(nv, -1);
  bool stop = false;
  std::function<void(std::size_t)> rec = [&](std::size_t start) {
    if (stop) return;
    if (pick.size() == r) {
      if (std::none_of(owner.begin(), owner.end(), [](int o) { return o < 0; })) return;
      std::vector<LatticeVector> rows;
      LatticeVector shift(r);
      for (std::size_t j = 0; j < r; ++j) {
        rows.push_back(oriented[pick[j]].direction);
        shift[j] = oriented[pick[j]].low;
      }
      if (!detail::surjective(matrix_from_rows(rows, p.dim()))) return;
      std::vector<std::size_t> levels(nv);
      for (std::size_t v = 0; v < nv; ++v) levels[v] = owner[v] < 0 ? 0 : std::size_t(owner[v]) + 1;
      stop = f(detail::assemble(p, s, rows, shift, std::move(levels), opt));
      return;
    }
    for (std::size_t i = start; i < oriented.size() && !stop; ++i) {
      const auto& w = oriented[i];
      bool disjoint = true, any = false;
      for (std::size_t v = 0; v < nv; ++v)
        if (w.top[v]) {
          any = true;
          if (owner[v] >= 0) disjoint = false;
        }
      if (!disjoint || !any) continue;
      for (std::size_t v = 0; v < nv; ++v)
        if (w.top[v]) owner[v] = int(pick.size());
      pick.push_back(i);
      rec(i + 1);
      pick.pop_back();
      for (std::size_t v = 0; v < nv; ++v)
        if (w.top[v]) owner[v] = -1;
    }
  };
  rec(0);
}

/// Decomposition of length r + 1, for 1 <= r <= dim P.
inline std::optional<CayleyDecomposition> detect_cayley_general(const LatticePolytope& p, unsigned s,
                                                                std::size_t r, const CayleyOptions& opt = {}) {
  if (r == 0 || r > p.dim()) throw Error(ErrorKind::InvalidParams, "length must satisfy 1 <= r <= dim");
  std::optional<CayleyDecomposition> found;
  for_each_cayley(p, s, r, opt, [&](const CayleyDecomposition& d) {
    found = d;
    return true;
  });
  return found;
}

struct StrictVerdict {
  bool strict = false;
  bool dimension_mismatch = false;
};

inline StrictVerdict is_strict(const CayleyDecomposition& d, StrictMode mode = StrictMode::EqualDim) {
  auto [strict, mismatch] = detail::strictness(d.slices, d.fiber_map.rows(), mode);
  return {strict, mismatch};
}

/// A strict decomposition of order s, preferring the longest one.
inline std::optional<CayleyDecomposition> find_strict_decomposition(const LatticePolytope& p, unsigned s,
                                                                    const CayleyOptions& opt = {}) {
  std::optional<CayleyDecomposition> found;
  for (std::size_t r = p.dim(); r >= 1 && !found; --r)
    for_each_cayley(p, s, r, opt, [&](const CayleyDecomposition& d) {
      if (d.strict) found = d;
      return d.strict;
    });
  return found;
}

/// conv(P_0 x 0, P_1 x s e_1, ..., P_r x s e_r) in Z^m x Z^r. Slices are point
/// sets in a common Z^m (m may be 0); the result must be full-dimensional.
inline LatticePolytope construct_cayley(const std::vector<std::vector<LatticeVector>>& slices, unsigned s) {
  if (slices.size() < 2) throw Error(ErrorKind::InvalidParams, "need at least two slices");
  if (s == 0) throw Error(ErrorKind::InvalidParams, "order must be positive");
  const std::size_t r = slices.size() - 1;
  std::optional<std::size_t> m;
  std::vector<LatticeVector> pts;
  for (std::size_t i = 0; i < slices.size(); ++i) {
    if (slices[i].empty()) throw Error(ErrorKind::InvalidParams, "empty slice");
    for (const auto& x : slices[i]) {
      if (!m) m = x.dim();
      if (x.dim() != *m) throw Error(ErrorKind::InvalidParams, "slices live in different lattices");
      std::vector<Integer> c = x.coords();
      c.resize(*m + r, 0);
      if (i > 0) c[*m + i - 1] = s;
      pts.emplace_back(std::move(c));
    }
  }
  return LatticePolytope::hull_of(std::move(pts));
}

inline LatticePolytope construct_cayley(const std::vector<LatticePolytope>& slices, unsigned s) {
  std::vector<std::vector<LatticeVector>> sets;
  for (const auto& q : slices) sets.push_back(q.vertices());
  return construct_cayley(sets, s);
}

}  // namespace cayleyjet

#endif  // CAYLEYJET_CAYLEY_HPP
