#ifndef CAYLEYJET_CORPUS_HPP
#define CAYLEYJET_CORPUS_HPP

// Deterministic polytope generators and the standard test corpus.

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "cayleyjet/cayley.hpp"
#include "cayleyjet/polytope.hpp"

namespace cayleyjet {

namespace gen {

/// k·Δ_n
inline LatticePolytope simplex(std::size_t n, long long k) {
  if (n == 0 || k <= 0) throw Error(ErrorKind::InvalidParams, "simplex needs n >= 1 and k >= 1");
  std::vector<LatticeVector> vs{LatticeVector(n)};
  for (std::size_t i = 0; i < n; ++i) vs.push_back(Integer(k) * LatticeVector::unit(n, i));
  return LatticePolytope::from_vertices(vs);
}

/// [0, a_1] x ... x [0, a_n]
inline LatticePolytope box(const std::vector<long long>& sides) {
  if (sides.empty()) throw Error(ErrorKind::InvalidParams, "box needs at least one side");
  for (auto s : sides)
    if (s <= 0) throw Error(ErrorKind::InvalidParams, "box sides must be positive");
  const std::size_t n = sides.size();
  std::vector<LatticeVector> vs;
  for (std::size_t mask = 0; mask < (std::size_t(1) << n); ++mask) {
    LatticeVector v(n);
    for (std::size_t i = 0; i < n; ++i)
      if (mask >> i & 1) v[i] = sides[i];
    vs.push_back(std::move(v));
  }
  return LatticePolytope::from_vertices(vs);
}

/// conv{ c_i^+ e_i, -c_i^- e_i }
inline LatticePolytope cross(const std::vector<long long>& plus, const std::vector<long long>& minus) {
  if (plus.empty() || plus.size() != minus.size())
    throw Error(ErrorKind::InvalidParams, "cross needs matching positive extents");
  const std::size_t n = plus.size();
  std::vector<LatticeVector> vs;
  for (std::size_t i = 0; i < n; ++i) {
    if (plus[i] <= 0 || minus[i] <= 0) throw Error(ErrorKind::InvalidParams, "cross extents must be positive");
    vs.push_back(Integer(plus[i]) * LatticeVector::unit(n, i));
    vs.push_back(Integer(-minus[i]) * LatticeVector::unit(n, i));
  }
  return LatticePolytope::from_vertices(vs);
}

/// The hexagon of the degree 6 del Pezzo surface.
inline LatticePolytope delpezzo6() {
  return LatticePolytope::from_vertices({{0, 0}, {1, 0}, {2, 1}, {2, 2}, {1, 2}, {0, 1}});
}

/// Trapezoid conv{(0,0), (a + r b, 0), (0, b), (a, b)}; smooth for a >= 1.
inline LatticePolytope hirzebruch(long long a, long long b, long long r) {
  if (a <= 0 || b <= 0 || r < 0) throw Error(ErrorKind::InvalidParams, "hirzebruch needs a, b >= 1 and r >= 0");
  return LatticePolytope::from_vertices({{0, 0}, {a + r * b, 0}, {0, b}, {a, b}});
}

/// k·Δ_n with the corner at the origin cut off at depth c (0 < c < k).
inline LatticePolytope chopped_simplex(std::size_t n, long long k, long long c) {
  if (c <= 0 || c >= k) throw Error(ErrorKind::InvalidParams, "chopped simplex needs 0 < c < k");
  LatticeVector ones(n);
  for (std::size_t i = 0; i < n; ++i) ones[i] = 1;
  return chop(simplex(n, k), ones, c);
}

/// [0, k]^n with the corner at the origin cut off at depth c (0 < c < k).
inline LatticePolytope chopped_cube(std::size_t n, long long k, long long c) {
  if (c <= 0 || c >= k) throw Error(ErrorKind::InvalidParams, "chopped cube needs 0 < c < k");
  LatticeVector ones(n);
  for (std::size_t i = 0; i < n; ++i) ones[i] = 1;
  return chop(box(std::vector<long long>(n, k)), ones, c);
}

/// Random unimodular matrix from elementary row operations.
inline IntegerMatrix random_unimodular(std::size_t n, std::mt19937_64& rng, int steps = 6) {
  IntegerMatrix u = IntegerMatrix::identity(n);
  if (n < 2) return u;
  std::uniform_int_distribution<std::size_t> idx(0, n - 1);
  std::uniform_int_distribution<int> coef(-1, 1);
  for (int s = 0; s < steps; ++s) {
    const std::size_t i = idx(rng), j = idx(rng);
    if (i == j) continue;
    const int c = coef(rng);
    for (std::size_t k = 0; k < n; ++k) u(i, k) += c * u(j, k);
  }
  return u;
}

/// Image of p under a random unimodular affine map drawn from `seed`.
inline LatticePolytope unimodular_image(const LatticePolytope& p, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  auto u = random_unimodular(p.dim(), rng);
  std::uniform_int_distribution<int> shift(-3, 3);
  LatticeVector t(p.dim());
  for (std::size_t i = 0; i < p.dim(); ++i) t[i] = shift(rng);
  return transform(p, u, t);
}

}  // namespace gen

struct CorpusEntry {
  std::string name;
  LatticePolytope polytope;
  std::string family;  // "simplex", "cayley", "box", ...
};

namespace detail {

inline std::vector<LatticeVector> scaled_translated(const LatticePolytope& q, long long a, const LatticeVector& t) {
  std::vector<LatticeVector> out;
  for (const auto& v : q.vertices()) out.push_back(Integer(a) * v + t);
  return out;
}

}  // namespace detail

/// Smooth Cayley polytopes [a Q * (b Q + t)]^k with every edge of length at
/// least k. The lateral edge from a q to b q + t has direction
/// ((b - a) q + t, k), which is k times a primitive vector exactly when k
/// divides (b - a) q + t; choosing b ≡ a and t ≡ 0 mod k keeps P smooth.
inline std::vector<CorpusEntry> cayley_family(std::uint64_t seed, std::size_t count = 54) {
  std::vector<std::pair<std::string, LatticePolytope>> bases{
      {"segment", gen::box({1})},
      {"square", gen::box({1, 1})},
      {"rect12", gen::box({1, 2})},
      {"triangle", gen::simplex(2, 1)},
      {"hexagon", gen::delpezzo6()},
      {"hirzebruch1", gen::hirzebruch(1, 1, 1)},
      {"cube", gen::box({1, 1, 1})},
      {"tetra", gen::simplex(3, 1)},
  };
  std::mt19937_64 rng(seed);
  std::vector<CorpusEntry> out;
  std::size_t attempt = 0;
  while (out.size() < count && attempt < 50 * count) {
    ++attempt;
    const auto& [bname, q] = bases[rng() % bases.size()];
    const long long k = 1 + static_cast<long long>(rng() % 3);
    // Keep slice coordinates <= 6.
    Integer extent = 0;
    for (const auto& v : q.vertices()) extent = std::max(extent, v.max_abs());
    const long long cap = 6 / extent.convert_to<long long>();
    if (cap < k) continue;
    const long long a = k + static_cast<long long>(rng() % std::uint64_t(cap - k + 1));
    const long long jmax = (cap - a) / k;
    const long long b = a + k * static_cast<long long>(rng() % std::uint64_t(jmax + 1));
    LatticeVector t(q.dim());
    for (std::size_t i = 0; i < q.dim(); ++i) {
      Integer room = (6 - b * extent) / k;
      t[i] = room > 0 ? Integer(k * static_cast<long long>(rng() % (room.convert_to<std::uint64_t>() + 1))) : Integer(0);
    }
    auto p = construct_cayley({detail::scaled_translated(q, a, LatticeVector(q.dim())), detail::scaled_translated(q, b, t)},
                              unsigned(k));
    if (rng() % 2 == 0) p = gen::unimodular_image(p, rng());
    if (!is_smooth(p) || min_edge_length(p) < k) continue;
    out.push_back({"cayley-" + bname + "-k" + std::to_string(k) + "-a" + std::to_string(a) + "-b" +
                       std::to_string(b) + "-" + std::to_string(out.size()),
                   p, "cayley"});
  }
  return out;
}

/// Smooth polytopes outside the Cayley family: mixed boxes, chopped
/// simplices and cubes, hexagon variants.
inline std::vector<CorpusEntry> non_cayley_family(std::uint64_t seed) {
  std::vector<CorpusEntry> out;
  auto add = [&](std::string name, LatticePolytope p, std::string fam) {
    out.push_back({std::move(name), std::move(p), std::move(fam)});
  };
  add("box-1-2", gen::box({1, 2}), "box");
  add("box-2-3", gen::box({2, 3}), "box");
  add("box-1-3", gen::box({1, 3}), "box");
  add("box-1-2-3", gen::box({1, 2, 3}), "box");
  add("box-2-2-3", gen::box({2, 2, 3}), "box");
  add("box-1-1-2-2", gen::box({1, 1, 2, 2}), "box");
  for (long long k = 2; k <= 4; ++k)
    for (long long c = 1; c < k; ++c) add("chopped-simplex-2-" + std::to_string(k) + "-" + std::to_string(c),
                                          gen::chopped_simplex(2, k, c), "chopped");
  add("chopped-simplex-3-2-1", gen::chopped_simplex(3, 2, 1), "chopped");
  add("chopped-simplex-3-3-1", gen::chopped_simplex(3, 3, 1), "chopped");
  add("chopped-simplex-3-3-2", gen::chopped_simplex(3, 3, 2), "chopped");
  add("chopped-cube-2-2-1", gen::chopped_cube(2, 2, 1), "chopped");
  add("chopped-cube-3-2-1", gen::chopped_cube(3, 2, 1), "chopped");
  add("chopped-cube-2-3-1", gen::chopped_cube(2, 3, 1), "chopped");
  add("hexagon", gen::delpezzo6(), "hexagon");
  add("hexagon-x2", dilate(gen::delpezzo6(), 2), "hexagon");
  add("hexagon-x3", dilate(gen::delpezzo6(), 3), "hexagon");
  for (int i = 0; i < 3; ++i)
    add("hexagon-image-" + std::to_string(i), gen::unimodular_image(gen::delpezzo6(), seed + 100 + i), "hexagon");
  return out;
}

/// Everything the acceptance and property suites run over.
inline std::vector<CorpusEntry> standard_corpus(std::uint64_t seed = 0) {
  std::vector<CorpusEntry> out;
  for (std::size_t n = 1; n <= 4; ++n)
    for (long long k = 1; k <= 3; ++k)
      out.push_back({"simplex-" + std::to_string(n) + "-" + std::to_string(k), gen::simplex(n, k), "simplex"});
  out.push_back({"cube-3", gen::box({1, 1, 1}), "box"});
  out.push_back({"cube-3-x2", gen::box({2, 2, 2}), "box"});
  out.push_back({"cross-2-1", gen::cross({1, 1}, {1, 1}), "cross"});
  out.push_back({"cross-2-mixed", gen::cross({1, 2}, {3, 1}), "cross"});
  out.push_back({"cross-3-1", gen::cross({1, 1, 1}, {1, 1, 1}), "cross"});
  for (long long r = 0; r <= 2; ++r)
    for (long long b = 1; b <= 2; ++b)
      out.push_back({"hirzebruch-" + std::to_string(r) + "-" + std::to_string(b), gen::hirzebruch(b, b, r),
                     "hirzebruch"});
  for (auto& e : non_cayley_family(seed)) out.push_back(std::move(e));
  for (auto& e : cayley_family(seed)) out.push_back(std::move(e));
  return out;
}

}  // namespace cayleyjet

#endif  // CAYLEYJET_CORPUS_HPP
