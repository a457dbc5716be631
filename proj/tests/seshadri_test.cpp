#include <gtest/gtest.h>

#include <random>

#include "cayleyjet/seshadri.hpp"
#include "oracles.hpp"

using namespace cayleyjet;

namespace {

LatticePolytope simplex(std::size_t n, long long k) {
  std::vector<LatticeVector> vs{LatticeVector(n)};
  for (std::size_t i = 0; i < n; ++i) vs.push_back(k * LatticeVector::unit(n, i));
  return LatticePolytope::from_vertices(vs);
}

LatticePolytope hexagon() {
  return LatticePolytope::from_vertices({{0, 0}, {1, 0}, {2, 1}, {2, 2}, {1, 2}, {0, 1}});
}

LatticePolytope cross(const std::vector<std::pair<long long, long long>>& c) {
  const std::size_t n = c.size();
  std::vector<LatticeVector> vs;
  for (std::size_t i = 0; i < n; ++i) {
    vs.push_back(c[i].first * LatticeVector::unit(n, i));
    vs.push_back(-c[i].second * LatticeVector::unit(n, i));
  }
  return LatticePolytope::from_vertices(vs);
}

// Brute-force lattice width over a larger box, independent of the search
// order and certification in the library.
Integer brute_width(const LatticePolytope& p, int bound) {
  LatticeVector lo(p.dim()), hi(p.dim());
  for (std::size_t i = 0; i < p.dim(); ++i) {
    lo[i] = -bound;
    hi[i] = bound;
  }
  Integer best = -1;
  oracle::box_scan(lo, hi, [&](const LatticeVector& u) {
    if (u.is_zero()) return false;
    Integer mn = dot(u, p.vertices()[0]), mx = mn;
    for (const auto& v : p.vertices()) {
      mn = std::min(mn, dot(u, v));
      mx = std::max(mx, dot(u, v));
    }
    if (best < 0 || mx - mn < best) best = mx - mn;
    return false;
  });
  return best;
}

std::vector<LatticePolytope> planar_samples() {
  std::vector<LatticePolytope> out{hexagon(), simplex(2, 3), cross({{1, 2}, {2, 1}}),
                                   LatticePolytope::from_vertices({{0, 0}, {5, 0}, {0, 2}, {5, 2}}),
                                   LatticePolytope::from_vertices({{0, 0}, {4, 1}, {1, 3}})};
  std::mt19937_64 rng(61);
  std::uniform_int_distribution<int> d(-3, 3);
  for (int t = 0; t < 10; ++t) {
    std::vector<LatticeVector> pts;
    for (int i = 0; i < 6; ++i) pts.push_back({d(rng), d(rng)});
    try {
      out.push_back(LatticePolytope::hull_of(pts));
    } catch (const Error&) {
    }
  }
  return out;
}

}  // namespace

TEST(Projection, KernelCompletesToBasis) {
  for (LatticeVector u : {LatticeVector{1, 0, 0}, LatticeVector{2, 3, 5}, LatticeVector{0, -4, 7}}) {
    auto pr = make_projection(u);
    for (const auto& k : pr.kernel_basis) EXPECT_EQ(dot(k, u), 0);
    // Any preimage of 1 together with the kernel basis is a basis.
    auto inv = inverse_unimodular(pr.coordinates);
    LatticeVector pre(3);
    for (std::size_t i = 0; i < 3; ++i) pre[i] = inv(i, 0);
    EXPECT_EQ(dot(pre, u), 1);
    std::vector<LatticeVector> basis{pre};
    basis.insert(basis.end(), pr.kernel_basis.begin(), pr.kernel_basis.end());
    EXPECT_TRUE(is_lattice_basis(basis));
  }
  EXPECT_THROW(make_projection({2, 4}), Error);
}

TEST(LatticeWidth, Examples) {
  for (std::size_t n = 1; n <= 3; ++n)
    for (long long k = 1; k <= 3; ++k) {
      auto w = lattice_width(simplex(n, k));
      EXPECT_EQ(w.width, k);
      EXPECT_EQ(primitive(w.direction).g, 1);
      EXPECT_EQ(w.direction.max_abs(), 1);
      EXPECT_TRUE(w.certified);
    }
  auto h = lattice_width(hexagon());
  EXPECT_EQ(h.width, 2);
  EXPECT_EQ(h.direction, (LatticeVector{0, 1}));
  EXPECT_EQ(lattice_width(LatticePolytope::from_vertices({{0, 0}, {2, 0}, {0, 5}, {2, 5}})).width, 2);
}

TEST(LatticeWidth, MatchesBruteForce) {
  for (const auto& p : planar_samples()) {
    auto w = lattice_width(p, 3);
    EXPECT_EQ(w.width, brute_width(p, 9));
    EXPECT_EQ(width_along(p, w.direction), w.width);
  }
}

TEST(LatticeWidth, CrossPolytopeIsSumOfHalfLengths) {
  // The width along e_i is c_i^+ + c_i^-, and brute force confirms the
  // minimum over all directions is the smallest of these sums.
  std::mt19937_64 rng(67);
  std::uniform_int_distribution<int> c(1, 4);
  for (int t = 0; t < 20; ++t) {
    const std::size_t n = 2 + t % 2;
    std::vector<std::pair<long long, long long>> cs;
    Integer expect = -1;
    for (std::size_t i = 0; i < n; ++i) {
      cs.push_back({c(rng), c(rng)});
      Integer sum = cs.back().first + cs.back().second;
      if (expect < 0 || sum < expect) expect = sum;
    }
    auto p = cross(cs);
    EXPECT_EQ(brute_width(p, n == 2 ? 8 : 4), expect);
    EXPECT_EQ(lattice_width(p).width, expect);
    if (n == 2) EXPECT_EQ(s1(p).value, Rational(expect));
  }
}

TEST(S1, Examples) {
  EXPECT_EQ(s1(simplex(1, 1)).value, 1);
  EXPECT_EQ(s1(simplex(1, 4)).value, 4);
  for (std::size_t n = 2; n <= 3; ++n)
    for (long long k = 1; k <= 3; ++k) EXPECT_EQ(s1(simplex(n, k)).value, k);
  auto h = s1(hexagon());
  EXPECT_EQ(h.value, 2);
  ASSERT_FALSE(h.witness.empty());
  EXPECT_EQ(h.witness.front().image_length, 2);
}

TEST(S1, WitnessChainIsCoherent) {
  for (const auto& p : planar_samples()) {
    auto r = s1(p);
    if (r.value == 0) continue;
    ASSERT_EQ(r.witness.size(), 1u);
    EXPECT_GE(r.witness[0].image_length, r.value);
  }
  auto r3 = s1(simplex(3, 2));
  ASSERT_EQ(r3.witness.size(), 2u);
  for (const auto& step : r3.witness) EXPECT_GE(step.image_length, r3.value);
}

TEST(S1, SandwichAndMonotonicity) {
  std::mt19937_64 rng(71);
  std::uniform_int_distribution<int> d(-2, 2);
  int pairs = 0;
  for (const auto& p : planar_samples()) {
    const auto s1p = s1(p).value;
    const auto s2p = lattice_width(p).width;
    EXPECT_LE(s1p, Rational(s2p));
    for (int t = 0; t < 5; ++t) {
      LatticeVector u{d(rng), d(rng)};
      if (u.is_zero()) continue;
      Integer lo = dot(u, p.vertices()[0]), hi = lo;
      for (const auto& v : p.vertices()) {
        lo = std::min(lo, dot(u, v));
        hi = std::max(hi, dot(u, v));
      }
      try {
        auto q = chop(p, u, lo + (hi - lo) / 3);
        EXPECT_LE(s1(q).value, s1p);
        EXPECT_LE(lattice_width(q).width, s2p);
        ++pairs;
      } catch (const Error&) {
      }
    }
  }
  EXPECT_GT(pairs, 10);
}

TEST(S1, InvariantUnderUnimodularMaps) {
  std::mt19937_64 rng(73);
  for (const auto& p : {hexagon(), simplex(2, 3), cross({{1, 2}, {2, 2}})}) {
    const auto base = s1(p).value;
    const auto width = lattice_width(p).width;
    for (int t = 0; t < 4; ++t) {
      auto u = oracle::random_unimodular(rng, 2, 3);
      auto q = transform(p, u, {1, -1});
      // Inflate the bounds by the operator norm of the inverse map.
      auto inv = inverse_unimodular(u);
      Integer norm = 0;
      for (std::size_t i = 0; i < 2; ++i) norm = std::max(norm, Integer(abs_value(inv(0, i)) + abs_value(inv(1, i))));
      const int b = int(2 * norm.convert_to<long>());
      EXPECT_EQ(lattice_width(q, 5 * b).width, width);
      S1Options opt;
      opt.bound = b;
      EXPECT_EQ(s1(q, opt).value, base);
    }
  }
}

TEST(Epsilon, Fixpoints) {
  for (long long k = 1; k <= 3; ++k) {
    auto p = simplex(3, k);
    for (std::size_t v = 0; v < 4; ++v) EXPECT_EQ(epsilon_fixpoint(p, v), unsigned(k));
  }
  auto h = hexagon();
  for (std::size_t v = 0; v < 6; ++v) EXPECT_EQ(epsilon_fixpoint(h, v), 1u);
  auto r = LatticePolytope::from_vertices({{0, 0}, {2, 0}, {0, 3}, {2, 3}});
  EXPECT_EQ(epsilon_fixpoint(r, *r.vertex_index({0, 0})), 2u);
  auto bad = LatticePolytope::from_vertices({{0, 0}, {1, 0}, {0, 2}});
  try {
    epsilon_fixpoint(bad, *bad.vertex_index({1, 0}));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::NotSmooth);
  }
}

TEST(Epsilon, Generic) {
  auto h = epsilon_generic(hexagon());
  EXPECT_EQ(h.lower, 2);
  EXPECT_EQ(h.upper, 2);
  ASSERT_TRUE(h.exact.has_value());
  EXPECT_EQ(*h.exact, 2);
  for (long long k = 1; k <= 3; ++k) {
    auto g = epsilon_generic(simplex(3, k));
    ASSERT_TRUE(g.exact.has_value());
    EXPECT_EQ(*g.exact, k);
  }
  // [[0,2]^2 * [0,2]]^2 has every edge of length 2.
  auto c = construct_cayley({{{0, 0}, {2, 0}, {0, 2}, {2, 2}}, {{0, 0}, {2, 0}}}, 2);
  EXPECT_EQ(min_edge_length(c), 2);
  auto g = epsilon_generic(c);
  ASSERT_TRUE(g.exact.has_value());
  EXPECT_EQ(*g.exact, 2);
}

TEST(Verify, SimplexAllTrue) {
  for (std::size_t n = 1; n <= 3; ++n)
    for (unsigned k = 1; k <= 3; ++k) {
      auto v = verify_corollary(simplex(n, k), k);
      EXPECT_TRUE(v.consistent);
      for (const auto& c : v.conditions) {
        ASSERT_TRUE(c.value.has_value());
        EXPECT_TRUE(*c.value);
      }
      auto other = verify_corollary(simplex(n, k), k + 1);
      EXPECT_TRUE(other.consistent);
      for (const auto& c : other.conditions) EXPECT_NE(c.value, std::optional<bool>(true));
    }
}

TEST(Verify, HexagonAllFalse) {
  for (unsigned k = 1; k <= 4; ++k) {
    auto v = verify_corollary(hexagon(), k);
    EXPECT_TRUE(v.consistent);
    for (const auto& c : v.conditions) EXPECT_EQ(c.value, std::optional<bool>(false));
  }
}

TEST(Verify, ConstructedCayleyAllTrue) {
  auto c = construct_cayley({{{0, 0}, {2, 0}, {0, 2}, {2, 2}}, {{0, 0}, {2, 0}}}, 2);
  ASSERT_TRUE(is_smooth(c));
  auto v = verify_corollary(c, 2);
  EXPECT_TRUE(v.consistent);
  for (const auto& cond : v.conditions) EXPECT_EQ(cond.value, std::optional<bool>(true));
  EXPECT_THROW(verify_corollary(LatticePolytope::from_vertices({{0, 0}, {1, 0}, {0, 2}}), 1), Error);
}
