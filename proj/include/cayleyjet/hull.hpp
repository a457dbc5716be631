#ifndef CAYLEYJET_HULL_HPP
#define CAYLEYJET_HULL_HPP

// Exact convex hulls of small point sets by facet enumeration over
// affinely independent subsets. Works for integer and rational points.

#include <algorithm>
#include <set>
#include <vector>

#include "cayleyjet/lattice.hpp"

namespace cayleyjet {

namespace detail {

inline IntegerMatrix integer_rows(const IntegerMatrix& m) { return m; }
inline IntegerMatrix integer_rows(const RationalMatrix& m) { return clear_denominators(m); }

template <typename T>
T dot_values(const LatticeVector& normal, const std::vector<T>& x) {
  T s = 0;
  for (std::size_t i = 0; i < x.size(); ++i)
    if (normal[i] != 0) s += T(normal[i]) * x[i];
  return s;
}

/// Calls f(indices) for every k-subset of {0..n-1} in lexicographic order.
template <typename F>
void for_each_combination(std::size_t n, std::size_t k, F&& f) {
  if (k > n) return;
  std::vector<std::size_t> c(k);
  for (std::size_t i = 0; i < k; ++i) c[i] = i;
  while (true) {
    f(static_cast<const std::vector<std::size_t>&>(c));
    if (k == 0) return;
    std::size_t i = k;
    while (i > 0 && c[i - 1] == n - k + i - 1) --i;
    if (i == 0) return;
    ++c[i - 1];
    for (std::size_t j = i; j < k; ++j) c[j] = c[j - 1] + 1;
  }
}

}  // namespace detail

template <typename T>
using Point = std::vector<T>;

/// Halfspace <x, normal> >= -offset with `normal` primitive.
template <typename T>
struct HullFacet {
  LatticeVector normal;
  T offset;
  std::vector<std::size_t> tight;  // indices of points on the facet
};

template <typename T>
struct Hull {
  std::size_t dim = 0;
  std::vector<Point<T>> points;  // deduplicated, lexicographic
  std::vector<HullFacet<T>> facets;
  std::vector<std::size_t> vertices;  // indices into points
};

template <typename T>
std::size_t affine_dimension(const std::vector<Point<T>>& pts) {
  if (pts.empty()) return 0;
  const std::size_t n = pts.front().size();
  Matrix<T> diffs(pts.size() - 1, n);
  for (std::size_t i = 1; i < pts.size(); ++i)
    for (std::size_t j = 0; j < n; ++j) diffs(i - 1, j) = pts[i][j] - pts[0][j];
  return rank_exact(detail::integer_rows(diffs));
}

/// Facets and vertices of conv(pts) in R^dim; throws DegenerateInput unless
/// the points are full-dimensional.
template <typename T>
Hull<T> convex_hull(std::vector<Point<T>> pts, std::size_t dim) {
  std::sort(pts.begin(), pts.end());
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  if (pts.empty() || affine_dimension(pts) != dim)
    throw Error(ErrorKind::DegenerateInput, "points are not full-dimensional");

  Hull<T> hull;
  hull.dim = dim;
  hull.points = std::move(pts);
  const auto& p = hull.points;
  const std::size_t count = p.size();

  std::set<LatticeVector> seen;
  std::vector<std::vector<bool>> tight_masks;
  std::vector<T> values(count);

  detail::for_each_combination(count, dim, [&](const std::vector<std::size_t>& c) {
    for (const auto& mask : tight_masks)
      if (std::all_of(c.begin(), c.end(), [&](std::size_t i) { return mask[i]; })) return;

    Matrix<T> diffs(dim - 1, dim);
    for (std::size_t i = 1; i < dim; ++i)
      for (std::size_t j = 0; j < dim; ++j) diffs(i - 1, j) = p[c[i]][j] - p[c[0]][j];
    auto kernel = kernel_basis(detail::integer_rows(diffs));
    if (kernel.size() != 1) return;
    LatticeVector normal = kernel.front();

    const T base = detail::dot_values(normal, p[c[0]]);
    bool above = true, below = true;
    for (std::size_t i = 0; i < count; ++i) {
      values[i] = detail::dot_values(normal, p[i]);
      if (values[i] < base) above = false;
      if (values[i] > base) below = false;
      if (!above && !below) return;
    }
    if (!above) normal = -normal;
    if (!seen.insert(normal).second) return;

    HullFacet<T> facet{normal, above ? T(-base) : T(base), {}};
    std::vector<bool> mask(count, false);
    for (std::size_t i = 0; i < count; ++i)
      if (values[i] == base) {
        facet.tight.push_back(i);
        mask[i] = true;
      }
    tight_masks.push_back(std::move(mask));
    hull.facets.push_back(std::move(facet));
  });

  std::sort(hull.facets.begin(), hull.facets.end(),
            [](const auto& a, const auto& b) { return a.normal < b.normal; });

  std::vector<std::vector<LatticeVector>> normals_at(count);
  for (const auto& f : hull.facets)
    for (auto i : f.tight) normals_at[i].push_back(f.normal);
  for (std::size_t i = 0; i < count; ++i) {
    if (normals_at[i].size() < dim) continue;
    if (rank_exact(matrix_from_rows(normals_at[i], dim)) == dim) hull.vertices.push_back(i);
  }
  return hull;
}

}  // namespace cayleyjet

#endif  // CAYLEYJET_HULL_HPP
