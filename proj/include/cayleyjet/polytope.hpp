#ifndef CAYLEYJET_POLYTOPE_HPP
#define CAYLEYJET_POLYTOPE_HPP

#include <algorithm>
#include <memory>
#include <mutex>
#include <optional>
#include <utility>
#include <vector>

#include "cayleyjet/hull.hpp"
#include "cayleyjet/lattice.hpp"

namespace cayleyjet {

/// Facet inequality <x, normal> >= -offset with an inner-pointing primitive
/// normal. `vertices` lists the indices of the vertices on the facet.
struct Facet {
  LatticeVector normal;
  Integer offset;
  std::vector<std::size_t> vertices;

  Integer slack(const LatticeVector& x) const { return dot(x, normal) + offset; }
  bool contains(const LatticeVector& x) const { return slack(x) >= 0; }
};

struct Edge {
  std::pair<std::size_t, std::size_t> endpoints;  // first < second
  LatticeVector direction;                        // primitive, from first to second
  Integer lattice_length;
};

/// Full-dimensional lattice polytope given by its vertices, kept in
/// lexicographic order. Copies share the lazily computed edge and lattice
/// point data.
class LatticePolytope {
 public:
  /// Validates that the list is exactly a vertex set: distinct, extreme and
  /// full-dimensional. Throws ValidationError naming the failed invariant.
  static LatticePolytope from_vertices(std::vector<LatticeVector> vertices) {
    if (vertices.empty()) throw Error(ErrorKind::ValidationError, "vertex list is empty");
    const std::size_t dim = vertices.front().dim();
    if (dim == 0) throw Error(ErrorKind::ValidationError, "dimension must be positive");
    for (const auto& v : vertices)
      if (v.dim() != dim) throw Error(ErrorKind::ValidationError, "vertices have mixed dimensions");
    std::sort(vertices.begin(), vertices.end());
    for (std::size_t i = 1; i < vertices.size(); ++i)
      if (vertices[i] == vertices[i - 1])
        throw Error(ErrorKind::ValidationError, "vertices are not pairwise distinct");
    LatticePolytope p;
    try {
      p = build(vertices, dim);
    } catch (const Error& e) {
      if (e.kind() == ErrorKind::DegenerateInput)
        throw Error(ErrorKind::ValidationError, "vertices are not full-dimensional");
      throw;
    }
    if (p.vertices().size() != vertices.size()) {
      for (const auto& v : vertices)
        if (!p.vertex_index(v))
          throw Error(ErrorKind::ValidationError, "point is not extreme");
    }
    return p;
  }

  /// Convex hull of arbitrary lattice points; throws DegenerateInput if they
  /// are not full-dimensional.
  static LatticePolytope hull_of(std::vector<LatticeVector> points) {
    if (points.empty()) throw Error(ErrorKind::DegenerateInput, "no points");
    const std::size_t dim = points.front().dim();
    if (dim == 0) throw Error(ErrorKind::DegenerateInput, "dimension must be positive");
    return build(points, dim);
  }

  std::size_t dim() const { return data_->dim; }
  const std::vector<LatticeVector>& vertices() const { return data_->vertices; }
  const std::vector<Facet>& facets() const { return data_->facets; }

  const std::vector<Edge>& edges() const {
    std::call_once(data_->edges_once, [this] { data_->edges = compute_edges(); });
    return data_->edges;
  }

  /// All integer points of P in lexicographic order.
  const std::vector<LatticeVector>& lattice_points() const {
    std::call_once(data_->points_once, [this] { data_->points = compute_lattice_points(); });
    return data_->points;
  }

  std::optional<std::size_t> vertex_index(const LatticeVector& v) const {
    auto it = std::lower_bound(vertices().begin(), vertices().end(), v);
    if (it == vertices().end() || !(*it == v)) return std::nullopt;
    return static_cast<std::size_t>(it - vertices().begin());
  }

  bool contains(const LatticeVector& x) const {
    return std::all_of(facets().begin(), facets().end(),
                       [&](const Facet& f) { return f.contains(x); });
  }

  /// Indices into edges() of the edges through vertex v.
  std::vector<std::size_t> edges_at(std::size_t v) const {
    std::vector<std::size_t> out;
    const auto& es = edges();
    for (std::size_t i = 0; i < es.size(); ++i)
      if (es[i].endpoints.first == v || es[i].endpoints.second == v) out.push_back(i);
    return out;
  }

  /// Primitive directions of the edges leaving v, sorted lexicographically.
  std::vector<LatticeVector> edge_directions_at(std::size_t v) const {
    std::vector<LatticeVector> dirs;
    for (auto i : edges_at(v)) {
      const auto& e = edges()[i];
      dirs.push_back(e.endpoints.first == v ? e.direction : -e.direction);
    }
    std::sort(dirs.begin(), dirs.end());
    return dirs;
  }

  /// Componentwise minimum and maximum over the vertices.
  std::pair<LatticeVector, LatticeVector> bounding_box() const {
    LatticeVector lo = vertices().front(), hi = lo;
    for (const auto& v : vertices())
      for (std::size_t i = 0; i < dim(); ++i) {
        lo[i] = std::min(lo[i], v[i]);
        hi[i] = std::max(hi[i], v[i]);
      }
    return {lo, hi};
  }

  friend bool operator==(const LatticePolytope& a, const LatticePolytope& b) {
    return a.vertices() == b.vertices();
  }

 private:
  struct Data {
    std::size_t dim = 0;
    std::vector<LatticeVector> vertices;
    std::vector<Facet> facets;
    std::once_flag edges_once;
    std::vector<Edge> edges;
    std::once_flag points_once;
    std::vector<LatticeVector> points;
  };

  LatticePolytope() = default;

  static LatticePolytope build(const std::vector<LatticeVector>& points, std::size_t dim) {
    std::vector<Point<Integer>> raw;
    raw.reserve(points.size());
    for (const auto& v : points) raw.push_back(v.coords());
    auto hull = convex_hull(std::move(raw), dim);

    auto data = std::make_shared<Data>();
    data->dim = dim;
    std::vector<std::ptrdiff_t> vertex_slot(hull.points.size(), -1);
    for (auto i : hull.vertices) {
      vertex_slot[i] = static_cast<std::ptrdiff_t>(data->vertices.size());
      data->vertices.emplace_back(hull.points[i]);
    }
    for (auto& hf : hull.facets) {
      Facet f{std::move(hf.normal), std::move(hf.offset), {}};
      for (auto i : hf.tight)
        if (vertex_slot[i] >= 0) f.vertices.push_back(static_cast<std::size_t>(vertex_slot[i]));
      data->facets.push_back(std::move(f));
    }
    LatticePolytope p;
    p.data_ = std::move(data);
    return p;
  }

  std::vector<Edge> compute_edges() const {
    const std::size_t n = vertices().size();
    std::vector<std::vector<std::size_t>> facets_at(n);
    for (std::size_t f = 0; f < facets().size(); ++f)
      for (auto v : facets()[f].vertices) facets_at[v].push_back(f);

    std::vector<Edge> out;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j) {
        std::vector<std::size_t> common;
        std::set_intersection(facets_at[i].begin(), facets_at[i].end(), facets_at[j].begin(),
                              facets_at[j].end(), std::back_inserter(common));
        if (common.size() + 1 < dim()) continue;
        std::vector<LatticeVector> normals;
        for (auto f : common) normals.push_back(facets()[f].normal);
        if (rank_exact(matrix_from_rows(normals, dim())) != dim() - 1) continue;
        auto [g, dir] = primitive(vertices()[j] - vertices()[i]);
        out.push_back(Edge{{i, j}, std::move(dir), std::move(g)});
      }
    return out;
  }

  std::vector<LatticeVector> compute_lattice_points() const {
    auto [lo, hi] = bounding_box();
    std::vector<LatticeVector> out;
    LatticeVector x = lo;
    // Odometer over the box with the last coordinate varying fastest.
    while (true) {
      if (contains(x)) out.push_back(x);
      std::size_t i = dim();
      while (i > 0) {
        --i;
        if (x[i] < hi[i]) {
          ++x[i];
          break;
        }
        x[i] = lo[i];
        if (i == 0) return out;
      }
    }
  }

  std::shared_ptr<Data> data_;
};

struct SmoothnessCheck {
  bool smooth = true;
  std::optional<std::size_t> failing_vertex;

  explicit operator bool() const noexcept { return smooth; }
};

inline bool is_smooth_at(const LatticePolytope& p, std::size_t v) {
  auto dirs = p.edge_directions_at(v);
  return dirs.size() == p.dim() && is_lattice_basis(dirs, p.dim());
}

/// Smooth iff every vertex has exactly dim edges whose primitive directions
/// form a lattice basis. Reports the first failing vertex.
inline SmoothnessCheck is_smooth(const LatticePolytope& p) {
  for (std::size_t v = 0; v < p.vertices().size(); ++v)
    if (!is_smooth_at(p, v)) return {false, v};
  return {};
}

struct VertexChart {
  std::size_t vertex = 0;
  IntegerMatrix map;                  // unimodular, acts on x - vertex
  std::vector<LatticeVector> points;  // images of P ∩ M, lexicographic
};

/// Coordinates in which vertex v sits at the origin and its edge directions
/// are the standard basis.
inline VertexChart vertex_chart(const LatticePolytope& p, std::size_t v) {
  auto dirs = p.edge_directions_at(v);
  if (dirs.size() != p.dim() || !is_lattice_basis(dirs, p.dim()))
    throw Error(ErrorKind::NotSmoothAtVertex, "edge directions at the vertex are not a lattice basis");
  VertexChart chart;
  chart.vertex = v;
  chart.map = inverse_unimodular(matrix_from_columns(dirs, p.dim()));
  const auto& origin = p.vertices()[v];
  for (const auto& m : p.lattice_points()) chart.points.push_back(multiply(chart.map, m - origin));
  std::sort(chart.points.begin(), chart.points.end());
  return chart;
}

/// P ∩ {x : <x, normal> >= level}. The result must again be a full-dimensional
/// lattice polytope.
inline LatticePolytope chop(const LatticePolytope& p, const LatticeVector& normal, const Integer& level) {
  std::vector<LatticeVector> pts;
  std::vector<Integer> values;
  for (const auto& v : p.vertices()) values.push_back(dot(v, normal) - level);
  for (std::size_t i = 0; i < values.size(); ++i)
    if (values[i] >= 0) pts.push_back(p.vertices()[i]);
  for (const auto& e : p.edges()) {
    const auto& a = values[e.endpoints.first];
    const auto& b = values[e.endpoints.second];
    if ((a < 0 && b > 0) || (a > 0 && b < 0)) {
      // point a_pt + t (b_pt - a_pt) with t = a / (a - b)
      const auto& pa = p.vertices()[e.endpoints.first];
      const auto& pb = p.vertices()[e.endpoints.second];
      const Integer denom = a - b;
      LatticeVector x(p.dim());
      for (std::size_t i = 0; i < p.dim(); ++i) {
        Integer num = pa[i] * denom + a * (pb[i] - pa[i]);
        if (num % denom != 0) throw Error(ErrorKind::NonLatticeChop, "cut vertex is not a lattice point");
        x[i] = num / denom;
      }
      pts.push_back(std::move(x));
    }
  }
  if (pts.empty()) throw Error(ErrorKind::EmptyChop, "halfspace misses the polytope");
  try {
    return LatticePolytope::hull_of(std::move(pts));
  } catch (const Error& e) {
    if (e.kind() == ErrorKind::DegenerateInput)
      throw Error(ErrorKind::EmptyChop, "intersection is not full-dimensional");
    throw;
  }
}

/// (1/k)(P - v0) for v0 the lexicographically smallest vertex.
inline LatticePolytope shrink(const LatticePolytope& p, const Integer& k) {
  if (k <= 0) throw Error(ErrorKind::InvalidParams, "shrink factor must be positive");
  const auto& v0 = p.vertices().front();
  std::vector<LatticeVector> out;
  for (const auto& v : p.vertices()) {
    LatticeVector d = v - v0;
    for (std::size_t i = 0; i < d.dim(); ++i) {
      if (d[i] % k != 0) throw Error(ErrorKind::NotDivisible, "vertex is not divisible after translation");
      d[i] /= k;
    }
    out.push_back(std::move(d));
  }
  return LatticePolytope::from_vertices(std::move(out));
}

/// Image under x -> map * x + shift; `map` must be unimodular.
inline LatticePolytope transform(const LatticePolytope& p, const IntegerMatrix& map,
                                 const LatticeVector& shift) {
  if (abs_value(determinant(map)) != 1) throw Error(ErrorKind::InvalidParams, "map is not unimodular");
  std::vector<LatticeVector> out;
  for (const auto& v : p.vertices()) out.push_back(multiply(map, v) + shift);
  return LatticePolytope::from_vertices(std::move(out));
}

inline LatticePolytope dilate(const LatticePolytope& p, const Integer& t) {
  if (t <= 0) throw Error(ErrorKind::InvalidParams, "dilation factor must be positive");
  std::vector<LatticeVector> out;
  for (const auto& v : p.vertices()) out.push_back(t * v);
  return LatticePolytope::from_vertices(std::move(out));
}

inline LatticePolytope translate(const LatticePolytope& p, const LatticeVector& shift) {
  std::vector<LatticeVector> out;
  for (const auto& v : p.vertices()) out.push_back(v + shift);
  return LatticePolytope::from_vertices(std::move(out));
}

inline Integer min_edge_length(const LatticePolytope& p) {
  Integer m = -1;
  for (const auto& e : p.edges())
    if (m < 0 || e.lattice_length < m) m = e.lattice_length;
  return m;
}

inline Integer max_edge_length(const LatticePolytope& p) {
  Integer m = 0;
  for (const auto& e : p.edges()) m = std::max(m, e.lattice_length);
  return m;
}

}  // namespace cayleyjet

#endif  // CAYLEYJET_POLYTOPE_HPP
