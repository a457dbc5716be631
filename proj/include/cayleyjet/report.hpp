#ifndef CAYLEYJET_REPORT_HPP
#define CAYLEYJET_REPORT_HPP

// Analysis reports in two renderings: an aligned text table for people and
// single-line records (sorted-key JSON) for diffing. docs/records-format.md
// describes the record grammar.

#include <array>
#include <limits>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "cayleyjet/cayley.hpp"
#include "cayleyjet/jets.hpp"
#include "cayleyjet/polytope.hpp"
#include "cayleyjet/seshadri.hpp"

namespace cayleyjet {

inline constexpr int records_format_version = 1;

struct PolytopeSummary {
  std::size_t dim = 0;
  std::size_t vertices = 0;
  std::size_t facets = 0;
  std::size_t lattice_points = 0;
  bool smooth = false;
  std::optional<std::size_t> failing_vertex;
  Integer min_edge = 0;
  Integer max_edge = 0;
};

inline PolytopeSummary summarize(const LatticePolytope& p) {
  PolytopeSummary s;
  s.dim = p.dim();
  s.vertices = p.vertices().size();
  s.facets = p.facets().size();
  s.lattice_points = p.lattice_points().size();
  const auto check = is_smooth(p);
  s.smooth = check.smooth;
  s.failing_vertex = check.failing_vertex;
  s.min_edge = min_edge_length(p);
  s.max_edge = max_edge_length(p);
  return s;
}

struct CayleyQuery {
  unsigned order = 0;
  std::optional<CayleyDecomposition> decomposition;
};

struct AnalysisReport {
  std::string name;
  PolytopeSummary summary;
  std::optional<JetReport> jets;
  std::vector<CayleyQuery> cayley;
  std::optional<SeshadriReport> seshadri;
  std::vector<EquivalenceVerdict> verdicts;
};

struct AnalysisOptions {
  bool jets = true;
  bool cayley = true;
  bool seshadri = true;
  std::vector<unsigned> cayley_orders;  // empty: 1 .. default_jet_bound
  std::vector<unsigned> verify_orders;
  VerifyOptions verify;  // also carries the jet cap and the search bounds
};

/// Jets, Seshadri constants and verdicts need smoothness; for a singular
/// polytope they are left out and the summary names the failing vertex.
inline AnalysisReport analyze(const LatticePolytope& p, std::string name, const AnalysisOptions& opt = {}) {
  AnalysisReport r;
  r.name = std::move(name);
  r.summary = summarize(p);
  const bool smooth = r.summary.smooth;
  if (opt.jets && smooth) r.jets = jet_report(p, opt.verify.max_k);
  if (opt.cayley) {
    auto orders = opt.cayley_orders;
    if (orders.empty())
      for (unsigned s = 1; s <= default_jet_bound(p); ++s) orders.push_back(s);
    for (auto s : orders) r.cayley.push_back({s, detect_cayley(p, s, opt.verify.cayley)});
  }
  if (opt.seshadri && smooth) r.seshadri = seshadri_report(p, opt.verify.seshadri);
  if (smooth) r.verdicts = verify_corollary(p, opt.verify_orders, opt.verify);
  return r;
}

// ---- records ----

namespace detail {

using nlohmann::json;

inline json integer_json(const Integer& a) {
  if (a >= std::numeric_limits<std::int64_t>::min() && a <= std::numeric_limits<std::int64_t>::max())
    return json(a.convert_to<std::int64_t>());
  return json(a.str());
}

inline json rational_json(const Rational& q) { return json(to_string(q)); }

inline json vector_json(const LatticeVector& v) {
  json out = json::array();
  for (std::size_t i = 0; i < v.dim(); ++i) out.push_back(integer_json(v[i]));
  return out;
}

inline json matrix_json(const IntegerMatrix& m) {
  json out = json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) out.push_back(vector_json(row_vector(m, i)));
  return out;
}

template <class T>
json optional_json(const std::optional<T>& x) {
  return x ? json(*x) : json(nullptr);
}

inline json condition_json(const Condition& c) {
  return {{"value", c.value ? json(*c.value) : json(nullptr)}, {"witness", c.witness}};
}

}  // namespace detail

inline nlohmann::json to_json(const PolytopeSummary& s) {
  using detail::json;
  return {{"dim", s.dim},
          {"vertices", s.vertices},
          {"facets", s.facets},
          {"lattice_points", s.lattice_points},
          {"smooth", s.smooth},
          {"failing_vertex", detail::optional_json(s.failing_vertex)},
          {"min_edge", detail::integer_json(s.min_edge)},
          {"max_edge", detail::integer_json(s.max_edge)}};
}

inline nlohmann::json to_json(const JetReport& j) {
  return {{"per_fixpoint", j.per_fixpoint},
          {"generic", {{"order", j.generic.order}, {"at_least", j.generic.reached_bound}}},
          {"constant_k", detail::optional_json(j.constant_k)}};
}

inline nlohmann::json to_json(const CayleyQuery& q) {
  using detail::json;
  json out{{"order", q.order}, {"found", q.decomposition.has_value()}};
  if (!q.decomposition) return out;
  const auto& d = *q.decomposition;
  json slices = json::array();
  for (const auto& s : d.slices) {
    json vs = json::array();
    for (const auto& v : s.vertices) vs.push_back(detail::vector_json(v));
    slices.push_back({{"vertices", vs}, {"affine_dim", s.affine_dim}});
  }
  out["length"] = d.length;
  out["projection"] = detail::matrix_json(d.projection);
  out["translation"] = detail::vector_json(d.translation);
  out["level_map"] = d.level_map;
  out["fiber_map"] = detail::matrix_json(d.fiber_map);
  out["slices"] = slices;
  out["strict"] = d.strict;
  out["dimension_mismatch"] = d.dimension_mismatch;
  out["search_bound"] = d.search_bound;
  return out;
}

inline nlohmann::json to_json(const GenericEpsilon& g) {
  using detail::json;
  json witness = json::array();
  for (const auto& st : g.s1.witness)
    witness.push_back({{"direction", detail::vector_json(st.direction)},
                       {"image_length", detail::rational_json(st.image_length)},
                       {"level", detail::rational_json(st.level)}});
  return {{"lower", detail::rational_json(g.lower)},
          {"upper", detail::rational_json(g.upper)},
          {"exact", g.exact ? detail::rational_json(*g.exact) : json(nullptr)},
          {"s1",
           {{"value", detail::rational_json(g.s1.value)},
            {"bound", g.s1.bound},
            {"depth_levels", g.s1.depth_levels},
            {"witness", witness}}},
          {"s2",
           {{"width", detail::integer_json(g.s2.width)},
            {"direction", detail::vector_json(g.s2.direction)},
            {"bound", g.s2.bound},
            {"certified", g.s2.certified}}}};
}

inline nlohmann::json to_json(const SeshadriReport& s) {
  return {{"per_fixpoint", s.per_fixpoint_epsilon}, {"generic", to_json(s.generic)}};
}

inline nlohmann::json to_json(const EquivalenceVerdict& v) {
  using detail::json;
  json conds = json::array();
  for (const auto& c : v.conditions) conds.push_back(detail::condition_json(c));
  return {{"k", v.k}, {"conditions", conds}, {"consistent", v.consistent}, {"notes", v.notes}};
}

inline nlohmann::json to_json(const AnalysisReport& r) {
  using detail::json;
  json out{{"format_version", records_format_version}, {"name", r.name}, {"summary", to_json(r.summary)}};
  out["jets"] = r.jets ? to_json(*r.jets) : json(nullptr);
  json cay = json::array();
  for (const auto& q : r.cayley) cay.push_back(to_json(q));
  out["cayley"] = cay;
  out["seshadri"] = r.seshadri ? to_json(*r.seshadri) : json(nullptr);
  json verdicts = json::array();
  for (const auto& v : r.verdicts) verdicts.push_back(to_json(v));
  out["verdicts"] = verdicts;
  return out;
}

/// One line, keys sorted, no trailing newline.
inline std::string render_record(const AnalysisReport& r) { return to_json(r).dump(); }

// ---- text ----

namespace detail {

template <class T>
std::string join(const std::vector<T>& xs, const char* sep = ", ") {
  std::ostringstream out;
  for (std::size_t i = 0; i < xs.size(); ++i) out << (i ? sep : "") << xs[i];
  return out.str();
}

inline std::string tri(const std::optional<bool>& b) { return b ? (*b ? "true" : "false") : "undecided"; }

inline void row(std::ostream& out, const std::string& key, const std::string& value) {
  out << "  " << key << std::string(key.size() < 22 ? 22 - key.size() : 1, ' ') << value << '\n';
}

}  // namespace detail

inline const std::array<const char*, 5>& condition_labels() {
  static const std::array<const char*, 5> labels{
      "(1) jet order k everywhere",
      "(2) jet order k at fixpoints+general",
      "(3) Seshadri k everywhere",
      "(4) Seshadri k at fixpoints+general",
      "(5) Cayley order k, edges >= k",
  };
  return labels;
}

inline void render_verdict(std::ostream& out, const EquivalenceVerdict& v) {
  out << "verdict (k = " << v.k << ")\n";
  for (std::size_t i = 0; i < 5; ++i) {
    std::string label = condition_labels()[i];
    std::string value = detail::tri(v.conditions[i].value);
    value.resize(11, ' ');
    detail::row(out, label.substr(0, 3), value + label.substr(4) + "; " + v.conditions[i].witness);
  }
  detail::row(out, "consistent", v.consistent ? "yes" : "NO");
  for (const auto& n : v.notes) detail::row(out, "note", n);
}

inline std::string render_text(const AnalysisReport& r) {
  using detail::row;
  std::ostringstream out;
  const auto& s = r.summary;
  out << "polytope " << r.name << '\n';
  row(out, "dim", std::to_string(s.dim));
  row(out, "vertices", std::to_string(s.vertices));
  row(out, "facets", std::to_string(s.facets));
  row(out, "lattice points", std::to_string(s.lattice_points));
  row(out, "edge lengths", to_string(s.min_edge) + " .. " + to_string(s.max_edge));
  row(out, "smooth", s.smooth ? "yes" : "no (vertex " + std::to_string(*s.failing_vertex) + ")");
  if (r.jets) {
    out << "jets\n";
    row(out, "fixpoint orders", "[" + detail::join(r.jets->per_fixpoint) + "]");
    row(out, "generic order", (r.jets->generic.reached_bound ? ">= " : "") + std::to_string(r.jets->generic.order));
    row(out, "constant order", r.jets->constant_k ? std::to_string(*r.jets->constant_k) : "none");
  }
  if (!r.cayley.empty()) {
    out << "cayley\n";
    for (const auto& q : r.cayley) {
      const std::string key = "order " + std::to_string(q.order);
      if (!q.decomposition) {
        row(out, key, "none");
        continue;
      }
      const auto& d = *q.decomposition;
      std::vector<std::string> dims;
      for (const auto& sl : d.slices) dims.push_back(std::to_string(sl.affine_dim));
      row(out, key,
          "length " + std::to_string(d.length) + ", direction " + to_string(row_vector(d.projection, 0)) +
              (d.length > 2 ? " (+" + std::to_string(d.length - 2) + " rows)" : "") + ", slice dims [" +
              detail::join(dims) + "], " + (d.strict ? "strict" : "not strict") +
              (d.dimension_mismatch ? " (dimension mismatch)" : ""));
    }
  }
  if (r.seshadri) {
    const auto& g = r.seshadri->generic;
    out << "seshadri\n";
    row(out, "fixpoint epsilon", "[" + detail::join(r.seshadri->per_fixpoint_epsilon) + "]");
    row(out, "s1 lower bound", to_string(g.s1.value) + " (bound " + std::to_string(g.s1.bound) + ")");
    row(out, "s2 width", to_string(g.s2.width) + " along " + to_string(g.s2.direction) +
                             (g.s2.certified ? " (certified)" : " (bound " + std::to_string(g.s2.bound) + ")"));
    row(out, "generic epsilon", g.exact ? to_string(*g.exact) : "[" + to_string(g.lower) + ", " + to_string(g.upper) + "]");
  }
  for (const auto& v : r.verdicts) render_verdict(out, v);
  return out.str();
}

}  // namespace cayleyjet

#endif  // CAYLEYJET_REPORT_HPP
