// Acceptance checks. Prints one PASS/FAIL line per criterion and exits
// nonzero if any fails. All comparisons are exact; the only tolerances are
// the wall-clock budgets below.

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <random>
#include <set>
#include <sstream>
#include <string>

#include "cayleyjet/corpus.hpp"
#include "cayleyjet/report.hpp"

using namespace cayleyjet;

namespace {

constexpr double budget_veronese_s = 10.0;
constexpr double budget_hexagon_s = 5.0;
constexpr double budget_biconditional_s = 120.0;
constexpr std::size_t min_cayley_members = 50;
constexpr std::size_t min_non_cayley_members = 20;
constexpr unsigned max_rank_order = 4;
constexpr std::size_t evaluation_points = 5;
constexpr std::size_t chop_pairs = 100;
constexpr std::uint64_t seed = 0;
constexpr int s1_bound_4d = 1;

struct Outcome {
  bool pass = true;
  std::string detail;
  std::vector<std::string> failures;

  void check(bool ok, const std::string& what) {
    if (ok) return;
    pass = false;
    if (failures.size() < 5) failures.push_back(what);
  }
};

const std::vector<CorpusEntry>& corpus() {
  static const auto c = standard_corpus(seed);
  return c;
}

Outcome veronese() {
  Outcome o;
  std::size_t count = 0;
  for (std::size_t n = 1; n <= 4; ++n)
    for (unsigned k = 1; k <= 3; ++k) {
      const auto p = gen::simplex(n, k);
      const std::string tag = std::to_string(k) + "Δ" + std::to_string(n);
      const auto jets = jet_report(p);
      o.check(jets.constant_k == std::optional<unsigned>(k), tag + ": constant jet order");
      o.check(detect_cayley(p, k).has_value(), tag + ": Cayley of order k");
      o.check(epsilon_generic(p).exact == std::optional<Rational>(k), tag + ": generic epsilon");
      for (std::size_t v = 0; v < p.vertices().size(); ++v)
        o.check(epsilon_fixpoint(p, v) == k, tag + ": fixpoint epsilon");
      ++count;
    }
  o.detail = std::to_string(count) + " simplices";
  return o;
}

Outcome hexagon() {
  Outcome o;
  const auto p = gen::delpezzo6();
  o.check(bool(is_smooth(p)), "smooth");
  o.check(p.lattice_points().size() == 7, "7 lattice points");
  o.check(p.edges().size() == 6, "6 edges");
  for (const auto& e : p.edges()) o.check(e.lattice_length == 1, "edge length 1");
  const auto jets = jet_report(p, 6);
  for (auto s : jets.per_fixpoint) o.check(s == 1, "fixpoint jet order 1");
  o.check(jets.generic.order == 2 && !jets.generic.reached_bound, "generic jet order 2");
  const auto w = lattice_width(p);
  o.check(w.width == 2 && w.certified, "s2 = 2");
  o.check(w.direction.max_abs() == 1 && primitive(w.direction).g == 1 &&
              std::count(w.direction.coords().begin(), w.direction.coords().end(), Integer(0)) == 1,
          "coordinate witness direction");
  o.check(s1(p).value == 2, "s1 lower bound 2");
  o.check(epsilon_generic(p).exact == std::optional<Rational>(2), "generic epsilon exact 2");
  for (unsigned s = 1; s <= 3; ++s) o.check(!detect_cayley(p, s), "no Cayley of order " + std::to_string(s));
  for (unsigned k = 1; k <= 6; ++k) {
    const auto v = verify_corollary(p, k);
    o.check(v.consistent, "consistent at k = " + std::to_string(k));
    for (const auto& c : v.conditions)
      o.check(c.value == std::optional<bool>(false), "all false at k = " + std::to_string(k));
  }
  o.detail = "orders 1..6 verified";
  return o;
}

Outcome biconditional() {
  Outcome o;
  std::size_t cayley = 0, other = 0, checks = 0;
  for (const auto& e : corpus()) {
    const auto& p = e.polytope;
    const bool is_cayley_member = e.family == "cayley";
    if (!is_cayley_member && e.family != "box" && e.family != "chopped" && e.family != "hexagon") continue;
    o.check(bool(is_smooth(p)), e.name + " smooth");
    if (is_cayley_member) {
      ++cayley;
      o.check(p.dim() >= 2 && p.dim() <= 4, e.name + " dimension");
    } else {
      ++other;
    }
    const auto jets = jet_report(p);
    const auto shortest = min_edge_length(p);
    for (unsigned k = 1; k <= default_jet_bound(p); ++k) {
      const bool lhs = jets.constant_k == std::optional<unsigned>(k);
      const bool rhs = detect_cayley(p, k).has_value() && shortest >= k;
      o.check(lhs == rhs, e.name + " at k = " + std::to_string(k));
      ++checks;
    }
    if (is_cayley_member) o.check(jets.constant_k.has_value(), e.name + " has a constant order");
  }
  o.check(cayley >= min_cayley_members, "too few Cayley members");
  o.check(other >= min_non_cayley_members, "too few non-Cayley members");
  o.detail = std::to_string(cayley) + " Cayley + " + std::to_string(other) + " other, " + std::to_string(checks) +
             " (polytope, k) pairs";
  return o;
}

Outcome rank_oracles() {
  Outcome o;
  std::size_t checks = 0;
  for (const auto& e : corpus()) {
    const auto& p = e.polytope;
    const auto points = random_evaluation_points(p.dim(), evaluation_points, seed);
    for (unsigned k = 0; k <= max_rank_order; ++k) {
      const auto falling = rank_exact(jet_matrix(p, k).entries);
      const auto powers = rank_exact(power_matrix(p.lattice_points(), p.dim(), k));
      std::size_t best = 0;
      for (const auto& x : points) best = std::max(best, rank_exact(jet_matrix(p, k, RationalPoint{x}).entries));
      o.check(falling == powers && powers == best, e.name + " at k = " + std::to_string(k));
      ++checks;
    }
  }
  o.detail = std::to_string(checks) + " (polytope, k) pairs";
  return o;
}

Outcome fixpoint_orders() {
  Outcome o;
  std::size_t checks = 0;
  for (const auto& e : corpus()) {
    if (!is_smooth(e.polytope)) continue;
    for (std::size_t v = 0; v < e.polytope.vertices().size(); ++v) {
      o.check(fixpoint_jet_order(e.polytope, v) == chart_jet_order(e.polytope, v), e.name);
      ++checks;
    }
  }
  o.detail = std::to_string(checks) + " vertices";
  return o;
}

Outcome dilation() {
  Outcome o;
  std::size_t checks = 0;
  for (const auto& e : corpus()) {
    const auto& p = e.polytope;
    if (!is_smooth(p) || min_edge_length(p) != max_edge_length(p)) continue;
    try {
      const auto q = shrink(p, min_edge_length(p));
      o.check(is_smooth(q) && min_edge_length(q) == 1 && max_edge_length(q) == 1, e.name);
    } catch (const Error& err) {
      o.check(false, e.name + ": " + err.what());
    }
    ++checks;
  }
  o.detail = std::to_string(checks) + " equal-edge polytopes";
  return o;
}

Outcome strictness() {
  Outcome o;
  std::size_t strict = 0, flagged = 0, checks = 0;
  for (const auto& e : corpus()) {
    const auto& p = e.polytope;
    if (p.dim() > 3 || !is_smooth(p)) continue;
    for (unsigned s = 1; s <= default_jet_bound(p); ++s) {
      if (!detect_cayley(p, s)) continue;
      ++checks;
      if (find_strict_decomposition(p, s)) {
        ++strict;
        continue;
      }
      // Not strict under equal-dim: acceptable only when the slices differ in
      // dimension and P is a simplex image.
      CayleyOptions proj;
      proj.strict_mode = StrictMode::Project;
      const auto d = detect_cayley(p, s);
      const bool simplex_image = p.vertices().size() == p.dim() + 1;
      const bool ok = d->dimension_mismatch && simplex_image && find_strict_decomposition(p, s, proj).has_value();
      o.check(ok, e.name + " at order " + std::to_string(s));
      if (ok) ++flagged;
    }
  }
  o.detail = std::to_string(checks) + " detections, " + std::to_string(strict) + " strict, " +
             std::to_string(flagged) + " flagged";
  return o;
}

Outcome sandwich() {
  Outcome o;
  for (const auto& e : corpus()) {
    const auto& p = e.polytope;
    const auto w = lattice_width(p);
    // Cap above the width so that an s1 value exceeding s2 would be seen.
    // Without an early stop the 4D search is only affordable over the unit box.
    S1Options opt;
    opt.cap = Rational(w.width + 1);
    opt.priority = {w.direction};
    if (p.dim() >= 4) opt.bound = s1_bound_4d;
    o.check(s1(p, opt).value <= Rational(w.width), e.name + " s1 <= s2");
  }

  std::mt19937_64 rng(seed);
  std::size_t pairs = 0, attempts = 0;
  std::vector<const CorpusEntry*> bases;
  for (const auto& e : corpus())
    if (e.polytope.dim() <= 3) bases.push_back(&e);
  while (pairs < chop_pairs && attempts < 50 * chop_pairs) {
    ++attempts;
    const auto& e = *bases[rng() % bases.size()];
    const auto& p = e.polytope;
    LatticeVector u(p.dim());
    for (std::size_t i = 0; i < p.dim(); ++i) u[i] = static_cast<long long>(rng() % 5) - 2;
    if (u.is_zero()) continue;
    Integer lo = dot(u, p.vertices()[0]), hi = lo;
    for (const auto& v : p.vertices()) {
      lo = std::min(lo, dot(u, v));
      hi = std::max(hi, dot(u, v));
    }
    if (hi - lo < 2) continue;
    const Integer level = lo + 1 + Integer(rng() % (hi - lo - 1).convert_to<std::uint64_t>());
    std::optional<LatticePolytope> chopped;
    try {
      chopped = chop(p, u, level);
    } catch (const Error&) {
      continue;
    }
    const auto& q = *chopped;
    ++pairs;
    // Same options on both sides, so the two searches are comparable.
    S1Options opt;
    opt.cap = Rational(default_jet_bound(p));
    o.check(s1(q, opt).value <= s1(p, opt).value, e.name + " s1 monotone");
    o.check(lattice_width(q).width <= lattice_width(p).width, e.name + " s2 monotone");
  }
  o.check(pairs == chop_pairs, "could only build " + std::to_string(pairs) + " chop pairs");
  o.detail = std::to_string(corpus().size()) + " sandwiches (s1 box " + std::to_string(S1Options{}.bound) +
             ", " + std::to_string(s1_bound_4d) + " in dim 4), " + std::to_string(pairs) + " chop pairs";
  return o;
}

Outcome dilated_orders() {
  Outcome o;
  std::vector<std::pair<std::string, LatticePolytope>> cases;
  for (std::size_t n = 1; n <= 3; ++n)
    for (long long k = 1; k <= 2; ++k)
      cases.push_back({std::to_string(k) + "Δ" + std::to_string(n), gen::simplex(n, k)});
  cases.push_back({"hexagon", gen::delpezzo6()});
  for (const auto& [name, p] : cases) {
    const auto eps = epsilon_generic(p);
    Rational prev = 0;
    for (long long t = 1; t <= 3; ++t) {
      const auto tp = dilate(p, t);
      const auto order = generic_jet_order(tp);
      o.check(!order.reached_bound, name + " order capped");
      const Rational ratio(Integer(order.order), Integer(t));
      const auto s2 = lattice_width(tp).width;
      o.check(ratio >= prev, name + " nondecreasing at t = " + std::to_string(t));
      o.check(ratio <= eps.upper, name + " above reported epsilon at t = " + std::to_string(t));
      o.check(ratio <= Rational(s2, t), name + " above s2(tP)/t at t = " + std::to_string(t));
      prev = ratio;
    }
  }
  o.detail = std::to_string(cases.size()) + " polytopes, t = 1..3";
  return o;
}

}  // namespace

int main(int argc, char** argv) {
  // Optional arguments select criteria by number.
  std::set<int> only;
  for (int i = 1; i < argc; ++i) only.insert(std::atoi(argv[i]));
  struct Criterion {
    int id;
    const char* name;
    std::function<Outcome()> run;
    double budget_s;  // 0: no budget
  };
  const std::vector<Criterion> criteria{
      {1, "Veronese simplices", veronese, budget_veronese_s},
      {2, "del Pezzo hexagon", hexagon, budget_hexagon_s},
      {3, "constant jet order <=> Cayley with long edges", biconditional, budget_biconditional_s},
      {4, "jet rank oracles agree", rank_oracles, 0},
      {5, "fixpoint order = chart order", fixpoint_orders, 0},
      {6, "equal edges shrink to unit edges", dilation, 0},
      {7, "strict decompositions in dim <= 3", strictness, 0},
      {8, "s1 <= s2 and chop monotonicity", sandwich, 0},
      {9, "dilated jet orders below epsilon", dilated_orders, 0},
  };
  int failed = 0;
  std::size_t ran = 0;
  for (const auto& c : criteria) {
    if (!only.empty() && !only.count(c.id)) continue;
    ++ran;
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o.check(false, std::string("exception: ") + e.what());
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (c.budget_s > 0 && secs > c.budget_s) o.check(false, "over the time budget");
    std::printf("[%s] %d %s: %s (%.2f s%s)\n", o.pass ? "PASS" : "FAIL", c.id, c.name, o.detail.c_str(), secs,
                c.budget_s > 0 ? (", budget " + std::to_string(int(c.budget_s)) + " s").c_str() : "");
    for (const auto& f : o.failures) std::printf("       %s\n", f.c_str());
    std::fflush(stdout);
    if (!o.pass) ++failed;
  }
  std::printf("%d of %zu criteria passed\n", int(ran) - failed, ran);
  return failed == 0 ? 0 : 1;
}
