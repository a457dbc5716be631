// Walks through the main entry points on two small polytopes: the second
// dilate of the unit square and the hexagon of the degree 6 del Pezzo surface.

#include <iostream>

#include "cayleyjet/corpus.hpp"
#include "cayleyjet/io.hpp"
#include "cayleyjet/report.hpp"

using namespace cayleyjet;

int main() {
  // Vertices can be listed in any order; they are validated and sorted.
  const auto square = LatticePolytope::from_vertices({{0, 0}, {2, 0}, {0, 2}, {2, 2}});
  std::cout << emit_polytope(square);

  const auto jets = jet_report(square);
  std::cout << "generic jet order " << jets.generic.order << ", constant order "
            << (jets.constant_k ? std::to_string(*jets.constant_k) : "none") << '\n';

  // [0,2]^2 is the Cayley polytope of two segments of length 2 at height 2.
  if (auto d = detect_cayley(square, 2)) {
    std::cout << "Cayley of order 2 along " << to_string(row_vector(d->projection, 0)) << ", slices:";
    for (const auto& s : d->slices) std::cout << ' ' << s.vertices.size() << " vertices";
    std::cout << '\n';
  }

  const auto eps = epsilon_generic(square);
  std::cout << "generic Seshadri constant in [" << to_string(eps.lower) << ", " << to_string(eps.upper) << "]\n";

  // The hexagon has jet order 2 at a general point but only 1 at each fixpoint,
  // so every one of the five characterizations of order 2 fails.
  const auto hexagon = gen::delpezzo6();
  AnalysisOptions opt;
  opt.verify_orders = {2};
  std::cout << '\n' << render_text(analyze(hexagon, "hexagon", opt));
  return 0;
}
