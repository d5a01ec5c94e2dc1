// Prints the bound chain for KG^r(K_n^k) and a colorful witness for an
// optimal colouring.  Usage: kneser_bounds [n k r p], C(n,k) <= 15.
#include <cstdlib>
#include <iostream>

#include "zpfan/report.hpp"

int main(int argc, char** argv) {
  int n = 6, k = 2, r = 2, p = 2;
  if (argc == 5) {
    n = std::atoi(argv[1]);
    k = std::atoi(argv[2]);
    r = std::atoi(argv[3]);
    p = std::atoi(argv[4]);
  } else if (argc != 1) {
    std::cerr << "usage: kneser_bounds [n k r p]\n";
    return 1;
  }
  try {
    const zpfan::Hypergraph f = zpfan::complete_hypergraph(n, k);
    // the index and cross-index searches grow quickly with the Kneser hypergraph
    if (f.edge_count() > 15) {
      std::cerr << "KG^r(K_n^k) has " << f.edge_count() << " vertices; this sample handles at most 15\n";
      return 1;
    }
    const zpfan::BoundsReport rep =
        zpfan::bounds_report(f, r, p, "K" + std::to_string(n) + "_" + std::to_string(k));
    std::cout << rep.table();

    if (r == p) {
      const zpfan::Hypergraph kg = zpfan::kneser(f, r).graph;
      const zpfan::ChromaticResult chi = zpfan::chromatic_number(kg);
      const int target = rep.entries[1].lower;  // |V(F)| - alt_p(F)
      const zpfan::ColorfulResult w = zpfan::find_colorful_balanced(kg, chi.witness, p, target);
      std::cout << "colorful witness for an optimal colouring: " << zpfan::to_string(w.status) << ", parts";
      for (zpfan::VertexSet part : w.witness.parts.parts) std::cout << " " << zpfan::format_set(part);
      std::cout << "\n";
    }
    return rep.consistent() ? 0 : 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
