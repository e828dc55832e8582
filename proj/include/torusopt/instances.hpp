#pragma once

#include "torusopt/topology.hpp"

namespace torusopt {

struct Instance {
  ToroidalComplex complex;
  EdgeWeights weights;
};

/// One vertex, three loop edges with deck translations (1,0), (1,1), (0,1),
/// two triangular faces. The smallest triangulated torus.
Instance one_vertex_torus(Real c1 = 1, Real c2 = 1, Real c3 = 1);

/// rows x cols grid of square faces; wrap-around edges carry the deck
/// translations.
Instance square_grid_torus(int rows, int cols, Real weight = 1);

/// rows x cols grid with every cell split along the up-right diagonal.
Instance triangulated_grid_torus(int rows, int cols, Real weight = 1);

/// Flip the diagonal of the two triangles adjacent to the given edge.
/// Returns false (complex untouched) when the flip would be invalid.
bool flip_edge(ToroidalComplex& complex, int edge);

}  // namespace torusopt
