#pragma once

#include <string>

#include "torusopt/embedding.hpp"

namespace torusopt {

/// One fundamental domain of the torus: the domain parallelogram outline,
/// every primal edge as a solid segment and every dual edge as a dashed
/// segment, clipped to the domain. Exactly one <line> element per edge and
/// side.
std::string render_svg(const ToroidalComplex& complex, const DualComplex& dual,
                       const TorusEmbedding& emb, const DualEmbedding& demb);

}  // namespace torusopt
