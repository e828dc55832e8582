#pragma once

#include <string>

#include "torusopt/topology.hpp"

namespace torusopt {

/// Decode the graph file format:
/// {"num_vertices": n,
///  "edges": [{"id", "tail", "head", "dx", "dy", "weight"}, ...],
///  "faces": [[+-(id+1), ...], ...]}
/// Throws ParseError on malformed input; structural problems are left to
/// validate_complex.
RawComplex parse_raw_complex(const std::string& text);

std::string write_complex_json(const ToroidalComplex& complex, const EdgeWeights& weights);

/// FNV-1a of the raw bytes, as a fixed-width hex string.
std::string digest_hex(const std::string& bytes);

/// Fixed 17-significant-digit decimal rendering used by every report.
std::string format_real(Real value);

}  // namespace torusopt
