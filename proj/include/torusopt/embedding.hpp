#pragma once

#include <optional>
#include <vector>

#include "torusopt/moduli.hpp"
#include "torusopt/operators.hpp"

namespace torusopt {

/// Straight-line harmonic realization into the flat torus of modulus tau,
/// lifted to the plane. Positions are pinned by base vertex -> 0; the
/// per-edge displacement is the head lift adjacent across the edge, seen
/// from the tail lift, so it includes the deck translation of the label.
struct TorusEmbedding {
  Modulus tau;
  int base_vertex = 0;
  std::vector<Complex> positions;     // per vertex
  std::vector<Complex> displacement;  // per edge
  Complex t1, t2;                     // deck translations
};

TorusEmbedding harmonic_embedding(const OperatorBundle& bundle, const Modulus& tau, int base_vertex = 0);

/// Half the weighted sum of squared edge lengths.
Real dirichlet_energy(const TorusEmbedding& emb, const EdgeWeights& weights);

/// Realization of the dual decomposition by the conjugate map: dual edges
/// are the primal edges rotated by 90 degrees and scaled by the weights.
struct DualEmbedding {
  std::vector<Complex> positions;  // per face, base face at 0
  Complex p1, p2;                  // deck translations of the conjugate lift
  std::optional<Real> scale_k;     // set when a normalized copy was requested
  std::vector<Complex> normalized; // positions / k when scale_k is set
};

/// Integrates i * c_e * displacement over the dual decomposition.
/// Throws FormError when integration is inconsistent (input not harmonic).
DualEmbedding conjugate_embedding(const DualComplex& dual, const TorusEmbedding& emb,
                                  const EdgeWeights& weights, std::optional<Real> scale_k = std::nullopt);

struct FaceShapeVerdict {
  bool convex = true;
  bool positively_oriented = true;
  bool degenerate = false;  // some corner is collinear; reported, not a failure
  int worst_face = -1;
};

struct DelaunayReport {
  bool pass = false;

  std::vector<Complex> edge_ratio;  // (k/i) * dual displacement / primal displacement
  Real max_ratio_imag = 0;          // orthogonality defect
  Real max_ratio_error = 0;         // worst relative deviation from the weight
  bool ratios_real = true;
  bool ratios_positive = true;
  bool ratios_match_weights = true;

  FaceShapeVerdict primal_faces;
  FaceShapeVerdict dual_faces;

  Real period_defect = 0;  // conjugate-translation proportionality defect
  bool periods_proportional = false;
};

/// Certifies the weighted-Delaunay characterization: per-edge dual/primal
/// ratios real, positive and equal to the weights; convex positively
/// oriented primal and dual faces; conjugate translations proportional to
/// the torus lattice.
DelaunayReport delaunay_report(const ToroidalComplex& complex, const DualComplex& dual,
                               const TorusEmbedding& emb, const DualEmbedding& demb,
                               const EdgeWeights& weights, Real k);

}  // namespace torusopt
