#pragma once

#include <cstdint>

#include "torusopt/instances.hpp"
#include "torusopt/moduli.hpp"
#include "torusopt/topology.hpp"

namespace torusopt {

struct OracleResult {
  Modulus tau_star;
  Real energy = 0;
  std::vector<Complex> positions;
  int iterations = 0;
  Real gradient_norm = 0;
  bool converged = false;
  bool boundary_escape = false;
  bool starts_agree = true;
};

/// Brute-force minimization of the Dirichlet energy over vertex positions
/// and moduli: the inner step solves the straight-line equilibrium exactly
/// at fixed tau, the outer step runs damped Newton on the two torus
/// parameters with finite differences of the inner solve. Never touches the
/// response matrix or the closed-form energy. Three starts must agree.
OracleResult minimize_energy(const ToroidalComplex& complex, const EdgeWeights& weights,
                             const Modulus& tau0, std::uint64_t seed);

/// Deterministic random test instance: a triangulated grid torus with the
/// requested vertex count, randomized by validity-preserving edge flips,
/// with log-uniform positive weights in [0.1, 10].
Instance random_instance(int num_vertices, std::uint64_t seed);

}  // namespace torusopt
