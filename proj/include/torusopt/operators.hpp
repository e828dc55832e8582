#pragma once

#include <Eigen/Cholesky>

#include "torusopt/forms.hpp"
#include "torusopt/topology.hpp"
#include "torusopt/types.hpp"

namespace torusopt {

/// Incidence matrix, weighted Laplacian and the reduced blocks used by the
/// harmonic solve, assembled once per (complex, weights, root).
struct OperatorBundle {
  ToroidalComplex complex;
  EdgeWeights weights;
  int root = 0;

  MatrixXr incidence;          // E x V, (df)_e = f(head) - f(tail)
  MatrixXr label_matrix;       // E x 2, columns are the two marking 1-forms
  MatrixXr laplacian;          // V x V, d^T C d
  MatrixXr incidence_reduced;  // root column removed
  MatrixXr laplacian_reduced;
  Eigen::LDLT<MatrixXr> laplacian_reduced_ldlt;

  int num_vertices() const { return complex.num_vertices; }
  int num_edges() const { return complex.num_edges(); }
};

OperatorBundle build_operators(const ToroidalComplex& complex, const EdgeWeights& weights, int root = 0);

/// The unique closed and co-closed 1-form with the given periods:
/// w = df + M p with the reduced Laplace system fixing f away from the root.
/// Throws DegenerateWeightsError when the reduced solve fails.
OneForm harmonic_form(const OperatorBundle& bundle, const Vector2r& target_periods);

/// Product of eigenvalues above 1e-9 * lambda_max of a symmetric positive
/// semidefinite matrix. The kernel dimension found must match the expected
/// one; anything else throws InternalError.
Real det0(const MatrixXr& sym_psd, int expected_kernel_dim);

struct EnergyRoutes {
  Real eigenvalue_route = 0;  // sqrt of det0 ratio on the full matrices
  Real reduced_route = 0;     // sqrt of plain determinant ratio on reduced blocks
};

/// Minimal Dirichlet energy from the determinant ratio, computed over both
/// routes; they must agree to 1e-7 relative or InternalError is thrown.
EnergyRoutes k_energy_routes(const OperatorBundle& bundle);
Real k_from_det_ratio(const OperatorBundle& bundle);

struct NondegeneracyCheck {
  bool nondegenerate = false;
  Real min_pivot = 0;
  int pivot_index = -1;
  Real scale = 0;
};

/// True iff the Gram matrix of the closed-form basis [d_red | M] under C is
/// positive definite (all pivots above 1e-12 * scale).
NondegeneracyCheck check_nondegenerate(const OperatorBundle& bundle);

}  // namespace torusopt
