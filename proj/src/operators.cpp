#include "torusopt/operators.hpp"

#include <Eigen/Eigenvalues>

#include <cmath>
#include <limits>

namespace torusopt {

namespace {

MatrixXr gram_of_closed_basis(const OperatorBundle& b) {
  const Eigen::Index nr = b.incidence_reduced.cols();
  MatrixXr basis(b.num_edges(), nr + 2);
  if (nr > 0) basis.leftCols(nr) = b.incidence_reduced;
  basis.rightCols(2) = b.label_matrix;
  return basis.transpose() * b.weights.c.asDiagonal() * basis;
}

}  // namespace

OperatorBundle build_operators(const ToroidalComplex& complex, const EdgeWeights& weights, int root) {
  OperatorBundle b;
  b.complex = complex;
  b.weights = weights;
  b.root = root;

  const int nv = complex.num_vertices;
  const int ne = complex.num_edges();
  b.incidence = MatrixXr::Zero(ne, nv);
  b.label_matrix = MatrixXr::Zero(ne, 2);
  for (int e = 0; e < ne; ++e) {
    const EdgeRecord& rec = complex.edges[static_cast<size_t>(e)];
    b.incidence(e, rec.head) += 1;
    b.incidence(e, rec.tail) -= 1;
    b.label_matrix(e, 0) = rec.label.x();
    b.label_matrix(e, 1) = rec.label.y();
  }
  b.laplacian = b.incidence.transpose() * weights.c.asDiagonal() * b.incidence;

  b.incidence_reduced.resize(ne, nv - 1);
  int col = 0;
  for (int v = 0; v < nv; ++v) {
    if (v == root) continue;
    b.incidence_reduced.col(col++) = b.incidence.col(v);
  }
  b.laplacian_reduced = b.incidence_reduced.transpose() * weights.c.asDiagonal() * b.incidence_reduced;
  b.laplacian_reduced_ldlt.compute(b.laplacian_reduced);
  return b;
}

OneForm harmonic_form(const OperatorBundle& b, const Vector2r& target_periods) {
  const int nv = b.num_vertices();
  VectorXr f = VectorXr::Zero(nv);
  if (nv > 1) {
    const VectorXr rhs =
        b.incidence_reduced.transpose() * (b.weights.c.asDiagonal() * (b.label_matrix * target_periods));
    const VectorXr f_red = b.laplacian_reduced_ldlt.solve(-rhs);
    const Real scale = std::max<Real>(1, rhs.cwiseAbs().maxCoeff());
    if (!f_red.allFinite() || (b.laplacian_reduced * f_red + rhs).cwiseAbs().maxCoeff() > 1e-8 * scale)
      throw DegenerateWeightsError("degenerate weights: reduced harmonic system is singular");
    int col = 0;
    for (int v = 0; v < nv; ++v) {
      if (v == b.root) continue;
      f[v] = f_red[col++];
    }
  }

  OneForm w;
  w.side = FormSide::primal;
  w.values = b.incidence * f + b.label_matrix * target_periods;

  // Constructive postcondition: co-closed at every vertex.
  ResidualReport rep;
  if (!is_coclosed(b.complex, b.weights, w, &rep))
    throw DegenerateWeightsError("degenerate weights: harmonic residual " + std::to_string(rep.max_residual) +
                                 " at vertex " + std::to_string(rep.worst_index));
  return w;
}

Real det0(const MatrixXr& sym_psd, int expected_kernel_dim) {
  if (sym_psd.rows() == 0) {
    if (expected_kernel_dim != 0) throw InternalError("det0: empty matrix cannot have a kernel");
    return 1.0;
  }
  Eigen::SelfAdjointEigenSolver<MatrixXr> solver(sym_psd, Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) throw InternalError("det0: eigenvalue solve failed");
  const VectorXr ev = solver.eigenvalues();
  const Real lambda_max = ev.cwiseAbs().maxCoeff();
  const Real threshold = tol::kEigZeroRel * lambda_max;
  Real product = 1.0;
  int kernel = 0;
  for (Eigen::Index i = 0; i < ev.size(); ++i) {
    if (std::abs(ev[i]) <= threshold)
      ++kernel;
    else
      product *= ev[i];
  }
  if (kernel != expected_kernel_dim)
    throw InternalError("det0: found kernel dimension " + std::to_string(kernel) + ", expected " +
                        std::to_string(expected_kernel_dim));
  return product;
}

EnergyRoutes k_energy_routes(const OperatorBundle& b) {
  EnergyRoutes routes;

  // Eigenvalue route on the full matrices; both have a one-dimensional
  // kernel (constants, and constants with zero periods).
  MatrixXr extended(b.num_edges(), b.num_vertices() + 2);
  extended.leftCols(b.num_vertices()) = b.incidence;
  extended.rightCols(2) = b.label_matrix;
  const MatrixXr gram_full = extended.transpose() * b.weights.c.asDiagonal() * extended;
  const Real num_full = det0(gram_full, 1);
  const Real den_full = det0(b.laplacian, 1);
  routes.eigenvalue_route = std::sqrt(num_full / den_full);

  // Reduced route: the 0x0 determinant of the one-vertex case is 1.
  const MatrixXr gram_reduced = gram_of_closed_basis(b);
  const Real num_red = gram_reduced.determinant();
  const Real den_red = b.laplacian_reduced.rows() == 0 ? 1.0 : b.laplacian_reduced.determinant();
  routes.reduced_route = std::sqrt(num_red / den_red);

  if (!std::isfinite(routes.eigenvalue_route) || !std::isfinite(routes.reduced_route))
    throw DegenerateWeightsError("degenerate weights: energy determinant ratio is not positive");
  const Real gap = std::abs(routes.eigenvalue_route - routes.reduced_route) /
                   std::max(std::abs(routes.reduced_route), std::numeric_limits<Real>::min());
  if (gap > tol::kDetRouteRel)
    throw InternalError("energy routes disagree: eigenvalue " + std::to_string(routes.eigenvalue_route) +
                        " vs reduced " + std::to_string(routes.reduced_route));
  return routes;
}

Real k_from_det_ratio(const OperatorBundle& b) { return k_energy_routes(b).reduced_route; }

NondegeneracyCheck check_nondegenerate(const OperatorBundle& b) {
  const MatrixXr gram = gram_of_closed_basis(b);
  NondegeneracyCheck check;
  check.scale = gram.cwiseAbs().maxCoeff();
  const Real threshold = tol::kPivotRel * std::max<Real>(1, check.scale);

  Eigen::LDLT<MatrixXr> ldlt(gram);
  VectorXr pivots = ldlt.vectorD();
  Eigen::Index worst = 0;
  Real min_pivot = pivots.minCoeff(&worst);
  if (ldlt.info() == Eigen::Success && min_pivot > threshold) {
    check.nondegenerate = true;
    check.min_pivot = min_pivot;
    check.pivot_index = static_cast<int>(worst);
    return check;
  }

  // Borderline or indefinite: the eigenvalues are authoritative.
  Eigen::SelfAdjointEigenSolver<MatrixXr> solver(gram, Eigen::EigenvaluesOnly);
  Real min_eig = solver.eigenvalues().minCoeff(&worst);
  check.nondegenerate = min_eig > threshold;
  check.min_pivot = min_eig;
  check.pivot_index = static_cast<int>(worst);
  return check;
}

}  // namespace torusopt
