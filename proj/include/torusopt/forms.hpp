#pragma once

#include <cmath>
#include <optional>
#include <vector>

#include "torusopt/errors.hpp"
#include "torusopt/tolerances.hpp"
#include "torusopt/topology.hpp"
#include "torusopt/types.hpp"

namespace torusopt {

enum class FormSide { primal, dual };

/// Discrete 1-form: one value per edge along its stored orientation, so the
/// value along the reversed edge is the negative. The side says which cell
/// decomposition the closedness test runs over.
struct OneForm {
  FormSide side = FormSide::primal;
  VectorXr values;
};

struct PeriodPair {
  Real a = 0;
  Real b = 0;
  Vector2r vec() const { return Vector2r(a, b); }
};

/// df on edges: f(head) - f(tail). Closed with vanishing periods.
OneForm exterior_derivative(const ToroidalComplex& complex, const VectorXr& f);

struct ResidualReport {
  Real max_residual = 0;
  int worst_index = -1;  // face (closedness) or vertex (co-closedness)
};

/// Signed boundary sum over every face is zero, to 1e-10 relative.
bool is_closed(const ToroidalComplex& complex, const OneForm& form, ResidualReport* report = nullptr);

/// Weighted vertex sums are zero: sum_j c_ij w_ij = 0 at every vertex.
/// Pass unit weights for the plain dual-closedness test.
bool is_coclosed(const ToroidalComplex& complex, const EdgeWeights& weights, const OneForm& form,
                 ResidualReport* report = nullptr);

/// Periods along the two marking cycles, via spanning-tree integration:
/// every cotree edge defect must match A*dx + B*dy of its cycle class.
/// Throws FormError when the defect system is inconsistent (form not closed).
PeriodPair periods(const ToroidalComplex& complex, const OneForm& form);
PeriodPair periods(const ToroidalComplex& complex, const TreeCotree& tree, const OneForm& form);

/// Hodge star: value c_e * w_e on the dual edge of e. Starring a dual-side
/// form lands on the double dual (primal with reversed orientations), i.e.
/// values -w_e / c_e on primal edges.
OneForm hodge_star(const EdgeWeights& weights, const OneForm& form);

/// Stokes-type pairing sum_e w_e h_e of a closed primal form against a
/// co-closed form; equals the bracket A*Bt - B*At of their periods.
Real pairing(const OneForm& closed_primal, const OneForm& coclosed);

/// Potential f with df == form, when the form is exact; nullopt otherwise.
std::optional<VectorXr> potential(const ToroidalComplex& complex, const OneForm& form);

// ---------------------------------------------------------------------------
// Generic integration used by both real periods and the complex-valued
// conjugate-embedding translations.

template <typename T>
struct IntegrationResult {
  std::vector<T> potential;  // per vertex, 0 at the tree root
  T period_a{};
  T period_b{};
  Real max_residual = 0;  // worst defect mismatch over cotree edges
  bool consistent = false;
};

template <typename T>
IntegrationResult<T> integrate_with_periods(const ToroidalComplex& complex, const TreeCotree& tree,
                                            const std::vector<T>& edge_values, Real value_scale) {
  IntegrationResult<T> out;
  out.potential.assign(static_cast<size_t>(complex.num_vertices), T{});
  for (int v : tree.bfs_order) {
    if (v == tree.root) continue;
    const int e = tree.parent_edge[static_cast<size_t>(v)];
    const EdgeRecord& rec = complex.edges[static_cast<size_t>(e)];
    const int parent = tree.parent_sign[static_cast<size_t>(v)] > 0 ? rec.tail : rec.head;
    const T step = tree.parent_sign[static_cast<size_t>(v)] > 0 ? edge_values[static_cast<size_t>(e)]
                                                                : -edge_values[static_cast<size_t>(e)];
    out.potential[static_cast<size_t>(v)] = out.potential[static_cast<size_t>(parent)] + step;
  }

  // Defect of each cotree edge against its integer cycle class.
  const size_t m = tree.cotree.size();
  std::vector<T> defect(m);
  for (size_t k = 0; k < m; ++k) {
    const int e = tree.cotree[k];
    const EdgeRecord& rec = complex.edges[static_cast<size_t>(e)];
    defect[k] = edge_values[static_cast<size_t>(e)] -
                (out.potential[static_cast<size_t>(rec.head)] - out.potential[static_cast<size_t>(rec.tail)]);
  }

  // Pick a well-conditioned full-rank pair of cycle classes.
  if (m < 2) throw FormError("period system is rank deficient");
  size_t best = 0;
  long long best_norm = -1;
  for (size_t k = 0; k < m; ++k) {
    const LabelVec& l = tree.cycle_class[k];
    long long n = static_cast<long long>(l.x()) * l.x() + static_cast<long long>(l.y()) * l.y();
    if (n > best_norm) {
      best_norm = n;
      best = k;
    }
  }
  size_t partner = best;
  long long best_det = 0;
  for (size_t k = 0; k < m; ++k) {
    const LabelVec& a = tree.cycle_class[best];
    const LabelVec& b = tree.cycle_class[k];
    long long det = static_cast<long long>(a.x()) * b.y() - static_cast<long long>(a.y()) * b.x();
    if (std::abs(det) > std::abs(best_det)) {
      best_det = det;
      partner = k;
    }
  }
  if (best_det == 0) throw FormError("period system is rank deficient");

  const LabelVec& la = tree.cycle_class[best];
  const LabelVec& lb = tree.cycle_class[partner];
  const Real det = static_cast<Real>(best_det);
  out.period_a = (defect[best] * static_cast<Real>(lb.y()) - defect[partner] * static_cast<Real>(la.y())) / det;
  out.period_b = (defect[partner] * static_cast<Real>(la.x()) - defect[best] * static_cast<Real>(lb.x())) / det;

  out.max_residual = 0;
  for (size_t k = 0; k < m; ++k) {
    const LabelVec& l = tree.cycle_class[k];
    const T predicted = out.period_a * static_cast<Real>(l.x()) + out.period_b * static_cast<Real>(l.y());
    out.max_residual = std::max(out.max_residual, static_cast<Real>(std::abs(defect[k] - predicted)));
  }
  out.consistent = out.max_residual <= tol::kResidualRel * std::max<Real>(1, value_scale);
  return out;
}

}  // namespace torusopt
