#include "torusopt/forms.hpp"

#include <algorithm>

namespace torusopt {

namespace {

Real max_abs(const VectorXr& v) { return v.size() == 0 ? 0.0 : v.cwiseAbs().maxCoeff(); }

std::vector<Real> to_std(const VectorXr& v) {
  return std::vector<Real>(v.data(), v.data() + v.size());
}

}  // namespace

OneForm exterior_derivative(const ToroidalComplex& complex, const VectorXr& f) {
  OneForm out;
  out.side = FormSide::primal;
  out.values.resize(complex.num_edges());
  for (int e = 0; e < complex.num_edges(); ++e) {
    const EdgeRecord& rec = complex.edges[static_cast<size_t>(e)];
    out.values[e] = f[rec.head] - f[rec.tail];
  }
  return out;
}

bool is_closed(const ToroidalComplex& complex, const OneForm& form, ResidualReport* report) {
  const Real tolerance = tol::kResidualRel * std::max<Real>(1, max_abs(form.values));
  ResidualReport local;
  for (int f = 0; f < complex.num_faces(); ++f) {
    Real sum = 0;
    for (const SignedSlot& s : complex.faces[static_cast<size_t>(f)])
      sum += s.sign * form.values[s.edge];
    if (std::abs(sum) > local.max_residual) {
      local.max_residual = std::abs(sum);
      local.worst_index = f;
    }
  }
  if (report) *report = local;
  return local.max_residual <= tolerance;
}

bool is_coclosed(const ToroidalComplex& complex, const EdgeWeights& weights, const OneForm& form,
                 ResidualReport* report) {
  VectorXr sums = VectorXr::Zero(complex.num_vertices);
  for (int e = 0; e < complex.num_edges(); ++e) {
    const EdgeRecord& rec = complex.edges[static_cast<size_t>(e)];
    const Real flux = weights.c[e] * form.values[e];
    sums[rec.tail] += flux;
    sums[rec.head] -= flux;
  }
  ResidualReport local;
  for (int v = 0; v < complex.num_vertices; ++v)
    if (std::abs(sums[v]) > local.max_residual) {
      local.max_residual = std::abs(sums[v]);
      local.worst_index = v;
    }
  if (report) *report = local;
  const Real scale = std::max<Real>(1, max_abs(form.values) * std::max<Real>(1, max_abs(weights.c)));
  return local.max_residual <= tol::kResidualRel * scale;
}

PeriodPair periods(const ToroidalComplex& complex, const OneForm& form) {
  return periods(complex, build_tree_cotree(complex), form);
}

PeriodPair periods(const ToroidalComplex& complex, const TreeCotree& tree, const OneForm& form) {
  auto result = integrate_with_periods<Real>(complex, tree, to_std(form.values), max_abs(form.values));
  if (!result.consistent)
    throw FormError("form is not closed: period defect residual " + std::to_string(result.max_residual));
  return {result.period_a, result.period_b};
}

OneForm hodge_star(const EdgeWeights& weights, const OneForm& form) {
  OneForm out;
  if (form.side == FormSide::primal) {
    out.side = FormSide::dual;
    out.values = weights.c.cwiseProduct(form.values);
  } else {
    // Landing on the double dual reverses every edge, hence the sign.
    out.side = FormSide::primal;
    out.values = -form.values.cwiseQuotient(weights.c);
  }
  return out;
}

Real pairing(const OneForm& closed_primal, const OneForm& coclosed) {
  if (closed_primal.side != FormSide::primal)
    throw FormError("pairing: first argument must be a primal 1-form");
  if (closed_primal.values.size() != coclosed.values.size())
    throw FormError("pairing: forms live on different complexes");
  return closed_primal.values.dot(coclosed.values);
}

std::optional<VectorXr> potential(const ToroidalComplex& complex, const OneForm& form) {
  TreeCotree tree = build_tree_cotree(complex);
  auto result = integrate_with_periods<Real>(complex, tree, to_std(form.values), max_abs(form.values));
  if (!result.consistent) return std::nullopt;
  const Real tolerance = tol::kResidualRel * std::max<Real>(1, max_abs(form.values));
  if (std::abs(result.period_a) > tolerance || std::abs(result.period_b) > tolerance) return std::nullopt;
  VectorXr f(complex.num_vertices);
  for (int v = 0; v < complex.num_vertices; ++v) f[v] = result.potential[static_cast<size_t>(v)];
  return f;
}

}  // namespace torusopt
