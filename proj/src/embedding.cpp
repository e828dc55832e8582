#include "torusopt/embedding.hpp"

#include <algorithm>
#include <cmath>

namespace torusopt {

namespace {

Real max_abs(const std::vector<Complex>& v) {
  Real m = 0;
  for (const Complex& z : v) m = std::max(m, std::abs(z));
  return m;
}

/// Cross product of consecutive boundary steps, with a degenerate band.
FaceShapeVerdict classify_faces(const ToroidalComplex& c, const std::vector<Complex>& edge_step) {
  FaceShapeVerdict verdict;
  for (int f = 0; f < c.num_faces(); ++f) {
    const auto& face = c.faces[static_cast<size_t>(f)];
    const size_t n = face.size();
    Real scale_sq = 0;
    std::vector<Complex> steps(n);
    for (size_t i = 0; i < n; ++i) {
      const SignedSlot& s = face[i];
      steps[i] = static_cast<Real>(s.sign) * edge_step[static_cast<size_t>(s.edge)];
      scale_sq = std::max(scale_sq, std::norm(steps[i]));
    }
    const Real band = tol::kConvexityRel * std::max<Real>(scale_sq, 1e-300);
    bool face_degenerate = false;
    bool any_negative = false;
    bool any_positive = false;
    for (size_t i = 0; i < n; ++i) {
      const Complex& a = steps[i];
      const Complex& b = steps[(i + 1) % n];
      const Real cross = a.real() * b.imag() - a.imag() * b.real();
      if (std::abs(cross) <= band)
        face_degenerate = true;
      else if (cross < 0)
        any_negative = true;
      else
        any_positive = true;
    }
    if (face_degenerate) {
      verdict.degenerate = true;
      if (verdict.worst_face < 0) verdict.worst_face = f;
    }
    if (any_negative && any_positive) {
      verdict.convex = false;
      verdict.worst_face = f;
    }
    if (any_negative && !any_positive) {
      verdict.positively_oriented = false;
      verdict.worst_face = f;
    }
  }
  return verdict;
}

}  // namespace

TorusEmbedding harmonic_embedding(const OperatorBundle& bundle, const Modulus& tau, int base_vertex) {
  const Real root_im = std::sqrt(tau.im());
  const OneForm re_part = harmonic_form(bundle, Vector2r(1.0 / root_im, tau.re() / root_im));
  const OneForm im_part = harmonic_form(bundle, Vector2r(0.0, root_im));

  TorusEmbedding emb;
  emb.tau = tau;
  emb.base_vertex = base_vertex;
  emb.t1 = tau.t1();
  emb.t2 = tau.t2();
  const ToroidalComplex& c = bundle.complex;
  emb.displacement.resize(static_cast<size_t>(c.num_edges()));
  for (int e = 0; e < c.num_edges(); ++e)
    emb.displacement[static_cast<size_t>(e)] = Complex(re_part.values[e], im_part.values[e]);

  // The displacement minus the deck translation of the label is exact;
  // integrate it over a spanning tree rooted at the base vertex.
  std::vector<Complex> exact_part(static_cast<size_t>(c.num_edges()));
  for (int e = 0; e < c.num_edges(); ++e) {
    const LabelVec& label = c.edges[static_cast<size_t>(e)].label;
    exact_part[static_cast<size_t>(e)] = emb.displacement[static_cast<size_t>(e)] -
                                         (static_cast<Real>(label.x()) * emb.t1 +
                                          static_cast<Real>(label.y()) * emb.t2);
  }
  TreeCotree tree = build_tree_cotree(c, base_vertex);
  auto integral = integrate_with_periods<Complex>(c, tree, exact_part, max_abs(exact_part));
  if (!integral.consistent || std::abs(integral.period_a) + std::abs(integral.period_b) >
                                  tol::kHarmonicRel * std::max<Real>(1, max_abs(exact_part)))
    throw InternalError("harmonic embedding does not close up");
  emb.positions = std::move(integral.potential);
  return emb;
}

Real dirichlet_energy(const TorusEmbedding& emb, const EdgeWeights& weights) {
  Real sum = 0;
  for (size_t e = 0; e < emb.displacement.size(); ++e)
    sum += weights.c[static_cast<Eigen::Index>(e)] * std::norm(emb.displacement[e]);
  return 0.5 * sum;
}

DualEmbedding conjugate_embedding(const DualComplex& dual, const TorusEmbedding& emb,
                                  const EdgeWeights& weights, std::optional<Real> scale_k) {
  const ToroidalComplex& d = dual.complex;
  std::vector<Complex> conjugate(static_cast<size_t>(d.num_edges()));
  for (int e = 0; e < d.num_edges(); ++e)
    conjugate[static_cast<size_t>(e)] =
        Complex(0, 1) * weights.c[e] * emb.displacement[static_cast<size_t>(e)];

  // Remove the deck part so the remainder is exact over the dual complex,
  // then fit the two translations from the cotree defects.
  TreeCotree tree = build_tree_cotree(d, 0);
  auto integral = integrate_with_periods<Complex>(d, tree, conjugate, max_abs(conjugate));
  if (integral.max_residual > 1e-8 * std::max<Real>(1, max_abs(conjugate)))
    throw FormError("conjugate integration inconsistent: input embedding is not harmonic");

  DualEmbedding out;
  out.p1 = integral.period_a;
  out.p2 = integral.period_b;
  // integrate_with_periods leaves the raw tree integral in `potential`;
  // subtract the fitted deck part accumulated along each tree path.
  out.positions.assign(static_cast<size_t>(d.num_vertices), Complex(0, 0));
  for (int v : tree.bfs_order) {
    if (v == tree.root) continue;
    const int e = tree.parent_edge[static_cast<size_t>(v)];
    const EdgeRecord& rec = d.edges[static_cast<size_t>(e)];
    const int parent = tree.parent_sign[static_cast<size_t>(v)] > 0 ? rec.tail : rec.head;
    const Complex deck = out.p1 * static_cast<Real>(rec.label.x()) + out.p2 * static_cast<Real>(rec.label.y());
    const Complex step = conjugate[static_cast<size_t>(e)] - deck;
    out.positions[static_cast<size_t>(v)] = out.positions[static_cast<size_t>(parent)] +
                                            (tree.parent_sign[static_cast<size_t>(v)] > 0 ? step : -step);
  }
  if (scale_k) {
    out.scale_k = scale_k;
    out.normalized.resize(out.positions.size());
    for (size_t i = 0; i < out.positions.size(); ++i) out.normalized[i] = out.positions[i] / *scale_k;
  }
  return out;
}

DelaunayReport delaunay_report(const ToroidalComplex& complex, const DualComplex& dual,
                               const TorusEmbedding& emb, const DualEmbedding& demb,
                               const EdgeWeights& weights, Real k) {
  DelaunayReport report;
  const ToroidalComplex& d = dual.complex;
  const int ne = complex.num_edges();

  std::vector<Complex> dual_step(static_cast<size_t>(ne));
  for (int e = 0; e < ne; ++e) {
    const EdgeRecord& rec = d.edges[static_cast<size_t>(e)];
    dual_step[static_cast<size_t>(e)] =
        demb.positions[static_cast<size_t>(rec.head)] - demb.positions[static_cast<size_t>(rec.tail)] +
        demb.p1 * static_cast<Real>(rec.label.x()) + demb.p2 * static_cast<Real>(rec.label.y());
  }

  report.edge_ratio.resize(static_cast<size_t>(ne));
  for (int e = 0; e < ne; ++e) {
    const Complex primal = emb.displacement[static_cast<size_t>(e)];
    const Complex normalized_step = dual_step[static_cast<size_t>(e)] / k;
    const Complex ratio = k * normalized_step / (Complex(0, 1) * primal);
    report.edge_ratio[static_cast<size_t>(e)] = ratio;
    const Real imag_err = std::abs(ratio.imag()) / std::max<Real>(1, std::abs(ratio));
    report.max_ratio_imag = std::max(report.max_ratio_imag, imag_err);
    if (imag_err > tol::kHarmonicRel) report.ratios_real = false;
    if (!(ratio.real() > 0)) report.ratios_positive = false;
    const Real weight = weights.c[e];
    const Real rel = std::abs(ratio.real() - weight) / std::max<Real>(std::abs(weight), 1e-12);
    report.max_ratio_error = std::max(report.max_ratio_error, rel);
    if (rel > tol::kDelaunayRatioRel) report.ratios_match_weights = false;
  }

  report.primal_faces = classify_faces(complex, emb.displacement);
  report.dual_faces = classify_faces(d, dual_step);

  report.period_defect = reciprocality_defect(demb.p1, demb.p2, emb.tau);
  report.periods_proportional = report.period_defect < tol::kDelaunayDefect;

  report.pass = report.ratios_real && report.ratios_positive && report.ratios_match_weights &&
                report.primal_faces.convex && report.primal_faces.positively_oriented &&
                report.dual_faces.convex && report.dual_faces.positively_oriented &&
                report.periods_proportional;
  return report;
}

}  // namespace torusopt
