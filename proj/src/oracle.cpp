#include "torusopt/oracle.hpp"

#include <Eigen/Cholesky>

#include <cmath>
#include <random>

#include "torusopt/errors.hpp"
#include "torusopt/tolerances.hpp"

namespace torusopt {

namespace {

// Exact equilibrium solve at fixed tau, assembled directly from the
// complex. Positions are pinned at vertex 0.
struct EquilibriumSolver {
  const ToroidalComplex* complex;
  const EdgeWeights* weights;
  Eigen::LDLT<MatrixXr> factor;
  std::vector<int> column;  // vertex -> reduced column, -1 at the pin

  EquilibriumSolver(const ToroidalComplex& c, const EdgeWeights& w) : complex(&c), weights(&w) {
    const int nv = c.num_vertices;
    column.assign(static_cast<size_t>(nv), -1);
    for (int v = 1; v < nv; ++v) column[static_cast<size_t>(v)] = v - 1;
    MatrixXr lap = MatrixXr::Zero(nv - 1, nv - 1);
    for (int e = 0; e < c.num_edges(); ++e) {
      const EdgeRecord& rec = c.edges[static_cast<size_t>(e)];
      if (rec.tail == rec.head) continue;
      const Real ce = w.c[e];
      const int ct = column[static_cast<size_t>(rec.tail)];
      const int ch = column[static_cast<size_t>(rec.head)];
      if (ct >= 0) lap(ct, ct) += ce;
      if (ch >= 0) lap(ch, ch) += ce;
      if (ct >= 0 && ch >= 0) {
        lap(ct, ch) -= ce;
        lap(ch, ct) -= ce;
      }
    }
    if (nv > 1) factor.compute(lap);
  }

  // Positions (pinned at 0) and the energy of the equilibrium at tau.
  Real energy(const Modulus& tau, std::vector<Complex>* positions_out = nullptr) const {
    const ToroidalComplex& c = *complex;
    const int nv = c.num_vertices;
    const Complex t1 = tau.t1(), t2 = tau.t2();

    std::vector<Complex> deck(static_cast<size_t>(c.num_edges()));
    for (int e = 0; e < c.num_edges(); ++e) {
      const LabelVec& l = c.edges[static_cast<size_t>(e)].label;
      deck[static_cast<size_t>(e)] = static_cast<Real>(l.x()) * t1 + static_cast<Real>(l.y()) * t2;
    }

    std::vector<Complex> pos(static_cast<size_t>(nv), Complex(0, 0));
    if (nv > 1) {
      VectorX<Complex> rhs = VectorX<Complex>::Zero(nv - 1);
      for (int e = 0; e < c.num_edges(); ++e) {
        const EdgeRecord& rec = c.edges[static_cast<size_t>(e)];
        if (rec.tail == rec.head) continue;
        const Complex flux = weights->c[e] * deck[static_cast<size_t>(e)];
        const int ct = column[static_cast<size_t>(rec.tail)];
        const int ch = column[static_cast<size_t>(rec.head)];
        if (ct >= 0) rhs[ct] += flux;
        if (ch >= 0) rhs[ch] -= flux;
      }
      const VectorXr re = factor.solve(rhs.real());
      const VectorXr im = factor.solve(rhs.imag());
      for (int v = 1; v < nv; ++v) pos[static_cast<size_t>(v)] = Complex(re[v - 1], im[v - 1]);
    }

    Real sum = 0;
    for (int e = 0; e < c.num_edges(); ++e) {
      const EdgeRecord& rec = c.edges[static_cast<size_t>(e)];
      const Complex step = pos[static_cast<size_t>(rec.head)] + deck[static_cast<size_t>(e)] -
                           pos[static_cast<size_t>(rec.tail)];
      sum += weights->c[e] * std::norm(step);
    }
    if (positions_out) *positions_out = std::move(pos);
    return 0.5 * sum;
  }
};

struct DescentOutcome {
  Real re = 0, im = 1;
  Real energy = 0;
  Real grad_norm = 0;
  int iterations = 0;
  bool boundary_escape = false;
};

DescentOutcome descend(const EquilibriumSolver& solver, Real re0, Real im0) {
  DescentOutcome out;
  Real re = re0, im = im0;
  Real energy = solver.energy(Modulus(re, im));
  const int max_iterations = 500;
  const Real min_im = 1e-9;

  for (int iter = 0; iter < max_iterations; ++iter) {
    out.iterations = iter + 1;
    const Real h = 1e-5 * std::max<Real>(1, std::hypot(re, im));
    auto value = [&](Real x, Real y) { return solver.energy(Modulus(x, std::max(y, min_im))); };
    const Real epp = value(re + h, im), epm = value(re - h, im);
    const Real eqp = value(re, im + h), eqm = value(re, im - h);
    const Real gx = (epp - epm) / (2 * h);
    const Real gy = (eqp - eqm) / (2 * h);
    out.grad_norm = std::hypot(gx, gy);
    if (out.grad_norm < tol::kOracleGrad) break;

    const Real hxx = (epp - 2 * energy + epm) / (h * h);
    const Real hyy = (eqp - 2 * energy + eqm) / (h * h);
    const Real hxy = (value(re + h, im + h) - value(re + h, im - h) - value(re - h, im + h) +
                      value(re - h, im - h)) /
                     (4 * h * h);

    Real sx, sy;
    const Real det = hxx * hyy - hxy * hxy;
    if (det > 0 && hxx > 0) {
      sx = -(hyy * gx - hxy * gy) / det;
      sy = -(hxx * gy - hxy * gx) / det;
    } else {
      const Real scale = std::max<Real>(1, out.grad_norm);
      sx = -gx / scale;
      sy = -gy / scale;
    }

    Real step = 1.0;
    bool moved = false;
    for (int back = 0; back < 40; ++back) {
      const Real nre = re + step * sx;
      const Real nim = im + step * sy;
      if (nim > min_im) {
        const Real trial = solver.energy(Modulus(nre, nim));
        if (trial < energy) {
          re = nre;
          im = nim;
          energy = trial;
          moved = true;
          break;
        }
      }
      step *= 0.5;
    }
    if (!moved) break;  // no descent direction left at this resolution
  }

  out.re = re;
  out.im = im;
  out.energy = energy;
  out.boundary_escape = im < 1e-6;
  return out;
}

}  // namespace

OracleResult minimize_energy(const ToroidalComplex& complex, const EdgeWeights& weights,
                             const Modulus& tau0, std::uint64_t seed) {
  EquilibriumSolver solver(complex, weights);

  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<Real> shift(-0.3, 0.3);
  std::uniform_real_distribution<Real> stretch(-0.5, 0.5);

  std::vector<DescentOutcome> runs;
  runs.push_back(descend(solver, tau0.re(), tau0.im()));
  for (int start = 1; start < 3; ++start) {
    const Real re = tau0.re() + shift(rng);
    const Real im = tau0.im() * std::exp(stretch(rng));
    runs.push_back(descend(solver, re, im));
  }

  const DescentOutcome* best = &runs[0];
  for (const auto& run : runs)
    if (run.energy < best->energy) best = &run;

  OracleResult result;
  result.boundary_escape = best->boundary_escape;
  if (result.boundary_escape)
    throw OracleError("boundary escape: minimizer ran toward a degenerate torus");

  result.starts_agree = true;
  for (const auto& run : runs) {
    if (std::abs(run.re - best->re) > 1e-6 || std::abs(run.im - best->im) > 1e-6 ||
        std::abs(run.energy - best->energy) > 1e-6 * std::max<Real>(1, std::abs(best->energy)))
      result.starts_agree = false;
  }

  result.tau_star = Modulus(best->re, best->im);
  result.energy = solver.energy(result.tau_star, &result.positions);
  result.iterations = best->iterations;
  result.gradient_norm = best->grad_norm;
  result.converged = best->grad_norm < 1e-6 && result.starts_agree;
  return result;
}

Instance random_instance(int num_vertices, std::uint64_t seed) {
  if (num_vertices < 1) throw Error("random_instance: need at least one vertex");
  int rows = 1;
  for (int r = static_cast<int>(std::sqrt(static_cast<Real>(num_vertices))); r >= 1; --r)
    if (num_vertices % r == 0) {
      rows = r;
      break;
    }
  const int cols = num_vertices / rows;

  Instance inst = triangulated_grid_torus(rows, cols);
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> pick_edge(0, inst.complex.num_edges() - 1);
  const int attempts = 2 * inst.complex.num_faces();
  for (int i = 0; i < attempts; ++i) flip_edge(inst.complex, pick_edge(rng));

  std::uniform_real_distribution<Real> log_weight(std::log(0.1), std::log(10.0));
  VectorXr w(inst.complex.num_edges());
  for (int e = 0; e < inst.complex.num_edges(); ++e) w[e] = std::exp(log_weight(rng));
  inst.weights = EdgeWeights::from(w);
  return inst;
}

}  // namespace torusopt
