#include "torusopt/moduli.hpp"

#include <cmath>

namespace torusopt {

Matrix2r ResponseMatrix::energy_form() const {
  Matrix2r j;
  j << 0, 1, -1, 0;
  return j * entries;
}

ResponseMatrix response_matrix(const OperatorBundle& b) {
  const MatrixXr cm = b.weights.c.asDiagonal() * b.label_matrix;  // E x 2
  Matrix2r schur = b.label_matrix.transpose() * cm;
  if (b.incidence_reduced.cols() > 0) {
    const MatrixXr dtcm = b.incidence_reduced.transpose() * cm;  // (V-1) x 2
    const MatrixXr solved = b.laplacian_reduced_ldlt.solve(dtcm);
    const Real scale = std::max<Real>(1, dtcm.cwiseAbs().maxCoeff());
    if (!solved.allFinite() ||
        (b.laplacian_reduced * solved - dtcm).cwiseAbs().maxCoeff() > 1e-8 * scale)
      throw DegenerateWeightsError("degenerate weights: reduced harmonic system is singular");
    schur -= dtcm.transpose() * solved;
  }

  ResponseMatrix response;
  Matrix2r rot;
  rot << 0, -1, 1, 0;
  response.entries = rot * schur;

  const Real scale = std::max<Real>(1, response.entries.cwiseAbs().maxCoeff());
  if (std::abs(response.a() + response.d()) > tol::kHarmonicRel * scale)
    throw InternalError("response matrix lost its trace-free structure");
  return response;
}

Modulus::Modulus(Complex t) : tau(t) {
  if (!(t.imag() > 0)) throw Error("modulus must lie in the upper half plane");
}

OptimalStructure extract_modulus(const ResponseMatrix& response) {
  const Real a = response.a(), b = response.b(), c = response.c();
  const Real k_squared = -b * c - a * a;
  if (!(b < 0) || !(c > 0) || !(k_squared > 0))
    throw ResponseMatrixError("not a response matrix of a non-degenerate network");
  OptimalStructure opt;
  opt.k_c = std::sqrt(k_squared);
  opt.tau_c = Modulus(-a / b, -opt.k_c / b);
  opt.response = response.entries;
  return opt;
}

Real energy_at(const OptimalStructure& opt, const Modulus& tau) {
  const Complex diff = tau.tau - opt.tau_c.tau;
  return opt.k_c * std::norm(diff) / (2 * opt.tau_c.im() * tau.im()) + opt.k_c;
}

std::pair<Complex, Complex> conjugate_periods(const OptimalStructure& opt, const Modulus& tau) {
  const Real root_im = std::sqrt(tau.im());
  // Periods of the real and imaginary parts of the harmonic embedding.
  const Vector2r u(1.0 / root_im, tau.re() / root_im);
  const Vector2r v(0.0, root_im);
  const Vector2r lu = opt.response * u;
  const Vector2r lv = opt.response * v;
  // Deck translation = -(conjugate of imaginary part) + i (conjugate of real part).
  return {Complex(-lv[0], lu[0]), Complex(-lv[1], lu[1])};
}

Real reciprocality_defect(Complex p1, Complex p2, const Modulus& tau) {
  const Real root_im = std::sqrt(tau.im());
  const Complex z1 = p1 * root_im;
  const Complex z2 = p2 * root_im / tau.tau;
  const Real k_hat = std::max<Real>(z1.real(), 0);
  const Real scale = std::max(std::abs(z1), std::abs(z2));
  if (!(scale > 0)) return 0;
  return (std::abs(z1 - k_hat) + std::abs(z2 - k_hat)) / scale;
}

}  // namespace torusopt
