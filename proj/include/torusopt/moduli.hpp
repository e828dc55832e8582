#pragma once

#include <utility>

#include "torusopt/operators.hpp"
#include "torusopt/types.hpp"

namespace torusopt {

/// The 2x2 operator on the period space sending the periods of a harmonic
/// 1-form to the periods of its conjugate. Satisfies a = -d, and
/// J L = [[c, -a], [-a, -b]] (J = [[0,1],[-1,0]]) is positive definite for
/// non-degenerate weights.
struct ResponseMatrix {
  Matrix2r entries = Matrix2r::Zero();

  Real a() const { return entries(0, 0); }
  Real b() const { return entries(0, 1); }
  Real c() const { return entries(1, 0); }
  Real d() const { return entries(1, 1); }

  /// J L, the symmetric energy form on the period space.
  Matrix2r energy_form() const;
};

ResponseMatrix response_matrix(const OperatorBundle& bundle);

/// Unit-area flat torus, parameterized by a point of the upper half plane.
struct Modulus {
  Complex tau{0, 1};

  Modulus() = default;
  explicit Modulus(Complex t);
  Modulus(Real re, Real im) : Modulus(Complex(re, im)) {}

  Real re() const { return tau.real(); }
  Real im() const { return tau.imag(); }
  /// Holonomy translations of the marking generators.
  Complex t1() const { return Complex(1.0 / std::sqrt(im()), 0); }
  Complex t2() const { return tau / std::sqrt(im()); }
};

struct OptimalStructure {
  Modulus tau_c;
  Real k_c = 0;
  Matrix2r response = Matrix2r::Zero();
};

/// Optimal modulus and minimal energy read off the response matrix:
/// k = sqrt(-b c - a^2), tau = (-a/b, -k/b). Throws ResponseMatrixError
/// when the sign conditions of a non-degenerate network fail.
OptimalStructure extract_modulus(const ResponseMatrix& response);

/// Closed-form energy of the harmonic map into the torus of modulus tau:
/// k |tau - tau_c|^2 / (2 Im tau_c Im tau) + k.
Real energy_at(const OptimalStructure& opt, const Modulus& tau);

/// Deck translations of the conjugate map of the harmonic embedding at tau.
/// Proportional to (1, tau)/sqrt(Im tau) with a positive real factor exactly
/// when tau is the optimal modulus, and then the factor is k_c.
std::pair<Complex, Complex> conjugate_periods(const OptimalStructure& opt, const Modulus& tau);

/// Scalar deviation of a translation pair from k (1, tau)/sqrt(Im tau):
/// zero iff the conjugate projects to a scaled copy of the same torus.
Real reciprocality_defect(Complex p1, Complex p2, const Modulus& tau);

}  // namespace torusopt
