#pragma once

#include <complex>

#include <Eigen/Dense>

namespace torusopt {

using Real = double;
using Complex = std::complex<Real>;

template <typename Scalar>
using MatrixX = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
template <typename Scalar>
using VectorX = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

using MatrixXr = MatrixX<Real>;
using VectorXr = VectorX<Real>;
using Vector2r = Eigen::Vector2d;
using Matrix2r = Eigen::Matrix2d;

/// Deck translation attached to a directed edge, in the basis of the
/// two marking cycles.
using LabelVec = Eigen::Vector2i;

}  // namespace torusopt
