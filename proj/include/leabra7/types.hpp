#pragma once

#include <Eigen/Dense>

namespace leabra7 {

// All simulation state is double precision end to end.
using Scalar = double;
using Array = Eigen::Array<Scalar, Eigen::Dynamic, 1>;
using ArrayXX = Eigen::Array<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
using Vector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;
using Matrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
using Index = Eigen::Index;

}  // namespace leabra7
