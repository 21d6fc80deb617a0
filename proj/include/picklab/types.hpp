#pragma once

#include <Eigen/Dense>

#include <complex>

namespace picklab {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;
using Index = Eigen::Index;

}  // namespace picklab
