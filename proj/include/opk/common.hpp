#pragma once

#include <complex>

#include <Eigen/Dense>

namespace opk {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;
using RealMatrix = Eigen::MatrixXd;
using RealVector = Eigen::VectorXd;

inline constexpr const char* kVersion = "0.1.0";

inline constexpr Complex kI{0.0, 1.0};

}  // namespace opk
