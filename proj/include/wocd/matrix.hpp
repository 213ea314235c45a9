#pragma once

#include <Eigen/Dense>

namespace wocd {

/// Dense row-major real matrix; rows are nodes throughout the library.
using Matrix = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
using Vector = Eigen::VectorXd;
using RowVector = Eigen::RowVectorXd;

/// Node attributes, N x D.
using FeatureMatrix = Matrix;

}  // namespace wocd
