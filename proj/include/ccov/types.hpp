#pragma once

#include <Eigen/Dense>

#include <cstdint>
#include <vector>

namespace ccov {

using Real = double;
using Index = Eigen::Index;

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;
using IntMatrix = Eigen::MatrixXi;

using IndexList = std::vector<Index>;

}  // namespace ccov
