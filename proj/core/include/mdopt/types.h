#pragma once

#include <Eigen/Dense>

namespace mdopt {

using Vec = Eigen::VectorXd;
using Mat = Eigen::MatrixXd;

}  // namespace mdopt
