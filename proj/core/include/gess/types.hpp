#ifndef GESS_TYPES_HPP
#define GESS_TYPES_HPP

#include <Eigen/Dense>

#include <functional>

namespace gess {

using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;

/// Unnormalized log-density callable over R^D.
using LogDensityFn = std::function<double(const Vector&)>;

} // namespace gess

#endif
