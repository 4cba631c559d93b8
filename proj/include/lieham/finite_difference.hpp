#pragma once

#include <vector>

#include <Eigen/Dense>

namespace lieham {

/// Fornberg weights for the m-th derivative at x0 on arbitrary distinct nodes.
/// Returns a (nodes x (m+1)) matrix; column k holds the weights for d^k/dx^k.
Eigen::MatrixXd fd_weights(double x0, const std::vector<double>& nodes, int m);

/// Five-point stencil around index i (clamped to the grid ends) of a
/// nonuniform grid. Requires at least 5 nodes.
std::vector<std::size_t> five_point_stencil(std::size_t size, std::size_t i);

}  // namespace lieham
