#include "lieham/finite_difference.hpp"

#include <algorithm>
#include <stdexcept>

namespace lieham {

Eigen::MatrixXd fd_weights(double x0, const std::vector<double>& nodes, int m) {
  const auto n = static_cast<int>(nodes.size());
  if (n == 0 || m < 0) throw std::invalid_argument("fd_weights needs nodes and m >= 0");
  Eigen::MatrixXd c = Eigen::MatrixXd::Zero(n, m + 1);
  double c1 = 1.0;
  double c4 = nodes[0] - x0;
  c(0, 0) = 1.0;
  for (int i = 1; i < n; ++i) {
    const int mn = std::min(i, m);
    double c2 = 1.0;
    const double c5 = c4;
    c4 = nodes[static_cast<std::size_t>(i)] - x0;
    for (int j = 0; j < i; ++j) {
      const double c3 = nodes[static_cast<std::size_t>(i)] - nodes[static_cast<std::size_t>(j)];
      c2 *= c3;
      if (j == i - 1) {
        for (int k = mn; k >= 1; --k) c(i, k) = c1 * (k * c(i - 1, k - 1) - c5 * c(i - 1, k)) / c2;
        c(i, 0) = -c1 * c5 * c(i - 1, 0) / c2;
      }
      for (int k = mn; k >= 1; --k) c(j, k) = (c4 * c(j, k) - k * c(j, k - 1)) / c3;
      c(j, 0) = c4 * c(j, 0) / c3;
    }
    c1 = c2;
  }
  return c;
}

std::vector<std::size_t> five_point_stencil(std::size_t size, std::size_t i) {
  if (size < 5) throw std::invalid_argument("five-point stencil needs at least 5 nodes");
  const std::size_t lo = std::min(i >= 2 ? i - 2 : 0, size - 5);
  return {lo, lo + 1, lo + 2, lo + 3, lo + 4};
}

}  // namespace lieham
