#pragma once

#include <initializer_list>

#include <Eigen/Dense>

#include "lieham/phase.hpp"

namespace lieham::test {

inline Eigen::VectorXd vec(std::initializer_list<double> v) {
  Eigen::VectorXd out(static_cast<Eigen::Index>(v.size()));
  Eigen::Index i = 0;
  for (double x : v) out(i++) = x;
  return out;
}

inline PhasePoint pt(std::initializer_list<double> q, std::initializer_list<double> p) {
  return make_point(vec(q), vec(p));
}

inline double max_abs_diff(const Eigen::VectorXd& a, const Eigen::VectorXd& b) {
  return (a - b).cwiseAbs().maxCoeff();
}

}  // namespace lieham::test
