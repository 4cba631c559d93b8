#pragma once

#include <cstddef>
#include <vector>

#include "lieham/momentum.hpp"

namespace lieham::realizations {

/// h_- = sum q_i^2, h_+ = sum (p_i^2 + c_i / q_i^2), h_3 = sum q_i p_i
/// over the "sl2_coalg" algebra. q_i = 0 is excluded wherever c_i != 0.
Realization sl2_coalg(std::size_t n, const std::vector<double>& c);

/// h_1 = q^2/2, h_2 = -q.p/2, h_3 = (p^2 + sum c_i/q_i^2)/2 over "sl2_sw".
Realization sl2_sw(std::size_t n, const std::vector<double>& c);

/// (1, q, p) on T*R over "h3".
Realization heisenberg();

/// (1, q, p, qp) on T*R over "h4".
Realization oscillator_h4();

/// (p1^2, q1^2, q1 p1, p2, q2, 1) on T*R^2 over "sl2+h3".
Realization henon_heiles();

/// True when every q_i with c_i != 0 is guarded away from zero.
bool centrifugal_ok(const PhasePoint& x, const std::vector<double>& c);

}  // namespace lieham::realizations
