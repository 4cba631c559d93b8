#pragma once

#include <cstddef>
#include <cstdint>
#include <random>
#include <vector>

#include "lieham/phase.hpp"

namespace lieham {

/// Box for seeded verification sampling. Each |q_i| is drawn from
/// [qmin, qmax] with a random sign, each p_i from [-pmax, pmax], t from
/// [tmin, tmax].
struct SampleBox {
  double qmin = 0.2;
  double qmax = 1.5;
  double pmax = 1.5;
  double tmin = 0.0;
  double tmax = 10.0;
  bool positive_q = false;  // draw q_i > 0 only
};

struct TimedPoint {
  double t;
  PhasePoint x;
};

inline constexpr int kMaxRejections = 10000;

/// Draws `count` in-domain (t, x) pairs; throws SamplingError after
/// kMaxRejections consecutive rejections.
std::vector<TimedPoint> sample_points(std::size_t n, const SampleBox& box, const DomainPredicate& domain,
                                      std::size_t count, std::uint64_t seed);

/// Deterministic per-substream seed derived from a base seed.
std::uint64_t substream_seed(std::uint64_t seed, std::uint64_t stream);

}  // namespace lieham
