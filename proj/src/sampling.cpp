#include "lieham/sampling.hpp"

namespace lieham {

std::vector<TimedPoint> sample_points(std::size_t n, const SampleBox& box, const DomainPredicate& domain,
                                      std::size_t count, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> qmag(box.qmin, box.qmax);
  std::uniform_real_distribution<double> pdist(-box.pmax, box.pmax);
  std::uniform_real_distribution<double> tdist(box.tmin, box.tmax);
  std::bernoulli_distribution sign(0.5);

  const auto ni = static_cast<Eigen::Index>(n);
  std::vector<TimedPoint> out;
  out.reserve(count);
  int rejected = 0;
  while (out.size() < count) {
    PhasePoint x(2 * ni);
    for (Eigen::Index i = 0; i < ni; ++i) {
      const double m = qmag(rng);
      x(i) = (box.positive_q || sign(rng)) ? m : -m;
    }
    for (Eigen::Index i = 0; i < ni; ++i) x(ni + i) = pdist(rng);
    const double t = box.tmin == box.tmax ? box.tmin : tdist(rng);
    if (domain && !domain(t, x)) {
      if (++rejected >= kMaxRejections)
        throw SamplingError("no in-domain point found after " + std::to_string(kMaxRejections) + " draws");
      continue;
    }
    rejected = 0;
    out.push_back({t, std::move(x)});
  }
  return out;
}

std::uint64_t substream_seed(std::uint64_t seed, std::uint64_t stream) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(stream), static_cast<std::uint32_t>(stream >> 32)};
  std::uint32_t words[2];
  seq.generate(words, words + 2);
  return (static_cast<std::uint64_t>(words[0]) << 32) | words[1];
}

}  // namespace lieham
