#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "lieham/phase.hpp"

namespace lieham {

enum class IntegrationStatus { Completed, DomainViolation, StepUnderflow, MaxSteps };

std::string to_string(IntegrationStatus s);

/// Time-stamped phase points plus integrator diagnostics.
struct Trajectory {
  std::vector<double> t;
  std::vector<PhasePoint> x;
  IntegrationStatus status = IntegrationStatus::Completed;
  /// Last safe time for domain violations and underflows; final time otherwise.
  double status_time = 0.0;
  std::size_t accepted_steps = 0;
  std::size_t rejected_steps = 0;
  std::size_t rhs_evaluations = 0;

  std::size_t size() const { return t.size(); }
  bool empty() const { return t.empty(); }
};

}  // namespace lieham
