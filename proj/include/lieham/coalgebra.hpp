#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "lieham/momentum.hpp"

namespace lieham {

/// Builds the single-copy realization for one copy's parameter.
using CopyFactory = std::function<Realization(double param)>;

/// N copies of a base realization on T*R^b, each with its own parameter.
///
/// Copy l (0-based) occupies q indices [l b, (l+1) b) and the matching p
/// indices, so N copies of the n=1 sl2 realization lay out exactly like the
/// n=N realization.
class ReplicatedSpace {
 public:
  ReplicatedSpace(const CopyFactory& factory, std::vector<double> params);

  std::size_t copies() const { return copies_.size(); }
  std::size_t base_n() const { return base_n_; }
  std::size_t n() const { return base_n_ * copies_.size(); }
  std::size_t r() const { return algebra_->dim(); }
  const LieAlgebraSpec& algebra() const { return *algebra_; }
  const std::vector<double>& params() const { return params_; }
  const Realization& copy(std::size_t l) const { return copies_.at(l); }

  /// Restriction of x to copy l, as a point of T*R^b.
  PhasePoint block(const PhasePoint& x, std::size_t l) const;
  /// Adds a copy-l gradient into a full-space gradient.
  void scatter(Eigen::VectorXd& full, const Eigen::VectorXd& part, std::size_t l) const;

  /// sum over the given copies of h_a(x_(l)), for each a.
  std::vector<ScalarField> summed(const std::vector<std::size_t>& copy_set) const;

  /// The level-N realization on the whole space.
  Realization full_realization() const;

 private:
  std::shared_ptr<const LieAlgebraSpec> algebra_;
  std::size_t base_n_ = 0;
  std::vector<double> params_;
  std::vector<Realization> copies_;
};

enum class Side { Left, Right };

/// Copies summed by a sided level: Left k -> 0..k-1, Right k -> N-k..N-1.
std::vector<std::size_t> sided_copies(std::size_t N, Side side, std::size_t k);

/// h^(k)_{side, a} for every a; throws std::out_of_range unless 1 <= k <= N.
std::vector<ScalarField> replicate_hamiltonians(const ReplicatedSpace& space, Side side, std::size_t k);

/// A Casimir composed with replicated Hamiltonians, summed over a set of copies.
struct InvariantField {
  std::string name;
  std::vector<std::size_t> copy_set;
  ScalarField field;
};

/// I^(k) = C(h^(k)_1, ..., h^(k)_r). Throws std::invalid_argument unless C is
/// an exact Casimir of the space's algebra.
InvariantField invariant_field(const ReplicatedSpace& space, const RationalPolynomial& casimir, Side side,
                               std::size_t k);

/// Invariant over an arbitrary set of copies; `name` labels it.
InvariantField invariant_over(const ReplicatedSpace& space, const RationalPolynomial& casimir,
                              std::vector<std::size_t> copy_set, std::string name);

/// S_ij (1-based): swaps copies i and j, together with their parameters.
InvariantField permute_invariant(const ReplicatedSpace& space, const RationalPolynomial& casimir,
                                 const InvariantField& I, std::size_t i, std::size_t j);

/// L_ij = (q_i p_j - q_j p_i)^2 + c_i q_j^2/q_i^2 + c_j q_i^2/q_j^2 (0-based i, j).
double angular_block(const PhasePoint& x, std::size_t i, std::size_t j, double ci, double cj);

/// Copies a base vector field on T*R^b to each of N blocks.
VectorFieldFn diagonal_prolongation(const VectorFieldFn& base, std::size_t base_n, std::size_t N);

/// Max over samples of |{I_a, I_b}| over all pairs and of |{I_a, h^(N)_g}|.
double involution_report(const std::vector<InvariantField>& fields, const ReplicatedSpace& space,
                         const SampleBox& box, std::size_t samples, std::uint64_t seed);

/// Numerical rank of the Jacobian of the fields at x (singular values above
/// rel_tol times the largest).
Eigen::Index jacobian_rank(const std::vector<InvariantField>& fields, const PhasePoint& x, double rel_tol = 1e-8);

/// Names accepted by parse_invariant_name: "I_L_k", "I_R_k", "I_k" (k = N),
/// and "S_i_j.<name>" applied recursively.
InvariantField invariant_by_name(const ReplicatedSpace& space, const RationalPolynomial& casimir,
                                 const std::string& name);

}  // namespace lieham
