#include "lieham/coalgebra.hpp"

#include <algorithm>
#include <cmath>
#include <regex>
#include <stdexcept>

namespace lieham {

ReplicatedSpace::ReplicatedSpace(const CopyFactory& factory, std::vector<double> params)
    : params_(std::move(params)) {
  if (params_.empty()) throw std::invalid_argument("replicated space needs at least one copy");
  for (double c : params_) copies_.push_back(factory(c));
  algebra_ = copies_.front().algebra_ptr();
  base_n_ = copies_.front().n();
  for (const auto& r : copies_) {
    if (r.n() != base_n_ || r.algebra_ptr() != algebra_)
      throw std::invalid_argument("copies must share the base space and algebra");
  }
}

PhasePoint ReplicatedSpace::block(const PhasePoint& x, std::size_t l) const {
  const auto b = static_cast<Eigen::Index>(base_n_);
  const auto n = static_cast<Eigen::Index>(this->n());
  const auto off = static_cast<Eigen::Index>(l) * b;
  PhasePoint y(2 * b);
  y << x.segment(off, b), x.segment(n + off, b);
  return y;
}

void ReplicatedSpace::scatter(Eigen::VectorXd& full, const Eigen::VectorXd& part, std::size_t l) const {
  const auto b = static_cast<Eigen::Index>(base_n_);
  const auto n = static_cast<Eigen::Index>(this->n());
  const auto off = static_cast<Eigen::Index>(l) * b;
  full.segment(off, b) += part.head(b);
  full.segment(n + off, b) += part.tail(b);
}

std::vector<ScalarField> ReplicatedSpace::summed(const std::vector<std::size_t>& copy_set) const {
  for (auto l : copy_set) {
    if (l >= copies()) throw std::out_of_range("copy index out of range");
  }
  std::vector<ScalarField> out;
  const ReplicatedSpace self = *this;
  std::vector<DomainPredicate> doms;
  for (auto l : copy_set) doms.push_back(copies_[l].domain());
  for (std::size_t a = 0; a < r(); ++a) {
    out.emplace_back(
        n(),
        [self, copy_set, a](double t, const PhasePoint& x) {
          double s = 0.0;
          for (auto l : copy_set) s += self.copy(l).field(a).value_unchecked(t, self.block(x, l));
          return s;
        },
        [self, copy_set, a](double t, const PhasePoint& x) {
          Eigen::VectorXd g = Eigen::VectorXd::Zero(x.size());
          for (auto l : copy_set) self.scatter(g, self.copy(l).field(a).gradient_unchecked(t, self.block(x, l)), l);
          return g;
        },
        [self, copy_set, doms](double t, const PhasePoint& x) {
          for (std::size_t s = 0; s < copy_set.size(); ++s) {
            if (!doms[s](t, self.block(x, copy_set[s]))) return false;
          }
          return true;
        });
  }
  return out;
}

Realization ReplicatedSpace::full_realization() const {
  std::vector<std::size_t> all(copies());
  for (std::size_t l = 0; l < all.size(); ++l) all[l] = l;
  return Realization(algebra_, n(), summed(all), params_);
}

std::vector<std::size_t> sided_copies(std::size_t N, Side side, std::size_t k) {
  if (k < 1 || k > N) throw std::out_of_range("level k=" + std::to_string(k) + " outside 1.." + std::to_string(N));
  std::vector<std::size_t> out(k);
  for (std::size_t i = 0; i < k; ++i) out[i] = side == Side::Left ? i : N - k + i;
  return out;
}

std::vector<ScalarField> replicate_hamiltonians(const ReplicatedSpace& space, Side side, std::size_t k) {
  return space.summed(sided_copies(space.copies(), side, k));
}

InvariantField invariant_over(const ReplicatedSpace& space, const RationalPolynomial& casimir,
                              std::vector<std::size_t> copy_set, std::string name) {
  if (casimir_check(space.algebra(), casimir) != 0)
    throw std::invalid_argument("polynomial is not a Casimir of " + space.algebra().name());
  std::sort(copy_set.begin(), copy_set.end());
  const Realization level(space.copy(0).algebra_ptr(), space.n(), space.summed(copy_set));
  return InvariantField{std::move(name), std::move(copy_set), casimir_pullback(level, casimir)};
}

InvariantField invariant_field(const ReplicatedSpace& space, const RationalPolynomial& casimir, Side side,
                               std::size_t k) {
  const std::size_t N = space.copies();
  std::string name = k == N ? "I_" + std::to_string(N) : std::string(side == Side::Left ? "I_L_" : "I_R_") + std::to_string(k);
  return invariant_over(space, casimir, sided_copies(N, side, k), std::move(name));
}

InvariantField permute_invariant(const ReplicatedSpace& space, const RationalPolynomial& casimir,
                                 const InvariantField& I, std::size_t i, std::size_t j) {
  const std::size_t N = space.copies();
  if (i < 1 || j < 1 || i > N || j > N || i == j) throw std::out_of_range("permutation indices must be distinct in 1..N");
  std::vector<std::size_t> set = I.copy_set;
  for (auto& l : set) {
    if (l == i - 1) {
      l = j - 1;
    } else if (l == j - 1) {
      l = i - 1;
    }
  }
  return invariant_over(space, casimir, std::move(set), "S_" + std::to_string(i) + "_" + std::to_string(j) + "." + I.name);
}

double angular_block(const PhasePoint& x, std::size_t i, std::size_t j, double ci, double cj) {
  const Eigen::Index n = config_dim(x);
  const auto a = static_cast<Eigen::Index>(i), b = static_cast<Eigen::Index>(j);
  if (a >= n || b >= n) throw DimensionError("angular block index out of range");
  const double qi = x(a), qj = x(b), pi = x(n + a), pj = x(n + b);
  if ((ci != 0.0 && !guarded(qi)) || (cj != 0.0 && !guarded(qj)))
    throw DomainError("angular block evaluated on a centrifugal barrier");
  const double J = qi * pj - qj * pi;
  double L = J * J;
  if (ci != 0.0) L += ci * qj * qj / (qi * qi);
  if (cj != 0.0) L += cj * qi * qi / (qj * qj);
  return L;
}

VectorFieldFn diagonal_prolongation(const VectorFieldFn& base, std::size_t base_n, std::size_t N) {
  if (N < 1) throw std::invalid_argument("prolongation needs N >= 1");
  const auto b = static_cast<Eigen::Index>(base_n);
  const auto n = static_cast<Eigen::Index>(base_n * N);
  return [base, b, n, N](double t, const PhasePoint& x) {
    if (x.size() != 2 * n) throw DimensionError("prolonged field evaluated at point of wrong dimension");
    Eigen::VectorXd out(2 * n);
    PhasePoint y(2 * b);
    for (std::size_t l = 0; l < N; ++l) {
      const Eigen::Index off = static_cast<Eigen::Index>(l) * b;
      y << x.segment(off, b), x.segment(n + off, b);
      const Eigen::VectorXd v = base(t, y);
      out.segment(off, b) = v.head(b);
      out.segment(n + off, b) = v.tail(b);
    }
    return out;
  };
}

double involution_report(const std::vector<InvariantField>& fields, const ReplicatedSpace& space,
                         const SampleBox& box, std::size_t samples, std::uint64_t seed) {
  const Realization full = space.full_realization();
  DomainPredicate dom = full.domain();
  double worst = 0.0;
  for (const auto& s : sample_points(space.n(), box, dom, samples, seed)) {
    for (std::size_t a = 0; a < fields.size(); ++a) {
      for (std::size_t b = a + 1; b < fields.size(); ++b) {
        worst = std::max(worst, std::abs(canonical_bracket(fields[a].field, fields[b].field, s.x)));
      }
      for (const auto& h : full.fields()) {
        worst = std::max(worst, std::abs(canonical_bracket(fields[a].field, h, s.x)));
      }
    }
  }
  return worst;
}

Eigen::Index jacobian_rank(const std::vector<InvariantField>& fields, const PhasePoint& x, double rel_tol) {
  if (fields.empty()) return 0;
  Eigen::MatrixXd jac(static_cast<Eigen::Index>(fields.size()), x.size());
  for (std::size_t a = 0; a < fields.size(); ++a)
    jac.row(static_cast<Eigen::Index>(a)) = fields[a].field.gradient(x).transpose();
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(jac);
  const Eigen::VectorXd sv = svd.singularValues();
  if (sv.size() == 0 || sv(0) == 0.0) return 0;
  return (sv.array() > rel_tol * sv(0)).count();
}

InvariantField invariant_by_name(const ReplicatedSpace& space, const RationalPolynomial& casimir,
                                 const std::string& name) {
  static const std::regex sided(R"(I_([LR])_(\d+))");
  static const std::regex total(R"(I_(\d+))");
  static const std::regex perm(R"(S_(\d+)_(\d+)\.(.+))");
  std::smatch m;
  if (std::regex_match(name, m, perm)) {
    const InvariantField inner = invariant_by_name(space, casimir, m[3].str());
    return permute_invariant(space, casimir, inner, std::stoul(m[1].str()), std::stoul(m[2].str()));
  }
  if (std::regex_match(name, m, sided)) {
    const std::size_t k = std::stoul(m[2].str());
    InvariantField I = invariant_field(space, casimir, m[1].str() == "L" ? Side::Left : Side::Right, k);
    I.name = name;
    return I;
  }
  if (std::regex_match(name, m, total)) {
    const std::size_t k = std::stoul(m[1].str());
    if (k != space.copies())
      throw std::out_of_range("invariant " + name + " requires k = N = " + std::to_string(space.copies()));
    return invariant_field(space, casimir, Side::Left, k);
  }
  throw std::out_of_range("unknown invariant '" + name + "'");
}

}  // namespace lieham
