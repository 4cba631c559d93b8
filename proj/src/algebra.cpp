#include "lieham/algebra.hpp"

#include <array>
#include <stdexcept>

namespace lieham {

LieAlgebraSpec::LieAlgebraSpec(std::string name, std::vector<std::string> basis_labels,
                               const std::vector<BracketRule>& brackets)
    : name_(std::move(name)), labels_(std::move(basis_labels)) {
  const std::size_t r = labels_.size();
  if (r == 0) throw std::invalid_argument("Lie algebra must have positive dimension");
  for (const auto& rule : brackets) {
    if (rule.a >= r || rule.b >= r) throw DimensionError("bracket index out of range");
    if (rule.a == rule.b) {
      if (!rule.result.empty()) throw std::invalid_argument("[e_a, e_a] must vanish");
      continue;
    }
    const bool swapped = rule.a > rule.b;
    auto& entry = sparse_[{std::min(rule.a, rule.b), std::max(rule.a, rule.b)}];
    for (const auto& [g, c] : rule.result) {
      if (g >= r) throw DimensionError("bracket result index out of range");
      const Rational v = swapped ? Rational(-c) : c;
      auto it = std::find_if(entry.begin(), entry.end(), [&](const auto& e) { return e.first == g; });
      if (it == entry.end()) {
        entry.emplace_back(g, v);
      } else {
        it->second += v;
      }
    }
    std::erase_if(entry, [](const auto& e) { return e.second == 0; });
  }
  std::erase_if(sparse_, [](const auto& kv) { return kv.second.empty(); });

  dense_.assign(r, Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(r)));
  for (const auto& [ab, entries] : sparse_) {
    for (const auto& [g, c] : entries) {
      const double v = to_double(c);
      dense_[g](static_cast<Eigen::Index>(ab.first), static_cast<Eigen::Index>(ab.second)) = v;
      dense_[g](static_cast<Eigen::Index>(ab.second), static_cast<Eigen::Index>(ab.first)) = -v;
    }
  }
}

std::size_t LieAlgebraSpec::index_of(const std::string& label) const {
  for (std::size_t i = 0; i < labels_.size(); ++i) {
    if (labels_[i] == label) return i;
  }
  throw std::out_of_range("unknown basis label '" + label + "' in " + name_);
}

Rational LieAlgebraSpec::constant(std::size_t a, std::size_t b, std::size_t g) const {
  if (a == b) return Rational(0);
  const bool swapped = a > b;
  auto it = sparse_.find({std::min(a, b), std::max(a, b)});
  if (it == sparse_.end()) return Rational(0);
  for (const auto& [gg, c] : it->second) {
    if (gg == g) return swapped ? Rational(-c) : c;
  }
  return Rational(0);
}

ValidationReport validate_structure(const LieAlgebraSpec& spec) {
  const std::size_t r = spec.dim();
  ValidationReport report;
  for (std::size_t a = 0; a < r; ++a) {
    for (std::size_t b = 0; b < r; ++b) {
      for (std::size_t c = 0; c < r; ++c) {
        for (std::size_t v = 0; v < r; ++v) {
          Rational sum = 0;
          for (std::size_t m = 0; m < r; ++m) {
            sum += spec.constant(a, b, m) * spec.constant(m, c, v);
            sum += spec.constant(b, c, m) * spec.constant(m, a, v);
            sum += spec.constant(c, a, m) * spec.constant(m, b, v);
          }
          const Rational mag = sum < 0 ? Rational(-sum) : sum;
          if (mag > report.worst_residual) {
            report.worst_residual = mag;
            report.worst_triple = std::array<std::size_t, 3>{a, b, c};
          }
        }
      }
    }
  }
  report.passed = report.worst_residual == 0;
  return report;
}

RationalPolynomial kks_bracket(const LieAlgebraSpec& spec, const RationalPolynomial& f,
                               const RationalPolynomial& g) {
  const std::size_t r = spec.dim();
  if (f.nvars() != r || g.nvars() != r)
    throw DimensionError("polynomial variables do not match algebra dimension");
  RationalPolynomial out(r);
  if (f.is_zero() || g.is_zero()) return out;
  std::vector<RationalPolynomial> df, dg;
  df.reserve(r);
  dg.reserve(r);
  for (std::size_t i = 0; i < r; ++i) {
    df.push_back(f.derivative(i));
    dg.push_back(g.derivative(i));
  }
  for (const auto& [ab, entries] : spec.sparse_constants()) {
    const auto [a, b] = ab;
    // c_ab = -c_ba, so the (a,b) and (b,a) terms combine.
    const RationalPolynomial cross = df[a] * dg[b] - df[b] * dg[a];
    if (cross.is_zero()) continue;
    for (const auto& [gamma, c] : entries) {
      out += (RationalPolynomial::variable(r, gamma) * cross) * c;
    }
  }
  return out;
}

Rational casimir_check(const LieAlgebraSpec& spec, const RationalPolynomial& casimir) {
  const std::size_t r = spec.dim();
  if (casimir.nvars() != r) throw DimensionError("Casimir variables do not match algebra dimension");
  Rational worst = 0;
  for (std::size_t g = 0; g < r; ++g) {
    const Rational m = kks_bracket(spec, casimir, RationalPolynomial::variable(r, g)).max_abs_coefficient();
    if (m > worst) worst = m;
  }
  return worst;
}

double DualFunction::operator()(double t, const DualPoint& lambda) const {
  if (static_cast<std::size_t>(lambda.size()) != arity_)
    throw DimensionError("dual point dimension does not match function arity");
  return value_(t, lambda);
}

Eigen::VectorXd DualFunction::gradient(double t, const DualPoint& lambda) const {
  if (static_cast<std::size_t>(lambda.size()) != arity_)
    throw DimensionError("dual point dimension does not match function arity");
  return gradient_(t, lambda);
}

DualFunction DualFunction::linear(
    std::size_t arity, std::vector<std::pair<std::size_t, std::function<double(double)>>> terms) {
  for (const auto& term : terms) {
    if (term.first >= arity) throw DimensionError("linear term index out of range");
  }
  auto value = [terms](double t, const DualPoint& l) {
    double s = 0.0;
    for (const auto& [i, b] : terms) s += b(t) * l(static_cast<Eigen::Index>(i));
    return s;
  };
  auto grad = [terms, arity](double t, const DualPoint&) {
    Eigen::VectorXd g = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(arity));
    for (const auto& [i, b] : terms) g(static_cast<Eigen::Index>(i)) += b(t);
    return g;
  };
  return DualFunction(arity, value, grad);
}

Eigen::VectorXd kks_vector_field(const LieAlgebraSpec& spec, const Eigen::VectorXd& dF,
                                 const DualPoint& p) {
  const auto r = static_cast<Eigen::Index>(spec.dim());
  if (p.size() != r || dF.size() != r) throw DimensionError("dual point dimension mismatch");
  Eigen::VectorXd out = Eigen::VectorXd::Zero(r);
  const auto& C = spec.dense_constants();
  for (Eigen::Index m = 0; m < r; ++m) {
    if (p(m) == 0.0) continue;
    // row g of C[m] holds c_gb^m
    out.noalias() += p(m) * (C[static_cast<std::size_t>(m)] * dF);
  }
  return out;
}

Eigen::VectorXd kks_vector_field(const LieAlgebraSpec& spec, const DualFunction& F, double t,
                                 const DualPoint& p) {
  if (F.arity() != spec.dim()) throw DimensionError("function arity does not match algebra");
  return kks_vector_field(spec, F.gradient(t, p), p);
}

namespace algebras {

namespace {

BracketRule rule(std::size_t a, std::size_t b, std::vector<std::pair<std::size_t, Rational>> res) {
  return BracketRule{a, b, std::move(res)};
}

RationalPolynomial var(std::size_t r, std::size_t i) { return RationalPolynomial::variable(r, i); }

}  // namespace

std::shared_ptr<const LieAlgebraSpec> sl2_sw() {
  static const auto spec = std::make_shared<const LieAlgebraSpec>(
      "sl2_sw", std::vector<std::string>{"h1", "h2", "h3"},
      std::vector<BracketRule>{rule(0, 1, {{0, -1}}), rule(0, 2, {{1, -2}}), rule(1, 2, {{2, -1}})});
  return spec;
}

std::shared_ptr<const LieAlgebraSpec> sl2_coalg() {
  // basis order (v-, v+, v3)
  static const auto spec = std::make_shared<const LieAlgebraSpec>(
      "sl2_coalg", std::vector<std::string>{"v-", "v+", "v3"},
      std::vector<BracketRule>{rule(2, 1, {{1, 2}}), rule(2, 0, {{0, -2}}), rule(0, 1, {{2, 4}})});
  return spec;
}

std::shared_ptr<const LieAlgebraSpec> h3() {
  static const auto spec = std::make_shared<const LieAlgebraSpec>(
      "h3", std::vector<std::string>{"e0", "e1", "e2"}, std::vector<BracketRule>{rule(1, 2, {{0, 1}})});
  return spec;
}

std::shared_ptr<const LieAlgebraSpec> h4() {
  static const auto spec = std::make_shared<const LieAlgebraSpec>(
      "h4", std::vector<std::string>{"e0", "e1", "e2", "e3"},
      std::vector<BracketRule>{rule(1, 2, {{0, 1}}), rule(3, 1, {{1, -1}}), rule(3, 2, {{2, 1}})});
  return spec;
}

std::shared_ptr<const LieAlgebraSpec> sl2_plus_h3() {
  static const auto spec = std::make_shared<const LieAlgebraSpec>(
      "sl2+h3", std::vector<std::string>{"h1", "h2", "h3", "h4", "h5", "h6"},
      std::vector<BracketRule>{rule(0, 1, {{2, -4}}), rule(0, 2, {{0, -2}}), rule(1, 2, {{1, 2}}),
                               rule(3, 4, {{5, -1}})});
  return spec;
}

std::shared_ptr<const LieAlgebraSpec> by_name(const std::string& name) {
  if (name == "sl2_sw") return sl2_sw();
  if (name == "sl2_coalg") return sl2_coalg();
  if (name == "h3") return h3();
  if (name == "h4") return h4();
  if (name == "sl2+h3") return sl2_plus_h3();
  throw std::out_of_range("unknown algebra '" + name + "'");
}

std::vector<std::string> names() { return {"sl2_sw", "sl2_coalg", "h3", "h4", "sl2+h3"}; }

std::vector<RationalPolynomial> casimirs(const std::string& name) {
  if (name == "sl2_sw") return {var(3, 0) * var(3, 2) - var(3, 1) * var(3, 1)};
  if (name == "sl2_coalg") return {var(3, 0) * var(3, 1) - var(3, 2) * var(3, 2)};
  if (name == "h3") return {var(3, 0)};
  if (name == "h4") return {var(4, 0) * var(4, 3) - var(4, 1) * var(4, 2)};
  if (name == "sl2+h3") return {var(6, 0) * var(6, 1) - var(6, 2) * var(6, 2), var(6, 5)};
  throw std::out_of_range("unknown algebra '" + name + "'");
}

}  // namespace algebras

}  // namespace lieham
