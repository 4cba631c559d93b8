#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <map>
#include <numeric>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>
#include <boost/multiprecision/cpp_int.hpp>

#include "lieham/errors.hpp"

namespace lieham {

using Rational = boost::multiprecision::cpp_rational;

inline double to_double(const Rational& r) { return r.convert_to<double>(); }
inline double to_double(double x) { return x; }

using Exponents = std::vector<unsigned>;

inline unsigned total_degree(const Exponents& e) {
  return std::accumulate(e.begin(), e.end(), 0U);
}

/// Graded lexicographic order: total degree first, then lexicographic on exponents.
struct GradedLexLess {
  bool operator()(const Exponents& a, const Exponents& b) const {
    const unsigned da = total_degree(a);
    const unsigned db = total_degree(b);
    if (da != db) return da < db;
    return std::lexicographical_compare(b.begin(), b.end(), a.begin(), a.end());
  }
};

/// Sparse multivariate polynomial in a fixed number of variables.
///
/// Terms with a zero coefficient are never stored, so `is_zero()` is an exact
/// test whenever `Coeff` is exact.
template <typename Coeff>
class Polynomial {
 public:
  using Terms = std::map<Exponents, Coeff, GradedLexLess>;

  explicit Polynomial(std::size_t nvars = 0) : nvars_(nvars) {}

  static Polynomial constant(std::size_t nvars, const Coeff& c) {
    Polynomial p(nvars);
    p.add_term(Exponents(nvars, 0U), c);
    return p;
  }

  static Polynomial variable(std::size_t nvars, std::size_t i) {
    if (i >= nvars) throw DimensionError("polynomial variable index out of range");
    Exponents e(nvars, 0U);
    e[i] = 1;
    Polynomial p(nvars);
    p.add_term(std::move(e), Coeff(1));
    return p;
  }

  static Polynomial monomial(Exponents e, const Coeff& c) {
    Polynomial p(e.size());
    p.add_term(std::move(e), c);
    return p;
  }

  std::size_t nvars() const { return nvars_; }
  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  unsigned degree() const {
    unsigned d = 0;
    for (const auto& [e, c] : terms_) d = std::max(d, total_degree(e));
    return d;
  }

  void add_term(Exponents e, const Coeff& c) {
    if (e.size() != nvars_) throw DimensionError("monomial has wrong number of variables");
    if (c == Coeff(0)) return;
    auto it = terms_.find(e);
    if (it == terms_.end()) {
      terms_.emplace(std::move(e), c);
      return;
    }
    it->second += c;
    if (it->second == Coeff(0)) terms_.erase(it);
  }

  Coeff coefficient(const Exponents& e) const {
    auto it = terms_.find(e);
    return it == terms_.end() ? Coeff(0) : it->second;
  }

  /// Largest |coefficient|; zero for the zero polynomial.
  Coeff max_abs_coefficient() const {
    Coeff best(0);
    for (const auto& [e, c] : terms_) {
      const Coeff a = c < Coeff(0) ? Coeff(-c) : c;
      if (best < a) best = a;
    }
    return best;
  }

  Polynomial derivative(std::size_t i) const {
    if (i >= nvars_) throw DimensionError("derivative variable index out of range");
    Polynomial out(nvars_);
    for (const auto& [e, c] : terms_) {
      if (e[i] == 0) continue;
      Exponents d = e;
      --d[i];
      out.add_term(std::move(d), c * Coeff(e[i]));
    }
    return out;
  }

  Polynomial& operator+=(const Polynomial& o) {
    check_same(o);
    for (const auto& [e, c] : o.terms_) add_term(e, c);
    return *this;
  }
  Polynomial& operator-=(const Polynomial& o) {
    check_same(o);
    for (const auto& [e, c] : o.terms_) add_term(e, Coeff(-c));
    return *this;
  }
  Polynomial& operator*=(const Coeff& s) {
    if (s == Coeff(0)) {
      terms_.clear();
      return *this;
    }
    for (auto& [e, c] : terms_) c *= s;
    return *this;
  }

  friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
  friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }
  friend Polynomial operator-(Polynomial a) { return a *= Coeff(-1); }
  friend Polynomial operator*(Polynomial a, const Coeff& s) { return a *= s; }
  friend Polynomial operator*(const Coeff& s, Polynomial a) { return a *= s; }

  friend Polynomial operator*(const Polynomial& a, const Polynomial& b) {
    a.check_same(b);
    Polynomial out(a.nvars_);
    for (const auto& [ea, ca] : a.terms_) {
      for (const auto& [eb, cb] : b.terms_) {
        Exponents e(a.nvars_);
        for (std::size_t i = 0; i < e.size(); ++i) e[i] = ea[i] + eb[i];
        out.add_term(std::move(e), ca * cb);
      }
    }
    return out;
  }

  friend bool operator==(const Polynomial& a, const Polynomial& b) {
    return a.nvars_ == b.nvars_ && a.terms_ == b.terms_;
  }

  template <typename To>
  Polynomial<To> cast() const {
    Polynomial<To> out(nvars_);
    for (const auto& [e, c] : terms_) out.add_term(e, static_cast<To>(to_double(c)));
    return out;
  }

  template <typename Derived>
  double evaluate(const Eigen::MatrixBase<Derived>& x) const {
    if (static_cast<std::size_t>(x.size()) != nvars_)
      throw DimensionError("polynomial evaluated at point of wrong dimension");
    double sum = 0.0;
    for (const auto& [e, c] : terms_) {
      double term = to_double(c);
      for (std::size_t i = 0; i < nvars_; ++i) {
        for (unsigned k = 0; k < e[i]; ++k) term *= x(static_cast<Eigen::Index>(i));
      }
      sum += term;
    }
    return sum;
  }

  std::string to_string(const std::vector<std::string>& labels = {}) const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
      if (!first) os << " + ";
      first = false;
      os << it->second;
      for (std::size_t i = 0; i < nvars_; ++i) {
        if (it->first[i] == 0) continue;
        os << '*' << (i < labels.size() ? labels[i] : "x" + std::to_string(i));
        if (it->first[i] > 1) os << '^' << it->first[i];
      }
    }
    return os.str();
  }

 private:
  void check_same(const Polynomial& o) const {
    if (o.nvars_ != nvars_) throw DimensionError("polynomials over different variable sets");
  }

  std::size_t nvars_;
  Terms terms_;
};

using RationalPolynomial = Polynomial<Rational>;

}  // namespace lieham
