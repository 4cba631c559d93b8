#pragma once

#include <functional>
#include <memory>
#include <stdexcept>
#include <string>

namespace lieham {

/// Syntax error in a t-expression, with 1-based line and column.
class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& what, int line, int column);
  int line() const { return line_; }
  int column() const { return column_; }

 private:
  int line_;
  int column_;
};

/// A real function of t, either parsed from text or supplied directly.
///
/// Grammar:
///   expr   := term (('+'|'-') term)*
///   term   := factor (('*'|'/') factor)*
///   factor := base ('^' factor)?
///   base   := number | 't' | func '(' expr ')' | '(' expr ')' | '-' base
///   func   := sin | cos | exp | tanh
///
/// Evaluation throws SingularOperation on division by zero, a non-integer
/// power of a negative base, or any non-finite intermediate.
class TimeCoefficient {
 public:
  struct Node;

  TimeCoefficient();  // constant 0

  static TimeCoefficient constant(double c);
  static TimeCoefficient parse(const std::string& text);
  static TimeCoefficient from_function(std::function<double(double)> fn, std::string label);

  double operator()(double t) const;
  const std::string& text() const { return text_; }
  /// True when the value does not depend on t (checked structurally).
  bool is_constant() const;

 private:
  std::shared_ptr<const Node> root_;
  std::function<double(double)> fn_;
  std::string text_;
};

inline double eval_time_coefficient(const TimeCoefficient& c, double t) { return c(t); }

}  // namespace lieham
