#include "lieham/time_expression.hpp"

#include <cctype>
#include <cmath>
#include <cstdlib>
#include <sstream>
#include <utility>
#include <vector>

#include "lieham/errors.hpp"

namespace lieham {

ParseError::ParseError(const std::string& what, int line, int column)
    : std::runtime_error(what + " at " + std::to_string(line) + ":" + std::to_string(column)),
      line_(line),
      column_(column) {}

struct TimeCoefficient::Node {
  enum class Kind { Number, Time, Neg, Add, Sub, Mul, Div, Pow, Sin, Cos, Exp, Tanh };
  Kind kind;
  double number = 0.0;
  std::shared_ptr<const Node> lhs;
  std::shared_ptr<const Node> rhs;
};

namespace {

using Node = TimeCoefficient::Node;
using NodePtr = std::shared_ptr<const Node>;

NodePtr make(Node::Kind k, NodePtr a = nullptr, NodePtr b = nullptr, double v = 0.0) {
  auto n = std::make_shared<Node>();
  n->kind = k;
  n->lhs = std::move(a);
  n->rhs = std::move(b);
  n->number = v;
  return n;
}

double finite(double v, const char* op) {
  if (!std::isfinite(v)) throw SingularOperation(std::string("non-finite result in ") + op);
  return v;
}

double eval(const Node& n, double t) {
  using K = Node::Kind;
  switch (n.kind) {
    case K::Number: return n.number;
    case K::Time: return t;
    case K::Neg: return -eval(*n.lhs, t);
    case K::Add: return finite(eval(*n.lhs, t) + eval(*n.rhs, t), "+");
    case K::Sub: return finite(eval(*n.lhs, t) - eval(*n.rhs, t), "-");
    case K::Mul: return finite(eval(*n.lhs, t) * eval(*n.rhs, t), "*");
    case K::Div: {
      const double d = eval(*n.rhs, t);
      if (d == 0.0) throw SingularOperation("division by zero");
      return finite(eval(*n.lhs, t) / d, "/");
    }
    case K::Pow: {
      const double a = eval(*n.lhs, t);
      const double b = eval(*n.rhs, t);
      if (a < 0.0 && std::floor(b) != b) throw SingularOperation("non-integer power of a negative base");
      if (a == 0.0 && b < 0.0) throw SingularOperation("negative power of zero");
      return finite(std::pow(a, b), "^");
    }
    case K::Sin: return std::sin(eval(*n.lhs, t));
    case K::Cos: return std::cos(eval(*n.lhs, t));
    case K::Exp: return finite(std::exp(eval(*n.lhs, t)), "exp");
    case K::Tanh: return std::tanh(eval(*n.lhs, t));
  }
  throw std::logic_error("unhandled expression node");
}

bool depends_on_t(const Node& n) {
  if (n.kind == Node::Kind::Time) return true;
  return (n.lhs && depends_on_t(*n.lhs)) || (n.rhs && depends_on_t(*n.rhs));
}

class Parser {
 public:
  explicit Parser(const std::string& s) : src_(s) {}

  NodePtr parse() {
    skip_ws();
    if (at_end()) fail("expected expression");
    NodePtr e = expr();
    skip_ws();
    if (!at_end()) fail(std::string("unexpected '") + peek() + "'");
    return e;
  }

 private:
  NodePtr expr() {
    NodePtr lhs = term();
    for (;;) {
      skip_ws();
      if (accept('+')) {
        lhs = make(Node::Kind::Add, lhs, term());
      } else if (accept('-')) {
        lhs = make(Node::Kind::Sub, lhs, term());
      } else {
        return lhs;
      }
    }
  }

  NodePtr term() {
    NodePtr lhs = factor();
    for (;;) {
      skip_ws();
      if (accept('*')) {
        lhs = make(Node::Kind::Mul, lhs, factor());
      } else if (accept('/')) {
        lhs = make(Node::Kind::Div, lhs, factor());
      } else {
        return lhs;
      }
    }
  }

  NodePtr factor() {
    NodePtr b = base();
    skip_ws();
    if (accept('^')) return make(Node::Kind::Pow, b, factor());  // right-associative
    return b;
  }

  NodePtr base() {
    skip_ws();
    if (at_end()) fail(depth_ > 0 ? "expected ')'" : "expected expression");
    const char c = peek();
    if (c == '-') {
      advance();
      return make(Node::Kind::Neg, base());
    }
    if (c == '(') {
      advance();
      return parenthesized();
    }
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return number();
    if (std::isalpha(static_cast<unsigned char>(c))) {
      const int line = line_, col = col_;
      std::string id;
      while (!at_end() && std::isalnum(static_cast<unsigned char>(peek()))) id += advance();
      if (id == "t") return make(Node::Kind::Time);
      Node::Kind k;
      if (id == "sin") {
        k = Node::Kind::Sin;
      } else if (id == "cos") {
        k = Node::Kind::Cos;
      } else if (id == "exp") {
        k = Node::Kind::Exp;
      } else if (id == "tanh") {
        k = Node::Kind::Tanh;
      } else {
        throw ParseError("unknown identifier '" + id + "'", line, col);
      }
      skip_ws();
      if (!accept('(')) fail("expected '(' after " + id);
      return make(k, parenthesized());
    }
    fail(std::string("unexpected '") + c + "'");
  }

  // Called just after an opening parenthesis has been consumed.
  NodePtr parenthesized() {
    ++depth_;
    NodePtr e = expr();
    skip_ws();
    if (!accept(')')) fail("expected ')'");
    --depth_;
    return e;
  }

  NodePtr number() {
    const int line = line_, col = col_;
    std::string lit;
    while (!at_end() && (std::isdigit(static_cast<unsigned char>(peek())) || peek() == '.')) lit += advance();
    if (!at_end() && (peek() == 'e' || peek() == 'E')) {
      std::size_t save = pos_;
      int sl = line_, sc = col_;
      std::string exp(1, advance());
      if (!at_end() && (peek() == '+' || peek() == '-')) exp += advance();
      if (!at_end() && std::isdigit(static_cast<unsigned char>(peek()))) {
        while (!at_end() && std::isdigit(static_cast<unsigned char>(peek()))) exp += advance();
        lit += exp;
      } else {
        pos_ = save;
        line_ = sl;
        col_ = sc;
      }
    }
    char* end = nullptr;
    const double v = std::strtod(lit.c_str(), &end);
    if (lit == "." || end != lit.c_str() + lit.size()) throw ParseError("malformed number '" + lit + "'", line, col);
    return make(Node::Kind::Number, nullptr, nullptr, v);
  }

  bool at_end() const { return pos_ >= src_.size(); }
  char peek() const { return src_[pos_]; }
  char advance() {
    const char c = src_[pos_++];
    if (c == '\n') {
      ++line_;
      col_ = 1;
    } else {
      ++col_;
    }
    return c;
  }
  bool accept(char c) {
    if (!at_end() && peek() == c) {
      advance();
      return true;
    }
    return false;
  }
  void skip_ws() {
    while (!at_end() && std::isspace(static_cast<unsigned char>(peek()))) advance();
  }
  [[noreturn]] void fail(const std::string& msg) const { throw ParseError(msg, line_, col_); }

  const std::string& src_;
  std::size_t pos_ = 0;
  int line_ = 1;
  int col_ = 1;
  int depth_ = 0;
};

std::string format_constant(double c) {
  std::ostringstream os;
  os.precision(17);
  os << c;
  return os.str();
}

}  // namespace

TimeCoefficient::TimeCoefficient() : root_(make(Node::Kind::Number)), text_("0") {}

TimeCoefficient TimeCoefficient::constant(double c) {
  TimeCoefficient out;
  out.root_ = make(Node::Kind::Number, nullptr, nullptr, c);
  out.text_ = format_constant(c);
  return out;
}

TimeCoefficient TimeCoefficient::parse(const std::string& text) {
  TimeCoefficient out;
  out.root_ = Parser(text).parse();
  out.text_ = text;
  return out;
}

TimeCoefficient TimeCoefficient::from_function(std::function<double(double)> fn, std::string label) {
  TimeCoefficient out;
  out.root_.reset();
  out.fn_ = std::move(fn);
  out.text_ = std::move(label);
  return out;
}

double TimeCoefficient::operator()(double t) const {
  if (fn_) return finite(fn_(t), text_.c_str());
  return eval(*root_, t);
}

bool TimeCoefficient::is_constant() const { return !fn_ && !depends_on_t(*root_); }

}  // namespace lieham
