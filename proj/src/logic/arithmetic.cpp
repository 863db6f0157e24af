#include "cdd/logic/arithmetic.hpp"

#include "cdd/error.hpp"

#include <algorithm>
#include <cctype>

namespace cdd::logic {

struct ArithmeticExpression::Node {
  enum class Op { Number, Param, Neg, Add, Sub, Mul, Div, Pow };
  Op op = Op::Number;
  Rational value;
  std::size_t param = 0;
  std::uint32_t exponent = 0;
  std::shared_ptr<const Node> lhs, rhs;
};

namespace {

using Node = ArithmeticExpression::Node;
using NodePtr = std::shared_ptr<const Node>;

class ExprParser {
 public:
  ExprParser(std::string_view src, const std::vector<std::string>& params) : src_(src), params_(params) {}

  NodePtr parse() {
    NodePtr n = sum();
    skip_ws();
    if (i_ != src_.size()) fail("end of expression");
    return n;
  }

 private:
  [[noreturn]] void fail(std::string expected) {
    std::string found = i_ < src_.size() ? "'" + std::string(1, src_[i_]) + "'" : "end of input";
    throw SyntaxError(i_, std::move(expected), found);
  }

  void skip_ws() {
    while (i_ < src_.size() && std::isspace(static_cast<unsigned char>(src_[i_]))) ++i_;
  }

  bool accept(char c) {
    skip_ws();
    if (i_ < src_.size() && src_[i_] == c) {
      ++i_;
      return true;
    }
    return false;
  }

  static NodePtr binary(Node::Op op, NodePtr l, NodePtr r) {
    auto n = std::make_shared<Node>();
    n->op = op;
    n->lhs = std::move(l);
    n->rhs = std::move(r);
    return n;
  }

  NodePtr sum() {
    NodePtr acc = product();
    for (;;) {
      if (accept('+')) acc = binary(Node::Op::Add, acc, product());
      else if (accept('-')) acc = binary(Node::Op::Sub, acc, product());
      else return acc;
    }
  }

  NodePtr product() {
    NodePtr acc = signed_factor();
    for (;;) {
      if (accept('*')) acc = binary(Node::Op::Mul, acc, signed_factor());
      else if (accept('/')) acc = binary(Node::Op::Div, acc, signed_factor());
      else return acc;
    }
  }

  NodePtr signed_factor() {
    if (accept('-')) {
      auto n = std::make_shared<Node>();
      n->op = Node::Op::Neg;
      n->lhs = signed_factor();
      return n;
    }
    return power();
  }

  NodePtr power() {
    NodePtr base = primary();
    if (accept('^')) {
      skip_ws();
      std::size_t start = i_;
      while (i_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[i_]))) ++i_;
      if (start == i_) fail("an integer exponent");
      auto n = std::make_shared<Node>();
      n->op = Node::Op::Pow;
      n->lhs = base;
      n->exponent = static_cast<std::uint32_t>(std::stoul(std::string(src_.substr(start, i_ - start))));
      return n;
    }
    return base;
  }

  NodePtr primary() {
    skip_ws();
    if (accept('(')) {
      NodePtr inner = sum();
      if (!accept(')')) fail("')'");
      return inner;
    }
    skip_ws();
    if (i_ >= src_.size()) fail("an operand");
    unsigned char c = static_cast<unsigned char>(src_[i_]);
    std::size_t start = i_;
    if (std::isdigit(c)) {
      while (i_ < src_.size() && (std::isdigit(static_cast<unsigned char>(src_[i_])) || src_[i_] == '.')) ++i_;
      auto n = std::make_shared<Node>();
      n->op = Node::Op::Number;
      n->value = Rational::parse(src_.substr(start, i_ - start));
      return n;
    }
    if (std::isalpha(c) || c == '_') {
      while (i_ < src_.size() && (std::isalnum(static_cast<unsigned char>(src_[i_])) || src_[i_] == '_')) ++i_;
      std::string name(src_.substr(start, i_ - start));
      auto it = std::find(params_.begin(), params_.end(), name);
      if (it == params_.end()) throw Error(Errc::UnknownSymbol, "unknown parameter '" + name + "'");
      auto n = std::make_shared<Node>();
      n->op = Node::Op::Param;
      n->param = static_cast<std::size_t>(it - params_.begin());
      return n;
    }
    fail("an operand");
  }

  std::string_view src_;
  const std::vector<std::string>& params_;
  std::size_t i_ = 0;
};

Rational bounded(Rational r, std::uint64_t bound) {
  if (r.magnitude() > bound)
    throw Error(Errc::EvaluationOverflow, "value " + r.to_string() + " exceeds magnitude bound");
  return r;
}

Rational eval(const Node& n, std::span<const Rational> args, std::uint64_t bound) {
  switch (n.op) {
    case Node::Op::Number: return bounded(n.value, bound);
    case Node::Op::Param: return bounded(args[n.param], bound);
    case Node::Op::Neg: return -eval(*n.lhs, args, bound);
    case Node::Op::Add: return bounded(eval(*n.lhs, args, bound) + eval(*n.rhs, args, bound), bound);
    case Node::Op::Sub: return bounded(eval(*n.lhs, args, bound) - eval(*n.rhs, args, bound), bound);
    case Node::Op::Mul: return bounded(eval(*n.lhs, args, bound) * eval(*n.rhs, args, bound), bound);
    case Node::Op::Div: return bounded(eval(*n.lhs, args, bound) / eval(*n.rhs, args, bound), bound);
    case Node::Op::Pow: {
      Rational base = eval(*n.lhs, args, bound);
      Rational acc(1);
      for (std::uint32_t k = 0; k < n.exponent; ++k) acc = bounded(acc * base, bound);
      return acc;
    }
  }
  return {};
}

}  // namespace

ArithmeticExpression::ArithmeticExpression(std::vector<std::string> params, std::string_view body)
    : params_(std::move(params)), source_(body) {
  for (std::size_t i = 0; i < params_.size(); ++i)
    for (std::size_t k = i + 1; k < params_.size(); ++k)
      if (params_[i] == params_[k]) throw Error(Errc::SchemaError, "duplicate parameter '" + params_[i] + "'");
  root_ = ExprParser(source_, params_).parse();
}

Rational ArithmeticExpression::evaluate(std::span<const Rational> args, std::uint64_t magnitude_bound) const {
  if (!root_) throw Error(Errc::InvalidStructure, "empty arithmetic expression");
  if (args.size() != params_.size())
    throw Error(Errc::ArityMismatch, "expression expects " + std::to_string(params_.size()) + " arguments");
  return eval(*root_, args, magnitude_bound);
}

}  // namespace cdd::logic
