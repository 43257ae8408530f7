#pragma once

#include <functional>
#include <memory>
#include <string>
#include <string_view>

#include "slp/errors.hpp"

namespace slp {

enum class Op {
  constant,
  variable,
  neg,
  add,
  sub,
  mul,
  div,
  pow,
  exp,
  ln,
  sin,
  cos,
  sqrt,
  abs,
  besselj,
  bessely,
  external,
};

// Opaque scalar function used for tabulated quantities. Without an explicit
// derivative, differentiation falls back to a five-point stencil.
struct ExternalFn {
  std::string name;
  std::function<double(double)> f;
  std::shared_ptr<const ExternalFn> derivative;
};

struct Node;
using NodePtr = std::shared_ptr<const Node>;

struct Node {
  Op op;
  double value = 0.0;  // constant value, or Bessel order
  NodePtr a;
  NodePtr b;
  std::shared_ptr<const ExternalFn> ext;
};

// Immutable expression tree in one free variable. Copies share structure.
class Expression {
 public:
  Expression();  // the constant 0
  Expression(double c);  // NOLINT(google-explicit-constructor)

  static Expression parse(std::string_view src, std::string_view var = "x");
  static Expression variable(std::string_view name = "x");
  static Expression external(std::shared_ptr<const ExternalFn> fn, const Expression& arg);

  double operator()(double x) const;
  Expression derivative() const;
  // Substitute `inner` for the free variable.
  Expression compose(const Expression& inner) const;

  std::string str() const;
  bool is_constant() const;
  const std::string& var() const noexcept { return var_; }
  const Node& root() const noexcept { return *root_; }
  const NodePtr& node() const noexcept { return root_; }

  Expression(NodePtr root, std::string var) : root_(std::move(root)), var_(std::move(var)) {}

 private:
  NodePtr root_;
  std::string var_;
};

Expression operator-(const Expression& a);
Expression operator+(const Expression& a, const Expression& b);
Expression operator-(const Expression& a, const Expression& b);
Expression operator*(const Expression& a, const Expression& b);
Expression operator/(const Expression& a, const Expression& b);
Expression pow(const Expression& a, const Expression& b);
Expression exp(const Expression& a);
Expression ln(const Expression& a);
Expression sin(const Expression& a);
Expression cos(const Expression& a);
Expression sqrt(const Expression& a);
Expression abs(const Expression& a);
Expression besselj(double nu, const Expression& a);
Expression bessely(double nu, const Expression& a);

// Shortest decimal that reads back to the same double.
std::string format_number(double v);

}  // namespace slp
