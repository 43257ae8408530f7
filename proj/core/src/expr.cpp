#include "slp/expr.hpp"

#include <array>
#include <cctype>
#include <charconv>
#include <cmath>
#include <numbers>
#include <utility>
#include <vector>

#include "slp/special_fn.hpp"

namespace slp {

DomainError::DomainError(const std::string& subexpr, double x, const std::string& why)
    : Error("domain error in '" + subexpr + "' at " + format_number(x) + ": " + why),
      subexpr_(subexpr),
      x_(x) {}

std::string format_number(double v) {
  std::array<char, 64> buf{};
  auto [end, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), v);
  if (ec != std::errc{}) return "nan";
  return std::string(buf.data(), end);
}

namespace {

NodePtr make(Op op, NodePtr a = nullptr, NodePtr b = nullptr, double value = 0.0) {
  return std::make_shared<const Node>(Node{op, value, std::move(a), std::move(b), nullptr});
}

NodePtr make_const(double v) { return make(Op::constant, nullptr, nullptr, v); }

bool is_const(const NodePtr& n) { return n->op == Op::constant; }
bool is_const(const NodePtr& n, double v) { return n->op == Op::constant && n->value == v; }

const char* func_name(Op op) {
  switch (op) {
    case Op::exp: return "exp";
    case Op::ln: return "ln";
    case Op::sin: return "sin";
    case Op::cos: return "cos";
    case Op::sqrt: return "sqrt";
    case Op::abs: return "abs";
    case Op::besselj: return "besselj";
    case Op::bessely: return "bessely";
    default: return "?";
  }
}

double apply_unary(Op op, double u) {
  switch (op) {
    case Op::exp: return std::exp(u);
    case Op::ln: return std::log(u);
    case Op::sin: return std::sin(u);
    case Op::cos: return std::cos(u);
    case Op::sqrt: return std::sqrt(u);
    case Op::abs: return std::fabs(u);
    default: return u;
  }
}

// Builders with constant folding and 0/1 identities. Folding is skipped when
// the folded value would not be finite so the error surfaces at evaluation.
NodePtr b_neg(NodePtr a) {
  if (is_const(a)) return make_const(-a->value);
  if (a->op == Op::neg) return a->a;
  return make(Op::neg, std::move(a));
}

NodePtr b_add(NodePtr a, NodePtr b) {
  if (is_const(a) && is_const(b)) return make_const(a->value + b->value);
  if (is_const(a, 0.0)) return b;
  if (is_const(b, 0.0)) return a;
  return make(Op::add, std::move(a), std::move(b));
}

NodePtr b_sub(NodePtr a, NodePtr b) {
  if (is_const(a) && is_const(b)) return make_const(a->value - b->value);
  if (is_const(b, 0.0)) return a;
  if (is_const(a, 0.0)) return b_neg(std::move(b));
  return make(Op::sub, std::move(a), std::move(b));
}

NodePtr b_mul(NodePtr a, NodePtr b) {
  if (is_const(a) && is_const(b)) return make_const(a->value * b->value);
  if (is_const(a, 0.0) || is_const(b, 0.0)) return make_const(0.0);
  if (is_const(a, 1.0)) return b;
  if (is_const(b, 1.0)) return a;
  if (is_const(a, -1.0)) return b_neg(std::move(b));
  if (is_const(b, -1.0)) return b_neg(std::move(a));
  return make(Op::mul, std::move(a), std::move(b));
}

NodePtr b_div(NodePtr a, NodePtr b) {
  if (is_const(a) && is_const(b) && b->value != 0.0) return make_const(a->value / b->value);
  if (is_const(b, 1.0)) return a;
  return make(Op::div, std::move(a), std::move(b));
}

double pow_checked(double base, double e, bool* ok) {
  *ok = true;
  if (base < 0.0 && std::trunc(e) != e) *ok = false;
  if (base == 0.0 && e <= 0.0) *ok = false;
  return *ok ? std::pow(base, e) : 0.0;
}

NodePtr b_pow(NodePtr a, NodePtr b) {
  if (is_const(a) && is_const(b)) {
    bool ok = false;
    const double v = pow_checked(a->value, b->value, &ok);
    if (ok && std::isfinite(v)) return make_const(v);
  }
  if (is_const(b, 1.0)) return a;
  if (is_const(b, 0.0)) return make_const(1.0);
  return make(Op::pow, std::move(a), std::move(b));
}

NodePtr b_func(Op op, NodePtr a) {
  if (is_const(a)) {
    const double u = a->value;
    bool ok = true;
    if (op == Op::ln && u <= 0.0) ok = false;
    if (op == Op::sqrt && u < 0.0) ok = false;
    if (ok) {
      const double v = apply_unary(op, u);
      if (std::isfinite(v)) return make_const(v);
    }
  }
  return make(op, std::move(a));
}

NodePtr b_bessel(Op op, double nu, NodePtr a) {
  return make(op, std::move(a), nullptr, nu);
}

NodePtr b_external(std::shared_ptr<const ExternalFn> fn, NodePtr a) {
  return std::make_shared<const Node>(Node{Op::external, 0.0, std::move(a), nullptr, std::move(fn)});
}

// ---- printing ----

int prec(const Node& n) {
  switch (n.op) {
    case Op::add:
    case Op::sub: return 1;
    case Op::mul:
    case Op::div: return 2;
    case Op::neg: return 3;
    case Op::pow: return 4;
    case Op::constant: return n.value < 0.0 || std::signbit(n.value) ? 3 : 5;
    default: return 5;
  }
}

void print(const Node& n, const std::string& var, std::string& out);

void print_child(const Node& c, bool paren, const std::string& var, std::string& out) {
  if (paren) out += '(';
  print(c, var, out);
  if (paren) out += ')';
}

void print(const Node& n, const std::string& var, std::string& out) {
  switch (n.op) {
    case Op::constant:
      out += format_number(n.value);
      return;
    case Op::variable:
      out += var;
      return;
    case Op::neg:
      out += '-';
      print_child(*n.a, prec(*n.a) < 4, var, out);
      return;
    case Op::add:
    case Op::sub:
    case Op::mul:
    case Op::div: {
      const int p = prec(n);
      const char sym = n.op == Op::add ? '+' : n.op == Op::sub ? '-' : n.op == Op::mul ? '*' : '/';
      const int pa = prec(*n.a);
      print_child(*n.a, pa < p || (pa == 3 && p == 2), var, out);
      out += sym;
      const int pb = prec(*n.b);
      print_child(*n.b, pb <= p || pb == 3, var, out);
      return;
    }
    case Op::pow:
      print_child(*n.a, prec(*n.a) < 5, var, out);
      out += '^';
      print_child(*n.b, prec(*n.b) < 4, var, out);
      return;
    case Op::besselj:
    case Op::bessely:
      out += func_name(n.op);
      out += '(';
      out += format_number(n.value);
      out += ',';
      print(*n.a, var, out);
      out += ')';
      return;
    case Op::external:
      out += n.ext->name;
      out += '(';
      print(*n.a, var, out);
      out += ')';
      return;
    default:
      out += func_name(n.op);
      out += '(';
      print(*n.a, var, out);
      out += ')';
      return;
  }
}

std::string node_str(const Node& n, const std::string& var) {
  std::string s;
  print(n, var, s);
  return s;
}

// ---- evaluation ----

double eval(const Node& n, double x, const std::string& var) {
  auto fail = [&](const char* why) -> double { throw DomainError(node_str(n, var), x, why); };
  auto finite = [&](double v) -> double {
    if (!std::isfinite(v)) fail("non-finite result");
    return v;
  };
  switch (n.op) {
    case Op::constant: return n.value;
    case Op::variable: return x;
    case Op::neg: return -eval(*n.a, x, var);
    case Op::add: return finite(eval(*n.a, x, var) + eval(*n.b, x, var));
    case Op::sub: return finite(eval(*n.a, x, var) - eval(*n.b, x, var));
    case Op::mul: return finite(eval(*n.a, x, var) * eval(*n.b, x, var));
    case Op::div: {
      const double num = eval(*n.a, x, var);
      const double den = eval(*n.b, x, var);
      if (den == 0.0) fail("division by zero");
      return finite(num / den);
    }
    case Op::pow: {
      const double base = eval(*n.a, x, var);
      const double e = eval(*n.b, x, var);
      bool ok = false;
      const double v = pow_checked(base, e, &ok);
      if (!ok) fail(base == 0.0 ? "zero base with non-positive exponent"
                                : "negative base with non-integer exponent");
      return finite(v);
    }
    case Op::ln: {
      const double u = eval(*n.a, x, var);
      if (u <= 0.0) fail("logarithm of non-positive argument");
      return finite(std::log(u));
    }
    case Op::sqrt: {
      const double u = eval(*n.a, x, var);
      if (u < 0.0) fail("square root of negative argument");
      return std::sqrt(u);
    }
    case Op::exp:
    case Op::sin:
    case Op::cos:
    case Op::abs: return finite(apply_unary(n.op, eval(*n.a, x, var)));
    case Op::besselj:
    case Op::bessely: {
      const double u = eval(*n.a, x, var);
      if (u <= 0.0) fail("Bessel function of non-positive argument");
      return finite(n.op == Op::besselj ? bessel_j(n.value, u) : bessel_y(n.value, u));
    }
    case Op::external: return finite(n.ext->f(eval(*n.a, x, var)));
  }
  return fail("unknown node");
}

// ---- differentiation ----

std::shared_ptr<const ExternalFn> fd_derivative(const std::shared_ptr<const ExternalFn>& fn) {
  auto d = std::make_shared<ExternalFn>();
  d->name = fn->name + "'";
  d->f = [g = fn->f](double u) {
    const double h = 1e-3 * (1.0 + std::fabs(u));
    return (g(u - 2 * h) - 8 * g(u - h) + 8 * g(u + h) - g(u + 2 * h)) / (12 * h);
  };
  return d;
}

NodePtr diff(const NodePtr& n) {
  switch (n->op) {
    case Op::constant: return make_const(0.0);
    case Op::variable: return make_const(1.0);
    case Op::neg: return b_neg(diff(n->a));
    case Op::add: return b_add(diff(n->a), diff(n->b));
    case Op::sub: return b_sub(diff(n->a), diff(n->b));
    case Op::mul: return b_add(b_mul(diff(n->a), n->b), b_mul(n->a, diff(n->b)));
    case Op::div:
      return b_div(b_sub(b_mul(diff(n->a), n->b), b_mul(n->a, diff(n->b))),
                   b_mul(n->b, n->b));
    case Op::pow: {
      const NodePtr& u = n->a;
      const NodePtr& v = n->b;
      if (is_const(v)) {
        return b_mul(b_mul(v, b_pow(u, make_const(v->value - 1.0))), diff(u));
      }
      if (is_const(u)) {
        return b_mul(b_mul(n, b_func(Op::ln, u)), diff(v));
      }
      // u^v (v' ln u + v u'/u)
      return b_mul(n, b_add(b_mul(diff(v), b_func(Op::ln, u)), b_div(b_mul(v, diff(u)), u)));
    }
    case Op::exp: return b_mul(n, diff(n->a));
    case Op::ln: return b_div(diff(n->a), n->a);
    case Op::sin: return b_mul(b_func(Op::cos, n->a), diff(n->a));
    case Op::cos: return b_neg(b_mul(b_func(Op::sin, n->a), diff(n->a)));
    case Op::sqrt: return b_div(diff(n->a), b_mul(make_const(2.0), n));
    case Op::abs: return b_div(b_mul(diff(n->a), n->a), n);
    case Op::besselj:
    case Op::bessely: {
      // Z_nu'(u) = (nu/u) Z_nu(u) - Z_{nu+1}(u)
      const double nu = n->value;
      NodePtr dz = b_sub(b_mul(b_div(make_const(nu), n->a), n),
                         b_bessel(n->op, nu + 1.0, n->a));
      return b_mul(dz, diff(n->a));
    }
    case Op::external: {
      auto d = n->ext->derivative ? n->ext->derivative : fd_derivative(n->ext);
      return b_mul(b_external(d, n->a), diff(n->a));
    }
  }
  return make_const(0.0);
}

NodePtr substitute(const NodePtr& n, const NodePtr& inner) {
  switch (n->op) {
    case Op::constant: return n;
    case Op::variable: return inner;
    case Op::neg: return b_neg(substitute(n->a, inner));
    case Op::add: return b_add(substitute(n->a, inner), substitute(n->b, inner));
    case Op::sub: return b_sub(substitute(n->a, inner), substitute(n->b, inner));
    case Op::mul: return b_mul(substitute(n->a, inner), substitute(n->b, inner));
    case Op::div: return b_div(substitute(n->a, inner), substitute(n->b, inner));
    case Op::pow: return b_pow(substitute(n->a, inner), substitute(n->b, inner));
    case Op::besselj:
    case Op::bessely: return b_bessel(n->op, n->value, substitute(n->a, inner));
    case Op::external: return b_external(n->ext, substitute(n->a, inner));
    default: return b_func(n->op, substitute(n->a, inner));
  }
}

bool has_variable(const Node& n) {
  if (n.op == Op::variable || n.op == Op::external) return true;
  if (n.a && has_variable(*n.a)) return true;
  if (n.b && has_variable(*n.b)) return true;
  return false;
}

// ---- parsing ----

class Parser {
 public:
  Parser(std::string_view src, std::string_view var) : s_(src), var_(var) {}

  NodePtr run() {
    skip();
    if (pos_ >= s_.size()) throw ParseError("empty expression", 0);
    NodePtr e = expr();
    skip();
    if (pos_ < s_.size()) throw ParseError(std::string("unexpected '") + s_[pos_] + "'", pos_);
    return e;
  }

 private:
  void skip() {
    while (pos_ < s_.size() && (s_[pos_] == ' ' || s_[pos_] == '\t' || s_[pos_] == '\n' || s_[pos_] == '\r'))
      ++pos_;
  }

  bool accept(char c) {
    skip();
    if (pos_ < s_.size() && s_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  void expect(char c) {
    if (!accept(c)) {
      if (pos_ >= s_.size()) throw ParseError(std::string("expected '") + c + "' but input ended", pos_);
      throw ParseError(std::string("expected '") + c + "'", pos_);
    }
  }

  NodePtr expr() {
    NodePtr lhs = term();
    for (;;) {
      if (accept('+')) {
        lhs = make(Op::add, lhs, term());
      } else if (accept('-')) {
        lhs = make(Op::sub, lhs, term());
      } else {
        return lhs;
      }
    }
  }

  NodePtr term() {
    NodePtr lhs = unary();
    for (;;) {
      if (accept('*')) {
        lhs = make(Op::mul, lhs, unary());
      } else if (accept('/')) {
        lhs = make(Op::div, lhs, unary());
      } else {
        return lhs;
      }
    }
  }

  NodePtr unary() {
    if (accept('-')) return b_neg(unary());
    if (accept('+')) return unary();
    return power();
  }

  NodePtr power() {
    NodePtr base = primary();
    if (accept('^')) return b_pow(base, unary());
    return base;
  }

  NodePtr primary() {
    skip();
    if (pos_ >= s_.size()) throw ParseError("unexpected end of input", pos_);
    const char c = s_[pos_];
    if (c == '(') {
      ++pos_;
      NodePtr e = expr();
      expect(')');
      return e;
    }
    if ((c >= '0' && c <= '9') || c == '.') return number();
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') return identifier();
    throw ParseError(std::string("unexpected '") + c + "'", pos_);
  }

  NodePtr number() {
    const std::size_t start = pos_;
    while (pos_ < s_.size() && (std::isdigit(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '.')) ++pos_;
    if (pos_ < s_.size() && (s_[pos_] == 'e' || s_[pos_] == 'E')) {
      std::size_t q = pos_ + 1;
      if (q < s_.size() && (s_[q] == '+' || s_[q] == '-')) ++q;
      if (q < s_.size() && std::isdigit(static_cast<unsigned char>(s_[q]))) {
        pos_ = q;
        while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
      }
    }
    double v = 0.0;
    auto [end, ec] = std::from_chars(s_.data() + start, s_.data() + pos_, v);
    if (ec != std::errc{} || end != s_.data() + pos_) throw ParseError("malformed number", start);
    return make_const(v);
  }

  NodePtr identifier() {
    const std::size_t start = pos_;
    while (pos_ < s_.size() &&
           (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_'))
      ++pos_;
    const std::string_view id = s_.substr(start, pos_ - start);
    if (id == var_) return make(Op::variable);
    if (id == "pi") return make_const(std::numbers::pi);

    Op op{};
    int arity = 1;
    if (id == "exp") op = Op::exp;
    else if (id == "ln") op = Op::ln;
    else if (id == "sin") op = Op::sin;
    else if (id == "cos") op = Op::cos;
    else if (id == "sqrt") op = Op::sqrt;
    else if (id == "abs") op = Op::abs;
    else if (id == "besselj") op = Op::besselj, arity = 2;
    else if (id == "bessely") op = Op::bessely, arity = 2;
    else throw ParseError("unknown identifier '" + std::string(id) + "'", start);

    skip();
    if (pos_ >= s_.size() || s_[pos_] != '(')
      throw ParseError("function '" + std::string(id) + "' requires an argument list", pos_);
    ++pos_;
    std::vector<NodePtr> args;
    std::vector<std::size_t> offsets;
    skip();
    if (!accept(')')) {
      do {
        skip();
        offsets.push_back(pos_);
        args.push_back(expr());
      } while (accept(','));
      expect(')');
    }
    if (static_cast<int>(args.size()) != arity) {
      throw ParseError("function '" + std::string(id) + "' takes " + std::to_string(arity) +
                           " argument(s), got " + std::to_string(args.size()),
                       start);
    }
    if (arity == 2) {
      if (has_variable(*args[0]) || !is_const(args[0]))
        throw ParseError("Bessel order must be a constant", offsets[0]);
      if (args[0]->value < 0.0) throw ParseError("Bessel order must be non-negative", offsets[0]);
      return b_bessel(op, args[0]->value, args[1]);
    }
    return b_func(op, args[0]);
  }

  std::string_view s_;
  std::string_view var_;
  std::size_t pos_ = 0;
};

const std::string& pick_var(const Expression& a, const Expression& b) {
  return a.is_constant() && !b.is_constant() ? b.var() : a.var();
}

}  // namespace

Expression::Expression() : root_(make_const(0.0)), var_("x") {}

Expression::Expression(double c) : root_(make_const(c)), var_("x") {}

Expression Expression::parse(std::string_view src, std::string_view var) {
  Parser p(src, var);
  return Expression(p.run(), std::string(var));
}

Expression Expression::variable(std::string_view name) {
  return Expression(make(Op::variable), std::string(name));
}

Expression Expression::external(std::shared_ptr<const ExternalFn> fn, const Expression& arg) {
  return Expression(b_external(std::move(fn), arg.root_), arg.var_);
}

double Expression::operator()(double x) const { return eval(*root_, x, var_); }

Expression Expression::derivative() const { return Expression(diff(root_), var_); }

Expression Expression::compose(const Expression& inner) const {
  return Expression(substitute(root_, inner.root_), inner.var_);
}

std::string Expression::str() const { return node_str(*root_, var_); }

bool Expression::is_constant() const { return !has_variable(*root_); }

Expression operator-(const Expression& a) { return Expression(b_neg(a.node()), a.var()); }
Expression operator+(const Expression& a, const Expression& b) {
  return Expression(b_add(a.node(), b.node()), pick_var(a, b));
}
Expression operator-(const Expression& a, const Expression& b) {
  return Expression(b_sub(a.node(), b.node()), pick_var(a, b));
}
Expression operator*(const Expression& a, const Expression& b) {
  return Expression(b_mul(a.node(), b.node()), pick_var(a, b));
}
Expression operator/(const Expression& a, const Expression& b) {
  return Expression(b_div(a.node(), b.node()), pick_var(a, b));
}
Expression pow(const Expression& a, const Expression& b) {
  return Expression(b_pow(a.node(), b.node()), pick_var(a, b));
}
Expression exp(const Expression& a) { return Expression(b_func(Op::exp, a.node()), a.var()); }
Expression ln(const Expression& a) { return Expression(b_func(Op::ln, a.node()), a.var()); }
Expression sin(const Expression& a) { return Expression(b_func(Op::sin, a.node()), a.var()); }
Expression cos(const Expression& a) { return Expression(b_func(Op::cos, a.node()), a.var()); }
Expression sqrt(const Expression& a) { return Expression(b_func(Op::sqrt, a.node()), a.var()); }
Expression abs(const Expression& a) { return Expression(b_func(Op::abs, a.node()), a.var()); }
Expression besselj(double nu, const Expression& a) {
  return Expression(b_bessel(Op::besselj, nu, a.node()), a.var());
}
Expression bessely(double nu, const Expression& a) {
  return Expression(b_bessel(Op::bessely, nu, a.node()), a.var());
}

}  // namespace slp
