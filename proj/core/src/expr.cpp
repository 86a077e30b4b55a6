#include "sseries/expr.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <stdexcept>

#include "sseries/errors.hpp"

namespace sseries {

struct ScalarExpr::Node {
  Kind kind = Kind::Constant;
  double value = 0.0;
  Func func = Func::Exp;
  std::shared_ptr<const Node> a;
  std::shared_ptr<const Node> b;
  bool has_variable = false;
};

namespace {

using Kind = ScalarExpr::Kind;
using Func = ScalarExpr::Func;

const char* func_name(Func f) {
  switch (f) {
    case Func::Exp: return "exp";
    case Func::Sin: return "sin";
    case Func::Cos: return "cos";
    case Func::Log: return "log";
    case Func::Sqrt: return "sqrt";
  }
  return "?";
}

bool is_binary(Kind k) {
  return k == Kind::Add || k == Kind::Subtract || k == Kind::Multiply || k == Kind::Divide ||
         k == Kind::Power;
}

std::string format_number(double v) {
  char buf[64];
  auto [end, ec] = std::to_chars(buf, buf + sizeof buf, v);
  if (ec != std::errc{}) return std::to_string(v);
  return std::string(buf, end);
}

}  // namespace

// ---------------------------------------------------------------------------
// construction

ScalarExpr::ScalarExpr() : ScalarExpr(constant(0.0)) {}

ScalarExpr ScalarExpr::constant(double value) {
  if (!std::isfinite(value)) throw std::invalid_argument("ScalarExpr: non-finite constant");
  auto n = std::make_shared<Node>();
  n->kind = Kind::Constant;
  n->value = value;
  return ScalarExpr(std::move(n));
}

ScalarExpr ScalarExpr::variable() {
  auto n = std::make_shared<Node>();
  n->kind = Kind::Variable;
  n->has_variable = true;
  return ScalarExpr(std::move(n));
}

ScalarExpr ScalarExpr::negate(ScalarExpr operand) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::Negate;
  n->has_variable = operand.node_->has_variable;
  n->a = std::move(operand.node_);
  return ScalarExpr(std::move(n));
}

ScalarExpr ScalarExpr::binary(Kind op, ScalarExpr lhs, ScalarExpr rhs) {
  if (!is_binary(op)) throw std::invalid_argument("ScalarExpr::binary: not a binary operator");
  auto n = std::make_shared<Node>();
  n->kind = op;
  n->has_variable = lhs.node_->has_variable || rhs.node_->has_variable;
  n->a = std::move(lhs.node_);
  n->b = std::move(rhs.node_);
  return ScalarExpr(std::move(n));
}

ScalarExpr ScalarExpr::function(Func f, ScalarExpr operand) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::Function;
  n->func = f;
  n->has_variable = operand.node_->has_variable;
  n->a = std::move(operand.node_);
  return ScalarExpr(std::move(n));
}

ScalarExpr::Kind ScalarExpr::kind() const noexcept { return node_->kind; }
double ScalarExpr::value() const noexcept { return node_->value; }
ScalarExpr::Func ScalarExpr::func() const noexcept { return node_->func; }

ScalarExpr ScalarExpr::lhs() const {
  if (!node_->a) throw std::logic_error("ScalarExpr::lhs: leaf node");
  return ScalarExpr(node_->a);
}

ScalarExpr ScalarExpr::rhs() const {
  if (!node_->b) throw std::logic_error("ScalarExpr::rhs: not a binary node");
  return ScalarExpr(node_->b);
}

bool ScalarExpr::is_constant() const noexcept { return !node_->has_variable; }

bool ScalarExpr::is_zero_literal() const noexcept {
  return node_->kind == Kind::Constant && node_->value == 0.0;
}

bool structurally_equal(const ScalarExpr& a, const ScalarExpr& b) noexcept {
  const ScalarExpr::Node* x = a.node_.get();
  const ScalarExpr::Node* y = b.node_.get();
  if (x == y) return true;
  if (x->kind != y->kind) return false;
  switch (x->kind) {
    case Kind::Constant: return x->value == y->value;
    case Kind::Variable: return true;
    case Kind::Function:
      if (x->func != y->func) return false;
      [[fallthrough]];
    case Kind::Negate: return structurally_equal(ScalarExpr(x->a), ScalarExpr(y->a));
    default:
      return structurally_equal(ScalarExpr(x->a), ScalarExpr(y->a)) &&
             structurally_equal(ScalarExpr(x->b), ScalarExpr(y->b));
  }
}

ScalarExpr operator+(ScalarExpr a, ScalarExpr b) {
  return ScalarExpr::binary(Kind::Add, std::move(a), std::move(b));
}
ScalarExpr operator-(ScalarExpr a, ScalarExpr b) {
  return ScalarExpr::binary(Kind::Subtract, std::move(a), std::move(b));
}
ScalarExpr operator*(ScalarExpr a, ScalarExpr b) {
  return ScalarExpr::binary(Kind::Multiply, std::move(a), std::move(b));
}
ScalarExpr operator-(ScalarExpr a) { return ScalarExpr::negate(std::move(a)); }

ScalarExpr negated(const ScalarExpr& e) {
  if (e.kind() == Kind::Constant) return ScalarExpr::constant(e.value() == 0.0 ? 0.0 : -e.value());
  if (e.kind() == Kind::Negate) return e.lhs();
  return ScalarExpr::negate(e);
}

// ---------------------------------------------------------------------------
// printing

namespace {

int precedence(const ScalarExpr& e) {
  switch (e.kind()) {
    case Kind::Add:
    case Kind::Subtract: return 1;
    case Kind::Multiply:
    case Kind::Divide: return 2;
    case Kind::Negate: return 3;
    case Kind::Power: return 4;
    case Kind::Constant: return std::signbit(e.value()) ? 3 : 5;
    default: return 5;
  }
}

void print(const ScalarExpr& e, std::string& out);

void print_wrapped(const ScalarExpr& e, bool wrap, std::string& out) {
  if (wrap) out += '(';
  print(e, out);
  if (wrap) out += ')';
}

void print(const ScalarExpr& e, std::string& out) {
  switch (e.kind()) {
    case Kind::Constant: out += format_number(e.value()); return;
    case Kind::Variable: out += 'x'; return;
    case Kind::Function:
      out += func_name(e.func());
      print_wrapped(e.lhs(), true, out);
      return;
    case Kind::Negate:
      out += '-';
      print_wrapped(e.lhs(), precedence(e.lhs()) < 3, out);
      return;
    case Kind::Power:
      print_wrapped(e.lhs(), precedence(e.lhs()) <= 4, out);
      out += '^';
      print_wrapped(e.rhs(), precedence(e.rhs()) < 3, out);
      return;
    default: {
      const int p = precedence(e);
      const char op = e.kind() == Kind::Add        ? '+'
                      : e.kind() == Kind::Subtract ? '-'
                      : e.kind() == Kind::Multiply ? '*'
                                                   : '/';
      print_wrapped(e.lhs(), precedence(e.lhs()) < p, out);
      out += op;
      print_wrapped(e.rhs(), precedence(e.rhs()) <= p, out);
    }
  }
}

}  // namespace

std::string ScalarExpr::to_string() const {
  std::string out;
  print(*this, out);
  return out;
}

// ---------------------------------------------------------------------------
// parsing

namespace {

class Parser {
 public:
  explicit Parser(std::string_view src) : src_(src) {}

  ScalarExpr parse_all() {
    ScalarExpr e = parse_expr();
    skip_ws();
    if (pos_ != src_.size()) fail({"operator", "end of input"});
    return e;
  }

 private:
  ScalarExpr parse_expr() {
    ScalarExpr lhs = parse_term();
    for (;;) {
      const char c = peek();
      if (c != '+' && c != '-') return lhs;
      ++pos_;
      ScalarExpr rhs = parse_term();
      lhs = ScalarExpr::binary(c == '+' ? Kind::Add : Kind::Subtract, std::move(lhs),
                               std::move(rhs));
    }
  }

  ScalarExpr parse_term() {
    ScalarExpr lhs = parse_unary();
    for (;;) {
      const char c = peek();
      if (c != '*' && c != '/') return lhs;
      ++pos_;
      ScalarExpr rhs = parse_unary();
      lhs = ScalarExpr::binary(c == '*' ? Kind::Multiply : Kind::Divide, std::move(lhs),
                               std::move(rhs));
    }
  }

  ScalarExpr parse_unary() {
    if (peek() == '-') {
      ++pos_;
      return ScalarExpr::negate(parse_unary());
    }
    return parse_power();
  }

  ScalarExpr parse_power() {
    ScalarExpr base = parse_primary();
    if (peek() == '^') {
      ++pos_;
      return ScalarExpr::binary(Kind::Power, std::move(base), parse_unary());
    }
    return base;
  }

  ScalarExpr parse_primary() {
    const char c = peek();
    if (c == '(') {
      ++pos_;
      ScalarExpr inner = parse_expr();
      expect(')');
      return inner;
    }
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return parse_number();
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') return parse_identifier();
    fail({"number", "'x'", "function", "'('", "'-'"});
  }

  ScalarExpr parse_number() {
    const std::size_t start = pos_;
    auto digits = [&] {
      std::size_t n = 0;
      while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) {
        ++pos_;
        ++n;
      }
      return n;
    };
    std::size_t mantissa = digits();
    if (pos_ < src_.size() && src_[pos_] == '.') {
      ++pos_;
      mantissa += digits();
    }
    if (mantissa == 0) {
      pos_ = start;
      fail({"digit"});
    }
    if (pos_ < src_.size() && (src_[pos_] == 'e' || src_[pos_] == 'E')) {
      ++pos_;
      if (pos_ < src_.size() && (src_[pos_] == '+' || src_[pos_] == '-')) ++pos_;
      if (digits() == 0) fail({"exponent digit"});
    }
    double value = 0.0;
    const char* first = src_.data() + start;
    const char* last = src_.data() + pos_;
    auto [ptr, ec] = std::from_chars(first, last, value);
    if (ec != std::errc{} || ptr != last || !std::isfinite(value)) {
      throw ParseError("number out of range at offset " + std::to_string(start), start);
    }
    return ScalarExpr::constant(value);
  }

  ScalarExpr parse_identifier() {
    const std::size_t start = pos_;
    while (pos_ < src_.size() && (std::isalnum(static_cast<unsigned char>(src_[pos_])) ||
                                  src_[pos_] == '_')) {
      ++pos_;
    }
    const std::string_view name = src_.substr(start, pos_ - start);
    if (name == "x") return ScalarExpr::variable();

    Func f;
    if (name == "exp") f = Func::Exp;
    else if (name == "sin") f = Func::Sin;
    else if (name == "cos") f = Func::Cos;
    else if (name == "log") f = Func::Log;
    else if (name == "sqrt") f = Func::Sqrt;
    else {
      throw UnknownIdentifierError("unknown identifier '" + std::string(name) + "' at offset " +
                                       std::to_string(start) +
                                       " (expected 'x' or one of exp, sin, cos, log, sqrt)",
                                   start, std::string(name));
    }
    expect('(');
    ScalarExpr arg = parse_expr();
    expect(')');
    return ScalarExpr::function(f, std::move(arg));
  }

  void expect(char c) {
    if (peek() != c) fail({std::string("'") + c + "'"});
    ++pos_;
  }

  char peek() {
    skip_ws();
    return pos_ < src_.size() ? src_[pos_] : '\0';
  }

  void skip_ws() {
    while (pos_ < src_.size() && std::isspace(static_cast<unsigned char>(src_[pos_]))) ++pos_;
  }

  [[noreturn]] void fail(std::vector<std::string> expected) {
    skip_ws();
    std::string msg = "syntax error at offset " + std::to_string(pos_) + ": expected ";
    for (std::size_t i = 0; i < expected.size(); ++i) {
      if (i > 0) msg += i + 1 == expected.size() ? " or " : ", ";
      msg += expected[i];
    }
    msg += pos_ < src_.size() ? ", found '" + std::string(1, src_[pos_]) + "'"
                              : ", found end of input";
    throw ParseError(msg, pos_, std::move(expected));
  }

  std::string_view src_;
  std::size_t pos_ = 0;
};

}  // namespace

ScalarExpr parse(std::string_view source) { return Parser(source).parse_all(); }

// ---------------------------------------------------------------------------
// evaluation

namespace {

[[noreturn]] void domain_fail(const char* what, const ScalarExpr& e, double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, " at x = %.17g", x);
  const std::string sub = e.to_string();
  throw DomainError(std::string(what) + " in '" + sub + "'" + buf, x, sub);
}

double eval_node(const ScalarExpr& e, double x) {
  double r = 0.0;
  switch (e.kind()) {
    case Kind::Constant: return e.value();
    case Kind::Variable: return x;
    case Kind::Negate: return -eval_node(e.lhs(), x);
    case Kind::Add: r = eval_node(e.lhs(), x) + eval_node(e.rhs(), x); break;
    case Kind::Subtract: r = eval_node(e.lhs(), x) - eval_node(e.rhs(), x); break;
    case Kind::Multiply: r = eval_node(e.lhs(), x) * eval_node(e.rhs(), x); break;
    case Kind::Divide: {
      const double num = eval_node(e.lhs(), x);
      const double den = eval_node(e.rhs(), x);
      if (den == 0.0) domain_fail("division by zero", e, x);
      r = num / den;
      break;
    }
    case Kind::Power: r = std::pow(eval_node(e.lhs(), x), eval_node(e.rhs(), x)); break;
    case Kind::Function: {
      const double a = eval_node(e.lhs(), x);
      switch (e.func()) {
        case Func::Exp: r = std::exp(a); break;
        case Func::Sin: r = std::sin(a); break;
        case Func::Cos: r = std::cos(a); break;
        case Func::Log:
          if (!(a > 0.0)) domain_fail("log of non-positive argument", e, x);
          r = std::log(a);
          break;
        case Func::Sqrt:
          if (a < 0.0) domain_fail("sqrt of negative argument", e, x);
          r = std::sqrt(a);
          break;
      }
      break;
    }
  }
  if (!std::isfinite(r)) domain_fail("non-finite value", e, x);
  return r;
}

}  // namespace

double eval(const ScalarExpr& e, double x) {
  if (!std::isfinite(x)) throw DomainError("eval: non-finite x", x, e.to_string());
  return eval_node(e, x);
}

// ---------------------------------------------------------------------------
// matrix / vector expressions

MatrixExpr::MatrixExpr(std::size_t n) : n_(n), entries_(n * n) {}

MatrixExpr::MatrixExpr(std::size_t n, std::vector<ScalarExpr> entries)
    : n_(n), entries_(std::move(entries)) {
  if (n == 0 || entries_.size() != n * n) {
    throw ShapeError("MatrixExpr: expected " + std::to_string(n * n) + " entries, got " +
                     std::to_string(entries_.size()));
  }
}

MatrixExpr MatrixExpr::parse(const std::vector<std::vector<std::string>>& rows) {
  const std::size_t n = rows.size();
  std::vector<ScalarExpr> entries;
  entries.reserve(n * n);
  for (std::size_t i = 0; i < n; ++i) {
    if (rows[i].size() != n) {
      throw ShapeError("MatrixExpr: row " + std::to_string(i) + " has " +
                       std::to_string(rows[i].size()) + " entries, expected " +
                       std::to_string(n));
    }
    for (const auto& s : rows[i]) entries.push_back(sseries::parse(s));
  }
  return MatrixExpr(n, std::move(entries));
}

MatrixExpr MatrixExpr::constant(const Matrix& m) {
  if (!m.is_square()) throw ShapeError("MatrixExpr::constant: matrix is not square");
  std::vector<ScalarExpr> entries;
  entries.reserve(m.rows() * m.cols());
  for (double v : m.data()) entries.push_back(ScalarExpr::constant(v));
  return MatrixExpr(m.rows(), std::move(entries));
}

bool MatrixExpr::is_constant() const noexcept {
  for (const auto& e : entries_) {
    if (!e.is_constant()) return false;
  }
  return true;
}

bool MatrixExpr::is_zero_literal() const noexcept {
  for (const auto& e : entries_) {
    if (!e.is_zero_literal()) return false;
  }
  return true;
}

std::vector<std::vector<std::string>> MatrixExpr::to_strings() const {
  std::vector<std::vector<std::string>> rows(n_);
  for (std::size_t i = 0; i < n_; ++i) {
    for (std::size_t j = 0; j < n_; ++j) rows[i].push_back((*this)(i, j).to_string());
  }
  return rows;
}

MatrixExpr operator+(const MatrixExpr& a, const MatrixExpr& b) {
  if (a.size() != b.size()) throw ShapeError("MatrixExpr +: size mismatch");
  MatrixExpr out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    for (std::size_t j = 0; j < a.size(); ++j) out(i, j) = a(i, j) + b(i, j);
  }
  return out;
}

MatrixExpr operator-(const MatrixExpr& a, const MatrixExpr& b) {
  if (a.size() != b.size()) throw ShapeError("MatrixExpr -: size mismatch");
  MatrixExpr out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    for (std::size_t j = 0; j < a.size(); ++j) out(i, j) = a(i, j) - b(i, j);
  }
  return out;
}

VectorExpr::VectorExpr(std::vector<ScalarExpr> entries) : entries_(std::move(entries)) {
  if (entries_.empty()) throw ShapeError("VectorExpr: empty");
}

VectorExpr VectorExpr::parse(const std::vector<std::string>& entries) {
  std::vector<ScalarExpr> out;
  out.reserve(entries.size());
  for (const auto& s : entries) out.push_back(sseries::parse(s));
  return VectorExpr(std::move(out));
}

std::vector<std::string> VectorExpr::to_strings() const {
  std::vector<std::string> out;
  for (const auto& e : entries_) out.push_back(e.to_string());
  return out;
}

Matrix eval_matrix(const MatrixExpr& m, double x) {
  const std::size_t n = m.size();
  Matrix out(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      try {
        out(i, j) = eval(m(i, j), x);
      } catch (const DomainError& e) {
        throw DomainError(std::string(e.what()) + " (entry " + std::to_string(i) + "," +
                              std::to_string(j) + ")",
                          e.x(), e.subexpression(), i, j);
      }
    }
  }
  return out;
}

Vector eval_vector(const VectorExpr& v, double x) {
  Vector out(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) {
    try {
      out[i] = eval(v[i], x);
    } catch (const DomainError& e) {
      throw DomainError(std::string(e.what()) + " (entry " + std::to_string(i) + ")", e.x(),
                        e.subexpression(), i);
    }
  }
  return out;
}

}  // namespace sseries
