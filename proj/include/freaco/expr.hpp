#pragma once

// A small expression language for objectives f : [0,1]^n -> R.
//
//   expr    := term { ('+' | '-') term }
//   term    := unary { ('*' | '/') unary }
//   unary   := ('-' | '+') unary | power
//   power   := primary [ '^' unary ]                 (right-associative)
//   primary := number | 'x' digits | 'x' '(' expr ')' | name
//            | func '(' expr ')' | '(' expr ')'
//            | 'sum' '(' name ',' int ',' int ',' expr ')'
//   func    := 'sin' | 'cos' | 'exp' | 'ln' | 'abs'
//
// Variables are 1-based (x1..xn). Inside a sum body the bound name may be
// used in index expressions, e.g. sum(k,1,9, (x(k+1) - x(k)^2)^2).
// See docs/objective_grammar.md for the full EBNF.

#include <cctype>
#include <cmath>
#include <cstddef>
#include <cstdio>
#include <memory>
#include <iterator>
#include <optional>
#include <string>
#include <string_view>
#include <tuple>
#include <utility>
#include <variant>
#include <vector>

#include "freaco/error.hpp"
#include "freaco/fre_core.hpp"

namespace freaco {

namespace expr_detail {

struct Node;
using NodePtr = std::shared_ptr<const Node>;

enum class Func { sin, cos, exp, ln, abs };

struct Number {
  double value;
};
struct Var {
  std::size_t index;  // 0-based
};
struct IndexedVar {
  NodePtr index;  // evaluates to a 1-based integer
  std::size_t line, column;
};
struct BoundVar {
  std::string name;
  std::size_t depth;  // slot in the evaluation environment
};
struct Negate {
  NodePtr operand;
};
struct Binary {
  char op;  // one of + - * / ^
  NodePtr lhs, rhs;
};
struct Call {
  Func func;
  NodePtr arg;
};
struct Sum {
  std::string name;
  long lo, hi;
  NodePtr body;
};

struct Node {
  std::variant<Number, Var, IndexedVar, BoundVar, Negate, Binary, Call, Sum> v;
};

inline const char* func_name(Func f) {
  switch (f) {
    case Func::sin: return "sin";
    case Func::cos: return "cos";
    case Func::exp: return "exp";
    case Func::ln: return "ln";
    case Func::abs: return "abs";
  }
  return "?";
}

inline std::optional<Func> lookup_func(std::string_view name) {
  if (name == "sin") return Func::sin;
  if (name == "cos") return Func::cos;
  if (name == "exp") return Func::exp;
  if (name == "ln") return Func::ln;
  if (name == "abs") return Func::abs;
  return std::nullopt;
}

/// Evaluation context: point plus the values of enclosing sum variables.
struct Env {
  const Vector* x;  // null while checking index expressions at parse time
  std::vector<double> bound;
};

[[noreturn]] inline void domain_error(const std::string& msg, const Env& env) {
  throw EvalError(msg, env.x ? to_std(*env.x) : std::vector<double>{});
}

inline double eval_node(const Node& node, Env& env);

inline std::size_t resolve_index(const IndexedVar& iv, Env& env, std::size_t n) {
  const double raw = eval_node(*iv.index, env);
  const double r = std::round(raw);
  if (std::abs(raw - r) > 1e-9 || r < 1 || r > static_cast<double>(n)) {
    throw EvalError("variable index " + std::to_string(raw) + " not an integer in 1.." +
                        std::to_string(n),
                    env.x ? to_std(*env.x) : std::vector<double>{});
  }
  return static_cast<std::size_t>(r) - 1;
}

inline double eval_node(const Node& node, Env& env) {
  struct Visitor {
    Env& env;
    double operator()(const Number& c) const { return c.value; }
    double operator()(const Var& v) const { return (*env.x)(static_cast<Eigen::Index>(v.index)); }
    double operator()(const IndexedVar& iv) const {
      const auto j = resolve_index(iv, env, static_cast<std::size_t>(env.x->size()));
      return (*env.x)(static_cast<Eigen::Index>(j));
    }
    double operator()(const BoundVar& b) const { return env.bound[b.depth]; }
    double operator()(const Negate& u) const { return -eval_node(*u.operand, env); }
    double operator()(const Binary& b) const {
      const double l = eval_node(*b.lhs, env);
      const double r = eval_node(*b.rhs, env);
      switch (b.op) {
        case '+': return l + r;
        case '-': return l - r;
        case '*': return l * r;
        case '/':
          if (r == 0.0) domain_error("division by zero", env);
          return l / r;
        default: {
          const bool integral = r == std::round(r);
          if (l < 0.0 && !integral) domain_error("negative base with non-integer exponent", env);
          if (l == 0.0 && r < 0.0) domain_error("division by zero (zero base, negative exponent)", env);
          return std::pow(l, r);
        }
      }
    }
    double operator()(const Call& c) const {
      const double a = eval_node(*c.arg, env);
      switch (c.func) {
        case Func::sin: return std::sin(a);
        case Func::cos: return std::cos(a);
        case Func::exp: return std::exp(a);
        case Func::abs: return std::abs(a);
        case Func::ln:
          if (a <= 0.0) domain_error("ln of non-positive argument " + std::to_string(a), env);
          return std::log(a);
      }
      return 0.0;
    }
    double operator()(const Sum& s) const {
      double total = 0.0;
      env.bound.push_back(0.0);
      for (long k = s.lo; k <= s.hi; ++k) {
        env.bound.back() = static_cast<double>(k);
        total += eval_node(*s.body, env);
      }
      env.bound.pop_back();
      return total;
    }
  };
  return std::visit(Visitor{env}, node.v);
}

inline std::string format_number(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

inline void render_node(const Node& node, std::string& out) {
  struct Visitor {
    std::string& out;
    void operator()(const Number& c) const { out += format_number(c.value); }
    void operator()(const Var& v) const { out += "x" + std::to_string(v.index + 1); }
    void operator()(const IndexedVar& iv) const {
      out += "x(";
      render_node(*iv.index, out);
      out += ')';
    }
    void operator()(const BoundVar& b) const { out += b.name; }
    void operator()(const Negate& u) const {
      out += "(-";
      render_node(*u.operand, out);
      out += ')';
    }
    void operator()(const Binary& b) const {
      out += '(';
      render_node(*b.lhs, out);
      out += ' ';
      out += b.op;
      out += ' ';
      render_node(*b.rhs, out);
      out += ')';
    }
    void operator()(const Call& c) const {
      out += func_name(c.func);
      out += '(';
      render_node(*c.arg, out);
      out += ')';
    }
    void operator()(const Sum& s) const {
      out += "sum(" + s.name + ", " + std::to_string(s.lo) + ", " + std::to_string(s.hi) + ", ";
      render_node(*s.body, out);
      out += ')';
    }
  };
  std::visit(Visitor{out}, node.v);
}

class Parser {
 public:
  Parser(std::string_view src, std::size_t n) : src_(src), n_(n) {}

  NodePtr parse() {
    auto root = expression();
    skip_space();
    if (pos_ < src_.size()) fail("unexpected '" + std::string(1, src_[pos_]) + "'");
    return root;
  }

 private:
  struct Mark {
    std::size_t pos, line, column;
  };

  static NodePtr make(auto&& alt) {
    return std::make_shared<const Node>(Node{std::forward<decltype(alt)>(alt)});
  }

  [[noreturn]] void fail(const std::string& msg) const { throw ParseError(msg, line_, col_); }
  [[noreturn]] static void fail_at(const Mark& m, const std::string& msg) {
    throw ParseError(msg, m.line, m.column);
  }

  void advance() {
    if (src_[pos_] == '\n') {
      ++line_;
      col_ = 1;
    } else {
      ++col_;
    }
    ++pos_;
  }

  void skip_space() {
    while (pos_ < src_.size() && std::isspace(static_cast<unsigned char>(src_[pos_]))) advance();
  }

  Mark mark() {
    skip_space();
    return {pos_, line_, col_};
  }

  bool accept(char c) {
    skip_space();
    if (pos_ < src_.size() && src_[pos_] == c) {
      advance();
      return true;
    }
    return false;
  }

  void expect(char c) {
    if (!accept(c)) {
      if (pos_ >= src_.size()) fail(std::string("expected '") + c + "' before end of input");
      fail(std::string("expected '") + c + "'");
    }
  }

  NodePtr expression() {
    auto lhs = term();
    for (;;) {
      if (accept('+')) lhs = make(Binary{'+', lhs, term()});
      else if (accept('-')) lhs = make(Binary{'-', lhs, term()});
      else return lhs;
    }
  }

  NodePtr term() {
    auto lhs = unary();
    for (;;) {
      if (accept('*')) lhs = make(Binary{'*', lhs, unary()});
      else if (accept('/')) lhs = make(Binary{'/', lhs, unary()});
      else return lhs;
    }
  }

  NodePtr unary() {
    if (accept('-')) return make(Negate{unary()});
    if (accept('+')) return unary();
    return power();
  }

  NodePtr power() {
    auto base = primary();
    if (accept('^')) return make(Binary{'^', base, unary()});
    return base;
  }

  std::string identifier() {
    std::string id;
    while (pos_ < src_.size() &&
           (std::isalnum(static_cast<unsigned char>(src_[pos_])) || src_[pos_] == '_')) {
      id += src_[pos_];
      advance();
    }
    return id;
  }

  double number() {
    const auto start = pos_;
    auto digits = [&] {
      while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) advance();
    };
    digits();
    if (pos_ < src_.size() && src_[pos_] == '.') {
      advance();
      digits();
    }
    if (pos_ < src_.size() && (src_[pos_] == 'e' || src_[pos_] == 'E')) {
      const auto save = std::tuple{pos_, line_, col_};
      advance();
      if (pos_ < src_.size() && (src_[pos_] == '+' || src_[pos_] == '-')) advance();
      if (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) {
        digits();
      } else {
        std::tie(pos_, line_, col_) = save;  // 'e' belongs to something else
      }
    }
    const std::string text(src_.substr(start, pos_ - start));
    if (text == ".") fail("malformed number");
    return std::stod(text);
  }

  long integer_literal() {
    const auto m = mark();
    const bool negative = accept('-');
    skip_space();
    if (pos_ >= src_.size() || !std::isdigit(static_cast<unsigned char>(src_[pos_])))
      fail_at(m, "summation bound must be an integer literal");
    long v = 0;
    while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) {
      v = v * 10 + (src_[pos_] - '0');
      advance();
    }
    return negative ? -v : v;
  }

  NodePtr primary() {
    const auto m = mark();
    if (pos_ >= src_.size()) fail("unexpected end of input");
    const char c = src_[pos_];
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return make(Number{number()});
    if (accept('(')) {
      auto inner = expression();
      expect(')');
      return inner;
    }
    if (!(std::isalpha(static_cast<unsigned char>(c)) || c == '_')) fail(std::string("unexpected '") + c + "'");

    const std::string id = identifier();
    if (id == "x") {
      expect('(');
      auto idx = expression();
      expect(')');
      return make(IndexedVar{idx, m.line, m.column});
    }
    if (id.size() > 1 && id[0] == 'x' && id.find_first_not_of("0123456789", 1) == std::string::npos) {
      const auto k = std::stoul(id.substr(1));
      if (k < 1 || k > n_)
        fail_at(m, "variable " + id + " out of range (dimension " + std::to_string(n_) + ")");
      return make(Var{k - 1});
    }
    if (auto f = lookup_func(id)) {
      expect('(');
      auto arg = expression();
      expect(')');
      return make(Call{*f, arg});
    }
    if (id == "sum") return summation(m);
    for (auto it = bound_.rbegin(); it != bound_.rend(); ++it)
      if (*it == id) return make(BoundVar{id, static_cast<std::size_t>(std::distance(it, bound_.rend()) - 1)});
    fail_at(m, "unknown identifier '" + id + "'");
  }

  NodePtr summation(const Mark& at) {
    expect('(');
    const auto name_mark = mark();
    const std::string name = identifier();
    if (name.empty()) fail_at(name_mark, "expected summation variable name");
    if (name == "x" || name == "sum" || lookup_func(name) ||
        (name[0] == 'x' && name.find_first_not_of("0123456789", 1) == std::string::npos))
      fail_at(name_mark, "reserved name '" + name + "' used as summation variable");
    expect(',');
    const long lo = integer_literal();
    expect(',');
    const long hi = integer_literal();
    if (lo > hi) fail_at(at, "summation lower bound exceeds upper bound");
    expect(',');
    bound_.push_back(name);
    auto body = expression();
    bound_.pop_back();
    expect(')');
    return make(Sum{name, lo, hi, body});
  }

  std::string_view src_;
  std::size_t n_;
  std::size_t pos_ = 0, line_ = 1, col_ = 1;
  std::vector<std::string> bound_;
};

inline bool depends_on_x(const Node& node);

/// Parse-time check that every x(...) index is an integer in 1..n for every
/// value its enclosing sums can take.
inline void check_indices(const Node& node, Env& env, std::size_t n) {
  struct Visitor {
    Env& env;
    std::size_t n;
    void operator()(const Number&) const {}
    void operator()(const Var&) const {}
    void operator()(const BoundVar&) const {}
    void operator()(const IndexedVar& iv) const {
      if (depends_on_x(*iv.index))
        throw ParseError("variable index must not depend on x", iv.line, iv.column);
      try {
        resolve_index(iv, env, n);
      } catch (const EvalError&) {
        throw ParseError("variable index out of range 1.." + std::to_string(n), iv.line, iv.column);
      }
    }
    void operator()(const Negate& u) const { check_indices(*u.operand, env, n); }
    void operator()(const Binary& b) const {
      check_indices(*b.lhs, env, n);
      check_indices(*b.rhs, env, n);
    }
    void operator()(const Call& c) const { check_indices(*c.arg, env, n); }
    void operator()(const Sum& s) const {
      env.bound.push_back(0.0);
      for (long k = s.lo; k <= s.hi; ++k) {
        env.bound.back() = static_cast<double>(k);
        check_indices(*s.body, env, n);
      }
      env.bound.pop_back();
    }
  };
  std::visit(Visitor{env, n}, node.v);
}

inline bool depends_on_x(const Node& node) {
  struct Visitor {
    bool operator()(const Number&) const { return false; }
    bool operator()(const Var&) const { return true; }
    bool operator()(const IndexedVar&) const { return true; }
    bool operator()(const BoundVar&) const { return false; }
    bool operator()(const Negate& u) const { return depends_on_x(*u.operand); }
    bool operator()(const Binary& b) const { return depends_on_x(*b.lhs) || depends_on_x(*b.rhs); }
    bool operator()(const Call& c) const { return depends_on_x(*c.arg); }
    bool operator()(const Sum& s) const { return depends_on_x(*s.body); }
  };
  return std::visit(Visitor{}, node.v);
}

}  // namespace expr_detail

/// Parsed objective. Immutable and cheap to copy; evaluation is reentrant.
class Expr {
 public:
  Expr() = default;

  std::size_t dimension() const noexcept { return n_; }
  bool empty() const noexcept { return !root_; }

  double operator()(const Vector& x) const {
    if (!root_) throw Error("evaluating an empty expression");
    if (static_cast<std::size_t>(x.size()) != n_)
      throw DimensionError("objective point length", n_, static_cast<std::size_t>(x.size()));
    expr_detail::Env env{&x, {}};
    return expr_detail::eval_node(*root_, env);
  }

  /// Fully parenthesized text that parses back to an equivalent expression.
  std::string render() const {
    std::string out;
    if (root_) expr_detail::render_node(*root_, out);
    return out;
  }

 private:
  friend Expr parse(std::string_view src, std::size_t n);
  Expr(expr_detail::NodePtr root, std::size_t n) : root_(std::move(root)), n_(n) {}

  expr_detail::NodePtr root_;
  std::size_t n_ = 0;
};

/// Parses `src` as an objective over n variables. Throws ParseError with the
/// 1-based line/column of the offending token.
inline Expr parse(std::string_view src, std::size_t n) {
  auto root = expr_detail::Parser(src, n).parse();
  expr_detail::Env env{nullptr, {}};
  expr_detail::check_indices(*root, env, n);
  return Expr(std::move(root), n);
}

inline double eval(const Expr& expr, const Vector& x) { return expr(x); }

inline std::string render(const Expr& expr) { return expr.render(); }

}  // namespace freaco
