#pragma once

// The fn-spec mini-language used by the command line:
//
//   expr   := name [ '[' uint ']' ] [ '(' expr { ',' expr } ')' ]
//           | combinator ':' const '(' expr ')'
//   const  := integer or p/q (scale) / positive integer (other combinators)
//
// One-variable built-ins: mobius (mu), phi, one, id, zero, c, c_bar, mu_bar,
// g, eta, eta_mu, eta_mu_bar, r2, r4, r8. The parameterized ones take their
// modulus inline (c[4]) or from the command-line default (--r / --k).
// Combinators: scale:Q, dilate:K, kovern:K, noverk:K, gcdk:K, lcmk:K applied
// to one expression; dirichlet(f,g), unitary(f,g), product(f,g).
// Several variables: remark-counterexample, ramanujan2, ramanujan_bar2,
// sum2 (n1 + n2), tensor(f1,...,fu); scale/product/dirichlet also accept
// multivariable operands.

#include <cctype>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "multclass/arith_fn.hpp"
#include "multclass/multivar.hpp"
#include "multclass/ramanujan.hpp"

namespace multclass::fnspec {

class FnSpecError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

struct Node {
  std::string name;
  std::optional<u64> index;       // name[index]
  std::optional<std::string> arg; // name:arg
  std::vector<Node> children;
};

struct Defaults {
  std::optional<u64> r;
  std::optional<u64> k;
};

namespace detail {

class Parser {
 public:
  explicit Parser(std::string_view text) : text_(text) {}

  Node parse() {
    Node n = expr();
    skip_ws();
    if (pos_ != text_.size()) error("unexpected '" + std::string(1, text_[pos_]) + "'");
    return n;
  }

 private:
  [[noreturn]] void error(const std::string& what) const {
    throw FnSpecError("fn-spec '" + std::string(text_) + "' at " + std::to_string(pos_) + ": " + what);
  }

  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool eat(char c) {
    skip_ws();
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  std::string ident() {
    skip_ws();
    const std::size_t start = pos_;
    while (pos_ < text_.size()) {
      const char c = text_[pos_];
      if (std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '-') {
        ++pos_;
      } else {
        break;
      }
    }
    if (start == pos_) error("expected a function name");
    return std::string(text_.substr(start, pos_ - start));
  }

  std::string constant() {
    skip_ws();
    const std::size_t start = pos_;
    while (pos_ < text_.size() && (std::isdigit(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '-' ||
                                   text_[pos_] == '/')) {
      ++pos_;
    }
    if (start == pos_) error("expected a constant");
    return std::string(text_.substr(start, pos_ - start));
  }

  u64 uint() {
    const std::string c = constant();
    if (c.find_first_not_of("0123456789") != std::string::npos) error("expected a positive integer, got '" + c + "'");
    try {
      return std::stoull(c);
    } catch (const std::exception&) {
      error("integer out of range: " + c);
    }
  }

  Node expr() {
    Node n;
    n.name = ident();
    if (eat('[')) {
      n.index = uint();
      if (!eat(']')) error("expected ']'");
    }
    if (eat(':')) {
      n.arg = constant();
      if (!eat('(')) error("combinator '" + n.name + "' needs a parenthesized argument");
      n.children.push_back(expr());
      if (!eat(')')) error("expected ')'");
      return n;
    }
    if (eat('(')) {
      n.children.push_back(expr());
      while (eat(',')) n.children.push_back(expr());
      if (!eat(')')) error("expected ')'");
    }
    return n;
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

inline u64 positive_arg(const Node& n) {
  if (!n.arg) throw FnSpecError("'" + n.name + "' needs ':K'");
  const std::string& a = *n.arg;
  if (a.empty() || a.find_first_not_of("0123456789") != std::string::npos) {
    throw FnSpecError("'" + n.name + "' needs a positive integer, got '" + a + "'");
  }
  const u64 k = std::stoull(a);
  if (k == 0) throw FnSpecError("'" + n.name + "' needs a positive integer, got 0");
  return k;
}

inline u64 modulus(const Node& n, const std::optional<u64>& fallback, const char* flag) {
  const std::optional<u64> v = n.index ? n.index : fallback;
  if (!v) throw FnSpecError("'" + n.name + "' needs a parameter: write " + n.name + "[R] or pass " + flag);
  if (*v == 0) throw FnSpecError("'" + n.name + "' parameter must be >= 1");
  return *v;
}

inline void expect_children(const Node& n, std::size_t count) {
  if (n.children.size() != count) {
    throw FnSpecError("'" + n.name + "' takes " + std::to_string(count) + " argument(s), got " +
                      std::to_string(n.children.size()));
  }
}

inline bool is_multi_atom(const std::string& name) {
  return name == "remark-counterexample" || name == "ramanujan2" || name == "ramanujan_bar2" || name == "sum2";
}

}  // namespace detail

inline Node parse(std::string_view text) { return detail::Parser(text).parse(); }

/// Number of variables an expression takes.
inline unsigned arity_of(const Node& n) {
  if (detail::is_multi_atom(n.name)) return 2;
  if (n.name == "tensor") {
    unsigned total = 0;
    for (const auto& c : n.children) total += arity_of(c);
    return total;
  }
  unsigned a = 1;
  for (const auto& c : n.children) a = std::max(a, arity_of(c));
  return a;
}

inline ArithFn build(const Node& n, const Defaults& d = {}) {
  using detail::expect_children;
  namespace rj = ramanujan;
  const std::string& s = n.name;
  if (arity_of(n) != 1) throw FnSpecError("'" + s + "' is a function of several variables; pass --arity");

  if (n.arg) {
    expect_children(n, 1);
    const ArithFn inner = build(n.children[0], d);
    if (s == "scale") {
      Rational c;
      try {
        c = Rational::parse(*n.arg);
      } catch (const std::exception& e) {
        throw FnSpecError(e.what());
      }
      if (c.is_zero()) throw FnSpecError("scale constant must be nonzero");
      return scale(inner, c);
    }
    const u64 k = detail::positive_arg(n);
    if (s == "dilate") return compose(inner, Composition::dilate_kn, k);
    if (s == "kovern") return compose(inner, Composition::k_over_n, k);
    if (s == "noverk") return compose(inner, Composition::n_over_k, k);
    if (s == "gcdk") return compose(inner, Composition::gcd_k, k);
    if (s == "lcmk") return compose(inner, Composition::lcm_k, k);
    throw FnSpecError("unknown combinator '" + s + ":'");
  }

  if (s == "dirichlet" || s == "unitary" || s == "product") {
    expect_children(n, 2);
    const ArithFn f = build(n.children[0], d);
    const ArithFn g = build(n.children[1], d);
    if (s == "dirichlet") return dirichlet(f, g);
    if (s == "unitary") return unitary(f, g);
    return pointwise_product(f, g);
  }

  expect_children(n, 0);
  if (s == "mobius" || s == "mu") return classical(Classical::mobius);
  if (s == "phi") return classical(Classical::euler_phi);
  if (s == "one") return classical(Classical::one);
  if (s == "id") return classical(Classical::identity_n);
  if (s == "zero") return zero_fn();
  if (s == "r2") return sum_of_squares(2);
  if (s == "r4") return sum_of_squares(4);
  if (s == "r8") return sum_of_squares(8);
  if (s == "c") return rj::c_fn(detail::modulus(n, d.r, "--r"));
  if (s == "c_bar") return rj::c_bar_fn(detail::modulus(n, d.r, "--r"));
  if (s == "mu_bar") return rj::mu_bar_fn(detail::modulus(n, d.r, "--r"));
  if (s == "g") return rj::g_fn(detail::modulus(n, d.r, "--r"));
  if (s == "eta") return eta(detail::modulus(n, d.k ? d.k : d.r, "--k"));
  if (s == "eta_mu") return rj::eta_mu_twist(detail::modulus(n, d.r, "--r"));
  if (s == "eta_mu_bar") return rj::eta_mu_bar_twist(detail::modulus(n, d.r, "--r"));
  throw FnSpecError("unknown function '" + s + "'");
}

inline MultiArithFn build_multi(const Node& n, const Defaults& d = {}) {
  using detail::expect_children;
  const std::string& s = n.name;
  if (arity_of(n) == 1 && s != "tensor") {
    const ArithFn f = build(n, d);
    return MultiArithFn(f.name(), 1, [f](const Point& p) { return f(p[0]); });
  }
  if (s == "remark-counterexample") return remark_counterexample();
  if (s == "ramanujan2") return ramanujan::c_two_variable();
  if (s == "ramanujan_bar2") return ramanujan::c_bar_two_variable();
  if (s == "sum2") {
    return {"sum2", 2, [](const Point& p) { return Rational(static_cast<i64>(p[0] + p[1])); }};
  }
  if (s == "tensor") {
    std::vector<ArithFn> parts;
    for (const auto& c : n.children) {
      if (arity_of(c) != 1) throw FnSpecError("tensor operands must be one-variable functions");
      parts.push_back(build(c, d));
    }
    if (parts.empty()) throw FnSpecError("tensor needs at least one operand");
    return tensor(parts);
  }
  if (s == "scale" && n.arg) {
    expect_children(n, 1);
    Rational c;
    try {
      c = Rational::parse(*n.arg);
    } catch (const std::exception& e) {
      throw FnSpecError(e.what());
    }
    if (c.is_zero()) throw FnSpecError("scale constant must be nonzero");
    return scale_u(build_multi(n.children[0], d), c);
  }
  if (s == "product" || s == "dirichlet") {
    expect_children(n, 2);
    const MultiArithFn f = build_multi(n.children[0], d);
    const MultiArithFn g = build_multi(n.children[1], d);
    if (f.arity() != g.arity()) throw FnSpecError("'" + s + "' operands have different arities");
    return s == "product" ? pointwise_product_u(f, g) : dirichlet_u(f, g);
  }
  throw FnSpecError("'" + s + "' is not available for several variables");
}

inline ArithFn build(std::string_view text, const Defaults& d = {}) { return build(parse(text), d); }
inline MultiArithFn build_multi(std::string_view text, const Defaults& d = {}) { return build_multi(parse(text), d); }

/// Human-readable formula for the outermost operation, for report provenance.
inline std::string provenance(const Node& n) {
  const std::string& s = n.name;
  if (s == "c") return "c_r(n) = sum_{d | (n,r)} d mu(r/d)";
  if (s == "c_bar") return "c_bar_r(n) = sum_{d | (n,r)} d mu_bar_r(r/d)";
  if (s == "mu_bar") return "mu_bar_r multiplicative in n from the p-adic cases of r";
  if (s == "g") return "g_r(n) = [n || r]";
  if (s == "eta") return "eta_k(m) = m [m | k]";
  if (s == "eta_mu") return "eta_r(n) mu(r/n)";
  if (s == "eta_mu_bar") return "eta_r(n) mu_bar_r(r/n)";
  if (s == "mobius" || s == "mu") return "mu(n) from the factorization";
  if (s == "phi") return "phi(n) = prod p^(e-1)(p-1)";
  if (s == "one") return "1(n) = 1";
  if (s == "id") return "id(n) = n";
  if (s == "zero") return "0";
  if (s == "r2" || s == "r4" || s == "r8") return "r_s(n) by enumeration of square sums";
  if (s == "dirichlet") return "(f*g)(n) = sum_{d | n} f(d) g(n/d)";
  if (s == "unitary") return "(f+g)(n) = sum_{d || n} f(d) g(n/d)";
  if (s == "product") return "f(n) g(n)";
  if (s == "scale") return "c f(n)";
  if (s == "dilate") return "f(kn)";
  if (s == "kovern") return "f(k/n), 0 unless n | k";
  if (s == "noverk") return "f(n/k), 0 unless k | n";
  if (s == "gcdk") return "f((k,n))";
  if (s == "lcmk") return "f([k,n])";
  if (s == "tensor") return "f_1(n_1) ... f_u(n_u)";
  if (s == "remark-counterexample") return "0 if n1, n2 both odd, else 1";
  if (s == "ramanujan2") return "c_r(n) as f(n, r)";
  if (s == "ramanujan_bar2") return "c_bar_r(n) as f(n, r)";
  if (s == "sum2") return "n1 + n2";
  return s;
}

}  // namespace multclass::fnspec
