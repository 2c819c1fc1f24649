#pragma once

// Integer polynomial expressions in x, y, z.
//
//   expr   := term (("+"|"-") term)*
//   term   := factor ("*" factor)*
//   factor := base ("^" nat)?
//   base   := "x" | "y" | "z" | int | "(" expr ")" | "-" base

#include <array>
#include <cctype>
#include <map>
#include <memory>
#include <string>
#include <string_view>

#include "tribound/errors.hpp"
#include "tribound/util.hpp"

namespace tribound {

class PolyExpr {
 public:
  enum class Kind { literal, variable, add, sub, mul, pow, neg };

  struct Node {
    Kind kind;
    Wide literal = 0;
    int variable = 0;  // 0, 1, 2 for x, y, z
    unsigned exponent = 0;
    std::shared_ptr<const Node> lhs;
    std::shared_ptr<const Node> rhs;
  };
  using NodePtr = std::shared_ptr<const Node>;

  PolyExpr() : root_(make_literal(0)) {}
  explicit PolyExpr(NodePtr root) : root_(std::move(root)) {}

  const Node& root() const { return *root_; }

  Wide evaluate(Wide x, Wide y, Wide z) const { return eval(*root_, {x, y, z}); }

  static NodePtr make_literal(Wide v) { return std::make_shared<Node>(Node{Kind::literal, v, 0, 0, nullptr, nullptr}); }
  static NodePtr make_variable(int v) { return std::make_shared<Node>(Node{Kind::variable, 0, v, 0, nullptr, nullptr}); }
  static NodePtr make_binary(Kind k, NodePtr a, NodePtr b) {
    return std::make_shared<Node>(Node{k, 0, 0, 0, std::move(a), std::move(b)});
  }
  static NodePtr make_pow(NodePtr base, unsigned e) {
    return std::make_shared<Node>(Node{Kind::pow, 0, 0, e, std::move(base), nullptr});
  }
  static NodePtr make_neg(NodePtr a) { return std::make_shared<Node>(Node{Kind::neg, 0, 0, 0, std::move(a), nullptr}); }

 private:
  static Wide eval(const Node& n, const std::array<Wide, 3>& v) {
    switch (n.kind) {
      case Kind::literal: return n.literal;
      case Kind::variable: return v[n.variable];
      case Kind::add: return detail::checked_add(eval(*n.lhs, v), eval(*n.rhs, v));
      case Kind::sub: return detail::checked_sub(eval(*n.lhs, v), eval(*n.rhs, v));
      case Kind::mul: return detail::checked_mul(eval(*n.lhs, v), eval(*n.rhs, v));
      case Kind::pow: return detail::checked_pow(eval(*n.lhs, v), n.exponent);
      case Kind::neg: return detail::checked_sub(0, eval(*n.lhs, v));
    }
    return 0;
  }

  NodePtr root_;
};

namespace detail {

class PolyParser {
 public:
  explicit PolyParser(std::string_view text) : text_(text) {}

  PolyExpr parse() {
    skip();
    if (pos_ == text_.size()) throw SyntaxError("empty expression", pos_);
    auto e = expr();
    skip();
    if (pos_ != text_.size()) throw SyntaxError(std::string("unexpected '") + text_[pos_] + "'", pos_);
    return PolyExpr(std::move(e));
  }

 private:
  using Kind = PolyExpr::Kind;
  using NodePtr = PolyExpr::NodePtr;

  void skip() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }
  bool accept(char c) {
    skip();
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  NodePtr expr() {
    auto lhs = term();
    for (;;) {
      if (accept('+'))
        lhs = PolyExpr::make_binary(Kind::add, lhs, term());
      else if (accept('-'))
        lhs = PolyExpr::make_binary(Kind::sub, lhs, term());
      else
        return lhs;
    }
  }

  NodePtr term() {
    auto lhs = factor();
    while (accept('*')) lhs = PolyExpr::make_binary(Kind::mul, lhs, factor());
    return lhs;
  }

  NodePtr factor() {
    auto b = base();
    if (!accept('^')) return b;
    skip();
    const std::size_t at = pos_;
    // Recognise "^-k" and "^(-k)" only to report them precisely.
    std::size_t probe = pos_;
    if (probe < text_.size() && text_[probe] == '(') {
      ++probe;
      while (probe < text_.size() && std::isspace(static_cast<unsigned char>(text_[probe]))) ++probe;
    }
    if (probe < text_.size() && text_[probe] == '-') throw SyntaxError("negative exponent", at);
    if (pos_ >= text_.size() || !std::isdigit(static_cast<unsigned char>(text_[pos_])))
      throw SyntaxError("exponent must be a non-negative integer", at);
    const Wide e = number();
    if (e > 4096) throw SyntaxError("exponent too large", at);
    return PolyExpr::make_pow(b, static_cast<unsigned>(e));
  }

  NodePtr base() {
    skip();
    if (pos_ >= text_.size()) throw SyntaxError("unexpected end of expression", pos_);
    const char c = text_[pos_];
    if (c == '(') {
      ++pos_;
      auto e = expr();
      if (!accept(')')) throw SyntaxError("expected ')'", pos_);
      return e;
    }
    if (c == '-') {
      ++pos_;
      return PolyExpr::make_neg(base());
    }
    if (std::isdigit(static_cast<unsigned char>(c))) return PolyExpr::make_literal(number());
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      const std::size_t at = pos_;
      std::string name;
      while (pos_ < text_.size() && (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_'))
        name.push_back(text_[pos_++]);
      if (name == "x") return PolyExpr::make_variable(0);
      if (name == "y") return PolyExpr::make_variable(1);
      if (name == "z") return PolyExpr::make_variable(2);
      throw SyntaxError("unknown variable '" + name + "'", at);
    }
    throw SyntaxError(std::string("unexpected '") + c + "'", pos_);
  }

  Wide number() {
    const std::size_t at = pos_;
    Wide v = 0;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
      try {
        v = checked_add(checked_mul(v, 10), text_[pos_] - '0');
      } catch (const OverflowError&) {
        throw SyntaxError("integer literal too large", at);
      }
      ++pos_;
    }
    return v;
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

inline bool needs_parens_in_product(const PolyExpr::Node& n) {
  return n.kind == PolyExpr::Kind::add || n.kind == PolyExpr::Kind::sub;
}

inline void print(const PolyExpr::Node& n, std::string& out) {
  using Kind = PolyExpr::Kind;
  auto wrapped = [&](const PolyExpr::Node& c, bool parens) {
    if (parens) out += '(';
    print(c, out);
    if (parens) out += ')';
  };
  switch (n.kind) {
    case Kind::literal: out += to_string(n.literal); return;
    case Kind::variable: out += "xyz"[n.variable]; return;
    case Kind::add:
      print(*n.lhs, out);
      out += " + ";
      print(*n.rhs, out);
      return;
    case Kind::sub:
      print(*n.lhs, out);
      out += " - ";
      wrapped(*n.rhs, needs_parens_in_product(*n.rhs));
      return;
    case Kind::mul:
      wrapped(*n.lhs, needs_parens_in_product(*n.lhs));
      out += '*';
      wrapped(*n.rhs, needs_parens_in_product(*n.rhs));
      return;
    case Kind::pow:
      wrapped(*n.lhs, n.lhs->kind != Kind::literal && n.lhs->kind != Kind::variable);
      out += '^';
      out += std::to_string(n.exponent);
      return;
    case Kind::neg:
      out += '-';
      wrapped(*n.lhs, n.lhs->kind != Kind::literal && n.lhs->kind != Kind::variable);
      return;
  }
}

}  // namespace detail

inline PolyExpr parse_poly(std::string_view text) { return detail::PolyParser(text).parse(); }

/// Re-parseable rendering of the expression tree.
inline std::string to_string(const PolyExpr& e) {
  std::string out;
  detail::print(e.root(), out);
  return out;
}

/// Exponent triple (x, y, z) -> coefficient; zero coefficients are dropped.
using Expansion = std::map<std::array<unsigned, 3>, Wide>;

namespace detail {

inline void add_into(Expansion& acc, const Expansion& b, bool negate) {
  for (const auto& [m, c] : b) {
    Wide& slot = acc[m];
    slot = negate ? checked_sub(slot, c) : checked_add(slot, c);
    if (slot == 0) acc.erase(m);
  }
}

inline Expansion multiply(const Expansion& a, const Expansion& b) {
  Expansion out;
  for (const auto& [ma, ca] : a)
    for (const auto& [mb, cb] : b) {
      const std::array<unsigned, 3> m{ma[0] + mb[0], ma[1] + mb[1], ma[2] + mb[2]};
      Wide& slot = out[m];
      slot = checked_add(slot, checked_mul(ca, cb));
      if (slot == 0) out.erase(m);
    }
  return out;
}

inline Expansion expand(const PolyExpr::Node& n) {
  using Kind = PolyExpr::Kind;
  switch (n.kind) {
    case Kind::literal:
      return n.literal == 0 ? Expansion{} : Expansion{{{0, 0, 0}, n.literal}};
    case Kind::variable: {
      std::array<unsigned, 3> m{0, 0, 0};
      m[n.variable] = 1;
      return Expansion{{m, 1}};
    }
    case Kind::add:
    case Kind::sub: {
      Expansion acc = expand(*n.lhs);
      add_into(acc, expand(*n.rhs), n.kind == Kind::sub);
      return acc;
    }
    case Kind::mul: return multiply(expand(*n.lhs), expand(*n.rhs));
    case Kind::pow: {
      const Expansion base = expand(*n.lhs);
      Expansion acc{{{0, 0, 0}, 1}};
      for (unsigned i = 0; i < n.exponent; ++i) acc = multiply(acc, base);
      return acc;
    }
    case Kind::neg: {
      Expansion acc;
      add_into(acc, expand(*n.lhs), true);
      return acc;
    }
  }
  return {};
}

}  // namespace detail

inline Expansion expand(const PolyExpr& e) { return detail::expand(e.root()); }

/// Fully expanded form with monomials sorted by descending total degree, then
/// descending (x, y, z) exponents. Equal polynomials give equal strings.
/// A leading "-x^k" is written "-1*x^k" because "-x^k" parses as (-x)^k.
inline std::string canonical_string(const PolyExpr& e) {
  const Expansion ex = expand(e);
  if (ex.empty()) return "0";
  std::vector<std::pair<std::array<unsigned, 3>, Wide>> terms(ex.begin(), ex.end());
  std::sort(terms.begin(), terms.end(), [](const auto& a, const auto& b) {
    const unsigned da = a.first[0] + a.first[1] + a.first[2];
    const unsigned db = b.first[0] + b.first[1] + b.first[2];
    if (da != db) return da > db;
    return a.first > b.first;
  });
  std::string out;
  for (std::size_t i = 0; i < terms.size(); ++i) {
    const auto& [m, c] = terms[i];
    Wide mag = c < 0 ? -c : c;
    if (i == 0)
      out += c < 0 ? "-" : "";
    else
      out += c < 0 ? " - " : " + ";
    std::string mono;
    for (int v = 0; v < 3; ++v) {
      if (m[v] == 0) continue;
      if (!mono.empty()) mono += '*';
      mono += "xyz"[v];
      if (m[v] > 1) mono += '^' + std::to_string(m[v]);
    }
    if (mono.empty())
      out += detail::to_string(mag);
    else if (mag == 1 && !(i == 0 && c < 0))
      out += mono;
    else
      out += detail::to_string(mag) + '*' + mono;
  }
  return out;
}

}  // namespace tribound
