#pragma once

#include <cctype>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "ppc/cubelets/kinds.hpp"
#include "ppc/error.hpp"

namespace ppc::cubelets {

struct SourceLoc {
  std::size_t line = 1;
  std::size_t column = 1;
};

struct Expr;
using ExprPtr = std::shared_ptr<const Expr>;

struct TermNode {
  CubeKind kind;
  std::optional<Vec3> pos;
  std::optional<Orientation> orient;
};
struct BlankNode {
  int count = 1;
};
struct ConcatNode {
  std::vector<ExprPtr> items;
};
struct GroupNode {
  ExprPtr inner;
};
// Body repeated `count` times; repetition i is shifted by i * shift.
struct StarNode {
  ExprPtr body;
  int count = 0;
  Vec3 shift;
};

struct Expr {
  std::variant<TermNode, BlankNode, ConcatNode, GroupNode, StarNode> node;
  SourceLoc loc;
};

struct RobotExpr {
  std::string name;  // optional "name =" prefix
  ExprPtr root;      // a ConcatNode, possibly empty
};

namespace detail {

class RobotParser {
 public:
  explicit RobotParser(std::string_view text) : s_(text) {}

  RobotExpr parse() {
    RobotExpr out;
    skip();
    out.name = maybe_name();
    out.root = sequence();
    skip();
    if (!eof()) {
      if (peek() == ')') throw error("unbalanced ')'");
      throw error(std::string("unexpected '") + peek() + "'");
    }
    return out;
  }

 private:
  bool eof() const { return i_ >= s_.size(); }
  char peek(std::size_t ahead = 0) const {
    return i_ + ahead < s_.size() ? s_[i_ + ahead] : '\0';
  }
  SourceLoc here() const { return {line_, col_}; }

  void advance() {
    if (s_[i_] == '\n') {
      ++line_;
      col_ = 1;
    } else {
      ++col_;
    }
    ++i_;
  }

  void skip() {
    while (!eof()) {
      char c = peek();
      if (c == '#') {
        while (!eof() && peek() != '\n') advance();
      } else if (std::isspace(static_cast<unsigned char>(c))) {
        advance();
      } else {
        break;
      }
    }
  }

  ParseError error(const std::string& msg) const { return ParseError(msg, line_, col_); }
  ParseError error(const std::string& msg, SourceLoc at) const {
    return ParseError(msg, at.line, at.column);
  }

  void expect(char c) {
    skip();
    if (eof()) throw error(std::string("expected '") + c + "', got end of input");
    if (peek() != c) throw error(std::string("expected '") + c + "', got '" + peek() + "'");
    advance();
  }

  static bool ident_char(char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_';
  }

  // "w_scar = ..." : look ahead without consuming unless an '=' follows.
  std::string maybe_name() {
    std::size_t j = i_;
    while (j < s_.size() && ident_char(s_[j])) ++j;
    if (j == i_) return {};
    std::size_t k = j;
    while (k < s_.size() && (s_[k] == ' ' || s_[k] == '\t')) ++k;
    if (k >= s_.size() || s_[k] != '=') return {};
    std::string name(s_.substr(i_, j - i_));
    while (i_ <= k) advance();
    skip();
    return name;
  }

  long long integer(bool allow_sign) {
    skip();
    SourceLoc at = here();
    bool neg = false;
    if (allow_sign && (peek() == '-' || peek() == '+')) {
      neg = peek() == '-';
      advance();
    }
    if (!std::isdigit(static_cast<unsigned char>(peek()))) {
      throw error(eof() ? "expected integer, got end of input"
                        : std::string("expected integer, got '") + peek() + "'");
    }
    long long v = 0;
    while (std::isdigit(static_cast<unsigned char>(peek()))) {
      v = v * 10 + (peek() - '0');
      if (v > 1000000) throw error("integer out of range", at);
      advance();
    }
    return neg ? -v : v;
  }

  Vec3 triple() {
    expect('(');
    Vec3 v;
    v.x = static_cast<int>(integer(true));
    expect(',');
    v.y = static_cast<int>(integer(true));
    expect(',');
    v.z = static_cast<int>(integer(true));
    expect(')');
    return v;
  }

  Dir direction() {
    skip();
    auto d = dir_from_char(peek());
    if (!d) {
      throw error(eof() ? "expected direction, got end of input"
                        : std::string("invalid direction '") + peek() + "'");
    }
    advance();
    return *d;
  }

  Orientation orientation() {
    expect('(');
    Orientation o;
    o.f = direction();
    expect(',');
    o.n = direction();
    expect(',');
    o.w = direction();
    expect(')');
    return o;
  }

  ExprPtr make(decltype(Expr::node) node, SourceLoc at) {
    return std::make_shared<const Expr>(Expr{std::move(node), at});
  }

  ExprPtr sequence() {
    SourceLoc at = here();
    ConcatNode seq;
    skip();
    if (eof() || peek() == ')') return make(std::move(seq), at);
    seq.items.push_back(item());
    for (;;) {
      skip();
      if (peek() != '.') break;
      advance();
      seq.items.push_back(item());
    }
    return make(std::move(seq), at);
  }

  ExprPtr item() {
    skip();
    SourceLoc at = here();
    ExprPtr p = primary();
    skip();
    while (peek() == '*') {
      SourceLoc star_at = here();
      advance();
      skip();
      if (!std::isdigit(static_cast<unsigned char>(peek()))) {
        throw error("star without count", star_at);
      }
      StarNode star;
      star.body = p;
      star.count = static_cast<int>(integer(false));
      skip();
      if (peek() == '@') {
        advance();
        star.shift = triple();
      }
      p = make(std::move(star), at);
      skip();
    }
    return p;
  }

  ExprPtr primary() {
    skip();
    SourceLoc at = here();
    if (eof()) throw error("expected term, got end of input");
    char c = peek();
    if (c == '(') {
      advance();
      ExprPtr inner = sequence();
      skip();
      if (eof()) throw error("unbalanced '(' opened", at);
      expect(')');
      return make(GroupNode{inner}, at);
    }
    if (c == 'B' && !std::isalpha(static_cast<unsigned char>(peek(1)))) {
      advance();
      BlankNode b;
      skip();
      if (peek() == '^') {
        advance();
        long long k = integer(false);
        if (k < 1) throw error("blank run must be at least 1", at);
        b.count = static_cast<int>(k);
      }
      return make(b, at);
    }
    if (std::isalpha(static_cast<unsigned char>(c))) {
      std::string word;
      while (std::isalpha(static_cast<unsigned char>(peek()))) {
        word += peek();
        advance();
      }
      auto kind = kind_from_code(word);
      if (!kind) throw error("unknown kind code '" + word + "'", at);
      TermNode t{*kind, std::nullopt, std::nullopt};
      skip();
      if (peek() == '_') {
        advance();
        t.pos = triple();
        skip();
      }
      if (peek() == '^') {
        advance();
        t.orient = orientation();
      }
      return make(t, at);
    }
    if (c == ')') throw error("unbalanced ')'");
    throw error(std::string("unexpected '") + c + "'");
  }

  std::string_view s_;
  std::size_t i_ = 0;
  std::size_t line_ = 1;
  std::size_t col_ = 1;
};

}  // namespace detail

inline RobotExpr parse(std::string_view text) { return detail::RobotParser(text).parse(); }

// Number of cube terms in the expression as written (stars not unrolled).
inline std::size_t term_count(const Expr& e) {
  return std::visit(
      [](const auto& n) -> std::size_t {
        using T = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<T, TermNode>) {
          return 1;
        } else if constexpr (std::is_same_v<T, BlankNode>) {
          return 0;
        } else if constexpr (std::is_same_v<T, ConcatNode>) {
          std::size_t k = 0;
          for (const auto& i : n.items) k += term_count(*i);
          return k;
        } else if constexpr (std::is_same_v<T, GroupNode>) {
          return term_count(*n.inner);
        } else {
          return term_count(*n.body);
        }
      },
      e.node);
}

}  // namespace ppc::cubelets
