#pragma once

#include <bitset>
#include <string>
#include <string_view>

#include "ppc/error.hpp"

namespace ppc::ca {

// Semi-totalistic two-state rule over the Moore neighbourhood, written in
// the usual B<digits>/S<digits> notation.
struct RuleBS {
  std::bitset<9> birth;
  std::bitset<9> survival;

  bool next(bool alive, int live_neighbours) const {
    return alive ? survival.test(static_cast<std::size_t>(live_neighbours))
                 : birth.test(static_cast<std::size_t>(live_neighbours));
  }

  friend bool operator==(const RuleBS&, const RuleBS&) = default;
};

// Parses "B2/S2345" style strings. Duplicated digits collapse. Errors carry
// the 1-based position of the offending character (line is always 1).
inline RuleBS parse_rule(std::string_view text) {
  RuleBS rule;
  std::size_t pos = 0;
  auto fail = [&](const std::string& msg) -> ParseError {
    return ParseError(msg, 1, pos + 1);
  };
  auto expect = [&](char c) {
    if (pos >= text.size()) throw fail(std::string("expected '") + c + "', got end of input");
    if (text[pos] != c && text[pos] != static_cast<char>(c + ('a' - 'A'))) {
      throw fail(std::string("expected '") + c + "', got '" + text[pos] + "'");
    }
    ++pos;
  };
  auto digits = [&](std::bitset<9>& into, char terminator) {
    while (pos < text.size() && text[pos] != terminator) {
      char c = text[pos];
      if (c < '0' || c > '8') {
        throw fail(std::string("invalid neighbour count '") + c + "'");
      }
      into.set(static_cast<std::size_t>(c - '0'));
      ++pos;
    }
  };
  if (text.empty()) throw fail("empty rule string");
  expect('B');
  digits(rule.birth, '/');
  expect('/');
  expect('S');
  digits(rule.survival, '\0');
  return rule;
}

inline std::string format_rule(const RuleBS& rule) {
  std::string out = "B";
  for (std::size_t i = 0; i < 9; ++i)
    if (rule.birth.test(i)) out += static_cast<char>('0' + i);
  out += "/S";
  for (std::size_t i = 0; i < 9; ++i)
    if (rule.survival.test(i)) out += static_cast<char>('0' + i);
  return out;
}

inline const RuleBS& b2s2345() {
  static const RuleBS rule = parse_rule("B2/S2345");
  return rule;
}

}  // namespace ppc::ca
