#pragma once

// Integer expressions used by the lens-space family asset.
//
// Grammar (C-like precedence):
//   expr    := or
//   or      := and ('||' and)*
//   and     := cmp ('&&' cmp)*
//   cmp     := sum (('=='|'!='|'<'|'<='|'>'|'>=') sum)?
//   sum     := product (('+'|'-') product)*
//   product := unary (('*'|'/'|'%') unary)*
//   unary   := '-' unary | '!' unary | primary
//   primary := integer | name | name '(' expr (',' expr)* ')' | '(' expr ')'
//
// '/' is floor division and '%' the matching non-negative remainder.
// Comparisons and logic yield 0 or 1. Functions: gcd, isqrt, abs, min, max.

#include <memory>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "qhb/cfrac.hpp"

namespace qhb {

class Expression {
 public:
  /// Compiles `text`; every free name must appear in `slots`, and evaluation
  /// takes values in slot order. Throws SyntaxError.
  static Expression compile(std::string_view text, const std::vector<std::string>& slots);

  Integer evaluate(std::span<const Integer> values) const;
  bool holds(std::span<const Integer> values) const { return evaluate(values) != 0; }

  /// Slot indices referenced by the expression, ascending.
  const std::vector<std::size_t>& slots_used() const noexcept { return used_; }
  const std::string& text() const noexcept { return text_; }

  struct Node;

 private:
  std::shared_ptr<const Node> root_;
  std::vector<std::size_t> used_;
  std::string text_;
};

}  // namespace qhb
