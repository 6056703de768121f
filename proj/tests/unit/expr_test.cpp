#include <gtest/gtest.h>

#include "qhb/errors.hpp"
#include "qhb/expr.hpp"

namespace qhb {
namespace {

Integer run(std::string_view text, std::vector<Integer> values = {}, std::vector<std::string> slots = {}) {
  return Expression::compile(text, slots).evaluate(values);
}

TEST(Expression, Arithmetic) {
  EXPECT_EQ(run("1 + 2 * 3"), 7);
  EXPECT_EQ(run("(1 + 2) * 3"), 9);
  EXPECT_EQ(run("-7 / 2"), -4);
  EXPECT_EQ(run("-7 % 2"), 1);
  EXPECT_EQ(run("7 % -2"), -1);
  EXPECT_EQ(run("- - 3"), 3);
}

TEST(Expression, ComparisonsAndLogic) {
  EXPECT_EQ(run("2 < 3"), 1);
  EXPECT_EQ(run("2 <= 2 && 3 >= 4"), 0);
  EXPECT_EQ(run("2 != 2 || 1 == 1"), 1);
  EXPECT_EQ(run("!0"), 1);
  EXPECT_EQ(run("!5"), 0);
}

TEST(Expression, Functions) {
  EXPECT_EQ(run("gcd(12, 18)"), 6);
  EXPECT_EQ(run("isqrt(99)"), 9);
  EXPECT_EQ(run("abs(-4)"), 4);
  EXPECT_EQ(run("min(3, -1) + max(3, -1)"), 2);
}

TEST(Expression, Slots) {
  const auto e = Expression::compile("m * m + k", {"k", "m", "d"});
  EXPECT_EQ(e.slots_used(), (std::vector<std::size_t>{0, 1}));
  const std::vector<Integer> v{1, 4, 0};
  EXPECT_EQ(e.evaluate(v), 17);
  EXPECT_TRUE(Expression::compile("k < m", {"k", "m"}).holds(std::vector<Integer>{1, 2}));
  EXPECT_EQ(e.text(), "m * m + k");
}

TEST(Expression, Errors) {
  try {
    Expression::compile("m + x", {"m"});
    FAIL();
  } catch (const SyntaxError& e) {
    EXPECT_EQ(e.offset(), 4u);
  }
  EXPECT_THROW(Expression::compile("1 +", {}), SyntaxError);
  EXPECT_THROW(Expression::compile("(1", {}), SyntaxError);
  EXPECT_THROW(Expression::compile("gcd(1)", {}), SyntaxError);
  EXPECT_THROW(Expression::compile("sqrt(4)", {}), SyntaxError);
  EXPECT_THROW(Expression::compile("1 2", {}), SyntaxError);
  EXPECT_THROW(run("1 / 0"), DomainError);
}

}  // namespace
}  // namespace qhb
