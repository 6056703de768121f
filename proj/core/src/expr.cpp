#include "qhb/expr.hpp"

#include <algorithm>
#include <cctype>

#include "qhb/errors.hpp"

namespace qhb {

struct Expression::Node {
  enum class Kind { Number, Slot, Unary, Binary, Call } kind;
  Integer value;
  std::size_t slot = 0;
  std::string op;
  std::vector<std::shared_ptr<const Node>> args;
};

namespace {

using Node = Expression::Node;
using NodePtr = std::shared_ptr<const Node>;

Integer floor_div(const Integer& a, const Integer& b) {
  if (b == 0) throw DomainError("division by zero in expression");
  Integer q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}

Integer eval_node(const Node& n, std::span<const Integer> values) {
  switch (n.kind) {
    case Node::Kind::Number:
      return n.value;
    case Node::Kind::Slot:
      return values[n.slot];
    case Node::Kind::Unary: {
      Integer x = eval_node(*n.args[0], values);
      if (n.op == "-") return -x;
      return x == 0 ? 1 : 0;
    }
    case Node::Kind::Binary: {
      if (n.op == "&&") return (eval_node(*n.args[0], values) != 0 && eval_node(*n.args[1], values) != 0) ? 1 : 0;
      if (n.op == "||") return (eval_node(*n.args[0], values) != 0 || eval_node(*n.args[1], values) != 0) ? 1 : 0;
      const Integer a = eval_node(*n.args[0], values);
      const Integer b = eval_node(*n.args[1], values);
      if (n.op == "+") return a + b;
      if (n.op == "-") return a - b;
      if (n.op == "*") return a * b;
      if (n.op == "/") return floor_div(a, b);
      if (n.op == "%") return a - b * floor_div(a, b);
      if (n.op == "==") return (a == b) ? 1 : 0;
      if (n.op == "!=") return (a != b) ? 1 : 0;
      if (n.op == "<") return (a < b) ? 1 : 0;
      if (n.op == "<=") return (a <= b) ? 1 : 0;
      if (n.op == ">") return (a > b) ? 1 : 0;
      if (n.op == ">=") return (a >= b) ? 1 : 0;
      break;
    }
    case Node::Kind::Call: {
      std::vector<Integer> xs;
      for (const auto& arg : n.args) xs.push_back(eval_node(*arg, values));
      if (n.op == "gcd") return boost::multiprecision::gcd(xs[0], xs[1]);
      if (n.op == "isqrt") return isqrt(xs[0]);
      if (n.op == "abs") return abs(xs[0]);
      if (n.op == "min") return std::min(xs[0], xs[1]);
      if (n.op == "max") return std::max(xs[0], xs[1]);
      break;
    }
  }
  throw std::logic_error("unknown expression node " + n.op);
}

class Parser {
 public:
  Parser(std::string_view text, const std::vector<std::string>& slots) : text_(text), slots_(slots) {}

  NodePtr parse() {
    NodePtr root = parse_or();
    skip_space();
    if (pos_ != text_.size()) fail("unexpected '" + std::string(1, text_[pos_]) + "'");
    return root;
  }

  std::vector<std::size_t> used() {
    std::sort(used_.begin(), used_.end());
    used_.erase(std::unique(used_.begin(), used_.end()), used_.end());
    return used_;
  }

 private:
  [[noreturn]] void fail(const std::string& what) const {
    throw SyntaxError("expression '" + std::string(text_) + "': " + what, pos_);
  }

  void skip_space() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool accept(std::string_view token) {
    skip_space();
    if (text_.substr(pos_, token.size()) == token) {
      // Do not split "<=" into "<" "=".
      if (token.size() == 1 && (token == "<" || token == ">" || token == "!") && pos_ + 1 < text_.size() &&
          text_[pos_ + 1] == '=')
        return false;
      pos_ += token.size();
      return true;
    }
    return false;
  }

  static NodePtr binary(std::string op, NodePtr a, NodePtr b) {
    auto n = std::make_shared<Node>();
    n->kind = Node::Kind::Binary;
    n->op = std::move(op);
    n->args = {std::move(a), std::move(b)};
    return n;
  }

  NodePtr parse_or() {
    NodePtr left = parse_and();
    while (accept("||")) left = binary("||", left, parse_and());
    return left;
  }

  NodePtr parse_and() {
    NodePtr left = parse_cmp();
    while (accept("&&")) left = binary("&&", left, parse_cmp());
    return left;
  }

  NodePtr parse_cmp() {
    NodePtr left = parse_sum();
    for (std::string_view op : {"==", "!=", "<=", ">=", "<", ">"}) {
      if (accept(op)) return binary(std::string(op), left, parse_sum());
    }
    return left;
  }

  NodePtr parse_sum() {
    NodePtr left = parse_product();
    for (;;) {
      if (accept("+")) left = binary("+", left, parse_product());
      else if (accept("-")) left = binary("-", left, parse_product());
      else return left;
    }
  }

  NodePtr parse_product() {
    NodePtr left = parse_unary();
    for (;;) {
      if (accept("*")) left = binary("*", left, parse_unary());
      else if (accept("/")) left = binary("/", left, parse_unary());
      else if (accept("%")) left = binary("%", left, parse_unary());
      else return left;
    }
  }

  NodePtr parse_unary() {
    for (std::string_view op : {"-", "!"}) {
      if (accept(op)) {
        auto n = std::make_shared<Node>();
        n->kind = Node::Kind::Unary;
        n->op = std::string(op);
        n->args = {parse_unary()};
        return n;
      }
    }
    return parse_primary();
  }

  NodePtr parse_primary() {
    skip_space();
    if (pos_ >= text_.size()) fail("unexpected end of input");
    if (accept("(")) {
      NodePtr inner = parse_or();
      if (!accept(")")) fail("expected ')'");
      return inner;
    }
    const char c = text_[pos_];
    if (std::isdigit(static_cast<unsigned char>(c))) {
      const std::size_t start = pos_;
      while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
      auto n = std::make_shared<Node>();
      n->kind = Node::Kind::Number;
      n->value = Integer(std::string(text_.substr(start, pos_ - start)));
      return n;
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      const std::size_t start = pos_;
      while (pos_ < text_.size() &&
             (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_'))
        ++pos_;
      const std::string name(text_.substr(start, pos_ - start));
      if (accept("(")) return parse_call(name, start);
      auto it = std::find(slots_.begin(), slots_.end(), name);
      if (it == slots_.end()) {
        pos_ = start;
        fail("unknown name '" + name + "'");
      }
      auto n = std::make_shared<Node>();
      n->kind = Node::Kind::Slot;
      n->slot = static_cast<std::size_t>(it - slots_.begin());
      used_.push_back(n->slot);
      return n;
    }
    fail("unexpected '" + std::string(1, c) + "'");
  }

  NodePtr parse_call(const std::string& name, std::size_t start) {
    std::size_t arity = 0;
    if (name == "isqrt" || name == "abs") arity = 1;
    else if (name == "gcd" || name == "min" || name == "max") arity = 2;
    else {
      pos_ = start;
      fail("unknown function '" + name + "'");
    }
    auto n = std::make_shared<Node>();
    n->kind = Node::Kind::Call;
    n->op = name;
    n->args.push_back(parse_or());
    while (accept(",")) n->args.push_back(parse_or());
    if (!accept(")")) fail("expected ')'");
    if (n->args.size() != arity) fail(name + " takes " + std::to_string(arity) + " argument(s)");
    return n;
  }

  std::string_view text_;
  const std::vector<std::string>& slots_;
  std::size_t pos_ = 0;
  std::vector<std::size_t> used_;
};

}  // namespace

Expression Expression::compile(std::string_view text, const std::vector<std::string>& slots) {
  Parser parser(text, slots);
  Expression e;
  e.root_ = parser.parse();
  e.used_ = parser.used();
  e.text_ = std::string(text);
  return e;
}

Integer Expression::evaluate(std::span<const Integer> values) const { return eval_node(*root_, values); }

}  // namespace qhb
