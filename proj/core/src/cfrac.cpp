#include "qhb/cfrac.hpp"

#include <algorithm>
#include <limits>
#include <numeric>
#include <stdexcept>

#include <boost/multiprecision/integer.hpp>

#include "qhb/errors.hpp"

namespace qhb {

Fraction::Fraction(Integer p, Integer q) : p_(std::move(p)), q_(std::move(q)) {
  if (p_ < 1 || q_ < 0) {
    throw DomainError("fraction " + p_.str() + "/" + q_.str() + " needs p >= 1 and q >= 0");
  }
  Integer g = boost::multiprecision::gcd(p_, q_);
  p_ /= g;
  q_ /= g;
  if (q_ >= p_ && !(p_ == 1 && q_ == 0)) {
    throw DomainError("fraction " + p_.str() + "/" + q_.str() + " needs q < p");
  }
}

std::string Fraction::to_string() const { return p_.str() + "/" + q_.str(); }

WeightString::WeightString(std::vector<value_type> entries) : entries_(std::move(entries)) {
  bool canonical = std::all_of(entries_.begin(), entries_.end(), [](value_type a) { return a >= 2; });
  flavor_ = canonical ? Flavor::Canonical : Flavor::Loose;
}

WeightString WeightString::canonical(std::vector<value_type> entries) {
  WeightString s(std::move(entries));
  if (!s.is_canonical()) {
    throw DomainError("string " + s.to_string() + " has an entry below 2");
  }
  return s;
}

std::int64_t WeightString::weight() const noexcept {
  return std::accumulate(entries_.begin(), entries_.end(), std::int64_t{0});
}

std::string WeightString::to_string() const {
  std::string out = "[";
  for (std::size_t i = 0; i < entries_.size(); ++i) {
    if (i) out += ',';
    out += std::to_string(entries_[i]);
  }
  return out + "]";
}

WeightString expand(const Fraction& f) {
  if (f.q() == 0 || f.q() >= f.p()) {
    throw DomainError("expand needs p > q >= 1, got " + f.to_string());
  }
  std::vector<WeightString::value_type> out;
  Integer p = f.p();
  Integer q = f.q();
  while (q != 0) {
    // a = ceil(p/q); p/q = a - 1/(q/(a*q - p))
    Integer a = (p + q - 1) / q;
    if (a > std::numeric_limits<WeightString::value_type>::max()) {
      throw DomainError("expansion entry " + a.str() + " does not fit in 64 bits");
    }
    out.push_back(static_cast<WeightString::value_type>(a));
    Integer next = a * q - p;
    p = std::move(q);
    q = std::move(next);
  }
  return WeightString(std::move(out));
}

WeightString blow_down(const WeightString& s) {
  std::vector<WeightString::value_type> a = s.entries();
  for (;;) {
    auto bad = std::find_if(a.begin(), a.end(), [](auto x) { return x <= 0; });
    if (bad != a.end()) {
      throw DomainError("string " + s.to_string() + " does not normalize: entry " +
                        std::to_string(*bad) + " at position " +
                        std::to_string(bad - a.begin()));
    }
    auto one = std::find(a.begin(), a.end(), 1);
    if (one == a.end()) break;
    const auto i = static_cast<std::size_t>(one - a.begin());
    if (i > 0) --a[i - 1];
    if (i + 1 < a.size()) --a[i + 1];
    a.erase(one);
  }
  return WeightString(std::move(a));
}

std::pair<Integer, Integer> continuant(const WeightString& s) {
  Integer num = 1;
  Integer den = 0;
  for (auto it = s.entries().rbegin(); it != s.entries().rend(); ++it) {
    Integer next = Integer(*it) * num - den;
    den = std::move(num);
    num = std::move(next);
  }
  return {num, den};
}

Fraction eval(const WeightString& s) {
  const WeightString canon = s.is_canonical() ? s : blow_down(s);
  auto [p, q] = continuant(canon);
  if (p <= 0) {
    throw DomainError("string " + s.to_string() + " has non-positive value");
  }
  return Fraction(p, p == 1 ? Integer(0) : Integer(q % p));
}

WeightString dual_point_rule(const WeightString& s) {
  if (!s.is_canonical() || s.empty()) {
    throw DomainError("dual needs a non-empty canonical string, got " + s.to_string());
  }
  // Row i carries a_i - 1 dots; each row starts in the column where the
  // previous one ended. Column heights plus one give the dual.
  std::vector<WeightString::value_type> heights;
  std::size_t column = 0;
  for (std::size_t i = 0; i < s.size(); ++i) {
    const auto dots = static_cast<std::size_t>(s[i] - 1);
    const std::size_t start = column;
    if (heights.size() < start + dots) heights.resize(start + dots, 0);
    for (std::size_t c = start; c < start + dots; ++c) ++heights[c];
    column = start + dots - 1;
  }
  for (auto& h : heights) h += 1;
  return WeightString(std::move(heights));
}

WeightString dual_by_fraction(const WeightString& s) {
  if (!s.is_canonical() || s.empty()) {
    throw DomainError("dual needs a non-empty canonical string, got " + s.to_string());
  }
  const Fraction f = eval(s);
  return expand(Fraction(f.p(), f.p() - f.q()));
}

WeightString dual(const WeightString& s) {
  WeightString by_rule = dual_point_rule(s);
  if (by_rule != dual_by_fraction(s)) {
    throw std::logic_error("point-rule dual disagrees with fraction dual for " + s.to_string());
  }
  return by_rule;
}

bool is_complementary(const Fraction& leg2, const Fraction& leg3) {
  // beta2/alpha2 + beta3/alpha3 = 1  <=>  beta2*alpha3 + beta3*alpha2 = alpha2*alpha3
  return leg2.q() * leg3.p() + leg3.q() * leg2.p() == leg2.p() * leg3.p();
}

WeightString reverse(const WeightString& s) {
  std::vector<WeightString::value_type> r(s.entries().rbegin(), s.entries().rend());
  return WeightString(std::move(r));
}

Integer mod_inverse(const Integer& a, const Integer& m) {
  if (m < 1) throw DomainError("modulus must be positive");
  if (m == 1) return 0;
  Integer old_r = ((a % m) + m) % m, r = m;
  Integer old_s = 1, s = 0;
  while (r != 0) {
    Integer quot = old_r / r;
    Integer tmp = old_r - quot * r;
    old_r = r;
    r = tmp;
    tmp = old_s - quot * s;
    old_s = s;
    s = tmp;
  }
  if (old_r != 1) throw DomainError(a.str() + " is not invertible mod " + m.str());
  return ((old_s % m) + m) % m;
}

Integer isqrt(const Integer& n) {
  if (n < 0) throw DomainError("isqrt of a negative number");
  return boost::multiprecision::sqrt(n);
}

bool is_perfect_square(const Integer& n) {
  if (n < 0) return false;
  Integer r = isqrt(n);
  return r * r == n;
}

}  // namespace qhb
