#pragma once

// Negative (Hirzebruch-Jung) continued fractions.
//
//   [a1, ..., an] = a1 - 1/(a2 - 1/(... - 1/an))
//
// Every p/q with p > q >= 1 has exactly one expansion with all ai >= 2.
// The empty string stands for 1/0, the lens space L(1,0) = S^3.

#include <cstdint>
#include <initializer_list>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace qhb {

using Integer = boost::multiprecision::cpp_int;

/// p/q in lowest terms with p >= 1 and 0 <= q < p, or the S^3 value 1/0.
class Fraction {
 public:
  /// Reduces to lowest terms. Throws DomainError unless the reduced pair
  /// satisfies the invariants above.
  Fraction(Integer p, Integer q);

  static Fraction s3() { return Fraction(1, 0); }

  const Integer& p() const noexcept { return p_; }
  const Integer& q() const noexcept { return q_; }
  bool is_s3() const noexcept { return p_ == 1; }

  std::string to_string() const;

  friend bool operator==(const Fraction&, const Fraction&) = default;

 private:
  Integer p_;
  Integer q_;
};

enum class Flavor { Canonical, Loose };

/// Integer weights of a linear chain, read in chain order.
class WeightString {
 public:
  using value_type = std::int64_t;

  WeightString() = default;
  explicit WeightString(std::vector<value_type> entries);
  WeightString(std::initializer_list<value_type> entries)
      : WeightString(std::vector<value_type>(entries)) {}

  /// Throws DomainError if any entry is < 2.
  static WeightString canonical(std::vector<value_type> entries);

  Flavor flavor() const noexcept { return flavor_; }
  bool is_canonical() const noexcept { return flavor_ == Flavor::Canonical; }

  const std::vector<value_type>& entries() const noexcept { return entries_; }
  std::size_t size() const noexcept { return entries_.size(); }
  bool empty() const noexcept { return entries_.empty(); }
  value_type operator[](std::size_t i) const { return entries_[i]; }
  value_type front() const { return entries_.front(); }
  value_type back() const { return entries_.back(); }
  auto begin() const noexcept { return entries_.begin(); }
  auto end() const noexcept { return entries_.end(); }

  /// Sum of entries.
  std::int64_t weight() const noexcept;

  /// "[2,10,2]"
  std::string to_string() const;

  friend bool operator==(const WeightString& a, const WeightString& b) {
    return a.entries_ == b.entries_;
  }
  friend auto operator<=>(const WeightString& a, const WeightString& b) {
    return a.entries_ <=> b.entries_;
  }

 private:
  std::vector<value_type> entries_;
  Flavor flavor_ = Flavor::Canonical;
};

/// Canonical expansion of p/q. Requires p > q >= 1.
WeightString expand(const Fraction& f);

/// Removes entries equal to 1 (blow-downs) until the string is canonical.
/// An interior 1 decrements both neighbours; an end 1 decrements its single
/// neighbour. Throws DomainError as soon as an entry <= 0 appears.
WeightString blow_down(const WeightString& s);

/// Value of the string. Loose strings are blown down first; the result of a
/// blow-down at the front keeps the numerator and changes the denominator
/// only modulo p, so the returned q is always reduced mod p.
Fraction eval(const WeightString& s);

/// Numerator/denominator of [a1..an] for arbitrary integer entries via the
/// negative continuant recursion. No normalization and no sign convention.
std::pair<Integer, Integer> continuant(const WeightString& s);

/// Riemenschneider dual: the unique canonical string b with
/// 1/[a] + 1/[b] = 1. Computed by the point rule and checked against the
/// fraction route p/(p-q); a disagreement is a logic_error.
WeightString dual(const WeightString& s);

/// Dual by the point-rule dot diagram only.
WeightString dual_point_rule(const WeightString& s);

/// Dual by expanding p/(p-q) only.
WeightString dual_by_fraction(const WeightString& s);

/// True iff b2/a2 + b3/a3 = 1, given as fractions alpha/beta.
bool is_complementary(const Fraction& leg2, const Fraction& leg3);

WeightString reverse(const WeightString& s);

/// Inverse of a modulo m (m >= 1). Throws DomainError if gcd(a, m) != 1.
Integer mod_inverse(const Integer& a, const Integer& m);

/// Floor of the square root of n >= 0.
Integer isqrt(const Integer& n);
bool is_perfect_square(const Integer& n);

}  // namespace qhb
