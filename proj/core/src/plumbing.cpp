#include "qhb/plumbing.hpp"

#include <optional>
#include <utility>

#include "qhb/errors.hpp"

namespace qhb {
namespace {

// Floor division for a positive divisor.
Integer floor_div(const Integer& a, const Integer& d) {
  Integer q = a / d;
  if (a % d != 0 && a < 0) --q;
  return q;
}

// Fraction-free Gaussian elimination. When `leading_minors` is non-null no
// pivoting is done and the k-th leading principal minor is appended for each
// k; elimination stops at the first zero minor.
Integer bareiss(const GramMatrix& m, std::vector<Integer>* leading_minors) {
  const std::size_t n = m.rank();
  if (n == 0) return 1;
  std::vector<Integer> a(n * n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) a[i * n + j] = m(i, j);
  auto at = [&](std::size_t i, std::size_t j) -> Integer& { return a[i * n + j]; };

  Integer sign = 1;
  Integer prev = 1;
  for (std::size_t k = 0; k < n; ++k) {
    if (at(k, k) == 0) {
      if (leading_minors) {
        leading_minors->push_back(0);
        return 0;
      }
      std::size_t swap_row = k + 1;
      while (swap_row < n && at(swap_row, k) == 0) ++swap_row;
      if (swap_row == n) return 0;
      for (std::size_t j = 0; j < n; ++j) std::swap(at(k, j), at(swap_row, j));
      sign = -sign;
    }
    if (leading_minors) leading_minors->push_back(at(k, k));
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) {
        at(i, j) = (at(i, j) * at(k, k) - at(i, k) * at(k, j)) / prev;
      }
      at(i, k) = 0;
    }
    prev = at(k, k);
  }
  return sign * at(n - 1, n - 1);
}

}  // namespace

std::string SeifertInvariants::to_string() const {
  std::string out = b.str() + ";";
  for (std::size_t i = 0; i < legs.size(); ++i) {
    if (i) out += ',';
    out += legs[i].alpha.str() + "/" + legs[i].beta.str();
  }
  return out;
}

SeifertInvariants normalize(const SeifertInvariants& inv) {
  SeifertInvariants out{inv.b, {}};
  for (const auto& leg : inv.legs) {
    if (leg.alpha < 2) {
      throw DomainError("Seifert leg " + leg.alpha.str() + "/" + leg.beta.str() + " needs alpha >= 2");
    }
    if (boost::multiprecision::gcd(leg.alpha, leg.beta) != 1) {
      throw DomainError("Seifert leg " + leg.alpha.str() + "/" + leg.beta.str() + " is not coprime");
    }
    Integer shift = floor_div(leg.beta, leg.alpha);
    out.legs.push_back({leg.alpha, leg.beta - shift * leg.alpha});
    out.b += shift;
  }
  return out;
}

SeifertInvariants orientation_reverse(const SeifertInvariants& inv) {
  const SeifertInvariants n = normalize(inv);
  SeifertInvariants out{-n.b - static_cast<long>(n.legs.size()), {}};
  for (const auto& leg : n.legs) out.legs.push_back({leg.alpha, leg.alpha - leg.beta});
  return out;
}

std::pair<Integer, Integer> euler_number(const SeifertInvariants& inv) {
  Integer num = inv.b;
  Integer den = 1;
  for (const auto& leg : inv.legs) {
    // num/den + beta/alpha
    num = num * leg.alpha + leg.beta * den;
    den *= leg.alpha;
  }
  return {num, den};
}

std::size_t StarGraph::vertex_count() const noexcept {
  std::size_t n = 1;
  for (const auto& leg : legs) n += leg.size();
  return n;
}

std::string StarGraph::to_string() const {
  std::string out = "{a0=" + std::to_string(a0) + "; legs=";
  for (std::size_t i = 0; i < legs.size(); ++i) {
    if (i) out += ',';
    out += legs[i].to_string();
  }
  return out + "}";
}

namespace {

std::optional<StarGraph> canonical_graph(const SeifertInvariants& inv) {
  if (inv.b >= 0) return std::nullopt;
  StarGraph g;
  g.a0 = static_cast<std::int64_t>(-inv.b);
  for (const auto& leg : inv.legs) g.legs.push_back(expand(Fraction(leg.alpha, leg.beta)));
  if (!is_negative_definite(gram(g))) return std::nullopt;
  return g;
}

}  // namespace

OrientedStar to_star_graph(const SeifertInvariants& inv) {
  const SeifertInvariants n = normalize(inv);
  if (n.legs.size() > 3) {
    throw DomainError("star graphs carry at most three legs, got " + std::to_string(n.legs.size()));
  }
  if (euler_number(n).first == 0) {
    throw NotRationalHomologySphere("Y(" + n.to_string() + ") has Euler number 0");
  }
  if (auto g = canonical_graph(n)) return {std::move(*g), false};
  if (auto g = canonical_graph(orientation_reverse(n))) return {std::move(*g), true};
  throw DegenerateInput("no orientation of Y(" + n.to_string() + ") has a canonical negative-definite graph");
}

SeifertInvariants to_seifert(const StarGraph& g) {
  SeifertInvariants inv{-Integer(g.a0), {}};
  for (const auto& leg : g.legs) {
    if (leg.empty()) continue;
    const Fraction f = eval(leg);
    inv.legs.push_back({f.p(), f.q()});
  }
  return inv;
}

WeightString to_linear_chain(const SeifertInvariants& inv) {
  const SeifertInvariants n = normalize(inv);
  if (n.legs.size() > 2) {
    throw DomainError("a linear chain needs at most two legs, got " + std::to_string(n.legs.size()));
  }
  std::vector<WeightString::value_type> chain;
  if (!n.legs.empty()) {
    const WeightString first = expand(Fraction(n.legs[0].alpha, n.legs[0].beta));
    chain.assign(first.entries().rbegin(), first.entries().rend());
  }
  chain.push_back(static_cast<WeightString::value_type>(-n.b));
  if (n.legs.size() == 2) {
    const WeightString second = expand(Fraction(n.legs[1].alpha, n.legs[1].beta));
    chain.insert(chain.end(), second.begin(), second.end());
  }
  return WeightString(std::move(chain));
}

GramMatrix gram(const StarGraph& g) {
  GramMatrix m(g.vertex_count());
  m(0, 0) = -g.a0;
  std::size_t index = 1;
  for (const auto& leg : g.legs) {
    std::size_t previous = 0;
    for (auto weight : leg) {
      m(index, index) = -weight;
      m(index, previous) = m(previous, index) = 1;
      previous = index++;
    }
  }
  return m;
}

GramMatrix gram(const WeightString& s) {
  GramMatrix m(s.size());
  for (std::size_t i = 0; i < s.size(); ++i) {
    m(i, i) = -s[i];
    if (i + 1 < s.size()) m(i, i + 1) = m(i + 1, i) = 1;
  }
  return m;
}

Integer determinant(const GramMatrix& m) { return bareiss(m, nullptr); }

bool is_negative_definite(const GramMatrix& m) {
  std::vector<Integer> minors;
  bareiss(m, &minors);
  if (minors.size() != m.rank()) return false;
  for (std::size_t k = 0; k < minors.size(); ++k) {
    // minor of order k+1 must have sign (-1)^(k+1)
    const bool odd = (k % 2) == 0;
    if (odd ? minors[k] >= 0 : minors[k] <= 0) return false;
  }
  return true;
}

Integer h1_order(const StarGraph& g) { return abs(determinant(gram(g))); }

}  // namespace qhb
