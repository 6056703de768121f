#pragma once

// Seifert invariants, star-shaped plumbing graphs and their intersection
// forms.

#include <cstdint>
#include <string>
#include <vector>

#include "qhb/cfrac.hpp"

namespace qhb {

struct SeifertLeg {
  Integer alpha;
  Integer beta;

  friend bool operator==(const SeifertLeg&, const SeifertLeg&) = default;
};

/// Y(b; (alpha1, beta1), ..., (alphak, betak)).
struct SeifertInvariants {
  Integer b;
  std::vector<SeifertLeg> legs;

  /// "-2;55/19,2/1,2/1"
  std::string to_string() const;

  friend bool operator==(const SeifertInvariants&, const SeifertInvariants&) = default;
};

/// Brings every beta into (0, alpha), moving integer parts into b.
/// Throws DomainError on alpha < 2 or gcd(alpha, beta) != 1.
SeifertInvariants normalize(const SeifertInvariants& inv);

/// Invariants of -Y: b -> -b - k, (alpha, beta) -> (alpha, alpha - beta).
SeifertInvariants orientation_reverse(const SeifertInvariants& inv);

/// Rational Euler number numerator and denominator: e = b + sum beta/alpha,
/// returned as (num, den) with den = product of alphas (not reduced).
std::pair<Integer, Integer> euler_number(const SeifertInvariants& inv);

/// Central vertex of weight -a0 with up to three legs. Each leg lists its
/// weights from the vertex adjacent to the centre outwards.
struct StarGraph {
  std::int64_t a0 = 0;
  std::vector<WeightString> legs;

  std::size_t vertex_count() const noexcept;
  std::string to_string() const;

  friend bool operator==(const StarGraph&, const StarGraph&) = default;
  friend auto operator<=>(const StarGraph&, const StarGraph&) = default;
};

struct OrientedStar {
  StarGraph graph;
  bool orientation_flipped = false;
};

/// Canonical negative-definite plumbing graph of Y or, failing that, of -Y.
/// Requires normalized invariants. Throws NotRationalHomologySphere when
/// e(Y) = 0 and DegenerateInput when neither orientation is canonical.
OrientedStar to_star_graph(const SeifertInvariants& inv);

/// Seifert invariants whose canonical graph is `g` (empty legs dropped).
SeifertInvariants to_seifert(const StarGraph& g);

/// Linear chain of a Seifert space with at most two legs:
/// reverse(leg1), a0, leg2. Entries may be < 2.
WeightString to_linear_chain(const SeifertInvariants& inv);

/// Symmetric integer matrix in row-major order.
class GramMatrix {
 public:
  GramMatrix() = default;
  explicit GramMatrix(std::size_t n) : n_(n), entries_(n * n, 0) {}

  std::size_t rank() const noexcept { return n_; }
  std::int64_t operator()(std::size_t i, std::size_t j) const { return entries_[i * n_ + j]; }
  std::int64_t& operator()(std::size_t i, std::size_t j) { return entries_[i * n_ + j]; }

  friend bool operator==(const GramMatrix&, const GramMatrix&) = default;

 private:
  std::size_t n_ = 0;
  std::vector<std::int64_t> entries_;
};

/// Vertex order: centre, then each leg in order, each from the centre out.
GramMatrix gram(const StarGraph& g);
/// Tridiagonal chain matrix.
GramMatrix gram(const WeightString& s);

/// Exact determinant (fraction-free elimination).
Integer determinant(const GramMatrix& m);

/// True iff (-1)^k times every k x k leading principal minor is positive.
bool is_negative_definite(const GramMatrix& m);

/// |det Q| = |H_1| of the boundary.
Integer h1_order(const StarGraph& g);

}  // namespace qhb
