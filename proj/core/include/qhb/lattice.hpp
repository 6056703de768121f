#pragma once

// Embeddings of integral lattices (Z^n, Q) into the negative diagonal lattice
// (Z^n, -Id) of the same rank.
//
// Vectors are written in standard coordinates. The lattice pairing is the
// negated dot product, so a witness must satisfy
//   -dot(v_i, v_j) == Q(i, j)   for every pair of vertices i, j.

#include <cstdint>
#include <optional>
#include <vector>

#include "qhb/cfrac.hpp"
#include "qhb/plumbing.hpp"

namespace qhb {

using LatticeVector = std::vector<std::int64_t>;

struct LatticeWitness {
  std::size_t ambient_rank = 0;
  std::vector<LatticeVector> vectors;  // one per vertex, in Gram order

  friend bool operator==(const LatticeWitness&, const LatticeWitness&) = default;
};

struct SearchLimits {
  /// Search nodes (one per coordinate decision) before ResourceExceeded.
  std::uint64_t max_nodes = 20'000'000;
  /// Optional cap on |coordinate|, applied on top of floor(sqrt(weight)).
  std::optional<std::int64_t> coordinate_bound;
  /// Worker threads; 1 is the deterministic sequential search.
  unsigned threads = 1;
  /// Reject immediately when |det Q| is not a perfect square.
  bool determinant_prefilter = true;
};

/// Standard dot product.
std::int64_t dot(const LatticeVector& u, const LatticeVector& v);

/// Lattice pairing in (Z^n, -Id), i.e. -dot(u, v).
std::int64_t pairing(const LatticeVector& u, const LatticeVector& v);

/// Decides whether `m` embeds into (Z^n, -Id), n = rank.
///
/// Returns a witness, or std::nullopt when the search space is exhausted and
/// no embedding exists. Throws ResourceExceeded if `limits.max_nodes` is hit
/// first, and DomainError if a diagonal entry is >= 0. With one thread the
/// returned witness is the first one in the canonical search order; with
/// more threads it is the same witness whenever the search completes.
std::optional<LatticeWitness> find_embedding(const GramMatrix& m, const SearchLimits& limits = {});

/// Checks the witness against `m` entry by entry. Throws ShapeMismatch when
/// the vector count or a vector length disagrees with the witness shape.
bool verify_embedding(const LatticeWitness& w, const GramMatrix& m);

/// Embedding of two complementary legs (s3 == dual(s2)) as disjoint chains
/// in Z^(n2+n3). Vectors are ordered s2 then s3, each from the centre out.
/// Coordinate 0 occurs only in the first vector of each leg, with
/// coefficient +1. Throws NotComplementary.
LatticeWitness standard_complementary_embedding(const WeightString& s2, const WeightString& s3);

struct StarEmbedding {
  StarGraph graph;
  LatticeWitness witness;
};

/// Glues a chain (b1..bk) to two complementary legs: the star has centre
/// weight bk + 1, first leg (b_{k-1}, ..., b1) read from the centre out, and
/// legs s2, s3. The centre vector is the chain's last vector minus the
/// complementary legs' shared basis vector. Throws NotComplementary, or
/// ShapeMismatch if `chain_witness` is not a witness for `chain`.
StarEmbedding extend_with_complementary_legs(const WeightString& chain,
                                             const LatticeWitness& chain_witness,
                                             const WeightString& s2, const WeightString& s3);

/// pi_e(v) = v + (v.e) e with the lattice pairing; requires e.e = -1.
LatticeVector project(const LatticeVector& v, const LatticeVector& e);

}  // namespace qhb
