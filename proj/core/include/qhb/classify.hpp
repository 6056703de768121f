#pragma once

// Seifert spaces with three exceptional fibres and two complementary legs.
//
// Such a space is rational homology cobordant to the lens space of the chain
// (a_{n1}, ..., a_1, a0 - 1) built from the remaining leg and the centre, so
// it bounds a rational homology ball iff that chain is S^3 (every entry of
// (a0, a_1, ..., a_{n1}) equals 2) or the lens space bounds one.

#include <array>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "qhb/lattice.hpp"
#include "qhb/lens_oracle.hpp"
#include "qhb/plumbing.hpp"

namespace qhb {

enum class Verdict { Yes, No };

std::string_view verdict_name(Verdict v);

/// 1-based leg indices (i, j), i < j.
using LegPair = std::pair<int, int>;

/// All pairs with beta_i/alpha_i + beta_j/alpha_j = 1, lexicographic.
std::vector<LegPair> complementary_pairs(const SeifertInvariants& normalized);

/// Lexicographically least complementary pair. Requires three legs.
std::optional<LegPair> detect_complementary_pair(const SeifertInvariants& normalized);

struct Reduction {
  LegPair complementary_pair{2, 3};
  /// Input leg placed at star positions 1, 2, 3 (1-based).
  std::array<int, 3> leg_order{1, 2, 3};
  WeightString leg1;  // from the centre out
  std::int64_t a0 = 0;
  /// Number of leading 2's in (a0, a_1, ..., a_{n1}).
  int r = 0;
  /// (a_{n1}, ..., a_1, a0 - 1), possibly with a trailing 1 or 0.
  WeightString chain;
  /// (a_{n1}, ..., a_{r+1}, a_r - 1); empty for S^3, unset when a0 = 1.
  std::optional<WeightString> lens_string;
  /// L(1,0) marks the S^3 branch; unset when a0 = 1.
  std::optional<LensSpace> lens;

  bool is_s3() const { return lens && lens->is_s3(); }
};

/// Reduction of a canonical star graph whose legs 2 and 3 are complementary.
/// Throws NotComplementary.
Reduction reduce(const StarGraph& g);

enum class Evidence {
  S3Branch,       // r = n1 + 1
  LensInFamily,   // reduced lens space bounds
  LensNotInR,     // reduced lens space does not bound
  CentralWeightOne,  // a0 = 1 rules out an embedding
};

std::string_view evidence_name(Evidence e);

enum class Route { StarGraph, LensSpace };

enum class WitnessStatus { Attached, NotRequested, ResourceExceeded, NotApplicable };

std::string_view witness_status_name(WitnessStatus s);

struct MontesinosReport {
  std::string notation;
  Integer determinant;
  bool is_knot = false;
  /// "K(p,q)" or "unknot"; empty when there is no reduced lens space.
  std::string reduced_two_bridge;
  /// Result of the ribbon move, e.g. "K(4,1) ⊔ U".
  std::string reduced_link;
  /// A ribbon surface with Euler characteristic 1 exists.
  bool ribbon_claim = false;
};

struct Certificate {
  Verdict verdict = Verdict::No;
  Route route = Route::StarGraph;
  SeifertInvariants input;
  SeifertInvariants normalized;
  bool orientation_flipped = false;
  /// Canonical negative-definite graph, legs in input order.
  std::optional<StarGraph> graph;
  std::vector<LegPair> complementary_pairs;
  std::optional<Reduction> reduction;
  std::optional<LensSpace> lens;
  Evidence evidence = Evidence::LensNotInR;
  std::optional<FamilyInstance> family;
  /// Witness for gram(*graph) on the star route, gram(lens->string()) on the
  /// lens route.
  std::optional<LatticeWitness> witness;
  WitnessStatus witness_status = WitnessStatus::NotApplicable;
  std::optional<MontesinosReport> montesinos;
  std::string families_version;
};

struct DecideOptions {
  SearchLimits limits;
  bool attach_witness = true;
};

/// Throws OutOfScope (more than three legs, or three legs without a
/// complementary pair), NotRationalHomologySphere, DomainError.
Certificate decide(const SeifertInvariants& inv, const FamilyData& data, const DecideOptions& options = {});

/// Builds the star-route certificate pieces for a Seifert input; exposed
/// for the `reduce` subcommand. Same errors as decide.
Reduction reduce(const SeifertInvariants& inv);

MontesinosReport report_montesinos(const Certificate& cert);

/// Member of the list: the star graph whose first leg plus centre reads
/// (t_1, ..., t_{m-1}, t_m + 1, 2^[r]) with the last entry at the centre, and
/// whose other legs are expand(alpha/beta) and its dual. Throws NotInR if
/// eval(t) does not bound, DomainError on bad arguments.
StarGraph generate_list_L(const WeightString& t, int r, const Integer& alpha, const Integer& beta,
                          const FamilyData& data);

struct GenerateOptions {
  std::size_t max_vertices = 12;
  Integer max_param = 4;
  int max_r = 3;
  Integer max_alpha = 5;
};

struct ListMember {
  StarGraph graph;
  WeightString t;
  int r = 0;
  Integer alpha;
  Integer beta;
  FamilyInstance family;
};

/// Enumerates list members from family instances with parameters <=
/// max_param, taking t over the symmetry orbit of each (p, q). Deduplicated
/// by graph, sorted by graph. Only three-legged graphs are emitted: the
/// combination of a one-entry t with r = 0 is skipped because its first leg
/// would be empty.
std::vector<ListMember> generate_list(const FamilyData& data, const GenerateOptions& options = {});

}  // namespace qhb
