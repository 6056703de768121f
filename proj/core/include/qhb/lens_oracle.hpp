#pragma once

// Lens spaces bounding rational homology balls.
//
// Membership is decided against a family data asset (lisca_families.json):
// parametric families (p(params), q(params)) with integer constraints. The
// answer is invariant under the symmetries q -> p - q and q -> q^-1 mod p.

#include <filesystem>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "qhb/cfrac.hpp"
#include "qhb/expr.hpp"
#include "qhb/lattice.hpp"

namespace qhb {

/// L(p, q) with p >= 1, 0 <= q < p, gcd(p, q) = 1; q = 0 only for p = 1.
class LensSpace {
 public:
  LensSpace(Integer p, Integer q);

  static LensSpace s3() { return LensSpace(1, 0); }

  const Integer& p() const noexcept { return p_; }
  const Integer& q() const noexcept { return q_; }
  bool is_s3() const noexcept { return p_ == 1; }

  /// Canonical string of p/q (empty for S^3).
  WeightString string() const;
  /// "L(36,19)"
  std::string to_string() const;

  friend bool operator==(const LensSpace&, const LensSpace&) = default;

 private:
  Integer p_;
  Integer q_;
};

/// {q, p-q, q^-1, p-q^-1} reduced mod p, ascending, without duplicates.
std::vector<Integer> symmetry_orbit(const LensSpace& lens);

struct FamilyParameter {
  std::string name;
  Expression min;
  std::optional<Expression> max;  // over earlier parameters
};

struct FamilySpec {
  std::string name;
  std::string description;
  std::vector<FamilyParameter> parameters;
  std::vector<Expression> constraints;  // over parameters
  Expression p;
  Expression q;
  std::optional<Expression> bound;  // over the target `p`; defaults to p
};

struct FamilyInstance {
  std::string family;
  std::vector<std::pair<std::string, Integer>> parameters;
  Integer p;
  Integer q;

  /// "mk+1(m=2,k=1)"
  std::string to_string() const;
};

/// The loaded family asset; immutable once constructed.
class FamilyData {
 public:
  /// Parses the JSON asset. Throws DataAssetMissing on schema violations.
  static FamilyData parse(std::string_view json_text, std::string origin = "<memory>");
  /// Throws DataAssetMissing if the file cannot be read or is invalid.
  static FamilyData load(const std::filesystem::path& path);
  /// Resolution order: `explicit_path` if non-empty, $QHB_FAMILIES, the
  /// installed copy, the source-tree copy.
  static std::filesystem::path default_path(const std::filesystem::path& explicit_path = {});

  const std::string& version() const noexcept { return version_; }
  const std::string& origin() const noexcept { return origin_; }
  const std::vector<FamilySpec>& families() const noexcept { return families_; }

  /// First family instance with p(params) = p and q(params) in `qs`.
  std::optional<FamilyInstance> find(const Integer& p, const std::vector<Integer>& qs) const;

  /// Every instance with all parameters <= max_param.
  std::vector<FamilyInstance> instances(const Integer& max_param) const;

 private:
  std::string version_;
  std::string origin_;
  std::vector<FamilySpec> families_;
};

struct LensVerdict {
  bool bounds = false;
  /// Family instance witnessing membership (unset for S^3 and for No).
  std::optional<FamilyInstance> family;

  /// Family name on Yes ("S3" for p = 1).
  std::string family_name() const;
};

LensVerdict bounds_qhb(const LensSpace& lens, const FamilyData& data);

enum class SquareFilter { FailsNecessary, Passes };
SquareFilter square_filter(const LensSpace& lens);

enum class Necessity { No, Inconclusive };

struct NecessityReport {
  Necessity verdict = Necessity::Inconclusive;
  /// Embeddings found for expand(p/q) and expand(p/(p-q)).
  std::optional<LatticeWitness> direct;
  std::optional<LatticeWitness> reversed;
};

/// Donaldson check on both orientations; requires p >= 2. Propagates
/// ResourceExceeded.
NecessityReport embedding_necessity(const LensSpace& lens, const SearchLimits& limits = {});

}  // namespace qhb
