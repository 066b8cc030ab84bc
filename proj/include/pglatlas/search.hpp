#pragma once

// Exhaustive enumeration of string C-group generating tuples, i.e. of the
// abstract regular polytopes whose automorphism group is a given group.

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "pglatlas/group.hpp"

namespace pglatlas {

inline constexpr unsigned kMinRank = 3;
inline constexpr unsigned kMaxRank = 5;

/// Orders of rho_i rho_{i+1}.
struct SchlafliType {
  std::vector<std::uint32_t> entries;

  bool degenerate() const;
  SchlafliType reversed() const;
  std::string to_string() const;  // "{3,5,3}"
  bool operator==(const SchlafliType&) const = default;
  auto operator<=>(const SchlafliType&) const = default;
};

struct PolytopeRecord {
  /// Lexicographically least ID tuple over the deduplication orbit.
  std::vector<ElementId> tuple;
  SchlafliType schlafli;
  std::size_t group_order = 0;
  /// The reversed tuple lies in the same orbit.
  bool self_dual = false;
  bool degenerate = false;
  /// Number of tuples identified into this record.
  std::size_t orbit_size = 0;
};

/// Involutions, pairwise distinct, non-adjacent entries commute.
bool string_condition(const FiniteGroup& g, std::span<const ElementId> tuple);
/// <rho_J> meet <rho_K> = <rho_{J and K}> for all index sets J, K.
bool intersection_property(const FiniteGroup& g, std::span<const ElementId> tuple);
SchlafliType schlafli_type(const FiniteGroup& g, std::span<const ElementId> tuple);

/// Reverses the tuple and the Schlafli type. The result is not re-canonicalized.
PolytopeRecord dual(const PolytopeRecord& record);

/// Recomputes generation, the string condition and the intersection property
/// from scratch, without any state shared with the search.
bool verify_record(const FiniteGroup& g, const PolytopeRecord& record);

struct SearchOptions {
  unsigned workers = 1;
  /// Shuffles which worker handles which subtree; results do not depend on it.
  std::uint64_t seed_partition = 0;
};

struct EnumerationResult {
  /// One record per orbit under conjugation by the dedup group.
  std::vector<PolytopeRecord> iso;
  /// One record per orbit after also identifying each tuple with its reverse.
  std::vector<PolytopeRecord> iso_dual;
  std::size_t leaves_examined = 0;
  std::size_t tuples_accepted = 0;
};

/// All rank-`rank` string C-group tuples generating `g`, up to conjugation by
/// `dedup` (which must contain `g` as a normal subgroup). Throws
/// std::invalid_argument for a rank outside [3, 5] or an unsuitable dedup group.
EnumerationResult enumerate_polytopes(const FiniteGroup& g, unsigned rank, const FiniteGroup& dedup,
                                      const SearchOptions& options = {});

/// Maps between the ID spaces of a group and an overgroup it is normal in.
class DedupAction {
 public:
  DedupAction(const FiniteGroup& g, const FiniteGroup& dedup);

  /// Conjugate by the dedup generator with the given index.
  ElementId apply(ElementId x, std::size_t generator) const;
  std::size_t generator_count() const { return dedup_->generators().size(); }
  /// Least-ID representatives of the dedup-conjugacy classes of involutions of g.
  std::vector<ElementId> involution_representatives() const;

 private:
  const FiniteGroup* g_;
  const FiniteGroup* dedup_;
  std::vector<ElementId> to_outer_;
  std::vector<ElementId> to_inner_;
};

}  // namespace pglatlas
