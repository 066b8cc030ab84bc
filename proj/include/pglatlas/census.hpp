#pragma once

// Closed-form subgroup counts for L2(q) and PGL2(q) checked against the
// brute-force subgroup lattice, plus a few group-level sanity checks.

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "pglatlas/group.hpp"
#include "pglatlas/lattice.hpp"
#include "pglatlas/projective.hpp"

namespace pglatlas {

/// Where a counted subgroup lies relative to the L2(q) inside PGL2(q).
enum class Scope { All, Inside, Outside };
/// What a row counts: subgroups, their conjugacy classes, or mere existence (0/1).
enum class Quantity { Count, Classes, Present };

std::string to_string(Scope scope);
std::string to_string(Quantity quantity);

/// One closed-form claim about the subgroups of a given (canonical) type.
struct Prediction {
  std::string family;
  IsoType type;
  Scope scope = Scope::All;
  Quantity quantity = Quantity::Count;
  std::uint64_t value = 0;
  std::string note;
};

struct CensusRow {
  std::string family;
  IsoType type;
  Scope scope = Scope::All;
  Quantity quantity = Quantity::Count;
  /// Empty when the family has no stated count.
  std::optional<std::uint64_t> predicted;
  std::uint64_t observed = 0;
  /// Set when the observed data needed a non-literal reading of the rule.
  bool flagged = false;
  std::string note;

  bool matches() const { return !predicted || *predicted == observed; }
};

struct CensusReport {
  std::uint32_t q = 0;
  GroupKind kind = GroupKind::PSL;
  std::uint64_t group_order = 0;
  std::size_t total_subgroups = 0;
  std::size_t total_classes = 0;
  std::vector<CensusRow> rows;
  /// Subgroup count per canonical type, in order of first appearance.
  std::vector<std::pair<IsoType, std::uint64_t>> tally;

  bool all_match() const;
  std::size_t formula_rows() const;
  std::size_t mismatches() const;
  std::uint64_t tally_total() const;
};

/// Every count the closed-form description states for L2(q) (any q) or
/// PGL2(q) (odd q), expanded per divisor. Types are canonical. Throws
/// std::invalid_argument for other kinds, a non prime power q, or PGL with even q.
std::vector<Prediction> predicted_counts(std::uint32_t q, GroupKind kind);

/// The brute-force side: every subgroup of `g` with its canonical type,
/// conjugacy class and (if `psl` is given) containment in it.
class ObservedCensus {
 public:
  ObservedCensus(const FiniteGroup& g, std::optional<SubgroupSet> psl, std::size_t cap = kDefaultCensusCap);

  std::uint64_t value(const IsoType& type, Scope scope, Quantity quantity) const;
  const SubgroupLattice& lattice() const { return lattice_; }
  const std::vector<IsoType>& types() const { return types_; }
  const std::vector<bool>& inside() const { return inside_; }

 private:
  SubgroupLattice lattice_;
  std::vector<IsoType> types_;
  std::vector<bool> inside_;
};

/// Builds L2(q) or PGL2(q), enumerates its lattice and compares against
/// `predicted_counts`. Observed types with no count rule get a row without a
/// prediction; types the description does not list at all are collected into
/// a row predicted to be zero. Throws CapExceeded when the group order exceeds `cap`.
CensusReport run_census(std::uint32_t q, GroupKind kind, std::size_t cap = kDefaultCensusCap,
                        std::size_t closure_cap = kDefaultClosureCap);

struct CentralizerCheck {
  bool ok = false;
  /// Distinct centralizer orders over the involution classes, descending.
  std::vector<std::uint64_t> orders;
};

/// Every involution centralizer of PGL2(q) has order 2(q+1) or 2(q-1), and
/// both values occur. Throws std::domain_error for even q.
CentralizerCheck verify_centralizer_orders(const FiniteGroup& g, std::uint32_t q);

/// Closure of all involutions: (closure equals g, its order).
std::pair<bool, std::size_t> verify_involution_generation(const FiniteGroup& g);

/// Exactly one subgroup of order |L2(q)| isomorphic to L2(q).
bool verify_unique_psl(const FiniteGroup& g, std::uint32_t q, std::size_t cap = kDefaultCensusCap);
bool verify_unique_psl(const FiniteGroup& g, const SubgroupLattice& lattice, std::uint32_t q);

}  // namespace pglatlas
