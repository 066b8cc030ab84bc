#pragma once

// Subgroup lattice enumeration and structural classification of subgroups.

#include <cstdint>
#include <string>
#include <vector>

#include "pglatlas/group.hpp"

namespace pglatlas {

inline constexpr std::size_t kDefaultCensusCap = 1000;

/// Isomorphism type of a subgroup, restricted to the families that occur in
/// two-dimensional projective groups. Small exceptional isomorphisms are
/// reported under the small-group names: L2(3) is A4, PGL2(3) is S4 and
/// L2(4), L2(5) are A5. Use `canonical()` to compare across spellings.
struct IsoType {
  enum class Kind { Trivial, Cyclic, Dihedral, ElementaryAbelian, Frobenius, A4, S4, A5, PSL, PGL, Other };

  Kind kind = Kind::Other;
  std::uint64_t order = 0;
  std::uint32_t p = 0;      // ElementaryAbelian, Frobenius
  std::uint32_t s = 0;      // ElementaryAbelian, Frobenius: order p^s of the normal part
  std::uint32_t h = 0;      // Frobenius: order of the cyclic complement
  std::uint32_t field = 0;  // PSL, PGL: q'

  static IsoType trivial();
  static IsoType cyclic(std::uint64_t n);
  static IsoType dihedral(std::uint64_t order);  // D_{order}
  static IsoType elementary_abelian(std::uint32_t p, std::uint32_t s);
  static IsoType frobenius(std::uint32_t p, std::uint32_t s, std::uint32_t h);
  static IsoType a4();
  static IsoType s4();
  static IsoType a5();
  static IsoType psl(std::uint32_t q);
  static IsoType pgl(std::uint32_t q);
  static IsoType other(std::uint64_t order);

  /// Rewrites exceptional isomorphisms to a single spelling (cyclic(1) and
  /// elementary_abelian(p,1) included), so equal canonical forms mean
  /// isomorphic groups.
  IsoType canonical() const;

  std::string to_string() const;
  bool operator==(const IsoType&) const = default;
};

/// Structural decision tree: trivial, cyclic, dihedral, A4/S4/A5 by element
/// order profile, elementary abelian, Frobenius-type E:Z_h, L2(q'), PGL2(q'),
/// otherwise `other`.
IsoType classify_subgroup(const FiniteGroup& g, const SubgroupSet& h);

/// Greedy generating set of `h`, least IDs first.
std::vector<ElementId> generating_set(const FiniteGroup& g, const SubgroupSet& h);
bool is_simple(const FiniteGroup& g, const SubgroupSet& h);

struct SubgroupLattice {
  /// Every subgroup exactly once; conjugacy classes are contiguous.
  std::vector<SubgroupSet> subgroups;
  /// class_of[i] is the conjugacy-class index of subgroups[i].
  std::vector<std::size_t> class_of;
  /// Index into `subgroups` of the first member of each class.
  std::vector<std::size_t> class_rep;
};

/// All subgroups via cyclic seeding and joins with cyclic subgroups until no
/// new conjugacy class appears. Throws CapExceeded above `cap`.
SubgroupLattice all_subgroups(const FiniteGroup& g, std::size_t cap = kDefaultCensusCap);

}  // namespace pglatlas
