#pragma once

// Finite permutation groups held as a flat, fully enumerated element table.
//
// Elements are addressed by dense integer IDs assigned in breadth-first
// discovery order from the seed generators, so every table, class list and
// report derived from a group is reproducible run to run. There is no
// stabilizer chain: every group this library targets is small enough
// (at most a few 10^5 elements) that tabulation is the simpler option.

#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <unordered_map>
#include <vector>

#include "pglatlas/perm.hpp"

namespace pglatlas {

using ElementId = std::uint32_t;

inline constexpr std::size_t kDefaultClosureCap = 1'000'000;
inline constexpr std::size_t kMaxCayleyTableOrder = std::size_t{1} << 14;

class FiniteGroup {
 public:
  /// Breadth-first closure of `seed`. Throws CapExceeded once more than `cap`
  /// elements have been found, std::invalid_argument on mixed degrees.
  static FiniteGroup close(std::span<const Perm> seed, std::size_t cap = kDefaultClosureCap);

  std::size_t order() const { return order_; }
  std::size_t degree() const { return degree_; }
  /// Distinguishes groups when checking that subgroups share a parent.
  std::uint64_t uid() const { return uid_; }

  Perm element(ElementId id) const;
  Point image(ElementId id, Point x) const { return storage_[std::size_t{id} * degree_ + x]; }
  std::optional<ElementId> find(const Perm& p) const;

  /// Apply a, then b.
  ElementId mul(ElementId a, ElementId b) const {
    if (!cayley_.empty()) return cayley_[std::size_t{a} * order_ + b];
    return mul_by_base(a, b);
  }
  ElementId inverse(ElementId id) const { return inverse_[id]; }
  /// g^-1 x g.
  ElementId conjugate(ElementId x, ElementId g) const { return mul(mul(inverse_[g], x), g); }
  bool commute(ElementId a, ElementId b) const { return mul(a, b) == mul(b, a); }
  std::uint32_t element_order(ElementId id) const { return orders_[id]; }

  /// IDs of the distinct non-identity seed elements, in seed order.
  const std::vector<ElementId>& generators() const { return generators_; }
  /// All elements of order 2, ascending.
  const std::vector<ElementId>& involutions() const { return involutions_; }

  /// Memoize the full multiplication table. Refused (std::length_error) above
  /// kMaxCayleyTableOrder. Call before sharing the group across threads.
  void enable_cayley_table();
  bool has_cayley_table() const { return !cayley_.empty(); }

 private:
  FiniteGroup() = default;

  std::uint64_t key_of(const std::uint16_t* images) const;
  std::optional<ElementId> lookup_key(std::uint64_t key) const;
  ElementId mul_by_base(ElementId a, ElementId b) const;
  void build_index();

  std::size_t order_ = 0;
  std::size_t degree_ = 0;
  std::uint64_t uid_ = 0;
  std::vector<std::uint16_t> storage_;
  std::vector<ElementId> inverse_;
  std::vector<std::uint32_t> orders_;
  std::vector<ElementId> generators_;
  std::vector<ElementId> involutions_;
  std::vector<ElementId> cayley_;

  // Base points: images of these determine an element uniquely. Keys are
  // mixed-radix images; a dense table is used when the key space is small.
  std::vector<Point> base_;
  std::vector<ElementId> dense_index_;
  std::unordered_map<std::uint64_t, ElementId> sparse_index_;
};

/// A subgroup of a FiniteGroup as a membership bit-vector over element IDs.
class SubgroupSet {
 public:
  SubgroupSet() = default;
  /// `bits` must describe a subgroup of `parent` (not re-checked).
  SubgroupSet(const FiniteGroup& parent, std::vector<std::uint64_t> bits);
  SubgroupSet(std::uint64_t parent_uid, std::vector<std::uint64_t> bits);

  static SubgroupSet trivial(const FiniteGroup& g);
  static SubgroupSet whole(const FiniteGroup& g);

  std::uint64_t parent() const { return parent_; }
  std::size_t order() const { return order_; }
  bool contains(ElementId id) const { return (bits_[id >> 6] >> (id & 63)) & 1U; }
  bool is_subset_of(const SubgroupSet& other) const;
  std::vector<ElementId> members() const;
  const std::vector<std::uint64_t>& bits() const { return bits_; }

  bool operator==(const SubgroupSet& o) const { return parent_ == o.parent_ && bits_ == o.bits_; }

 private:
  std::uint64_t parent_ = 0;
  std::vector<std::uint64_t> bits_;
  std::size_t order_ = 0;
};

struct SubgroupSetHash {
  std::size_t operator()(const SubgroupSet& s) const;
};

/// Reusable buffers for repeated subgroup closures inside search loops.
/// Not thread-safe; use one per worker.
class ClosureWorkspace {
 public:
  explicit ClosureWorkspace(const FiniteGroup& g);

  /// Closes `gens`. With `early_exit`, stops as soon as the subgroup is known
  /// to be the whole group (more than half of it reached). Returns the order.
  std::size_t close(std::span<const ElementId> gens, bool early_exit = true);
  bool whole() const { return whole_; }
  bool contains(ElementId id) const { return (bits_[id >> 6] >> (id & 63)) & 1U; }
  const std::vector<std::uint64_t>& bits() const { return bits_; }
  SubgroupSet to_subgroup() const;

 private:
  const FiniteGroup* group_;
  std::vector<std::uint64_t> bits_;
  std::vector<ElementId> members_;
  bool whole_ = false;
};

struct ConjugacyClass {
  ElementId representative = 0;  // least ID in the class
  std::vector<ElementId> members;  // ascending
};

/// All conjugacy classes, ordered by representative.
std::vector<ConjugacyClass> conjugacy_classes(const FiniteGroup& g);
/// Classes of elements of order 2, ordered by representative.
std::vector<ConjugacyClass> involution_classes(const FiniteGroup& g);

SubgroupSet centralizer(const FiniteGroup& g, ElementId id);
/// Least subgroup containing `ids`.
SubgroupSet subgroup_closure(const FiniteGroup& g, std::span<const ElementId> ids);
/// Throws std::invalid_argument when the parents differ.
SubgroupSet subgroup_intersect(const SubgroupSet& a, const SubgroupSet& b);
/// g^-1 H g.
SubgroupSet conjugate_subgroup(const FiniteGroup& g, const SubgroupSet& h, ElementId by);

/// Position of each element of `inner` inside `outer`. Throws
/// std::invalid_argument if some element is missing.
std::vector<ElementId> embed(const FiniteGroup& inner, const FiniteGroup& outer);

}  // namespace pglatlas
