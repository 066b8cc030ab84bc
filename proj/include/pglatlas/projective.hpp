#pragma once

// The projective line PG(1,q) and the two-dimensional projective groups
// acting on it: L2(q), PGL2(q), PSigmaL2(q), L2(q)<c> and PGammaL2(q).

#include <cstdint>
#include <string>
#include <vector>

#include "pglatlas/gf.hpp"
#include "pglatlas/group.hpp"
#include "pglatlas/perm.hpp"

namespace pglatlas {

/// Point 0 is infinity; point i+1 is the field element with index i.
class ProjLine {
 public:
  static constexpr Point kInfinity = 0;

  explicit ProjLine(gf::FieldSpec field) : field_(std::move(field)) {}

  const gf::FieldSpec& field() const { return field_; }
  std::size_t size() const { return std::size_t{field_.q} + 1; }
  Point point_of(const gf::FieldElement& x) const { return gf::to_index(field_, x) + 1; }
  gf::FieldElement element_at(Point pt) const { return gf::from_index(field_, pt - 1); }

 private:
  gf::FieldSpec field_;
};

enum class GroupKind { PSL, PGL, PSigmaL, PSLc, PGammaL };

std::string to_string(GroupKind kind);
/// Accepts psl, pgl, psigmal, pslc, pgammal. Throws std::invalid_argument.
GroupKind parse_group_kind(const std::string& name);

/// q = epsilon (mod 4); throws std::domain_error for even q.
int epsilon(std::uint32_t q);

/// x -> (ax + b) / (cx + d). Throws std::invalid_argument if ad - bc = 0.
Perm mobius_perm(const ProjLine& line, const gf::FieldElement& a, const gf::FieldElement& b,
                 const gf::FieldElement& c, const gf::FieldElement& d);

/// Fixes infinity, x -> x^{p^k}. Throws std::out_of_range unless 0 <= k < r.
Perm semilinear_perm(const ProjLine& line, unsigned k);

struct GroupGenerators {
  GroupKind kind;
  std::vector<Perm> generators;
  std::uint64_t expected_order = 0;
};

/// Minimal generator sets:
///   PSL      x -> w^2 x, x -> x + 1, x -> -1/x       (w primitive)
///   PGL      x -> w x,   x -> x + 1, x -> 1/x
///   PSigmaL  PSL plus the Frobenius of order 2
///   PSLc     PSL plus x -> (nu x)^{sqrt q}          (nu least non-square)
///   PGammaL  PGL plus the Frobenius x -> x^p
/// Throws std::invalid_argument when the kind needs an even field degree
/// (PSigmaL, PSLc) or odd characteristic (PSLc) and q does not provide it.
GroupGenerators build_group(const ProjLine& line, GroupKind kind);

/// Convenience: the closed group of the given kind over GF(q).
FiniteGroup make_group(std::uint32_t q, GroupKind kind, std::size_t cap = kDefaultClosureCap);

/// The full automorphism group used for deduplication: PGammaL2(q).
FiniteGroup make_dedup_group(std::uint32_t q, std::size_t cap = kDefaultClosureCap);

/// True iff every ordered triple of distinct points is carried to
/// (infinity, 0, 1) by exactly one element.
bool verify_sharp_3_transitivity(const FiniteGroup& g, const ProjLine& line);

/// Elements of `g` (a subgroup of PGammaL2(q)) that are Mobius maps of square
/// determinant, i.e. the copy of L2(q) inside `g`.
SubgroupSet psl_subgroup(const FiniteGroup& g, const ProjLine& line);

}  // namespace pglatlas
