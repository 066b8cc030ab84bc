#pragma once

// Arithmetic in GF(p^r), polynomial basis over a canonical modulus.

#include <array>
#include <cstdint>
#include <string>
#include <vector>

namespace pglatlas::gf {

inline constexpr unsigned kMaxDegree = 20;
inline constexpr std::uint64_t kDefaultOrderBound = std::uint64_t{1} << 20;

/// A finite field GF(p^r). `modulus` holds the monic defining polynomial as
/// (c0, ..., c_{r-1}, 1); it is the least monic irreducible of degree r when
/// coefficient vectors are enumerated with c0 varying fastest.
struct FieldSpec {
  std::uint32_t p = 0;
  unsigned r = 0;
  std::uint32_t q = 0;
  std::vector<std::uint32_t> modulus;

  bool operator==(const FieldSpec&) const = default;
};

/// Coefficients of 1, t, ..., t^{r-1}. Entries past r are always zero, so
/// elements compare equal iff they are the same field element.
struct FieldElement {
  std::array<std::uint32_t, kMaxDegree> coeffs{};

  bool operator==(const FieldElement&) const = default;
};

bool is_prime(std::uint64_t n);

/// Throws std::invalid_argument for a non-prime p, r < 1, or p^r above `bound`.
FieldSpec make_field(std::uint32_t p, unsigned r,
                     std::uint64_t bound = kDefaultOrderBound);

/// Factor a prime power q = p^r; throws std::invalid_argument otherwise.
FieldSpec make_field_of_order(std::uint64_t q,
                              std::uint64_t bound = kDefaultOrderBound);

FieldElement zero();
FieldElement one();
/// Image of the integer n in the prime subfield.
FieldElement from_int(const FieldSpec& f, std::int64_t n);
/// The basis element t (the class of the indeterminate). For r = 1 this is
/// the residue 0 reduced modulo the linear modulus t, so callers wanting a
/// generator should use primitive_element instead.
FieldElement generator_t(const FieldSpec& f);

/// Elements are indexed 0..q-1 by sum c_i p^i.
std::uint32_t to_index(const FieldSpec& f, const FieldElement& a);
FieldElement from_index(const FieldSpec& f, std::uint32_t index);

bool is_zero(const FieldElement& a);

FieldElement add(const FieldSpec& f, const FieldElement& a, const FieldElement& b);
FieldElement sub(const FieldSpec& f, const FieldElement& a, const FieldElement& b);
FieldElement neg(const FieldSpec& f, const FieldElement& a);
FieldElement mul(const FieldSpec& f, const FieldElement& a, const FieldElement& b);
FieldElement pow(const FieldSpec& f, const FieldElement& a, std::uint64_t e);
/// Throws std::domain_error on zero.
FieldElement inv(const FieldSpec& f, const FieldElement& a);
/// x -> x^{p^k}.
FieldElement frobenius(const FieldSpec& f, const FieldElement& a, unsigned k);

bool is_square(const FieldSpec& f, const FieldElement& a);
/// Least-index generator of the multiplicative group.
FieldElement primitive_element(const FieldSpec& f);
/// Least-index non-square; throws std::domain_error in characteristic 2.
FieldElement least_nonsquare(const FieldSpec& f);

std::string to_string(const FieldSpec& f, const FieldElement& a);
std::string modulus_string(const FieldSpec& f);

}  // namespace pglatlas::gf
