#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "pglatlas/errors.hpp"
#include "pglatlas/projective.hpp"

using namespace pglatlas;

namespace {

ProjLine line_of(std::uint32_t q) { return ProjLine(gf::make_field_of_order(q)); }

gf::FieldElement el(const ProjLine& l, std::int64_t n) { return gf::from_int(l.field(), n); }

}  // namespace

TEST_CASE("point numbering") {
  const auto l = line_of(5);
  CHECK(l.size() == 6);
  CHECK(l.point_of(gf::zero()) == 1);
  CHECK(l.point_of(gf::one()) == 2);
  CHECK(gf::to_index(l.field(), l.element_at(5)) == 4);
}

TEST_CASE("mobius maps") {
  const auto l = line_of(5);
  const auto o = gf::one(), z = gf::zero();
  // x -> x + 1 fixes infinity and shifts the affine points cyclically.
  CHECK(mobius_perm(l, o, o, z, o) == Perm{0, 2, 3, 4, 5, 1});
  // x -> 1/x swaps 0 and infinity; 2 and 3 are inverse mod 5, 4 is self-inverse.
  CHECK(mobius_perm(l, z, o, o, z) == Perm{1, 0, 2, 4, 3, 5});
  // x -> 2x.
  CHECK(mobius_perm(l, el(l, 2), z, z, o) == Perm{0, 1, 3, 5, 2, 4});
  CHECK_THROWS_AS(mobius_perm(l, o, o, o, o), std::invalid_argument);
  // Scalar matrices act trivially.
  CHECK(mobius_perm(l, el(l, 3), z, z, el(l, 3)).is_identity());
}

TEST_CASE("semilinear maps") {
  const auto l = line_of(9);
  const Perm frob = semilinear_perm(l, 1);
  CHECK(frob.order() == 2);
  for (Point pt = 0; pt <= 3; ++pt) CHECK(frob[pt] == pt);  // infinity and the prime field
  CHECK(semilinear_perm(l, 0).is_identity());
  CHECK_THROWS_AS(semilinear_perm(l, 2), std::out_of_range);
  CHECK(semilinear_perm(line_of(27), 1).order() == 3);
}

TEST_CASE("group orders") {
  CHECK(make_group(5, GroupKind::PGL).order() == 120);
  CHECK(make_group(7, GroupKind::PSL).order() == 168);
  CHECK(make_group(8, GroupKind::PSL).order() == 504);
  CHECK(make_group(4, GroupKind::PGL).order() == 60);
  CHECK(make_group(9, GroupKind::PSLc).order() == 720);
  CHECK(make_group(9, GroupKind::PSigmaL).order() == 720);
  CHECK(make_group(25, GroupKind::PSigmaL).order() == 15600);
  CHECK(make_dedup_group(25).order() == 31200);
  CHECK(make_dedup_group(8).order() == 1512);
  for (std::uint32_t q : {3u, 4u, 5u, 7u, 8u, 9u, 11u, 25u, 27u}) {
    const ProjLine l = line_of(q);
    for (GroupKind kind : {GroupKind::PSL, GroupKind::PGL, GroupKind::PGammaL}) {
      const auto gens = build_group(l, kind);
      CHECK(FiniteGroup::close(gens.generators).order() == gens.expected_order);
    }
  }
}

TEST_CASE("kind constraints") {
  CHECK_THROWS_AS(build_group(line_of(7), GroupKind::PSigmaL), std::invalid_argument);
  CHECK_THROWS_AS(build_group(line_of(4), GroupKind::PSLc), std::invalid_argument);
  CHECK_THROWS_AS(build_group(line_of(27), GroupKind::PSLc), std::invalid_argument);
  CHECK_THROWS_AS(make_group(6, GroupKind::PGL), std::invalid_argument);
  CHECK_THROWS_AS(make_group(25, GroupKind::PGammaL, 1000), CapExceeded);
  CHECK(parse_group_kind("pslc") == GroupKind::PSLc);
  for (GroupKind kind : {GroupKind::PSL, GroupKind::PGL, GroupKind::PSigmaL, GroupKind::PSLc, GroupKind::PGammaL})
    CHECK(parse_group_kind(to_string(kind)) == kind);
  CHECK_THROWS_AS(parse_group_kind("psu"), std::invalid_argument);
  CHECK(epsilon(5) == 1);
  CHECK(epsilon(7) == -1);
  CHECK_THROWS_AS(epsilon(8), std::domain_error);
}

TEST_CASE("sharp 3-transitivity") {
  CHECK(verify_sharp_3_transitivity(make_group(5, GroupKind::PGL), line_of(5)));
  CHECK(verify_sharp_3_transitivity(make_group(7, GroupKind::PGL), line_of(7)));
  CHECK(verify_sharp_3_transitivity(make_group(8, GroupKind::PGL), line_of(8)));
  CHECK(verify_sharp_3_transitivity(make_group(9, GroupKind::PSLc), line_of(9)));
  CHECK(verify_sharp_3_transitivity(make_group(25, GroupKind::PSLc), line_of(25)));
  CHECK_FALSE(verify_sharp_3_transitivity(make_group(9, GroupKind::PSigmaL), line_of(9)));
  CHECK_FALSE(verify_sharp_3_transitivity(make_group(7, GroupKind::PSL), line_of(7)));
  CHECK_FALSE(verify_sharp_3_transitivity(make_group(5, GroupKind::PGL), line_of(7)));
}

TEST_CASE("the L2(q) inside the extensions") {
  for (std::uint32_t q : {5u, 7u, 9u, 11u}) {
    const ProjLine l = line_of(q);
    const FiniteGroup pgl = make_group(q, GroupKind::PGL);
    const SubgroupSet psl = psl_subgroup(pgl, l);
    CHECK(psl.order() * 2 == pgl.order());
    // Index two, hence normal: closed under conjugation by every generator.
    for (ElementId s : pgl.generators()) CHECK(conjugate_subgroup(pgl, psl, s) == psl);
    const FiniteGroup own = make_group(q, GroupKind::PSL);
    CHECK(psl_subgroup(own, l).order() == own.order());
  }
  const ProjLine l9 = line_of(9);
  for (GroupKind kind : {GroupKind::PSigmaL, GroupKind::PSLc, GroupKind::PGammaL}) {
    const FiniteGroup g = make_group(9, kind);
    CHECK(psl_subgroup(g, l9).order() == 360);
  }
  // Both index-two extensions sit inside the dedup group.
  CHECK_NOTHROW(embed(make_group(25, GroupKind::PSigmaL), make_dedup_group(25)));
  CHECK_NOTHROW(embed(make_group(25, GroupKind::PSLc), make_dedup_group(25)));
}
