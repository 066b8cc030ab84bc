#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <map>
#include <set>
#include <unordered_set>

#include "pglatlas/errors.hpp"
#include "pglatlas/lattice.hpp"
#include "pglatlas/projective.hpp"

using namespace pglatlas;

namespace {

std::vector<std::size_t> class_sizes(const std::vector<ConjugacyClass>& classes) {
  std::vector<std::size_t> out;
  for (const auto& c : classes) out.push_back(c.members.size());
  std::sort(out.begin(), out.end());
  return out;
}

// Subgroups generated by at most two elements, by closing every pair.
// Independent of the lattice search; complete for groups whose subgroups
// are all 2-generated.
std::size_t two_generated_subgroups(const FiniteGroup& g) {
  std::unordered_set<SubgroupSet, SubgroupSetHash> seen;
  ClosureWorkspace ws(g);
  for (ElementId a = 0; a < g.order(); ++a)
    for (ElementId b = a; b < g.order(); ++b) {
      const ElementId pair[2] = {a, b};
      ws.close(pair, false);
      seen.insert(ws.to_subgroup());
    }
  return seen.size();
}

std::optional<SubgroupSet> find_subgroup(const SubgroupLattice& lat, const FiniteGroup& g, std::size_t order,
                                         const IsoType& type) {
  for (const auto& h : lat.subgroups)
    if (h.order() == order && classify_subgroup(g, h).canonical() == type.canonical()) return h;
  return std::nullopt;
}

}  // namespace

TEST_CASE("permutation products apply the left factor first") {
  const Perm a{1, 0, 2};  // swap 0 1
  const Perm b{0, 2, 1};  // swap 1 2
  // (a*b)(0) = b(a(0)) = b(1) = 2
  CHECK((a * b)[0] == 2);
  CHECK((a * b) == Perm{2, 0, 1});
  CHECK((a * b).order() == 3);
  CHECK((a * a.inverse()).is_identity());
  CHECK(Perm{1, 2, 0, 4, 3}.order() == 6);
  CHECK_THROWS_AS(Perm({0, 0, 1}), std::invalid_argument);
  CHECK(Perm{2, 0, 1}.to_string() == "2 0 1");
}

TEST_CASE("closure and element tables") {
  const FiniteGroup s4 = make_group(3, GroupKind::PGL);
  CHECK(s4.order() == 24);
  CHECK(s4.element(0).is_identity());
  std::map<std::uint32_t, std::size_t> profile;
  for (ElementId x = 0; x < s4.order(); ++x) ++profile[s4.element_order(x)];
  CHECK(profile == std::map<std::uint32_t, std::size_t>{{1, 1}, {2, 9}, {3, 8}, {4, 6}});
  CHECK(s4.involutions().size() == 9);

  const FiniteGroup g = make_group(9, GroupKind::PSLc);
  for (ElementId a = 0; a < g.order(); a += 7)
    for (ElementId b = 0; b < g.order(); b += 11) {
      REQUIRE(g.element(g.mul(a, b)) == g.element(a) * g.element(b));
      REQUIRE(g.find(g.element(a)) == a);
    }
  for (ElementId a = 0; a < g.order(); ++a) REQUIRE(g.mul(a, g.inverse(a)) == 0);
  CHECK_FALSE(g.find(Perm::identity(11)).has_value());

  FiniteGroup t = make_group(7, GroupKind::PGL);
  std::vector<ElementId> before;
  for (ElementId a = 0; a < t.order(); ++a) before.push_back(t.mul(a, static_cast<ElementId>((a * 31) % t.order())));
  t.enable_cayley_table();
  CHECK(t.has_cayley_table());
  for (ElementId a = 0; a < t.order(); ++a) CHECK(t.mul(a, static_cast<ElementId>((a * 31) % t.order())) == before[a]);

  FiniteGroup big = make_dedup_group(25);
  CHECK_THROWS_AS(big.enable_cayley_table(), std::length_error);
  CHECK_THROWS_AS(make_group(11, GroupKind::PGL, 500), CapExceeded);
}

TEST_CASE("involution classes and centralizers") {
  CHECK(class_sizes(involution_classes(make_group(5, GroupKind::PGL))) == std::vector<std::size_t>{10, 15});
  CHECK(class_sizes(involution_classes(make_group(7, GroupKind::PGL))) == std::vector<std::size_t>{21, 28});
  CHECK(class_sizes(involution_classes(make_group(7, GroupKind::PSL))) == std::vector<std::size_t>{21});

  const FiniteGroup pgl5 = make_group(5, GroupKind::PGL);
  std::set<std::size_t> orders;
  for (const auto& c : involution_classes(pgl5)) orders.insert(centralizer(pgl5, c.representative).order());
  CHECK(orders == std::set<std::size_t>{8, 12});

  std::size_t total = 0;
  for (const auto& c : conjugacy_classes(pgl5)) {
    total += c.members.size();
    // Orbit-stabilizer: class size times centralizer order is the group order.
    CHECK(c.members.size() * centralizer(pgl5, c.representative).order() == pgl5.order());
  }
  CHECK(total == 120);
  CHECK(conjugacy_classes(pgl5).size() == 7);  // partitions of 5
}

TEST_CASE("subgroup sets") {
  const FiniteGroup s4 = FiniteGroup::close(std::vector<Perm>{Perm{1, 0, 2, 3}, Perm{0, 2, 1, 3}, Perm{0, 1, 3, 2}});
  const ElementId r0 = *s4.find(Perm{1, 0, 2, 3});
  const ElementId r1 = *s4.find(Perm{0, 2, 1, 3});
  const ElementId r2 = *s4.find(Perm{0, 1, 3, 2});
  const ElementId a[2] = {r0, r1}, b[2] = {r1, r2}, c[1] = {r1};
  const SubgroupSet left = subgroup_closure(s4, a), right = subgroup_closure(s4, b);
  CHECK(left.order() == 6);
  CHECK(subgroup_intersect(left, right) == subgroup_closure(s4, c));
  CHECK(subgroup_intersect(left, right).order() == 2);
  CHECK(SubgroupSet::trivial(s4).is_subset_of(left));
  CHECK(left.is_subset_of(SubgroupSet::whole(s4)));
  CHECK_FALSE(left.is_subset_of(right));
  CHECK(conjugate_subgroup(s4, left, r2) == subgroup_closure(s4, std::vector<ElementId>{r0, s4.conjugate(r1, r2)}));

  const FiniteGroup other = make_group(3, GroupKind::PGL);
  CHECK_THROWS_AS(subgroup_intersect(left, SubgroupSet::whole(other)), std::invalid_argument);
  CHECK_THROWS_AS(embed(make_group(5, GroupKind::PGL), make_group(5, GroupKind::PSL)), std::invalid_argument);
  const auto pos = embed(make_group(5, GroupKind::PSL), make_group(5, GroupKind::PGL));
  CHECK(pos.size() == 60);
}

TEST_CASE("subgroup counts against pairwise closure") {
  struct Case {
    std::uint32_t q;
    GroupKind kind;
    std::size_t expected;
  };
  for (const Case& c : {Case{3, GroupKind::PGL, 30}, Case{5, GroupKind::PSL, 59}, Case{5, GroupKind::PGL, 156},
                        Case{7, GroupKind::PSL, 179}}) {
    FiniteGroup g = make_group(c.q, c.kind);
    g.enable_cayley_table();
    const auto lat = all_subgroups(g);
    CAPTURE(c.q);
    CHECK(lat.subgroups.size() == c.expected);
    CHECK(two_generated_subgroups(g) == c.expected);
  }
}

TEST_CASE("lattice laws") {
  FiniteGroup g = make_group(7, GroupKind::PGL);
  g.enable_cayley_table();
  const auto lat = all_subgroups(g);
  std::unordered_set<SubgroupSet, SubgroupSetHash> all(lat.subgroups.begin(), lat.subgroups.end());
  CHECK(all.size() == lat.subgroups.size());
  CHECK(all.count(SubgroupSet::trivial(g)));
  CHECK(all.count(SubgroupSet::whole(g)));

  for (std::size_t i = 0; i < lat.subgroups.size(); ++i) {
    const auto& h = lat.subgroups[i];
    CHECK(g.order() % h.order() == 0);
    for (ElementId s : g.generators()) CHECK(all.count(conjugate_subgroup(g, h, s)));
    if (i > 0 && lat.class_of[i] != lat.class_of[i - 1]) CHECK(lat.class_of[i] == lat.class_of[i - 1] + 1);
    CHECK(lat.class_rep[lat.class_of[i]] <= i);
  }
  // Members of one class are conjugate, and distinct classes are not.
  for (std::size_t k = 0; k < lat.class_rep.size(); ++k) {
    const auto& rep = lat.subgroups[lat.class_rep[k]];
    std::size_t members = 0;
    for (std::size_t i = 0; i < lat.subgroups.size(); ++i)
      if (lat.class_of[i] == k) ++members;
    std::unordered_set<SubgroupSet, SubgroupSetHash> orbit;
    for (ElementId x = 0; x < g.order(); ++x) orbit.insert(conjugate_subgroup(g, rep, x));
    CHECK(orbit.size() == members);
  }
  for (std::size_t i = 0; i < lat.subgroups.size(); i += 5)
    for (std::size_t j = 0; j < lat.subgroups.size(); j += 7) {
      const auto& a = lat.subgroups[i];
      const auto& b = lat.subgroups[j];
      const SubgroupSet meet = subgroup_intersect(a, b);
      CHECK(all.count(meet));
      CHECK(meet.is_subset_of(a));
      CHECK(meet.is_subset_of(b));
      std::vector<ElementId> gens = a.members();
      for (ElementId x : b.members()) gens.push_back(x);
      const SubgroupSet join = subgroup_closure(g, gens);
      CHECK(all.count(join));
      CHECK(a.is_subset_of(join));
      CHECK(b.is_subset_of(join));
    }
  CHECK_THROWS_AS(all_subgroups(make_group(11, GroupKind::PGL)), CapExceeded);
}

TEST_CASE("classification") {
  FiniteGroup pgl5 = make_group(5, GroupKind::PGL);
  FiniteGroup psl7 = make_group(7, GroupKind::PSL);
  FiniteGroup psl9 = make_group(9, GroupKind::PSL);
  CHECK(classify_subgroup(pgl5, SubgroupSet::whole(pgl5)) == IsoType::pgl(5));
  CHECK(classify_subgroup(psl7, SubgroupSet::whole(psl7)) == IsoType::psl(7));
  CHECK(classify_subgroup(psl9, SubgroupSet::whole(psl9)) == IsoType::psl(9));
  const FiniteGroup psl5 = make_group(5, GroupKind::PSL);
  CHECK(classify_subgroup(psl5, SubgroupSet::whole(psl5)).canonical() == IsoType::psl(5).canonical());
  const FiniteGroup s4 = make_group(3, GroupKind::PGL);
  CHECK(classify_subgroup(s4, SubgroupSet::whole(s4)) == IsoType::s4());
  CHECK(classify_subgroup(s4, SubgroupSet::trivial(s4)) == IsoType::trivial());

  psl9.enable_cayley_table();
  const auto lat9 = all_subgroups(psl9);
  CHECK(find_subgroup(lat9, psl9, 9, IsoType::elementary_abelian(3, 2)));
  CHECK(find_subgroup(lat9, psl9, 36, IsoType::frobenius(3, 2, 4)));
  CHECK(find_subgroup(lat9, psl9, 8, IsoType::dihedral(8)));
  CHECK(find_subgroup(lat9, psl9, 4, IsoType::dihedral(4)));
  CHECK(find_subgroup(lat9, psl9, 60, IsoType::a5()));
  CHECK_FALSE(find_subgroup(lat9, psl9, 8, IsoType::cyclic(8)));

  CHECK(IsoType::psl(3).canonical() == IsoType::a4());
  CHECK(IsoType::pgl(3).canonical() == IsoType::s4());
  CHECK(IsoType::psl(4).canonical() == IsoType::a5());
  CHECK(IsoType::frobenius(5, 1, 2).canonical() == IsoType::dihedral(10));
  CHECK(IsoType::elementary_abelian(2, 2).canonical() == IsoType::dihedral(4));
  CHECK(IsoType::frobenius(3, 2, 4).to_string() == "E9:Z4");
  CHECK(IsoType::psl(7).to_string() == "L2(7)");
  CHECK(IsoType::pgl(9).to_string() == "PGL2(9)");
  CHECK(is_simple(psl5, SubgroupSet::whole(psl5)));
  CHECK_FALSE(is_simple(s4, SubgroupSet::whole(s4)));
}

TEST_CASE("no dihedral group of order 4p") {
  for (std::uint32_t q : {5u, 7u, 9u}) {
    for (GroupKind kind : {GroupKind::PSL, GroupKind::PGL}) {
      FiniteGroup g = make_group(q, kind);
      g.enable_cayley_table();
      const std::uint32_t p = q == 9 ? 3 : q;
      for (const auto& h : all_subgroups(g).subgroups)
        CHECK_FALSE(classify_subgroup(g, h).canonical() == IsoType::dihedral(4 * p));
    }
  }
}
