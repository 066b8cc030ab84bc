#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <set>

#include "pglatlas/projective.hpp"
#include "pglatlas/search.hpp"

using namespace pglatlas;

namespace {

// Reference implementation on raw permutations: subgroups as std::set<Perm>.
using PermSet = std::set<Perm>;

PermSet perm_closure(std::size_t degree, const std::vector<Perm>& gens) {
  PermSet out{Perm::identity(degree)};
  std::vector<Perm> frontier{Perm::identity(degree)};
  while (!frontier.empty()) {
    std::vector<Perm> next;
    for (const Perm& x : frontier)
      for (const Perm& s : gens) {
        Perm y = x * s;
        if (out.insert(y).second) next.push_back(std::move(y));
      }
    frontier = std::move(next);
  }
  return out;
}

bool oracle_string_cgroup(const std::vector<Perm>& rho, std::size_t group_order) {
  const std::size_t n = rho.size(), degree = rho[0].degree();
  for (std::size_t i = 0; i < n; ++i) {
    if (rho[i].order() != 2) return false;
    for (std::size_t j = i + 1; j < n; ++j) {
      if (rho[i] == rho[j]) return false;
      if (j > i + 1 && !(rho[i] * rho[j] == rho[j] * rho[i])) return false;
    }
  }
  if (perm_closure(degree, rho).size() != group_order) return false;
  std::vector<PermSet> sub(std::size_t{1} << n);
  for (unsigned mask = 0; mask < sub.size(); ++mask) {
    std::vector<Perm> gens;
    for (std::size_t i = 0; i < n; ++i)
      if (mask >> i & 1U) gens.push_back(rho[i]);
    sub[mask] = perm_closure(degree, gens);
  }
  for (unsigned j = 0; j < sub.size(); ++j)
    for (unsigned k = 0; k < sub.size(); ++k) {
      PermSet meet;
      std::set_intersection(sub[j].begin(), sub[j].end(), sub[k].begin(), sub[k].end(),
                            std::inserter(meet, meet.end()));
      if (meet != sub[j & k]) return false;
    }
  return true;
}

struct OracleCounts {
  std::size_t iso = 0;
  std::size_t iso_dual = 0;
  std::size_t tuples = 0;
};

// Brute force over all involution tuples; orbits under conjugation by every
// element of `conj`, and additionally under reversal.
OracleCounts oracle_counts(const FiniteGroup& g, unsigned rank, const FiniteGroup& conj) {
  std::vector<Perm> invols;
  for (ElementId x : g.involutions()) invols.push_back(g.element(x));
  std::vector<std::vector<Perm>> valid;
  std::vector<std::size_t> idx(rank, 0);
  while (true) {
    std::vector<Perm> t;
    for (auto i : idx) t.push_back(invols[i]);
    bool pre = true;
    for (std::size_t i = 0; i < rank && pre; ++i)
      for (std::size_t j = i + 2; j < rank && pre; ++j) pre = t[i] * t[j] == t[j] * t[i];
    if (pre && oracle_string_cgroup(t, g.order())) valid.push_back(t);
    std::size_t pos = 0;
    while (pos < rank && ++idx[pos] == invols.size()) idx[pos++] = 0;
    if (pos == rank) break;
  }
  std::set<std::vector<Perm>> iso, iso_dual;
  for (const auto& t : valid) {
    std::vector<Perm> best, best_dual;
    for (ElementId c = 0; c < conj.order(); ++c) {
      const Perm x = conj.element(c);
      std::vector<Perm> img;
      for (const Perm& r : t) img.push_back(x.inverse() * r * x);
      if (best.empty() || img < best) best = img;
      std::vector<Perm> rev(img.rbegin(), img.rend());
      const auto& m = std::min(img, rev);
      if (best_dual.empty() || m < best_dual) best_dual = m;
    }
    iso.insert(best);
    iso_dual.insert(best_dual);
  }
  return {iso.size(), iso_dual.size(), valid.size()};
}

std::vector<ElementId> ids_of(const FiniteGroup& g, const std::vector<Perm>& perms) {
  std::vector<ElementId> out;
  for (const Perm& p : perms) out.push_back(*g.find(p));
  return out;
}

}  // namespace

TEST_CASE("string condition and intersection property on S4") {
  const FiniteGroup s4 = FiniteGroup::close(std::vector<Perm>{Perm{1, 0, 2, 3}, Perm{0, 2, 1, 3}, Perm{0, 1, 3, 2}});
  const auto cube = ids_of(s4, {Perm{1, 0, 2, 3}, Perm{0, 2, 1, 3}, Perm{0, 1, 3, 2}});
  CHECK(string_condition(s4, cube));
  CHECK(intersection_property(s4, cube));
  CHECK(schlafli_type(s4, cube).to_string() == "{3,3}");

  // (01), (12), (01)(23) is the hemi-octahedron: a C-group, though not the cube's string.
  const std::vector<Perm> hemi{Perm{1, 0, 2, 3}, Perm{0, 2, 1, 3}, Perm{1, 0, 3, 2}};
  CHECK(intersection_property(s4, ids_of(s4, hemi)));
  CHECK(oracle_string_cgroup(hemi, 24));
  CHECK(schlafli_type(s4, ids_of(s4, hemi)).to_string() == "{3,4}");

  // (01)(23), (12), (23), (03)(12): a generating string of involutions in which
  // <rho0, rho1, rho2> and <rho1, rho2, rho3> meet in more than <rho1, rho2>.
  const std::vector<Perm> bad{Perm{1, 0, 3, 2}, Perm{0, 2, 1, 3}, Perm{0, 1, 3, 2}, Perm{3, 2, 1, 0}};
  CHECK(string_condition(s4, ids_of(s4, bad)));
  CHECK_FALSE(intersection_property(s4, ids_of(s4, bad)));
  CHECK_FALSE(oracle_string_cgroup(bad, 24));

  // (01) and (23) are non-adjacent here and commute; (01),(23),(12) fails the string condition.
  const auto not_string = ids_of(s4, {Perm{1, 0, 2, 3}, Perm{0, 1, 3, 2}, Perm{0, 2, 1, 3}});
  CHECK_FALSE(string_condition(s4, not_string));
  const auto repeated = ids_of(s4, {Perm{1, 0, 2, 3}, Perm{1, 0, 2, 3}, Perm{0, 1, 3, 2}});
  CHECK_FALSE(string_condition(s4, repeated));
}

TEST_CASE("intersection property matches the permutation oracle") {
  // Rank 3 strings of S5 never fail the intersection property; rank 4 ones mostly do.
  const FiniteGroup g = make_group(5, GroupKind::PGL);
  const auto& inv = g.involutions();
  for (unsigned rank : {3u, 4u}) {
    CAPTURE(rank);
    std::size_t checked = 0, failing = 0;
    std::vector<std::size_t> idx(rank, 0);
    while (true) {
      std::vector<ElementId> t;
      for (auto i : idx) t.push_back(inv[i]);
      if (string_condition(g, t)) {
        std::vector<Perm> perms;
        for (ElementId x : t) perms.push_back(g.element(x));
        if (perm_closure(6, perms).size() == g.order()) {
          const bool ip = intersection_property(g, t);
          REQUIRE(ip == oracle_string_cgroup(perms, g.order()));
          ++checked;
          failing += !ip;
        }
      }
      std::size_t pos = 0;
      while (pos < rank && ++idx[pos] == inv.size()) idx[pos++] = 0;
      if (pos == rank) break;
    }
    CHECK(checked > 0);
    if (rank == 3) CHECK(failing == 0);
    if (rank == 4) CHECK(failing > 0);
  }
}

TEST_CASE("Schlafli types") {
  SchlafliType t{{3, 5, 3}};
  CHECK(t.to_string() == "{3,5,3}");
  CHECK_FALSE(t.degenerate());
  CHECK(SchlafliType{{4, 3, 5}}.reversed() == SchlafliType{{5, 3, 4}});
  CHECK(SchlafliType{{2, 5}}.degenerate());
  PolytopeRecord r;
  r.tuple = {1, 2, 3, 4};
  r.schlafli = SchlafliType{{3, 4, 5}};
  const auto d = dual(r);
  CHECK(d.tuple == std::vector<ElementId>{4, 3, 2, 1});
  CHECK(d.schlafli.to_string() == "{5,4,3}");
}

TEST_CASE("the 4-simplex is the only rank 4 polytope of S5") {
  const FiniteGroup g = make_group(5, GroupKind::PGL);
  const auto r = enumerate_polytopes(g, 4, make_dedup_group(5));
  REQUIRE(r.iso.size() == 1);
  CHECK(r.iso[0].schlafli.to_string() == "{3,3,3}");
  CHECK(r.iso[0].self_dual);
  CHECK(r.iso[0].orbit_size == 120);
  CHECK(r.iso_dual.size() == 1);
  CHECK(verify_record(g, r.iso[0]));
}

TEST_CASE("enumeration counts against brute force") {
  struct Case {
    std::uint32_t q;
    GroupKind kind;
    unsigned rank;
  };
  for (const Case& c : {Case{3, GroupKind::PGL, 3}, Case{5, GroupKind::PGL, 3}, Case{5, GroupKind::PSL, 3},
                        Case{5, GroupKind::PGL, 4}, Case{7, GroupKind::PSL, 3}}) {
    CAPTURE(c.q);
    CAPTURE(c.rank);
    const FiniteGroup g = make_group(c.q, c.kind);
    const FiniteGroup dedup = make_dedup_group(c.q);
    const auto r = enumerate_polytopes(g, c.rank, dedup);
    const auto want = oracle_counts(g, c.rank, dedup);
    CHECK(r.iso.size() == want.iso);
    CHECK(r.iso_dual.size() == want.iso_dual);
    std::size_t total = 0;
    for (const auto& rec : r.iso) total += rec.orbit_size;
    CHECK(total == want.tuples);
  }
}

TEST_CASE("every record re-verifies independently") {
  struct Case {
    std::uint32_t q;
    GroupKind kind;
    unsigned rank;
  };
  for (const Case& c : {Case{5, GroupKind::PGL, 3}, Case{7, GroupKind::PGL, 3}, Case{9, GroupKind::PSigmaL, 4},
                        Case{9, GroupKind::PSigmaL, 5}, Case{11, GroupKind::PSL, 4}, Case{8, GroupKind::PSL, 3}}) {
    const FiniteGroup g = make_group(c.q, c.kind);
    const auto r = enumerate_polytopes(g, c.rank, make_dedup_group(c.q));
    CHECK_FALSE(r.iso.empty());
    for (const auto* list : {&r.iso, &r.iso_dual})
      for (const auto& rec : *list) {
        CHECK(verify_record(g, rec));
        std::vector<Perm> perms;
        for (ElementId x : rec.tuple) perms.push_back(g.element(x));
        CHECK(oracle_string_cgroup(perms, g.order()));
        CHECK(schlafli_type(g, rec.tuple) == rec.schlafli);
        CHECK(rec.degenerate == rec.schlafli.degenerate());
      }
    // A record that is self-dual in the iso list stays one record after identifying duals.
    std::size_t self_dual = 0;
    for (const auto& rec : r.iso) self_dual += rec.self_dual;
    CHECK(r.iso_dual.size() * 2 == r.iso.size() + self_dual);
  }
}

TEST_CASE("results do not depend on workers or partition seed") {
  const FiniteGroup g = make_group(9, GroupKind::PSigmaL);
  const FiniteGroup dedup = make_dedup_group(9);
  const auto base = enumerate_polytopes(g, 4, dedup, {1, 0});
  for (const SearchOptions& o : {SearchOptions{3, 0}, SearchOptions{2, 12345}, SearchOptions{1, 99}}) {
    const auto other = enumerate_polytopes(g, 4, dedup, o);
    REQUIRE(other.iso.size() == base.iso.size());
    REQUIRE(other.iso_dual.size() == base.iso_dual.size());
    for (std::size_t i = 0; i < base.iso.size(); ++i) {
      CHECK(other.iso[i].tuple == base.iso[i].tuple);
      CHECK(other.iso[i].orbit_size == base.iso[i].orbit_size);
    }
    for (std::size_t i = 0; i < base.iso_dual.size(); ++i) CHECK(other.iso_dual[i].tuple == base.iso_dual[i].tuple);
    CHECK(other.leaves_examined == base.leaves_examined);
  }
}

TEST_CASE("argument checks") {
  const FiniteGroup g = make_group(5, GroupKind::PGL);
  const FiniteGroup dedup = make_dedup_group(5);
  CHECK_THROWS_AS(enumerate_polytopes(g, 2, dedup), std::invalid_argument);
  CHECK_THROWS_AS(enumerate_polytopes(g, 6, dedup), std::invalid_argument);
  CHECK_THROWS_AS(enumerate_polytopes(g, 3, make_dedup_group(7)), std::invalid_argument);
  // A dedup group that contains g but does not normalize it.
  const FiniteGroup s6 = FiniteGroup::close(std::vector<Perm>{Perm{1, 2, 3, 4, 5, 0}, Perm{1, 0, 2, 3, 4, 5}});
  const FiniteGroup stab = FiniteGroup::close(std::vector<Perm>{Perm{1, 2, 3, 4, 0, 5}, Perm{1, 0, 2, 3, 4, 5}});
  CHECK_THROWS_AS(enumerate_polytopes(stab, 3, s6), std::invalid_argument);
}
