#include "pglatlas/lattice.hpp"

#include <algorithm>
#include <map>
#include <sstream>
#include <unordered_map>

#include "pglatlas/errors.hpp"

namespace pglatlas {

namespace {

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

bool is_prime_power(std::uint64_t n, std::uint32_t* prime = nullptr) {
  if (n < 2) return false;
  std::uint64_t p = 2;
  while (n % p) ++p;
  while (n % p == 0) n /= p;
  if (prime) *prime = static_cast<std::uint32_t>(p);
  return n == 1;
}

std::uint64_t psl_order(std::uint64_t q) { return q * (q * q - 1) / (q % 2 ? 2 : 1); }

std::map<std::uint32_t, std::size_t> order_profile(const FiniteGroup& g, const std::vector<ElementId>& members) {
  std::map<std::uint32_t, std::size_t> prof;
  for (ElementId x : members) ++prof[g.element_order(x)];
  return prof;
}

std::vector<ElementId> powers(const FiniteGroup& g, ElementId x) {
  std::vector<ElementId> out{0};
  for (ElementId y = x; y != 0; y = g.mul(y, x)) out.push_back(y);
  return out;
}

bool commuting(const FiniteGroup& g, const std::vector<ElementId>& gens) {
  for (std::size_t i = 0; i < gens.size(); ++i)
    for (std::size_t j = i + 1; j < gens.size(); ++j)
      if (!g.commute(gens[i], gens[j])) return false;
  return true;
}

bool is_dihedral(const FiniteGroup& g, const std::vector<ElementId>& members, std::size_t n) {
  if (n % 2 || n < 4) return false;
  const std::size_t m = n / 2;
  for (ElementId c : members) {
    if (g.element_order(c) != m) continue;
    const auto rot = powers(g, c);
    std::vector<ElementId> sorted = rot;
    std::sort(sorted.begin(), sorted.end());
    for (ElementId x : members) {
      if (std::binary_search(sorted.begin(), sorted.end(), x)) continue;
      if (g.element_order(x) != 2) return false;
    }
    return true;  // any rotation of order m gives the same answer
  }
  return false;
}

SubgroupSet subgroup_from(const FiniteGroup& g, const std::vector<ElementId>& members) {
  std::vector<std::uint64_t> bits((g.order() + 63) / 64, 0);
  for (ElementId x : members) bits[x >> 6] |= std::uint64_t{1} << (x & 63);
  return SubgroupSet(g, std::move(bits));
}

}  // namespace

IsoType IsoType::trivial() { return {Kind::Trivial, 1}; }
IsoType IsoType::cyclic(std::uint64_t n) { return {Kind::Cyclic, n}; }
IsoType IsoType::dihedral(std::uint64_t order) { return {Kind::Dihedral, order}; }
IsoType IsoType::elementary_abelian(std::uint32_t p, std::uint32_t s) {
  std::uint64_t n = 1;
  for (std::uint32_t i = 0; i < s; ++i) n *= p;
  return {Kind::ElementaryAbelian, n, p, s};
}
IsoType IsoType::frobenius(std::uint32_t p, std::uint32_t s, std::uint32_t h) {
  std::uint64_t n = h;
  for (std::uint32_t i = 0; i < s; ++i) n *= p;
  return {Kind::Frobenius, n, p, s, h};
}
IsoType IsoType::a4() { return {Kind::A4, 12}; }
IsoType IsoType::s4() { return {Kind::S4, 24}; }
IsoType IsoType::a5() { return {Kind::A5, 60}; }
IsoType IsoType::psl(std::uint32_t q) { return {Kind::PSL, psl_order(q), 0, 0, 0, q}; }
IsoType IsoType::pgl(std::uint32_t q) {
  return {Kind::PGL, std::uint64_t{q} * (std::uint64_t{q} * q - 1), 0, 0, 0, q};
}
IsoType IsoType::other(std::uint64_t order) { return {Kind::Other, order}; }

IsoType IsoType::canonical() const {
  switch (kind) {
    case Kind::Cyclic:
      return order == 1 ? trivial() : *this;
    case Kind::ElementaryAbelian:
      if (s == 1) return cyclic(p);
      if (p == 2 && s == 2) return dihedral(4);
      return *this;
    case Kind::Dihedral:
      return order == 2 ? cyclic(2) : *this;
    case Kind::Frobenius:
      if (s == 1 && h == 2 && p > 2) return dihedral(2 * std::uint64_t{p});
      if (p == 2 && s == 2 && h == 3) return a4();
      return *this;
    case Kind::PSL:
      if (field == 2) return dihedral(6);
      if (field == 3) return a4();
      if (field == 4 || field == 5) return a5();
      return *this;
    case Kind::PGL:
      if (field == 2) return dihedral(6);
      if (field == 3) return s4();
      if (field == 4) return a5();
      if (field % 2 == 0) return psl(field);
      return *this;
    default:
      return *this;
  }
}

std::string IsoType::to_string() const {
  std::ostringstream out;
  switch (kind) {
    case Kind::Trivial: out << "1"; break;
    case Kind::Cyclic: out << 'Z' << order; break;
    case Kind::Dihedral: out << 'D' << order; break;
    case Kind::ElementaryAbelian: out << 'E' << order; break;
    case Kind::Frobenius: out << 'E' << order / h << ":Z" << h; break;
    case Kind::A4: out << "A4"; break;
    case Kind::S4: out << "S4"; break;
    case Kind::A5: out << "A5"; break;
    case Kind::PSL: out << "L2(" << field << ')'; break;
    case Kind::PGL: out << "PGL2(" << field << ')'; break;
    case Kind::Other: out << "other(" << order << ')'; break;
  }
  return out.str();
}

std::vector<ElementId> generating_set(const FiniteGroup& g, const SubgroupSet& h) {
  ClosureWorkspace ws(g);
  std::vector<ElementId> gens;
  std::size_t reached = ws.close(gens, false);
  for (ElementId x : h.members()) {
    if (reached == h.order()) break;
    if (ws.contains(x)) continue;
    gens.push_back(x);
    reached = ws.close(gens, false);
  }
  return gens;
}

bool is_simple(const FiniteGroup& g, const SubgroupSet& h) {
  if (h.order() == 1) return false;
  const auto gens = generating_set(g, h);
  const auto members = h.members();
  std::unordered_map<ElementId, bool> seen;
  ClosureWorkspace ws(g);
  for (ElementId start : members) {
    if (start == 0 || seen.count(start)) continue;
    std::vector<ElementId> cls{start};
    seen[start] = true;
    for (std::size_t head = 0; head < cls.size(); ++head) {
      for (ElementId s : gens) {
        const ElementId y = g.conjugate(cls[head], s);
        if (!seen.count(y)) {
          seen[y] = true;
          cls.push_back(y);
        }
      }
    }
    // A conjugacy class generates a normal subgroup.
    if (ws.close(cls, false) != h.order()) return false;
  }
  return true;
}

IsoType classify_subgroup(const FiniteGroup& g, const SubgroupSet& h) {
  const std::size_t n = h.order();
  if (n == 1) return IsoType::trivial();
  const auto members = h.members();
  const auto prof = order_profile(g, members);
  auto has_order = [&](std::uint64_t k) { return prof.count(static_cast<std::uint32_t>(k)) > 0; };

  if (has_order(n)) return IsoType::cyclic(n);
  if (is_dihedral(g, members, n)) return IsoType::dihedral(n);

  using Profile = std::map<std::uint32_t, std::size_t>;
  if (n == 12 && prof == Profile{{1, 1}, {2, 3}, {3, 8}}) return IsoType::a4();
  if (n == 24 && prof == Profile{{1, 1}, {2, 9}, {3, 8}, {4, 6}}) return IsoType::s4();
  if (n == 60 && prof == Profile{{1, 1}, {2, 15}, {3, 20}, {5, 24}} && is_simple(g, h)) return IsoType::a5();

  const auto gens = generating_set(g, h);
  const bool abelian = commuting(g, gens);
  std::uint32_t p = 0;
  if (abelian) {
    if (is_prime_power(n, &p) && prof.size() == 2 && has_order(p)) {
      std::uint32_t s = 0;
      for (std::size_t m = n; m > 1; m /= p) ++s;
      return IsoType::elementary_abelian(p, s);
    }
    return IsoType::other(n);
  }

  // Normal elementary abelian Sylow subgroup with a cyclic complement.
  ClosureWorkspace ws(g);
  for (std::uint32_t prime = 2; prime <= n; ++prime) {
    if (n % prime || !is_prime(prime)) continue;
    std::size_t part = 1;
    std::uint32_t s = 0;
    for (std::size_t m = n; m % prime == 0; m /= prime) {
      part *= prime;
      ++s;
    }
    const std::size_t hpart = n / part;
    if (hpart == 1) continue;
    std::vector<ElementId> sylow;
    bool exponent_p = true;
    for (ElementId x : members) {
      const std::uint32_t o = g.element_order(x);
      if (o == 1 || o == prime) sylow.push_back(x);
      else if (is_prime_power(o, &p) && p == prime) exponent_p = false;
    }
    if (sylow.size() != part || !exponent_p) continue;
    if (ws.close(sylow, false) != part) continue;
    const auto sylow_set = subgroup_from(g, sylow);
    if (!commuting(g, generating_set(g, sylow_set))) continue;
    if (!has_order(hpart)) continue;
    return IsoType::frobenius(prime, s, static_cast<std::uint32_t>(hpart));
  }

  for (std::uint64_t q = 4; q * (q * q - 1) / 2 <= n; ++q) {
    if (!is_prime_power(q) || psl_order(q) != n) continue;
    if (is_simple(g, h)) return IsoType::psl(static_cast<std::uint32_t>(q));
  }

  for (std::uint64_t q = 5; q * (q * q - 1) <= n; q += 2) {
    if (!is_prime_power(q) || q * (q * q - 1) != n) continue;
    if (!has_order(q + 1) || !has_order(q - 1)) continue;
    std::vector<ElementId> squares;
    for (ElementId x : members) squares.push_back(g.mul(x, x));
    std::sort(squares.begin(), squares.end());
    squares.erase(std::unique(squares.begin(), squares.end()), squares.end());
    ws.close(squares, false);
    const SubgroupSet k = ws.to_subgroup();
    if (k.order() * 2 == n && is_simple(g, k)) return IsoType::pgl(static_cast<std::uint32_t>(q));
  }

  return IsoType::other(n);
}

SubgroupLattice all_subgroups(const FiniteGroup& g, std::size_t cap) {
  if (g.order() > cap)
    throw CapExceeded("subgroup lattice refused: group order " + std::to_string(g.order()) +
                      " exceeds census cap " + std::to_string(cap));

  SubgroupLattice lat;
  std::unordered_map<SubgroupSet, std::size_t, SubgroupSetHash> index;

  struct Pending {
    std::size_t subgroup;
    std::vector<ElementId> gens;
  };
  std::vector<Pending> queue;

  auto add_class = [&](const SubgroupSet& h, std::vector<ElementId> gens) {
    if (index.count(h)) return;
    const std::size_t cls = lat.class_rep.size();
    const std::size_t first = lat.subgroups.size();
    lat.class_rep.push_back(first);
    index.emplace(h, first);
    lat.subgroups.push_back(h);
    lat.class_of.push_back(cls);
    for (std::size_t head = first; head < lat.subgroups.size(); ++head) {
      for (ElementId s : g.generators()) {
        SubgroupSet c = conjugate_subgroup(g, lat.subgroups[head], s);
        if (index.count(c)) continue;
        index.emplace(c, lat.subgroups.size());
        lat.subgroups.push_back(std::move(c));
        lat.class_of.push_back(cls);
      }
    }
    queue.push_back({first, std::move(gens)});
  };

  // One generator per cyclic subgroup.
  std::vector<ElementId> cyclic_gens;
  {
    std::unordered_map<SubgroupSet, ElementId, SubgroupSetHash> cyclic;
    for (std::size_t x = 0; x < g.order(); ++x) {
      const SubgroupSet c = subgroup_from(g, powers(g, static_cast<ElementId>(x)));
      if (cyclic.emplace(c, static_cast<ElementId>(x)).second) cyclic_gens.push_back(static_cast<ElementId>(x));
    }
  }
  for (ElementId x : cyclic_gens) {
    std::vector<ElementId> gens;
    if (x != 0) gens.push_back(x);
    add_class(subgroup_from(g, powers(g, x)), std::move(gens));
  }

  ClosureWorkspace ws(g);
  for (std::size_t qi = 0; qi < queue.size(); ++qi) {
    for (ElementId c : cyclic_gens) {
      const SubgroupSet& h = lat.subgroups[queue[qi].subgroup];
      if (h.contains(c)) continue;
      std::vector<ElementId> gens = queue[qi].gens;
      gens.push_back(c);
      ws.close(gens, true);
      add_class(ws.to_subgroup(), std::move(gens));
    }
  }
  return lat;
}

}  // namespace pglatlas
