#include "pglatlas/census.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <stdexcept>

#include "pglatlas/errors.hpp"
#include "pglatlas/gf.hpp"

namespace pglatlas {

std::string to_string(Scope scope) {
  switch (scope) {
    case Scope::All: return "all";
    case Scope::Inside: return "inside";
    case Scope::Outside: return "outside";
  }
  return "?";
}

std::string to_string(Quantity quantity) {
  switch (quantity) {
    case Quantity::Count: return "count";
    case Quantity::Classes: return "classes";
    case Quantity::Present: return "present";
  }
  return "?";
}

bool CensusReport::all_match() const { return mismatches() == 0; }

std::size_t CensusReport::formula_rows() const {
  return static_cast<std::size_t>(
      std::count_if(rows.begin(), rows.end(), [](const CensusRow& r) { return r.predicted.has_value(); }));
}

std::size_t CensusReport::mismatches() const {
  return static_cast<std::size_t>(
      std::count_if(rows.begin(), rows.end(), [](const CensusRow& r) { return !r.matches(); }));
}

std::uint64_t CensusReport::tally_total() const {
  std::uint64_t total = 0;
  for (const auto& [type, n] : tally) total += n;
  return total;
}

namespace {

struct PrimePower {
  std::uint32_t p = 0;
  std::uint32_t r = 0;
};

PrimePower factor_prime_power(std::uint32_t q) {
  for (std::uint32_t p = 2; p <= q; ++p) {
    if (q % p) continue;
    std::uint32_t r = 0;
    while (q % p == 0) {
      q /= p;
      ++r;
    }
    if (q != 1) break;
    return {p, r};
  }
  throw std::invalid_argument("q must be a prime power");
}

std::uint64_t ipow(std::uint64_t b, unsigned e) {
  std::uint64_t out = 1;
  while (e--) out *= b;
  return out;
}

std::vector<std::uint64_t> divisors(std::uint64_t n) {
  std::vector<std::uint64_t> out;
  for (std::uint64_t d = 1; d <= n; ++d)
    if (n % d == 0) out.push_back(d);
  return out;
}

bool divides(std::uint64_t d, std::uint64_t n) { return d != 0 && n % d == 0; }

/// Bound on the complement order of E_{p^s}:Z_h inside L2(q), k = (r,s): the
/// complement lies in the squares of GF(q)* and in GF(p^k)*, so h divides
/// (p^k - 1)/2 when p is odd and r/k is odd, otherwise p^k - 1.
std::uint64_t psl_complement_bound(const PrimePower& f, std::uint32_t s) {
  const std::uint32_t k = std::gcd(f.r, s);
  const std::uint64_t base = ipow(f.p, k) - 1;
  return (f.p > 2 && (f.r / k) % 2 == 1) ? base / 2 : base;
}

/// The same bound as literally stated, with the halving attached to even r/k.
std::uint64_t psl_complement_bound_literal(const PrimePower& f, std::uint32_t s) {
  const std::uint32_t k = std::gcd(f.r, s);
  const std::uint64_t base = ipow(f.p, k) - 1;
  return (f.p > 2 && (f.r / k) % 2 == 0) ? base / 2 : base;
}

void add(std::vector<Prediction>& out, std::string family, IsoType type, Scope scope, Quantity quantity,
         std::uint64_t value, std::string note = {}) {
  out.push_back({std::move(family), type.canonical(), scope, quantity, value, std::move(note)});
}

std::vector<Prediction> psl_predictions(std::uint32_t q, const PrimePower& f) {
  std::vector<Prediction> out;
  const std::uint64_t Q = q;
  const std::uint64_t g = f.p == 2 ? 1 : 2;
  const std::uint64_t order_times_g = Q * (Q * Q - 1);

  for (const std::uint64_t m : {(Q + 1) / g, (Q - 1) / g}) {
    for (const std::uint64_t d : divisors(m)) {
      if (d <= 2) continue;
      add(out, "dihedral", IsoType::dihedral(2 * d), Scope::All, Quantity::Count, order_times_g / (2 * d * g));
      add(out, "dihedral", IsoType::dihedral(2 * d), Scope::All, Quantity::Classes, (m / d) % 2 ? 1 : 2);
    }
  }

  if (f.p > 2) {
    add(out, "Klein four", IsoType::dihedral(4), Scope::All, Quantity::Count, order_times_g / (12 * g));
    add(out, "Klein four", IsoType::dihedral(4), Scope::All, Quantity::Classes, (q % 8 == 3 || q % 8 == 5) ? 1 : 2);
  }

  const bool four_power = f.p == 2 && f.r % 2 == 0;
  add(out, "alternating A4", IsoType::a4(), Scope::All, Quantity::Present, (f.p > 2 || four_power) ? 1 : 0);
  add(out, "symmetric S4", IsoType::s4(), Scope::All, Quantity::Present, (q % 8 == 1 || q % 8 == 7) ? 1 : 0);
  add(out, "alternating A5", IsoType::a5(), Scope::All, Quantity::Present,
      (q % 5 == 1 || q % 5 == 4 || q % 5 == 0 || four_power) ? 1 : 0);

  for (std::uint32_t w = 1; w <= f.r; ++w) {
    if (f.r % w) continue;
    const std::uint64_t sub = ipow(f.p, w);
    const auto type = IsoType::psl(static_cast<std::uint32_t>(sub));
    add(out, "subfield L2", type, Scope::All, Quantity::Count, order_times_g / (sub * (sub * sub - 1)));
    add(out, "subfield L2", type, Scope::All, Quantity::Classes, (f.p > 2 && (f.r / w) % 2 == 0) ? 2 : 1);
  }

  add(out, "no D4p", IsoType::dihedral(4 * std::uint64_t{f.p}), Scope::All, Quantity::Count, 0);
  return out;
}

std::vector<Prediction> pgl_predictions(std::uint32_t q, const PrimePower& f) {
  std::vector<Prediction> out;
  const std::uint64_t Q = q;
  const std::uint64_t N = Q * (Q * Q - 1);
  const int eps = epsilon(q);
  const std::uint64_t q_plus = eps > 0 ? Q + 1 : Q - 1;   // q + eps
  const std::uint64_t q_minus = eps > 0 ? Q - 1 : Q + 1;  // q - eps

  add(out, "involution", IsoType::cyclic(2), Scope::Inside, Quantity::Count, Q * q_plus / 2);
  add(out, "involution", IsoType::cyclic(2), Scope::Inside, Quantity::Classes, 1);
  add(out, "involution", IsoType::cyclic(2), Scope::Outside, Quantity::Count, Q * q_minus / 2);
  add(out, "involution", IsoType::cyclic(2), Scope::Outside, Quantity::Classes, 1);

  // d | q - eps pairs with q(q + eps)/2 and d | q + eps with q(q - eps)/2.
  for (const auto& [m, count] : {std::pair{q_minus, Q * q_plus / 2}, std::pair{q_plus, Q * q_minus / 2}}) {
    for (const std::uint64_t d : divisors(m)) {
      if (d <= 2) continue;
      add(out, "cyclic", IsoType::cyclic(d), Scope::All, Quantity::Count, count);
      add(out, "cyclic", IsoType::cyclic(d), Scope::All, Quantity::Classes, 1);
    }
  }

  add(out, "Klein four", IsoType::dihedral(4), Scope::Inside, Quantity::Count, N / 24);
  add(out, "Klein four", IsoType::dihedral(4), Scope::Inside, Quantity::Classes, 1);
  add(out, "Klein four", IsoType::dihedral(4), Scope::Outside, Quantity::Count, N / 8);
  add(out, "Klein four", IsoType::dihedral(4), Scope::Outside, Quantity::Classes, 1);

  for (const std::uint64_t m : {q_plus, q_minus}) {
    for (const std::uint64_t d : divisors(m)) {
      if (d <= 2) continue;
      const auto type = IsoType::dihedral(2 * d);
      if ((m / d) % 2 == 0) {
        for (const Scope side : {Scope::Inside, Scope::Outside}) {
          add(out, "dihedral split", type, side, Quantity::Count, N / (4 * d));
          add(out, "dihedral split", type, side, Quantity::Classes, 1);
        }
      } else {
        add(out, "dihedral", type, Scope::All, Quantity::Count, N / (2 * d));
        add(out, "dihedral", type, Scope::All, Quantity::Classes, 1);
      }
    }
  }

  add(out, "alternating A4", IsoType::a4(), Scope::All, Quantity::Count, N / 24);
  add(out, "alternating A4", IsoType::a4(), Scope::All, Quantity::Classes, 1);
  add(out, "alternating A4", IsoType::a4(), Scope::Inside, Quantity::Count, N / 24);

  const bool s4_inside = q % 8 == 1 || q % 8 == 7;
  add(out, "symmetric S4", IsoType::s4(), Scope::All, Quantity::Count, N / 24);
  add(out, "symmetric S4", IsoType::s4(), Scope::All, Quantity::Classes, 1);
  add(out, "symmetric S4", IsoType::s4(), Scope::Inside, Quantity::Count, s4_inside ? N / 24 : 0);
  add(out, "symmetric S4", IsoType::s4(), Scope::Outside, Quantity::Count, s4_inside ? 0 : N / 24);

  if (q % 10 == 1 || q % 10 == 9) {
    add(out, "alternating A5", IsoType::a5(), Scope::All, Quantity::Count, N / 60);
    add(out, "alternating A5", IsoType::a5(), Scope::All, Quantity::Classes, 1);
    add(out, "alternating A5", IsoType::a5(), Scope::Inside, Quantity::Count, N / 60);
  } else if (f.p != 5) {
    add(out, "alternating A5", IsoType::a5(), Scope::All, Quantity::Count, 0);
  }

  for (std::uint32_t m = 1; m <= f.r; ++m) {
    if (f.r % m) continue;
    const std::uint64_t sub = ipow(f.p, m);
    const auto type = IsoType::psl(static_cast<std::uint32_t>(sub));
    const std::uint64_t count = N / (sub * (sub * sub - 1));
    add(out, "subfield L2", type, Scope::All, Quantity::Count, count);
    add(out, "subfield L2", type, Scope::All, Quantity::Classes, 1);
    add(out, "subfield L2", type, Scope::Inside, Quantity::Count, count);
  }

  add(out, "no D4p", IsoType::dihedral(4 * std::uint64_t{f.p}), Scope::All, Quantity::Count, 0);
  return out;
}

/// Family name for a canonical type the description lists without a count,
/// or empty if it is not listed at all. `flag` reports a Frobenius complement
/// that only fits the swapped divisor reading.
std::string listed_family(const IsoType& t, std::uint32_t q, GroupKind kind, const PrimePower& f, bool& flag) {
  using K = IsoType::Kind;
  flag = false;
  const std::uint64_t Q = q;
  const bool pgl = kind == GroupKind::PGL;
  const std::uint64_t g = (pgl || f.p == 2) ? 1 : 2;
  const auto power_of_p = [&](std::uint64_t n, std::uint32_t& e) {
    e = 0;
    while (n > 1 && n % f.p == 0) {
      n /= f.p;
      ++e;
    }
    return n == 1 && e >= 1;
  };
  std::uint32_t e = 0;

  switch (t.kind) {
    case K::Trivial: return "trivial";
    case K::Cyclic:
      if (t.order == f.p) return "elementary abelian";
      if (divides(t.order, (Q + 1) / g) || divides(t.order, (Q - 1) / g)) return "cyclic";
      return {};
    case K::Dihedral: {
      const std::uint64_t n = t.order / 2;
      if (n == 2 && f.p > 2) return "Klein four";
      if (n == f.p) {
        if (!pgl) flag = !divides(2, psl_complement_bound_literal(f, 1));
        return "semidirect E:Z";
      }
      if (pgl) return (divides(n, Q + 1) || divides(n, Q - 1)) ? "dihedral" : std::string{};
      return (divides(n, (Q + 1) / g) || divides(n, (Q - 1) / g)) ? "dihedral" : std::string{};
    }
    case K::ElementaryAbelian:
      return (t.p == f.p && t.s <= f.r) ? "elementary abelian" : std::string{};
    case K::Frobenius:
      if (t.p != f.p || t.s > f.r) return {};
      if (pgl) return (divides(t.h, Q - 1) && divides(t.h, ipow(f.p, t.s) - 1)) ? "semidirect E:Z" : std::string{};
      if (divides(t.h, psl_complement_bound(f, t.s))) {
        flag = !divides(t.h, psl_complement_bound_literal(f, t.s));
        return "semidirect E:Z";
      }
      return {};
    case K::A4: return "alternating A4";
    case K::S4: return "symmetric S4";
    case K::A5: return "alternating A5";
    case K::PSL:
      return (power_of_p(t.field, e) && f.r % e == 0) ? "subfield L2" : std::string{};
    case K::PGL:
      if (!power_of_p(t.field, e)) return {};
      if (pgl) return f.r % e == 0 ? "subfield PGL2" : std::string{};
      return f.r % (2 * e) == 0 ? "subfield PGL2" : std::string{};
    case K::Other: return {};
  }
  return {};
}

}  // namespace

std::vector<Prediction> predicted_counts(std::uint32_t q, GroupKind kind) {
  const PrimePower f = factor_prime_power(q);
  if (kind == GroupKind::PSL) return psl_predictions(q, f);
  if (kind == GroupKind::PGL) {
    if (f.p == 2) throw std::invalid_argument("PGL2 census needs odd q");
    return pgl_predictions(q, f);
  }
  throw std::invalid_argument("census covers psl and pgl only");
}

ObservedCensus::ObservedCensus(const FiniteGroup& g, std::optional<SubgroupSet> psl, std::size_t cap)
    : lattice_(all_subgroups(g, cap)) {
  types_.reserve(lattice_.subgroups.size());
  inside_.reserve(lattice_.subgroups.size());
  for (const auto& h : lattice_.subgroups) {
    types_.push_back(classify_subgroup(g, h).canonical());
    inside_.push_back(psl ? h.is_subset_of(*psl) : true);
  }
}

std::uint64_t ObservedCensus::value(const IsoType& type, Scope scope, Quantity quantity) const {
  std::uint64_t count = 0;
  std::set<std::size_t> classes;
  for (std::size_t i = 0; i < types_.size(); ++i) {
    if (!(types_[i] == type)) continue;
    if (scope == Scope::Inside && !inside_[i]) continue;
    if (scope == Scope::Outside && inside_[i]) continue;
    ++count;
    classes.insert(lattice_.class_of[i]);
  }
  switch (quantity) {
    case Quantity::Count: return count;
    case Quantity::Classes: return classes.size();
    case Quantity::Present: return count ? 1 : 0;
  }
  return 0;
}

CensusReport run_census(std::uint32_t q, GroupKind kind, std::size_t cap, std::size_t closure_cap) {
  const auto predictions = predicted_counts(q, kind);
  const PrimePower f = factor_prime_power(q);

  const ProjLine line(gf::make_field_of_order(q));
  const auto gens = build_group(line, kind);
  if (gens.expected_order > cap)
    throw CapExceeded("census refused: group order " + std::to_string(gens.expected_order) +
                      " exceeds census cap " + std::to_string(cap));
  FiniteGroup g = FiniteGroup::close(gens.generators, closure_cap);
  if (g.order() <= kMaxCayleyTableOrder) g.enable_cayley_table();

  std::optional<SubgroupSet> psl;
  if (kind == GroupKind::PGL) psl = psl_subgroup(g, line);
  const ObservedCensus observed(g, psl, cap);

  CensusReport report;
  report.q = q;
  report.kind = kind;
  report.group_order = g.order();
  report.total_subgroups = observed.lattice().subgroups.size();
  report.total_classes = observed.lattice().class_rep.size();

  for (const IsoType& t : observed.types()) {
    auto it = std::find_if(report.tally.begin(), report.tally.end(), [&](const auto& e) { return e.first == t; });
    if (it == report.tally.end())
      report.tally.emplace_back(t, 1);
    else
      ++it->second;
  }

  std::vector<IsoType> counted;
  for (const auto& pr : predictions) {
    CensusRow row;
    row.family = pr.family;
    row.type = pr.type;
    row.scope = pr.scope;
    row.quantity = pr.quantity;
    row.predicted = pr.value;
    row.observed = observed.value(pr.type, pr.scope, pr.quantity);
    row.note = pr.note;
    report.rows.push_back(std::move(row));
    if (pr.quantity == Quantity::Count) counted.push_back(pr.type);
  }

  CensusRow unlisted;
  unlisted.family = "unlisted";
  unlisted.type = IsoType::other(0);
  unlisted.predicted = 0;
  for (const auto& [type, n] : report.tally) {
    bool flag = false;
    const std::string family = listed_family(type, q, kind, f, flag);
    if (family.empty()) {
      unlisted.observed += n;
      unlisted.note += (unlisted.note.empty() ? "" : " ") + type.to_string();
      continue;
    }
    if (std::find(counted.begin(), counted.end(), type) != counted.end()) continue;
    CensusRow row;
    row.family = family;
    row.type = type;
    row.observed = n;
    row.flagged = flag;
    if (flag) row.note = "complement order violates the literal divisor rule";
    report.rows.push_back(std::move(row));
  }
  report.rows.push_back(std::move(unlisted));
  return report;
}

CentralizerCheck verify_centralizer_orders(const FiniteGroup& g, std::uint32_t q) {
  if (q % 2 == 0) throw std::domain_error("centralizer check needs odd q");
  CentralizerCheck out;
  for (const auto& cls : involution_classes(g)) out.orders.push_back(centralizer(g, cls.representative).order());
  std::sort(out.orders.begin(), out.orders.end(), std::greater<>());
  out.orders.erase(std::unique(out.orders.begin(), out.orders.end()), out.orders.end());
  const std::vector<std::uint64_t> expected{2 * (std::uint64_t{q} + 1), 2 * (std::uint64_t{q} - 1)};
  out.ok = out.orders == expected;
  return out;
}

std::pair<bool, std::size_t> verify_involution_generation(const FiniteGroup& g) {
  ClosureWorkspace ws(g);
  ws.close(g.involutions(), false);
  const std::size_t order = ws.to_subgroup().order();
  return {order == g.order(), order};
}

bool verify_unique_psl(const FiniteGroup& g, std::uint32_t q, std::size_t cap) {
  return verify_unique_psl(g, all_subgroups(g, cap), q);
}

bool verify_unique_psl(const FiniteGroup& g, const SubgroupLattice& lattice, std::uint32_t q) {
  const std::uint64_t Q = q;
  const std::uint64_t target_order = Q * (Q * Q - 1) / (q % 2 ? 2 : 1);
  const IsoType target = IsoType::psl(q).canonical();
  std::size_t found = 0;
  for (const auto& h : lattice.subgroups)
    if (h.order() == target_order && classify_subgroup(g, h).canonical() == target) ++found;
  return found == 1;
}

}  // namespace pglatlas
