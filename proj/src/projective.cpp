#include "pglatlas/projective.hpp"

#include <stdexcept>

namespace pglatlas {

std::string to_string(GroupKind kind) {
  switch (kind) {
    case GroupKind::PSL: return "psl";
    case GroupKind::PGL: return "pgl";
    case GroupKind::PSigmaL: return "psigmal";
    case GroupKind::PSLc: return "pslc";
    case GroupKind::PGammaL: return "pgammal";
  }
  return "?";
}

GroupKind parse_group_kind(const std::string& name) {
  if (name == "psl") return GroupKind::PSL;
  if (name == "pgl") return GroupKind::PGL;
  if (name == "psigmal") return GroupKind::PSigmaL;
  if (name == "pslc") return GroupKind::PSLc;
  if (name == "pgammal") return GroupKind::PGammaL;
  throw std::invalid_argument("unknown group kind '" + name + "'");
}

int epsilon(std::uint32_t q) {
  if (q % 2 == 0) throw std::domain_error("epsilon is defined for odd q only");
  return q % 4 == 1 ? 1 : -1;
}

Perm mobius_perm(const ProjLine& line, const gf::FieldElement& a, const gf::FieldElement& b,
                 const gf::FieldElement& c, const gf::FieldElement& d) {
  const auto& f = line.field();
  if (gf::is_zero(gf::sub(f, gf::mul(f, a, d), gf::mul(f, b, c))))
    throw std::invalid_argument("singular matrix");
  std::vector<Point> img(line.size());
  img[ProjLine::kInfinity] =
      gf::is_zero(c) ? ProjLine::kInfinity : line.point_of(gf::mul(f, a, gf::inv(f, c)));
  for (Point pt = 1; pt < line.size(); ++pt) {
    const gf::FieldElement x = line.element_at(pt);
    const gf::FieldElement den = gf::add(f, gf::mul(f, c, x), d);
    if (gf::is_zero(den)) {
      img[pt] = ProjLine::kInfinity;
      continue;
    }
    const gf::FieldElement num = gf::add(f, gf::mul(f, a, x), b);
    img[pt] = line.point_of(gf::mul(f, num, gf::inv(f, den)));
  }
  return Perm(std::move(img));
}

Perm semilinear_perm(const ProjLine& line, unsigned k) {
  const auto& f = line.field();
  if (k >= f.r) throw std::out_of_range("Frobenius exponent out of range");
  std::vector<Point> img(line.size());
  img[ProjLine::kInfinity] = ProjLine::kInfinity;
  for (Point pt = 1; pt < line.size(); ++pt) img[pt] = line.point_of(gf::frobenius(f, line.element_at(pt), k));
  return Perm(std::move(img));
}

namespace {

std::vector<Perm> psl_generators(const ProjLine& line) {
  const auto& f = line.field();
  const auto w = gf::primitive_element(f);
  const auto o = gf::one();
  const auto z = gf::zero();
  return {mobius_perm(line, gf::mul(f, w, w), z, z, o), mobius_perm(line, o, o, z, o),
          mobius_perm(line, z, gf::neg(f, o), o, z)};
}

std::vector<Perm> pgl_generators(const ProjLine& line) {
  const auto& f = line.field();
  const auto w = gf::primitive_element(f);
  const auto o = gf::one();
  const auto z = gf::zero();
  return {mobius_perm(line, w, z, z, o), mobius_perm(line, o, o, z, o), mobius_perm(line, z, o, o, z)};
}

}  // namespace

GroupGenerators build_group(const ProjLine& line, GroupKind kind) {
  const auto& f = line.field();
  const std::uint64_t q = f.q;
  const std::uint64_t pgl_order = q * (q * q - 1);
  const std::uint64_t psl_order = f.p == 2 ? pgl_order : pgl_order / 2;

  GroupGenerators out{kind, {}, 0};
  switch (kind) {
    case GroupKind::PSL:
      out.generators = psl_generators(line);
      out.expected_order = psl_order;
      break;
    case GroupKind::PGL:
      out.generators = pgl_generators(line);
      out.expected_order = pgl_order;
      break;
    case GroupKind::PSigmaL:
      if (f.r % 2) throw std::invalid_argument("PSigmaL2(q) needs q to be a square");
      out.generators = psl_generators(line);
      out.generators.push_back(semilinear_perm(line, f.r / 2));
      out.expected_order = 2 * psl_order;
      break;
    case GroupKind::PSLc: {
      if (f.r % 2) throw std::invalid_argument("L2(q)<c> needs q to be a square");
      if (f.p == 2) throw std::invalid_argument("L2(q)<c> needs odd characteristic");
      out.generators = psl_generators(line);
      const auto nu = gf::least_nonsquare(f);
      out.generators.push_back(mobius_perm(line, nu, gf::zero(), gf::zero(), gf::one()) *
                               semilinear_perm(line, f.r / 2));
      out.expected_order = 2 * psl_order;
      break;
    }
    case GroupKind::PGammaL:
      out.generators = pgl_generators(line);
      if (f.r > 1) out.generators.push_back(semilinear_perm(line, 1));
      out.expected_order = f.r * pgl_order;
      break;
  }
  return out;
}

FiniteGroup make_group(std::uint32_t q, GroupKind kind, std::size_t cap) {
  const ProjLine line(gf::make_field_of_order(q));
  const auto gens = build_group(line, kind);
  return FiniteGroup::close(gens.generators, cap);
}

FiniteGroup make_dedup_group(std::uint32_t q, std::size_t cap) {
  return make_group(q, GroupKind::PGammaL, cap);
}

bool verify_sharp_3_transitivity(const FiniteGroup& g, const ProjLine& line) {
  const std::size_t n = line.size();
  if (g.degree() != n) return false;
  std::vector<std::uint8_t> hits(n * n * n, 0);
  for (std::size_t id = 0; id < g.order(); ++id) {
    // The triple sent to (inf, 0, 1) is the preimage of those points.
    const ElementId inv = g.inverse(static_cast<ElementId>(id));
    const std::size_t a = g.image(inv, 0), b = g.image(inv, 1), c = g.image(inv, 2);
    std::uint8_t& h = hits[(a * n + b) * n + c];
    if (h) return false;
    h = 1;
  }
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b)
      for (std::size_t c = 0; c < n; ++c)
        if (a != b && b != c && a != c && !hits[(a * n + b) * n + c]) return false;
  return true;
}

SubgroupSet psl_subgroup(const FiniteGroup& g, const ProjLine& line) {
  std::vector<ElementId> ids;
  for (const Perm& p : psl_generators(line)) {
    auto id = g.find(p);
    if (!id) throw std::invalid_argument("group does not contain L2(q)");
    ids.push_back(*id);
  }
  ClosureWorkspace ws(g);
  ws.close(ids, false);
  return ws.to_subgroup();
}

}  // namespace pglatlas
