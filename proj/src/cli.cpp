#include "pglatlas/cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "pglatlas/errors.hpp"
#include "pglatlas/gf.hpp"
#include "pglatlas/projective.hpp"

namespace pglatlas {

using nlohmann::json;

namespace {

struct RunConfig {
  std::string group = "pgl";
  unsigned q = 0;
  std::string rank = "4";
  std::string dedup = "iso-dual";
  std::string conjugation = "aut";
  unsigned workers = 0;
  std::string out;
  std::string format = "csv";
  std::size_t closure_cap = kDefaultClosureCap;
  std::size_t census_cap = kDefaultCensusCap;
  std::uint64_t seed_partition = 0;
  unsigned qmax = kDefaultTheoremBound;
  unsigned qmax_bound = kDefaultTheoremBound;
};

class UsageError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

std::pair<unsigned, unsigned> parse_rank_range(const std::string& text) {
  unsigned lo = 0, hi = 0;
  try {
    const auto dash = text.find('-');
    std::size_t used = 0;
    if (dash == std::string::npos) {
      lo = hi = static_cast<unsigned>(std::stoul(text, &used));
      if (used != text.size()) throw std::invalid_argument(text);
    } else {
      lo = static_cast<unsigned>(std::stoul(text.substr(0, dash)));
      hi = static_cast<unsigned>(std::stoul(text.substr(dash + 1), &used));
      if (dash + 1 + used != text.size()) throw std::invalid_argument(text);
    }
  } catch (const std::logic_error&) {
    throw UsageError("--rank expects N or LO-HI, got '" + text + "'");
  }
  if (lo < kMinRank || hi > kMaxRank || lo > hi)
    throw UsageError("--rank must lie in [" + std::to_string(kMinRank) + ", " + std::to_string(kMaxRank) + "]");
  return {lo, hi};
}

bool is_prime_power(unsigned n) {
  unsigned p = 2;
  while (n % p) ++p;
  while (n % p == 0) n /= p;
  return n == 1;
}

unsigned resolved_workers(unsigned requested) {
  if (requested) return requested;
  return std::max(1u, std::thread::hardware_concurrency());
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

std::string join(const std::vector<std::string>& items, const std::string& sep) {
  std::string out;
  for (std::size_t i = 0; i < items.size(); ++i) out += (i ? sep : "") + items[i];
  return out;
}

json config_json(const std::string& command, const RunConfig& c) {
  return {{"command", command},     {"group", c.group},         {"q", c.q},
          {"rank", c.rank},         {"dedup", c.dedup},         {"conjugation", c.conjugation}, {"format", c.format},
          {"closure_cap", c.closure_cap}, {"census_cap", c.census_cap}, {"seed_partition", c.seed_partition}};
}

json versions_json() {
  return {{"pglatlas", kVersion}, {"nlohmann_json", std::to_string(NLOHMANN_JSON_VERSION_MAJOR) + "." +
                                                        std::to_string(NLOHMANN_JSON_VERSION_MINOR) + "." +
                                                        std::to_string(NLOHMANN_JSON_VERSION_PATCH)}};
}

json record_json(const FiniteGroup& g, const PolytopeRecord& r) {
  json gens = json::array();
  for (ElementId id : r.tuple) gens.push_back(g.element(id).images());
  return {{"schlafli", r.schlafli.entries}, {"self_dual", r.self_dual}, {"orbit_size", r.orbit_size},
          {"degenerate", r.degenerate},     {"generators", gens}};
}

/// Writes to --out if given, else to `fallback`.
void emit(const std::string& path, std::ostream& fallback, const std::function<void(std::ostream&)>& body) {
  if (path.empty()) {
    body(fallback);
    return;
  }
  std::ofstream file(path, std::ios::binary);
  if (!file) throw std::runtime_error("cannot open '" + path + "' for writing");
  body(file);
}

void write_sidecar(const std::string& path, const json& doc) {
  if (path.empty()) return;
  std::ofstream file(path + ".json", std::ios::binary);
  if (!file) throw std::runtime_error("cannot open '" + path + ".json' for writing");
  file << doc.dump(2) << '\n';
}

void check_format(const RunConfig& c) {
  if (c.format != "csv" && c.format != "json") throw UsageError("--format must be csv or json");
  if (c.dedup != "iso" && c.dedup != "iso-dual") throw UsageError("--dedup must be iso or iso-dual");
  if (c.conjugation != "aut" && c.conjugation != "inner") throw UsageError("--conjugation must be aut or inner");
}

// ---------------------------------------------------------------------------

int cmd_enumerate(const RunConfig& c, std::ostream& out, std::ostream& err) {
  check_format(c);
  const GroupKind kind = parse_group_kind(c.group);
  if (c.q == 0) throw UsageError("--q is required");
  const auto [lo, hi] = parse_rank_range(c.rank);
  const ProjLine line(gf::make_field_of_order(c.q));
  const auto gens = build_group(line, kind);
  const FiniteGroup g = FiniteGroup::close(gens.generators, c.closure_cap);
  // Inner conjugation identifies fewer tuples than conjugation by all of PGammaL2(q).
  const FiniteGroup dedup = c.conjugation == "inner" ? g : make_dedup_group(c.q, c.closure_cap);

  SearchOptions options;
  options.workers = resolved_workers(c.workers);
  options.seed_partition = c.seed_partition;

  std::vector<std::pair<unsigned, EnumerationResult>> results;
  for (unsigned rank = lo; rank <= hi; ++rank) results.emplace_back(rank, enumerate_polytopes(g, rank, dedup, options));

  const bool iso_dual = c.dedup == "iso-dual";
  json summary = json::array();
  for (const auto& [rank, r] : results)
    summary.push_back({{"rank", rank}, {"iso", r.iso.size()}, {"iso_dual", r.iso_dual.size()}});

  emit(c.out, out, [&](std::ostream& os) {
    if (c.format == "csv") {
      bool header = true;
      for (const auto& [rank, r] : results) {
        write_enumeration_csv(os, c.group, c.q, rank, g, iso_dual ? r.iso_dual : r.iso, header);
        header = false;
      }
      return;
    }
    json doc{{"config", config_json("enumerate", c)}, {"versions", versions_json()}, {"summary", summary}};
    json records = json::array();
    for (const auto& [rank, r] : results)
      for (const auto& rec : iso_dual ? r.iso_dual : r.iso) {
        json j = record_json(g, rec);
        j["rank"] = rank;
        records.push_back(std::move(j));
      }
    doc["records"] = std::move(records);
    os << doc.dump(2) << '\n';
  });
  if (c.format == "csv")
    write_sidecar(c.out, {{"config", config_json("enumerate", c)}, {"versions", versions_json()}, {"summary", summary}});

  std::ostream& info = c.out.empty() ? err : out;
  for (const auto& [rank, r] : results)
    info << to_string(kind) << " q=" << c.q << " rank=" << rank << ": " << r.iso.size()
         << " up to isomorphism, " << r.iso_dual.size() << " up to isomorphism and duality\n";
  return kExitOk;
}

int cmd_verify_theorem(const RunConfig& c, std::ostream& out, std::ostream&) {
  if (c.qmax > c.qmax_bound)
    throw UsageError("--qmax " + std::to_string(c.qmax) + " exceeds the feasibility bound " +
                     std::to_string(c.qmax_bound) + " (raise it with --qmax-bound)");
  SearchOptions options;
  options.workers = resolved_workers(c.workers);
  options.seed_partition = c.seed_partition;

  bool pass = true;
  std::ostringstream csv;
  bool header = true;
  for (unsigned q = 3; q <= c.qmax; q += 2) {
    if (!is_prime_power(q)) continue;
    const FiniteGroup g = make_group(q, GroupKind::PGL, c.closure_cap);
    const FiniteGroup dedup = make_dedup_group(q, c.closure_cap);
    for (unsigned rank : {4u, 5u}) {
      const auto r = enumerate_polytopes(g, rank, dedup, options);
      bool ok = r.iso.empty();
      if (q == 5 && rank == 4)
        ok = r.iso.size() == 1 && r.iso.front().schlafli.to_string() == "{3,3,3}";
      std::vector<std::string> types;
      for (const auto& rec : r.iso) types.push_back(rec.schlafli.to_string());
      out << (ok ? "PASS" : "FAIL") << " PGL2(" << q << ") rank " << rank << ": " << r.iso.size() << " polytope(s)"
          << (types.empty() ? "" : " " + join(types, " ")) << '\n';
      pass = pass && ok;
      write_enumeration_csv(csv, "pgl", q, rank, g, r.iso, header);
      header = false;
    }
  }
  if (!c.out.empty()) emit(c.out, out, [&](std::ostream& os) { os << csv.str(); });
  out << (pass ? "PASS" : "FAIL") << " theorem check up to q=" << c.qmax << '\n';
  return pass ? kExitOk : kExitFail;
}

int cmd_census(const RunConfig& c, std::ostream& out, std::ostream&) {
  check_format(c);
  std::vector<GroupKind> kinds;
  if (c.group == "all")
    kinds = {GroupKind::PSL, GroupKind::PGL};
  else
    kinds = {parse_group_kind(c.group)};
  std::vector<unsigned> qs;
  if (c.q)
    qs = {c.q};
  else
    qs = {3, 5, 7, 9};

  bool pass = true;
  std::vector<CensusReport> reports;
  std::vector<std::string> lines;
  for (GroupKind kind : kinds) {
    for (unsigned q : qs) {
      auto report = run_census(q, kind, c.census_cap, c.closure_cap);
      bool ok = report.all_match() && report.tally_total() == report.total_subgroups;
      std::string extra;
      if (kind == GroupKind::PGL) {
        FiniteGroup g = make_group(q, GroupKind::PGL, c.closure_cap);
        g.enable_cayley_table();
        const auto cent = verify_centralizer_orders(g, q);
        const bool unique = verify_unique_psl(g, q, c.census_cap);
        ok = ok && cent.ok && unique;
        std::vector<std::string> orders;
        for (auto o : cent.orders) orders.push_back(std::to_string(o));
        extra = ", involution centralizers " + join(orders, "/") + (cent.ok ? "" : " (unexpected)") +
                ", unique L2(q) " + (unique ? "yes" : "no");
      }
      std::ostringstream line;
      line << (ok ? "PASS" : "FAIL") << ' ' << to_string(kind) << " q=" << q << ": " << report.total_subgroups
           << " subgroups in " << report.total_classes << " classes, " << report.formula_rows() << " formula rows, "
           << report.mismatches() << " mismatches" << extra;
      lines.push_back(line.str());
      pass = pass && ok;
      reports.push_back(std::move(report));
    }
  }

  emit(c.out, out, [&](std::ostream& os) {
      if (c.format == "csv") {
        bool header = true;
        for (const auto& r : reports) {
          write_census_csv(os, r, header);
          header = false;
        }
        return;
      }
      json doc{{"config", config_json("census", c)}, {"versions", versions_json()}};
      json arr = json::array();
      for (const auto& r : reports) {
        json rows = json::array();
        for (const auto& row : r.rows)
          rows.push_back({{"family", row.family},
                          {"subgroup", row.family == "unlisted" ? "-" : row.type.to_string()},
                          {"scope", to_string(row.scope)},
                          {"quantity", to_string(row.quantity)},
                          {"predicted", row.predicted ? json(*row.predicted) : json(nullptr)},
                          {"observed", row.observed},
                          {"match", row.matches()},
                          {"flagged", row.flagged},
                          {"note", row.note}});
        arr.push_back({{"group", to_string(r.kind)},
                       {"q", r.q},
                       {"order", r.group_order},
                       {"subgroups", r.total_subgroups},
                       {"classes", r.total_classes},
                       {"rows", rows}});
      }
      doc["reports"] = arr;
      os << doc.dump(2) << '\n';
    });
  if (c.format == "csv") write_sidecar(c.out, {{"config", config_json("census", c)}, {"versions", versions_json()}});
  for (const auto& l : lines) out << l << '\n';
  return pass ? kExitOk : kExitFail;
}

int cmd_special_checks(const RunConfig& c, std::ostream& out, std::ostream&) {
  SearchOptions options;
  options.workers = resolved_workers(c.workers);
  options.seed_partition = c.seed_partition;
  bool pass = true;
  auto report = [&](bool ok, const std::string& what) {
    out << (ok ? "PASS " : "FAIL ") << what << '\n';
    pass = pass && ok;
  };
  auto count = [&](unsigned q, GroupKind kind, unsigned rank, std::vector<std::string>* types = nullptr) {
    const FiniteGroup g = make_group(q, kind, c.closure_cap);
    const FiniteGroup dedup = make_dedup_group(q, c.closure_cap);
    const auto r = enumerate_polytopes(g, rank, dedup, options);
    if (types)
      for (const auto& rec : r.iso) types->push_back(rec.schlafli.to_string());
    return r.iso.size();
  };

  {
    const FiniteGroup m10 = make_group(9, GroupKind::PSLc, c.closure_cap);
    const auto [generated, order] = verify_involution_generation(m10);
    report(!generated && order == 360, "M10 = L2(9)<c> is not generated by involutions (involutions generate order " +
                                           std::to_string(order) + ")");
  }
  for (unsigned rank : {3u, 4u}) {
    const auto n = count(25, GroupKind::PSLc, rank);
    report(n == 0, "L2(25)<c> has no rank " + std::to_string(rank) + " polytope (" + std::to_string(n) + " found)");
  }
  for (unsigned rank : {4u, 5u}) {
    const auto n = count(9, GroupKind::PSigmaL, rank);
    report(n > 0, "PSigmaL2(9) has rank " + std::to_string(rank) + " polytopes (" + std::to_string(n) + " found)");
  }
  for (unsigned q : {7u, 9u}) {
    const auto n = count(q, GroupKind::PSL, 3);
    report(n == 0, "L2(" + std::to_string(q) + ") has no polyhedron (" + std::to_string(n) + " found)");
  }
  for (unsigned q : {3u, 4u, 5u, 7u, 8u, 9u}) {
    const auto n = count(q, GroupKind::PGL, 3);
    report(n > 0, "PGL2(" + std::to_string(q) + ") has polyhedra (" + std::to_string(n) + " found)");
  }
  {
    std::vector<std::string> types;
    count(11, GroupKind::PSL, 4, &types);
    const bool found = std::find(types.begin(), types.end(), "{3,5,3}") != types.end();
    report(found, "L2(11) rank 4 includes type {3,5,3} (" + join(types, " ") + ")");
  }
  out << (pass ? "PASS" : "FAIL") << " special checks\n";
  return pass ? kExitOk : kExitFail;
}

int cmd_field_info(const RunConfig& c, std::ostream& out, std::ostream&) {
  if (c.q == 0) throw UsageError("--q is required");
  const auto f = gf::make_field_of_order(c.q);
  out << "q = " << f.q << " = " << f.p << '^' << f.r << '\n';
  out << "modulus: " << gf::modulus_string(f) << '\n';
  out << "primitive element: " << gf::to_string(f, gf::primitive_element(f)) << '\n';
  if (f.p > 2) {
    out << "least non-square: " << gf::to_string(f, gf::least_nonsquare(f)) << '\n';
    out << "epsilon: " << epsilon(f.q) << '\n';
  }
  const std::uint64_t q = f.q;
  const std::uint64_t pgl = q * (q * q - 1);
  out << "|L2(q)| = " << (f.p == 2 ? pgl : pgl / 2) << ", |PGL2(q)| = " << pgl << ", |PGammaL2(q)| = " << pgl * f.r
      << '\n';
  return kExitOk;
}

}  // namespace

std::string format_generators(const FiniteGroup& g, const std::vector<ElementId>& tuple) {
  std::vector<std::string> lists;
  for (ElementId id : tuple) lists.push_back(g.element(id).to_string());
  return join(lists, "|");
}

void write_enumeration_csv(std::ostream& out, const std::string& group, unsigned q, unsigned rank,
                           const FiniteGroup& g, const std::vector<PolytopeRecord>& records, bool header) {
  if (header) out << join(kEnumerateColumns, ",") << '\n';
  for (const auto& r : records) {
    out << group << ',' << q << ',' << rank << ',' << csv_field(r.schlafli.to_string()) << ','
        << (r.self_dual ? "true" : "false") << ',' << r.orbit_size << ',' << (r.degenerate ? "true" : "false") << ','
        << csv_field(format_generators(g, r.tuple)) << '\n';
  }
}

void write_census_csv(std::ostream& out, const CensusReport& report, bool header) {
  if (header) out << join(kCensusColumns, ",") << '\n';
  for (const auto& row : report.rows) {
    out << to_string(report.kind) << ',' << report.q << ',' << csv_field(row.family) << ','
        << csv_field(row.family == "unlisted" ? "-" : row.type.to_string()) << ',' << to_string(row.scope) << ','
        << to_string(row.quantity) << ',' << (row.predicted ? std::to_string(*row.predicted) : "no formula") << ','
        << row.observed << ',' << (row.predicted ? (row.matches() ? "yes" : "no") : "-") << ','
        << csv_field(row.note) << '\n';
  }
}

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Regular polytopes with two-dimensional projective groups"};
  app.require_subcommand(1);
  RunConfig c;

  auto add_caps = [&](CLI::App* sub) {
    sub->add_option("--closure-cap", c.closure_cap, "largest group order built")->capture_default_str();
  };
  auto add_workers = [&](CLI::App* sub) {
    sub->add_option("--workers", c.workers, "search threads, 0 = hardware concurrency")->capture_default_str();
    sub->add_option("--seed-partition", c.seed_partition, "reshuffles work between threads")->capture_default_str();
  };

  auto* enumerate = app.add_subcommand("enumerate", "all polytopes of a group");
  enumerate->add_option("--group", c.group, "psl | pgl | psigmal | pslc | pgammal")
      ->check(CLI::IsMember({"psl", "pgl", "psigmal", "pslc", "pgammal"}))
      ->capture_default_str();
  enumerate->add_option("--q", c.q, "field order")->required();
  enumerate->add_option("--rank", c.rank, "rank N or range LO-HI")->capture_default_str();
  enumerate->add_option("--dedup", c.dedup, "iso | iso-dual")->capture_default_str();
  enumerate->add_option("--conjugation", c.conjugation, "aut (PGammaL2(q)) | inner")->capture_default_str();
  enumerate->add_option("--out", c.out, "report path (default stdout)");
  enumerate->add_option("--format", c.format, "csv | json")->capture_default_str();
  add_caps(enumerate);
  add_workers(enumerate);

  auto* census = app.add_subcommand("census", "closed-form subgroup counts against brute force");
  census->add_option("--group", c.group, "psl | pgl | all")->check(CLI::IsMember({"psl", "pgl", "all"}));
  census->add_option("--q", c.q, "field order (default 3, 5, 7, 9)");
  census->add_option("--out", c.out, "report path (default stdout)");
  census->add_option("--format", c.format, "csv | json")->capture_default_str();
  census->add_option("--census-cap", c.census_cap, "largest group order censused")->capture_default_str();
  add_caps(census);

  auto* theorem = app.add_subcommand("verify-theorem", "no rank 4 or 5 polytopes for PGL2(q) beyond the 4-simplex");
  theorem->add_option("--qmax", c.qmax, "largest q checked")->capture_default_str();
  theorem->add_option("--qmax-bound", c.qmax_bound, "refuse --qmax above this")->capture_default_str();
  theorem->add_option("--out", c.out, "CSV of every polytope found");
  add_caps(theorem);
  add_workers(theorem);

  auto* special = app.add_subcommand("special-checks", "group-specific existence and non-existence checks");
  add_caps(special);
  add_workers(special);

  auto* info = app.add_subcommand("field-info", "field and group parameters for q");
  info->add_option("--q", c.q, "field order")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (census->parsed() && census->count("--group") == 0) c.group = "all";
    if (*enumerate) return cmd_enumerate(c, out, err);
    if (*census) return cmd_census(c, out, err);
    if (*theorem) return cmd_verify_theorem(c, out, err);
    if (*special) return cmd_special_checks(c, out, err);
    if (*info) return cmd_field_info(c, out, err);
  } catch (const CapExceeded& e) {
    err << "error: " << e.what() << '\n';
    return kExitCap;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitFail;
  }
  return kExitUsage;
}

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  std::vector<const char*> argv{"pglatlas"};
  for (const auto& a : args) argv.push_back(a.c_str());
  return run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
}

}  // namespace pglatlas
