#pragma once

// Command-line front end. Kept in the library so tests can drive it in-process.

#include <iosfwd>
#include <string>
#include <vector>

#include "pglatlas/census.hpp"
#include "pglatlas/search.hpp"

namespace pglatlas {

inline constexpr const char* kVersion = "0.1.0";

enum ExitCode : int { kExitOk = 0, kExitFail = 1, kExitUsage = 2, kExitCap = 3 };

/// Largest q verify-theorem accepts unless --qmax-bound raises it.
inline constexpr unsigned kDefaultTheoremBound = 13;

/// CSV columns of an enumeration report, in order.
inline const std::vector<std::string> kEnumerateColumns{"group",      "q",          "rank",      "schlafli",
                                                        "self_dual",  "orbit_size", "degenerate", "generators"};
/// CSV columns of a census report, in order.
inline const std::vector<std::string> kCensusColumns{"group",     "q",        "family", "subgroup", "scope",
                                                     "quantity",  "predicted", "observed", "match", "note"};

/// Generator tuples become point-image lists: the images of points 0..q in
/// order, space separated, one list per generator joined by '|'.
std::string format_generators(const FiniteGroup& g, const std::vector<ElementId>& tuple);

void write_enumeration_csv(std::ostream& out, const std::string& group, unsigned q, unsigned rank,
                           const FiniteGroup& g, const std::vector<PolytopeRecord>& records, bool header = true);
void write_census_csv(std::ostream& out, const CensusReport& report, bool header = true);

/// Parses argv and runs one subcommand. Returns an ExitCode value.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace pglatlas
