#pragma once

#include "rtasm/builder.hpp"
#include "rtasm/checker.hpp"

#include <cstdint>
#include <iosfwd>
#include <random>
#include <string>
#include <string_view>
#include <vector>

namespace rtasm::crossing {

struct Scenario {
    Params params;
    Rational horizon;
    TrainPattern pattern;
    DelayPolicy delays;
};

/// Parses and validates. Throws Error(ParseError) with the JSON path or byte position, or
/// Error(ValidationError) naming the violated condition.
Scenario load_scenario(std::string_view text);
/// Canonical form (sorted keys, rationals in lowest terms).
std::string dump_scenario(const Scenario& scenario);

/// Builds the run; input problems surface as Error(ValidationError).
Run build_scenario(const Scenario& scenario);

/// Deterministic trace: params, tracks, horizon, gate marks, significant moments with
/// the dynamic locations at t and t+, and the verdicts if given.
std::string emit_trace(const Run& run, const std::vector<Verdict>* verdicts = nullptr);

/// Rebuilds the run described by a trace. Throws Error(ParseError).
Run parse_trace(std::string_view text);

/// Random valid scenario on a quarter-unit grid; trains stop early enough for `horizon`.
Scenario random_scenario(std::mt19937_64& rng, std::size_t max_tracks, const Rational& horizon);

/// `count` scenarios drawn from one generator seeded with `seed`.
std::vector<Scenario> fuzz_corpus(std::uint64_t seed, std::size_t count, std::size_t max_tracks,
                                  const Rational& horizon);

/// Command-line entry point: simulate, check, fuzz, tightness, verify-trace.
/// Returns 0 when everything passes, 1 on a property violation, 2 on an input error.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

} // namespace rtasm::crossing
