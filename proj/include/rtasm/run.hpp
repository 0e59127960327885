#pragma once

#include "rtasm/rule.hpp"
#include "rtasm/trajectory.hpp"

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace rtasm {

/// A finite-horizon run: the program, the static part of the state, and one trajectory per
/// dynamic location. CT is implicit (it evaluates to t at every moment t).
struct Run {
    Program program;
    State statics;
    std::map<Location, Trajectory> trajectories;
    Rational horizon{0};
    /// Moments at which the gate construction scheduled OpenGate to fire at a Dir change.
    std::set<Rational> gate_marks;

    const Trajectory& trajectory(const Location& loc) const;
};

/// The value of a location in the run: CT is t itself, statics come from `statics`.
Value value_at(const Run& run, const Location& loc, const Rational& t, Side side);

/// R(t): statics, point values of every dynamic location, CT = t.
State state_at(const Run& run, const Rational& t);

/// The reduct r(t), r(t+) or r(t-) without CT.
State snapshot(const Run& run, const Rational& t, Side side);

/// Union of all trajectory breakpoints with 0 and the horizon, ascending.
std::vector<Rational> breakpoints(const Run& run);

enum class MomentKind { Initial, Internal, External, Both };
std::string_view to_string(MomentKind kind);

struct SignificantMoment {
    Rational time;
    MomentKind kind = MomentKind::Initial;
    std::vector<std::string> agents; // modules whose head locations change at t+
};

std::vector<SignificantMoment> significant_moments(const Run& run);

/// Modules whose head locations change between r(t) and r(t+).
std::vector<std::string> firing_agents(const Run& run, const Rational& t);

/// Moments at which `agent` fires.
std::vector<Rational> firing_moments(const Run& run, const std::string& agent);

struct RunViolation {
    char clause; // 'a'..'d' of the run conditions checked by validate_run
    Rational time;
    std::string message;
};

struct RunReport {
    std::vector<RunViolation> violations;
    bool ok() const { return violations.empty(); }
};

/// Checks that internal locations change only through module executions visible at t+,
/// external ones only at t, discreteness, and that CT is not stored.
RunReport validate_run(const Run& run);

struct TimingReport {
    bool immediate = true;
    bool bounded = true;
    /// Enabled-without-firing points or stretches (immediacy), and stretches of length
    /// >= bound (boundedness).
    std::vector<Interval> immediacy_witnesses;
    std::vector<Interval> bound_witnesses;
    /// Moments where an enabled agent is also enabled at t+ or t-.
    std::vector<Rational> neighbour_witnesses;
};

/// Enabledness of the agent is scanned exactly: candidate moments are all breakpoints plus
/// the CT-critical points of the agent's rule in every gap. Throws Error(UnknownAgent).
TimingReport agent_timing_report(const Run& run, const std::string& agent,
                                 const std::optional<Rational>& bound = std::nullopt);

/// Piecewise value of a term, guard, or rule enabledness over the whole run, computed on
/// the exact candidate partition.
Trajectory term_signal(const Run& run, const Term& term, const Environment& env = {});
Trajectory guard_signal(const Run& run, const Guard& guard, const Environment& env = {});
Trajectory enabled_signal(const Run& run, const Rule& rule, const Environment& env = {});

} // namespace rtasm
