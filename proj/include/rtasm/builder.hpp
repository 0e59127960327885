#pragma once

#include "rtasm/crossing.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace rtasm::crossing {

/// Run of Controller alone: trajectories for Dir, Deadline(x) and TrackStatus(x).
struct ControllerRun {
    Run run;
    TrainPattern pattern;
    Params params;
};

/// One delay per Dir change moment, in order.
using GateDelays = std::vector<Rational>;

/// The unique Controller run agreeing with the pattern. Throws Error(InvalidPattern) or
/// Error(HorizonTooSmall) (horizon must exceed last moment + dmax + dopen).
ControllerRun build_controller_run(const TrainPattern& pattern, const Params& params, const Rational& horizon);

/// Moments at which Dir changes (the change is visible at t+), ascending.
std::vector<Rational> dir_changes(const Run& run);

/// True when dmin >= dclose + dopen, the regime where every delay must also fit the gap to
/// the next Dir change.
bool simple_regime(const Params& params);

/// Adds GateStatus. Throws Error(BadDelays) naming the violated constraint.
Run extend_with_gate(const ControllerRun& q, const GateDelays& delays);

/// Delays that rebuild `run` exactly. Where the run does not determine a delay, the
/// midpoint of its admissible range is chosen. Throws Error(NotRegular).
GateDelays recover_delays(const Run& run);

struct DelayPolicy {
    enum class Kind { Explicit, Auto, Seeded };
    Kind kind = Kind::Auto;
    GateDelays values;
    std::uint64_t seed = 0;

    /// "auto", "seed:N".
    static DelayPolicy parse(const std::string& text);
    static DelayPolicy explicit_values(GateDelays values) { return {Kind::Explicit, std::move(values), 0}; }
    std::string to_string() const;
};

/// Explicit values are returned unchanged; Auto takes half of each bound; Seeded draws
/// k/1000 of the bound, and when dmin < dclose + dopen sometimes hits the gap exactly.
GateDelays choose_delays(const ControllerRun& q, const DelayPolicy& policy);

/// build_controller_run followed by extend_with_gate with delays from the policy.
Run build_run(const TrainPattern& pattern, const Params& params, const Rational& horizon,
              const DelayPolicy& policy = {});

} // namespace rtasm::crossing
