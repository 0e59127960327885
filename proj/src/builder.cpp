#include "rtasm/builder.hpp"

#include "rtasm/error.hpp"

#include <algorithm>
#include <map>
#include <optional>
#include <random>

namespace rtasm::crossing {

namespace {

std::string q(const Rational& r) { return format_rational(r); }

std::vector<Location> dynamic_u1(const std::vector<std::string>& tracks)
{
    std::vector<Location> locs{kDir};
    for (const auto& x : tracks) {
        locs.push_back(deadline(x));
        locs.push_back(track_status(x));
    }
    return locs;
}

} // namespace

ControllerRun build_controller_run(const TrainPattern& pattern, const Params& params, const Rational& horizon)
{
    params.validate();
    if (auto problems = validate_pattern(pattern, params); !problems.empty())
        throw Error(ErrorCode::InvalidPattern, problems.front().clause + ": " + problems.front().message);
    const Rational needed = pattern.last_moment() + params.dmax + params.dopen;
    if (!(horizon > needed))
        throw Error(ErrorCode::HorizonTooSmall,
                    "horizon " + q(horizon) + " must exceed last moment + dmax + dopen = " + q(needed));

    const std::size_t n = pattern.track_count();
    const auto names = track_names(n);
    const Rational wt = params.wait_time();

    // External changes per moment, and the precomputed moment set.
    std::map<Rational, std::vector<std::pair<Location, Value>>> external;
    std::set<Rational> beta{Rational(0)};
    for (std::size_t x = 0; x < n; ++x)
        for (const auto& p : pattern.tracks[x]) {
            external[p.detected].emplace_back(track_status(names[x]), kComing);
            external[p.entered].emplace_back(track_status(names[x]), kInCrossing);
            external[p.exited].emplace_back(track_status(names[x]), kEmpty);
            beta.insert({p.detected, p.entered, p.exited, p.detected + wt});
        }

    const Rule& controller = crossing_program().at("Controller").rule;
    const auto locs = dynamic_u1(names);
    std::map<Location, std::vector<Trajectory::Breakpoint>> points;

    State s = initial_state(params, n);
    for (const Rational& t : beta) {
        if (auto it = external.find(t); it != external.end())
            for (const auto& [loc, v] : it->second)
                s.write(loc, v);
        s.write(Location(kCurrentTime), Value(t));
        State next = s;
        const UpdateSet updates = collect_updates(s, {}, controller);
        if (!consistent(updates))
            throw Error(ErrorCode::InvalidRun, "Controller produced an inconsistent update set at " + q(t));
        if (!nontrivial_updates(s, updates).empty())
            next = apply_updates(s, updates).first;
        for (const auto& loc : locs)
            points[loc].push_back({t, s.read(loc), next.read(loc)});
        s = std::move(next);
    }

    ControllerRun out{Run{controller_program(), static_state(params, n), {}, horizon, {}}, pattern, params};
    for (auto& [loc, pts] : points)
        out.run.trajectories.emplace(loc, Trajectory::from_breakpoints(horizon, std::move(pts)));
    return out;
}

std::vector<Rational> dir_changes(const Run& run)
{
    std::vector<Rational> out;
    const auto& dir = run.trajectory(kDir);
    for (const auto& bp : dir.breakpoints())
        if (bp.at != bp.right)
            out.push_back(bp.time);
    return out;
}

bool simple_regime(const Params& params) { return params.dmin >= params.dclose + params.dopen; }

Run extend_with_gate(const ControllerRun& q_run, const GateDelays& delays)
{
    const Params& params = q_run.params;
    const auto gamma = dir_changes(q_run.run);
    if (delays.size() != gamma.size())
        throw Error(ErrorCode::BadDelays, "expected " + std::to_string(gamma.size()) +
                                              " delays (one per Dir change), got " + std::to_string(delays.size()));
    const bool simple = simple_regime(params);
    const Rational& horizon = q_run.run.horizon;

    Run run = q_run.run;
    run.program = crossing_program();
    Trajectory gs(horizon, kOpened);
    auto flip = [&](const Rational& at, const Value& v) {
        if (at < horizon)
            gs.assign(Interval::left_open(at, horizon), v);
    };

    Value g = kOpened;
    bool marked = false;
    for (std::size_t i = 0; i < gamma.size(); ++i) {
        const std::size_t k = i + 1;
        const bool closing = k % 2 == 1;
        const Rational& at = gamma[i];
        const Rational& a = delays[i];
        const std::optional<Rational> next = i + 1 < gamma.size() ? std::optional(gamma[i + 1]) : std::nullopt;
        const std::string name = "a_" + std::to_string(k) + " = " + q(a);

        if (a <= 0)
            throw Error(ErrorCode::BadDelays, name + " must be positive");
        if (closing && a >= params.dclose)
            throw Error(ErrorCode::BadDelays, name + " violates a_i < dclose for odd i (dclose = " + q(params.dclose) + ")");
        if (!closing && a >= params.dopen)
            throw Error(ErrorCode::BadDelays, name + " violates a_i < dopen for even i (dopen = " + q(params.dopen) + ")");
        if (simple && next && a >= *next - at)
            throw Error(ErrorCode::BadDelays, name + " violates a_i < gamma_(i+1) - gamma_i = " + q(*next - at));

        if (closing) {
            if (marked) {
                flip(at, kOpened);
                run.gate_marks.insert(at);
                g = kOpened;
            }
            marked = false;
            if (g == kOpened) {
                if (next && at + a >= *next)
                    throw Error(ErrorCode::BadDelays, name + ": closing would end after the next Dir change at " + q(*next));
                flip(at + a, kClosed);
                g = kClosed;
            }
            // Gate already closed and unmarked: the delay is irrelevant.
        } else {
            const Rational done = at + a;
            if (!next || done < *next) {
                flip(done, kOpened);
                g = kOpened;
            } else if (done == *next) {
                marked = true; // OpenGate fires at the next Dir change
            }
            // done > next: the gate stays closed through the next Dir change.
        }
    }
    run.trajectories.emplace(kGateStatus, std::move(gs));
    return run;
}

GateDelays recover_delays(const Run& run)
{
    if (auto problems = regularity_violations(run); !problems.empty())
        throw Error(ErrorCode::NotRegular, problems.front().clause + " at " + problems.front().where.to_string() +
                                               ": " + problems.front().message);
    const Params params = params_of(run);
    const auto gamma = dir_changes(run);
    const auto& gs = run.trajectory(kGateStatus);
    std::vector<Rational> delta;
    for (const auto& bp : gs.breakpoints())
        if (bp.at != bp.right)
            delta.push_back(bp.time);

    GateDelays out;
    std::size_t d = 0; // next unconsumed GateStatus change
    auto midpoint_above = [](const Rational& lo, const Rational& bound) {
        return lo < bound ? Rational((lo + bound) / 2) : Rational(bound / 2);
    };
    for (std::size_t i = 0; i < gamma.size(); ++i) {
        const bool closing = i % 2 == 0;
        const Rational& at = gamma[i];
        const Rational limit = i + 1 < gamma.size() ? gamma[i + 1] : run.horizon;
        while (d < delta.size() && delta[d] < at)
            ++d;
        if (closing) {
            if (gs.plus(at) == kOpened) {
                if (d < delta.size() && delta[d] == at)
                    ++d; // the marked opening
                if (d < delta.size() && delta[d] < limit)
                    out.push_back(delta[d++] - at);
                else
                    out.push_back(midpoint_above(limit - at, params.dclose));
            } else {
                out.push_back(params.dclose / 2);
            }
        } else {
            if (d < delta.size() && delta[d] <= limit && !(delta[d] == limit && limit == run.horizon))
                out.push_back(delta[d] - at); // delta[d] == limit is the marked case
            else
                out.push_back(midpoint_above(limit - at, params.dopen));
        }
    }

    const auto rebuilt = extend_with_gate(build_controller_run(pattern_of(run), params, run.horizon), out);
    if (rebuilt.trajectories != run.trajectories)
        throw Error(ErrorCode::NotRegular, "no delay sequence reproduces the run");
    return out;
}

DelayPolicy DelayPolicy::parse(const std::string& text)
{
    if (text == "auto")
        return {};
    if (text.rfind("seed:", 0) == 0) {
        try {
            std::size_t used = 0;
            const auto seed = std::stoull(text.substr(5), &used);
            if (used == text.size() - 5)
                return {Kind::Seeded, {}, seed};
        } catch (const std::exception&) {
        }
    }
    throw Error(ErrorCode::ParseError, "gate delays must be \"auto\", \"seed:N\" or a list, got \"" + text + "\"");
}

std::string DelayPolicy::to_string() const
{
    switch (kind) {
    case Kind::Auto: return "auto";
    case Kind::Seeded: return "seed:" + std::to_string(seed);
    case Kind::Explicit: break;
    }
    std::string s = "[";
    for (std::size_t i = 0; i < values.size(); ++i)
        s += (i ? ", " : "") + format_rational(values[i]);
    return s + "]";
}

GateDelays choose_delays(const ControllerRun& q_run, const DelayPolicy& policy)
{
    if (policy.kind == DelayPolicy::Kind::Explicit)
        return policy.values;
    const Params& params = q_run.params;
    const bool simple = simple_regime(params);
    const auto gamma = dir_changes(q_run.run);
    std::mt19937_64 rng(policy.seed);
    GateDelays out;
    for (std::size_t i = 0; i < gamma.size(); ++i) {
        const bool closing = i % 2 == 0;
        const std::optional<Rational> gap =
            i + 1 < gamma.size() ? std::optional(gamma[i + 1] - gamma[i]) : std::nullopt;
        Rational bound = closing ? params.dclose : params.dopen;
        if (simple && gap)
            bound = std::min(bound, *gap);
        if (policy.kind == DelayPolicy::Kind::Auto) {
            out.push_back(bound / 2);
            continue;
        }
        const auto k = 1 + rng() % 999;
        Rational a = bound * Rational(static_cast<long long>(k), 1000);
        if (!simple && !closing && gap && *gap < params.dopen && rng() % 8 == 0)
            a = *gap;
        out.push_back(a);
    }
    return out;
}

Run build_run(const TrainPattern& pattern, const Params& params, const Rational& horizon, const DelayPolicy& policy)
{
    const auto q_run = build_controller_run(pattern, params, horizon);
    return extend_with_gate(q_run, choose_delays(q_run, policy));
}

} // namespace rtasm::crossing
