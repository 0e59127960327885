#include "rtasm/run.hpp"

#include "rtasm/error.hpp"

#include <algorithm>

namespace rtasm {

const Trajectory& Run::trajectory(const Location& loc) const
{
    auto it = trajectories.find(loc);
    if (it == trajectories.end())
        throw Error(ErrorCode::UnknownSymbol, "run has no trajectory for " + loc.to_string());
    return it->second;
}

Value value_at(const Run& run, const Location& loc, const Rational& t, Side side)
{
    if (t < 0 || t > run.horizon || (side == Side::Minus && t == 0))
        throw Error(ErrorCode::OutOfHorizon, "moment " + format_rational(t) + " outside the run");
    if (loc.symbol == kCurrentTime)
        return Value(t);
    if (auto it = run.trajectories.find(loc); it != run.trajectories.end())
        return it->second.value_at(t, side);
    return run.statics.read(loc);
}

namespace {

State assemble(const Run& run, const Rational& t, Side side, bool with_ct,
               const std::set<std::string>* only = nullptr)
{
    State s = run.statics;
    for (const auto& [loc, traj] : run.trajectories)
        if (!only || only->count(loc.symbol))
            s.write(loc, traj.value_at(t, side));
    if (with_ct)
        s.write(Location(kCurrentTime), Value(t));
    return s;
}

bool is_internal(const Run& run, const Location& loc)
{
    const auto* sym = run.statics.vocabulary().find(loc.symbol);
    return sym && sym->classification == SymbolClass::Internal;
}

std::vector<std::set<std::string>> module_heads(const Run& run)
{
    std::vector<std::set<std::string>> heads;
    for (const auto& m : run.program.modules)
        heads.push_back(head_symbols(m.rule));
    return heads;
}

/// Locations whose value at t differs from the value at t+.
std::vector<Location> changed_after(const Run& run, const Rational& t)
{
    std::vector<Location> out;
    for (const auto& [loc, traj] : run.trajectories)
        if (traj.at(t) != traj.plus(t))
            out.push_back(loc);
    return out;
}

std::vector<Location> changed_before(const Run& run, const Rational& t)
{
    std::vector<Location> out;
    if (t == 0)
        return out;
    for (const auto& [loc, traj] : run.trajectories)
        if (traj.at(t) != traj.minus(t))
            out.push_back(loc);
    return out;
}

} // namespace

State state_at(const Run& run, const Rational& t) { return assemble(run, t, Side::At, true); }

State snapshot(const Run& run, const Rational& t, Side side) { return assemble(run, t, side, false); }

std::vector<Rational> breakpoints(const Run& run)
{
    std::vector<Rational> out{Rational(0), run.horizon};
    for (const auto& [loc, traj] : run.trajectories)
        for (const auto& bp : traj.breakpoints())
            out.push_back(bp.time);
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

std::string_view to_string(MomentKind kind)
{
    switch (kind) {
    case MomentKind::Initial: return "initial";
    case MomentKind::Internal: return "internal";
    case MomentKind::External: return "external";
    case MomentKind::Both: return "both";
    }
    return "initial";
}

std::vector<std::string> firing_agents(const Run& run, const Rational& t)
{
    const auto changed = changed_after(run, t);
    const auto heads = module_heads(run);
    std::vector<std::string> agents;
    for (std::size_t i = 0; i < run.program.modules.size(); ++i) {
        const bool fires = std::any_of(changed.begin(), changed.end(),
                                       [&](const Location& loc) { return heads[i].count(loc.symbol) > 0; });
        if (fires)
            agents.push_back(run.program.modules[i].name);
    }
    return agents;
}

std::vector<Rational> firing_moments(const Run& run, const std::string& agent)
{
    const auto& module = run.program.at(agent);
    const auto heads = head_symbols(module.rule);
    std::set<Rational> moments;
    for (const auto& [loc, traj] : run.trajectories) {
        if (!heads.count(loc.symbol))
            continue;
        for (const auto& bp : traj.breakpoints())
            if (bp.at != bp.right && bp.time < run.horizon)
                moments.insert(bp.time);
    }
    return {moments.begin(), moments.end()};
}

std::vector<SignificantMoment> significant_moments(const Run& run)
{
    std::vector<SignificantMoment> out;
    for (const auto& t : breakpoints(run)) {
        const bool internal = t < run.horizon && !changed_after(run, t).empty();
        const bool external = !changed_before(run, t).empty();
        if (t != 0 && !internal && !external)
            continue;
        SignificantMoment m;
        m.time = t;
        m.kind = internal && external ? MomentKind::Both
                 : internal           ? MomentKind::Internal
                 : external           ? MomentKind::External
                                      : MomentKind::Initial;
        if (internal)
            m.agents = firing_agents(run, t);
        out.push_back(std::move(m));
    }
    return out;
}

RunReport validate_run(const Run& run)
{
    RunReport report;
    auto violate = [&](char clause, const Rational& t, std::string message) {
        report.violations.push_back({clause, t, std::move(message)});
    };

    // (c) discreteness/canonical form and (d) CT is implicit.
    for (const auto& [loc, traj] : run.trajectories) {
        if (loc.symbol == kCurrentTime) {
            violate('d', Rational(0), "CT must not be stored as a trajectory");
            continue;
        }
        const auto* sym = run.statics.vocabulary().find(loc.symbol);
        if (!sym || sym->classification == SymbolClass::Static)
            violate('c', Rational(0), loc.to_string() + " is not a dynamic location");
        if (traj.horizon() != run.horizon)
            violate('c', Rational(0), loc.to_string() + " has a different horizon");
        if (!traj.is_canonical())
            violate('c', Rational(0), loc.to_string() + " is not in canonical form");
    }
    if (!report.ok())
        return report;

    const auto heads = module_heads(run);
    for (const auto& t : breakpoints(run)) {
        // (b) internal locations keep their value from t- to t.
        for (const auto& loc : changed_before(run, t))
            if (is_internal(run, loc))
                violate('b', t, "internal " + loc.to_string() + " changed at the moment itself");

        if (t == run.horizon)
            continue;
        const auto changed = changed_after(run, t);
        if (changed.empty())
            continue;

        // (a) changes visible at t+ are exactly the updates of the modules firing at t.
        std::set<Location> internal_changes;
        for (const auto& loc : changed) {
            if (is_internal(run, loc))
                internal_changes.insert(loc);
            else
                violate('a', t, "external " + loc.to_string() + " changed after the moment");
        }
        if (internal_changes.empty())
            continue;

        const State at = state_at(run, t);
        std::set<Location> explained;
        for (std::size_t i = 0; i < run.program.modules.size(); ++i) {
            const auto& module = run.program.modules[i];
            const bool fires = std::any_of(internal_changes.begin(), internal_changes.end(),
                                           [&](const Location& loc) { return heads[i].count(loc.symbol) > 0; });
            if (!fires)
                continue;
            const auto updates = collect_updates(at, {}, module.rule);
            if (!consistent(updates)) {
                violate('a', t, module.name + " produces an inconsistent update set");
                continue;
            }
            const auto expected = nontrivial_updates(at, updates);
            for (const auto& u : expected)
                explained.insert(u.location);
            for (const auto& loc : internal_changes) {
                if (!heads[i].count(loc.symbol))
                    continue;
                const auto observed = run.trajectory(loc).plus(t);
                auto it = std::find_if(expected.begin(), expected.end(),
                                       [&](const Update& u) { return u.location == loc; });
                if (it == expected.end())
                    violate('a', t,
                            loc.to_string() + " became " + observed.to_string() + " but " + module.name +
                                " does not update it");
                else if (it->value != observed)
                    violate('a', t,
                            loc.to_string() + " became " + observed.to_string() + " but " + module.name +
                                " sets it to " + it->value.to_string());
            }
            for (const auto& u : expected)
                if (!internal_changes.count(u.location))
                    violate('a', t,
                            module.name + " fires but its update " + u.location.to_string() + " := " +
                                u.value.to_string() + " is missing");
        }
        for (const auto& loc : internal_changes)
            if (!explained.count(loc) &&
                std::none_of(heads.begin(), heads.end(), [&](const auto& h) { return h.count(loc.symbol) > 0; }))
                violate('a', t, loc.to_string() + " is not the head of any module");
    }
    return report;
}

namespace {

/// Candidate moments: all breakpoints plus, inside each gap, the CT-critical points of
/// `critical` evaluated on the gap's state.
template <class Critical>
std::vector<Rational> candidate_moments(const Run& run, const std::set<std::string>& symbols, Critical&& critical)
{
    auto points = breakpoints(run);
    std::vector<Rational> extra;
    for (std::size_t i = 0; i + 1 < points.size(); ++i) {
        const Rational mid = (points[i] + points[i + 1]) / 2;
        State s = assemble(run, mid, Side::At, true, &symbols);
        for (auto& c : critical(s))
            if (c > points[i] && c < points[i + 1])
                extra.push_back(std::move(c));
    }
    points.insert(points.end(), extra.begin(), extra.end());
    std::sort(points.begin(), points.end());
    points.erase(std::unique(points.begin(), points.end()), points.end());
    return points;
}

void substitute_term(Term& t, const Environment& env)
{
    if (t.kind == Term::Kind::Variable) {
        if (auto it = env.find(t.name); it != env.end())
            t = Term::constant(it->second);
        return;
    }
    for (auto& a : t.args)
        substitute_term(a, env);
}

void substitute_guard(Guard& g, const Environment& env)
{
    substitute_term(g.atom, env);
    for (auto& o : g.operands)
        substitute_guard(o, env);
}

// Replaces free occurrences of the environment's variables by literals.
Rule substitute(Rule r, const Environment& env)
{
    for (auto& a : r.args)
        substitute_term(a, env);
    substitute_term(r.rhs, env);
    substitute_guard(r.guard, env);
    for (auto& child : r.body)
        child = substitute(std::move(child), env);
    return r;
}

bool mentions_ct_outside_comparison(const Term& t)
{
    if (t.kind != Term::Kind::Apply)
        return false;
    if (t.name == "=" || t.name == "<")
        return false;
    if (t.name == kCurrentTime)
        return true;
    return std::any_of(t.args.begin(), t.args.end(), mentions_ct_outside_comparison);
}

} // namespace

Trajectory term_signal(const Run& run, const Term& term, const Environment& env)
{
    if (mentions_ct_outside_comparison(term))
        throw Error(ErrorCode::Unsupported, "term " + to_string(term) + " is not piecewise constant");
    const auto symbols = symbols_of(term);
    auto candidates = candidate_moments(run, symbols, [&](const State& s) {
        return ct_critical_points(s, env, Guard::of(term));
    });
    return sample(run.horizon, std::move(candidates), [&](const Rational& t) {
        return eval_term(assemble(run, t, Side::At, true, &symbols), env, term);
    });
}

Trajectory guard_signal(const Run& run, const Guard& guard, const Environment& env)
{
    const auto symbols = symbols_of(guard);
    auto candidates =
        candidate_moments(run, symbols, [&](const State& s) { return ct_critical_points(s, env, guard); });
    return sample(run.horizon, std::move(candidates), [&](const Rational& t) {
        return Value(eval_guard(assemble(run, t, Side::At, true, &symbols), env, guard));
    });
}

Trajectory enabled_signal(const Run& run, const Rule& rule, const Environment& env)
{
    const Rule closed = env.empty() ? rule : substitute(rule, env);
    const auto symbols = symbols_of(rule);
    auto candidates = candidate_moments(run, symbols, [&](const State& s) { return ct_critical_points(s, closed); });
    return sample(run.horizon, std::move(candidates), [&](const Rational& t) {
        return Value(enabled(assemble(run, t, Side::At, true, &symbols), env, rule));
    });
}

TimingReport agent_timing_report(const Run& run, const std::string& agent, const std::optional<Rational>& bound)
{
    const auto& module = run.program.at(agent);
    const auto signal = enabled_signal(run, module.rule);
    const auto fired = firing_moments(run, agent);
    const std::set<Rational> fires(fired.begin(), fired.end());

    TimingReport report;
    const auto pieces = signal.pieces();

    // Immediacy: every enabled moment is a firing moment (the horizon's future is unseen).
    for (const auto& [piece, value] : pieces) {
        if (!value.as_bool())
            continue;
        const bool point = piece.lo == piece.hi;
        if (point && (fires.count(piece.lo) || piece.lo == run.horizon))
            continue;
        report.immediate = false;
        report.immediacy_witnesses.push_back(piece);
    }

    // Enabled at t implies disabled at t+ and t- for immediate agents.
    for (const auto& bp : signal.breakpoints()) {
        if (!bp.at.as_bool())
            continue;
        const bool plus = bp.time < run.horizon && signal.plus(bp.time).as_bool();
        const bool minus = bp.time > 0 && signal.minus(bp.time).as_bool();
        if (plus || minus)
            report.neighbour_witnesses.push_back(bp.time);
    }

    if (!bound) {
        report.bounded = report.immediate;
        return report;
    }
    // Maximal stretches of enabled-but-not-firing pieces.
    std::optional<Interval> stretch;
    auto close_stretch = [&] {
        if (stretch && stretch->length() >= *bound) {
            report.bounded = false;
            report.bound_witnesses.push_back(Interval::open(stretch->lo, stretch->lo + *bound));
        }
        stretch.reset();
    };
    auto extend = [&](const Interval& piece) {
        if (!stretch)
            stretch = piece;
        else {
            stretch->hi = piece.hi;
            stretch->hi_closed = piece.hi_closed;
        }
    };
    for (const auto& [piece, value] : pieces) {
        const bool point = piece.lo == piece.hi;
        if (!value.as_bool() || (point && fires.count(piece.lo))) {
            close_stretch();
            continue;
        }
        // A firing inside an enabled stretch has no breakpoint of its own; it ends the stretch.
        Interval rest = piece;
        for (auto it = fires.upper_bound(piece.lo); it != fires.end() && *it < piece.hi; ++it) {
            extend(Interval{rest.lo, *it, rest.lo_closed, false});
            close_stretch();
            rest = Interval{*it, piece.hi, false, piece.hi_closed};
        }
        extend(rest);
    }
    close_stretch();
    return report;
}

} // namespace rtasm
