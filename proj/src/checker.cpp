#include "rtasm/checker.hpp"

#include "rtasm/builder.hpp"
#include "rtasm/error.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <set>

namespace rtasm::crossing {

std::string_view to_string(Status status)
{
    switch (status) {
    case Status::Pass: return "pass";
    case Status::Fail: return "fail";
    case Status::Indeterminate: return "indeterminate";
    case Status::Skipped: return "skipped";
    }
    return "?";
}

namespace {

std::string q(const Rational& r) { return format_rational(r); }

Interval point(const Rational& t) { return Interval::closed(t, t); }

struct Context {
    const Run& run;
    Params params;
    std::vector<std::string> tracks;
    TrainPattern pattern;
    Rational wt;
    Rational big_dclose;

    // Signals shared by several lemmas, computed on first use.
    mutable std::optional<Trajectory> safe;
    mutable std::map<std::string, Trajectory> local;

    const Trajectory& safe_to_open() const;
    const Trajectory& local_safe(const std::string& track) const;
};

Context context(const Run& run)
{
    auto require = [&](const Location& loc) {
        if (!run.trajectories.count(loc))
            throw Error(ErrorCode::InvalidRun, "run has no trajectory for " + loc.to_string());
    };
    Context c{run, {}, {}, {}, {}, {}, {}, {}};
    try {
        c.params = params_of(run);
        c.tracks = tracks_of(run);
        require(kDir);
        require(kGateStatus);
        for (const auto& x : c.tracks) {
            require(track_status(x));
            require(deadline(x));
        }
        c.pattern = pattern_of(run);
    } catch (const Error& e) {
        if (e.code() == ErrorCode::InvalidRun)
            throw;
        throw Error(ErrorCode::InvalidRun, e.what());
    }
    c.wt = c.params.wait_time();
    c.big_dclose = c.params.big_dclose();
    return c;
}

const Trajectory& Context::safe_to_open() const
{
    if (!safe)
        safe = safe_to_open_signal(run);
    return *safe;
}

const Trajectory& Context::local_safe(const std::string& track) const
{
    auto it = local.find(track);
    if (it == local.end())
        it = local.emplace(track, local_safe_signal(run, track)).first;
    return it->second;
}

Verdict finish(Verdict v)
{
    if (!v.witnesses.empty())
        v.status = Status::Fail;
    std::stable_sort(v.witnesses.begin(), v.witnesses.end(),
                     [](const Witness& a, const Witness& b) { return a.where.lo < b.where.lo; });
    return v;
}

std::optional<Interval> intersect(const Interval& a, const Interval& b)
{
    Interval r;
    if (a.lo > b.lo) {
        r.lo = a.lo;
        r.lo_closed = a.lo_closed;
    } else if (b.lo > a.lo) {
        r.lo = b.lo;
        r.lo_closed = b.lo_closed;
    } else {
        r.lo = a.lo;
        r.lo_closed = a.lo_closed && b.lo_closed;
    }
    if (a.hi < b.hi) {
        r.hi = a.hi;
        r.hi_closed = a.hi_closed;
    } else if (b.hi < a.hi) {
        r.hi = b.hi;
        r.hi_closed = b.hi_closed;
    } else {
        r.hi = a.hi;
        r.hi_closed = a.hi_closed && b.hi_closed;
    }
    if (r.empty())
        return std::nullopt;
    return r;
}

/// A moment inside a nonempty interval.
Rational inside(const Interval& iv)
{
    if (iv.lo_closed)
        return iv.lo;
    if (iv.hi_closed && iv.lo == iv.hi)
        return iv.hi;
    return (iv.lo + iv.hi) / 2;
}

std::vector<Rational> joint_breakpoints(const Trajectory& a, const Trajectory& b)
{
    std::vector<Rational> out;
    for (const auto& bp : a.breakpoints())
        out.push_back(bp.time);
    for (const auto& bp : b.breakpoints())
        out.push_back(bp.time);
    return out;
}

/// First stretch where the two trajectories differ.
std::optional<Witness> compare(const Trajectory& actual, const Trajectory& expected)
{
    const auto diff = sample(actual.horizon(), joint_breakpoints(actual, expected),
                             [&](const Rational& t) { return Value(actual.at(t) != expected.at(t)); });
    const auto where = diff.intervals_where(Value(true));
    if (where.empty())
        return std::nullopt;
    const Rational t = inside(where.front());
    return Witness{where.front(), expected.at(t).to_string(), actual.at(t).to_string()};
}

std::optional<Witness> require_value(const Trajectory& traj, const Interval& window, const Value& v)
{
    if (window.empty())
        return std::nullopt;
    if (auto bad = traj.first_violation(window, v))
        return Witness{*bad, v.to_string(), traj.at(inside(*bad)).to_string()};
    return std::nullopt;
}

/// Moments where the signal becomes true: false at t- and true at t, or false at t and
/// true at t+.
std::set<Rational> becomes_true(const Trajectory& signal)
{
    std::set<Rational> out;
    for (const auto& bp : signal.breakpoints()) {
        const bool at = bp.at.as_bool();
        if (bp.time > 0 && at && !signal.minus(bp.time).as_bool())
            out.insert(bp.time);
        if (!at && bp.right.as_bool() && bp.time < signal.horizon())
            out.insert(bp.time);
    }
    return out;
}

std::set<Rational> becomes_empty(const Context& c)
{
    std::set<Rational> out;
    for (const auto& track : c.pattern.tracks)
        for (const auto& p : track)
            out.insert(p.exited);
    return out;
}

Environment env_for(const std::string& track) { return {{"x", Value::atom(track)}}; }

/// Crossing-free maximal intervals: (lo, hi) plus whether the horizon cut the interval.
struct FreeInterval {
    Rational alpha;
    Rational beta;
    bool clipped;
};

std::vector<FreeInterval> crossing_free(const Context& c, const std::optional<std::string>& only = std::nullopt)
{
    std::vector<Rational> cuts;
    for (const auto& x : c.tracks)
        for (const auto& bp : c.run.trajectory(track_status(x)).breakpoints())
            cuts.push_back(bp.time);
    const auto free = sample(c.run.horizon, cuts, [&](const Rational& t) {
        for (const auto& x : c.tracks)
            if ((!only || *only == x) && c.run.trajectory(track_status(x)).at(t) == kInCrossing)
                return Value(false);
        return Value(true);
    });
    std::vector<FreeInterval> out;
    for (const auto& iv : free.intervals_where(Value(true)))
        out.push_back({iv.lo, iv.hi, iv.hi == c.run.horizon && iv.hi_closed});
    return out;
}

} // namespace

Trajectory local_safe_signal(const Run& run, const std::string& track)
{
    return guard_signal(run, safe_to_open_guard().operands.at(0), env_for(track));
}

Trajectory safe_to_open_signal(const Run& run) { return guard_signal(run, safe_to_open_guard()); }

Verdict check_safety(const Run& run)
{
    const Context c = context(run);
    Verdict v{"Safety", Status::Pass, "", {}};
    const auto& gs = run.trajectory(kGateStatus);
    for (std::size_t x = 0; x < c.tracks.size(); ++x)
        for (const auto& p : c.pattern.tracks[x]) {
            if (auto w = require_value(gs, Interval::right_open(p.entered, p.exited), kClosed)) {
                w->expected += " (" + c.tracks[x] + " in the crossing)";
                v.witnesses.push_back(*w);
            } else if (auto w2 = require_value(gs, Interval::closed(p.detected + c.params.dmin, p.exited), kClosed)) {
                w2->expected += " (widened window of " + c.tracks[x] + ")";
                v.witnesses.push_back(*w2);
            }
        }
    return finish(v);
}

Verdict check_liveness(const Run& run) 
{
    const auto p = params_of(run);
    return check_liveness(run, p.dopen, p.big_dclose());
}

Verdict check_liveness(const Run& run, const Rational& open_lead, const Rational& close_lead)
{
    const Context c = context(run);
    Verdict v{"Liveness", Status::Pass, "", {}};
    const auto& gs = run.trajectory(kGateStatus);
    std::size_t vacuous_clipped = 0;
    for (const auto& f : crossing_free(c)) {
        const Rational from = f.alpha + open_lead;
        const Rational to = f.beta - close_lead;
        if (!(from < to)) {
            vacuous_clipped += f.clipped;
            continue;
        }
        if (auto w = require_value(gs, Interval::closed(from, to), kOpened)) {
            w->expected += " (crossing free over (" + q(f.alpha) + ", " + q(f.beta) + (f.clipped ? "+" : "") + "))";
            v.witnesses.push_back(*w);
        }
    }
    v = finish(v);
    if (v.status == Status::Pass && vacuous_clipped) {
        v.status = Status::Indeterminate;
        v.reason = "the last crossing-free interval is cut by the horizon before any obligation starts";
    }
    return v;
}

namespace {

Verdict deadline_lemma(const Context& c)
{
    Verdict v{"Deadline Lemma", Status::Pass, "", {}};
    for (std::size_t x = 0; x < c.tracks.size(); ++x) {
        const auto& dl = c.run.trajectory(deadline(c.tracks[x]));
        Trajectory expected(c.run.horizon, Value::infinity());
        for (const auto& p : c.pattern.tracks[x])
            expected.assign(Interval::left_open(p.detected, p.exited), Value(p.detected + c.wt));
        if (auto w = compare(dl, expected)) {
            w->expected = "Deadline(" + c.tracks[x] + ") = " + w->expected;
            v.witnesses.push_back(*w);
        }
        for (const auto& f : crossing_free(c, c.tracks[x])) {
            const Interval window = Interval::open(f.alpha, f.beta);
            const ExtendedRational floor{Rational(f.beta - c.big_dclose)};
            for (const auto& [piece, value] : dl.pieces()) {
                auto overlap = intersect(piece, window);
                if (overlap && value.kind() == Value::Kind::Number && value.as_number() < floor) {
                    v.witnesses.push_back({*overlap, "Deadline(" + c.tracks[x] + ") >= " + floor.to_string(),
                                           value.to_string()});
                    break;
                }
            }
        }
    }
    return finish(v);
}

Verdict three_rules(const Context& c)
{
    Verdict v{"Three Rules Corollary", Status::Pass, "", {}};
    const auto& dir = c.run.trajectory(kDir);
    for (std::size_t x = 0; x < c.tracks.size(); ++x) {
        const auto& name = c.tracks[x];
        const auto& dl = c.run.trajectory(deadline(name));
        std::set<Rational> sd, sc, cd;
        for (const auto& p : c.pattern.tracks[x]) {
            sd.insert(p.detected);
            if (p.detected + c.wt <= c.run.horizon)
                sc.insert(p.detected + c.wt);
            cd.insert(p.exited);
        }
        struct Part {
            const char* label;
            const Rule& rule;
            const std::set<Rational>& expected;
            std::function<Value(const Rational&)> effect;
        };
        const Part parts[] = {
            {"SignalDeadline", signal_deadline_rule(), sd, [&](const Rational& t) { return Value(t + c.wt); }},
            {"SignalClose", signal_close_rule(), sc, [&](const Rational&) { return kClose; }},
            {"ClearDeadline", clear_deadline_rule(), cd, [&](const Rational&) { return Value::infinity(); }},
        };
        for (const auto& part : parts) {
            const std::string who = std::string(part.label) + "(" + name + ")";
            const auto signal = guard_signal(c.run, part.rule.guard, env_for(name));
            std::set<Rational> holds;
            for (const auto& [piece, value] : signal.pieces()) {
                if (!value.as_bool())
                    continue;
                if (piece.lo != piece.hi) {
                    v.witnesses.push_back({piece, who + " guard at isolated moments only", "holds throughout"});
                    continue;
                }
                holds.insert(piece.lo);
            }
            for (const auto& t : part.expected)
                if (!holds.count(t))
                    v.witnesses.push_back({point(t), who + " fires", "guard fails"});
            for (const auto& t : holds) {
                if (!part.expected.count(t)) {
                    v.witnesses.push_back({point(t), who + " does not fire", "guard holds"});
                    continue;
                }
                if (t == c.run.horizon)
                    continue;
                const auto& target = &part.rule == &signal_close_rule() ? dir : dl;
                const Value want = part.effect(t);
                if (target.plus(t) != want)
                    v.witnesses.push_back({point(t), who + " effect " + want.to_string() + " at t+",
                                           target.plus(t).to_string()});
            }
        }
    }
    return finish(v);
}

Verdict local_safe_lemma(const Context& c)
{
    Verdict v{"Local SafeToOpen Lemma", Status::Pass, "", {}};
    const bool long_wait = c.wt > c.params.dopen;
    const Rule& sc = signal_close_rule();
    for (std::size_t x = 0; x < c.tracks.size(); ++x) {
        const auto& name = c.tracks[x];
        const auto& s = c.local_safe(name);

        // Parts 1 and 2: the exact shape, switched on WT vs dopen.
        Trajectory expected(c.run.horizon, Value(true));
        for (const auto& p : c.pattern.tracks[x]) {
            if (long_wait)
                expected.assign(Interval::right_open(p.detected + c.wt - c.params.dopen, p.exited), Value(false));
            else
                expected.assign(Interval::open(p.detected, p.exited), Value(false));
        }
        if (auto w = compare(s, expected)) {
            w->expected = "s(" + name + ") = " + w->expected + (long_wait ? " (WT > dopen)" : " (WT <= dopen)");
            v.witnesses.push_back(*w);
        }
        // Part 3 holds for any trajectory with finitely many breakpoints.

        // Part 4.
        std::set<Rational> exits;
        for (const auto& p : c.pattern.tracks[x])
            exits.insert(p.exited);
        const auto rises = becomes_true(s);
        for (const auto& t : rises)
            if (!exits.count(t))
                v.witnesses.push_back({point(t), "s(" + name + ") becomes true only when the track empties",
                                       "becomes true"});
        for (const auto& t : exits)
            if (!rises.count(t))
                v.witnesses.push_back({point(t), "s(" + name + ") becomes true", "no change"});

        // Part 5.
        const auto sc_guard = guard_signal(c.run, sc.guard, env_for(name));
        for (const auto& iv : s.intervals_where(Value(true))) {
            Interval closed = Interval::closed(iv.lo, iv.hi);
            if (auto bad = sc_guard.first_violation(closed, Value(false)))
                v.witnesses.push_back({*bad, "SignalClose(" + name + ") disabled", "enabled"});
            else if (iv.hi < c.run.horizon && sc_guard.plus(iv.hi).as_bool())
                v.witnesses.push_back({point(iv.hi), "SignalClose(" + name + ") disabled at t+", "enabled"});
        }
    }
    return finish(v);
}

Verdict global_safe_lemma(const Context& c)
{
    Verdict v{"Global SafeToOpen Lemma", Status::Pass, "", {}};
    const auto& S = c.safe_to_open();
    const bool long_wait = c.wt > c.params.dopen;

    // Part 2.
    for (const auto& bp : S.breakpoints())
        if (bp.time < c.run.horizon && bp.right.as_bool() && !bp.at.as_bool())
            v.witnesses.push_back({point(bp.time), "SafeToOpen at t since it holds at t+", "false"});

    // Part 3.
    const auto empties = becomes_empty(c);
    for (const auto& t : becomes_true(S))
        if (!empties.count(t))
            v.witnesses.push_back({point(t), "some TrackStatus becomes empty where SafeToOpen becomes true",
                                   "no track empties"});

    // Part 4, cross-checked against per-track intervals.
    std::vector<std::vector<Interval>> local;
    for (const auto& x : c.tracks)
        local.push_back(c.local_safe(x).intervals_where(Value(true)));
    for (const auto& iv : S.intervals_where(Value(true))) {
        const bool at_horizon = iv.hi == c.run.horizon && iv.hi_closed;
        if (!iv.lo_closed || (iv.hi_closed && !at_horizon && long_wait))
            v.witnesses.push_back({iv, "maximal interval of the form [a, b)", iv.to_string()});
        if (iv.lo > 0 && S.minus(iv.lo).as_bool())
            v.witnesses.push_back({point(iv.lo), "SafeToOpen fails at a-", "holds"});
        const Rational t = inside(iv);
        std::optional<Interval> meet = Interval::closed(Rational(0), c.run.horizon);
        for (const auto& ivs : local) {
            auto it = std::find_if(ivs.begin(), ivs.end(), [&](const Interval& l) { return l.contains(t); });
            meet = it == ivs.end() ? std::nullopt : meet ? intersect(*meet, *it) : std::nullopt;
        }
        if (!meet || !(*meet == iv))
            v.witnesses.push_back({iv, "intersection of per-track intervals " + (meet ? meet->to_string() : "(none)"),
                                   iv.to_string()});
    }
    return finish(v);
}

Verdict dir_lemma(const Context& c)
{
    Verdict v{"Dir Lemma", Status::Pass, "", {}};
    const auto& dir = c.run.trajectory(kDir);
    for (const auto& iv : c.safe_to_open().intervals_where(Value(true))) {
        if (iv.lo == 0)
            continue; // the initial interval is not entered by SafeToOpen becoming true
        if (dir.at(iv.lo) != kClose)
            v.witnesses.push_back({point(iv.lo), "Dir = close", dir.at(iv.lo).to_string()});
        if (auto w = require_value(dir, Interval::left_open(iv.lo, iv.hi), kOpen))
            v.witnesses.push_back(*w);
        else if (iv.hi < c.run.horizon && dir.plus(iv.hi) != kOpen)
            v.witnesses.push_back({point(iv.hi), "Dir = open at b+", dir.plus(iv.hi).to_string()});
    }
    return finish(v);
}

Verdict signal_open_corollary(const Context& c)
{
    Verdict v{"SignalOpen Corollary", Status::Pass, "", {}};
    const auto& dir = c.run.trajectory(kDir);
    const auto guard = guard_signal(c.run, signal_open_rule().guard);
    std::set<Rational> fires;
    for (const auto& bp : guard.breakpoints())
        if (bp.at.as_bool() && bp.time < c.run.horizon && dir.plus(bp.time) == kOpen)
            fires.insert(bp.time);
    const auto rises = becomes_true(c.safe_to_open());
    const auto empties = becomes_empty(c);
    for (const auto& t : rises)
        if (t < c.run.horizon && !fires.count(t))
            v.witnesses.push_back({point(t), "SignalOpen fires where SafeToOpen becomes true", "no firing"});
    for (const auto& t : fires) {
        if (!rises.count(t))
            v.witnesses.push_back({point(t), "SignalOpen fires only where SafeToOpen becomes true", "fires"});
        if (!empties.count(t))
            v.witnesses.push_back({point(t), "some TrackStatus becomes empty", "fires without a departure"});
    }
    return finish(v);
}

std::vector<Rational> dir_sets(const Run& run, const Value& to)
{
    std::vector<Rational> out;
    for (const auto& bp : run.trajectory(kDir).breakpoints())
        if (bp.at != bp.right && bp.right == to)
            out.push_back(bp.time);
    return out;
}

Verdict uninterrupted_closing(const Context& c)
{
    Verdict v{"Uninterrupted Closing", Status::Pass, "", {}};
    const auto& dir = c.run.trajectory(kDir);
    for (const auto& a : dir_sets(c.run, kClose))
        if (auto w = require_value(dir, Interval::open(a, std::min(Rational(a + c.params.dclose), c.run.horizon)), kClose))
            v.witnesses.push_back(*w);
    return finish(v);
}

Verdict uninterrupted_opening(const Context& c)
{
    Verdict v{"Uninterrupted Opening", Status::Pass, "", {}};
    const auto& dir = c.run.trajectory(kDir);
    if (c.wt >= c.params.dopen) {
        for (const auto& a : dir_sets(c.run, kOpen))
            if (auto w = require_value(dir, Interval::open(a, std::min(Rational(a + c.params.dopen), c.run.horizon)), kOpen))
                v.witnesses.push_back(*w);
        return finish(v);
    }
    // Interruptions are allowed, but only by SignalClose at some t1 + WT.
    std::set<Rational> close_moments;
    for (const auto& track : c.pattern.tracks)
        for (const auto& p : track)
            close_moments.insert(p.detected + c.wt);
    std::size_t interrupted = 0;
    const auto closes = dir_sets(c.run, kClose);
    for (const auto& a : dir_sets(c.run, kOpen)) {
        auto next = std::upper_bound(closes.begin(), closes.end(), a);
        if (next == closes.end() || *next >= a + c.params.dopen)
            continue;
        ++interrupted;
        if (!close_moments.count(*next))
            v.witnesses.push_back({point(*next), "interruption only by SignalClose", "Dir set to close"});
    }
    v = finish(v);
    if (v.status == Status::Pass) {
        v.status = Status::Skipped;
        v.reason = "WT < dopen; " + std::to_string(interrupted) +
                   " interrupted opening(s), each caused by SignalClose";
    }
    return v;
}

Verdict dir_gate_corollary(const Context& c)
{
    Verdict v{"Dir and GateStatus Corollary", Status::Pass, "", {}};
    if (!simple_regime(c.params)) {
        v.status = Status::Skipped;
        v.reason = "dmin < dclose + dopen";
        return v;
    }
    const auto gamma = dir_changes(c.run);
    std::vector<Rational> delta;
    for (const auto& bp : c.run.trajectory(kGateStatus).breakpoints())
        if (bp.at != bp.right)
            delta.push_back(bp.time);
    for (std::size_t i = 0; i < gamma.size(); ++i) {
        const Rational hi = i + 1 < gamma.size() ? gamma[i + 1] : c.run.horizon;
        const Interval window = Interval::open(gamma[i], hi);
        if (i >= delta.size()) {
            const Rational bound = i % 2 == 0 ? c.params.dclose : c.params.dopen;
            if (i + 1 == gamma.size() && c.run.horizon - gamma[i] <= bound)
                continue; // the gate may still move after the horizon
            v.witnesses.push_back({window, "a GateStatus change", "none"});
            break;
        }
        if (!window.contains(delta[i])) {
            v.witnesses.push_back({point(delta[i]), "GateStatus change in " + window.to_string(), "outside"});
            break;
        }
    }
    if (v.witnesses.empty() && delta.size() > gamma.size())
        v.witnesses.push_back({point(delta[gamma.size()]), "no further GateStatus change", "change"});
    return finish(v);
}

} // namespace

std::vector<Verdict> check_lemmas(const Run& run)
{
    const Context c = context(run);
    return {deadline_lemma(c),         three_rules(c),      local_safe_lemma(c),
            global_safe_lemma(c),      dir_lemma(c),        signal_open_corollary(c),
            uninterrupted_closing(c), uninterrupted_opening(c), dir_gate_corollary(c)};
}

std::vector<Verdict> check_all(const Run& run)
{
    std::vector<Verdict> out{check_safety(run), check_liveness(run)};
    auto lemmas = check_lemmas(run);
    out.insert(out.end(), lemmas.begin(), lemmas.end());
    return out;
}

TightnessWitness tightness_witness(int part, const Params& params, const Rational& c)
{
    if (part != 1 && part != 2)
        throw Error(ErrorCode::BadParams, "tightness part must be 1 or 2, got " + std::to_string(part));
    params.validate();
    const Rational big = params.big_dclose();
    if (part == 1 && !(c > 0 && c < params.dopen))
        throw Error(ErrorCode::NoWitness, "c = " + q(c) + " is not in (0, dopen) = (0, " + q(params.dopen) +
                                              "); the liveness bound holds with this constant");
    if (part == 2 && !(c > 0 && c < big))
        throw Error(ErrorCode::NoWitness, "c = " + q(c) + " is not in (0, Dclose) = (0, " + q(big) +
                                              "); the liveness bound holds with this constant");

    // Fixed moments 100 and 110 must dominate the delays; scale only if they do not.
    const Rational largest = std::max(params.dopen, big);
    const Rational unit = largest < 100 ? Rational(1)
                                          : Rational(Integer(boost::multiprecision::numerator(largest) /
                                                             boost::multiprecision::denominator(largest)) /
                                                         100 +
                                                     1);
    const Rational t1 = 100 * unit;
    const Rational t2 = t1 + params.dmax;
    const Rational t3 = 110 * unit + params.dmax;
    const Rational horizon = t3 + params.dmax + params.dopen + big + unit;
    TrainPattern pattern{{{{t1, t2, t3}}}};
    const auto q_run = build_controller_run(pattern, params, horizon);

    Rational delay;
    GateDelays delays;
    if (part == 1) {
        delay = (c + params.dopen) / 2;
        delays = {params.dclose / 2, delay};
    } else {
        delay = Rational(std::min(params.dclose, Rational(big - c)) / 2);
        delays = {delay, params.dopen / 2};
    }
    Run run = extend_with_gate(q_run, delays);
    Verdict strengthened = part == 1 ? check_liveness(run, c, big) : check_liveness(run, params.dopen, c);
    strengthened.name = part == 1 ? "Liveness with dopen replaced by " + q(c)
                                  : "Liveness with Dclose replaced by " + q(c);
    return {std::move(run), unit, delay, std::move(strengthened)};
}

} // namespace rtasm::crossing
