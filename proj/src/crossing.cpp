#include "rtasm/crossing.hpp"

#include "rtasm/error.hpp"

#include <algorithm>

namespace rtasm::crossing {

void Params::validate() const
{
    auto positive = [](const Rational& q, const char* name) {
        if (q <= 0)
            throw Error(ErrorCode::BadParams, std::string(name) + " must be positive, got " + format_rational(q));
    };
    positive(dclose, "dclose");
    positive(dopen, "dopen");
    positive(dmin, "dmin");
    positive(dmax, "dmax");
    if (!(dclose < dmin))
        throw Error(ErrorCode::BadParams, "dclose < dmin violated: dclose = " + format_rational(dclose) +
                                              ", dmin = " + format_rational(dmin));
    if (!(dmin <= dmax))
        throw Error(ErrorCode::BadParams,
                    "dmin <= dmax violated: dmin = " + format_rational(dmin) + ", dmax = " + format_rational(dmax));
}

Rational TrainPattern::last_moment() const
{
    Rational last = 0;
    for (const auto& track : tracks)
        if (!track.empty())
            last = std::max(last, track.back().exited);
    return last;
}

std::vector<Rational> TrainPattern::moments() const
{
    std::vector<Rational> out;
    for (const auto& track : tracks)
        for (const auto& p : track) {
            out.push_back(p.detected);
            out.push_back(p.entered);
            out.push_back(p.exited);
        }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

std::string track_name(std::size_t index) { return "trk" + std::to_string(index + 1); }

std::vector<std::string> track_names(std::size_t count)
{
    std::vector<std::string> names;
    for (std::size_t i = 0; i < count; ++i)
        names.push_back(track_name(i));
    return names;
}

std::vector<PatternViolation> validate_pattern(const TrainPattern& pattern, const Params& params)
{
    std::vector<PatternViolation> out;
    if (pattern.tracks.empty())
        out.push_back({0, std::nullopt, "tracks", "the set of tracks must be nonempty"});
    for (std::size_t x = 0; x < pattern.tracks.size(); ++x) {
        const auto& passages = pattern.tracks[x];
        for (std::size_t i = 0; i < passages.size(); ++i) {
            const auto& p = passages[i];
            auto report = [&](std::string clause, std::string message) {
                out.push_back({x, i, std::move(clause), track_name(x) + " passage " + std::to_string(i + 1) + ": " +
                                                             std::move(message)});
            };
            if (i == 0 && !(p.detected > 0))
                report("initially-empty", "first detection " + format_rational(p.detected) +
                                              " must be after 0 (the track is empty initially)");
            if (!(p.detected < p.entered && p.entered < p.exited))
                report("order", "moments must increase: " + format_rational(p.detected) + " < " +
                                    format_rational(p.entered) + " < " + format_rational(p.exited));
            const Rational approach = p.entered - p.detected;
            if (approach < params.dmin)
                report("dmin", "t2 - t1 = " + format_rational(approach) + " < dmin = " + format_rational(params.dmin));
            if (approach > params.dmax)
                report("dmax", "t2 - t1 = " + format_rational(approach) + " > dmax = " + format_rational(params.dmax));
            if (i + 1 < passages.size() && !(p.exited < passages[i + 1].detected))
                report("overlap", "next detection " + format_rational(passages[i + 1].detected) +
                                      " must follow the previous exit " + format_rational(p.exited));
        }
    }
    return out;
}

std::shared_ptr<const Vocabulary> crossing_vocabulary(std::size_t tracks)
{
    auto v = std::make_shared<Vocabulary>();
    v->add({"Dir", 0, false, SymbolClass::Internal});
    v->add({"GateStatus", 0, false, SymbolClass::Internal});
    v->add({"Deadline", 1, false, SymbolClass::Internal});
    v->add({"TrackStatus", 1, false, SymbolClass::External});
    v->add({kCurrentTime, 0, false, SymbolClass::External});
    for (const char* name : {"dclose", "dopen", "dmin", "dmax", "WaitTime"})
        v->add({name, 0, false, SymbolClass::Static});
    for (const char* name : {"open", "close", "opened", "closed", "empty", "coming", "inCrossing"})
        v->add({name, 0, false, SymbolClass::Static});

    std::vector<Atom> track_atoms;
    for (const auto& name : track_names(tracks))
        track_atoms.push_back(Atom{name});
    v->add_universe("Tracks", std::move(track_atoms));
    v->add_universe("Directions", {Atom{"open"}, Atom{"close"}});
    v->add_universe("GateStatuses", {Atom{"opened"}, Atom{"closed"}});
    v->add_universe("TrackStatuses", {Atom{"empty"}, Atom{"coming"}, Atom{"inCrossing"}});
    return v;
}

std::set<std::string> reduct_u1() { return {"Dir", "Deadline", "TrackStatus"}; }
std::set<std::string> reduct_u0() { return {"TrackStatus"}; }

State static_state(const Params& params, std::size_t tracks)
{
    params.validate();
    if (tracks == 0)
        throw Error(ErrorCode::BadParams, "at least one track is required");
    State s(crossing_vocabulary(tracks));
    s.write(Location("dclose"), Value(params.dclose));
    s.write(Location("dopen"), Value(params.dopen));
    s.write(Location("dmin"), Value(params.dmin));
    s.write(Location("dmax"), Value(params.dmax));
    s.write(Location("WaitTime"), Value(params.wait_time()));
    for (const char* name : {"open", "close", "opened", "closed", "empty", "coming", "inCrossing"})
        s.write(Location(name), Value::atom(name));
    return s;
}

State initial_state(const Params& params, std::size_t tracks)
{
    State s = static_state(params, tracks);
    s.write(kDir, kOpen);
    s.write(kGateStatus, kOpened);
    for (const auto& name : track_names(tracks)) {
        s.write(track_status(name), kEmpty);
        s.write(deadline(name), Value::infinity());
    }
    s.write(Location(kCurrentTime), Value(0));
    return s;
}

namespace {

constexpr std::string_view kGateText = R"(
if Dir = open then GateStatus := opened endif
if Dir = close then GateStatus := closed endif
)";

constexpr std::string_view kControllerText = R"(
var x ranges over Tracks
  if TrackStatus(x) = coming and Deadline(x) = infinity then
    Deadline(x) := CT + WaitTime
  endif
  if CT = Deadline(x) then Dir := close endif
  if TrackStatus(x) = empty and Deadline(x) < infinity then
    Deadline(x) := infinity
  endif
endvar
if Dir = close and SafeToOpen then Dir := open endif
)";

constexpr std::string_view kSafeToOpenText =
    "forall x in Tracks (TrackStatus(x) = empty or CT + dopen < Deadline(x))";

} // namespace

std::string_view program_text(std::string_view module)
{
    if (module == "Gate")
        return kGateText;
    if (module == "Controller")
        return kControllerText;
    throw Error(ErrorCode::UnknownAgent, "no module named '" + std::string(module) + "'");
}

const Guard& safe_to_open_guard()
{
    static const Guard g = parse_guard(kSafeToOpenText);
    return g;
}

const GuardAbbreviations& abbreviations()
{
    static const GuardAbbreviations a = {{"SafeToOpen", safe_to_open_guard()}};
    return a;
}

const Program& crossing_program()
{
    static const Program p = [] {
        Program program;
        program.modules.push_back({"Gate", parse_rule(kGateText, abbreviations())});
        program.modules.push_back({"Controller", parse_rule(kControllerText, abbreviations())});
        check_program(program, *crossing_vocabulary(1));
        return program;
    }();
    return p;
}

Program controller_program()
{
    Program p;
    p.modules.push_back(crossing_program().at("Controller"));
    return p;
}

namespace {

const Rule& controller_constituent(std::size_t index)
{
    const auto& controller = crossing_program().at("Controller").rule;
    // Block[ VarRange(x, Tracks, Block[SD, SC, CD]), SO ]
    if (index < 3)
        return controller.body.at(0).body.at(0).body.at(index);
    return controller.body.at(1);
}

} // namespace

const Rule& signal_deadline_rule() { return controller_constituent(0); }
const Rule& signal_close_rule() { return controller_constituent(1); }
const Rule& clear_deadline_rule() { return controller_constituent(2); }
const Rule& signal_open_rule() { return controller_constituent(3); }

bool local_safe(const State& s, const std::string& track)
{
    if (s.read(track_status(track)) == kEmpty)
        return true;
    const ExtendedRational now = s.read(Location(kCurrentTime)).as_number();
    const ExtendedRational dopen = s.read(Location("dopen")).as_number();
    return now + dopen < s.read(deadline(track)).as_number();
}

bool safe_to_open(const State& s)
{
    const auto* tracks = s.vocabulary().universe("Tracks");
    if (!tracks)
        return true;
    return std::all_of(tracks->begin(), tracks->end(), [&](const Atom& x) { return local_safe(s, x.name); });
}

Trajectory track_status_trajectory(const std::vector<Passage>& passages, const Rational& horizon)
{
    Trajectory t(horizon, kEmpty);
    for (const auto& p : passages) {
        t.assign(Interval::right_open(p.detected, p.entered), kComing);
        t.assign(Interval::right_open(p.entered, p.exited), kInCrossing);
    }
    return t;
}

Params params_of(const Run& run)
{
    auto get = [&](const char* name) { return run.statics.read(Location(name)).as_number().finite(); };
    return Params{get("dclose"), get("dopen"), get("dmin"), get("dmax")};
}

std::vector<std::string> tracks_of(const Run& run)
{
    std::vector<std::string> names;
    if (const auto* u = run.statics.vocabulary().universe("Tracks"))
        for (const auto& a : *u)
            names.push_back(a.name);
    return names;
}

TrainPattern pattern_of(const Run& run)
{
    TrainPattern pattern;
    for (const auto& name : tracks_of(run)) {
        const auto& traj = run.trajectory(track_status(name));
        std::vector<Passage> passages;
        std::vector<Rational> cycle;
        Value expected_prev = kEmpty;
        if (traj.at(Rational(0)) != kEmpty)
            throw Error(ErrorCode::InvalidPattern, name + " is not empty initially");
        for (const auto& bp : traj.breakpoints()) {
            if (bp.at != bp.right)
                throw Error(ErrorCode::InvalidPattern,
                            name + " changes after " + format_rational(bp.time) + " instead of at the moment");
            if (bp.time == 0)
                continue;
            const Value& now = bp.at;
            const Value& next = expected_prev == kEmpty ? kComing : expected_prev == kComing ? kInCrossing : kEmpty;
            if (now != next)
                throw Error(ErrorCode::InvalidPattern, name + " becomes " + now.to_string() + " at " +
                                                           format_rational(bp.time) + ", expected " + next.to_string());
            cycle.push_back(bp.time);
            expected_prev = now;
            if (cycle.size() == 3) {
                passages.push_back({cycle[0], cycle[1], cycle[2]});
                cycle.clear();
            }
        }
        if (!cycle.empty())
            throw Error(ErrorCode::InvalidPattern, name + " ends in the middle of a passage");
        pattern.tracks.push_back(std::move(passages));
    }
    return pattern;
}

std::vector<RegularityViolation> regularity_violations(const Run& run)
{
    std::vector<RegularityViolation> out;
    auto at = [](const Rational& t) { return Interval::closed(t, t); };

    for (const auto& v : validate_run(run).violations)
        out.push_back({std::string("run-") + v.clause, at(v.time), v.message});

    const Params params = params_of(run);
    try {
        const auto pattern = pattern_of(run);
        for (const auto& v : validate_pattern(pattern, params)) {
            const auto& p = pattern.tracks[v.track][*v.passage];
            out.push_back({"train-motion", at(p.detected), v.message});
        }
    } catch (const Error& e) {
        out.push_back({"train-motion", at(Rational(0)), e.what()});
    }

    // Initial state.
    if (run.trajectory(kDir).at(Rational(0)) != kOpen)
        out.push_back({"initial-state", at(Rational(0)), "Dir must be open initially"});
    if (run.trajectory(kGateStatus).at(Rational(0)) != kOpened)
        out.push_back({"initial-state", at(Rational(0)), "GateStatus must be opened initially"});
    for (const auto& name : tracks_of(run))
        if (run.trajectory(deadline(name)).at(Rational(0)) != Value::infinity())
            out.push_back({"initial-state", at(Rational(0)), "Deadline(" + name + ") must be infinity initially"});

    const auto controller = agent_timing_report(run, "Controller");
    for (const auto& w : controller.immediacy_witnesses)
        out.push_back({"controller-timing", w, "Controller enabled without firing"});

    const auto gate = agent_timing_report(run, "Gate", std::max(params.dclose, params.dopen));
    for (const auto& w : gate.bound_witnesses)
        out.push_back({"gate-bounded", w, "Gate enabled without firing for the whole interval"});

    // Gate Timing: no (t, t+dclose) with Dir=close and GS=opened, no (t, t+dopen) with
    // Dir=open and GS=closed.
    const auto& dir = run.trajectory(kDir);
    const auto& gs = run.trajectory(kGateStatus);
    std::vector<Rational> cuts;
    for (const auto& bp : dir.breakpoints())
        cuts.push_back(bp.time);
    for (const auto& bp : gs.breakpoints())
        cuts.push_back(bp.time);
    auto lagging = [&](const Value& d, const Value& g) {
        return sample(run.horizon, cuts, [&](const Rational& t) { return Value(dir.at(t) == d && gs.at(t) == g); });
    };
    for (const auto& iv : lagging(kClose, kOpened).intervals_where(Value(true)))
        if (iv.length() >= params.dclose)
            out.push_back({"gate-timing", Interval::open(iv.lo, iv.lo + params.dclose),
                           "Dir = close and GateStatus = opened throughout an interval of length dclose"});
    for (const auto& iv : lagging(kOpen, kClosed).intervals_where(Value(true)))
        if (iv.length() >= params.dopen)
            out.push_back({"gate-timing", Interval::open(iv.lo, iv.lo + params.dopen),
                           "Dir = open and GateStatus = closed throughout an interval of length dopen"});
    return out;
}

} // namespace rtasm::crossing
