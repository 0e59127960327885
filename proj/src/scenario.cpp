#include "rtasm/scenario.hpp"

#include "rtasm/error.hpp"

#include "json.hpp"

namespace rtasm::crossing {

using nlohmann::json;

namespace {

[[noreturn]] void bad(const std::string& path, const std::string& message)
{
    throw Error(ErrorCode::ParseError, path + ": " + message);
}

json parse_json(std::string_view text)
{
    try {
        return json::parse(text);
    } catch (const json::parse_error& e) {
        throw Error(ErrorCode::ParseError, "byte " + std::to_string(e.byte) + ": malformed JSON");
    }
}

const json& field(const json& obj, const std::string& key, const std::string& path)
{
    if (!obj.is_object())
        bad(path.empty() ? "/" : path, "expected an object");
    auto it = obj.find(key);
    if (it == obj.end())
        bad(path + "/" + key, "missing");
    return *it;
}

Rational rational_at(const json& j, const std::string& path)
{
    if (!j.is_string())
        bad(path, "expected a rational as a string");
    try {
        return parse_rational(j.get<std::string>());
    } catch (const Error& e) {
        bad(path, "malformed rational \"" + j.get<std::string>() + "\"");
    }
}

Params params_at(const json& j, const std::string& path)
{
    return Params{rational_at(field(j, "dclose", path), path + "/dclose"),
                  rational_at(field(j, "dopen", path), path + "/dopen"),
                  rational_at(field(j, "dmin", path), path + "/dmin"),
                  rational_at(field(j, "dmax", path), path + "/dmax")};
}

json params_json(const Params& p)
{
    return {{"dclose", format_rational(p.dclose)},
            {"dopen", format_rational(p.dopen)},
            {"dmin", format_rational(p.dmin)},
            {"dmax", format_rational(p.dmax)}};
}

TrainPattern pattern_at(const json& j, const std::string& path)
{
    if (!j.is_array())
        bad(path, "expected a list of tracks");
    TrainPattern pattern;
    for (std::size_t x = 0; x < j.size(); ++x) {
        const std::string tp = path + "/" + std::to_string(x);
        if (!j[x].is_array())
            bad(tp, "expected a list of passages");
        std::vector<Passage> passages;
        for (std::size_t i = 0; i < j[x].size(); ++i) {
            const std::string pp = tp + "/" + std::to_string(i);
            const auto& triple = j[x][i];
            if (!triple.is_array() || triple.size() != 3)
                bad(pp, "expected [detected, entered, exited]");
            passages.push_back({rational_at(triple[0], pp + "/0"), rational_at(triple[1], pp + "/1"),
                                rational_at(triple[2], pp + "/2")});
        }
        pattern.tracks.push_back(std::move(passages));
    }
    return pattern;
}

json pattern_json(const TrainPattern& pattern)
{
    json tracks = json::array();
    for (const auto& track : pattern.tracks) {
        json passages = json::array();
        for (const auto& p : track)
            passages.push_back({format_rational(p.detected), format_rational(p.entered), format_rational(p.exited)});
        tracks.push_back(std::move(passages));
    }
    return tracks;
}

/// Builds with input errors reported as validation failures.
Run build_validated(const Scenario& s)
{
    try {
        s.params.validate();
    } catch (const Error& e) {
        throw Error(ErrorCode::ValidationError, std::string("params: ") + e.what());
    }
    if (auto problems = validate_pattern(s.pattern, s.params); !problems.empty())
        throw Error(ErrorCode::ValidationError, "Train Motion (" + problems.front().clause + "): " +
                                                    problems.front().message);
    try {
        const auto q = build_controller_run(s.pattern, s.params, s.horizon);
        return extend_with_gate(q, choose_delays(q, s.delays));
    } catch (const Error& e) {
        if (e.code() == ErrorCode::HorizonTooSmall)
            throw Error(ErrorCode::ValidationError, std::string("horizon: ") + e.what());
        if (e.code() == ErrorCode::BadDelays)
            throw Error(ErrorCode::ValidationError, std::string("Gate Timing: ") + e.what());
        throw;
    }
}

} // namespace

Scenario load_scenario(std::string_view text)
{
    const json j = parse_json(text);
    Scenario s;
    s.params = params_at(field(j, "params", ""), "/params");
    s.horizon = rational_at(field(j, "horizon", ""), "/horizon");
    s.pattern = pattern_at(field(j, "tracks", ""), "/tracks");
    if (auto it = j.find("gate_delays"); it != j.end()) {
        if (it->is_string()) {
            try {
                s.delays = DelayPolicy::parse(it->get<std::string>());
            } catch (const Error& e) {
                bad("/gate_delays", e.what());
            }
        } else if (it->is_array()) {
            GateDelays values;
            for (std::size_t i = 0; i < it->size(); ++i)
                values.push_back(rational_at((*it)[i], "/gate_delays/" + std::to_string(i)));
            s.delays = DelayPolicy::explicit_values(std::move(values));
        } else {
            bad("/gate_delays", "expected \"auto\", \"seed:N\" or a list of rationals");
        }
    }
    build_validated(s);
    return s;
}

std::string dump_scenario(const Scenario& s)
{
    json j{{"params", params_json(s.params)},
           {"horizon", format_rational(s.horizon)},
           {"tracks", pattern_json(s.pattern)}};
    if (s.delays.kind == DelayPolicy::Kind::Explicit) {
        json values = json::array();
        for (const auto& a : s.delays.values)
            values.push_back(format_rational(a));
        j["gate_delays"] = std::move(values);
    } else {
        j["gate_delays"] = s.delays.to_string();
    }
    return j.dump(2) + "\n";
}

Run build_scenario(const Scenario& scenario) { return build_validated(scenario); }

namespace {

std::vector<Location> dynamic_locations(std::size_t tracks)
{
    std::vector<Location> locs{kDir, kGateStatus};
    for (const auto& x : track_names(tracks)) {
        locs.push_back(deadline(x));
        locs.push_back(track_status(x));
    }
    return locs;
}

} // namespace

std::string emit_trace(const Run& run, const std::vector<Verdict>* verdicts)
{
    json moments = json::array();
    for (const auto& m : significant_moments(run)) {
        json at = json::object(), plus = json::object();
        for (const auto& [loc, traj] : run.trajectories) {
            at[loc.to_string()] = traj.at(m.time).to_string();
            plus[loc.to_string()] = traj.plus(m.time).to_string();
        }
        moments.push_back({{"time", format_rational(m.time)},
                           {"kind", std::string(to_string(m.kind))},
                           {"agents", m.agents},
                           {"at", std::move(at)},
                           {"plus", std::move(plus)}});
    }
    json marks = json::array();
    for (const auto& t : run.gate_marks)
        marks.push_back(format_rational(t));

    json tracks;
    try {
        tracks = pattern_json(pattern_of(run));
    } catch (const Error&) {
        tracks = json::array();
        for (std::size_t i = 0; i < tracks_of(run).size(); ++i)
            tracks.push_back(json::array());
    }
    json j{{"params", params_json(params_of(run))},
           {"horizon", format_rational(run.horizon)},
           {"tracks", std::move(tracks)},
           {"gate_marks", std::move(marks)},
           {"moments", std::move(moments)}};
    if (verdicts) {
        json vs = json::array();
        for (const auto& v : *verdicts) {
            json ws = json::array();
            for (const auto& w : v.witnesses)
                ws.push_back({{"where", w.where.to_string()}, {"expected", w.expected}, {"observed", w.observed}});
            vs.push_back({{"name", v.name},
                          {"status", std::string(to_string(v.status))},
                          {"reason", v.reason},
                          {"witnesses", std::move(ws)}});
        }
        j["verdicts"] = std::move(vs);
    }
    return j.dump(2) + "\n";
}

Run parse_trace(std::string_view text)
{
    const json j = parse_json(text);
    const Params params = params_at(field(j, "params", ""), "/params");
    const Rational horizon = rational_at(field(j, "horizon", ""), "/horizon");
    const json& tracks = field(j, "tracks", "");
    if (!tracks.is_array() || tracks.empty())
        bad("/tracks", "expected a nonempty list of tracks");
    State statics = [&] {
        try {
            return static_state(params, tracks.size());
        } catch (const Error& e) {
            bad("/params", e.what());
        }
    }();
    const json& moments = field(j, "moments", "");
    if (!moments.is_array() || moments.empty())
        bad("/moments", "expected a nonempty list");

    const auto locs = dynamic_locations(tracks.size());
    std::map<Location, std::vector<Trajectory::Breakpoint>> points;
    for (std::size_t i = 0; i < moments.size(); ++i) {
        const std::string path = "/moments/" + std::to_string(i);
        const Rational t = rational_at(field(moments[i], "time", path), path + "/time");
        const json& at = field(moments[i], "at", path);
        const json& plus = field(moments[i], "plus", path);
        if (at.size() != locs.size() || plus.size() != locs.size())
            bad(path, "snapshots must list exactly the " + std::to_string(locs.size()) + " dynamic locations");
        for (const auto& loc : locs) {
            const std::string key = loc.to_string();
            const json& a = field(at, key, path + "/at");
            const json& p = field(plus, key, path + "/plus");
            if (!a.is_string() || !p.is_string())
                bad(path, key + ": expected string values");
            points[loc].push_back({t, Value::parse(a.get<std::string>()), Value::parse(p.get<std::string>())});
        }
    }

    Run run{crossing_program(), std::move(statics), {}, horizon, {}};
    try {
        for (auto& [loc, pts] : points)
            run.trajectories.emplace(loc, Trajectory::from_breakpoints(horizon, std::move(pts)));
    } catch (const Error& e) {
        bad("/moments", e.what());
    }
    if (auto it = j.find("gate_marks"); it != j.end() && it->is_array())
        for (std::size_t i = 0; i < it->size(); ++i)
            run.gate_marks.insert(rational_at((*it)[i], "/gate_marks/" + std::to_string(i)));
    return run;
}

namespace {

/// Uniform integer in [lo, hi]; modulo reduction keeps the stream identical everywhere.
long long pick(std::mt19937_64& rng, long long lo, long long hi)
{
    return lo + static_cast<long long>(rng() % static_cast<std::uint64_t>(hi - lo + 1));
}

Rational quarters(long long k) { return Rational(k, 4); }

} // namespace

Scenario random_scenario(std::mt19937_64& rng, std::size_t max_tracks, const Rational& horizon)
{
    if (max_tracks == 0)
        throw Error(ErrorCode::BadParams, "at least one track is required");
    if (horizon <= 12)
        throw Error(ErrorCode::BadParams, "fuzz horizon must exceed 12, got " + format_rational(horizon));
    Scenario s;
    s.horizon = horizon;
    s.params.dclose = quarters(pick(rng, 1, 8));
    s.params.dopen = quarters(pick(rng, 1, 8));
    s.params.dmin = s.params.dclose + quarters(pick(rng, 1, 12));
    s.params.dmax = s.params.dmin + quarters(pick(rng, 0, 12));

    const Rational limit = horizon - s.params.dmax - s.params.dopen - 1;
    const auto tracks = static_cast<std::size_t>(pick(rng, 1, static_cast<long long>(max_tracks)));
    for (std::size_t x = 0; x < tracks; ++x) {
        std::vector<Passage> passages;
        const auto trains = pick(rng, 0, 6);
        Rational t = 0;
        for (long long k = 0; k < trains; ++k) {
            const Rational t1 = t + quarters(pick(rng, 1, 40));
            const Rational t2 = t1 + s.params.dmin + (s.params.dmax - s.params.dmin) * Rational(pick(rng, 0, 8), 8);
            const Rational t3 = t2 + quarters(pick(rng, 1, 20));
            if (t3 > limit)
                break;
            passages.push_back({t1, t2, t3});
            t = t3;
        }
        s.pattern.tracks.push_back(std::move(passages));
    }
    s.delays = {DelayPolicy::Kind::Seeded, {}, rng()};
    return s;
}

std::vector<Scenario> fuzz_corpus(std::uint64_t seed, std::size_t count, std::size_t max_tracks,
                                  const Rational& horizon)
{
    std::mt19937_64 rng(seed);
    std::vector<Scenario> out;
    out.reserve(count);
    for (std::size_t i = 0; i < count; ++i)
        out.push_back(random_scenario(rng, max_tracks, horizon));
    return out;
}

} // namespace rtasm::crossing
