#include "oracle.hpp"

#include <optional>
#include <queue>
#include <set>
#include <sstream>

namespace oracle {

namespace {

std::string text(const Rational& q)
{
    auto num = boost::multiprecision::numerator(q);
    auto den = boost::multiprecision::denominator(q);
    return den == 1 ? num.str() : num.str() + "/" + den.str();
}

std::string deadline_text(const std::optional<Rational>& dl) { return dl ? text(*dl) : "infinity"; }

struct Recorder {
    std::map<std::string, std::vector<Change>> raw;

    void record(const std::string& loc, const Rational& t, std::string at, std::string right)
    {
        raw[loc].push_back({t, std::move(at), std::move(right)});
    }

    History finish() const
    {
        History h;
        for (const auto& [loc, points] : raw) {
            Timeline tl;
            tl.initial = points.front().at;
            std::string left = points.front().at;
            for (const auto& p : points) {
                if ((p.time > 0 && p.at != left) || p.at != p.right)
                    tl.changes.push_back(p);
                left = p.right;
            }
            h[loc] = std::move(tl);
        }
        return h;
    }
};

} // namespace

History simulate(const Input& in)
{
    const std::size_t n = in.tracks.size();
    const Rational wt = in.dmin - in.dclose;
    std::vector<std::string> names;
    for (std::size_t x = 0; x < n; ++x)
        names.push_back("trk" + std::to_string(x + 1));

    std::multimap<Rational, std::pair<std::size_t, std::string>> external;
    std::priority_queue<Rational, std::vector<Rational>, std::greater<>> queue;
    queue.push(Rational(0));
    for (std::size_t x = 0; x < n; ++x)
        for (const auto& p : in.tracks[x]) {
            external.insert({p[0], {x, "coming"}});
            external.insert({p[1], {x, "inCrossing"}});
            external.insert({p[2], {x, "empty"}});
            queue.push(p[0]);
            queue.push(p[1]);
            queue.push(p[2]);
        }

    std::vector<std::string> status(n, "empty");
    std::vector<std::optional<Rational>> dl(n);
    std::string dir = "open", gs = "opened";
    std::optional<Rational> gate_due;
    std::size_t dir_changes = 0;
    Recorder rec;

    std::optional<Rational> last;
    while (!queue.empty()) {
        const Rational t = queue.top();
        queue.pop();
        if (last && *last == t)
            continue;
        last = t;
        if (t > in.horizon)
            break;

        // The environment's changes are visible at t itself.
        for (auto [it, end] = external.equal_range(t); it != end; ++it)
            status[it->second.first] = it->second.second;

        // Gate: a due move happens if Dir still asks for it.
        std::string next_gs = gs;
        if (in.with_gate && gate_due && *gate_due == t) {
            const std::string wanted = dir == "open" ? "opened" : "closed";
            if (gs != wanted)
                next_gs = wanted;
            gate_due.reset();
        }

        // Controller: all guards read the state at t.
        auto next_dl = dl;
        std::set<std::string> dir_writes;
        for (std::size_t x = 0; x < n; ++x) {
            if (status[x] == "coming" && !dl[x]) {
                next_dl[x] = t + wt;
                queue.push(t + wt);
            }
            if (dl[x] && *dl[x] == t)
                dir_writes.insert("close");
            if (status[x] == "empty" && dl[x])
                next_dl[x].reset();
        }
        bool safe = true;
        for (std::size_t x = 0; x < n; ++x)
            safe = safe && (status[x] == "empty" || !dl[x] || t + in.dopen < *dl[x]);
        if (dir == "close" && safe)
            dir_writes.insert("open");
        std::string next_dir = dir;
        if (dir_writes.size() > 1)
            next_dl = dl; // clashing writes to Dir: the whole update set is void
        else if (dir_writes.size() == 1)
            next_dir = *dir_writes.begin();

        if (next_dir != dir) {
            ++dir_changes;
            gate_due.reset();
            const std::string wanted = next_dir == "open" ? "opened" : "closed";
            if (in.with_gate && next_gs != wanted && dir_changes <= in.delays.size()) {
                gate_due = t + in.delays[dir_changes - 1];
                queue.push(*gate_due);
            }
        }

        // Nothing is observable after the horizon.
        const bool end = t == in.horizon;
        rec.record("Dir", t, dir, end ? dir : next_dir);
        if (in.with_gate)
            rec.record("GateStatus", t, gs, end ? gs : next_gs);
        for (std::size_t x = 0; x < n; ++x) {
            rec.record("Deadline(" + names[x] + ")", t, deadline_text(dl[x]),
                       deadline_text(end ? dl[x] : next_dl[x]));
            rec.record("TrackStatus(" + names[x] + ")", t, status[x], status[x]);
        }
        dir = next_dir;
        gs = next_gs;
        dl = next_dl;
    }
    return rec.finish();
}

History history_of(const rtasm::Run& run)
{
    History h;
    for (const auto& [loc, traj] : run.trajectories) {
        const auto& points = traj.breakpoints();
        Timeline tl;
        tl.initial = points.front().at.to_string();
        for (std::size_t i = 0; i < points.size(); ++i) {
            const auto& p = points[i];
            const bool left_change = i > 0 && p.at != points[i - 1].right;
            if (left_change || p.at != p.right)
                tl.changes.push_back({p.time, p.at.to_string(), p.right.to_string()});
        }
        h[loc.to_string()] = std::move(tl);
    }
    return h;
}

std::string describe(const History& h)
{
    std::ostringstream os;
    for (const auto& [loc, tl] : h) {
        os << loc << ": " << tl.initial;
        for (const auto& c : tl.changes)
            os << " | " << text(c.time) << " " << c.at << " -> " << c.right;
        os << "\n";
    }
    return os.str();
}

Input input_of(const rtasm::crossing::TrainPattern& pattern, const rtasm::crossing::Params& params,
               const Rational& horizon)
{
    Input in{params.dclose, params.dopen, params.dmin, params.dmax, {}, horizon, false, {}};
    for (const auto& track : pattern.tracks) {
        in.tracks.emplace_back();
        for (const auto& p : track)
            in.tracks.back().push_back({p.detected, p.entered, p.exited});
    }
    return in;
}

} // namespace oracle
