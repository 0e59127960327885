#include "rtasm/trajectory.hpp"

#include "rtasm/error.hpp"

#include <sstream>

namespace rtasm {

bool Interval::contains(const Rational& t) const
{
    const bool above = lo_closed ? t >= lo : t > lo;
    const bool below = hi_closed ? t <= hi : t < hi;
    return above && below;
}

bool Interval::empty() const
{
    if (lo < hi)
        return false;
    return !(lo == hi && lo_closed && hi_closed);
}

std::string Interval::to_string() const
{
    std::ostringstream os;
    if (lo == hi && lo_closed && hi_closed)
        return format_rational(lo);
    os << (lo_closed ? '[' : '(') << format_rational(lo) << ", " << format_rational(hi) << (hi_closed ? ']' : ')');
    return os.str();
}

namespace {

std::optional<Interval> intersect(const Interval& a, const Interval& b)
{
    Interval r;
    if (a.lo > b.lo || (a.lo == b.lo && !a.lo_closed)) {
        r.lo = a.lo;
        r.lo_closed = a.lo_closed;
    } else {
        r.lo = b.lo;
        r.lo_closed = b.lo_closed;
    }
    if (a.hi < b.hi || (a.hi == b.hi && !a.hi_closed)) {
        r.hi = a.hi;
        r.hi_closed = a.hi_closed;
    } else {
        r.hi = b.hi;
        r.hi_closed = b.hi_closed;
    }
    if (r.empty())
        return std::nullopt;
    return r;
}

} // namespace

Trajectory::Trajectory(Rational horizon, Value initial) : horizon_(std::move(horizon))
{
    if (horizon_ <= 0)
        throw Error(ErrorCode::InvalidRun, "horizon must be positive");
    points_.push_back({Rational(0), initial, initial});
}

Trajectory Trajectory::from_breakpoints(Rational horizon, std::vector<Breakpoint> points)
{
    if (horizon <= 0)
        throw Error(ErrorCode::InvalidRun, "horizon must be positive");
    if (points.empty() || points.front().time != 0)
        throw Error(ErrorCode::InvalidRun, "a trajectory must start with a breakpoint at 0");
    for (std::size_t i = 1; i < points.size(); ++i)
        if (!(points[i - 1].time < points[i].time))
            throw Error(ErrorCode::InvalidRun, "breakpoints must be strictly increasing");
    if (points.back().time > horizon)
        throw Error(ErrorCode::InvalidRun, "breakpoint beyond the horizon");
    Trajectory t;
    t.horizon_ = std::move(horizon);
    t.points_ = std::move(points);
    t.canonicalize();
    return t;
}

std::size_t Trajectory::index_at_or_before(const Rational& t) const
{
    auto it = std::upper_bound(points_.begin(), points_.end(), t,
                               [](const Rational& x, const Breakpoint& b) { return x < b.time; });
    return static_cast<std::size_t>(it - points_.begin()) - 1;
}

Value Trajectory::value_at(const Rational& t, Side side) const
{
    if (t < 0 || t > horizon_ || (side == Side::Minus && t == 0))
        throw Error(ErrorCode::OutOfHorizon, "moment " + format_rational(t) + " outside [0, " +
                                                 format_rational(horizon_) + "]" +
                                                 (side == Side::Minus ? " (left limit)" : ""));
    const auto i = index_at_or_before(t);
    const auto& bp = points_[i];
    if (bp.time != t)
        return bp.right;
    switch (side) {
    case Side::At: return bp.at;
    case Side::Plus: return bp.right;
    case Side::Minus: return points_[i - 1].right;
    }
    return bp.at;
}

void Trajectory::split_at(const Rational& t)
{
    const auto i = index_at_or_before(t);
    if (points_[i].time == t)
        return;
    const Value v = points_[i].right;
    points_.insert(points_.begin() + static_cast<std::ptrdiff_t>(i + 1), Breakpoint{t, v, v});
}

void Trajectory::assign(const Interval& interval, const Value& v)
{
    Interval clipped = interval;
    if (clipped.lo < 0) {
        clipped.lo = 0;
        clipped.lo_closed = true;
    }
    if (clipped.hi > horizon_) {
        clipped.hi = horizon_;
        clipped.hi_closed = true;
    }
    if (clipped.empty())
        return;
    split_at(clipped.lo);
    split_at(clipped.hi);
    for (auto& bp : points_) {
        if (bp.time < clipped.lo || bp.time > clipped.hi)
            continue;
        if (clipped.contains(bp.time))
            bp.at = v;
        if (bp.time < clipped.hi || (bp.time == horizon_ && clipped.hi_closed))
            bp.right = v;
    }
    canonicalize();
}

void Trajectory::canonicalize()
{
    std::vector<Breakpoint> kept;
    kept.reserve(points_.size());
    for (auto& bp : points_) {
        if (!kept.empty() && bp.at == kept.back().right && bp.right == bp.at)
            continue;
        kept.push_back(std::move(bp));
    }
    points_ = std::move(kept);
}

bool Trajectory::is_canonical() const
{
    Trajectory copy = *this;
    copy.canonicalize();
    return copy.points_.size() == points_.size();
}

std::vector<Rational> Trajectory::change_moments() const
{
    std::vector<Rational> out;
    for (const auto& bp : points_)
        if (bp.time > 0)
            out.push_back(bp.time);
    return out;
}

std::vector<std::pair<Interval, Value>> Trajectory::pieces() const
{
    std::vector<std::pair<Interval, Value>> out;
    for (std::size_t i = 0; i < points_.size(); ++i) {
        const auto& bp = points_[i];
        out.emplace_back(Interval::closed(bp.time, bp.time), bp.at);
        if (i + 1 < points_.size())
            out.emplace_back(Interval::open(bp.time, points_[i + 1].time), bp.right);
        else if (bp.time < horizon_)
            out.emplace_back(Interval::left_open(bp.time, horizon_), bp.right);
    }
    return out;
}

std::vector<Interval> Trajectory::intervals_where(const Value& v) const
{
    std::vector<Interval> out;
    bool open_run = false;
    for (const auto& [piece, value] : pieces()) {
        if (value != v) {
            open_run = false;
            continue;
        }
        if (open_run) {
            out.back().hi = piece.hi;
            out.back().hi_closed = piece.hi_closed;
        } else {
            out.push_back(piece);
            open_run = true;
        }
    }
    return out;
}

std::optional<Interval> Trajectory::first_violation(const Interval& window, const Value& v) const
{
    for (const auto& [piece, value] : pieces()) {
        if (value == v)
            continue;
        if (auto overlap = intersect(piece, window))
            return overlap;
    }
    return std::nullopt;
}

} // namespace rtasm
