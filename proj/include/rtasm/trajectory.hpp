#pragma once

#include "rtasm/value.hpp"

#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace rtasm {

enum class Side { At, Plus, Minus };

/// Interval of time with independently open/closed ends.
struct Interval {
    Rational lo;
    Rational hi;
    bool lo_closed = false;
    bool hi_closed = false;

    static Interval open(Rational lo, Rational hi) { return {std::move(lo), std::move(hi), false, false}; }
    static Interval closed(Rational lo, Rational hi) { return {std::move(lo), std::move(hi), true, true}; }
    static Interval left_open(Rational lo, Rational hi) { return {std::move(lo), std::move(hi), false, true}; }
    static Interval right_open(Rational lo, Rational hi) { return {std::move(lo), std::move(hi), true, false}; }

    bool contains(const Rational& t) const;
    bool empty() const;
    Rational length() const { return hi - lo; }

    std::string to_string() const;
    friend bool operator==(const Interval&, const Interval&) = default;
};

/// Piecewise-constant function over [0, horizon]. Each breakpoint stores the value at the
/// breakpoint and the value on the open stretch up to the next breakpoint (or through the
/// horizon). Canonical form keeps only breakpoints where something changes, plus 0.
class Trajectory {
public:
    struct Breakpoint {
        Rational time;
        Value at;
        Value right;
        friend bool operator==(const Breakpoint&, const Breakpoint&) = default;
    };

    Trajectory() = default;
    Trajectory(Rational horizon, Value initial);

    /// Builds from raw breakpoints (strictly increasing, starting at 0) and canonicalizes.
    /// Throws Error(InvalidRun) on malformed input.
    static Trajectory from_breakpoints(Rational horizon, std::vector<Breakpoint> points);

    const Rational& horizon() const { return horizon_; }
    const std::vector<Breakpoint>& breakpoints() const { return points_; }

    /// Throws Error(OutOfHorizon) for t outside [0, horizon], or Minus at 0.
    Value value_at(const Rational& t, Side side) const;
    Value at(const Rational& t) const { return value_at(t, Side::At); }
    Value plus(const Rational& t) const { return value_at(t, Side::Plus); }
    Value minus(const Rational& t) const { return value_at(t, Side::Minus); }

    /// Overwrites the function on `interval` (clipped to [0, horizon]).
    void assign(const Interval& interval, const Value& v);
    void assign_point(const Rational& t, const Value& v) { assign(Interval::closed(t, t), v); }

    /// Positive breakpoints (moments where the value at t differs from t- or t+).
    std::vector<Rational> change_moments() const;

    /// The function as alternating point and open-stretch pieces, in time order.
    std::vector<std::pair<Interval, Value>> pieces() const;

    /// Maximal sets (as intervals) on which the function equals v.
    std::vector<Interval> intervals_where(const Value& v) const;

    /// First sub-interval of `window` on which the value differs from v, if any.
    std::optional<Interval> first_violation(const Interval& window, const Value& v) const;

    void canonicalize();
    bool is_canonical() const;

    friend bool operator==(const Trajectory&, const Trajectory&) = default;

private:
    std::size_t index_at_or_before(const Rational& t) const;
    void split_at(const Rational& t);

    Rational horizon_{0};
    std::vector<Breakpoint> points_;
};

/// Samples a function of time into a trajectory. `f` is evaluated at every candidate point
/// and once inside every open gap between consecutive candidates; callers must supply
/// candidates such that f is constant on each gap. 0 and the horizon are always candidates.
template <class F>
Trajectory sample(const Rational& horizon, std::vector<Rational> candidates, F&& f);

} // namespace rtasm

#include "rtasm/trajectory_impl.hpp"
