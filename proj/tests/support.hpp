#pragma once

#include "rtasm/builder.hpp"
#include "rtasm/checker.hpp"
#include "rtasm/error.hpp"

#include <optional>

namespace testing {

using namespace rtasm;
using namespace rtasm::crossing;

inline Rational R(long long p, long long q = 1) { return Rational(p, q); }
inline Rational Q(const char* text) { return parse_rational(text); }

/// Error code thrown by f, or nullopt if it returns normally.
template <class F>
std::optional<ErrorCode> code_of(F&& f)
{
    try {
        f();
    } catch (const Error& e) {
        return e.code();
    }
    return std::nullopt;
}

inline Params worked_params() { return {1, 2, 4, 6}; }
inline TrainPattern worked_pattern() { return TrainPattern{{{{10, 15, 22}}}}; }

/// One track (10, 15, 22), params (1, 2, 4, 6), horizon 40, delays (1/2, 1).
inline Run worked_run()
{
    return build_run(worked_pattern(), worked_params(), 40, DelayPolicy::explicit_values({R(1, 2), R(1)}));
}

/// State of the crossing vocabulary with CT set.
inline State crossing_state(std::size_t tracks, const Rational& now)
{
    State s = initial_state(worked_params(), tracks);
    s.write(Location(kCurrentTime), Value(now));
    return s;
}

} // namespace testing
