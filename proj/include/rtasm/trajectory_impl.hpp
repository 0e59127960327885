#pragma once

#include <algorithm>

namespace rtasm {

template <class F>
Trajectory sample(const Rational& horizon, std::vector<Rational> candidates, F&& f)
{
    candidates.push_back(Rational(0));
    candidates.push_back(horizon);
    std::sort(candidates.begin(), candidates.end());
    candidates.erase(std::unique(candidates.begin(), candidates.end()), candidates.end());
    while (!candidates.empty() && candidates.back() > horizon)
        candidates.pop_back();
    candidates.erase(candidates.begin(), std::lower_bound(candidates.begin(), candidates.end(), Rational(0)));

    std::vector<Trajectory::Breakpoint> points;
    points.reserve(candidates.size());
    for (std::size_t i = 0; i < candidates.size(); ++i) {
        const Rational& t = candidates[i];
        Value at = f(t);
        Value right = i + 1 < candidates.size() ? f(Rational((t + candidates[i + 1]) / 2)) : at;
        points.push_back({t, std::move(at), std::move(right)});
    }
    return Trajectory::from_breakpoints(horizon, std::move(points));
}

} // namespace rtasm
