#include "doctest.h"
#include "support.hpp"

using namespace testing;

TEST_CASE("trajectories: sides, assignment and canonical form")
{
    Trajectory tr(R(10), kOpen);
    tr.assign(Interval::left_open(R(3), R(5)), kClose);
    CHECK(tr.at(R(3)) == kOpen);
    CHECK(tr.plus(R(3)) == kClose);
    CHECK(tr.at(R(5)) == kClose);
    CHECK(tr.plus(R(5)) == kOpen);
    CHECK(tr.minus(R(3)) == kOpen);
    CHECK(tr.change_moments() == std::vector<Rational>{R(3), R(5)});
    CHECK(tr.is_canonical());

    tr.assign(Interval::left_open(R(3), R(5)), kOpen);
    CHECK(tr == Trajectory(R(10), kOpen));

    CHECK(code_of([&] { tr.at(R(11)); }) == ErrorCode::OutOfHorizon);
    CHECK(code_of([&] { tr.minus(R(0)); }) == ErrorCode::OutOfHorizon);
}

TEST_CASE("trajectories: intervals where a value holds and first violation")
{
    Trajectory tr(R(10), kOpened);
    tr.assign(Interval::left_open(R(2), R(4)), kClosed);
    tr.assign_point(R(7), kClosed);
    const auto closed = tr.intervals_where(kClosed);
    REQUIRE(closed.size() == 2);
    CHECK(closed[0] == Interval::left_open(R(2), R(4)));
    CHECK(closed[1] == Interval::closed(R(7), R(7)));

    auto v = tr.first_violation(Interval::closed(R(0), R(10)), kOpened);
    REQUIRE(v);
    CHECK(v->lo == R(2));
    CHECK_FALSE(tr.first_violation(Interval::open(R(4), R(7)), kOpened).has_value());
    CHECK(Interval::left_open(R(1), R(2)).to_string() == "(1, 2]");
}

TEST_CASE("sampling builds the canonical trajectory of a step function")
{
    auto tr = sample(R(10), {R(4)}, [](const Rational& t) { return Value(t > 4); });
    CHECK(tr.at(R(4)) == Value(false));
    CHECK(tr.plus(R(4)) == Value(true));
    CHECK(tr.breakpoints().size() == 2);
}

TEST_CASE("value_at on the worked run")
{
    const Run run = worked_run();
    CHECK(value_at(run, kDir, R(13), Side::At) == kOpen);
    CHECK(value_at(run, kDir, R(13), Side::Plus) == kClose);
    CHECK(value_at(run, track_status("trk1"), R(10), Side::Minus) == kEmpty);
    CHECK(value_at(run, track_status("trk1"), R(10), Side::At) == kComing);
    CHECK(value_at(run, Location(kCurrentTime), R(27, 2), Side::At) == Value(R(27, 2)));
    CHECK(value_at(run, Location("WaitTime"), R(5), Side::At) == Value(3));
}

TEST_CASE("significant moments of the worked run")
{
    const auto moments = significant_moments(worked_run());
    std::vector<Rational> times;
    for (const auto& m : moments)
        times.push_back(m.time);
    CHECK(times == std::vector<Rational>{R(0), R(10), R(13), R(27, 2), R(15), R(22), R(23)});

    auto find = [&](const Rational& t) {
        return *std::find_if(moments.begin(), moments.end(), [&](const auto& m) { return m.time == t; });
    };
    CHECK(find(R(15)).kind == MomentKind::External);
    CHECK(find(R(13)).kind == MomentKind::Internal);
    CHECK(find(R(27, 2)).agents == std::vector<std::string>{"Gate"});
    CHECK(find(R(22)).agents == std::vector<std::string>{"Controller"});
    CHECK(find(R(10)).agents == std::vector<std::string>{"Controller"});
    CHECK(find(R(15)).agents.empty());
}

TEST_CASE("significant moments: quiet and external-only runs")
{
    const Run quiet = build_run(TrainPattern{{{}}}, worked_params(), 40);
    const auto q = significant_moments(quiet);
    REQUIRE(q.size() == 1);
    CHECK(q[0].time == R(0));

    Run ext = quiet;
    ext.trajectories[track_status("trk1")].assign(Interval::closed(R(5), R(40)), kComing);
    const auto e = significant_moments(ext);
    REQUIRE(e.size() == 2);
    CHECK(e[1].time == R(5));
    CHECK(e[1].kind == MomentKind::External);
}

TEST_CASE("validate_run accepts built runs and flags unexplained changes")
{
    const Run run = worked_run();
    CHECK(validate_run(run).ok());

    Run external_moment = run;
    external_moment.trajectories[deadline("trk1")].assign(Interval::closed(R(15), R(22)), Value(14));
    auto report = validate_run(external_moment);
    REQUIRE_FALSE(report.ok());
    CHECK(report.violations.front().clause == 'b');
    CHECK(report.violations.front().time == R(15));

    Run after_moment = run;
    after_moment.trajectories[deadline("trk1")].assign(Interval::left_open(R(15), R(22)), Value(14));
    CHECK(validate_run(after_moment).violations.front().clause == 'a');

    // Dir changes at 13+ although the Controller's update set at R(13) is empty.
    Run early = run;
    early.trajectories[deadline("trk1")].assign(Interval::left_open(R(10), R(22)), Value(14));
    early.trajectories[deadline("trk1")].assign_point(R(10), Value::infinity());
    bool found_a_at_13 = false;
    for (const auto& v : validate_run(early).violations)
        found_a_at_13 |= v.clause == 'a' && v.time == R(13);
    CHECK(found_a_at_13);
}

TEST_CASE("agent timing: Controller immediate, Gate bounded, mutated Gate unbounded")
{
    const Run run = worked_run();
    const auto controller = agent_timing_report(run, "Controller");
    CHECK(controller.immediate);
    CHECK(controller.neighbour_witnesses.empty());

    const Run halves = build_run(worked_pattern(), worked_params(), 40,
                                 DelayPolicy::explicit_values({R(1, 2), R(1, 2)}));
    CHECK(agent_timing_report(halves, "Gate", R(1)).bounded);

    Run stuck = run;
    stuck.trajectories[kGateStatus] = Trajectory(R(40), kOpened);
    const auto gate = agent_timing_report(stuck, "Gate", R(1));
    CHECK_FALSE(gate.bounded);
    REQUIRE_FALSE(gate.bound_witnesses.empty());
    CHECK(gate.bound_witnesses.front().lo == R(13));
    CHECK(gate.bound_witnesses.front().hi >= R(14));

    CHECK(code_of([&] { agent_timing_report(run, "Train"); }) == ErrorCode::UnknownAgent);
}

TEST_CASE("signals of guards over a run")
{
    const Run run = worked_run();
    const auto s = safe_to_open_signal(run);
    CHECK(s.at(R(10)) == Value(true));
    CHECK(s.plus(R(10)) == Value(true));
    CHECK(s.minus(R(11)) == Value(true));
    CHECK(s.at(R(11)) == Value(false));
    CHECK(s.at(R(22)) == Value(true));
}
