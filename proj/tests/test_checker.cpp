#include "doctest.h"
#include "support.hpp"

using namespace testing;

namespace {

const Verdict& by_name(const std::vector<Verdict>& vs, const std::string& name)
{
    for (const auto& v : vs)
        if (v.name == name)
            return v;
    FAIL("no verdict named " << name);
    return vs.front();
}

} // namespace

TEST_CASE("safety and liveness on the worked run")
{
    const Run run = worked_run();
    const Verdict safety = check_safety(run);
    CHECK(safety.status == Status::Pass);
    CHECK_FALSE(run.trajectory(kGateStatus).first_violation(Interval::closed(R(14), R(22)), kClosed));
    CHECK(check_liveness(run).status == Status::Pass);
    // Opened over [24, 37] inside the crossing-free stretch (22, 40).
    CHECK_FALSE(run.trajectory(kGateStatus).first_violation(Interval::closed(R(24), R(37)), kOpened));
}

TEST_CASE("safety violations are reported with a witness")
{
    Run run = worked_run();
    run.trajectories[kGateStatus].assign(Interval::open(R(16), R(17)), kOpened);
    const Verdict v = check_safety(run);
    CHECK(v.failed());
    REQUIRE_FALSE(v.witnesses.empty());
    CHECK(v.witnesses.front().moment() == R(16));
    CHECK(v.witnesses.front().expected.rfind("closed", 0) == 0);
}

TEST_CASE("quiet runs are safe and live")
{
    const Run quiet = build_run(TrainPattern{{{}, {}}}, worked_params(), 20);
    CHECK(check_safety(quiet).status == Status::Pass);
    CHECK(check_liveness(quiet).status == Status::Pass);
}

TEST_CASE("liveness has no obligation on short crossing-free stretches")
{
    // The stretch (22, 53/2) between two passages is shorter than dopen + Dclose.
    const TrainPattern p{{{{10, 15, 22}, {R(45, 2), R(53, 2), R(30)}}}};
    const Run run = build_run(p, worked_params(), 60);
    CHECK(check_liveness(run).status == Status::Pass);
    Run closed_between = run;
    closed_between.trajectories[kGateStatus].assign(Interval::open(R(22), R(53, 2)), kClosed);
    CHECK(check_liveness(closed_between).status == Status::Pass);
}

TEST_CASE("liveness violation after the last train")
{
    Run run = worked_run();
    run.trajectories[kGateStatus].assign(Interval::open(R(30), R(31)), kClosed);
    const Verdict v = check_liveness(run);
    CHECK(v.failed());
    REQUIRE_FALSE(v.witnesses.empty());
    CHECK(v.witnesses.front().moment() == R(30));
}

TEST_CASE("all lemmas hold on built runs")
{
    const Run run = worked_run();
    const auto lemmas = check_lemmas(run);
    CHECK(lemmas.size() == 9);
    for (const auto& v : lemmas) {
        INFO(v.name << ": " << v.reason);
        CHECK(v.status == Status::Pass);
    }
    CHECK(check_all(run).size() == 11);
    CHECK(run.trajectory(deadline("trk1")).first_violation(Interval::left_open(R(10), R(22)), Value(13)) ==
          std::nullopt);
}

TEST_CASE("lemmas outside the simple regime")
{
    const Params p{1, 4, 4, 6};
    const TrainPattern pattern{{{{10, 15, 22}}, {{22, 26, 28}}}};
    const Run run = build_run(pattern, p, 60, DelayPolicy::explicit_values({R(1, 2), R(7, 2), R(1, 2), R(1)}));
    const auto all = check_all(run);
    for (const auto& v : all) {
        INFO(v.name << ": " << v.reason);
        CHECK(v.status != Status::Fail);
    }
    CHECK(by_name(all, "Dir and GateStatus Corollary").status == Status::Skipped);
}

TEST_CASE("lemma violations point at the mutated moment")
{
    {
        Run run = worked_run();
        run.trajectories[kDir].assign(Interval::closed(R(66, 5), R(22)), kOpen);
        const auto lemmas = check_lemmas(run);
        const Verdict& v = by_name(lemmas, "Uninterrupted Closing");
        CHECK(v.failed());
        REQUIRE_FALSE(v.witnesses.empty());
        CHECK(v.witnesses.front().moment() == R(66, 5));
    }
    {
        Run run = worked_run();
        run.trajectories[deadline("trk1")].assign(Interval::left_open(R(10), R(22)), Value(14));
        const auto lemmas = check_lemmas(run);
        const Verdict& v = by_name(lemmas, "Deadline Lemma");
        CHECK(v.failed());
        REQUIRE_FALSE(v.witnesses.empty());
        CHECK(v.witnesses.front().moment() == R(10));
    }
}

TEST_CASE("structurally broken runs are rejected")
{
    Run run = worked_run();
    run.trajectories.erase(kGateStatus);
    CHECK(code_of([&] { check_safety(run); }) == ErrorCode::InvalidRun);
}

TEST_CASE("tightness witnesses")
{
    const Params p{R(1, 4), R(1, 2), R(2), R(3)};
    const Rational dmax = p.dmax;

    const TightnessWitness one = tightness_witness(1, p, R(1, 4));
    CHECK(one.delay > R(1, 4));
    CHECK(one.delay < R(1, 2));
    CHECK(check_safety(one.run).status == Status::Pass);
    CHECK(check_liveness(one.run).status == Status::Pass);
    CHECK(one.strengthened.failed());
    const Interval gap = Interval::open(110 + dmax + R(1, 4), 110 + dmax + one.delay);
    CHECK(one.run.trajectory(kGateStatus).first_violation(gap, kClosed) == std::nullopt);

    const TightnessWitness two = tightness_witness(2, p, R(1, 2));
    CHECK(two.strengthened.failed());
    CHECK(check_liveness(two.run).status == Status::Pass);
    REQUIRE_FALSE(two.strengthened.witnesses.empty());
    CHECK(two.strengthened.witnesses.front().where.hi <= 100 + dmax - R(1, 2));

    CHECK(code_of([&] { tightness_witness(1, p, p.dopen); }) == ErrorCode::NoWitness);
    CHECK(code_of([&] { tightness_witness(2, p, p.big_dclose()); }) == ErrorCode::NoWitness);
    CHECK(code_of([&] { tightness_witness(3, p, R(1, 4)); }) == ErrorCode::BadParams);
}
