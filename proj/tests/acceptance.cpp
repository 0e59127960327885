// Acceptance runner: one PASS/FAIL line per criterion, exit status 1 if any fails.

#include "oracle.hpp"
#include "testkit.hpp"

#include "rtasm/error.hpp"
#include "rtasm/scenario.hpp"

#include <chrono>
#include <functional>
#include <iostream>
#include <sstream>

using namespace rtasm;
using namespace rtasm::crossing;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start)
{
    return std::chrono::duration<double>(Clock::now() - start).count();
}

struct Result {
    bool ok;
    std::string detail;
};

const std::uint64_t kSeed = 20260;
const std::size_t kCorpusSize = 1000;

const std::vector<Scenario>& corpus()
{
    static const std::vector<Scenario> scenarios = fuzz_corpus(kSeed, kCorpusSize, 4, 200);
    return scenarios;
}

const std::vector<Run>& corpus_runs()
{
    static const std::vector<Run> runs = [] {
        std::vector<Run> out;
        for (const auto& s : corpus())
            out.push_back(build_scenario(s));
        return out;
    }();
    return runs;
}

std::string regimes()
{
    std::size_t simple = 0;
    for (const auto& s : corpus())
        simple += simple_regime(s.params);
    return std::to_string(simple) + " with dmin >= dclose + dopen, " + std::to_string(corpus().size() - simple) +
           " without";
}

Result worked_scenario()
{
    const Params params{1, 2, 4, 6};
    const TrainPattern pattern{{{{10, 15, 22}}}};
    const GateDelays delays{Rational(1, 2), Rational(1)};

    const auto start = Clock::now();
    const Run run = build_run(pattern, params, 40, DelayPolicy::explicit_values(delays));
    const auto moments = significant_moments(run);
    const double elapsed = seconds_since(start);

    std::vector<Rational> times;
    for (const auto& m : moments)
        times.push_back(m.time);
    const std::vector<Rational> expected_times{0, 10, 13, Rational(27, 2), 15, 22, 23};
    if (times != expected_times)
        return {false, "significant moments differ"};

    oracle::Input in = oracle::input_of(pattern, params, 40);
    in.with_gate = true;
    in.delays = delays;
    const oracle::History expected = oracle::simulate(in);
    if (oracle::history_of(run) != expected)
        return {false, "engine differs from oracle:\n" + oracle::describe(expected)};

    // The oracle's own view must match the hand-derived segments.
    const std::vector<oracle::Change> dl{{10, "infinity", "13"}, {22, "13", "infinity"}};
    const std::vector<oracle::Change> dir{{13, "open", "close"}, {22, "close", "open"}};
    const std::vector<oracle::Change> gs{{Rational(27, 2), "opened", "closed"}, {23, "closed", "opened"}};
    if (expected.at("Deadline(trk1)").changes != dl || expected.at("Dir").changes != dir ||
        expected.at("GateStatus").changes != gs)
        return {false, "oracle differs from the hand simulation"};
    if (elapsed >= 0.1)
        return {false, "took " + std::to_string(elapsed) + " s"};
    return {true, "moments 0 10 13 27/2 15 22 23, segments match oracle, " + std::to_string(elapsed * 1000) + " ms"};
}

Result tightness_scenario()
{
    const Params params{1, 2, 4, 6};
    for (int part : {1, 2}) {
        const Rational c = part == 1 ? params.dopen / 2 : params.big_dclose() / 2;
        const TightnessWitness w = tightness_witness(part, params, c);
        const std::vector<Rational> expected{w.unit * 100 + params.wait_time(), w.unit * 110 + params.dmax};
        if (dir_changes(w.run) != expected)
            return {false, "part " + std::to_string(part) + ": Dir changes elsewhere"};
    }
    return {true, "Dir changes exactly at 103 and 116 in both witness runs"};
}

Result safety_suite()
{
    const auto start = Clock::now();
    std::size_t failures = 0;
    std::string first;
    for (std::size_t i = 0; i < corpus().size(); ++i) {
        const Verdict v = check_safety(build_scenario(corpus()[i]));
        if (v.failed() && failures++ == 0)
            first = "scenario " + std::to_string(i) + ": " + v.witnesses.front().where.to_string();
    }
    const double elapsed = seconds_since(start);
    if (failures)
        return {false, std::to_string(failures) + " failures, first " + first};
    if (elapsed >= 30)
        return {false, "took " + std::to_string(elapsed) + " s"};
    std::ostringstream os;
    os << corpus().size() << " scenarios (" << regimes() << "), " << elapsed << " s";
    return {true, os.str()};
}

Result liveness_suite()
{
    std::size_t failures = 0, indeterminate = 0;
    std::string first;
    for (std::size_t i = 0; i < corpus_runs().size(); ++i) {
        const Verdict v = check_liveness(corpus_runs()[i]);
        indeterminate += v.status == Status::Indeterminate;
        if (v.failed() && failures++ == 0)
            first = "scenario " + std::to_string(i) + ": " + v.witnesses.front().where.to_string();
    }
    if (failures)
        return {false, std::to_string(failures) + " failures, first " + first};
    return {true, std::to_string(corpus_runs().size()) + " scenarios, no failures (" + std::to_string(indeterminate) +
                      " with a horizon-clipped last interval)"};
}

Result tightness()
{
    const std::vector<Params> grid{{1, 2, 4, 6}, {Rational(1, 4), Rational(1, 2), 2, 3}, {1, 4, 4, 6}, {3, 1, 5, 5}};
    for (const Params& params : grid)
        for (int part : {1, 2}) {
            const Rational c = part == 1 ? params.dopen / 2 : params.big_dclose() / 2;
            const TightnessWitness w = tightness_witness(part, params, c);
            const bool plain = check_safety(w.run).status == Status::Pass &&
                               check_liveness(w.run).status == Status::Pass;
            if (!plain || !w.strengthened.failed())
                return {false, "part " + std::to_string(part) + " with dopen " + format_rational(params.dopen)};
        }
    return {true, "both parts on 4 parameter sets: theorems pass, strengthened liveness fails"};
}

Result uniqueness()
{
    for (std::size_t i = 0; i < corpus().size(); ++i) {
        const Scenario& s = corpus()[i];
        const ControllerRun q = build_controller_run(s.pattern, s.params, s.horizon);
        if (oracle::history_of(q.run) != oracle::simulate(oracle::input_of(s.pattern, s.params, s.horizon)))
            return {false, "scenario " + std::to_string(i) + " differs"};
    }
    return {true, std::to_string(corpus().size()) + " controller runs identical to the oracle"};
}

Result universality()
{
    std::size_t identity = 0;
    for (std::size_t i = 0; i < corpus().size(); ++i) {
        const Scenario& s = corpus()[i];
        const ControllerRun q = build_controller_run(s.pattern, s.params, s.horizon);
        const GateDelays delays = choose_delays(q, s.delays);
        const Run run = extend_with_gate(q, delays);
        const GateDelays recovered = recover_delays(run);
        if (simple_regime(s.params)) {
            if (recovered != delays)
                return {false, "scenario " + std::to_string(i) + ": delays not recovered"};
            ++identity;
        }
        const Run rebuilt = extend_with_gate(q, recovered);
        if (rebuilt.trajectories != run.trajectories || rebuilt.gate_marks != run.gate_marks)
            return {false, "scenario " + std::to_string(i) + ": rebuild differs"};
    }
    return {true, std::to_string(identity) + " identity round-trips, " + std::to_string(corpus().size()) +
                      " exact rebuilds"};
}

Result semantics()
{
    const std::vector<testkit::Outcome> outcomes{
        testkit::preservation_property(kSeed, 200),    testkit::immediate_agent_property(kSeed, 200),
        testkit::inconsistent_noop_property(kSeed, 200), testkit::trivial_updates_property(kSeed, 200),
        testkit::scenario_one_property(kSeed, 200),    testkit::scenario_two_property(kSeed, 200)};
    std::size_t cases = 0;
    for (const auto& o : outcomes) {
        if (!o.ok || o.cases < 200)
            return {false, o.name + ": " + o.detail};
        cases += o.cases;
    }
    return {true, "6 properties, " + std::to_string(cases) + " cases"};
}

Result mutations()
{
    const auto worked = testkit::worked_mutations();
    for (const auto& o : worked)
        if (!o.ok)
            return {false, o.name + ": " + o.detail};
    for (const auto& o : {testkit::gate_mutation_property(kSeed, 200), testkit::dir_mutation_property(kSeed, 200)})
        if (!o.ok)
            return {false, o.name + ": " + o.detail};
    return {true, std::to_string(worked.size()) + " targeted mutations and 400 generated ones detected at the mutated moment"};
}

} // namespace

int main()
{
    const std::vector<std::pair<std::string, std::function<Result()>>> criteria{
        {"worked scenario reproduction", worked_scenario},
        {"tightness scenario Dir changes", tightness_scenario},
        {"safety on the fuzz corpus", safety_suite},
        {"liveness on the fuzz corpus", liveness_suite},
        {"tightness witnesses", tightness},
        {"uniqueness of control", uniqueness},
        {"universality round-trip", universality},
        {"semantics properties", semantics},
        {"mutation sensitivity", mutations},
    };
    int failed = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        Result r{false, ""};
        try {
            r = criteria[i].second();
        } catch (const std::exception& e) {
            r = {false, std::string("exception: ") + e.what()};
        }
        std::cout << (r.ok ? "PASS" : "FAIL") << "  " << (i + 1) << ". " << criteria[i].first << ": " << r.detail
                  << std::endl;
        failed += !r.ok;
    }
    return failed ? 1 : 0;
}
