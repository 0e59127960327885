#include "doctest.h"
#include "support.hpp"

using namespace testing;

namespace {

const Rule& gate_rule() { return crossing_program().at("Gate").rule; }
const Rule& controller_rule() { return crossing_program().at("Controller").rule; }

State with(State s, std::initializer_list<std::pair<Location, Value>> writes)
{
    for (const auto& [loc, v] : writes)
        s.write(loc, v);
    return s;
}

} // namespace

TEST_CASE("terms evaluate with CT, statics and variables")
{
    const State s = crossing_state(1, 10);
    CHECK(eval_term(s, {}, Term::apply("CT") + Term::apply("WaitTime")) == Value(13));
    CHECK(eval_term(s, {{"x", Value::atom("trk1")}}, Term::apply("Deadline", {Term::variable("x")})) ==
          Value::infinity());
    CHECK(code_of([&] { eval_term(s, {}, Term::variable("x")); }) == ErrorCode::UnboundVariable);
    CHECK(code_of([&] { eval_term(s, {}, Term::apply("Dir") + Term::constant(Value(1))); }) ==
          ErrorCode::TypeError);
}

TEST_CASE("guards: SafeToOpen and exact comparisons")
{
    CHECK(eval_guard(crossing_state(1, 0), {}, safe_to_open_guard()));

    const State deadline_now = with(crossing_state(1, 13), {{deadline("trk1"), Value(13)}});
    CHECK(eval_guard(deadline_now, {{"x", Value::atom("trk1")}},
                     Guard::of(eq(Term::apply("CT"), Term::apply("Deadline", {Term::variable("x")})))));

    const State coming = with(crossing_state(1, 12), {{track_status("trk1"), kComing}, {deadline("trk1"), Value(13)}});
    CHECK_FALSE(eval_guard(coming, {}, safe_to_open_guard()));
    // Direct check: 12 + 2 < 13 fails and the track is not empty.
    CHECK_FALSE(R(12) + R(2) < R(13));
}

TEST_CASE("collect_updates on the crossing modules")
{
    {
        State s = with(crossing_state(1, 10), {{track_status("trk1"), kComing}});
        CHECK(collect_updates(s, {}, controller_rule()) == UpdateSet{{deadline("trk1"), Value(13)}});
    }
    {
        State s = with(crossing_state(1, 0), {{kDir, kClose}});
        CHECK(collect_updates(s, {}, gate_rule()) == UpdateSet{{kGateStatus, kClosed}});
    }
    {
        State s = with(crossing_state(1, 22), {{deadline("trk1"), Value(13)}, {kDir, kClose}});
        CHECK(collect_updates(s, {}, controller_rule()) ==
              UpdateSet{{deadline("trk1"), Value::infinity()}, {kDir, kOpen}});
    }
    CHECK(collect_updates(crossing_state(1, 0), {}, controller_rule()).empty());
    {
        State s = with(crossing_state(1, 0), {{kGateStatus, kClosed}});
        CHECK(collect_updates(s, {}, gate_rule()) == UpdateSet{{kGateStatus, kOpened}});
    }
}

TEST_CASE("enabledness requires a consistent set with a nontrivial update")
{
    CHECK_FALSE(enabled(crossing_state(1, 0), gate_rule()));

    State s = with(crossing_state(1, 13), {{deadline("trk1"), Value(13)}, {track_status("trk1"), kComing}});
    CHECK(enabled(s, controller_rule()));

    const Rule clash = Rule::block({Rule::update("Dir", {}, Term::constant(kClose)),
                                    Rule::update("Dir", {}, Term::constant(kOpen))});
    CHECK_FALSE(enabled(crossing_state(1, 0), clash));
}

TEST_CASE("parser builds the expected trees")
{
    CHECK(parse_rule("if Dir = open then GateStatus := opened endif") ==
          Rule::when(Guard::of(eq(Term::apply("Dir"), Term::apply("open"))),
                     Rule::update("GateStatus", {}, Term::apply("opened"))));

    const Rule clear = parse_rule("var x ranges over Tracks if TrackStatus(x) = empty and Deadline(x) < infinity "
                                  "then Deadline(x) := infinity endif endvar");
    REQUIRE(clear.kind == Rule::Kind::VarRange);
    CHECK(clear.variable == "x");
    CHECK(clear.universe == "Tracks");
    REQUIRE(clear.body.size() == 1);
    CHECK(clear.body[0].kind == Rule::Kind::Conditional);
    CHECK(clear.body[0].guard.kind == Guard::Kind::And);

    CHECK(code_of([] { parse_rule("GateStatus :="); }) == ErrorCode::SyntaxError);
    CHECK(code_of([] { parse_rule("if Dir = open then endif"); }) == ErrorCode::SyntaxError);
    CHECK(code_of([] { parse_guard("Dir = "); }) == ErrorCode::SyntaxError);
}

TEST_CASE("printing and parsing round-trip the crossing program")
{
    for (const Module& m : crossing_program().modules)
        CHECK(parse_rule(to_string(m.rule)) == m.rule);
}

TEST_CASE("program well-formedness checks")
{
    auto vocabulary = crossing_vocabulary(1);
    CHECK_NOTHROW(check_program(crossing_program(), *vocabulary));
    Program bad_head{{{"M", parse_rule("TrackStatus(trk1) := empty")}}};
    CHECK(code_of([&] { check_program(bad_head, *vocabulary); }).has_value());
    Program bad_arity{{{"M", parse_rule("Deadline := 3")}}};
    CHECK(code_of([&] { check_program(bad_arity, *vocabulary); }) == ErrorCode::ArityMismatch);
    Program free_var{{{"M", Rule::update("Deadline", {Term::variable("x")}, Term::constant(Value(3)))}}};
    CHECK(code_of([&] { check_program(free_var, *vocabulary); }) == ErrorCode::UnboundVariable);
    // Outside a var rule an identifier is a nullary symbol.
    Program unknown{{{"M", parse_rule("Deadline(x) := 3")}}};
    CHECK(code_of([&] { check_program(unknown, *vocabulary); }) == ErrorCode::UnknownSymbol);
}

TEST_CASE("CT-critical points of the controller are where guards flip")
{
    State s = with(crossing_state(1, 0), {{deadline("trk1"), Value(13)}, {track_status("trk1"), kComing}});
    const auto points = ct_critical_points(s, controller_rule());
    // SignalClose flips at CT = 13, SafeToOpen where CT + dopen reaches 13.
    CHECK(std::find(points.begin(), points.end(), R(13)) != points.end());
    CHECK(std::find(points.begin(), points.end(), R(11)) != points.end());
}
