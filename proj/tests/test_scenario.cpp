#include "doctest.h"
#include "support.hpp"

#include "json.hpp"
#include "rtasm/scenario.hpp"

#include <fstream>
#include <sstream>

using namespace testing;

namespace {

std::string slurp(const std::string& path)
{
    std::ifstream in(path);
    REQUIRE(in);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

std::string data(const std::string& name) { return std::string(RTASM_TEST_DATA) + "/" + name; }

struct CliResult {
    int code;
    std::string out;
    std::string err;
};

CliResult cli(std::vector<std::string> args)
{
    args.insert(args.begin(), "rtasm");
    std::vector<const char*> argv;
    for (const auto& a : args)
        argv.push_back(a.c_str());
    std::ostringstream out, err;
    const int code = run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
    return {code, out.str(), err.str()};
}

} // namespace

TEST_CASE("loading the worked scenario")
{
    const Scenario s = load_scenario(slurp(data("single.json")));
    CHECK(s.params == worked_params());
    CHECK(s.horizon == R(40));
    CHECK(s.pattern == worked_pattern());
    CHECK(s.delays.kind == DelayPolicy::Kind::Explicit);
    CHECK(s.delays.values == GateDelays{R(1, 2), R(1)});
    CHECK(load_scenario(dump_scenario(s)).pattern == s.pattern);
    CHECK(dump_scenario(load_scenario(dump_scenario(s))) == dump_scenario(s));
}

TEST_CASE("scenario input errors")
{
    auto message = [](const std::string& text) {
        try {
            load_scenario(text);
        } catch (const Error& e) {
            return std::pair{e.code(), std::string(e.what())};
        }
        return std::pair{ErrorCode::Unsupported, std::string()};
    };
    auto [code, what] = message(slurp(data("bad_dmin.json")));
    CHECK(code == ErrorCode::ValidationError);
    CHECK(what.find("dmin") != std::string::npos);

    std::string bad = slurp(data("single.json"));
    bad.replace(bad.find("\"40\""), 4, "\"1.2.3\"");
    CHECK(message(bad).first == ErrorCode::ParseError);
    CHECK(message("{\"params\":").first == ErrorCode::ParseError);
    CHECK(message("{}").first == ErrorCode::ParseError);

    std::string long_delay = slurp(data("single.json"));
    long_delay.replace(long_delay.find("\"1/2\""), 5, "\"1\"");
    CHECK(message(long_delay).first == ErrorCode::ValidationError);
}

TEST_CASE("traces list the significant moments and are deterministic")
{
    const Run run = build_scenario(load_scenario(slurp(data("single.json"))));
    const std::string trace = emit_trace(run);
    CHECK(trace == emit_trace(run));
    const auto j = nlohmann::json::parse(trace);
    std::vector<std::string> times;
    for (const auto& m : j.at("moments"))
        times.push_back(m.at("time").get<std::string>());
    CHECK(times == std::vector<std::string>{"0", "10", "13", "27/2", "15", "22", "23"});

    const Run back = parse_trace(trace);
    CHECK(back.trajectories == run.trajectories);

    const Run quiet = build_run(TrainPattern{{{}}}, worked_params(), 40);
    CHECK(nlohmann::json::parse(emit_trace(quiet)).at("moments").size() == 1);
}

TEST_CASE("trace with verdicts")
{
    const Run run = worked_run();
    const auto verdicts = check_all(run);
    const auto j = nlohmann::json::parse(emit_trace(run, &verdicts));
    CHECK(j.at("verdicts").size() == 11);
    CHECK(j.at("verdicts")[0].at("status") == "pass");
}

TEST_CASE("fuzz corpus is deterministic and valid")
{
    const auto a = fuzz_corpus(7, 20, 3, 80);
    const auto b = fuzz_corpus(7, 20, 3, 80);
    REQUIRE(a.size() == 20);
    for (std::size_t i = 0; i < a.size(); ++i) {
        CHECK(dump_scenario(a[i]) == dump_scenario(b[i]));
        CHECK(validate_pattern(a[i].pattern, a[i].params).empty());
        CHECK_NOTHROW(build_scenario(a[i]));
    }
}

TEST_CASE("command line: check, simulate, verify-trace")
{
    const auto check = cli({"check", "--scenario", data("single.json"), "--properties", "all"});
    CHECK(check.code == 0);
    CHECK(check.out.find("fail") == std::string::npos);

    const std::string trace_path = "cli_trace.json";
    CHECK(cli({"simulate", "--scenario", data("single.json"), "--out", trace_path}).code == 0);
    CHECK(cli({"verify-trace", "--trace", trace_path}).code == 0);

    const auto bad = cli({"check", "--scenario", data("bad_dmin.json")});
    CHECK(bad.code == 2);
    CHECK(bad.err.find("dmin") != std::string::npos);
}

TEST_CASE("command line: fuzz and tightness")
{
    const auto a = cli({"fuzz", "--seed", "42", "--count", "30", "--tracks", "3"});
    const auto b = cli({"fuzz", "--seed", "42", "--count", "30", "--tracks", "3"});
    CHECK(a.code == 0);
    CHECK(a.out == b.out);

    const auto out_of_range = cli({"tightness", "--part", "1", "--c", "2"});
    CHECK(out_of_range.code == 2);
    CHECK(out_of_range.err.find("NoWitness") != std::string::npos);
    CHECK(cli({"tightness", "--part", "2", "--c", "1"}).code == 0);
}
