#include "rtasm/scenario.hpp"

#include "rtasm/error.hpp"

#include "CLI11.hpp"

#include <fstream>
#include <sstream>

namespace rtasm::crossing {

namespace {

std::string read_file(const std::string& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw Error(ErrorCode::ParseError, path + ": cannot open");
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

void write_output(const std::string& path, const std::string& text, std::ostream& out)
{
    if (path.empty() || path == "-") {
        out << text;
        return;
    }
    std::ofstream file(path, std::ios::binary);
    if (!file)
        throw Error(ErrorCode::ParseError, path + ": cannot write");
    file << text;
}

void print(const Verdict& v, std::ostream& out)
{
    out << to_string(v.status) << "  " << v.name;
    if (!v.reason.empty())
        out << " (" << v.reason << ")";
    out << "\n";
    for (const auto& w : v.witnesses)
        out << "    at " << w.where.to_string() << ": expected " << w.expected << ", observed " << w.observed << "\n";
}

bool any_failed(const std::vector<Verdict>& vs)
{
    return std::any_of(vs.begin(), vs.end(), [](const Verdict& v) { return v.failed(); });
}

/// validate_run and the regularity conditions, as verdicts.
std::vector<Verdict> run_verdicts(const Run& run)
{
    Verdict validity{"Run conditions", Status::Pass, "", {}};
    for (const auto& v : validate_run(run).violations)
        validity.witnesses.push_back({Interval::closed(v.time, v.time), std::string("clause (") + v.clause + ")",
                                      v.message});
    Verdict regular{"Regularity", Status::Pass, "", {}};
    for (const auto& v : regularity_violations(run))
        regular.witnesses.push_back({v.where, v.clause, v.message});
    for (auto* v : {&validity, &regular})
        if (!v->witnesses.empty())
            v->status = Status::Fail;
    return {validity, regular};
}

std::vector<Verdict> selected(const Run& run, const std::string& properties)
{
    std::vector<Verdict> out;
    std::stringstream list(properties);
    std::string item;
    while (std::getline(list, item, ',')) {
        if (item == "all") {
            auto all = check_all(run);
            out.insert(out.end(), all.begin(), all.end());
        } else if (item == "safety") {
            out.push_back(check_safety(run));
        } else if (item == "liveness") {
            out.push_back(check_liveness(run));
        } else if (item == "lemmas") {
            auto lemmas = check_lemmas(run);
            out.insert(out.end(), lemmas.begin(), lemmas.end());
        } else {
            throw Error(ErrorCode::ParseError, "--properties: unknown property \"" + item +
                                                   "\" (expected safety, liveness, lemmas, all)");
        }
    }
    return out;
}

Params parse_params(const std::string& text)
{
    std::vector<Rational> values;
    std::stringstream list(text);
    std::string item;
    while (std::getline(list, item, ','))
        values.push_back(parse_rational(item));
    if (values.size() != 4)
        throw Error(ErrorCode::ParseError, "--params expects dclose,dopen,dmin,dmax");
    return {values[0], values[1], values[2], values[3]};
}

} // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err)
{
    CLI::App app{"Continuous-time ASM runs of the railroad crossing controller"};
    app.require_subcommand(1);

    std::string scenario_path, out_path, trace_path, properties = "all", horizon_text = "200",
                                                    params_text = "1,2,4,6", c_text;
    std::uint64_t seed = 0;
    std::size_t count = 100, tracks = 4;
    int part = 1;

    auto* simulate = app.add_subcommand("simulate", "Build the run of a scenario and write its trace");
    simulate->add_option("--scenario", scenario_path, "Scenario file")->required();
    simulate->add_option("--out", out_path, "Trace file (default: standard output)");

    auto* check = app.add_subcommand("check", "Build the run of a scenario and check properties");
    check->add_option("--scenario", scenario_path, "Scenario file")->required();
    check->add_option("--properties", properties, "Comma-separated: safety, liveness, lemmas, all");

    auto* fuzz = app.add_subcommand("fuzz", "Check random scenarios, stopping at the first failure");
    fuzz->add_option("--seed", seed, "Generator seed");
    fuzz->add_option("--count", count, "Number of scenarios");
    fuzz->add_option("--tracks", tracks, "Maximum number of tracks")->check(CLI::PositiveNumber);
    fuzz->add_option("--horizon", horizon_text, "Horizon of every run");

    auto* tight = app.add_subcommand("tightness", "Show that the liveness bound cannot be shortened");
    tight->add_option("--part", part, "1 shortens dopen, 2 shortens Dclose")->required();
    tight->add_option("--c", c_text, "The smaller constant")->required();
    tight->add_option("--params", params_text, "dclose,dopen,dmin,dmax");
    tight->add_option("--out", out_path, "Trace file for the witness run");

    auto* verify = app.add_subcommand("verify-trace", "Re-check a trace");
    verify->add_option("--trace", trace_path, "Trace file")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? 0 : 2;
    }

    try {
        if (simulate->parsed()) {
            const auto run = build_scenario(load_scenario(read_file(scenario_path)));
            write_output(out_path, emit_trace(run), out);
            return 0;
        }
        if (check->parsed()) {
            const auto run = build_scenario(load_scenario(read_file(scenario_path)));
            const auto verdicts = selected(run, properties);
            for (const auto& v : verdicts)
                print(v, out);
            return any_failed(verdicts) ? 1 : 0;
        }
        if (fuzz->parsed()) {
            const Rational horizon = parse_rational(horizon_text);
            std::size_t simple = 0;
            const auto corpus = fuzz_corpus(seed, count, tracks, horizon);
            for (std::size_t i = 0; i < corpus.size(); ++i) {
                const auto run = build_scenario(corpus[i]);
                auto verdicts = run_verdicts(run);
                auto checks = check_all(run);
                verdicts.insert(verdicts.end(), checks.begin(), checks.end());
                if (any_failed(verdicts)) {
                    out << "scenario " << i << " failed:\n" << dump_scenario(corpus[i]);
                    for (const auto& v : verdicts)
                        if (v.failed())
                            print(v, out);
                    return 1;
                }
                simple += simple_regime(corpus[i].params);
            }
            out << "fuzz seed " << seed << ": " << corpus.size() << " scenarios pass (" << simple
                << " with dmin >= dclose + dopen, " << corpus.size() - simple << " without)\n";
            return 0;
        }
        if (tight->parsed()) {
            const auto witness = tightness_witness(part, parse_params(params_text), parse_rational(c_text));
            const std::vector<Verdict> verdicts{check_safety(witness.run), check_liveness(witness.run),
                                                witness.strengthened};
            if (!out_path.empty())
                write_output(out_path, emit_trace(witness.run, &verdicts), out);
            out << "witness run: unit " << format_rational(witness.unit) << ", delay "
                << format_rational(witness.delay) << "\n";
            for (const auto& v : verdicts)
                print(v, out);
            const bool intended = !verdicts[0].failed() && !verdicts[1].failed() && witness.strengthened.failed();
            return intended ? 0 : 1;
        }
        if (verify->parsed()) {
            const auto run = parse_trace(read_file(trace_path));
            auto verdicts = run_verdicts(run);
            if (!any_failed(verdicts)) {
                auto checks = check_all(run);
                verdicts.insert(verdicts.end(), checks.begin(), checks.end());
            }
            for (const auto& v : verdicts)
                print(v, out);
            return any_failed(verdicts) ? 1 : 0;
        }
    } catch (const Error& e) {
        err << "error: " << e.what() << "\n";
        return e.code() == ErrorCode::InvalidRun ? 1 : 2;
    }
    return 2;
}

} // namespace rtasm::crossing
