#include "memgne/harness.hpp"
#include "memgne/pspec.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

using namespace memgne;

namespace {

struct Common {
    std::string spec;
    std::uint64_t seed = 1;
    int loops = -1;
    std::string engine = "psystem";
    std::string out;
    bool trace = false;
    bool strict = false;
};

bool ends_with(const std::string& s, std::string_view suffix)
{
    return s.size() >= suffix.size() && s.compare(s.size() - suffix.size(), suffix.size(), suffix) == 0;
}

std::string read_file(const std::string& path)
{
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_file(const std::string& path, const std::string& text)
{
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write " + path);
    out << text;
}

GameSpec game_of(const Common& c)
{
    GameSpec g = c.spec.empty() ? sample_experiment(c.seed) : load_game(c.spec);
    if (c.loops >= 0) g.L = c.loops;
    return g;
}

std::string residual_table(const OracleRun& run, const GameSpec& spec)
{
    std::ostringstream os;
    os << "loop,count_residual,gne_residual\n";
    for (std::size_t t = 0; t < run.trajectory.states.size(); ++t) {
        os << t << ',';
        if (t < run.loops.size())
            os << count_residual(run.loops[t]);
        else
            os << '-';
        os << ',' << gne_residual(run.trajectory.states[t], spec) << '\n';
    }
    return os.str();
}

int cmd_build(const Common& c)
{
    const GameSpec g = game_of(c);
    const std::string text = pspec::serialize(build_gne_system(g));
    if (c.out.empty())
        std::cout << text;
    else
        write_file(c.out, text);
    return 0;
}

int run_pspec_file(const Common& c)
{
    Engine engine(pspec::parse(read_file(c.spec)), EngineOptions{c.strict});
    const std::size_t budget = c.loops > 0 ? static_cast<std::size_t>(c.loops) : 10000;
    auto result = engine.run(budget, true);
    std::ostringstream os;
    pspec::write_trace(os, result.trace, c.trace);
    os << "@final\n" << pspec::serialize_configuration(result.final_config);
    if (c.out.empty())
        std::cout << os.str();
    else
        write_file(c.out, os.str());
    std::cerr << result.steps << " steps, " << to_string(result.reason) << '\n';
    return result.reason == HaltReason::quiescent ? 0 : 1;
}

int cmd_run(const Common& c)
{
    if (ends_with(c.spec, ".pspec")) return run_pspec_file(c);
    const GameSpec g = game_of(c);
    const std::string prefix = c.out.empty() ? "run" : c.out;
    const bool ps = c.engine == "psystem" || c.engine == "both";
    const bool orc = c.engine == "oracle" || c.engine == "both";
    if (!ps && !orc) throw std::runtime_error("--engine must be psystem, oracle or both");
    int status = 0;

    std::optional<GneRun> run;
    std::optional<OracleRun> oracle;
    if (ps) {
        run = run_gne(g, GneRunOptions{c.strict, c.trace, 0});
        write_file(prefix + (orc ? ".psystem.csv" : ".csv"), trajectory_csv(run->trajectory));
        write_file(prefix + ".report.txt", stage_report_text(*run));
        if (c.trace) {
            std::ofstream t(prefix + ".trace.txt");
            pspec::write_trace(t, run->trace);
        }
        if (!run->ok()) {
            for (const auto& p : run->problems) std::cerr << "problem: " << p << '\n';
            status = 1;
        }
    }
    if (orc) {
        oracle = simulate(g);
        write_file(prefix + (ps ? ".oracle.csv" : ".csv"), trajectory_csv(oracle->trajectory));
    }
    if (ps && orc) {
        const auto diff = diff_runs(*run, *oracle);
        write_file(prefix + ".diff.txt", diff.text());
        if (!diff.agree()) {
            std::cerr << diff.text();
            status = 1;
        }
    }
    return status;
}

int cmd_oracle(const Common& c)
{
    const GameSpec g = game_of(c);
    const auto run = simulate(g);
    const std::string csv = trajectory_csv(run.trajectory);
    if (c.out.empty())
        std::cout << csv;
    else
        write_file(c.out, csv);
    std::cerr << residual_table(run, g);
    return 0;
}

int cmd_compare(const Common& c)
{
    const GameSpec g = game_of(c);
    const auto diff = compare_engines(g, {}, GneRunOptions{c.strict, false, 0});
    if (diff.agree()) {
        std::cout << "exact agreement over " << diff.loops << " loops\n";
        return 0;
    }
    std::cout << diff.text();
    return 1;
}

int cmd_mult(const Common& c, Count m, Count n)
{
    Trace trace;
    const auto rep = run_mult(m, n, c.trace ? &trace : nullptr);
    std::cout << rep.text() << '\n';
    if (c.trace) {
        if (c.out.empty())
            pspec::write_trace(std::cout, trace, true);
        else {
            std::ofstream t(c.out);
            pspec::write_trace(t, trace, true);
        }
    }
    return rep.product_ok() && rep.steps_ok() ? 0 : 1;
}

int cmd_experiment(const Common& c)
{
    const GameSpec g = game_of(c);
    const std::string prefix = c.out.empty() ? "experiment" : c.out;
    save_game(g, prefix + ".spec.json");
    const auto run = run_gne(g, GneRunOptions{c.strict, false, 0});
    const auto oracle = simulate(g);
    const auto diff = diff_runs(run, oracle);
    write_file(prefix + ".psystem.csv", trajectory_csv(run.trajectory));
    write_file(prefix + ".oracle.csv", trajectory_csv(oracle.trajectory));
    write_file(prefix + ".diff.txt", diff.text());
    write_file(prefix + ".report.txt", stage_report_text(run) + residual_table(oracle, g));
    std::cout << (diff.agree() ? "exact agreement" : "DIVERGENCE") << " over " << diff.loops << " loops; "
              << run.steps << " steps\n";
    return diff.agree() && run.ok() ? 0 : 1;
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Transition P system simulator for a population-game equilibrium model"};
    app.require_subcommand(1);
    Common c;

    auto game_flags = [&](CLI::App* sub) {
        sub->add_option("--spec", c.spec, "game JSON (or a .pspec file for run)");
        sub->add_option("--seed", c.seed, "sampler seed when no --spec is given");
        sub->add_option("--loops", c.loops, "number of outer loops (overrides the spec)");
        sub->add_option("--out", c.out, "output path or prefix");
        sub->add_flag("--strict", c.strict, "fail on ambiguous rule competition");
    };

    auto* build = app.add_subcommand("build", "write the GNE P system as .pspec text");
    game_flags(build);
    auto* run = app.add_subcommand("run", "run the P system and/or the oracle, write CSV trajectories");
    game_flags(run);
    run->add_option("--engine", c.engine, "psystem, oracle or both")->check(CLI::IsMember({"psystem", "oracle", "both"}));
    run->add_flag("--trace", c.trace, "also write the step trace");
    auto* oracle = app.add_subcommand("oracle", "run the integer oracle only");
    game_flags(oracle);
    auto* compare = app.add_subcommand("compare", "compare P system and oracle loop by loop");
    game_flags(compare);
    auto* experiment = app.add_subcommand("experiment", "sampled instance, both engines, reports");
    game_flags(experiment);
    auto* mult = app.add_subcommand("mult", "run the multiplication system");
    Count m = 0, n = 0;
    mult->add_option("m", m)->required()->check(CLI::NonNegativeNumber);
    mult->add_option("n", n)->required()->check(CLI::NonNegativeNumber);
    mult->add_flag("--trace", c.trace, "print the trace with snapshots");
    mult->add_option("--out", c.out, "trace output path");

    CLI11_PARSE(app, argc, argv);
    try {
        if (*build) return cmd_build(c);
        if (*run) return cmd_run(c);
        if (*oracle) return cmd_oracle(c);
        if (*compare) return cmd_compare(c);
        if (*experiment) return cmd_experiment(c);
        if (*mult) return cmd_mult(c, m, n);
    } catch (const pspec::PSpecError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    }
    return 0;
}
