#include "memgne/harness.hpp"
#include "memgne/pspec.hpp"

#include <CLI11.hpp>

#include <chrono>
#include <functional>
#include <iostream>
#include <sstream>

using namespace memgne;

namespace {

constexpr double kIdentityTol = 1e-12;
constexpr double kFactorTol = 1e-9;
constexpr std::size_t kLoopBound = 136;
constexpr std::size_t kPayoffStep = 8;
constexpr std::uint64_t kConvergenceSeed = 1;

struct Outcome {
    bool pass = true;
    std::string detail;
};

// Shared P-system runs of criteria 3 and 4; criterion 5 inspects their states.
struct Runs {
    std::vector<GneRun> preset;   // criterion 3
    std::vector<GneRun> compared; // criterion 4
    std::vector<OracleRun> oracle;
};

GameSpec preset_instance(std::uint64_t seed, int L)
{
    Preset p;
    p.L = L;
    return sample_experiment(seed, p);
}

Runs& loop_runs()
{
    static Runs runs = [] {
        Runs r;
        for (std::uint64_t seed = 1; seed <= 3; ++seed) r.preset.push_back(run_gne(preset_instance(seed, 3)));
        for (std::uint64_t seed = 1; seed <= 5; ++seed) {
            const auto g = preset_instance(seed, 10);
            r.compared.push_back(run_gne(g));
            r.oracle.push_back(simulate(g));
        }
        return r;
    }();
    return runs;
}

// Random game shape for the identity and round-trip checks.
GameSpec random_game(SplitMix64& rng, int L)
{
    Preset p;
    p.N = 1 + static_cast<int>(rng.next() % 3);
    p.T = 2 + static_cast<int>(rng.next() % 4);
    p.strategies.clear();
    for (int k = 0; k < p.N; ++k) {
        std::vector<int> slots;
        while (slots.size() < 2) {
            slots.clear();
            for (int t = 1; t <= p.T; ++t)
                if (rng.next() % 2) slots.push_back(t);
        }
        p.strategies.push_back(slots);
    }
    p.L = L;
    return sample_experiment(rng.next(), p);
}

Outcome mult_products()
{
    Outcome o;
    std::size_t wrong = 0;
    for (Count m = 0; m <= 100; ++m)
        for (Count n = 0; n <= 100; ++n) {
            const auto r = run_mult(m, n);
            if (!r.product_ok()) {
                if (!wrong++) o.detail = "first wrong product: " + r.text();
            }
        }
    o.pass = wrong == 0;
    if (o.pass) o.detail = "10201 products exact";
    return o;
}

Outcome mult_steps()
{
    Outcome o;
    std::size_t violations = 0;
    std::string examples;
    for (Count m = 0; m <= 100; ++m)
        for (Count n : {Count{7}, Count{100}}) {
            const auto r = run_mult(m, n);
            if (r.steps_ok()) continue;
            ++violations;
            if (n == 7 && violations <= 14) examples += " m=" + std::to_string(m) + ":" + std::to_string(r.steps) + ">" +
                                                       std::to_string(r.bound);
        }
    o.pass = violations == 0;
    o.detail = o.pass ? "all step counts within bound" : std::to_string(violations) + " violations;" + examples;
    return o;
}

Outcome loop_bound()
{
    Outcome o;
    std::size_t loops = 0, worst = 0;
    for (const auto& run : loop_runs().preset) {
        if (!run.ok()) {
            o.pass = false;
            o.detail = run.problems.front();
            return o;
        }
        for (const auto& t : run.stages.loops) {
            ++loops;
            const auto total = t.total();
            if (!total || *total > kLoopBound || !t.payoff_objects_at_8 || t.payoff_ready != t.start + kPayoffStep) {
                o.pass = false;
                o.detail = "loop " + std::to_string(t.loop) + " out of bound";
                return o;
            }
            worst = std::max(worst, *total);
        }
    }
    o.pass = loops == 9;
    o.detail = std::to_string(loops) + " loops, longest " + std::to_string(worst) + " steps";
    return o;
}

Outcome agreement()
{
    Outcome o;
    const auto& r = loop_runs();
    for (std::size_t i = 0; i < r.compared.size(); ++i) {
        const auto diff = diff_runs(r.compared[i], r.oracle[i]);
        if (!diff.agree() || diff.loops != 10 || !r.compared[i].ok()) {
            o.pass = false;
            o.detail = "seed " + std::to_string(i + 1) + ": " + diff.text();
            return o;
        }
    }
    o.detail = std::to_string(r.compared.size()) + " instances, 10 loops each, exact";
    return o;
}

Outcome conservation()
{
    Outcome o;
    const auto& r = loop_runs();
    std::size_t checked = 0;
    auto scan = [&](const GneRun& run, const GameSpec& g) {
        for (const auto& s : run.trajectory.states)
            for (std::size_t k = 0; k < s.z.size(); ++k) {
                if (s.err[k] != 0) continue;
                ++checked;
                if (s.total(k) != g.R_disc) o.pass = false;
            }
    };
    for (std::size_t i = 0; i < r.preset.size(); ++i) scan(r.preset[i], preset_instance(i + 1, 3));
    for (std::size_t i = 0; i < r.compared.size(); ++i) scan(r.compared[i], preset_instance(i + 1, 10));
    o.detail = std::to_string(checked) + " population states checked";
    return o;
}

Outcome convergence()
{
    Outcome o;
    const auto g = preset_instance(kConvergenceSeed, 20);
    const auto oracle = simulate(g);
    const auto run = run_gne(g);
    if (!diff_runs(run, oracle).agree()) {
        o.pass = false;
        o.detail = "P system and oracle disagree on the convergence run";
        return o;
    }
    std::optional<std::size_t> rest;
    for (std::size_t t = 0; t < oracle.loops.size(); ++t) {
        if (count_residual(oracle.loops[t]) != 0)
            rest.reset();
        else if (!rest)
            rest = t;
    }
    o.pass = rest.has_value();
    std::ostringstream os;
    if (rest)
        os << "count residual 0 from state " << *rest << " on; gne_residual there "
           << gne_residual(oracle.trajectory.states[*rest], g);
    else
        os << "count residual still nonzero at loop 20";
    o.detail = os.str();
    return o;
}

Outcome identities()
{
    Outcome o;
    SplitMix64 rng(2024);
    double worst_rate = 0, worst_excess = 0;
    for (int draw = 0; draw < 1000; ++draw) {
        const auto g = random_game(rng, 1);
        const auto n = static_cast<Eigen::Index>(g.strategy_count());
        Eigen::VectorXd z(n), p(n);
        Eigen::Index l = 0;
        for (const auto& s : g.strategies) {
            const Eigen::Index b = l;
            for (std::size_t i = 0; i < s.size(); ++i, ++l) {
                z(l) = 0.01 + rng.uniform();
                p(l) = 20 * rng.uniform() - 10;
            }
            z.segment(b, l - b) /= z.segment(b, l - b).sum();
        }
        const auto phat = excess_payoff(p, z, g);
        const auto rate = bnn_rate(phat, z, g);
        l = 0;
        for (const auto& s : g.strategies) {
            const auto m = static_cast<Eigen::Index>(s.size());
            worst_rate = std::max(worst_rate, std::abs(rate.segment(l, m).sum()));
            worst_excess = std::max(worst_excess, std::abs(z.segment(l, m).dot(phat.segment(l, m))));
            l += m;
        }
    }
    double worst_factor = 0;
    for (int spec = 0; spec < 100; ++spec) {
        const auto m = game_matrices(random_game(rng, 1));
        const double scale = std::max(1.0, m.CtDC.cwiseAbs().maxCoeff());
        worst_factor = std::max(worst_factor, (m.R.transpose() * m.R - m.CtDC).cwiseAbs().maxCoeff() / scale);
    }
    o.pass = worst_rate <= kIdentityTol && worst_excess <= kIdentityTol && worst_factor <= kFactorTol;
    std::ostringstream os;
    os << "max |sum zdot| " << worst_rate << ", max |z.phat| " << worst_excess << ", max factor error "
       << worst_factor;
    o.detail = os.str();
    return o;
}

Outcome determinism()
{
    Outcome o;
    const auto g = preset_instance(7, 3);
    const bool csv_same = trajectory_csv(run_gne(g).trajectory) == trajectory_csv(run_gne(g).trajectory) &&
                          trajectory_csv(simulate(g).trajectory) == trajectory_csv(simulate(g).trajectory) &&
                          trajectory_csv(run_gne(preset_instance(7, 3)).trajectory) ==
                              trajectory_csv(simulate(preset_instance(7, 3)).trajectory);
    std::size_t round_trips = 0, mismatches = 0;
    for (auto [m, n] : {std::pair<Count, Count>{0, 0}, {1, 5}, {37, 21}, {100, 100}}) {
        const auto sys = build_mult_system(m, n);
        ++round_trips;
        mismatches += !(pspec::parse(pspec::serialize(sys)) == sys);
    }
    SplitMix64 rng(99);
    for (int i = 0; i < 20; ++i) {
        const auto sys = build_gne_system(random_game(rng, 1 + static_cast<int>(rng.next() % 3)));
        ++round_trips;
        mismatches += !(pspec::parse(pspec::serialize(sys)) == sys);
    }
    o.pass = csv_same && mismatches == 0;
    o.detail = std::string(csv_same ? "CSVs byte-identical" : "CSV mismatch") + ", " +
               std::to_string(round_trips - mismatches) + "/" + std::to_string(round_trips) + " round-trips";
    return o;
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"acceptance suite"};
    int only = 0;
    app.add_option("--criterion", only, "run one criterion (1-8)")->check(CLI::Range(1, 8));
    CLI11_PARSE(app, argc, argv);

    const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria{
        {"multiplication products", mult_products},
        {"multiplication step counts", mult_steps},
        {"outer loop bound", loop_bound},
        {"engine-oracle agreement", agreement},
        {"conservation", conservation},
        {"convergence to a rest point", convergence},
        {"numerical identities", identities},
        {"determinism and round-trip", determinism},
    };
    bool all = true;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        if (only && static_cast<int>(i + 1) != only) continue;
        const auto t0 = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = criteria[i].second();
        } catch (const std::exception& e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        const std::chrono::duration<double> dt = std::chrono::steady_clock::now() - t0;
        all = all && o.pass;
        std::cout << "criterion " << i + 1 << " " << (o.pass ? "PASS" : "FAIL") << " " << criteria[i].first << ": "
                  << o.detail << " (" << dt.count() << " s)\n";
    }
    return all ? 0 : 1;
}
