#include "memgne/harness.hpp"

#include <doctest.h>

#include <set>
#include <sstream>

using namespace memgne;

namespace {

Preset small_preset()
{
    Preset p;
    p.N = 2;
    p.T = 2;
    p.strategies = {{1, 2}, {1, 2}};
    p.L = 10;
    return p;
}

// First seed whose compare run, with the given oracle perturbation, diverges.
std::optional<Divergence> first_fault(const OracleOptions& perturbed)
{
    for (std::uint64_t seed = 1; seed <= 40; ++seed) {
        auto g = sample_experiment(seed, small_preset());
        g.L = 4;
        const auto diff = compare_engines(g, perturbed);
        if (!diff.agree()) return diff.first;
    }
    return std::nullopt;
}

} // namespace

TEST_CASE("SplitMix64 reference stream")
{
    SplitMix64 rng(0);
    CHECK(rng.next() == 0xE220A8397B1DCDAFULL);
    CHECK(rng.next() == 0x6E789E6AA1B965F4ULL);
    CHECK(rng.next() == 0x06C45D188009454FULL);
    SplitMix64 a(42), b(42);
    for (int i = 0; i < 100; ++i) {
        const double u = a.uniform();
        CHECK(u == b.uniform());
        CHECK(u >= 0.0);
        CHECK(u < 1.0);
    }
}

TEST_CASE("sampler stays in range and is reproducible")
{
    const Preset p;
    std::set<std::vector<double>> distinct;
    for (std::uint64_t seed = 1; seed <= 100; ++seed) {
        const auto g = sample_experiment(seed);
        CHECK(validate_game(g).empty());
        CHECK(g == sample_experiment(seed));
        for (double d : g.D_diag) CHECK((d >= p.D.lo && d <= p.D.hi));
        for (double j : g.Jbar) CHECK((j >= p.Jbar.lo && j <= p.Jbar.hi));
        for (const auto& row : g.alpha)
            for (double a : row) CHECK((a >= p.alpha.lo && a <= p.alpha.hi));
        for (const auto& row : g.beta)
            for (double b : row) CHECK((b >= p.beta.lo && b <= p.beta.hi));
        for (double m : g.mass) CHECK((m >= p.mass.lo && m <= p.mass.hi));
        for (double d : g.D_diag) CHECK(std::abs(d * 1e4 - std::round(d * 1e4)) < 1e-6);
        distinct.insert(g.D_diag);
    }
    CHECK(distinct.size() == 100);
}

TEST_CASE("trajectory CSV")
{
    auto g = sample_experiment(3, small_preset());
    g.L = 2;
    const auto run = simulate(g);
    const std::string csv = trajectory_csv(run.trajectory);
    std::istringstream in(csv);
    std::string line;
    std::getline(in, line);
    CHECK(line == "loop,k,i,l,count,err_k");
    std::getline(in, line);
    CHECK(line == "0,1,1,1,50,0");
    std::size_t rows = 0;
    while (std::getline(in, line)) ++rows;
    CHECK(rows + 1 == 3 * 4);
    CHECK(trajectory_csv(simulate(g).trajectory) == csv);

    g.L = 0;
    const auto empty = run_gne(g);
    CHECK(empty.ok());
    CHECK(empty.steps == 0);
    CHECK(trajectory_csv(empty.trajectory) == "loop,k,i,l,count,err_k\n0,1,1,1,50,0\n0,1,2,2,50,0\n0,2,1,3,50,0\n0,2,2,4,50,0\n");
}

TEST_CASE("multiplication runs")
{
    const auto zero = run_mult(0, 9);
    CHECK(zero.product == 0);
    CHECK(zero.steps == 5);
    CHECK(zero.steps_ok());
    const auto one = run_mult(1, 9);
    CHECK(one.product == 9);
    CHECK(one.steps == 7);
    const auto r = run_mult(37, 21);
    CHECK(r.product == 777);
    CHECK(r.steps <= 37);
    CHECK(r.steps_ok());
    CHECK(mult_step_bound(37) == 37);
    CHECK(mult_step_bound(64) == 37);
    CHECK(mult_step_bound(65) == 43);
}

TEST_CASE("P system and oracle agree on a two-player instance")
{
    const auto g = sample_experiment(5, small_preset());
    const auto run = run_gne(g);
    CHECK(run.ok());
    const auto diff = diff_runs(run, simulate(g));
    CHECK(diff.loops == 10);
    CHECK(diff.agree());
    CHECK(diff.text().empty());
    REQUIRE(run.stages.loops.size() == 10);
    for (std::size_t n = 1; n < run.stages.loops.size(); ++n)
        CHECK(run.stages.loops[n].exit_out > run.stages.loops[n - 1].exit_out);
}

TEST_CASE("L = 0 agrees trivially")
{
    auto g = sample_experiment(2, small_preset());
    g.L = 0;
    const auto diff = compare_engines(g);
    CHECK(diff.agree());
    CHECK(diff.loops == 0);
}

TEST_CASE("a perturbed oracle is localized to the perturbed stage")
{
    const auto sum = first_fault(OracleOptions{50, 0, 0});
    REQUIRE(sum);
    CHECK(sum->stage == 2);
    const auto product = first_fault(OracleOptions{0, 50, 0});
    REQUIRE(product);
    CHECK(product->stage == 4);
    const auto update = first_fault(OracleOptions{0, 0, 50});
    REQUIRE(update);
    CHECK(update->stage == 5);
    CHECK_FALSE(update->symbol.empty());
}
