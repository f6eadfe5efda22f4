#include "memgne/builder.hpp"

#include <doctest.h>

#include <cmath>
#include <functional>
#include <numeric>
#include <random>

using namespace memgne;

namespace {

GameSpec energy_market()
{
    GameSpec g;
    g.N = 3;
    g.T = 5;
    g.strategies = {{3, 5}, {1, 3, 5}, {1, 2, 4}};
    g.D_diag = {0.3712, 0.0841, 0.9034, 0.5521, 0.2276};
    g.Jbar = {2.1187, 3.6420, 2.9051, 3.3309, 2.4418};
    g.alpha = {{4.2291, 7.8812}, {1.5034, 9.1170, 6.0025}, {2.7716, 5.5531, 8.3342}};
    g.beta = {{0.1182, 0.7721}, {0.4410, 0.0935, 0.6612}, {0.3008, 0.8891, 0.5147}};
    g.mass = {3.2841, 3.9012, 3.5530};
    g.L = 1;
    return g;
}

GameSpec random_spec(std::mt19937_64& rng)
{
    std::uniform_real_distribution<double> u(0.0, 1.0);
    GameSpec g;
    g.N = 1 + static_cast<int>(rng() % 3);
    g.T = 2 + static_cast<int>(rng() % 4);
    for (int k = 0; k < g.N; ++k) {
        std::vector<int> slots(static_cast<std::size_t>(g.T));
        std::iota(slots.begin(), slots.end(), 1);
        std::shuffle(slots.begin(), slots.end(), rng);
        slots.resize(2 + rng() % static_cast<std::size_t>(g.T - 1));
        std::sort(slots.begin(), slots.end());
        g.strategies.push_back(slots);
        g.alpha.emplace_back();
        g.beta.emplace_back();
        for (std::size_t i = 0; i < slots.size(); ++i) {
            g.alpha.back().push_back(1 + 9 * u(rng));
            g.beta.back().push_back(u(rng));
        }
        g.mass.push_back(3 + u(rng));
    }
    for (int t = 0; t < g.T; ++t) {
        g.D_diag.push_back(u(rng));
        g.Jbar.push_back(2 + 2 * u(rng));
    }
    return g;
}

// Independent dense arithmetic: S_jl = [same player] (C^T D C)_jl + (C^T D C)_jl,
// with (C^T D C)_jl = D[slot_j] when both strategies use the same slot.
double s_entry(const GameSpec& g, const StrategyRef& j, const StrategyRef& l)
{
    const double shared = j.slot == l.slot ? g.D_diag[static_cast<std::size_t>(j.slot - 1)] : 0.0;
    return (j.k == l.k ? shared : 0.0) + shared;
}

} // namespace

TEST_CASE("validate_game")
{
    CHECK(validate_game(energy_market()).empty());
    auto g = energy_market();
    g.strategies[0] = {3};
    g.alpha[0] = {1};
    g.beta[0] = {1};
    CHECK_FALSE(validate_game(g).empty());
    g = energy_market();
    g.strategies[1] = {1, 1, 5};
    CHECK_FALSE(validate_game(g).empty());
    g = energy_market();
    g.strategies[1] = {5, 3, 1};
    CHECK_FALSE(validate_game(g).empty());
    g = energy_market();
    g.strategies[2] = {1, 2, 9};
    CHECK_FALSE(validate_game(g).empty());
    g = energy_market();
    g.D_diag[0] = -0.1;
    CHECK_FALSE(validate_game(g).empty());
    g = energy_market();
    g.mass[1] = 0;
    CHECK_FALSE(validate_game(g).empty());
    g = energy_market();
    g.Jbar.pop_back();
    CHECK_FALSE(validate_game(g).empty());
    g = energy_market();
    g.beta[2].pop_back();
    CHECK_FALSE(validate_game(g).empty());
}

TEST_CASE("game JSON round-trip")
{
    const auto g = energy_market();
    CHECK(game_from_json(game_to_json(g)) == g);
    CHECK_THROWS_AS(game_from_json("{"), std::invalid_argument);
    CHECK_THROWS_AS(game_from_json(R"({"N": 1})"), std::invalid_argument);
    auto defaults = game_from_json(R"({"N":1,"T":2,"strategies":[[1,2]],"D_diag":[0,0],"Jbar":[1,1],
        "alpha":[[1,1]],"beta":[[0,0]],"mass":[1]})");
    CHECK(defaults.R_disc == 100);
    CHECK(defaults.L == 1);
}

TEST_CASE("initial distribution")
{
    CHECK(initial_distribution(3, 100) == std::vector<Count>{33, 33, 34});
    CHECK(initial_distribution(2, 100) == std::vector<Count>{50, 50});
    CHECK(initial_distribution(4, 100) == std::vector<Count>{25, 25, 25, 25});
    for (std::size_t nk = 2; nk <= 50; ++nk) {
        const auto d = initial_distribution(nk, 100);
        CHECK(std::accumulate(d.begin(), d.end(), Count{0}) == 100);
    }
}

TEST_CASE("strategy index is the stacked ascending enumeration")
{
    const auto idx = strategy_index(energy_market());
    REQUIRE(idx.size() == 8);
    CHECK(idx[0].k == 1);
    CHECK(idx[0].slot == 3);
    CHECK(idx[2].k == 2);
    CHECK(idx[2].slot == 1);
    CHECK(idx[7].slot == 4);
    for (std::size_t l = 0; l < idx.size(); ++l) CHECK(idx[l].l == static_cast<int>(l + 1));
    CHECK(payoff_coefficients(energy_market()).l_of(3, 2) == 7);
    CHECK_THROWS_AS(payoff_coefficients(energy_market()).l_of(3, 5), std::out_of_range);
}

TEST_CASE("coefficients: all-zero cost")
{
    auto g = energy_market();
    for (auto& d : g.D_diag) d = 0;
    for (auto& j : g.Jbar) j = 0;
    for (auto& row : g.alpha)
        for (auto& a : row) a = 0;
    for (auto& row : g.beta)
        for (auto& b : row) b = 0;
    const auto c = payoff_coefficients(g);
    for (std::size_t l = 0; l < c.n; ++l) {
        CHECK(c.kappa_mag[l] == 0);
        CHECK(c.b[l] == 0);
        for (std::size_t j = 0; j < c.n; ++j) CHECK(c.a[j][l] == 0);
    }
}

TEST_CASE("coefficients: single-slot fixture embedded in a two-strategy game")
{
    GameSpec g;
    g.N = 1;
    g.T = 2;
    g.strategies = {{1, 2}};
    g.D_diag = {1, 0};
    g.Jbar = {0, 0};
    g.alpha = {{0.5, 0}};
    g.beta = {{0, 0}};
    g.mass = {1};
    const auto m = game_matrices(g);
    CHECK(m.S(0, 0) == doctest::Approx(2.0));
    const auto c = payoff_coefficients(g);
    CHECK(c.b[0] == 2);
    CHECK(c.a[1][0] == 0);
    CHECK(c.a[0][1] == 0);
    CHECK(c.kappa_mag[0] == 0);
}

TEST_CASE("coefficients match an independent dense computation")
{
    std::mt19937_64 rng(99);
    for (int trial = 0; trial < 100; ++trial) {
        const auto g = random_spec(rng);
        const auto c = payoff_coefficients(g);
        const auto m = game_matrices(g);
        const double scale = std::max(1.0, m.CtDC.cwiseAbs().maxCoeff());
        CHECK((m.R.transpose() * m.R - m.CtDC).cwiseAbs().maxCoeff() <= 1e-9 * scale);
        for (const auto& l : c.index) {
            const auto lu = static_cast<std::size_t>(l.l - 1);
            const auto ku = static_cast<std::size_t>(l.k - 1);
            const auto& slots = g.strategies[ku];
            const auto iu = static_cast<std::size_t>(std::find(slots.begin(), slots.end(), l.slot) - slots.begin());
            const double mass = g.mass[ku];
            const double kappa = 100.0 * (g.Jbar[static_cast<std::size_t>(l.slot - 1)] + g.beta[ku][iu]);
            CHECK(c.kappa_mag[lu] == static_cast<Count>(std::floor(kappa + 1e-9)));
            CHECK(c.b[lu] == static_cast<Count>(std::floor(s_entry(g, l, l) * mass + g.alpha[ku][iu] * mass + 1e-9)));
            for (const auto& j : c.index) {
                if (j.l == l.l) continue;
                CHECK(c.a[static_cast<std::size_t>(j.l - 1)][lu] ==
                      static_cast<Count>(std::floor(s_entry(g, j, l) * mass + 1e-9)));
            }
        }
    }
}

TEST_CASE("multiplication system")
{
    const auto sys = build_mult_system(5, 3);
    CHECK(sys.rules().size() == 44);
    CHECK(sys.priorities().size() == 7);
    CHECK(sys.initial.membranes().size() == 3);

    struct Case {
        Count m, n, product;
        std::size_t steps;
    };
    for (auto c : {Case{0, 3, 0, 5}, Case{1, 4, 4, 7}}) {
        const auto res = run(build_mult_system(c.m, c.n), 1000);
        CHECK(res.final_config.environment().count(ObjectSymbol::intern("d")) == c.product);
        CHECK(res.steps == c.steps);
    }
    const auto big = run(build_mult_system(100, 100), 1000);
    CHECK(big.final_config.environment().count(ObjectSymbol::intern("d")) == 10000);
    CHECK(big.steps <= 43);
    CHECK_THROWS_AS(build_mult_system(-1, 2), std::invalid_argument);
}

TEST_CASE("GNE system structure")
{
    const auto g = energy_market();
    const auto sys = build_gne_system(g);
    const auto& cfg = sys.initial;

    // Tree walk: count membranes by depth-first traversal from the skin.
    std::function<int(int)> walk = [&](int m) {
        int n = 1;
        for (int c : cfg.at(m).children) n += walk(c);
        return n;
    };
    CHECK(walk(0) == 80);
    CHECK(cfg.membranes().size() == 80);
    CHECK(cfg.at("P").contents.count(ObjectSymbol::intern("y0")) == 1);

    const auto idx = strategy_index(g);
    for (const auto& r : idx) {
        const auto ku = static_cast<std::size_t>(r.k - 1);
        const auto& slots = g.strategies[ku];
        const auto j = static_cast<std::size_t>(std::find(slots.begin(), slots.end(), r.slot) - slots.begin());
        const auto share = ObjectSymbol::intern("share", {r.k, r.slot, r.l});
        CHECK(cfg.at(labels::strategy_membrane("S", r.slot, r.k)).contents.count(share) ==
              initial_distribution(slots.size(), 100)[j]);
        CHECK(cfg.at(labels::strategy_membrane("RES", r.slot, r.k)).contents.count(ObjectSymbol::intern("AUX", {0})) == 1);
    }

    const auto& rs15 = sys.rules()[*sys.find_rule("RS1_5")];
    for (int k = 1; k <= g.N; ++k) CHECK(rs15.consume_inside.count(ObjectSymbol::intern("C", {k})) == 100);
    CHECK(sys.find_rule("RS5_61__k1_i3"));
    CHECK(sys.find_rule("RS5_39__k1_i3__n2"));
    CHECK_FALSE(sys.find_rule("RS5_39__k1_i3__n3"));
    CHECK(build_gne_system(g) == sys);

    auto zero = g;
    zero.L = 0;
    CHECK_THROWS_AS(build_gne_system(zero), std::invalid_argument);
}

TEST_CASE("GNE stage timing on the energy-market instance")
{
    auto g = energy_market();
    g.L = 2;
    Engine engine(build_gne_system(g));
    StageTracker tracker(g);
    tracker.observe(0, engine.system().initial);
    const auto res = engine.run(2000, true, [&](std::size_t t, const Configuration& c, const StepRecord&) {
        tracker.observe(t, c);
    });
    CHECK(res.reason == HaltReason::quiescent);
    const auto report = tracker.finish(res.steps);
    CHECK(report.failures.empty());
    REQUIRE(report.loops.size() == 2);
    for (const auto& loop : report.loops) {
        CHECK(loop.payoff_objects_at_8);
        REQUIRE(loop.payoff_ready);
        CHECK(*loop.payoff_ready == loop.start + 8);
        REQUIRE(loop.total());
        CHECK(*loop.total() <= 136);
        CHECK(loop.longest_mult <= 43);
        CHECK(loop.longest_mult2 <= 43);
        CHECK(loop.sums_done < loop.positive_parts);
        CHECK(loop.positive_parts < loop.rates_done);
        CHECK(loop.rates_done < loop.exit_out);
    }
    CHECK(report.loops[1].start == *report.loops[0].end);

    const auto replayed = stage_boundaries(res.trace, g);
    REQUIRE(replayed.loops.size() == 2);
    CHECK(replayed.loops[1].exit_out == report.loops[1].exit_out);

    const auto& skin = res.final_config.at(0).contents;
    for (int n = 1; n <= 2; ++n)
        for (int k = 1; k <= g.N; ++k) {
            Count total = 0;
            for (const auto& [sym, count] : skin)
                if (sym.base() == "EXIT" && sym.params()[0] == k && sym.params()[3] == n) total += count;
            CHECK(total == 100);
        }
}
