#include "memgne/oracle.hpp"

#include <doctest.h>

#include <numeric>
#include <random>

using namespace memgne;

namespace {

GameSpec two_by_two()
{
    GameSpec g;
    g.N = 2;
    g.T = 2;
    g.strategies = {{1, 2}, {1, 2}};
    g.D_diag = {1, 2};
    g.Jbar = {0.5, 0.25};
    g.alpha = {{2, 2}, {1, 3}};
    g.beta = {{1, 1}, {0, 0.5}};
    g.mass = {1, 2};
    return g;
}

// One player, two slots, no congestion: payoffs are the constant prices.
GameSpec flat(double j1, double j2)
{
    GameSpec g;
    g.N = 1;
    g.T = 2;
    g.strategies = {{1, 2}};
    g.D_diag = {0, 0};
    g.Jbar = {j1, j2};
    g.alpha = {{0, 0}};
    g.beta = {{0, 0}};
    g.mass = {1};
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

Eigen::VectorXd simplex_point(const GameSpec& g, std::mt19937_64& rng)
{
    std::uniform_real_distribution<double> u(0.01, 1.0);
    Eigen::VectorXd z(static_cast<Eigen::Index>(g.strategy_count()));
    Eigen::Index l = 0;
    for (const auto& s : g.strategies) {
        const Eigen::Index b = l;
        double sum = 0;
        for (std::size_t i = 0; i < s.size(); ++i) sum += z(l++) = u(rng);
        z.segment(b, l - b) /= sum;
    }
    return z;
}

} // namespace

TEST_CASE("pricing adds the loaded slot cost to the base price")
{
    const auto g = two_by_two();
    Eigen::VectorXd x(4);
    x << 1, 2, 3, 4;
    const auto J = pricing(g, x);
    CHECK(J(0) == doctest::Approx(1 * 4 + 0.5));
    CHECK(J(1) == doctest::Approx(2 * 6 + 0.25));
    CHECK_THROWS_AS(pricing(g, Eigen::VectorXd(3)), std::invalid_argument);
}

TEST_CASE("individual cost")
{
    Eigen::VectorXd x(2);
    x << 3, 0;
    CHECK(individual_cost(two_by_two(), 1, x) == doctest::Approx(12));
}

TEST_CASE("payoff")
{
    auto g = two_by_two();
    const Eigen::VectorXd zero = Eigen::VectorXd::Zero(4);
    const auto p0 = payoff(g, zero);
    CHECK(p0(0) == doctest::Approx(-(0.5 + 1)));
    CHECK(p0(3) == doctest::Approx(-(0.25 + 0.5)));

    for (auto& d : g.D_diag) d = 0;
    for (auto& j : g.Jbar) j = 0;
    for (auto& row : g.alpha)
        for (auto& a : row) a = 0;
    for (auto& row : g.beta)
        for (auto& b : row) b = 0;
    Eigen::VectorXd z(4);
    z << 0.2, 0.8, 0.5, 0.5;
    CHECK(payoff(g, z).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("payoff and its decomposition agree")
{
    std::mt19937_64 rng(5);
    for (int trial = 0; trial < 200; ++trial) {
        const auto g = random_spec(rng);
        const auto z = simplex_point(g, rng);
        CHECK((payoff(g, z) - payoff_decomposed(g, z)).cwiseAbs().maxCoeff() <= 1e-9);
    }
}

TEST_CASE("excess payoff and BNN rate")
{
    auto g = flat(1, 2);
    Eigen::VectorXd phat(2), z(2);
    phat << 0.5, -0.5;
    z << 0.5, 0.5;
    const auto r = bnn_rate(phat, z, g);
    CHECK(r(0) == doctest::Approx(0.25));
    CHECK(r(1) == doctest::Approx(-0.25));

    std::mt19937_64 rng(11);
    for (int trial = 0; trial < 500; ++trial) {
        g = random_spec(rng);
        z = simplex_point(g, rng);
        const auto p = payoff(g, z);
        const auto e = excess_payoff(p, z, g);
        const auto rate = bnn_rate(e, z, g);
        Eigen::Index l = 0;
        for (const auto& s : g.strategies) {
            const auto n = static_cast<Eigen::Index>(s.size());
            CHECK(std::abs(z.segment(l, n).dot(e.segment(l, n))) <= 1e-12 * (1 + p.cwiseAbs().maxCoeff()));
            CHECK(std::abs(rate.segment(l, n).sum()) <= 1e-12 * (1 + e.cwiseAbs().maxCoeff()));
            CHECK(e.segment(l, n).maxCoeff() >= -1e-12);
            l += n;
        }
    }
}

TEST_CASE("discrete update")
{
    auto g = flat(1, 2);
    g.strategies = {{1, 2}};
    StateZ s{{{50, 50}}, {0}};
    const auto moved = discrete_update(s, {{60, -60}}, g);
    CHECK(moved.z[0] == std::vector<Count>{100, 0});
    CHECK(moved.err[0] == 0);

    GameSpec three = flat(1, 2);
    three.T = 3;
    three.strategies = {{1, 2, 3}};
    three.D_diag = {0, 0, 0};
    three.Jbar = {1, 2, 3};
    three.alpha = {{0, 0, 0}};
    three.beta = {{0, 0, 0}};
    const auto init = initial_state(three);
    CHECK(init.z[0] == std::vector<Count>{33, 33, 34});
    CHECK(discrete_update(init, {{0, 0, 0}}, three) == init);
}

TEST_CASE("discrete update conserves the population")
{
    auto g = flat(1, 2);
    g.T = 4;
    g.strategies = {{1, 2, 3, 4}};
    g.D_diag = {0, 0, 0, 0};
    g.Jbar = {1, 1, 1, 1};
    g.alpha = {{0, 0, 0, 0}};
    g.beta = {{0, 0, 0, 0}};
    std::mt19937_64 rng(3);
    for (int trial = 0; trial < 2000; ++trial) {
        StateZ s{{std::vector<Count>(4, 0)}, {0}};
        Count left = 100;
        for (int i = 0; i < 3; ++i) {
            s.z[0][static_cast<std::size_t>(i)] = static_cast<Count>(rng() % static_cast<std::uint64_t>(left + 1));
            left -= s.z[0][static_cast<std::size_t>(i)];
        }
        s.z[0][3] = left;
        std::vector<Count> inc(4);
        for (auto& c : inc) c = static_cast<Count>(rng() % 81) - 40;
        const auto next = discrete_update(s, {inc}, g);
        CHECK(next.total(0) == 100);
        for (Count c : next.z[0]) CHECK(c >= 0);
        CHECK(next.err[0] >= 0);
    }
}

TEST_CASE("one loop of the integer pipeline by hand")
{
    const auto g = flat(1, 5);
    const auto coeff = payoff_coefficients(g);
    const auto d = oracle_loop(initial_state(g), g, coeff);
    CHECK(d.payoff == std::vector<Count>{100, 500});
    CHECK(d.expected == std::vector<Count>{300});
    CHECK(d.positive[0] == std::vector<Count>{200, 0});
    CHECK(d.positive_sum == std::vector<Count>{200});
    CHECK(d.zneg[0] == std::vector<Count>{100, 100});
    CHECK(d.zvarp[0] == std::vector<Count>{100, 0});
    CHECK(d.zvarn[0] == std::vector<Count>{0, 100});
    CHECK(d.increment[0] == std::vector<Count>{1, -1});
    CHECK(d.next.z[0] == std::vector<Count>{51, 49});
    CHECK(count_residual(d) == 1);
}

TEST_CASE("a rest point stays put")
{
    const auto g = flat(3, 3);
    const auto run = simulate([&] {
        auto h = g;
        h.L = 5;
        return h;
    }());
    for (const auto& s : run.trajectory.states) CHECK(s == run.trajectory.states.front());
    for (const auto& d : run.loops) CHECK(count_residual(d) == 0);
    CHECK(gne_residual(run.trajectory.states.back(), g) == doctest::Approx(0.0));
}

TEST_CASE("simulate")
{
    auto g = flat(1, 5);
    g.L = 0;
    const auto none = simulate(g);
    CHECK(none.trajectory.states.size() == 1);
    CHECK(none.loops.empty());

    std::mt19937_64 rng(17);
    for (int trial = 0; trial < 30; ++trial) {
        auto r = random_spec(rng);
        r.L = 10;
        const auto run = simulate(r);
        REQUIRE(run.trajectory.states.size() == 11);
        for (const auto& s : run.trajectory.states)
            for (std::size_t k = 0; k < s.z.size(); ++k)
                if (s.err[k] == 0) CHECK(s.total(k) == r.R_disc);
        CHECK(simulate(r).trajectory.states == run.trajectory.states);
    }
}
