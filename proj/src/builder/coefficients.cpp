#include "memgne/builder.hpp"

#include <cmath>

namespace memgne {

namespace {

// Guards floors against representation error, e.g. 100 * 0.29 = 28.999999999999996.
constexpr double kFloorSlack = 1e-9;

Count floor_count(double x, const char* what)
{
    double f = std::floor(x + kFloorSlack);
    if (f < 0) throw SignConventionError(std::string(what) + " is negative (" + std::to_string(x) + ")");
    if (!(f < 4.0e18)) throw CountOverflow(std::string(what) + " exceeds the 64-bit count range");
    return static_cast<Count>(f);
}

void require_valid(const GameSpec& spec)
{
    auto diags = validate_game(spec);
    if (!diags.empty()) throw std::invalid_argument("invalid game spec: " + diags.front());
}

} // namespace

int PayoffCoefficients::l_of(int k, int slot) const
{
    for (const auto& r : index)
        if (r.k == k && r.slot == slot) return r.l;
    throw std::out_of_range("no strategy " + std::to_string(slot) + " for player " + std::to_string(k));
}

std::vector<StrategyRef> strategy_index(const GameSpec& spec)
{
    std::vector<StrategyRef> out;
    int l = 0;
    for (std::size_t k = 0; k < spec.strategies.size(); ++k)
        for (int slot : spec.strategies[k]) out.push_back(StrategyRef{static_cast<int>(k) + 1, slot, ++l});
    return out;
}

GameMatrices game_matrices(const GameSpec& spec)
{
    require_valid(spec);
    const auto idx = strategy_index(spec);
    const auto n = static_cast<Eigen::Index>(idx.size());
    const auto T = static_cast<Eigen::Index>(spec.T);
    GameMatrices g;
    g.C = Eigen::MatrixXd::Zero(T, n);
    g.M = Eigen::MatrixXd::Zero(n, n);
    g.alpha.resize(n);
    g.beta.resize(n);
    for (Eigen::Index l = 0; l < n; ++l) {
        const auto& r = idx[static_cast<std::size_t>(l)];
        g.C(r.slot - 1, l) = 1.0;
        g.M(l, l) = spec.mass[static_cast<std::size_t>(r.k - 1)];
    }
    std::size_t l = 0;
    for (std::size_t k = 0; k < spec.strategies.size(); ++k)
        for (std::size_t i = 0; i < spec.strategies[k].size(); ++i, ++l) {
            g.alpha(static_cast<Eigen::Index>(l)) = spec.alpha[k][i];
            g.beta(static_cast<Eigen::Index>(l)) = spec.beta[k][i];
        }
    g.Jbar = Eigen::Map<const Eigen::VectorXd>(spec.Jbar.data(), T);
    Eigen::VectorXd d = Eigen::Map<const Eigen::VectorXd>(spec.D_diag.data(), T);
    g.D = d.asDiagonal();
    g.R = d.cwiseSqrt().asDiagonal() * g.C;
    g.CtDC = g.C.transpose() * g.D * g.C;

    Eigen::MatrixXd block = Eigen::MatrixXd::Zero(n, n);
    Eigen::Index offset = 0;
    for (const auto& sk : spec.strategies) {
        const auto nk = static_cast<Eigen::Index>(sk.size());
        auto Ck = g.C.middleCols(offset, nk);
        block.block(offset, offset, nk, nk) = Ck.transpose() * g.D * Ck;
        offset += nk;
    }
    g.S = block + g.R.transpose() * g.R;
    return g;
}

PayoffCoefficients payoff_coefficients(const GameSpec& spec)
{
    const GameMatrices g = game_matrices(spec);
    PayoffCoefficients pc;
    pc.index = strategy_index(spec);
    pc.n = pc.index.size();
    const auto n = static_cast<Eigen::Index>(pc.n);
    const Eigen::MatrixXd SM = g.S * g.M;
    const Eigen::VectorXd constant = static_cast<double>(spec.R_disc) * (g.C.transpose() * g.Jbar + g.beta);
    pc.kappa_mag.resize(pc.n);
    pc.b.resize(pc.n);
    pc.a.assign(pc.n, std::vector<Count>(pc.n, 0));
    for (Eigen::Index l = 0; l < n; ++l) {
        const auto ul = static_cast<std::size_t>(l);
        pc.kappa_mag[ul] = floor_count(constant(l), "constant payoff part");
        pc.b[ul] = floor_count(SM(l, l) + g.alpha(l) * g.M(l, l), "diagonal payoff coefficient");
        for (Eigen::Index j = 0; j < n; ++j)
            if (j != l) pc.a[static_cast<std::size_t>(j)][ul] = floor_count(SM(j, l), "payoff coefficient");
    }
    return pc;
}

std::vector<Count> initial_distribution(std::size_t nk, Count R_disc)
{
    if (nk == 0) throw std::invalid_argument("initial_distribution needs at least one strategy");
    const auto n = static_cast<Count>(nk);
    std::vector<Count> out(nk, R_disc / n);
    out.back() = R_disc - (n - 1) * (R_disc / n);
    return out;
}

} // namespace memgne
