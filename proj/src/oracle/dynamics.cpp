#include "memgne/oracle.hpp"

#include <stdexcept>

namespace memgne {

namespace {

void require_length(const Eigen::VectorXd& v, Eigen::Index n, const char* what)
{
    if (v.size() != n)
        throw std::invalid_argument(std::string(what) + ": expected length " + std::to_string(n) + ", got " +
                                    std::to_string(v.size()));
}

// [begin, end) of each population in the stacked vector.
std::vector<std::pair<Eigen::Index, Eigen::Index>> blocks(const GameSpec& spec)
{
    std::vector<std::pair<Eigen::Index, Eigen::Index>> out;
    Eigen::Index at = 0;
    for (const auto& s : spec.strategies) {
        const auto n = static_cast<Eigen::Index>(s.size());
        out.emplace_back(at, at + n);
        at += n;
    }
    return out;
}

} // namespace

Eigen::VectorXd pricing(const GameSpec& spec, const Eigen::VectorXd& x)
{
    const auto g = game_matrices(spec);
    require_length(x, g.C.cols(), "pricing");
    return g.D * g.C * x + g.Jbar;
}

double individual_cost(const GameSpec& spec, int k, const Eigen::VectorXd& xk)
{
    if (k < 1 || k > spec.N) throw std::out_of_range("no player " + std::to_string(k));
    const auto ku = static_cast<std::size_t>(k - 1);
    require_length(xk, static_cast<Eigen::Index>(spec.strategies[ku].size()), "individual_cost");
    double q = 0;
    for (Eigen::Index i = 0; i < xk.size(); ++i) {
        const auto iu = static_cast<std::size_t>(i);
        q += 0.5 * spec.alpha[ku][iu] * xk(i) * xk(i) + spec.beta[ku][iu] * xk(i);
    }
    return q;
}

Eigen::VectorXd payoff(const GameSpec& spec, const Eigen::VectorXd& z)
{
    const auto g = game_matrices(spec);
    require_length(z, g.S.cols(), "payoff");
    const Eigen::VectorXd x = g.M * z;
    return -g.S * x - g.C.transpose() * g.Jbar - g.alpha.cwiseProduct(x) - g.beta;
}

Eigen::VectorXd payoff_decomposed(const GameSpec& spec, const Eigen::VectorXd& z)
{
    const auto g = game_matrices(spec);
    require_length(z, g.S.cols(), "payoff_decomposed");
    const Eigen::VectorXd x = g.M * z;
    Eigen::VectorXd own = Eigen::VectorXd::Zero(x.size());
    for (auto [b, e] : blocks(spec)) {
        const auto Ck = g.C.middleCols(b, e - b);
        own.segment(b, e - b) = Ck.transpose() * g.D * Ck * x.segment(b, e - b);
    }
    return -g.C.transpose() * pricing(spec, x) - own - g.alpha.cwiseProduct(x) - g.beta;
}

Eigen::VectorXd excess_payoff(const Eigen::VectorXd& p, const Eigen::VectorXd& z, const GameSpec& spec)
{
    const auto n = static_cast<Eigen::Index>(spec.strategy_count());
    require_length(p, n, "excess_payoff");
    require_length(z, n, "excess_payoff");
    Eigen::VectorXd out(n);
    for (auto [b, e] : blocks(spec)) {
        const double mean = z.segment(b, e - b).dot(p.segment(b, e - b));
        out.segment(b, e - b) = p.segment(b, e - b).array() - mean;
    }
    return out;
}

Eigen::VectorXd bnn_rate(const Eigen::VectorXd& phat, const Eigen::VectorXd& z, const GameSpec& spec)
{
    const auto n = static_cast<Eigen::Index>(spec.strategy_count());
    require_length(phat, n, "bnn_rate");
    require_length(z, n, "bnn_rate");
    const Eigen::VectorXd pos = phat.cwiseMax(0.0);
    Eigen::VectorXd out(n);
    for (auto [b, e] : blocks(spec)) {
        const double total = pos.segment(b, e - b).sum();
        out.segment(b, e - b) = pos.segment(b, e - b) - z.segment(b, e - b) * total;
    }
    return out;
}

} // namespace memgne
