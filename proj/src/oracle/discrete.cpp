#include "memgne/oracle.hpp"

#include <algorithm>
#include <cstdlib>

namespace memgne {

namespace {

Count half_of(Count R) { return R / 2 + 1; }

// Quotient by R with the remainder rounded up from `threshold` on.
Count round_units(Count x, Count R, Count threshold) { return x / R + (x % R >= threshold ? 1 : 0); }

std::vector<std::vector<Count>> shaped(const GameSpec& spec)
{
    std::vector<std::vector<Count>> out;
    for (const auto& s : spec.strategies) out.emplace_back(s.size(), 0);
    return out;
}

struct Settled {
    StateZ next;
    std::vector<std::vector<Count>> stray_over;
};

// Stage 5 after the Euler increment: per strategy membrane, then the player
// membrane, then the v-token renormalization.
Settled settle(const StateZ& state, const std::vector<std::vector<Count>>& increment, const GameSpec& spec)
{
    const Count R = spec.R_disc;
    Settled out{state, shaped(spec)};
    for (std::size_t k = 0; k < state.z.size(); ++k) {
        const auto nk = state.z[k].size();
        std::vector<Count> w(nk), compw(nk);
        Count p = 0, n = 0;
        for (std::size_t i = 0; i < nk; ++i) {
            const Count m = checked_add(state.z[k][i], increment[k][i]);
            const Count pos = std::max<Count>(m, 0);
            n = checked_add(n, std::max<Count>(-m, 0));
            const Count overs = pos / R;
            if (overs == 0) {
                w[i] = pos;
                compw[i] = R - pos;
            } else {
                w[i] = overs * R;
                compw[i] = 0;
                p = checked_add(p, pos % R);
                out.stray_over[k][i] = overs - 1;
            }
        }
        const Count cancel = std::min(p, n);
        p -= cancel;
        n -= cancel;
        for (std::size_t i = 0; i < nk; ++i) {
            const Count t = std::min(p, compw[i]);
            w[i] += t;
            compw[i] -= t;
            p -= t;
        }
        for (std::size_t i = 0; i < nk; ++i) {
            const Count t = std::min(n, w[i]);
            w[i] -= t;
            n -= t;
        }
        out.next.err[k] = checked_add(out.next.err[k], p + n);
        Count v = R;
        for (std::size_t i = 0; i < nk; ++i) {
            out.next.z[k][i] = std::min(w[i], v);
            v -= out.next.z[k][i];
        }
        out.next.z[k][0] += v;
    }
    return out;
}

} // namespace

Count StateZ::total(std::size_t k) const
{
    Count t = 0;
    for (Count c : z.at(k)) t = checked_add(t, c);
    return t;
}

StateZ initial_state(const GameSpec& spec)
{
    StateZ s;
    for (const auto& sk : spec.strategies) s.z.push_back(initial_distribution(sk.size(), spec.R_disc));
    s.err.assign(spec.strategies.size(), 0);
    return s;
}

Eigen::VectorXd to_shares(const StateZ& s, const GameSpec& spec)
{
    Eigen::VectorXd out(static_cast<Eigen::Index>(spec.strategy_count()));
    Eigen::Index l = 0;
    for (const auto& zk : s.z)
        for (Count c : zk) out(l++) = static_cast<double>(c) / static_cast<double>(spec.R_disc);
    return out;
}

StateZ discrete_update(const StateZ& state, const std::vector<std::vector<Count>>& increment, const GameSpec& spec)
{
    return settle(state, increment, spec).next;
}

LoopDetail oracle_loop(const StateZ& state, const GameSpec& spec, const PayoffCoefficients& coeff,
                       const OracleOptions& options)
{
    const Count R = spec.R_disc;
    const Count h2 = options.sum_threshold ? options.sum_threshold : half_of(R);
    const Count h4 = options.product_threshold ? options.product_threshold : half_of(R);
    const Count h5 = options.update_threshold ? options.update_threshold : half_of(R);

    std::vector<Count> zl;
    for (const auto& zk : state.z) zl.insert(zl.end(), zk.begin(), zk.end());

    LoopDetail d;
    d.payoff.assign(coeff.n, 0);
    for (std::size_t j = 0; j < coeff.n; ++j) {
        Count pj = checked_add(coeff.kappa_mag[j], checked_mul(coeff.b[j], zl[j]));
        for (std::size_t l = 0; l < coeff.n; ++l)
            if (l != j) pj = checked_add(pj, checked_mul(coeff.a[j][l], zl[l]));
        d.payoff[j] = pj;
    }

    d.positive = d.zneg = d.zvarp = d.zvarn = d.increment = shaped(spec);
    std::size_t l = 0;
    for (std::size_t k = 0; k < state.z.size(); ++k) {
        const auto& zk = state.z[k];
        const std::size_t base = l;
        Count sum = 0;
        for (std::size_t i = 0; i < zk.size(); ++i) sum = checked_add(sum, checked_mul(zk[i], d.payoff[base + i]));
        const Count A = round_units(sum, R, h2);
        d.expected.push_back(A);
        Count Q = 0;
        for (std::size_t i = 0; i < zk.size(); ++i) {
            d.positive[k][i] = std::max<Count>(A - d.payoff[base + i], 0);
            Q = checked_add(Q, d.positive[k][i]);
        }
        d.positive_sum.push_back(Q);
        for (std::size_t i = 0; i < zk.size(); ++i) {
            const Count zn = round_units(checked_mul(zk[i], Q), R, h4);
            d.zneg[k][i] = zn;
            d.zvarp[k][i] = std::max<Count>(d.positive[k][i] - zn, 0);
            d.zvarn[k][i] = std::max<Count>(zn - d.positive[k][i], 0);
            d.increment[k][i] = round_units(d.zvarp[k][i], R, h5) - round_units(d.zvarn[k][i], R, h5);
        }
        l += zk.size();
    }
    auto settled = settle(state, d.increment, spec);
    d.next = std::move(settled.next);
    d.stray_over = std::move(settled.stray_over);
    return d;
}

OracleRun simulate(const GameSpec& spec, const OracleOptions& options)
{
    const auto coeff = payoff_coefficients(spec);
    OracleRun run;
    run.trajectory.index = coeff.index;
    run.trajectory.states.push_back(initial_state(spec));
    for (int t = 0; t < spec.L; ++t) {
        run.loops.push_back(oracle_loop(run.trajectory.states.back(), spec, coeff, options));
        run.trajectory.states.push_back(run.loops.back().next);
    }
    return run;
}

double gne_residual(const StateZ& state, const GameSpec& spec)
{
    const Eigen::VectorXd z = to_shares(state, spec);
    const Eigen::VectorXd rate = bnn_rate(excess_payoff(payoff(spec, z), z, spec), z, spec);
    return rate.size() ? rate.cwiseAbs().maxCoeff() : 0.0;
}

Count count_residual(const LoopDetail& detail)
{
    Count worst = 0;
    for (const auto& row : detail.increment)
        for (Count c : row) worst = std::max(worst, c < 0 ? -c : c);
    return worst;
}

} // namespace memgne
