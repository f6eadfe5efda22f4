#pragma once

#include "memgne/builder.hpp"

#include <Eigen/Dense>

#include <vector>

namespace memgne {

// Continuous dynamics. Vectors are stacked player by player (index l-1).

/// J(x) = D C x + Jbar; x has one entry per strategy.
Eigen::VectorXd pricing(const GameSpec& spec, const Eigen::VectorXd& x);

/// sum_i (alpha_i / 2) x_i^2 + beta_i x_i over player k's strategies.
double individual_cost(const GameSpec& spec, int k, const Eigen::VectorXd& xk);

/// p = -S M z - C^T Jbar - alpha .* (M z) - beta
Eigen::VectorXd payoff(const GameSpec& spec, const Eigen::VectorXd& z);

/// Same payoff assembled from the pricing function and the per-player
/// congestion blocks; agrees with payoff() up to rounding.
Eigen::VectorXd payoff_decomposed(const GameSpec& spec, const Eigen::VectorXd& z);

/// p_j - sum_l z_l p_l within each population.
Eigen::VectorXd excess_payoff(const Eigen::VectorXd& p, const Eigen::VectorXd& z, const GameSpec& spec);

/// [phat_i]_+ - z_i sum_j [phat_j]_+ within each population.
Eigen::VectorXd bnn_rate(const Eigen::VectorXd& phat, const Eigen::VectorXd& z, const GameSpec& spec);

// Integer pipeline.

/// Object counts per population; z[k-1][j] is the j-th strategy of player k.
struct StateZ {
    std::vector<std::vector<Count>> z;
    std::vector<Count> err;

    Count total(std::size_t k) const;
    friend bool operator==(const StateZ&, const StateZ&) = default;
};

StateZ initial_state(const GameSpec& spec);

/// z / R_disc stacked into one vector.
Eigen::VectorXd to_shares(const StateZ& s, const GameSpec& spec);

/// Rounding thresholds of the three accumulating stages; 0 selects
/// floor(R/2) + 1.
struct OracleOptions {
    Count sum_threshold = 0;
    Count product_threshold = 0;
    Count update_threshold = 0;
};

/// Every intermediate of one loop, indexed like StateZ where per strategy.
struct LoopDetail {
    std::vector<Count> payoff;                  ///< per l
    std::vector<Count> expected;                ///< per player
    std::vector<std::vector<Count>> positive;   ///< [payoff-bar - payoff]_+
    std::vector<Count> positive_sum;            ///< per player
    std::vector<std::vector<Count>> zneg;
    std::vector<std::vector<Count>> zvarp;
    std::vector<std::vector<Count>> zvarn;
    std::vector<std::vector<Count>> increment;  ///< Euler step in counts
    std::vector<std::vector<Count>> stray_over;  ///< overflow markers nothing consumes
    StateZ next;
};

/// Applies Euler increments to a conserving state: clamps to [0, R], pools
/// excess and deficit per population, settles them in ascending strategy
/// order and renormalizes to R. Unsettled units go to err.
StateZ discrete_update(const StateZ& state, const std::vector<std::vector<Count>>& increment, const GameSpec& spec);

LoopDetail oracle_loop(const StateZ& state, const GameSpec& spec, const PayoffCoefficients& coeff,
                       const OracleOptions& options = {});

struct Trajectory {
    std::vector<StrategyRef> index;
    std::vector<StateZ> states; ///< states[0] is the initial distribution
};

struct OracleRun {
    Trajectory trajectory;
    std::vector<LoopDetail> loops;
};

/// spec.L loops of the integer pipeline.
OracleRun simulate(const GameSpec& spec, const OracleOptions& options = {});

/// max |[phat]_+ - z sum [phat]_+| at z = counts / R.
double gne_residual(const StateZ& state, const GameSpec& spec);

/// Largest Euler increment of a loop; 0 iff the loop left the state unchanged.
Count count_residual(const LoopDetail& detail);

} // namespace memgne
