#pragma once

#include "memgne/engine.hpp"
#include "memgne/game.hpp"

#include <Eigen/Dense>

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace memgne {

/// A payoff coefficient came out negative and cannot be a multiplicity.
class SignConventionError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// Position of strategy `slot` of player `k` in the stacked vector, l in 1..n.
struct StrategyRef {
    int k = 0;
    int slot = 0;
    int l = 0;
};

/// Integer payoff coefficients in object units. All entries are magnitudes of
/// nonpositive payoff contributions; index 0 of every vector is l = 1.
struct PayoffCoefficients {
    std::size_t n = 0;
    std::vector<StrategyRef> index;
    std::vector<Count> kappa_mag;
    std::vector<std::vector<Count>> a; ///< a[j-1][l-1], zero diagonal
    std::vector<Count> b;

    /// Throws std::out_of_range for a strategy the game does not have.
    int l_of(int k, int slot) const;
};

/// Dense matrices of the game, strategies stacked player by player.
struct GameMatrices {
    Eigen::MatrixXd C;    ///< T x n
    Eigen::MatrixXd D;    ///< T x T diagonal
    Eigen::MatrixXd M;    ///< n x n diagonal of player masses
    Eigen::MatrixXd R;    ///< T x n, sqrt(D) C
    Eigen::MatrixXd S;    ///< n x n
    Eigen::MatrixXd CtDC; ///< n x n
    Eigen::VectorXd Jbar;
    Eigen::VectorXd alpha;
    Eigen::VectorXd beta;
};

std::vector<StrategyRef> strategy_index(const GameSpec& spec);
GameMatrices game_matrices(const GameSpec& spec);
PayoffCoefficients payoff_coefficients(const GameSpec& spec);

/// First nk-1 entries floor(R/nk), the last one takes the remainder.
std::vector<Count> initial_distribution(std::size_t nk, Count R_disc);

/// Membrane labels of the generated GNE system.
namespace labels {
std::string player(int k);
std::string strategy_membrane(const char* kind, int slot, int k); ///< kind: S, RES, MULT, M1, ...
std::string acum(int k);
} // namespace labels

/// Standalone multiplication system: skin 0 holding b^n, membrane 1 holding
/// a^m k1, empty membrane 2. The product leaves the skin as d objects.
PSystem build_mult_system(Count m, Count n);

/// The complete GNE P system. Requires a valid spec with L >= 1.
PSystem build_gne_system(const GameSpec& spec);

/// Step indices (relative to the run) at which each loop's markers first
/// appear. Missing markers are nullopt.
struct LoopTiming {
    int loop = 0; ///< 1-based
    std::size_t start = 0;
    std::optional<std::size_t> payoff_ready;   ///< y6 in P
    std::optional<std::size_t> sums_done;      ///< y2_2 in every player
    std::optional<std::size_t> positive_parts; ///< y3_7 in every player
    std::optional<std::size_t> rates_done;     ///< y5_0 in every strategy membrane
    std::optional<std::size_t> exit_out;       ///< this loop's EXIT objects in the skin
    std::optional<std::size_t> end;            ///< y0 back in P, or the halting step for the last loop
    std::size_t longest_mult = 0;              ///< longest first-multiplication sub-run
    std::size_t longest_mult2 = 0;             ///< longest second-multiplication sub-run
    bool payoff_objects_at_8 = false;          ///< payoff objects present in the players at start + 8

    std::optional<std::size_t> total() const
    {
        if (!end) return std::nullopt;
        return *end - start;
    }
};

struct StageReport {
    std::vector<LoopTiming> loops;
    /// One line per marker that never appeared, naming the stage.
    std::vector<std::string> failures;
};

/// Incremental stage detector; feed it every configuration of a run in order.
class StageTracker {
public:
    explicit StageTracker(const GameSpec& spec);
    ~StageTracker();
    StageTracker(StageTracker&&) noexcept;

    void observe(std::size_t step, const Configuration& cfg);
    /// Closes the report; `final_step` is the number of executed steps.
    StageReport finish(std::size_t final_step);

private:
    struct Impl;
    std::unique_ptr<Impl> impl_;
};

StageReport stage_boundaries(const Trace& trace, const GameSpec& spec);

} // namespace memgne
