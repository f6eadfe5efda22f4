#pragma once

#include "memgne/oracle.hpp"

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace memgne {

/// SplitMix64: state += 0x9E3779B97F4A7C15, then the output mix
/// z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9; z = (z ^ (z >> 27)) * 0x94D049BB133111EB;
/// z ^ (z >> 31).
class SplitMix64 {
public:
    explicit SplitMix64(std::uint64_t seed) : state_(seed) {}
    std::uint64_t next();
    /// Top 53 bits scaled to [0, 1).
    double uniform();

private:
    std::uint64_t state_;
};

struct Range {
    double lo = 0;
    double hi = 1;
};

/// Game shape plus the sampling box of its parameters.
struct Preset {
    int N = 3;
    int T = 5;
    std::vector<std::vector<int>> strategies{{3, 5}, {1, 3, 5}, {1, 2, 4}};
    std::int64_t R_disc = 100;
    int L = 10;
    Range D{0, 1};
    Range Jbar{2, 4};
    Range alpha{1, 10};
    Range beta{0, 1};
    Range mass{3, 4};
};

/// Draws D_diag, Jbar (one per slot), alpha and beta (per player and
/// strategy), then mass (per player), each quantized to 4 decimals.
GameSpec sample_experiment(std::uint64_t seed, const Preset& preset = {});

/// `loop,k,i,l,count,err_k` with a header row; loop 0 is the initial state.
void write_trajectory_csv(std::ostream& os, const Trajectory& t);
std::string trajectory_csv(const Trajectory& t);

/// Intermediates read off the P system at the stage markers of one loop.
/// Entries that were never observed hold -1.
struct ProbedLoop {
    std::vector<Count> payoff;
    std::vector<Count> expected;
    std::vector<std::vector<Count>> positive;
    std::vector<Count> positive_sum;
    std::vector<std::vector<Count>> zvarp;
    std::vector<std::vector<Count>> zvarn;
};

struct GneRunOptions {
    bool strict = false;
    bool keep_trace = false;
    std::size_t max_steps = 0; ///< 0 selects 200 * (L + 1)
};

struct GneRun {
    Trajectory trajectory;
    std::vector<ProbedLoop> probes;
    StageReport stages;
    std::size_t steps = 0;
    HaltReason reason = HaltReason::quiescent;
    /// Budget exhaustion, stage failures, err objects; empty on a clean run.
    std::vector<std::string> problems;
    Trace trace;

    bool ok() const noexcept { return problems.empty(); }
};

/// Builds and runs the GNE P system and extracts one state per loop from the
/// EXIT objects in the skin. L = 0 returns the initial state without running.
GneRun run_gne(const GameSpec& spec, const GneRunOptions& options = {});

std::string stage_report_text(const GneRun& run);

struct Divergence {
    int loop = 0;
    int stage = 0;
    std::string marker;
    std::string symbol;
    Count psystem = 0;
    Count oracle = 0;
};

struct DiffReport {
    std::size_t loops = 0;
    std::optional<Divergence> first;
    /// One line per mismatching count in the trajectories.
    std::vector<std::string> lines;

    bool agree() const noexcept { return !first && lines.empty(); }
    /// Empty on agreement.
    std::string text() const;
};

DiffReport diff_runs(const GneRun& psystem, const OracleRun& oracle);
DiffReport compare_engines(const GameSpec& spec, const OracleOptions& oracle_options = {},
                           const GneRunOptions& options = {});

struct MultReport {
    Count m = 0;
    Count n = 0;
    Count product = 0;
    std::size_t steps = 0;
    /// Exact for m <= 1, an upper bound for m >= 2.
    std::size_t bound = 0;
    bool exact_bound = false;

    bool product_ok() const noexcept { return product == m * n; }
    bool steps_ok() const noexcept { return exact_bound ? steps == bound : steps <= bound; }
    std::string text() const;
};

/// 5 for m = 0, 7 for m = 1, 1 + 6 ceil(log2 m) otherwise.
std::size_t mult_step_bound(Count m);
MultReport run_mult(Count m, Count n, Trace* trace = nullptr);

} // namespace memgne
