#include "memgne/harness.hpp"

#include <cmath>

namespace memgne {

std::uint64_t SplitMix64::next()
{
    std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ULL);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

double SplitMix64::uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

namespace {

double draw(SplitMix64& rng, Range r) { return std::round((r.lo + (r.hi - r.lo) * rng.uniform()) * 1e4) / 1e4; }

} // namespace

GameSpec sample_experiment(std::uint64_t seed, const Preset& preset)
{
    SplitMix64 rng(seed);
    GameSpec g;
    g.N = preset.N;
    g.T = preset.T;
    g.strategies = preset.strategies;
    g.R_disc = preset.R_disc;
    g.L = preset.L;
    for (int t = 0; t < g.T; ++t) g.D_diag.push_back(draw(rng, preset.D));
    for (int t = 0; t < g.T; ++t) g.Jbar.push_back(draw(rng, preset.Jbar));
    for (const auto& s : g.strategies) {
        g.alpha.emplace_back();
        for (std::size_t i = 0; i < s.size(); ++i) g.alpha.back().push_back(draw(rng, preset.alpha));
    }
    for (const auto& s : g.strategies) {
        g.beta.emplace_back();
        for (std::size_t i = 0; i < s.size(); ++i) g.beta.back().push_back(draw(rng, preset.beta));
    }
    for (int k = 0; k < g.N; ++k) g.mass.push_back(draw(rng, preset.mass));
    return g;
}

} // namespace memgne
