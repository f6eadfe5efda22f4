#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace memgne {

/// Energy-market game instance. Players and time slots are numbered from 1;
/// `strategies[k-1]` lists the slots of player k in ascending order, and
/// `alpha`/`beta` follow the same shape.
struct GameSpec {
    int N = 0;
    int T = 0;
    std::vector<std::vector<int>> strategies;
    std::vector<double> D_diag;
    std::vector<double> Jbar;
    std::vector<std::vector<double>> alpha;
    std::vector<std::vector<double>> beta;
    std::vector<double> mass;
    std::int64_t R_disc = 100;
    int L = 1;

    std::size_t strategy_count() const noexcept;

    friend bool operator==(const GameSpec&, const GameSpec&) = default;
};

/// One message per violated invariant; empty iff the spec is usable.
std::vector<std::string> validate_game(const GameSpec& spec);

/// JSON with keys N, T, strategies, D_diag, Jbar, alpha, beta, mass, R_disc, L.
std::string game_to_json(const GameSpec& spec);
/// Throws std::invalid_argument on malformed documents. R_disc and L are
/// optional (100 and 1).
GameSpec game_from_json(std::string_view text);

GameSpec load_game(const std::string& path);
void save_game(const GameSpec& spec, const std::string& path);

} // namespace memgne
