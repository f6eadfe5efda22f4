#include "memgne/game.hpp"

#include <json.hpp>

#include <cmath>
#include <fstream>
#include <set>
#include <sstream>
#include <stdexcept>

namespace memgne {

using nlohmann::json;

std::size_t GameSpec::strategy_count() const noexcept
{
    std::size_t n = 0;
    for (const auto& s : strategies) n += s.size();
    return n;
}

namespace {

bool usable(double v) { return std::isfinite(v) && v >= 0.0; }

void check_vector(std::vector<std::string>& out, const std::vector<double>& v, std::size_t want, const char* name)
{
    if (v.size() != want)
        out.push_back(std::string(name) + " has " + std::to_string(v.size()) + " entries, expected " + std::to_string(want));
    for (std::size_t i = 0; i < v.size(); ++i)
        if (!usable(v[i])) out.push_back(std::string(name) + "[" + std::to_string(i) + "] must be finite and nonnegative");
}

void check_per_strategy(std::vector<std::string>& out, const GameSpec& s, const std::vector<std::vector<double>>& v,
                        const char* name)
{
    if (v.size() != s.strategies.size()) {
        out.push_back(std::string(name) + " must have one row per player");
        return;
    }
    for (std::size_t k = 0; k < v.size(); ++k)
        check_vector(out, v[k], s.strategies[k].size(), (std::string(name) + "[" + std::to_string(k + 1) + "]").c_str());
}

} // namespace

std::vector<std::string> validate_game(const GameSpec& s)
{
    std::vector<std::string> out;
    if (s.N < 1) out.push_back("N must be at least 1");
    if (s.T < 1) out.push_back("T must be at least 1");
    if (static_cast<int>(s.strategies.size()) != s.N)
        out.push_back("strategies lists " + std::to_string(s.strategies.size()) + " players, N is " + std::to_string(s.N));
    for (std::size_t k = 0; k < s.strategies.size(); ++k) {
        const auto& sk = s.strategies[k];
        const std::string who = "player " + std::to_string(k + 1);
        if (sk.size() < 2) out.push_back(who + " needs at least 2 strategies");
        std::set<int> seen;
        for (std::size_t i = 0; i < sk.size(); ++i) {
            if (sk[i] < 1 || sk[i] > s.T)
                out.push_back(who + ": slot " + std::to_string(sk[i]) + " outside 1.." + std::to_string(s.T));
            if (!seen.insert(sk[i]).second) out.push_back(who + ": slot " + std::to_string(sk[i]) + " used twice");
            if (i > 0 && sk[i] <= sk[i - 1]) out.push_back(who + ": strategies must be listed in ascending order");
        }
    }
    const auto T = static_cast<std::size_t>(std::max(s.T, 0));
    check_vector(out, s.D_diag, T, "D_diag");
    check_vector(out, s.Jbar, T, "Jbar");
    check_per_strategy(out, s, s.alpha, "alpha");
    check_per_strategy(out, s, s.beta, "beta");
    if (static_cast<int>(s.mass.size()) != s.N) out.push_back("mass must have one entry per player");
    for (std::size_t k = 0; k < s.mass.size(); ++k)
        if (!std::isfinite(s.mass[k]) || s.mass[k] <= 0.0) out.push_back("mass[" + std::to_string(k + 1) + "] must be positive");
    if (s.R_disc < 2) out.push_back("R_disc must be at least 2");
    if (s.L < 0) out.push_back("L must be nonnegative");
    return out;
}

std::string game_to_json(const GameSpec& s)
{
    json j;
    j["N"] = s.N;
    j["T"] = s.T;
    j["strategies"] = s.strategies;
    j["D_diag"] = s.D_diag;
    j["Jbar"] = s.Jbar;
    j["alpha"] = s.alpha;
    j["beta"] = s.beta;
    j["mass"] = s.mass;
    j["R_disc"] = s.R_disc;
    j["L"] = s.L;
    return j.dump(2) + "\n";
}

GameSpec game_from_json(std::string_view text)
{
    try {
        json j = json::parse(text);
        GameSpec s;
        j.at("N").get_to(s.N);
        j.at("T").get_to(s.T);
        j.at("strategies").get_to(s.strategies);
        j.at("D_diag").get_to(s.D_diag);
        j.at("Jbar").get_to(s.Jbar);
        j.at("alpha").get_to(s.alpha);
        j.at("beta").get_to(s.beta);
        j.at("mass").get_to(s.mass);
        if (j.contains("R_disc")) j.at("R_disc").get_to(s.R_disc);
        if (j.contains("L")) j.at("L").get_to(s.L);
        return s;
    } catch (const json::exception& e) {
        throw std::invalid_argument(std::string("game spec: ") + e.what());
    }
}

GameSpec load_game(const std::string& path)
{
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open game spec '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return game_from_json(buf.str());
}

void save_game(const GameSpec& spec, const std::string& path)
{
    std::ofstream out(path);
    if (!out) throw std::invalid_argument("cannot write '" + path + "'");
    out << game_to_json(spec);
}

} // namespace memgne
