#include "memgne/builder.hpp"

#include <algorithm>
#include <map>

namespace memgne {

namespace {

ObjectSymbol S(std::string_view base) { return ObjectSymbol::intern(base); }
ObjectSymbol S(std::string_view base, std::initializer_list<std::int64_t> p) { return ObjectSymbol::intern(base, p); }

bool has_base(const Multiset& m, std::string_view base)
{
    return std::any_of(m.begin(), m.end(), [&](const auto& e) { return e.first.base() == base; });
}

// One multiplication unit: active from the step its counter k1 shows up in
// the first inner membrane until the unit's skin drops from - back to 0.
struct MultWatch {
    int skin = -1;
    int m1 = -1;
    std::optional<std::size_t> began;
    std::optional<std::size_t> ended;
    Charge last = Charge::neutral;

    void observe(std::size_t step, const Configuration& cfg)
    {
        const Charge c = cfg.at(skin).charge;
        if (!began && cfg.at(m1).contents.count(S("k1")) > 0) began = step;
        if (began && !ended && step > *began && last == Charge::minus && c == Charge::neutral) ended = step;
        last = c;
    }
    std::size_t length() const { return began && ended ? *ended - *began : 0; }
};

} // namespace

struct StageTracker::Impl {
    GameSpec spec;
    bool resolved = false;
    int P = -1;
    int skin = 0;
    std::vector<int> players;
    std::vector<std::vector<int>> strategy_membranes; // S_i_k per player
    std::vector<MultWatch> mult, mult2;

    StageReport report;
    LoopTiming cur;
    // First sighting per player / strategy within the current loop.
    std::map<int, std::size_t> sums_seen, parts_seen, rates_seen;

    explicit Impl(GameSpec s) : spec(std::move(s)) {}

    void resolve(const Configuration& cfg)
    {
        P = cfg.index_of("P");
        skin = 0;
        strategy_membranes.assign(static_cast<std::size_t>(spec.N), {});
        for (int k = 1; k <= spec.N; ++k) {
            players.push_back(cfg.index_of(labels::player(k)));
            for (int i : spec.strategies[static_cast<std::size_t>(k - 1)])
                strategy_membranes[static_cast<std::size_t>(k - 1)].push_back(
                    cfg.index_of(labels::strategy_membrane("S", i, k)));
        }
        reset_watches(cfg);
        resolved = true;
    }

    void reset_watches(const Configuration& cfg)
    {
        mult.clear();
        mult2.clear();
        for (int k = 1; k <= spec.N; ++k)
            for (int i : spec.strategies[static_cast<std::size_t>(k - 1)]) {
                auto idx = [&](const char* kind) { return cfg.index_of(labels::strategy_membrane(kind, i, k)); };
                mult.push_back(MultWatch{idx("MULT"), idx("M1"), {}, {}, cfg.at(idx("MULT")).charge});
                mult2.push_back(MultWatch{idx("MULT2"), idx("M1p"), {}, {}, cfg.at(idx("MULT2")).charge});
            }
        sums_seen.clear();
        parts_seen.clear();
        rates_seen.clear();
    }

    static std::optional<std::size_t> all_seen(const std::map<int, std::size_t>& seen, std::size_t expected)
    {
        if (seen.size() != expected) return std::nullopt;
        std::size_t last = 0;
        for (const auto& [_, t] : seen) last = std::max(last, t);
        return last;
    }

    void close_loop(const Configuration& cfg)
    {
        for (const auto& w : mult) cur.longest_mult = std::max(cur.longest_mult, w.length());
        for (const auto& w : mult2) cur.longest_mult2 = std::max(cur.longest_mult2, w.length());
        report.loops.push_back(cur);
        reset_watches(cfg);
    }

    void observe(std::size_t step, const Configuration& cfg)
    {
        if (!resolved) {
            resolve(cfg);
            cur.loop = 1;
            cur.start = step;
        }
        const auto& pm = cfg.at(P).contents;
        if (step > cur.start && pm.count(S("y0")) > 0) {
            cur.end = step;
            close_loop(cfg);
            LoopTiming next;
            next.loop = cur.loop + 1;
            next.start = step;
            cur = next;
            return;
        }

        for (auto& w : mult) w.observe(step, cfg);
        for (auto& w : mult2) w.observe(step, cfg);

        if (!cur.payoff_ready && pm.count(S("y6")) > 0) cur.payoff_ready = step;

        if (step == cur.start + 8) {
            cur.payoff_objects_at_8 = std::all_of(players.begin(), players.end(),
                                                  [&](int p) { return has_base(cfg.at(p).contents, "pa"); });
        }

        for (std::size_t k = 0; k < players.size(); ++k) {
            const auto& region = cfg.at(players[k]).contents;
            const int key = static_cast<int>(k);
            if (!sums_seen.count(key) && region.count(S("y2_2")) > 0) sums_seen[key] = step;
            if (!parts_seen.count(key)) {
                bool all = true;
                for (int i : spec.strategies[k]) all = all && region.count(S("y3_7", {i})) > 0;
                if (all) parts_seen[key] = step;
            }
            for (std::size_t j = 0; j < strategy_membranes[k].size(); ++j) {
                const int m = strategy_membranes[k][j];
                if (!rates_seen.count(m) && cfg.at(m).contents.count(S("y5_0")) > 0) rates_seen[m] = step;
            }
        }
        if (!cur.sums_done) cur.sums_done = all_seen(sums_seen, players.size());
        if (!cur.positive_parts) cur.positive_parts = all_seen(parts_seen, players.size());
        if (!cur.rates_done) cur.rates_done = all_seen(rates_seen, spec.strategy_count());

        if (!cur.exit_out) {
            const auto& sk = cfg.at(skin).contents;
            for (const auto& [sym, n] : sk)
                if (n > 0 && sym.base() == "EXIT" && sym.params().back() == cur.loop) {
                    cur.exit_out = step;
                    break;
                }
        }
    }

    StageReport finish(std::size_t final_step)
    {
        if (resolved) {
            // The last loop never returns y0 to P; it ends when the system halts.
            if (cur.exit_out && !cur.end) cur.end = final_step;
            for (const auto& w : mult) cur.longest_mult = std::max(cur.longest_mult, w.length());
            for (const auto& w : mult2) cur.longest_mult2 = std::max(cur.longest_mult2, w.length());
            report.loops.push_back(cur);
        }
        for (const auto& lt : report.loops) {
            auto miss = [&](const std::optional<std::size_t>& v, const char* what) {
                if (!v) report.failures.push_back("loop " + std::to_string(lt.loop) + ": " + what);
            };
            miss(lt.payoff_ready, "stage 1 (payoff vector) incomplete");
            miss(lt.sums_done, "stage 2 (expected payoff) incomplete");
            miss(lt.positive_parts, "stage 3 (positive parts) incomplete");
            miss(lt.rates_done, "stage 4 (rates) incomplete");
            miss(lt.exit_out, "stage 5 (update and exit) incomplete");
            miss(lt.end, "loop never finished");
        }
        return std::move(report);
    }
};

StageTracker::StageTracker(const GameSpec& spec) : impl_(std::make_unique<Impl>(spec)) {}
StageTracker::~StageTracker() = default;
StageTracker::StageTracker(StageTracker&&) noexcept = default;

void StageTracker::observe(std::size_t step, const Configuration& cfg) { impl_->observe(step, cfg); }

StageReport StageTracker::finish(std::size_t final_step) { return impl_->finish(final_step); }

StageReport stage_boundaries(const Trace& trace, const GameSpec& spec)
{
    StageTracker tracker(spec);
    for (std::size_t t = 0; t < trace.snapshots.size(); ++t) tracker.observe(t, trace.snapshots[t]);
    return tracker.finish(trace.steps.size());
}

} // namespace memgne
