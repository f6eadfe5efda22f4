#include "memgne/harness.hpp"

#include <algorithm>
#include <bit>
#include <sstream>

namespace memgne {

namespace {

ObjectSymbol obj(std::string_view base) { return ObjectSymbol::intern(base); }
ObjectSymbol obj(std::string_view base, std::initializer_list<std::int64_t> p) { return ObjectSymbol::intern(base, p); }

template <class T>
std::vector<std::vector<T>> shaped(const GameSpec& spec, T fill)
{
    std::vector<std::vector<T>> out;
    for (const auto& s : spec.strategies) out.emplace_back(s.size(), fill);
    return out;
}

// Reads the stage intermediates of every loop off the running system.
class Probe {
public:
    explicit Probe(const GameSpec& spec) : spec_(spec) {}

    void observe(std::size_t step, const Configuration& cfg)
    {
        if (players_.empty()) {
            resolve(cfg);
            open(step);
        }
        const auto& pm = cfg.at(P_).contents;
        if (step > start_ && pm.count(obj("y0")) > 0) {
            close(cfg);
            open(step);
            return;
        }
        if (!payoff_seen_ && pm.count(obj("y6")) > 0) {
            payoff_seen_ = true;
            std::size_t l = 0;
            for (std::size_t k = 0; k < players_.size(); ++k)
                for (int i : spec_.strategies[k]) {
                    ++l;
                    cur_.payoff[l - 1] = cfg.at(players_[k]).contents.count(
                        obj("pa", {static_cast<std::int64_t>(k + 1), i, static_cast<std::int64_t>(l)}));
                }
        }
        for (std::size_t k = 0; k < players_.size(); ++k) {
            const auto& region = cfg.at(players_[k]).contents;
            const auto& slots = spec_.strategies[k];
            if (cur_.expected[k] < 0 && region.count(obj("y3_0")) > 0) cur_.expected[k] = region.count(obj("pos"));
            if (cur_.positive_sum[k] < 0 &&
                std::all_of(slots.begin(), slots.end(), [&](int i) { return region.count(obj("y3_7", {i})) > 0; })) {
                cur_.positive_sum[k] = region.count(obj("q"));
                for (std::size_t j = 0; j < slots.size(); ++j) cur_.positive[k][j] = region.count(obj("qi", {slots[j]}));
            }
            for (std::size_t j = 0; j < slots.size(); ++j) {
                const auto& s = cfg.at(strategy_[k][j]).contents;
                if (cur_.zvarp[k][j] < 0 && s.count(obj("y5_0")) > 0) {
                    cur_.zvarp[k][j] = s.count(obj("zvarp"));
                    cur_.zvarn[k][j] = s.count(obj("zvarn"));
                }
            }
        }
    }

    /// Closes the running loop if it got as far as emitting its results.
    void finish(const Configuration& cfg)
    {
        if (!players_.empty() && !closed_) close(cfg);
    }

    const std::vector<ProbedLoop>& loops() const { return loops_; }
    const std::vector<std::vector<Count>>& err_after() const { return err_after_; }

private:
    void resolve(const Configuration& cfg)
    {
        P_ = cfg.index_of("P");
        for (int k = 1; k <= spec_.N; ++k) {
            players_.push_back(cfg.index_of(labels::player(k)));
            strategy_.emplace_back();
            for (int i : spec_.strategies[static_cast<std::size_t>(k - 1)])
                strategy_.back().push_back(cfg.index_of(labels::strategy_membrane("S", i, k)));
        }
    }

    void open(std::size_t step)
    {
        start_ = step;
        closed_ = false;
        payoff_seen_ = false;
        cur_ = ProbedLoop{};
        cur_.payoff.assign(spec_.strategy_count(), -1);
        cur_.expected.assign(players_.size(), -1);
        cur_.positive_sum.assign(players_.size(), -1);
        cur_.positive = cur_.zvarp = cur_.zvarn = shaped<Count>(spec_, -1);
    }

    void close(const Configuration& cfg)
    {
        closed_ = true;
        loops_.push_back(cur_);
        std::vector<Count> err;
        for (int k = 1; k <= spec_.N; ++k) err.push_back(cfg.at(0).contents.count(obj("err", {k})));
        err_after_.push_back(std::move(err));
    }

    const GameSpec& spec_;
    int P_ = -1;
    std::vector<int> players_;
    std::vector<std::vector<int>> strategy_;
    std::size_t start_ = 0;
    bool closed_ = false;
    bool payoff_seen_ = false;
    ProbedLoop cur_;
    std::vector<ProbedLoop> loops_;
    std::vector<std::vector<Count>> err_after_;
};

std::string fmt_opt(const std::optional<std::size_t>& v) { return v ? std::to_string(*v) : std::string("-"); }

} // namespace

GneRun run_gne(const GameSpec& spec, const GneRunOptions& options)
{
    GneRun out;
    out.trajectory.index = strategy_index(spec);
    out.trajectory.states.push_back(initial_state(spec));
    if (spec.L == 0) {
        auto diags = validate_game(spec);
        if (!diags.empty()) throw std::invalid_argument("invalid game spec: " + diags.front());
        return out;
    }

    Engine engine(build_gne_system(spec), EngineOptions{options.strict});
    const std::size_t budget =
        options.max_steps ? options.max_steps : 200 * (static_cast<std::size_t>(spec.L) + 1);
    StageTracker tracker(spec);
    Probe probe(spec);
    const auto& initial = engine.system().initial;
    tracker.observe(0, initial);
    probe.observe(0, initial);
    auto result = engine.run(budget, options.keep_trace, [&](std::size_t t, const Configuration& cfg, const StepRecord&) {
        tracker.observe(t, cfg);
        probe.observe(t, cfg);
    });
    probe.finish(result.final_config);
    out.steps = result.steps;
    out.reason = result.reason;
    out.stages = tracker.finish(result.steps);
    out.probes = probe.loops();
    out.trace = std::move(result.trace);

    if (result.reason == HaltReason::step_budget)
        out.problems.push_back("step budget of " + std::to_string(budget) + " exhausted");
    for (const auto& f : out.stages.failures) out.problems.push_back(f);

    const auto& skin = result.final_config.at(0).contents;
    const auto loops = std::min<std::size_t>(out.probes.size(), static_cast<std::size_t>(spec.L));
    if (loops < static_cast<std::size_t>(spec.L))
        out.problems.push_back("only " + std::to_string(loops) + " of " + std::to_string(spec.L) + " loops observed");
    for (std::size_t n = 1; n <= loops; ++n) {
        StateZ s;
        s.z = shaped<Count>(spec, 0);
        std::size_t l = 0;
        for (auto& zk : s.z)
            for (auto& c : zk) {
                const auto& ref = out.trajectory.index[l++];
                c = skin.count(obj("EXIT", {ref.k, ref.slot, ref.l, static_cast<std::int64_t>(n)}));
            }
        s.err = probe.err_after()[n - 1];
        const auto& prev = out.trajectory.states.back().err;
        for (std::size_t k = 0; k < s.err.size(); ++k)
            if (s.err[k] > prev[k])
                out.problems.push_back("loop " + std::to_string(n) + ": err{" + std::to_string(k + 1) + "} grew by " +
                                       std::to_string(s.err[k] - prev[k]));
        out.trajectory.states.push_back(std::move(s));
    }
    return out;
}

std::string stage_report_text(const GneRun& run)
{
    std::ostringstream os;
    os << "steps " << run.steps << " (" << to_string(run.reason) << ")\n";
    for (const auto& l : run.stages.loops) {
        os << "loop " << l.loop << ": start " << l.start << " payoff " << fmt_opt(l.payoff_ready) << " sums "
           << fmt_opt(l.sums_done) << " positive " << fmt_opt(l.positive_parts) << " rates " << fmt_opt(l.rates_done)
           << " exit " << fmt_opt(l.exit_out) << " end " << fmt_opt(l.end) << " length " << fmt_opt(l.total())
           << " mult " << l.longest_mult << " mult2 " << l.longest_mult2
           << " payoff-at-8 " << (l.payoff_objects_at_8 ? "yes" : "no") << '\n';
    }
    for (const auto& p : run.problems) os << "problem: " << p << '\n';
    return os.str();
}

std::string DiffReport::text() const
{
    if (agree()) return {};
    std::ostringstream os;
    if (first)
        os << "first divergence: loop " << first->loop << ", stage " << first->stage << " (" << first->marker << "), "
           << first->symbol << ": psystem " << first->psystem << ", oracle " << first->oracle << '\n';
    for (const auto& l : lines) os << l << '\n';
    return os.str();
}

DiffReport diff_runs(const GneRun& psystem, const OracleRun& oracle)
{
    DiffReport rep;
    const auto& index = psystem.trajectory.index;
    const std::size_t loops = std::min(psystem.probes.size(), oracle.loops.size());
    rep.loops = loops;

    auto note = [&](int loop, int stage, const char* marker, std::string symbol, Count a, Count b) {
        if (a == b || rep.first) return;
        rep.first = Divergence{loop, stage, marker, std::move(symbol), a, b};
    };
    auto label = [](const char* kind, const StrategyRef& r) { return labels::strategy_membrane(kind, r.slot, r.k); };

    for (std::size_t n = 0; n < loops && !rep.first; ++n) {
        const auto& p = psystem.probes[n];
        const auto& o = oracle.loops[n];
        const int loop = static_cast<int>(n + 1);
        for (const auto& r : index)
            note(loop, 1, "payoff vector",
                 "pa{" + std::to_string(r.k) + "," + std::to_string(r.slot) + "," + std::to_string(r.l) + "} in " +
                     labels::player(r.k),
                 p.payoff[static_cast<std::size_t>(r.l - 1)], o.payoff[static_cast<std::size_t>(r.l - 1)]);
        for (std::size_t k = 0; k < o.expected.size(); ++k)
            note(loop, 2, "expected payoff", "pos in " + labels::player(static_cast<int>(k + 1)), p.expected[k],
                 o.expected[k]);
        std::size_t l = 0;
        for (std::size_t k = 0; k < o.positive.size(); ++k) {
            for (std::size_t j = 0; j < o.positive[k].size(); ++j, ++l)
                note(loop, 3, "positive parts", "qi{" + std::to_string(index[l].slot) + "} in " + labels::player(index[l].k),
                     p.positive[k][j], o.positive[k][j]);
            note(loop, 3, "positive parts", "q in " + labels::player(static_cast<int>(k + 1)), p.positive_sum[k],
                 o.positive_sum[k]);
        }
        l = 0;
        for (std::size_t k = 0; k < o.zvarp.size(); ++k)
            for (std::size_t j = 0; j < o.zvarp[k].size(); ++j, ++l) {
                note(loop, 4, "rates", "zvarp in " + label("S", index[l]), p.zvarp[k][j], o.zvarp[k][j]);
                note(loop, 4, "rates", "zvarn in " + label("S", index[l]), p.zvarn[k][j], o.zvarn[k][j]);
            }
        const auto& ps = psystem.trajectory.states.at(n + 1);
        l = 0;
        for (std::size_t k = 0; k < o.next.z.size(); ++k) {
            for (std::size_t j = 0; j < o.next.z[k].size(); ++j, ++l) {
                const auto& r = index[l];
                note(loop, 5, "update",
                     "EXIT{" + std::to_string(r.k) + "," + std::to_string(r.slot) + "," + std::to_string(r.l) + "," +
                         std::to_string(loop) + "}",
                     ps.z[k][j], o.next.z[k][j]);
            }
            note(loop, 5, "update", "err{" + std::to_string(k + 1) + "}", ps.err[k], o.next.err[k]);
        }
    }

    const std::size_t states = std::min(psystem.trajectory.states.size(), oracle.trajectory.states.size());
    for (std::size_t n = 0; n < states; ++n) {
        const auto& a = psystem.trajectory.states[n];
        const auto& b = oracle.trajectory.states[n];
        std::size_t l = 0;
        for (std::size_t k = 0; k < a.z.size(); ++k)
            for (std::size_t j = 0; j < a.z[k].size(); ++j, ++l)
                if (a.z[k][j] != b.z[k][j])
                    rep.lines.push_back("loop " + std::to_string(n) + " k=" + std::to_string(index[l].k) +
                                        " i=" + std::to_string(index[l].slot) + " l=" + std::to_string(index[l].l) +
                                        ": psystem " + std::to_string(a.z[k][j]) + ", oracle " +
                                        std::to_string(b.z[k][j]));
    }
    if (psystem.trajectory.states.size() != oracle.trajectory.states.size())
        rep.lines.push_back("psystem recorded " + std::to_string(psystem.trajectory.states.size()) +
                            " states, oracle " + std::to_string(oracle.trajectory.states.size()));
    return rep;
}

DiffReport compare_engines(const GameSpec& spec, const OracleOptions& oracle_options, const GneRunOptions& options)
{
    return diff_runs(run_gne(spec, options), simulate(spec, oracle_options));
}

std::size_t mult_step_bound(Count m)
{
    if (m <= 0) return 5;
    if (m == 1) return 7;
    return 1 + 6 * static_cast<std::size_t>(std::bit_width(static_cast<std::uint64_t>(m - 1)));
}

MultReport run_mult(Count m, Count n, Trace* trace)
{
    MultReport rep;
    rep.m = m;
    rep.n = n;
    Engine engine(build_mult_system(m, n));
    auto result = engine.run(100000, trace != nullptr);
    rep.product = result.final_config.environment().count(obj("d"));
    rep.steps = result.steps;
    rep.bound = mult_step_bound(m);
    rep.exact_bound = m <= 1;
    if (trace) *trace = std::move(result.trace);
    return rep;
}

std::string MultReport::text() const
{
    std::ostringstream os;
    os << "m=" << m << " n=" << n << " product=" << product << (product_ok() ? "" : " (WRONG)") << " steps=" << steps
       << (exact_bound ? " expected=" : " bound=") << bound << (steps_ok() ? " ok" : " BOUND VIOLATED");
    return os.str();
}

} // namespace memgne
