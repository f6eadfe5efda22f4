#include "memgne/engine.hpp"

#include <algorithm>
#include <limits>
#include <map>
#include <sstream>

namespace memgne {

Count StepRecord::applications_of(std::string_view rule_id) const
{
    Count total = 0;
    for (const auto& a : applications)
        if (a.rule_id == rule_id) total += a.count;
    return total;
}

AmbiguityError::AmbiguityError(std::vector<AmbiguityDiagnostic> diagnostics)
    : std::runtime_error([&] {
          std::string msg = "ambiguous step:";
          for (const auto& d : diagnostics)
              msg += " [" + d.first_rule + " vs " + d.second_rule + " on " + d.symbol + " in " + d.region + "]";
          return msg;
      }()),
      diagnostics_(std::move(diagnostics))
{
}

const char* to_string(HaltReason r) noexcept
{
    return r == HaltReason::quiescent ? "quiescent" : "step_budget";
}

namespace {

struct Need {
    int slot; ///< membrane index, or membrane count for the environment
    ObjectSymbol symbol;
    Count count;
};

struct CompiledRule {
    std::size_t rule_index = 0;
    int target = -1;
    int outside = -1;
    int child = -1;
    Charge pre{}, post{}, child_pre{}, child_post{};
    bool target_changes = false;
    bool child_changes = false;
    std::vector<Need> consume;
    std::vector<Need> produce;
};

void append_needs(std::vector<Need>& out, int slot, const Multiset& m)
{
    for (const auto& [s, n] : m.sorted()) out.push_back(Need{slot, s, n});
}

} // namespace

struct Engine::Impl {
    PSystem sys;
    EngineOptions options;
    std::vector<CompiledRule> compiled; ///< in priority order
    std::vector<std::size_t> position;  ///< rule index -> index in `compiled`
    std::vector<std::string> labels;
    std::map<std::string, std::size_t, std::less<>> rule_by_id;
    std::vector<std::vector<bool>> above; ///< above[a][b]: a has (transitive) priority over b; strict mode only

    Impl(PSystem s, EngineOptions o) : sys(std::move(s)), options(o)
    {
        const auto& cfg = sys.initial;
        const int env = static_cast<int>(cfg.membranes().size());
        for (const auto& m : cfg.membranes()) labels.push_back(m.label);

        auto order = sys.priority_order();
        position.assign(sys.rules().size(), 0);
        compiled.reserve(order.size());
        for (auto ri : order) {
            const auto& r = sys.rules()[ri];
            if (!r.consumes_anything())
                throw StructuralError("rule '" + r.id + "' consumes nothing");
            CompiledRule c;
            c.rule_index = ri;
            c.target = cfg.index_of(r.target);
            const int parent = cfg.at(c.target).parent;
            c.outside = parent < 0 ? env : parent;
            c.pre = r.pre_charge;
            c.post = r.post_charge;
            c.target_changes = r.pre_charge != r.post_charge;
            append_needs(c.consume, c.outside, r.consume_outside);
            append_needs(c.consume, c.target, r.consume_inside);
            append_needs(c.produce, c.outside, r.produce_outside);
            append_needs(c.produce, c.target, r.produce_inside);
            if (r.child) {
                c.child = cfg.index_of(r.child->label);
                if (cfg.at(c.child).parent != c.target)
                    throw StructuralError("rule '" + r.id + "': '" + r.child->label + "' is not a child of '" + r.target + "'");
                c.child_pre = r.child->pre_charge;
                c.child_post = r.child->post_charge;
                c.child_changes = c.child_pre != c.child_post;
                append_needs(c.consume, c.child, r.child->consume);
                append_needs(c.produce, c.child, r.child->produce);
            }
            position[ri] = compiled.size();
            compiled.push_back(std::move(c));
        }
        for (std::size_t i = 0; i < sys.rules().size(); ++i) rule_by_id.emplace(sys.rules()[i].id, i);
        if (options.strict) build_closure();
    }

    void build_closure()
    {
        const std::size_t n = sys.rules().size();
        std::vector<std::vector<std::size_t>> lower(n);
        for (const auto& [hi, lo] : sys.priorities()) lower[*sys.find_rule(hi)].push_back(*sys.find_rule(lo));
        above.assign(n, std::vector<bool>(n, false));
        for (std::size_t a = 0; a < n; ++a) {
            std::vector<std::size_t> stack(lower[a].begin(), lower[a].end());
            while (!stack.empty()) {
                auto b = stack.back();
                stack.pop_back();
                if (above[a][b]) continue;
                above[a][b] = true;
                stack.insert(stack.end(), lower[b].begin(), lower[b].end());
            }
        }
    }

    void check_layout(const Configuration& cfg) const
    {
        const auto& ms = cfg.membranes();
        if (ms.size() != labels.size()) throw StructuralError("configuration does not match the P system's membrane structure");
        for (std::size_t i = 0; i < ms.size(); ++i)
            if (ms[i].label != labels[i]) throw StructuralError("configuration does not match the P system's membrane structure");
    }

    static const Multiset& slot_of(const Configuration& cfg, int slot)
    {
        return slot == static_cast<int>(cfg.membranes().size()) ? cfg.environment() : cfg.at(slot).contents;
    }
    static Multiset& slot_of(Configuration& cfg, int slot)
    {
        return slot == static_cast<int>(cfg.membranes().size()) ? cfg.environment() : cfg.at(slot).contents;
    }

    bool charges_match(const CompiledRule& c, const Configuration& cfg) const
    {
        if (cfg.at(c.target).charge != c.pre) return false;
        return c.child < 0 || cfg.at(c.child).charge == c.child_pre;
    }

    /// Applications the available objects support, ignoring charge locks.
    static Count capacity(const CompiledRule& c, const Configuration& avail)
    {
        Count k = std::numeric_limits<Count>::max();
        for (const auto& need : c.consume) {
            k = std::min(k, slot_of(avail, need.slot).count(need.symbol) / need.count);
            if (k == 0) break;
        }
        return c.consume.empty() ? 0 : k;
    }

    void check_ambiguity(const Configuration& cfg) const
    {
        struct Demand {
            std::size_t compiled_index;
            Count wanted;
        };
        std::map<std::pair<int, std::uint32_t>, std::vector<Demand>> users;
        for (std::size_t ci = 0; ci < compiled.size(); ++ci) {
            const auto& c = compiled[ci];
            if (!charges_match(c, cfg)) continue;
            Count k = capacity(c, cfg);
            if (k == 0) continue;
            if (c.target_changes || c.child_changes) k = 1;
            for (const auto& need : c.consume)
                users[{need.slot, need.symbol.id()}].push_back(Demand{ci, k * need.count});
        }
        std::vector<AmbiguityDiagnostic> out;
        for (const auto& [key, list] : users) {
            if (list.size() < 2) continue;
            const auto& c0 = compiled[list.front().compiled_index];
            ObjectSymbol sym;
            for (const auto& need : c0.consume)
                if (need.slot == key.first && need.symbol.id() == key.second) sym = need.symbol;
            const Count available = slot_of(cfg, key.first).count(sym);
            for (std::size_t x = 0; x < list.size(); ++x)
                for (std::size_t y = x + 1; y < list.size(); ++y) {
                    auto a = compiled[list[x].compiled_index].rule_index;
                    auto b = compiled[list[y].compiled_index].rule_index;
                    if (above[a][b] || above[b][a]) continue;
                    if (list[x].wanted + list[y].wanted <= available) continue;
                    const std::string region =
                        key.first == static_cast<int>(labels.size()) ? std::string(kEnvironment) : labels[static_cast<std::size_t>(key.first)];
                    out.push_back(AmbiguityDiagnostic{region, sym.text(), sys.rules()[a].id, sys.rules()[b].id});
                }
        }
        if (!out.empty()) throw AmbiguityError(std::move(out));
    }

    std::pair<Configuration, StepRecord> step(const Configuration& cfg) const
    {
        check_layout(cfg);
        if (options.strict) check_ambiguity(cfg);

        const std::size_t n = labels.size();
        Configuration next = cfg; // doubles as the pool of not-yet-consumed pre-step objects
        std::vector<Multiset> produced(n + 1);
        std::vector<char> locked(n, 0);
        std::vector<std::pair<int, Charge>> staged;
        StepRecord record;

        for (const auto& c : compiled) {
            if (!charges_match(c, cfg)) continue;
            Count k = capacity(c, next);
            if (k == 0) continue;
            if (c.target_changes || c.child_changes) {
                if ((c.target_changes && locked[static_cast<std::size_t>(c.target)]) ||
                    (c.child_changes && locked[static_cast<std::size_t>(c.child)]))
                    continue;
                k = 1;
                if (c.target_changes) {
                    locked[static_cast<std::size_t>(c.target)] = 1;
                    staged.emplace_back(c.target, c.post);
                }
                if (c.child_changes) {
                    locked[static_cast<std::size_t>(c.child)] = 1;
                    staged.emplace_back(c.child, c.child_post);
                }
            }
            for (const auto& need : c.consume) slot_of(next, need.slot).remove(need.symbol, checked_mul(need.count, k));
            for (const auto& out : c.produce)
                produced[static_cast<std::size_t>(out.slot)].add(out.symbol, checked_mul(out.count, k));
            const auto& rule = sys.rules()[c.rule_index];
            record.applications.push_back(Application{rule.id, rule.target, k});
        }

        for (std::size_t slot = 0; slot <= n; ++slot) slot_of(next, static_cast<int>(slot)).add(produced[slot]);
        for (const auto& [idx, charge] : staged) next.at(idx).charge = charge;
        return {std::move(next), std::move(record)};
    }

    Configuration replay(const Configuration& cfg, const StepRecord& record) const
    {
        check_layout(cfg);
        Configuration next = cfg;
        std::vector<Multiset> produced(labels.size() + 1);
        for (const auto& app : record.applications) {
            auto it = rule_by_id.find(app.rule_id);
            if (it == rule_by_id.end()) throw std::invalid_argument("unknown rule '" + app.rule_id + "' in step record");
            const auto& c = compiled[position[it->second]];
            if (labels[static_cast<std::size_t>(c.target)] != app.label)
                throw std::invalid_argument("rule '" + app.rule_id + "' recorded at wrong membrane '" + app.label + "'");
            if (!charges_match(c, cfg)) throw std::invalid_argument("rule '" + app.rule_id + "' charge mismatch on replay");
            for (const auto& need : c.consume) slot_of(next, need.slot).remove(need.symbol, checked_mul(need.count, app.count));
            for (const auto& out : c.produce)
                produced[static_cast<std::size_t>(out.slot)].add(out.symbol, checked_mul(out.count, app.count));
            if (c.target_changes) next.at(c.target).charge = c.post;
            if (c.child_changes) next.at(c.child).charge = c.child_post;
        }
        for (std::size_t slot = 0; slot < produced.size(); ++slot) slot_of(next, static_cast<int>(slot)).add(produced[slot]);
        return next;
    }
};

Engine::Engine(PSystem sys, EngineOptions options) : impl_(std::make_unique<Impl>(std::move(sys), options)) {}
Engine::~Engine() = default;
Engine::Engine(Engine&&) noexcept = default;
Engine& Engine::operator=(Engine&&) noexcept = default;

const PSystem& Engine::system() const noexcept { return impl_->sys; }

bool Engine::applicable(std::size_t rule_index, const Configuration& cfg) const
{
    impl_->check_layout(cfg);
    const auto& c = impl_->compiled.at(impl_->position.at(rule_index));
    return impl_->charges_match(c, cfg) && Impl::capacity(c, cfg) > 0;
}

std::pair<Configuration, StepRecord> Engine::step(const Configuration& cfg) const { return impl_->step(cfg); }

RunResult Engine::run(std::size_t max_steps, bool keep_trace, const StepObserver& observer) const
{
    return run_from(impl_->sys.initial, max_steps, keep_trace, observer);
}

RunResult Engine::run_from(Configuration cfg, std::size_t max_steps, bool keep_trace, const StepObserver& observer) const
{
    RunResult result;
    if (keep_trace) result.trace.snapshots.push_back(cfg);
    for (;;) {
        auto [next, record] = impl_->step(cfg);
        if (record.empty()) {
            result.reason = HaltReason::quiescent;
            break;
        }
        if (result.steps == max_steps) {
            result.reason = HaltReason::step_budget;
            break;
        }
        ++result.steps;
        cfg = std::move(next);
        if (observer) observer(result.steps, cfg, record);
        if (keep_trace) {
            result.trace.snapshots.push_back(cfg);
            result.trace.steps.push_back(std::move(record));
        }
    }
    result.final_config = std::move(cfg);
    return result;
}

Configuration Engine::replay(const Configuration& cfg, const StepRecord& record) const { return impl_->replay(cfg, record); }

bool rule_applicable(const RuleSpec& rule, const Configuration& cfg, std::string_view membrane)
{
    const int idx = cfg.index_of(membrane);
    if (rule.target != membrane) return false;
    const auto& target = cfg.at(idx);
    if (target.charge != rule.pre_charge) return false;
    const Multiset& outside = target.parent < 0 ? cfg.environment() : cfg.at(target.parent).contents;
    if (!outside.contains(rule.consume_outside) || !target.contents.contains(rule.consume_inside)) return false;
    if (rule.child) {
        const int ci = cfg.index_of(rule.child->label);
        const auto& child = cfg.at(ci);
        if (child.parent != idx || child.charge != rule.child->pre_charge) return false;
        if (!child.contents.contains(rule.child->consume)) return false;
    }
    return rule.consumes_anything();
}

std::pair<Configuration, StepRecord> maximal_step(const Configuration& cfg, const PSystem& sys, EngineOptions options)
{
    return Engine(sys, options).step(cfg);
}

RunResult run(const PSystem& sys, std::size_t max_steps, bool trace_mode, EngineOptions options)
{
    return Engine(sys, options).run(max_steps, trace_mode);
}

Multiset read_region(const Configuration& cfg, std::string_view label, std::string_view base_filter)
{
    return cfg.region(label).filter_base(base_filter);
}

std::string format_step_line(std::size_t step, const StepRecord& record)
{
    std::vector<std::string> entries;
    entries.reserve(record.applications.size());
    for (const auto& a : record.applications)
        entries.push_back(a.rule_id + "@" + a.label + "×" + std::to_string(a.count));
    std::sort(entries.begin(), entries.end());
    std::ostringstream os;
    os << step;
    for (const auto& e : entries) os << ' ' << e;
    return os.str();
}

} // namespace memgne
