#include "memgne/pspec.hpp"

#include <set>

namespace memgne::pspec {

const char* to_string(DiagnosticKind k) noexcept
{
    switch (k) {
    case DiagnosticKind::unknown_label: return "unknown label";
    case DiagnosticKind::not_a_child: return "not a child";
    case DiagnosticKind::no_consumption: return "no consumption";
    case DiagnosticKind::undeclared_symbol: return "undeclared symbol";
    case DiagnosticKind::arity_mismatch: return "arity mismatch";
    case DiagnosticKind::duplicate_rule: return "duplicate rule";
    case DiagnosticKind::unknown_priority_rule: return "unknown priority rule";
    case DiagnosticKind::cyclic_priority: return "cyclic priority";
    }
    return "?";
}

namespace {

class Checker {
public:
    explicit Checker(const PSystem& sys) : sys_(sys) {}

    std::vector<Diagnostic> run()
    {
        symbols(sys_.initial.environment(), "");
        for (const auto& m : sys_.initial.membranes()) symbols(m.contents, "");
        std::set<std::string> ids;
        for (const auto& r : sys_.rules()) {
            if (!ids.insert(r.id).second) add(DiagnosticKind::duplicate_rule, "rule id '" + r.id + "' declared twice", r.id);
            rule(r);
        }
        priorities();
        return std::move(out_);
    }

private:
    void add(DiagnosticKind k, std::string msg, std::string rule_id)
    {
        out_.push_back(Diagnostic{k, std::move(msg), std::move(rule_id)});
    }

    void symbols(const Multiset& m, const std::string& rule_id)
    {
        for (const auto& [s, n] : m) {
            if (!reported_.insert(s.id()).second) continue;
            auto it = sys_.alphabet.find(s.base());
            if (it == sys_.alphabet.end())
                add(DiagnosticKind::undeclared_symbol, "object '" + s.text() + "' has undeclared base '" + s.base() + "'", rule_id);
            else if (it->second != s.arity())
                add(DiagnosticKind::arity_mismatch,
                    "object '" + s.text() + "' has " + std::to_string(s.arity()) + " parameters, '" + s.base() +
                        "' is declared with " + std::to_string(it->second),
                    rule_id);
        }
    }

    void rule(const RuleSpec& r)
    {
        const auto& cfg = sys_.initial;
        auto target = cfg.find(r.target);
        if (!target) add(DiagnosticKind::unknown_label, "rule '" + r.id + "' targets unknown membrane '" + r.target + "'", r.id);
        if (r.child) {
            auto child = cfg.find(r.child->label);
            if (!child)
                add(DiagnosticKind::unknown_label, "rule '" + r.id + "' names unknown membrane '" + r.child->label + "'", r.id);
            else if (target && cfg.at(*child).parent != *target)
                add(DiagnosticKind::not_a_child,
                    "rule '" + r.id + "': '" + r.child->label + "' is not a child of '" + r.target + "'", r.id);
        }
        if (!r.consumes_anything()) add(DiagnosticKind::no_consumption, "rule '" + r.id + "' consumes nothing", r.id);
        symbols(r.consume_outside, r.id);
        symbols(r.produce_outside, r.id);
        symbols(r.consume_inside, r.id);
        symbols(r.produce_inside, r.id);
        if (r.child) {
            symbols(r.child->consume, r.id);
            symbols(r.child->produce, r.id);
        }
    }

    void priorities()
    {
        bool all_known = true;
        for (const auto& [hi, lo] : sys_.priorities())
            for (const auto* id : {&hi, &lo})
                if (!sys_.find_rule(*id)) {
                    all_known = false;
                    add(DiagnosticKind::unknown_priority_rule, "priority '" + hi + " > " + lo + "' names unknown rule '" + *id + "'", "");
                }
        if (!all_known) return;
        try {
            (void)sys_.priority_order();
        } catch (const PriorityCycle& e) {
            add(DiagnosticKind::cyclic_priority, e.what(), "");
        }
    }

    const PSystem& sys_;
    std::vector<Diagnostic> out_;
    std::set<std::uint32_t> reported_;
};

} // namespace

std::vector<Diagnostic> validate(const PSystem& sys) { return Checker(sys).run(); }

} // namespace memgne::pspec
