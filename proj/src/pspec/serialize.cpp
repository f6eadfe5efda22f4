#include "memgne/pspec.hpp"

#include <algorithm>
#include <functional>
#include <ostream>
#include <sstream>

namespace memgne::pspec {

namespace {

std::string multiset_text(const Multiset& m)
{
    std::string out;
    for (const auto& [s, n] : m.sorted()) {
        if (!out.empty()) out += ' ';
        out += s.text();
        if (n != 1) out += '^' + std::to_string(n);
    }
    return out;
}

std::string charge_text(Charge c) { return std::string(" ^") + charge_char(c); }

std::string bracket(const Multiset& outside, const Multiset& inside, const std::string& label, Charge c,
                    const ChildPattern* child, bool post)
{
    std::string out;
    if (!outside.empty()) out += multiset_text(outside) + ' ';
    out += "[ ";
    std::string inner = multiset_text(inside);
    if (child) {
        if (!inner.empty()) inner += ' ';
        const Multiset& w = post ? child->produce : child->consume;
        inner += "[ " + (w.empty() ? std::string("~") : multiset_text(w)) + " ]'" + child->label +
                 charge_text(post ? child->post_charge : child->pre_charge);
    }
    out += inner.empty() ? std::string("~") : inner;
    out += " ]'" + label + charge_text(c);
    return out;
}

void write_membranes(std::ostream& os, const Configuration& cfg)
{
    os << "membranes {\n";
    if (!cfg.empty()) {
        std::function<void(int, int)> walk = [&](int idx, int depth) {
            const auto& m = cfg.at(idx);
            std::string indent(static_cast<std::size_t>(2 * depth), ' ');
            os << indent << m.label << charge_text(m.charge) << " { " << multiset_text(m.contents)
               << (m.contents.empty() ? ";" : " ;");
            if (m.children.empty()) {
                os << " }\n";
                return;
            }
            os << '\n';
            for (int c : m.children) walk(c, depth + 1);
            os << indent << "}\n";
        };
        walk(0, 1);
    }
    os << "}\n";
    os << "environment { " << multiset_text(cfg.environment()) << (cfg.environment().empty() ? "}" : " }") << '\n';
}

} // namespace

std::string serialize(const PSystem& sys)
{
    std::ostringstream os;
    os << "alphabet {\n";
    for (const auto& [base, arity] : sys.alphabet) os << "  " << base << '/' << arity << '\n';
    os << "}\n";
    write_membranes(os, sys.initial);
    os << "rules {\n";
    for (const auto& r : sys.rules()) {
        const ChildPattern* child = r.child ? &*r.child : nullptr;
        os << "  " << r.id << " : " << bracket(r.consume_outside, r.consume_inside, r.target, r.pre_charge, child, false)
           << " -> " << bracket(r.produce_outside, r.produce_inside, r.target, r.post_charge, child, true) << '\n';
    }
    os << "}\n";
    auto prio = sys.priorities();
    std::sort(prio.begin(), prio.end());
    prio.erase(std::unique(prio.begin(), prio.end()), prio.end());
    os << "priorities {\n";
    for (const auto& [hi, lo] : prio) os << "  " << hi << " > " << lo << '\n';
    os << "}\n";
    return os.str();
}

std::string serialize_configuration(const Configuration& cfg)
{
    std::ostringstream os;
    write_membranes(os, cfg);
    return os.str();
}

void write_trace(std::ostream& os, const Trace& trace, bool snapshots)
{
    for (std::size_t t = 0; t < trace.snapshots.size(); ++t) {
        if (snapshots) os << "@snapshot " << t << '\n' << serialize_configuration(trace.snapshots[t]);
        if (t < trace.steps.size()) os << format_step_line(t + 1, trace.steps[t]) << '\n';
    }
}

} // namespace memgne::pspec
