#include "memgne/psystem.hpp"

#include <algorithm>
#include <queue>
#include <set>

namespace memgne {

RuleSpec& PSystem::add_rule(RuleSpec rule)
{
    rule.rank = static_cast<int>(rules_.size());
    by_id_.emplace(rule.id, rules_.size());
    rules_.push_back(std::move(rule));
    return rules_.back();
}

void PSystem::add_priority(std::string higher, std::string lower)
{
    priorities_.emplace_back(std::move(higher), std::move(lower));
}

std::optional<std::size_t> PSystem::find_rule(std::string_view id) const
{
    auto it = by_id_.find(id);
    if (it == by_id_.end()) return std::nullopt;
    return it->second;
}

void PSystem::declare_alphabet_from_content()
{
    auto note = [this](const Multiset& m) {
        for (const auto& [s, n] : m) alphabet.emplace(s.base(), s.arity());
    };
    note(initial.environment());
    for (const auto& mem : initial.membranes()) note(mem.contents);
    for (const auto& r : rules_) {
        note(r.consume_outside);
        note(r.produce_outside);
        note(r.consume_inside);
        note(r.produce_inside);
        if (r.child) {
            note(r.child->consume);
            note(r.child->produce);
        }
    }
}

std::vector<std::size_t> PSystem::priority_order() const
{
    const std::size_t n = rules_.size();
    std::vector<std::vector<std::size_t>> lower(n);
    std::vector<std::size_t> indegree(n, 0);
    for (const auto& [hi, lo] : priorities_) {
        auto h = find_rule(hi);
        auto l = find_rule(lo);
        if (!h || !l) throw std::invalid_argument("priority references unknown rule '" + (h ? lo : hi) + "'");
        if (*h == *l) throw PriorityCycle("rule '" + hi + "' has priority over itself");
        lower[*h].push_back(*l);
        ++indegree[*l];
    }
    // Kahn's algorithm; the min-heap on rank keeps declaration order among
    // incomparable rules.
    auto by_rank = [this](std::size_t a, std::size_t b) { return rules_[a].rank > rules_[b].rank; };
    std::priority_queue<std::size_t, std::vector<std::size_t>, decltype(by_rank)> ready(by_rank);
    for (std::size_t i = 0; i < n; ++i)
        if (indegree[i] == 0) ready.push(i);
    std::vector<std::size_t> order;
    order.reserve(n);
    while (!ready.empty()) {
        auto i = ready.top();
        ready.pop();
        order.push_back(i);
        for (auto j : lower[i])
            if (--indegree[j] == 0) ready.push(j);
    }
    if (order.size() != n) {
        for (std::size_t i = 0; i < n; ++i)
            if (indegree[i] != 0) throw PriorityCycle("priority relation is cyclic (involves rule '" + rules_[i].id + "')");
    }
    return order;
}

bool operator==(const PSystem& a, const PSystem& b)
{
    if (a.alphabet != b.alphabet || !(a.initial == b.initial) || a.rules_.size() != b.rules_.size()) return false;
    for (std::size_t i = 0; i < a.rules_.size(); ++i)
        if (!(a.rules_[i] == b.rules_[i])) return false;
    std::set<std::pair<std::string, std::string>> pa(a.priorities_.begin(), a.priorities_.end());
    std::set<std::pair<std::string, std::string>> pb(b.priorities_.begin(), b.priorities_.end());
    return pa == pb;
}

} // namespace memgne
