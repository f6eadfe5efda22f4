#pragma once

#include "memgne/psystem.hpp"

#include <map>
#include <string>
#include <utility>
#include <vector>

namespace memgne::detail {

inline ObjectSymbol sym(std::string_view base) { return ObjectSymbol::intern(base); }
inline ObjectSymbol sym(std::string_view base, std::initializer_list<std::int64_t> params)
{
    return ObjectSymbol::intern(base, params);
}

/// Fluent construction of one rule; defaults to neutral charges throughout.
class RuleDraft {
public:
    RuleDraft(std::string target, Charge pre, Charge post)
    {
        r_.target = std::move(target);
        r_.pre_charge = pre;
        r_.post_charge = post;
    }
    RuleDraft(std::string target, Charge c) : RuleDraft(std::move(target), c, c) {}

    RuleDraft& in(ObjectSymbol s, Count n = 1) { return put(r_.consume_inside, s, n); }
    RuleDraft& to_in(ObjectSymbol s, Count n = 1) { return put(r_.produce_inside, s, n); }
    RuleDraft& out(ObjectSymbol s, Count n = 1) { return put(r_.consume_outside, s, n); }
    RuleDraft& to_out(ObjectSymbol s, Count n = 1) { return put(r_.produce_outside, s, n); }

    RuleDraft& child(std::string label, Charge pre, Charge post)
    {
        r_.child = ChildPattern{std::move(label), pre, post, {}, {}};
        return *this;
    }
    RuleDraft& child_in(ObjectSymbol s, Count n = 1) { return put(r_.child->consume, s, n); }
    RuleDraft& child_to(ObjectSymbol s, Count n = 1) { return put(r_.child->produce, s, n); }

    RuleSpec take(std::string id)
    {
        r_.id = std::move(id);
        return std::move(r_);
    }

private:
    RuleDraft& put(Multiset& m, ObjectSymbol s, Count n)
    {
        if (n > 0) m.add(s, n);
        return *this;
    }
    RuleSpec r_;
};

/// Adds rules as instances of named templates and expands template-level
/// priorities to every pair of instances sharing a target membrane.
class RuleSet {
public:
    explicit RuleSet(PSystem& sys) : sys_(sys) {}

    void add(const std::string& tmpl, const std::string& suffix, RuleDraft draft)
    {
        RuleSpec r = draft.take(suffix.empty() ? tmpl : tmpl + "__" + suffix);
        instances_[tmpl].emplace_back(r.id, r.target);
        sys_.add_rule(std::move(r));
    }

    void priority(const std::string& higher, const std::string& lower)
    {
        for (const auto& [hi, hi_target] : instances_.at(higher))
            for (const auto& [lo, lo_target] : instances_.at(lower))
                if (hi_target == lo_target) sys_.add_priority(hi, lo);
    }

private:
    PSystem& sys_;
    std::map<std::string, std::vector<std::pair<std::string, std::string>>> instances_;
};

constexpr Charge Z = Charge::neutral;
constexpr Charge P = Charge::plus;
constexpr Charge N = Charge::minus;

/// Where a multiplication unit lives and what it emits when done.
struct MultSite {
    std::string id_prefix; ///< "RS" standalone, "MA"/"MB" inside the GNE system
    std::string id_suffix; ///< appended as "__suffix" when nonempty
    std::string skin;
    std::string m1;
    std::string m2;
    ObjectSymbol product; ///< emitted by the d-exit rule
    ObjectSymbol done;    ///< emitted by the f-exit rule
};

/// The 44 multiplication rules and their priorities.
void add_mult_rules(RuleSet& rules, const MultSite& site);

} // namespace memgne::detail
