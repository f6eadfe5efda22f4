#pragma once

#include "memgne/configuration.hpp"

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace memgne {

/// Nested pattern on a child membrane of the rule's target.
struct ChildPattern {
    std::string label;
    Charge pre_charge = Charge::neutral;
    Charge post_charge = Charge::neutral;
    Multiset consume;
    Multiset produce;

    friend bool operator==(const ChildPattern&, const ChildPattern&) = default;
};

/// Evolution rule  u [ v ]_label^pre -> u' [ v' ]_label^post, optionally with
/// one child bracket nested inside the target. `u`/`u'` live in the region
/// immediately outside the target (the environment for the skin).
struct RuleSpec {
    std::string id;
    std::string target;
    Charge pre_charge = Charge::neutral;
    Charge post_charge = Charge::neutral;
    Multiset consume_outside;
    Multiset produce_outside;
    Multiset consume_inside;
    Multiset produce_inside;
    std::optional<ChildPattern> child;
    /// Declaration index inside the owning PSystem; tie-breaker for the
    /// priority linear extension. Maintained by PSystem::add_rule.
    int rank = 0;

    bool charge_changing() const noexcept
    {
        return pre_charge != post_charge || (child && child->pre_charge != child->post_charge);
    }
    bool consumes_anything() const noexcept
    {
        return !consume_outside.empty() || !consume_inside.empty() || (child && !child->consume.empty());
    }

    friend bool operator==(const RuleSpec&, const RuleSpec&) = default;
};

class PriorityCycle : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Transition P system with membrane polarization: alphabet, initial
/// configuration, rules and a priority relation given as (higher, lower) pairs.
class PSystem {
public:
    /// base name -> arity
    std::map<std::string, std::size_t> alphabet;
    Configuration initial;

    const std::vector<RuleSpec>& rules() const noexcept { return rules_; }
    const std::vector<std::pair<std::string, std::string>>& priorities() const noexcept { return priorities_; }

    /// Appends a rule; its rank becomes its declaration index.
    RuleSpec& add_rule(RuleSpec rule);
    void add_priority(std::string higher, std::string lower);

    std::optional<std::size_t> find_rule(std::string_view id) const;

    /// Registers every base name occurring in the initial configuration and in
    /// the rules. Existing entries are left untouched.
    void declare_alphabet_from_content();

    /// Rule indices in a total order extending the priority relation; ties
    /// go to the smaller rank. Throws PriorityCycle when none exists.
    std::vector<std::size_t> priority_order() const;

    /// Structural equality (priorities compared as a set).
    friend bool operator==(const PSystem& a, const PSystem& b);

private:
    std::vector<RuleSpec> rules_;
    std::vector<std::pair<std::string, std::string>> priorities_;
    std::map<std::string, std::size_t, std::less<>> by_id_;
};

} // namespace memgne
