#include "memgne/builder.hpp"

#include "rulekit.hpp"

namespace memgne {

namespace detail {

void add_mult_rules(RuleSet& rules, const MultSite& s)
{
    const auto& m0 = s.skin;
    const auto& m1 = s.m1;
    const auto& m2 = s.m2;
    auto add = [&](int n, const RuleDraft& d) { rules.add(s.id_prefix + std::to_string(n), s.id_suffix, d); };
    auto chain = [&](int n, const std::string& at, Charge c, const char* from, const char* to) {
        add(n, RuleDraft(at, c).in(sym(from)).to_in(sym(to)));
    };

    add(1, RuleDraft(m1, Z).in(sym("k1")).to_in(sym("k2")).to_in(sym("y0")));
    chain(2, m1, Z, "k2", "k3");
    chain(3, m1, Z, "k3", "k4");
    chain(4, m1, Z, "k4", "k5");
    chain(5, m1, Z, "k5", "k6");
    chain(6, m1, Z, "k6", "k1");
    add(7, RuleDraft(m1, Z).in(sym("a"), 2).to_in(sym("a1")).to_in(sym("y1"), 2));
    add(8, RuleDraft(m1, Z).in(sym("a")).to_in(sym("m")).to_in(sym("y1")));
    chain(9, m1, Z, "a1", "a2");
    chain(10, m1, Z, "a2", "a3");
    chain(11, m1, Z, "a3", "a4");
    chain(12, m1, Z, "a4", "a5");
    chain(13, m1, Z, "a5", "a");
    add(14, RuleDraft(m1, Z).in(sym("y1"), 2).in(sym("y0")));
    add(15, RuleDraft(m1, Z).in(sym("y1")).in(sym("y0")).in(sym("m")).to_in(sym("f")).to_out(sym("f")));
    add(16, RuleDraft(m1, Z).in(sym("y1")));
    add(17, RuleDraft(m1, Z).in(sym("m")).to_out(sym("m")));
    add(18, RuleDraft(m1, Z).in(sym("k2")).in(sym("y0")).to_out(sym("y0")));
    chain(19, m0, Z, "b", "b1");
    chain(20, m0, Z, "b1", "b2");
    chain(21, m0, Z, "b2", "b3");
    chain(22, m0, Z, "b3", "b4");
    add(23, RuleDraft(m0, Z).in(sym("b4")).to_in(sym("c"), 2));
    chain(24, m0, Z, "c", "b");
    add(25, RuleDraft(m0, P).in(sym("b3")).to_in(sym("c"), 2).child(m2, Z, Z).child_to(sym("d")));
    chain(26, m0, P, "c", "b");
    add(27, RuleDraft(m0, Z, P).in(sym("m")).to_in(sym("m1")).to_out(sym("rem")));
    chain(28, m0, P, "m1", "m2");
    chain(29, m0, P, "m2", "m3");
    add(30, RuleDraft(m0, P, Z).in(sym("m3")).to_out(sym("rem")));
    add(31, RuleDraft(m1, Z).in(sym("f")).in(sym("k3")));
    add(32, RuleDraft(m2, Z).out(sym("f")).to_out(sym("f1")).to_in(sym("f1")));
    add(33, RuleDraft(m2, Z, N).in(sym("f1")).to_out(sym("rem")));
    add(34, RuleDraft(m0, Z, N).in(sym("f1")).to_in(sym("f2")).to_out(sym("rem")));
    add(35, RuleDraft(m2, N).out(sym("f2")).to_out(sym("f3")).to_in(sym("f3")));
    chain(36, m2, N, "f3", "f4");
    chain(37, m0, N, "f3", "f4");
    add(38, RuleDraft(m2, N, Z).in(sym("f4")).to_out(sym("rem")));
    add(39, RuleDraft(m0, N, Z).in(sym("f4")).to_out(s.done));
    add(40, RuleDraft(m2, N).in(sym("d")).to_out(sym("d")));
    add(41, RuleDraft(m0, N).in(sym("d")).to_out(s.product));
    chain(42, m0, N, "b4", "d");
    add(43, RuleDraft(m0, Z, N).in(sym("y0")).to_in(sym("f3")).to_out(sym("rem")));
    add(44, RuleDraft(m0, N).in(sym("b3")));

    auto prio = [&](int hi, int lo) { rules.priority(s.id_prefix + std::to_string(hi), s.id_prefix + std::to_string(lo)); };
    prio(7, 8);
    prio(14, 15);
    prio(15, 16);
    prio(15, 17);
    prio(15, 18);
    prio(18, 2);
    prio(31, 3);
}

} // namespace detail

PSystem build_mult_system(Count m, Count n)
{
    if (m < 0 || n < 0) throw std::invalid_argument("build_mult_system needs m, n >= 0");
    using namespace detail;
    PSystem sys;
    Multiset skin;
    skin.add(sym("b"), n);
    Multiset first;
    first.add(sym("a"), m);
    first.add(sym("k1"));
    sys.initial.add_membrane("0", Z, std::move(skin), std::nullopt);
    sys.initial.add_membrane("1", Z, std::move(first), "0");
    sys.initial.add_membrane("2", Z, {}, "0");
    RuleSet rules(sys);
    add_mult_rules(rules, MultSite{"RS", "", "0", "1", "2", sym("d"), sym("f")});
    sys.declare_alphabet_from_content();
    return sys;
}

} // namespace memgne
