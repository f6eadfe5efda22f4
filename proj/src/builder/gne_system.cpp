#include "memgne/builder.hpp"

#include "rulekit.hpp"

namespace memgne {

namespace labels {

std::string player(int k) { return std::to_string(k); }

std::string strategy_membrane(const char* kind, int slot, int k)
{
    return std::string(kind) + "_" + std::to_string(slot) + "_" + std::to_string(k);
}

std::string acum(int k) { return "ACUM_" + std::to_string(k); }

} // namespace labels

namespace {

using namespace detail;

struct Strategy {
    int k;
    int i; ///< time slot
    int l;
    std::string S, RES, MULT, M1, M2, MULT2, M1p, M2p, UPD;
    std::string suffix;
};

struct Player {
    int k;
    std::string label;
    std::string acum;
    std::vector<Strategy> strategies;
    std::string suffix;
};

class GneBuilder {
public:
    GneBuilder(const GameSpec& spec, PSystem& sys)
        : spec_(spec), sys_(sys), rules_(sys), coeff_(payoff_coefficients(spec)), R_(spec.R_disc), half_(spec.R_disc / 2 + 1)
    {
        int l = 0;
        for (int k = 1; k <= spec.N; ++k) {
            Player p{k, labels::player(k), labels::acum(k), {}, "k" + std::to_string(k)};
            for (int i : spec.strategies[static_cast<std::size_t>(k - 1)]) {
                auto lab = [&](const char* kind) { return labels::strategy_membrane(kind, i, k); };
                p.strategies.push_back(Strategy{k, i, ++l, lab("S"), lab("RES"), lab("MULT"), lab("M1"), lab("M2"),
                                                lab("MULT2"), lab("M1p"), lab("M2p"), lab("UPD"),
                                                "k" + std::to_string(k) + "_i" + std::to_string(i)});
            }
            players_.push_back(std::move(p));
        }
    }

    void build()
    {
        structure();
        stage1();
        stage2();
        stage3();
        stage4();
        stage5();
        sys_.declare_alphabet_from_content();
    }

private:
    template <class F>
    void each_strategy(F&& f)
    {
        for (const auto& p : players_)
            for (const auto& s : p.strategies) f(p, s);
    }
    template <class F>
    void each_player(F&& f)
    {
        for (const auto& p : players_) f(p);
    }

    static ObjectSymbol share(const Strategy& s) { return sym("share", {s.k, s.i, s.l}); }

    void structure()
    {
        auto& cfg = sys_.initial;
        cfg.add_membrane("0", Z, {}, std::nullopt);
        cfg.add_membrane("P", Z, Multiset{{sym("y0"), 1}}, "0");
        for (const auto& p : players_) {
            cfg.add_membrane(p.label, Z, {}, "0");
            const auto z = initial_distribution(p.strategies.size(), R_);
            for (std::size_t j = 0; j < p.strategies.size(); ++j) {
                const auto& s = p.strategies[j];
                Multiset init;
                init.add(share(s), z[j]);
                cfg.add_membrane(s.S, Z, std::move(init), p.label);
                cfg.add_membrane(s.RES, Z, Multiset{{sym("AUX", {0}), 1}}, s.S);
            }
            for (const auto& s : p.strategies) {
                cfg.add_membrane(s.MULT, Z, {}, p.label);
                cfg.add_membrane(s.M1, Z, {}, s.MULT);
                cfg.add_membrane(s.M2, Z, {}, s.MULT);
            }
            for (const auto& s : p.strategies) {
                cfg.add_membrane(s.MULT2, Z, {}, p.label);
                cfg.add_membrane(s.M1p, Z, {}, s.MULT2);
                cfg.add_membrane(s.M2p, Z, {}, s.MULT2);
            }
            for (const auto& s : p.strategies) cfg.add_membrane(s.UPD, Z, {}, p.label);
            cfg.add_membrane(p.acum, Z, {}, p.label);
        }
    }

    void stage1()
    {
        each_strategy([&](const Player&, const Strategy& s) {
            rules_.add("RS1_1", s.suffix, RuleDraft(s.S, Z).in(share(s)).to_in(sym("c")).to_out(share(s)));
        });
        {
            RuleDraft d("P", Z);
            d.in(sym("y0"));
            for (std::size_t j = 0; j < coeff_.n; ++j) d.to_in(sym("pl", {static_cast<std::int64_t>(j + 1)}), coeff_.kappa_mag[j]);
            rules_.add("RS1_2", "", d);
        }
        each_strategy([&](const Player& p, const Strategy& s) {
            rules_.add("RS1_3", s.suffix,
                       RuleDraft(p.label, Z).in(share(s)).to_in(sym("Prod", {s.k, s.i, s.l})).to_out(share(s)).to_out(sym("C", {s.k})));
        });
        each_strategy([&](const Player&, const Strategy& s) {
            rules_.add("RS1_4", s.suffix, RuleDraft("P", Z).out(share(s)).to_in(share(s)));
        });
        {
            RuleDraft d("0", Z);
            for (const auto& p : players_) d.in(sym("C", {p.k}), R_);
            d.to_in(sym("y1"));
            rules_.add("RS1_5", "", d);
        }
        rules_.add("RS1_6", "", RuleDraft("0", Z).in(sym("y1")).child("P", Z, P).child_to(sym("y2")));
        each_strategy([&](const Player&, const Strategy& s) {
            RuleDraft d("P", P);
            d.in(share(s));
            const auto col = static_cast<std::size_t>(s.l - 1);
            for (std::size_t j = 0; j < coeff_.n; ++j)
                d.to_in(sym("pl", {static_cast<std::int64_t>(j + 1)}), j == col ? coeff_.b[col] : coeff_.a[j][col]);
            rules_.add("RS1_7", s.suffix, d);
        });
        rules_.add("RS1_8", "", RuleDraft("P", P).in(sym("y2")).to_in(sym("y3")));
        rules_.add("RS1_9", "", RuleDraft("P", P, N).in(sym("y3")).to_in(sym("y4")).to_out(sym("rem")));
        each_strategy([&](const Player&, const Strategy& s) {
            rules_.add("RS1_10", s.suffix, RuleDraft("P", N).in(sym("pl", {s.l})).to_out(sym("pa", {s.k, s.i, s.l})));
        });
        rules_.add("RS1_11", "", RuleDraft("P", N).in(sym("y4")).to_in(sym("y5")));
        each_strategy([&](const Player& p, const Strategy& s) {
            const auto pa = sym("pa", {s.k, s.i, s.l});
            rules_.add("RS1_12", s.suffix, RuleDraft("0", Z).in(pa).child(p.label, Z, Z).child_to(pa));
        });
        rules_.add("RS1_13", "", RuleDraft("P", N).in(sym("y5")).to_in(sym("y6")));
        {
            RuleDraft d("P", N, Z);
            d.in(sym("y6"));
            for (const auto& p : players_) d.to_out(sym("y7", {p.k}));
            rules_.add("RS1_14", "", d);
        }
        each_player([&](const Player& p) {
            rules_.add("RS1_15", p.suffix,
                       RuleDraft("0", Z).in(sym("y7", {p.k})).child(p.label, Z, N).child_to(sym("mult0"), static_cast<Count>(p.strategies.size())));
        });
        for (const auto& m : sys_.initial.membranes())
            for (Charge c : {Z, P, N}) {
                const char tag = c == Z ? 'z' : (c == P ? 'p' : 'm');
                rules_.add("RS1_16", m.label + "__" + tag, RuleDraft(m.label, c).in(sym("rem")));
            }
    }

    void stage2()
    {
        each_strategy([&](const Player& p, const Strategy& s) {
            rules_.add("RS2_1", s.suffix,
                       RuleDraft(p.label, N).in(sym("Prod", {s.k, s.i, s.l})).to_in(sym("Prod2", {s.k, s.i, s.l})).child(s.MULT, Z, Z).child_to(sym("prod")));
        });
        each_strategy([&](const Player& p, const Strategy& s) {
            rules_.add("RS2_2", s.suffix,
                       RuleDraft(p.label, N).in(sym("pa", {s.k, s.i, s.l})).to_in(sym("neg", {s.i})).child(s.MULT, Z, Z).child_to(sym("e")));
        });
        each_strategy([&](const Player& p, const Strategy& s) {
            rules_.add("RS2_3", s.suffix, RuleDraft(p.label, N).in(sym("mult0")).child(s.MULT, Z, P).child_to(sym("mult0")));
        });
        each_strategy([&](const Player&, const Strategy& s) {
            rules_.add("RS2_4", s.suffix, RuleDraft(s.MULT, P).in(sym("prod")).child(s.M1, Z, Z).child_to(sym("a")));
        });
        each_strategy([&](const Player&, const Strategy& s) {
            rules_.add("RS2_5", s.suffix, RuleDraft(s.MULT, P).in(sym("e")).to_in(sym("b")));
        });
        each_strategy([&](const Player&, const Strategy& s) {
            rules_.add("RS2_6", s.suffix,
                       RuleDraft(s.MULT, P, Z).in(sym("mult0")).to_out(sym("rem")).child(s.M1, Z, Z).child_to(sym("k1")));
        });
        each_strategy([&](const Player& p, const Strategy& s) {
            const auto neg = sym("neg", {s.i});
            rules_.add("RS2_7", s.suffix, RuleDraft(p.label, N).in(neg).child(s.UPD, Z, Z).child_to(neg));
        });
        each_player([&](const Player& p) {
            const auto n = static_cast<Count>(p.strategies.size());
            rules_.add("RS2_8", p.suffix, RuleDraft(p.label, N).in(sym("f"), n).child(p.acum, Z, P).child_to(sym("y2_0")));
            rules_.add("RS2_9", p.suffix, RuleDraft(p.label, N).in(sym("d")).child(p.acum, Z, Z).child_to(sym("pos")));
            rules_.add("RS2_10", p.suffix, RuleDraft(p.acum, P).in(sym("pos"), R_).to_out(sym("pos")));
            rules_.add("RS2_11", p.suffix, RuleDraft(p.acum, P).in(sym("pos"), half_).to_out(sym("pos")));
            rules_.add("RS2_12", p.suffix, RuleDraft(p.acum, P).in(sym("pos")));
            rules_.add("RS2_13", p.suffix, RuleDraft(p.acum, P).in(sym("y2_0")).to_in(sym("y2_1")));
            rules_.add("RS2_14", p.suffix, RuleDraft(p.acum, P, Z).in(sym("y2_1")).to_out(sym("y2_2")));
            rules_.add("RS2_15", p.suffix, RuleDraft(p.label, N, Z).in(sym("y2_2")).to_in(sym("y3_0")).to_out(sym("rem")));
        });
        rules_.priority("RS2_10", "RS2_11");
        rules_.priority("RS2_11", "RS2_12");
        each_strategy([&](const Player&, const Strategy& s) {
            add_mult_rules(rules_, MultSite{"MA", s.MULT, s.MULT, s.M1, s.M2, sym("d"), sym("f")});
        });
    }

    void stage3()
    {
        each_player([&](const Player& p) {
            RuleDraft d(p.label, Z);
            d.in(sym("y3_0"));
            for (const auto& s : p.strategies) d.to_in(sym("y3_1", {s.i}));
            rules_.add("RS3_1", p.suffix, d);
        });
        each_strategy([&](const Player& p, const Strategy& s) {
            rules_.add("RS3_2", s.suffix,
                       RuleDraft(p.label, Z).in(sym("y3_1", {s.i})).to_in(sym("y3_2", {s.i})).child(s.UPD, Z, P).child_to(sym("rem")));
        });
        each_player([&](const Player& p) {
            RuleDraft d(p.label, Z);
            d.in(sym("pos"));
            for (const auto& s : p.strategies) d.to_in(sym("posi", {s.i}));
            rules_.add("RS3_3", p.suffix, d);
        });
        each_strategy([&](const Player&, const Strategy& s) {
            const auto pos = sym("posi", {s.i});
            const auto neg = sym("neg", {s.i});
            rules_.add("RS3_4", s.suffix, RuleDraft(s.UPD, P).out(pos).to_in(pos));
            rules_.add("RS3_7", s.suffix, RuleDraft(s.UPD, N).in(neg).in(pos));
            rules_.add("RS3_8", s.suffix, RuleDraft(s.UPD, N).in(neg));
            rules_.add("RS3_9", s.suffix, RuleDraft(s.UPD, N).in(pos).to_in(sym("qi", {s.i})));
            rules_.add("RS3_10", s.suffix, RuleDraft(s.UPD, N).in(sym("y3_4", {s.i})).to_in(sym("y3_5", {s.i})));
            rules_.add("RS3_11", s.suffix, RuleDraft(s.UPD, N, Z).in(sym("y3_5", {s.i})).to_in(sym("y3_6", {s.i})).to_out(sym("rem")));
            rules_.add("RS3_12", s.suffix, RuleDraft(s.UPD, Z).in(sym("qi", {s.i})).to_out(sym("q")).to_out(sym("qi", {s.i})));
            rules_.add("RS3_13", s.suffix, RuleDraft(s.UPD, Z).in(sym("y3_6", {s.i})).to_out(sym("y3_7", {s.i})));
        });
        each_strategy([&](const Player& p, const Strategy& s) {
            rules_.add("RS3_5", s.suffix, RuleDraft(p.label, Z).in(sym("y3_2", {s.i})).to_in(sym("y3_3", {s.i})));
            rules_.add("RS3_6", s.suffix,
                       RuleDraft(p.label, Z).in(sym("y3_3", {s.i})).child(s.UPD, P, N).child_to(sym("y3_4", {s.i})));
        });
        rules_.priority("RS3_7", "RS3_8");
        rules_.priority("RS3_7", "RS3_9");
    }

    void stage4()
    {
        each_player([&](const Player& p) {
            RuleDraft d(p.label, Z);
            for (const auto& s : p.strategies) d.in(sym("y3_7", {s.i})).to_in(sym("multz0", {s.i}));
            rules_.add("RS4_1", p.suffix, d);
        });
        each_strategy([&](const Player& p, const Strategy& s) {
            rules_.add("RS4_2", s.suffix, RuleDraft(p.label, Z).in(sym("multz0", {s.i})).to_in(sym("multz1", {s.i})));
        });
        each_player([&](const Player& p) {
            RuleDraft d(p.label, Z);
            d.in(sym("q"));
            for (const auto& s : p.strategies) d.to_in(sym("qc", {s.i}));
            rules_.add("RS4_3", p.suffix, d);
        });
        each_strategy([&](const Player& p, const Strategy& s) {
            rules_.add("RS4_4", s.suffix,
                       RuleDraft(p.label, Z).in(sym("Prod2", {s.k, s.i, s.l})).child(s.MULT2, Z, Z).child_to(sym("prod")));
            rules_.add("RS4_5", s.suffix, RuleDraft(p.label, Z).in(sym("qc", {s.i})).child(s.MULT2, Z, Z).child_to(sym("e")));
            rules_.add("RS4_6", s.suffix,
                       RuleDraft(p.label, Z).in(sym("multz1", {s.i})).child(s.MULT2, Z, P).child_to(sym("mult0")));
            rules_.add("RS4_7", s.suffix, RuleDraft(s.MULT2, P).in(sym("prod")).child(s.M1p, Z, Z).child_to(sym("a")));
            rules_.add("RS4_8", s.suffix, RuleDraft(s.MULT2, P).in(sym("e")).to_in(sym("b")));
            rules_.add("RS4_9", s.suffix,
                       RuleDraft(s.MULT2, P, Z).in(sym("mult0")).to_out(sym("rem")).child(s.M1p, Z, Z).child_to(sym("k1")));
        });
        each_player([&](const Player& p) {
            const auto n = static_cast<Count>(p.strategies.size());
            rules_.add("RS4_10", p.suffix, RuleDraft(p.label, Z).in(sym("f1"), n).to_in(sym("y4_0"), n));
        });
        each_strategy([&](const Player& p, const Strategy& s) {
            const auto di = sym("di", {s.i});
            rules_.add("RS4_11", s.suffix, RuleDraft(p.label, Z).in(sym("y4_0")).child(s.S, Z, P).child_to(sym("y4_1")));
            rules_.add("RS4_12", s.suffix, RuleDraft(p.label, Z).in(sym("qi", {s.i})).child(s.S, P, P).child_to(sym("s0")));
            rules_.add("RS4_13", s.suffix, RuleDraft(p.label, Z).in(di).child(s.S, P, P).child_to(di));
            rules_.add("RS4_14", s.suffix, RuleDraft(s.S, P).in(sym("s0")).to_in(sym("s1")));
            rules_.add("RS4_15", s.suffix, RuleDraft(s.S, P).in(di, R_).to_in(sym("zneg")));
            rules_.add("RS4_16", s.suffix, RuleDraft(s.S, P).in(di, half_).to_in(sym("zneg")));
            rules_.add("RS4_17", s.suffix, RuleDraft(s.S, P).in(di));
            rules_.add("RS4_18", s.suffix, RuleDraft(s.S, P).in(sym("s1")).in(sym("zneg")));
            rules_.add("RS4_19", s.suffix, RuleDraft(s.S, P).in(sym("s1")).to_in(sym("zvarp")));
            rules_.add("RS4_20", s.suffix, RuleDraft(s.S, P).in(sym("zneg")).to_in(sym("zvarn")));
            rules_.add("RS4_21", s.suffix, RuleDraft(s.S, P).in(sym("y4_1")).to_in(sym("y4_2")));
            rules_.add("RS4_22", s.suffix, RuleDraft(s.S, P).in(sym("y4_2")).to_in(sym("y4_3")));
            rules_.add("RS4_23", s.suffix, RuleDraft(s.S, P, N).in(sym("y4_3")).to_in(sym("y5_0")).to_out(sym("rem")));
        });
        rules_.priority("RS4_15", "RS4_16");
        rules_.priority("RS4_16", "RS4_17");
        rules_.priority("RS4_18", "RS4_19");
        rules_.priority("RS4_18", "RS4_20");
        each_strategy([&](const Player&, const Strategy& s) {
            add_mult_rules(rules_, MultSite{"MB", s.MULT2, s.MULT2, s.M1p, s.M2p, sym("di", {s.i}), sym("f1")});
        });
    }

    void stage5()
    {
        const int L = spec_.L;
        each_strategy([&](const Player&, const Strategy& s) {
            const auto& S = s.S;
            const auto w = sym("w", {s.i});
            rules_.add("RS5_1", s.suffix, RuleDraft(S, N).in(sym("y5_0")).to_in(sym("y5_1")));
            rules_.add("RS5_2", s.suffix, RuleDraft(S, N).in(sym("zvarn"), R_).in(sym("c")));
            rules_.add("RS5_3", s.suffix, RuleDraft(S, N).in(sym("zvarn"), half_).in(sym("c")));
            rules_.add("RS5_4", s.suffix, RuleDraft(S, N).in(sym("zvarp"), R_).to_in(sym("p")));
            rules_.add("RS5_5", s.suffix, RuleDraft(S, N).in(sym("c")).to_in(sym("p")));
            rules_.add("RS5_6", s.suffix, RuleDraft(S, N).in(sym("zvarn"), R_).to_in(sym("n")));
            rules_.add("RS5_7", s.suffix, RuleDraft(S, N).in(sym("zvarn"), half_).to_in(sym("n")));
            rules_.add("RS5_8", s.suffix, RuleDraft(S, N).in(sym("zvarn")));
            rules_.add("RS5_9", s.suffix, RuleDraft(S, N).in(sym("zvarp"), half_).to_in(sym("p")));
            rules_.add("RS5_10", s.suffix, RuleDraft(S, N).in(sym("zvarp")));
            rules_.add("RS5_11", s.suffix, RuleDraft(S, N).in(sym("y5_1")).to_in(sym("y5_2")).to_in(sym("comp"), R_));
            rules_.add("RS5_12", s.suffix, RuleDraft(S, N).in(sym("p"), R_).to_in(sym("over")).to_out(w, R_));
            rules_.add("RS5_13", s.suffix, RuleDraft(S, N, Z).in(sym("y5_2")).to_in(sym("y5_3")).to_out(sym("y5_3i", {s.i})));
            rules_.add("RS5_14", s.suffix, RuleDraft(S, Z).in(sym("p")).to_out(sym("p")));
            rules_.add("RS5_15", s.suffix, RuleDraft(S, N).in(sym("over")).in(sym("comp"), R_));
            rules_.add("RS5_16", s.suffix, RuleDraft(S, Z).in(sym("n")).to_out(sym("n")));
            rules_.add("RS5_17", s.suffix, RuleDraft(S, Z).in(sym("comp")).to_out(sym("compw", {s.i})));
            rules_.add("RS5_18", s.suffix, RuleDraft(S, N).in(sym("p")).in(sym("comp")).to_in(sym("p1")));
            rules_.add("RS5_19", s.suffix, RuleDraft(S, Z).in(sym("p1")).to_out(w));
        });
        each_player([&](const Player& p) {
            rules_.add("RS5_20", p.suffix, RuleDraft(p.label, Z).in(sym("p")).in(sym("n")));
        });
        each_strategy([&](const Player& p, const Strategy& s) {
            rules_.add("RS5_21", s.suffix, RuleDraft(p.label, Z).in(sym("p")).in(sym("compw", {s.i})).to_in(sym("w", {s.i})));
        });
        each_strategy([&](const Player& p, const Strategy& s) {
            rules_.add("RS5_22", s.suffix, RuleDraft(p.label, Z).in(sym("n")).in(sym("w", {s.i})).to_in(sym("compw", {s.i})));
        });
        each_player([&](const Player& p) {
            rules_.add("RS5_23", p.suffix, RuleDraft(p.label, Z).in(sym("p")).to_in(sym("err", {p.k})));
            rules_.add("RS5_24", p.suffix, RuleDraft(p.label, Z).in(sym("n")).to_in(sym("err", {p.k})));
        });
        each_strategy([&](const Player&, const Strategy& s) {
            rules_.add("RS5_25", s.suffix, RuleDraft(s.S, Z).in(sym("y5_3")).to_in(sym("y5_4")));
            rules_.add("RS5_26", s.suffix, RuleDraft(s.S, Z).in(sym("y5_4")).to_in(sym("y5_5")));
            rules_.add("RS5_27", s.suffix, RuleDraft(s.S, Z, P).in(sym("y5_5")).to_out(sym("y5_6")));
        });
        each_player([&](const Player& p) {
            RuleDraft d(p.label, Z);
            for (const auto& s : p.strategies) d.in(sym("y5_3i", {s.i}));
            d.to_in(sym("y5_4"));
            rules_.add("RS5_28", p.suffix, d);
            rules_.add("RS5_29", p.suffix,
                       RuleDraft(p.label, Z, P).in(sym("y5_4")).to_in(sym("y5_5")).to_in(sym("v"), R_).to_out(sym("rem")));
        });
        each_strategy([&](const Player& p, const Strategy& s) {
            rules_.add("RS5_30", s.suffix, RuleDraft(p.label, P).in(sym("w", {s.i})).in(sym("v")).to_in(sym("zi", {s.i})));
        });
        each_strategy([&](const Player& p, const Strategy& s) {
            rules_.add("RS5_31", s.suffix, RuleDraft(p.label, P).in(sym("w", {s.i})));
            rules_.add("RS5_32", s.suffix, RuleDraft(p.label, P).in(sym("compw", {s.i})));
        });
        each_strategy([&](const Player& p, const Strategy& s) {
            rules_.add("RS5_33", s.suffix, RuleDraft(p.label, P).in(sym("v")).to_in(sym("zi", {s.i})));
        });
        each_player([&](const Player& p) {
            rules_.add("RS5_34", p.suffix, RuleDraft(p.label, P, Z).in(sym("y5_5")).to_out(sym("rem")));
        });
        each_strategy([&](const Player&, const Strategy& s) {
            const auto zi = sym("zi", {s.i});
            rules_.add("RS5_35", s.suffix, RuleDraft(s.S, P).out(zi).to_in(zi));
            rules_.add("RS5_36", s.suffix, RuleDraft(s.S, P, Z).out(sym("y5_6")).to_in(sym("y5_7")));
            rules_.add("RS5_37", s.suffix, RuleDraft(s.RES, Z, P).out(sym("y5_7")).to_in(sym("y5_8")));
            rules_.add("RS5_38", s.suffix, RuleDraft(s.RES, P).out(zi).to_in(sym("EXITi", {s.i})));
        });
        each_strategy([&](const Player&, const Strategy& s) {
            for (int n = 0; n <= L + 1; ++n)
                rules_.add("RS5_39", s.suffix + "__n" + std::to_string(n),
                           RuleDraft(s.RES, P).in(sym("AUX", {n})).to_in(sym("CLK", {n + 1}), R_).to_in(sym("AUX1", {n + 1})));
        });
        each_strategy([&](const Player&, const Strategy& s) {
            rules_.add("RS5_40", s.suffix, RuleDraft(s.RES, P, N).in(sym("y5_8")).to_in(sym("y5_9")).to_out(sym("rem")));
        });
        each_strategy([&](const Player&, const Strategy& s) {
            for (int n = 1; n <= L + 1; ++n)
                rules_.add("RS5_41", s.suffix + "__n" + std::to_string(n),
                           RuleDraft(s.RES, N).in(sym("EXITi", {s.i})).in(sym("CLK", {n})).to_out(exit_obj(s, n)));
        });
        each_strategy([&](const Player&, const Strategy& s) {
            for (int n = 1; n <= L + 1; ++n)
                rules_.add("RS5_42", s.suffix + "__n" + std::to_string(n), RuleDraft(s.RES, N).in(sym("CLK", {n})));
        });
        each_strategy([&](const Player&, const Strategy& s) {
            rules_.add("RS5_43", s.suffix, RuleDraft(s.RES, N, Z).in(sym("y5_9")).to_out(sym("y5_10")));
            for (int n = 1; n <= L + 1; ++n)
                rules_.add("RS5_44", s.suffix + "__n" + std::to_string(n), RuleDraft(s.RES, Z).in(sym("AUX1", {n})).to_in(sym("AUX", {n})));
            const auto init = sym("INIT", {s.k, s.i, s.l});
            for (int n = 1; n <= L + 1; ++n)
                rules_.add("RS5_45", s.suffix + "__n" + std::to_string(n), RuleDraft(s.S, Z).in(exit_obj(s, n)).to_in(init).to_out(exit_obj(s, n)));
            rules_.add("RS5_46", s.suffix, RuleDraft(s.S, Z).in(sym("y5_10")).to_out(sym("y5_11i", {s.i})));
        });
        each_strategy([&](const Player& p, const Strategy& s) {
            for (int n = 1; n <= L + 1; ++n)
                rules_.add("RS5_47", s.suffix + "__n" + std::to_string(n), RuleDraft(p.label, Z).in(exit_obj(s, n)).to_out(exit_obj(s, n)));
        });
        each_player([&](const Player& p) {
            RuleDraft d(p.label, Z);
            for (const auto& s : p.strategies) d.in(sym("y5_11i", {s.i}));
            d.to_out(sym("y5_12k", {p.k}));
            rules_.add("RS5_48", p.suffix, d);
        });
        {
            RuleDraft d("0", Z);
            for (const auto& p : players_) d.in(sym("y5_12k", {p.k}));
            d.to_in(sym("y0"));
            rules_.add("RS5_49", "", d);
        }
        each_player([&](const Player& p) {
            rules_.add("RS5_50", p.suffix, RuleDraft(p.label, Z).in(sym("err", {p.k})).to_out(sym("err", {p.k})));
        });
        {
            RuleDraft d("0", Z);
            d.in(sym("y0")).to_in(sym("y0_0"));
            for (const auto& p : players_) d.to_in(sym("y0k", {p.k}));
            rules_.add("RS5_51", "", d);
        }
        rules_.add("RS5_52", "", RuleDraft("P", Z).out(sym("y0_0")).to_in(sym("y0_0")));
        each_player([&](const Player& p) {
            rules_.add("RS5_53", p.suffix, RuleDraft(p.label, Z).out(sym("y0k", {p.k})).to_in(sym("y0_0")));
        });
        rules_.add("RS5_54", "", RuleDraft("P", Z).in(sym("y0_0")).to_in(sym("y0_1")));
        each_player([&](const Player& p) {
            RuleDraft d(p.label, Z);
            d.in(sym("y0_0"));
            for (const auto& s : p.strategies) d.to_in(sym("y0i", {s.i}));
            rules_.add("RS5_55", p.suffix, d);
        });
        rules_.add("RS5_56", "", RuleDraft("P", Z).in(sym("y0_1")).to_in(sym("y0_2")));
        each_strategy([&](const Player&, const Strategy& s) {
            rules_.add("RS5_57", s.suffix, RuleDraft(s.S, Z, P).out(sym("y0i", {s.i})).to_in(sym("y0_2")));
        });
        rules_.add("RS5_58", "", RuleDraft("P", Z).in(sym("y0_2")).to_in(sym("y0")));
        each_strategy([&](const Player&, const Strategy& s) {
            rules_.add("RS5_59", s.suffix, RuleDraft(s.S, P).in(sym("INIT", {s.k, s.i, s.l})).to_in(share(s)));
            rules_.add("RS5_60", s.suffix, RuleDraft(s.S, P, Z).in(sym("y0_2")).to_out(sym("rem")));
        });
        each_strategy([&](const Player&, const Strategy& s) {
            rules_.add("RS5_61", s.suffix, RuleDraft(s.RES, N).in(sym("AUX1", {L})).in(sym("y5_9")));
        });

        rules_.priority("RS5_2", "RS5_3");
        rules_.priority("RS5_3", "RS5_5");
        rules_.priority("RS5_3", "RS5_6");
        rules_.priority("RS5_6", "RS5_7");
        rules_.priority("RS5_7", "RS5_8");
        rules_.priority("RS5_4", "RS5_9");
        rules_.priority("RS5_9", "RS5_10");
        rules_.priority("RS5_15", "RS5_18");
        rules_.priority("RS5_20", "RS5_21");
        rules_.priority("RS5_20", "RS5_22");
        rules_.priority("RS5_21", "RS5_23");
        rules_.priority("RS5_22", "RS5_24");
        rules_.priority("RS5_30", "RS5_31");
        rules_.priority("RS5_30", "RS5_33");
        rules_.priority("RS5_41", "RS5_42");
        rules_.priority("RS5_61", "RS5_43");
    }

    static ObjectSymbol exit_obj(const Strategy& s, int n) { return sym("EXIT", {s.k, s.i, s.l, n}); }

    const GameSpec& spec_;
    PSystem& sys_;
    RuleSet rules_;
    PayoffCoefficients coeff_;
    Count R_;
    Count half_;
    std::vector<Player> players_;
};

} // namespace

PSystem build_gne_system(const GameSpec& spec)
{
    auto diags = validate_game(spec);
    if (!diags.empty()) throw std::invalid_argument("invalid game spec: " + diags.front());
    if (spec.L < 1) throw std::invalid_argument("build_gne_system needs L >= 1");
    PSystem sys;
    GneBuilder(spec, sys).build();
    return sys;
}

} // namespace memgne
