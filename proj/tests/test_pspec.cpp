#include "memgne/builder.hpp"
#include "memgne/pspec.hpp"

#include <doctest.h>

#include <random>
#include <sstream>

using namespace memgne;
using memgne::pspec::DiagnosticKind;
using memgne::pspec::PSpecError;

namespace {

const char* kSmall = R"(# two membranes
alphabet {
  a/0
  b/0
  t/1
}
membranes {
  0 ^0 { a^3 ;
    1 ^- { t{2} ; }
  }
}
environment { b }
rules {
  r1 : [ a^2 ]'0 ^0 -> b [ t{1} ]'0 ^+
  r2 : [ a [ ~ ]'1 ^- ]'0 ^0 -> [ [ a ]'1 ^0 ]'0 ^0
  r3 : b [ t{2} ]'1 ^- -> [ ~ ]'1 ^-
}
priorities {
  r1 > r2
}
)";

ObjectSymbol S(std::string_view b) { return ObjectSymbol::intern(b); }

// Replaces the first occurrence of `from` in kSmall.
std::string small_with(std::string_view from, std::string_view to)
{
    std::string s = kSmall;
    auto at = s.find(from);
    REQUIRE(at != std::string::npos);
    s.replace(at, from.size(), to);
    return s;
}

std::string error_of(const std::string& text)
{
    try {
        pspec::parse(text);
    } catch (const PSpecError& e) {
        return e.detail();
    }
    return {};
}

} // namespace

TEST_CASE("parse reads every block")
{
    const PSystem sys = pspec::parse(kSmall);
    REQUIRE(sys.rules().size() == 3);
    CHECK(sys.alphabet.at("t") == 1);
    CHECK(sys.initial.at("0").contents.count(S("a")) == 3);
    CHECK(sys.initial.at("1").charge == Charge::minus);
    CHECK(sys.initial.at("1").contents.count(ObjectSymbol::intern("t", {2})) == 1);
    CHECK(sys.initial.environment().count(S("b")) == 1);

    const auto& r1 = sys.rules()[0];
    CHECK(r1.consume_inside.count(S("a")) == 2);
    CHECK(r1.produce_outside.count(S("b")) == 1);
    CHECK(r1.post_charge == Charge::plus);
    const auto& r2 = sys.rules()[1];
    REQUIRE(r2.child);
    CHECK(r2.child->label == "1");
    CHECK(r2.child->post_charge == Charge::neutral);
    CHECK(r2.child->produce.count(S("a")) == 1);
    CHECK(sys.rules()[2].consume_outside.count(S("b")) == 1);
    CHECK(sys.priorities() == std::vector<std::pair<std::string, std::string>>{{"r1", "r2"}});
}

TEST_CASE("serialize and parse round-trip")
{
    const PSystem sys = pspec::parse(kSmall);
    const std::string text = pspec::serialize(sys);
    const PSystem back = pspec::parse(text);
    CHECK(back == sys);
    CHECK(pspec::serialize(back) == text);
}

TEST_CASE("a document without an alphabet derives it")
{
    auto text = std::string(kSmall);
    text.erase(text.find("alphabet {"), text.find("membranes {") - text.find("alphabet {"));
    const PSystem sys = pspec::parse(text);
    CHECK(sys.alphabet.at("t") == 1);
    CHECK(sys.alphabet.count("b") == 1);
}

TEST_CASE("syntax errors carry line and column")
{
    try {
        pspec::parse(small_with("r1 : [ a^2 ]'0", "r1 : [ a^2 ]'0 ]"));
        FAIL("expected a syntax error");
    } catch (const PSpecError& e) {
        CHECK(e.line() == 14);
        CHECK(e.column() > 0);
    }
    CHECK_THROWS_AS(pspec::parse("membranes { 0 ^0 { a^0 ; } }"), PSpecError);
    CHECK_THROWS_AS(pspec::parse("membranes { 0 ^0 { a^99999999999999999999 ; } }"), PSpecError);
    CHECK_THROWS_AS(pspec::parse("membranes { 0 ^x { ; } }"), PSpecError);
    CHECK_THROWS_AS(pspec::parse("membranes { 0 ^0 { $ ; } }"), PSpecError);
    CHECK_THROWS_AS(pspec::parse("rules { }"), PSpecError);
    CHECK_THROWS_AS(pspec::parse(std::string(kSmall) + "rules { }"), PSpecError);
}

TEST_CASE("semantic errors")
{
    auto starts = [](const std::string& msg, DiagnosticKind k) { return msg.rfind(pspec::to_string(k), 0) == 0; };
    CHECK(starts(error_of(small_with("[ a^2 ]'0 ^0 -> b [ t{1} ]'0", "[ a^2 ]'9 ^0 -> b [ t{1} ]'9")),
                 DiagnosticKind::unknown_label));
    CHECK(error_of(small_with("r2 :", "r1 :")).find("duplicate rule") != std::string::npos);
    CHECK(starts(error_of(small_with("r1 > r2", "r1 > r2\n  r2 > r1")), DiagnosticKind::cyclic_priority));
    CHECK(starts(error_of(small_with("r1 > r2", "r1 > r9")), DiagnosticKind::unknown_priority_rule));
    CHECK(starts(error_of(small_with("[ t{1} ]'0", "[ t ]'0")), DiagnosticKind::arity_mismatch));
    CHECK(starts(error_of(small_with("[ t{1} ]'0", "[ q ]'0")), DiagnosticKind::undeclared_symbol));
    CHECK(starts(error_of(small_with("r3 : b [ t{2} ]'1", "r3 : [ ~ ]'1")), DiagnosticKind::no_consumption));
}

TEST_CASE("validate reports a child that is not a child")
{
    PSystem sys = pspec::parse(kSmall);
    PSystem bad;
    bad.initial.add_membrane("0", Charge::neutral, {}, std::nullopt);
    bad.initial.add_membrane("1", Charge::neutral, {}, "0");
    bad.initial.add_membrane("2", Charge::neutral, {}, "1");
    RuleSpec r;
    r.id = "x";
    r.target = "0";
    r.consume_inside.add(S("a"));
    r.child = ChildPattern{"2", Charge::neutral, Charge::neutral, {}, {}};
    bad.add_rule(r);
    bad.declare_alphabet_from_content();
    auto diags = pspec::validate(bad);
    REQUIRE(diags.size() == 1);
    CHECK(diags[0].kind == DiagnosticKind::not_a_child);
    CHECK(diags[0].rule_id == "x");
    CHECK(pspec::validate(sys).empty());
}

TEST_CASE("configurations round-trip on their own")
{
    const PSystem sys = pspec::parse(kSmall);
    const std::string text = pspec::serialize_configuration(sys.initial);
    CHECK(pspec::parse_configuration(text) == sys.initial);
}

TEST_CASE("traces list one line per step and optional snapshots")
{
    const PSystem sys = pspec::parse(kSmall);
    const auto res = run(sys, 10, true);
    std::ostringstream plain, snap;
    pspec::write_trace(plain, res.trace);
    pspec::write_trace(snap, res.trace, true);
    CHECK(plain.str().rfind("1 ", 0) == 0);
    CHECK(snap.str().rfind("@snapshot 0", 0) == 0);
    std::size_t lines = 0;
    for (char c : plain.str()) lines += c == '\n';
    CHECK(lines == res.steps);
}

TEST_CASE("generated systems round-trip")
{
    const PSystem mult = build_mult_system(13, 7);
    CHECK(pspec::parse(pspec::serialize(mult)) == mult);

    GameSpec g;
    g.N = 2;
    g.T = 3;
    g.strategies = {{1, 3}, {2, 3}};
    g.D_diag = {0.5, 0.25, 0.75};
    g.Jbar = {2.5, 3, 3.5};
    g.alpha = {{2, 3}, {4, 5}};
    g.beta = {{0.1, 0.2}, {0.3, 0.4}};
    g.mass = {3.5, 3.25};
    g.L = 2;
    const PSystem gne = build_gne_system(g);
    const PSystem back = pspec::parse(pspec::serialize(gne));
    CHECK(back == gne);
    CHECK(pspec::validate(gne).empty());
}

TEST_CASE("mutated documents either parse or raise PSpecError")
{
    const std::string base = pspec::serialize(build_mult_system(3, 2));
    std::mt19937_64 rng(7);
    const std::string alphabet = "{}[]^'-+>:;~#/ \n0123456789abcxyz{,}";
    int parsed = 0;
    for (int i = 0; i < 2000; ++i) {
        std::string s = base;
        const int edits = 1 + static_cast<int>(rng() % 4);
        for (int e = 0; e < edits; ++e) {
            const auto at = static_cast<std::size_t>(rng() % s.size());
            switch (rng() % 3) {
            case 0: s.erase(at, 1 + rng() % 3); break;
            case 1: s.insert(at, 1, alphabet[rng() % alphabet.size()]); break;
            default: s[at] = static_cast<char>(rng() % 256); break;
            }
        }
        try {
            const PSystem sys = pspec::parse(s);
            CHECK(pspec::validate(sys).empty());
            ++parsed;
        } catch (const PSpecError&) {
        }
    }
    CHECK(parsed < 2000);
}

TEST_CASE("deep nesting is rejected, not recursed into")
{
    std::string s = "membranes { 0 ^0 { ;";
    for (int i = 1; i < 2000; ++i) s += " m" + std::to_string(i) + " ^0 { ;";
    CHECK_THROWS_AS(pspec::parse(s), PSpecError);
}
