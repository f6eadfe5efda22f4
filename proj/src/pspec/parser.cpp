#include "lexer.hpp"

#include "memgne/pspec.hpp"

#include <charconv>
#include <limits>
#include <map>
#include <set>

namespace memgne::pspec {

PSpecError::PSpecError(std::size_t line, std::size_t column, const std::string& message)
    : std::runtime_error(line ? std::to_string(line) + ":" + std::to_string(column) + ": " + message : message),
      line_(line), column_(column), detail_(message)
{
}

namespace {

constexpr int kMaxDepth = 256;

struct Position {
    std::size_t line = 0;
    std::size_t column = 0;
};

struct Bracket {
    Multiset outside;
    Multiset inside;
    std::string label;
    Charge charge = Charge::neutral;
    bool has_child = false;
    std::string child_label;
    Charge child_charge = Charge::neutral;
    Multiset child_contents;
    Position child_pos;
};

class Parser {
public:
    explicit Parser(std::string_view text) : lex_(text) { advance(); }

    PSystem document()
    {
        PSystem sys;
        std::set<std::string, std::less<>> seen;
        bool have_alphabet = false;
        bool have_membranes = false;
        while (cur_.kind != Tok::end) {
            Token kw = expect(Tok::word, "block name");
            if (!seen.insert(std::string(kw.text)).second)
                fail(kw, "duplicate block '" + std::string(kw.text) + "'");
            if (kw.text == "alphabet") {
                have_alphabet = true;
                alphabet(sys);
            } else if (kw.text == "membranes") {
                have_membranes = true;
                membranes(sys.initial);
            } else if (kw.text == "environment") {
                environment(sys.initial);
            } else if (kw.text == "rules") {
                rules(sys);
            } else if (kw.text == "priorities") {
                priorities(sys);
            } else {
                fail(kw, "unknown block '" + std::string(kw.text) + "'");
            }
        }
        if (!have_membranes) fail(cur_, "missing 'membranes' block");
        if (!have_alphabet) sys.declare_alphabet_from_content();
        return sys;
    }

    Configuration configuration()
    {
        Configuration cfg;
        bool have_membranes = false;
        bool have_env = false;
        while (cur_.kind != Tok::end) {
            Token kw = expect(Tok::word, "block name");
            if (kw.text == "membranes" && !have_membranes) {
                have_membranes = true;
                membranes(cfg);
            } else if (kw.text == "environment" && !have_env) {
                have_env = true;
                environment(cfg);
            } else {
                fail(kw, "unexpected block '" + std::string(kw.text) + "'");
            }
        }
        if (!have_membranes) fail(cur_, "missing 'membranes' block");
        return cfg;
    }

    const std::map<std::string, Position, std::less<>>& rule_positions() const { return rule_pos_; }

private:
    [[noreturn]] void fail(const Token& at, const std::string& msg) { throw PSpecError(at.line, at.column, msg); }

    void advance() { cur_ = lex_.next(); }

    Token expect(Tok kind, const char* what)
    {
        if (cur_.kind != kind)
            fail(cur_, std::string("expected ") + what + ", found " +
                           (cur_.kind == Tok::word ? "'" + std::string(cur_.text) + "'" : tok_name(cur_.kind)));
        Token t = cur_;
        advance();
        return t;
    }

    std::int64_t integer(bool allow_negative)
    {
        bool negative = false;
        Token start = cur_;
        if (allow_negative && cur_.kind == Tok::minus) {
            negative = true;
            advance();
        }
        Token t = expect(Tok::word, "integer");
        std::int64_t v = 0;
        auto [ptr, ec] = std::from_chars(t.text.data(), t.text.data() + t.text.size(), v);
        if (ec == std::errc::result_out_of_range) fail(t, "integer out of range");
        if (ec != std::errc() || ptr != t.text.data() + t.text.size()) fail(t, "expected integer, found '" + std::string(t.text) + "'");
        if (negative) {
            if (v == std::numeric_limits<std::int64_t>::max()) fail(start, "integer out of range");
            v = -v;
        }
        return v;
    }

    Charge charge()
    {
        expect(Tok::caret, "charge '^'");
        if (cur_.kind == Tok::plus) {
            advance();
            return Charge::plus;
        }
        if (cur_.kind == Tok::minus) {
            advance();
            return Charge::minus;
        }
        if (cur_.kind == Tok::word && cur_.text == "0") {
            advance();
            return Charge::neutral;
        }
        fail(cur_, "expected charge 0, + or -");
    }

    static bool starts_term(const Token& t) noexcept
    {
        if (t.kind != Tok::word || t.text.empty()) return false;
        char c = t.text.front();
        return !(c >= '0' && c <= '9');
    }

    Multiset multiset()
    {
        Multiset m;
        if (cur_.kind == Tok::tilde) {
            advance();
            return m;
        }
        while (starts_term(cur_)) {
            Token base = cur_;
            advance();
            std::vector<std::int64_t> params;
            if (cur_.kind == Tok::lbrace) {
                advance();
                params.push_back(integer(true));
                while (cur_.kind == Tok::comma) {
                    advance();
                    params.push_back(integer(true));
                }
                expect(Tok::rbrace, "'}' closing parameters");
            }
            Count n = 1;
            if (cur_.kind == Tok::caret) {
                advance();
                Token at = cur_;
                n = integer(false);
                if (n < 1) fail(at, "multiplicity must be at least 1");
            }
            try {
                m.add(ObjectSymbol::intern(base.text, params), n);
            } catch (const CountOverflow&) {
                fail(base, "multiplicity overflow");
            }
        }
        return m;
    }

    void alphabet(PSystem& sys)
    {
        expect(Tok::lbrace, "'{'");
        while (cur_.kind == Tok::word) {
            Token base = cur_;
            if (!starts_term(base)) fail(base, "symbol names must not start with a digit");
            advance();
            expect(Tok::slash, "'/' before arity");
            Token at = cur_;
            auto arity = integer(false);
            if (arity < 0 || arity > 64) fail(at, "arity out of range");
            if (!sys.alphabet.emplace(std::string(base.text), static_cast<std::size_t>(arity)).second)
                fail(base, "duplicate alphabet entry '" + std::string(base.text) + "'");
        }
        expect(Tok::rbrace, "'}' closing alphabet");
    }

    void membrane(Configuration& cfg, std::optional<std::string> parent, int depth)
    {
        if (depth > kMaxDepth) fail(cur_, "membrane nesting too deep");
        Token label = expect(Tok::word, "membrane label");
        Charge c = charge();
        expect(Tok::lbrace, "'{'");
        Multiset contents = multiset();
        expect(Tok::semicolon, "';' after membrane contents");
        try {
            cfg.add_membrane(std::string(label.text), c, std::move(contents),
                             parent ? std::optional<std::string_view>(*parent) : std::nullopt);
        } catch (const StructuralError& e) {
            fail(label, e.what());
        }
        while (cur_.kind == Tok::word) membrane(cfg, std::string(label.text), depth + 1);
        expect(Tok::rbrace, "'}' closing membrane");
    }

    void membranes(Configuration& cfg)
    {
        expect(Tok::lbrace, "'{'");
        membrane(cfg, std::nullopt, 0);
        if (cur_.kind == Tok::word) fail(cur_, "only one skin membrane is allowed");
        expect(Tok::rbrace, "'}' closing membranes");
    }

    void environment(Configuration& cfg)
    {
        expect(Tok::lbrace, "'{'");
        cfg.environment() = multiset();
        expect(Tok::rbrace, "'}' closing environment");
    }

    Bracket side()
    {
        Bracket b;
        b.outside = multiset();
        expect(Tok::lbrack, "'['");
        b.inside = multiset();
        if (cur_.kind == Tok::lbrack) {
            b.child_pos = {cur_.line, cur_.column};
            advance();
            b.has_child = true;
            b.child_contents = multiset();
            expect(Tok::rbrack, "']'");
            expect(Tok::quote, "''' before child label");
            b.child_label = std::string(expect(Tok::word, "child label").text);
            b.child_charge = charge();
        }
        expect(Tok::rbrack, "']'");
        expect(Tok::quote, "''' before label");
        b.label = std::string(expect(Tok::word, "membrane label").text);
        b.charge = charge();
        return b;
    }

    void rules(PSystem& sys)
    {
        expect(Tok::lbrace, "'{'");
        while (cur_.kind == Tok::word) {
            Token id = cur_;
            advance();
            expect(Tok::colon, "':' after rule id");
            Bracket lhs = side();
            Token arrow = expect(Tok::arrow, "'->'");
            Bracket rhs = side();
            if (lhs.label != rhs.label) fail(arrow, "both sides must name the same membrane");
            if (lhs.has_child != rhs.has_child || (lhs.has_child && lhs.child_label != rhs.child_label))
                fail(arrow, "child bracket must appear on both sides with the same label");
            RuleSpec r;
            r.id = std::string(id.text);
            r.target = lhs.label;
            r.pre_charge = lhs.charge;
            r.post_charge = rhs.charge;
            r.consume_outside = std::move(lhs.outside);
            r.produce_outside = std::move(rhs.outside);
            r.consume_inside = std::move(lhs.inside);
            r.produce_inside = std::move(rhs.inside);
            if (lhs.has_child)
                r.child = ChildPattern{lhs.child_label, lhs.child_charge, rhs.child_charge, std::move(lhs.child_contents),
                                       std::move(rhs.child_contents)};
            if (!rule_pos_.emplace(r.id, Position{id.line, id.column}).second)
                fail(id, "duplicate rule id '" + r.id + "'");
            sys.add_rule(std::move(r));
        }
        expect(Tok::rbrace, "'}' closing rules");
    }

    void priorities(PSystem& sys)
    {
        expect(Tok::lbrace, "'{'");
        while (cur_.kind == Tok::word) {
            Token hi = cur_;
            advance();
            expect(Tok::greater, "'>'");
            Token lo = expect(Tok::word, "rule id");
            sys.add_priority(std::string(hi.text), std::string(lo.text));
        }
        expect(Tok::rbrace, "'}' closing priorities");
    }

    Lexer lex_;
    Token cur_;
    std::map<std::string, Position, std::less<>> rule_pos_;
};

} // namespace

PSystem parse(std::string_view text)
{
    Parser p(text);
    PSystem sys = p.document();
    auto diags = validate(sys);
    if (!diags.empty()) {
        const auto& d = diags.front();
        Position pos;
        if (!d.rule_id.empty()) {
            auto it = p.rule_positions().find(d.rule_id);
            if (it != p.rule_positions().end()) pos = it->second;
        }
        throw PSpecError(pos.line, pos.column, std::string(to_string(d.kind)) + ": " + d.message);
    }
    return sys;
}

Configuration parse_configuration(std::string_view text)
{
    Parser p(text);
    return p.configuration();
}

} // namespace memgne::pspec
