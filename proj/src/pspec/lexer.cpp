#include "lexer.hpp"

#include "memgne/pspec.hpp"

namespace memgne::pspec {

namespace {

bool is_word_char(char c) noexcept
{
    return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9') || c == '_';
}

std::string printable(char c)
{
    auto u = static_cast<unsigned char>(c);
    if (u >= 0x20 && u < 0x7f) return std::string("'") + c + "'";
    static const char* hex = "0123456789abcdef";
    return std::string("byte 0x") + hex[u >> 4] + hex[u & 0xf];
}

} // namespace

const char* tok_name(Tok t) noexcept
{
    switch (t) {
    case Tok::word: return "name";
    case Tok::lbrace: return "'{'";
    case Tok::rbrace: return "'}'";
    case Tok::lbrack: return "'['";
    case Tok::rbrack: return "']'";
    case Tok::quote: return "'''";
    case Tok::caret: return "'^'";
    case Tok::plus: return "'+'";
    case Tok::minus: return "'-'";
    case Tok::arrow: return "'->'";
    case Tok::colon: return "':'";
    case Tok::semicolon: return "';'";
    case Tok::comma: return "','";
    case Tok::slash: return "'/'";
    case Tok::greater: return "'>'";
    case Tok::tilde: return "'~'";
    case Tok::end: return "end of input";
    }
    return "?";
}

void Lexer::skip_blank()
{
    while (pos_ < src_.size()) {
        char c = src_[pos_];
        if (c == '\n') {
            ++pos_;
            ++line_;
            col_ = 1;
        } else if (c == ' ' || c == '\t' || c == '\r') {
            ++pos_;
            ++col_;
        } else if (c == '#') {
            while (pos_ < src_.size() && src_[pos_] != '\n') {
                ++pos_;
                ++col_;
            }
        } else {
            break;
        }
    }
}

Token Lexer::next()
{
    skip_blank();
    Token t;
    t.line = line_;
    t.column = col_;
    if (pos_ >= src_.size()) {
        t.kind = Tok::end;
        return t;
    }
    const std::size_t start = pos_;
    const char c = src_[pos_];
    std::size_t len = 1;
    if (is_word_char(c)) {
        while (start + len < src_.size() && is_word_char(src_[start + len])) ++len;
        t.kind = Tok::word;
    } else if (c == '-' && start + 1 < src_.size() && src_[start + 1] == '>') {
        len = 2;
        t.kind = Tok::arrow;
    } else {
        switch (c) {
        case '{': t.kind = Tok::lbrace; break;
        case '}': t.kind = Tok::rbrace; break;
        case '[': t.kind = Tok::lbrack; break;
        case ']': t.kind = Tok::rbrack; break;
        case '\'': t.kind = Tok::quote; break;
        case '^': t.kind = Tok::caret; break;
        case '+': t.kind = Tok::plus; break;
        case '-': t.kind = Tok::minus; break;
        case ':': t.kind = Tok::colon; break;
        case ';': t.kind = Tok::semicolon; break;
        case ',': t.kind = Tok::comma; break;
        case '/': t.kind = Tok::slash; break;
        case '>': t.kind = Tok::greater; break;
        case '~': t.kind = Tok::tilde; break;
        default: throw PSpecError(line_, col_, "unexpected character " + printable(c));
        }
    }
    t.text = src_.substr(start, len);
    pos_ += len;
    col_ += len;
    return t;
}

} // namespace memgne::pspec
