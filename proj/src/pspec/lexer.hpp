#pragma once

#include <cstddef>
#include <string>
#include <string_view>

namespace memgne::pspec {

enum class Tok {
    word,      // [A-Za-z0-9_]+
    lbrace,    // {
    rbrace,    // }
    lbrack,    // [
    rbrack,    // ]
    quote,     // '
    caret,     // ^
    plus,      // +
    minus,     // -
    arrow,     // ->
    colon,     // :
    semicolon, // ;
    comma,     // ,
    slash,     // /
    greater,   // >
    tilde,     // ~
    end,
};

const char* tok_name(Tok t) noexcept;

struct Token {
    Tok kind = Tok::end;
    std::string_view text;
    std::size_t line = 1;
    std::size_t column = 1;
};

/// Character-level scanner; whitespace and `#` comments are skipped.
/// Unknown characters raise PSpecError at their position.
class Lexer {
public:
    explicit Lexer(std::string_view src) : src_(src) {}
    Token next();

private:
    void skip_blank();
    std::string_view src_;
    std::size_t pos_ = 0;
    std::size_t line_ = 1;
    std::size_t col_ = 1;
};

} // namespace memgne::pspec
