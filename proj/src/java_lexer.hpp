#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

namespace obo::detail {

enum class TokKind {
    Ident,
    Keyword,
    IntLit,
    LongLit,
    DoubleLit,
    CharLit,
    StringLit,
    TextBlock,
    Op,
    End,
};

struct Token {
    TokKind kind = TokKind::End;
    std::string_view text;
    std::size_t begin = 0;
    std::size_t end = 0;
};

/// Tokenize Java source. Comments and whitespace are dropped. `>` is always
/// emitted as a single-character token so that nested generic closers need
/// no splitting; the parser recombines adjacent `>` `>` `=` into shift and
/// comparison operators. Throws ParseError on malformed input.
std::vector<Token> tokenize(std::string_view src, const std::string& file_path);

bool is_java_keyword(std::string_view word);

}  // namespace obo::detail
