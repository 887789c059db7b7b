#include "java_lexer.hpp"

#include "obo/java_ast.hpp"

#include <algorithm>
#include <array>

namespace obo::detail {

namespace {

constexpr std::array<std::string_view, 53> kKeywords = {
    "abstract", "assert",     "boolean",   "break",     "byte",     "case",       "catch",
    "char",     "class",      "const",     "continue",  "default",  "do",         "double",
    "else",     "enum",       "extends",   "final",     "finally",  "float",      "for",
    "goto",     "if",         "implements", "import",   "instanceof", "int",      "interface",
    "long",     "native",     "new",       "package",   "private",  "protected",  "public",
    "return",   "short",      "static",    "strictfp",  "super",    "switch",     "synchronized",
    "this",     "throw",      "throws",    "transient", "try",      "void",       "volatile",
    "while",    "true",       "false",     "null",
};

// Longest first; `>` never combines (see tokenize()).
constexpr std::array<std::string_view, 20> kMultiOps = {
    "...", "<<=", "::", "->", "==", "!=", "<=", "<<", "&&", "||",
    "++",  "--",  "+=", "-=", "*=", "/=", "%=", "&=", "|=", "^=",
};

constexpr std::string_view kSingleOps = "(){}[];,.@=<>!~?:+-*/&|^%";

bool ident_start(unsigned char c) {
    return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || c == '_' || c == '$' || c >= 0x80;
}

bool ident_part(unsigned char c) { return ident_start(c) || (c >= '0' && c <= '9'); }

bool is_digit(char c) { return c >= '0' && c <= '9'; }

bool is_hex(char c) {
    return is_digit(c) || (c >= 'a' && c <= 'f') || (c >= 'A' && c <= 'F');
}

class Lexer {
public:
    Lexer(std::string_view src, const std::string& file) : src_(src), file_(file) {}

    std::vector<Token> run() {
        std::vector<Token> out;
        out.reserve(src_.size() / 4);
        while (true) {
            skip_trivia();
            if (i_ >= src_.size()) break;
            out.push_back(next());
        }
        out.push_back(Token{TokKind::End, {}, src_.size(), src_.size()});
        return out;
    }

private:
    [[noreturn]] void fail(std::size_t pos, const std::string& msg) const {
        throw ParseError(file_, pos, msg);
    }

    char at(std::size_t k) const { return k < src_.size() ? src_[k] : '\0'; }

    void skip_trivia() {
        while (i_ < src_.size()) {
            char c = src_[i_];
            if (c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f') {
                ++i_;
            } else if (c == '/' && at(i_ + 1) == '/') {
                while (i_ < src_.size() && src_[i_] != '\n') ++i_;
            } else if (c == '/' && at(i_ + 1) == '*') {
                std::size_t close = src_.find("*/", i_ + 2);
                if (close == std::string_view::npos) fail(i_, "unterminated comment");
                i_ = close + 2;
            } else if (static_cast<unsigned char>(c) == 0xEF && at(i_ + 1) == '\xBB' &&
                       at(i_ + 2) == '\xBF') {
                i_ += 3;  // UTF-8 BOM
            } else {
                break;
            }
        }
    }

    Token make(TokKind k, std::size_t b) const { return Token{k, src_.substr(b, i_ - b), b, i_}; }

    Token next() {
        const std::size_t b = i_;
        const unsigned char c = static_cast<unsigned char>(src_[i_]);
        if (ident_start(c)) {
            while (i_ < src_.size() && ident_part(static_cast<unsigned char>(src_[i_]))) ++i_;
            Token t = make(TokKind::Ident, b);
            if (is_java_keyword(t.text)) t.kind = TokKind::Keyword;
            return t;
        }
        if (is_digit(c) || (c == '.' && is_digit(at(i_ + 1)))) return number(b);
        if (c == '"') {
            if (at(i_ + 1) == '"' && at(i_ + 2) == '"') return text_block(b);
            return quoted(b, '"', TokKind::StringLit);
        }
        if (c == '\'') return quoted(b, '\'', TokKind::CharLit);
        if (c == '\\') fail(b, "unicode escapes outside literals are not supported");
        if (c == '>') {
            ++i_;
            return make(TokKind::Op, b);
        }
        for (std::string_view op : kMultiOps) {
            if (src_.substr(i_, op.size()) == op) {
                i_ += op.size();
                return make(TokKind::Op, b);
            }
        }
        if (kSingleOps.find(static_cast<char>(c)) != std::string_view::npos) {
            ++i_;
            return make(TokKind::Op, b);
        }
        fail(b, std::string("unexpected character '") + static_cast<char>(c) + "'");
    }

    void digits(bool hex) {
        while (i_ < src_.size() && ((hex ? is_hex(src_[i_]) : is_digit(src_[i_])) || src_[i_] == '_'))
            ++i_;
    }

    Token number(std::size_t b) {
        bool floating = false;
        if (src_[i_] == '0' && (at(i_ + 1) == 'x' || at(i_ + 1) == 'X')) {
            i_ += 2;
            digits(true);
            if (at(i_) == '.') {
                ++i_;
                digits(true);
                floating = true;
            }
            if (at(i_) == 'p' || at(i_) == 'P') {
                ++i_;
                if (at(i_) == '+' || at(i_) == '-') ++i_;
                digits(false);
                floating = true;
            }
        } else if (src_[i_] == '0' && (at(i_ + 1) == 'b' || at(i_ + 1) == 'B')) {
            i_ += 2;
            digits(false);
        } else {
            digits(false);
            if (at(i_) == '.' && is_digit(at(i_ + 1))) {
                ++i_;
                digits(false);
                floating = true;
            } else if (at(i_) == '.' && !ident_start(static_cast<unsigned char>(at(i_ + 1))) &&
                       at(i_ + 1) != '.') {
                ++i_;  // "1." is a double literal
                floating = true;
            }
            if (at(i_) == 'e' || at(i_) == 'E') {
                ++i_;
                if (at(i_) == '+' || at(i_) == '-') ++i_;
                if (!is_digit(at(i_))) fail(i_, "malformed exponent");
                digits(false);
                floating = true;
            }
        }
        char s = at(i_);
        if (s == 'l' || s == 'L') {
            ++i_;
            return make(TokKind::LongLit, b);
        }
        if (s == 'f' || s == 'F' || s == 'd' || s == 'D') {
            ++i_;
            floating = true;
        }
        if (ident_part(static_cast<unsigned char>(at(i_)))) fail(i_, "malformed number literal");
        return make(floating ? TokKind::DoubleLit : TokKind::IntLit, b);
    }

    Token quoted(std::size_t b, char q, TokKind kind) {
        ++i_;
        while (true) {
            if (i_ >= src_.size() || src_[i_] == '\n') fail(b, "unterminated literal");
            char c = src_[i_];
            if (c == '\\') {
                i_ += 2;
                continue;
            }
            ++i_;
            if (c == q) break;
        }
        return make(kind, b);
    }

    Token text_block(std::size_t b) {
        i_ += 3;
        while (true) {
            if (i_ >= src_.size()) fail(b, "unterminated text block");
            if (src_[i_] == '\\') {
                i_ += 2;
                continue;
            }
            if (src_.substr(i_, 3) == "\"\"\"") {
                i_ += 3;
                break;
            }
            ++i_;
        }
        return make(TokKind::TextBlock, b);
    }

    std::string_view src_;
    const std::string& file_;
    std::size_t i_ = 0;
};

}  // namespace

bool is_java_keyword(std::string_view word) {
    return std::find(kKeywords.begin(), kKeywords.end(), word) != kKeywords.end();
}

std::vector<Token> tokenize(std::string_view src, const std::string& file_path) {
    return Lexer(src, file_path).run();
}

}  // namespace obo::detail
