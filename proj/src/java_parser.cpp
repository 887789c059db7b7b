#include "java_lexer.hpp"
#include "obo/java_ast.hpp"

#include <algorithm>
#include <array>
#include <optional>
#include <utility>

namespace obo {

using detail::TokKind;
using detail::Token;

namespace {

constexpr std::array<std::string_view, 8> kPrimitives = {
    "boolean", "byte", "char", "short", "int", "long", "float", "double",
};

constexpr std::array<std::string_view, 12> kModifierKeywords = {
    "public", "protected", "private",  "static",       "abstract",  "final",
    "native", "transient", "volatile", "synchronized", "strictfp",  "default",
};

struct BinOp {
    std::string_view text;
    std::string_view name;
    int prec = 0;
    int ntok = 1;
};

struct AssignOp {
    std::string_view text;
    std::string_view name;
    int ntok = 1;
};

constexpr std::array<BinOp, 17> kBinOps = {{
    {"||", "or", 1},         {"&&", "and", 2},       {"|", "binOr", 3},
    {"^", "xor", 4},         {"&", "binAnd", 5},     {"==", "equals", 6},
    {"!=", "notEquals", 6},  {"<", "less", 7},       {"<=", "lessEquals", 7},
    {"<<", "lShift", 8},     {"+", "plus", 9},       {"-", "minus", 9},
    {"*", "times", 10},      {"/", "divide", 10},    {"%", "remainder", 10},
    // `>`-based operators are assembled from single `>` tokens, see peek_binop
    {">", "greater", 7},     {"instanceof", "instanceof", 7},
}};

constexpr std::array<AssignOp, 10> kAssignOps = {{
    {"=", "assign"}, {"+=", "plus"},  {"-=", "minus"}, {"*=", "star"},    {"/=", "slash"},
    {"&=", "and"},   {"|=", "or"},    {"^=", "xor"},   {"%=", "rem"},     {"<<=", "lShift"},
}};

template <std::size_t N>
bool contains(const std::array<std::string_view, N>& arr, std::string_view s) {
    return std::find(arr.begin(), arr.end(), s) != arr.end();
}

AstNode make(NodeKind kind, std::vector<AstNode>&& children, std::string op = {}) {
    AstNode n;
    n.kind = kind;
    n.op = std::move(op);
    n.children = std::move(children);
    n.span = {n.children.front().span.begin, n.children.back().span.end};
    return n;
}

class Parser {
public:
    Parser(std::string_view src, const std::string& file)
        : src_(src), file_(file), toks_(detail::tokenize(src, file)) {}

    AstNode compilation_unit() {
        std::vector<AstNode> kids;
        skip_annotations();
        if (at_kw("package")) {
            std::vector<AstNode> pk;
            pk.push_back(keyword());
            pk.push_back(qualified_name_leaf(NodeKind::NameExpr));
            pk.push_back(expect_op(";"));
            kids.push_back(make(NodeKind::PackageDeclaration, std::move(pk)));
        }
        while (!at_end()) {
            if (at_kw("import")) {
                std::vector<AstNode> im;
                im.push_back(keyword());
                if (at_kw("static")) im.push_back(take(NodeKind::Modifier));
                im.push_back(qualified_name_leaf(NodeKind::NameExpr, true));
                im.push_back(expect_op(";"));
                kids.push_back(make(NodeKind::ImportDeclaration, std::move(im)));
            } else if (at_op(";")) {
                kids.push_back(expect_op(";"));
            } else {
                kids.push_back(type_declaration());
            }
        }
        if (kids.empty()) {
            AstNode empty;
            empty.kind = NodeKind::CompilationUnit;
            empty.span = {0, src_.size()};
            return empty;
        }
        AstNode cu = make(NodeKind::CompilationUnit, std::move(kids));
        return cu;
    }

    AstNode single_member() {
        std::optional<AstNode> m = member(/*in_record=*/false, /*type_name=*/{});
        if (!m || !at_end()) fail("expected exactly one method declaration");
        return std::move(*m);
    }

private:
    // ----------------------------------------------------------------- tokens

    const Token& peek(std::size_t k = 0) const {
        std::size_t i = std::min(pos_ + k, toks_.size() - 1);
        return toks_[i];
    }
    const Token& tok_at(std::size_t i) const { return toks_[std::min(i, toks_.size() - 1)]; }

    bool at_end() const { return peek().kind == TokKind::End; }
    bool at_op(std::string_view s, std::size_t k = 0) const {
        const Token& t = peek(k);
        return t.kind == TokKind::Op && t.text == s;
    }
    bool at_kw(std::string_view s, std::size_t k = 0) const {
        const Token& t = peek(k);
        return t.kind == TokKind::Keyword && t.text == s;
    }
    bool at_ident(std::size_t k = 0) const { return peek(k).kind == TokKind::Ident; }
    bool at_ident_text(std::string_view s, std::size_t k = 0) const {
        return at_ident(k) && peek(k).text == s;
    }
    bool adjacent(std::size_t k) const { return peek(k).end == peek(k + 1).begin; }

    [[noreturn]] void fail(const std::string& msg) const {
        const Token& t = peek();
        std::string near = t.kind == TokKind::End ? "end of input" : "'" + std::string(t.text) + "'";
        throw ParseError(file_, t.begin, msg + " near " + near);
    }

    AstNode take(NodeKind kind) {
        if (at_end()) fail("unexpected end of input");
        const Token& t = toks_[pos_++];
        AstNode n;
        n.kind = kind;
        n.token = std::string(t.text);
        n.span = {t.begin, t.end};
        return n;
    }

    /// Consume `ntok` adjacent tokens as one Punctuation leaf spelled `text`.
    AstNode take_joined(std::size_t ntok, std::string_view text) {
        AstNode n;
        n.kind = NodeKind::Punctuation;
        n.token = std::string(text);
        n.span = {peek().begin, peek(ntok - 1).end};
        pos_ += ntok;
        return n;
    }

    AstNode expect_op(std::string_view s) {
        if (!at_op(s)) fail("expected '" + std::string(s) + "'");
        return take(NodeKind::Punctuation);
    }
    AstNode expect_kw(std::string_view s) {
        if (!at_kw(s)) fail("expected '" + std::string(s) + "'");
        return take(NodeKind::Keyword);
    }
    AstNode keyword() { return take(NodeKind::Keyword); }
    AstNode expect_ident(NodeKind kind = NodeKind::SimpleName) {
        if (!at_ident()) fail("expected identifier");
        return take(kind);
    }

    /// a.b.c as one leaf; with `star`, a trailing `.*` is folded in as well.
    AstNode qualified_name_leaf(NodeKind kind, bool star = false) {
        AstNode n = expect_ident(kind);
        while (at_op(".") && (at_ident(1) || (star && at_op("*", 1)))) {
            ++pos_;
            const Token& t = toks_[pos_++];
            n.token += '.';
            n.token += t.text;
            n.span.end = t.end;
        }
        return n;
    }

    // ------------------------------------------------------------ annotations

    bool at_annotation() const { return at_op("@") && !at_kw("interface", 1); }

    void skip_balanced(std::string_view open, std::string_view close) {
        int depth = 0;
        do {
            if (at_end()) fail("unbalanced '" + std::string(open) + "'");
            if (at_op(open)) ++depth;
            if (at_op(close)) --depth;
            ++pos_;
        } while (depth > 0);
    }

    void skip_annotation() {
        ++pos_;  // @
        if (!at_ident() && !at_kw("interface")) fail("expected annotation name");
        ++pos_;
        while (at_op(".") && at_ident(1)) pos_ += 2;
        if (at_op("(")) skip_balanced("(", ")");
    }

    void skip_annotations() {
        while (at_annotation()) skip_annotation();
    }

    // -------------------------------------------------------------- modifiers

    bool at_modifier() const {
        const Token& t = peek();
        if (t.kind == TokKind::Keyword && contains(kModifierKeywords, t.text)) {
            // `default:` inside switch is not a modifier
            return !(t.text == "default" && (at_op(":", 1) || at_op("->", 1)));
        }
        if (t.kind == TokKind::Ident && t.text == "sealed" && (at_ident(1) || peek(1).kind == TokKind::Keyword))
            return true;
        if (t.kind == TokKind::Ident && t.text == "non" && at_op("-", 1) && at_ident_text("sealed", 2))
            return true;
        return false;
    }

    void modifiers(std::vector<AstNode>& out) {
        while (true) {
            if (at_annotation()) {
                skip_annotation();
            } else if (at_ident_text("non") && at_op("-", 1) && at_ident_text("sealed", 2)) {
                out.push_back(take_joined(3, "non-sealed"));
                out.back().kind = NodeKind::Modifier;
            } else if (at_modifier()) {
                out.push_back(take(NodeKind::Modifier));
            } else {
                break;
            }
        }
    }

    // ------------------------------------------------------------------ types

    bool at_primitive(std::size_t k = 0) const {
        const Token& t = peek(k);
        return t.kind == TokKind::Keyword && contains(kPrimitives, t.text);
    }

    AstNode type_arguments_into(AstNode base_name, std::optional<AstNode> scope,
                                std::optional<AstNode> dot) {
        std::vector<AstNode> kids;
        if (scope) {
            kids.push_back(std::move(*scope));
            kids.push_back(std::move(*dot));
        }
        kids.push_back(std::move(base_name));
        kids.push_back(expect_op("<"));
        if (!at_op(">")) {
            kids.push_back(type_argument());
            while (at_op(",")) {
                kids.push_back(expect_op(","));
                kids.push_back(type_argument());
            }
        }
        kids.push_back(expect_op(">"));
        return make(NodeKind::ClassOrInterfaceType, std::move(kids));
    }

    AstNode type_argument() {
        skip_annotations();
        if (at_op("?")) {
            std::vector<AstNode> kids;
            kids.push_back(expect_op("?"));
            if (at_kw("extends") || at_kw("super")) {
                kids.push_back(keyword());
                kids.push_back(reference_type());
            }
            return make(NodeKind::WildcardType, std::move(kids));
        }
        return reference_type();
    }

    /// Class or interface type, possibly scoped and parameterized, no dims.
    AstNode class_type() {
        skip_annotations();
        AstNode cur = expect_ident(NodeKind::ClassOrInterfaceType);
        bool plain = true;  // still a single dotted leaf
        if (at_op("<")) {
            AstNode name = std::move(cur);
            name.kind = NodeKind::SimpleName;
            cur = type_arguments_into(std::move(name), std::nullopt, std::nullopt);
            plain = false;
        }
        while (at_op(".") && (at_ident(1) || at_op("@", 1))) {
            AstNode dot = take(NodeKind::Punctuation);
            skip_annotations();
            AstNode seg = expect_ident(NodeKind::SimpleName);
            if (at_op("<")) {
                cur = type_arguments_into(std::move(seg), std::move(cur), std::move(dot));
                plain = false;
            } else if (plain) {
                cur.token += '.';
                cur.token += seg.token;
                cur.span.end = seg.span.end;
            } else {
                std::vector<AstNode> kids;
                kids.push_back(std::move(cur));
                kids.push_back(std::move(dot));
                kids.push_back(std::move(seg));
                cur = make(NodeKind::ClassOrInterfaceType, std::move(kids));
            }
        }
        return cur;
    }

    AstNode array_dims(AstNode base) {
        while (true) {
            std::size_t save = pos_;
            skip_annotations();
            if (at_op("[") && at_op("]", 1)) {
                std::vector<AstNode> kids;
                kids.push_back(std::move(base));
                kids.push_back(expect_op("["));
                kids.push_back(expect_op("]"));
                base = make(NodeKind::ArrayType, std::move(kids));
            } else {
                pos_ = save;
                return base;
            }
        }
    }

    AstNode reference_type() {
        skip_annotations();
        if (at_primitive()) return array_dims(take(NodeKind::PrimitiveType));
        return array_dims(class_type());
    }

    /// Any type usable in a declaration (includes `var` when followed by a name).
    AstNode type() {
        skip_annotations();
        if (at_kw("void")) return take(NodeKind::VoidType);
        if (at_ident_text("var") && at_ident(1)) return take(NodeKind::VarType);
        return reference_type();
    }

    // Token-level type recognizer used for lookahead; does not build nodes.
    bool scan_annotations(std::size_t& i) const {
        while (tok_at(i).kind == TokKind::Op && tok_at(i).text == "@" &&
               !(tok_at(i + 1).kind == TokKind::Keyword && tok_at(i + 1).text == "interface")) {
            ++i;
            if (tok_at(i).kind != TokKind::Ident) return false;
            ++i;
            while (tok_at(i).text == "." && tok_at(i + 1).kind == TokKind::Ident) i += 2;
            if (tok_at(i).kind == TokKind::Op && tok_at(i).text == "(") {
                int depth = 0;
                do {
                    if (tok_at(i).kind == TokKind::End) return false;
                    if (tok_at(i).text == "(" && tok_at(i).kind == TokKind::Op) ++depth;
                    if (tok_at(i).text == ")" && tok_at(i).kind == TokKind::Op) --depth;
                    ++i;
                } while (depth > 0);
            }
        }
        return true;
    }

    bool scan_type_args(std::size_t& i) const {
        ++i;  // <
        if (tok_at(i).text == ">") {
            ++i;
            return true;
        }
        while (true) {
            if (!scan_annotations(i)) return false;
            if (tok_at(i).kind == TokKind::Op && tok_at(i).text == "?") {
                ++i;
                if (tok_at(i).kind == TokKind::Keyword &&
                    (tok_at(i).text == "extends" || tok_at(i).text == "super")) {
                    ++i;
                    if (!scan_type(i, false)) return false;
                }
            } else if (!scan_type(i, false)) {
                return false;
            }
            if (tok_at(i).kind == TokKind::Op && tok_at(i).text == ",") {
                ++i;
                continue;
            }
            if (tok_at(i).kind == TokKind::Op && tok_at(i).text == ">") {
                ++i;
                return true;
            }
            return false;
        }
    }

    /// On success advances i past the type. `primitive` reports whether the
    /// element type is primitive.
    bool scan_type(std::size_t& i, bool allow_var, bool* primitive = nullptr) const {
        if (!scan_annotations(i)) return false;
        const Token& t = tok_at(i);
        if (t.kind == TokKind::Keyword && contains(kPrimitives, t.text)) {
            if (primitive) *primitive = true;
            ++i;
        } else if (t.kind == TokKind::Ident) {
            (void)allow_var;
            if (primitive) *primitive = false;
            ++i;
            if (tok_at(i).kind == TokKind::Op && tok_at(i).text == "<" && !scan_type_args(i)) return false;
            while (tok_at(i).kind == TokKind::Op && tok_at(i).text == "." &&
                   (tok_at(i + 1).kind == TokKind::Ident ||
                    (tok_at(i + 1).kind == TokKind::Op && tok_at(i + 1).text == "@"))) {
                ++i;
                if (!scan_annotations(i)) return false;
                if (tok_at(i).kind != TokKind::Ident) return false;
                ++i;
                if (tok_at(i).kind == TokKind::Op && tok_at(i).text == "<" && !scan_type_args(i))
                    return false;
            }
        } else {
            return false;
        }
        while (true) {
            std::size_t j = i;
            if (!scan_annotations(j)) return false;
            if (tok_at(j).kind == TokKind::Op && tok_at(j).text == "[" && tok_at(j + 1).text == "]" &&
                tok_at(j + 1).kind == TokKind::Op) {
                i = j + 2;
            } else {
                break;
            }
        }
        return true;
    }

    bool looks_like_local_var_decl() const {
        std::size_t i = pos_;
        while (true) {
            if (!scan_annotations(i)) return false;
            if (tok_at(i).kind == TokKind::Keyword && tok_at(i).text == "final") {
                ++i;
                continue;
            }
            break;
        }
        if (!scan_type(i, true)) return false;
        return tok_at(i).kind == TokKind::Ident;
    }

    // ------------------------------------------------------------ declarations

    bool at_type_decl_start() const {
        std::size_t k = 0;
        return at_kw("class", k) || at_kw("interface", k) || at_kw("enum", k) ||
               (at_op("@", k) && at_kw("interface", k + 1)) ||
               (at_ident_text("record", k) && at_ident(k + 1) && (at_op("(", k + 2) || at_op("<", k + 2)));
    }

    AstNode type_declaration() {
        std::vector<AstNode> kids;
        modifiers(kids);
        return type_declaration_rest(std::move(kids));
    }

    AstNode type_parameters() {
        std::vector<AstNode> kids;
        kids.push_back(expect_op("<"));
        while (true) {
            skip_annotations();
            std::vector<AstNode> tp;
            tp.push_back(expect_ident());
            if (at_kw("extends")) {
                tp.push_back(keyword());
                tp.push_back(class_type());
                while (at_op("&")) {
                    tp.push_back(expect_op("&"));
                    tp.push_back(class_type());
                }
            }
            kids.push_back(make(NodeKind::TypeParameter, std::move(tp)));
            if (!at_op(",")) break;
            kids.push_back(expect_op(","));
        }
        kids.push_back(expect_op(">"));
        return make(NodeKind::Punctuation, std::move(kids));  // flattened by caller
    }

    void append_type_parameters(std::vector<AstNode>& kids) {
        AstNode group = type_parameters();
        for (AstNode& c : group.children) kids.push_back(std::move(c));
    }

    void type_list(std::vector<AstNode>& kids) {
        kids.push_back(class_type());
        while (at_op(",")) {
            kids.push_back(expect_op(","));
            kids.push_back(class_type());
        }
    }

    AstNode type_declaration_rest(std::vector<AstNode> kids) {
        if (at_kw("class") || at_kw("interface")) {
            kids.push_back(keyword());
            kids.push_back(expect_ident());
            if (at_op("<")) append_type_parameters(kids);
            if (at_kw("extends")) {
                kids.push_back(keyword());
                type_list(kids);
            }
            if (at_kw("implements")) {
                kids.push_back(keyword());
                type_list(kids);
            }
            if (at_ident_text("permits")) {
                kids.push_back(take(NodeKind::Keyword));
                type_list(kids);
            }
            class_body(kids, false, kids_name(kids));
            return make(NodeKind::ClassOrInterfaceDeclaration, std::move(kids));
        }
        if (at_kw("enum")) {
            kids.push_back(keyword());
            kids.push_back(expect_ident());
            if (at_kw("implements")) {
                kids.push_back(keyword());
                type_list(kids);
            }
            enum_body(kids);
            return make(NodeKind::EnumDeclaration, std::move(kids));
        }
        if (at_op("@") && at_kw("interface", 1)) {
            kids.push_back(expect_op("@"));
            kids.push_back(keyword());
            kids.push_back(expect_ident());
            annotation_body(kids);
            return make(NodeKind::AnnotationDeclaration, std::move(kids));
        }
        if (at_ident_text("record")) {
            kids.push_back(take(NodeKind::Keyword));
            kids.push_back(expect_ident());
            std::string name = kids.back().token;
            if (at_op("<")) append_type_parameters(kids);
            parameters(kids);
            if (at_kw("implements")) {
                kids.push_back(keyword());
                type_list(kids);
            }
            class_body(kids, true, name);
            return make(NodeKind::RecordDeclaration, std::move(kids));
        }
        fail("expected type declaration");
    }

    static std::string kids_name(const std::vector<AstNode>& kids) {
        for (const AstNode& k : kids)
            if (k.kind == NodeKind::SimpleName) return k.token;
        return {};
    }

    void class_body(std::vector<AstNode>& kids, bool in_record, const std::string& type_name) {
        kids.push_back(expect_op("{"));
        while (!at_op("}")) {
            if (at_end()) fail("unterminated class body");
            if (at_op(";")) {
                kids.push_back(expect_op(";"));
                continue;
            }
            std::optional<AstNode> m = member(in_record, type_name);
            if (m) kids.push_back(std::move(*m));
        }
        kids.push_back(expect_op("}"));
    }

    void enum_body(std::vector<AstNode>& kids) {
        kids.push_back(expect_op("{"));
        while (!at_op(";") && !at_op("}")) {
            skip_annotations();
            std::vector<AstNode> c;
            c.push_back(expect_ident());
            if (at_op("(")) arguments(c);
            if (at_op("{")) class_body(c, false, {});
            kids.push_back(make(NodeKind::EnumConstantDeclaration, std::move(c)));
            if (at_op(",")) {
                kids.push_back(expect_op(","));
            } else {
                break;
            }
        }
        if (at_op(";")) {
            kids.push_back(expect_op(";"));
            while (!at_op("}")) {
                if (at_end()) fail("unterminated enum body");
                if (at_op(";")) {
                    kids.push_back(expect_op(";"));
                    continue;
                }
                std::optional<AstNode> m = member(false, {});
                if (m) kids.push_back(std::move(*m));
            }
        }
        kids.push_back(expect_op("}"));
    }

    void annotation_body(std::vector<AstNode>& kids) {
        kids.push_back(expect_op("{"));
        while (!at_op("}")) {
            if (at_end()) fail("unterminated annotation body");
            if (at_op(";")) {
                kids.push_back(expect_op(";"));
                continue;
            }
            std::vector<AstNode> m;
            modifiers(m);
            if (at_type_decl_start()) {
                kids.push_back(type_declaration_rest(std::move(m)));
                continue;
            }
            m.push_back(type());
            if (at_ident() && at_op("(", 1)) {
                m.push_back(expect_ident());
                m.push_back(expect_op("("));
                m.push_back(expect_op(")"));
                if (at_kw("default")) {
                    m.push_back(keyword());
                    m.push_back(element_value());
                }
                m.push_back(expect_op(";"));
                kids.push_back(make(NodeKind::AnnotationMemberDeclaration, std::move(m)));
            } else {
                variable_declarators(m);
                m.push_back(expect_op(";"));
                kids.push_back(make(NodeKind::FieldDeclaration, std::move(m)));
            }
        }
        kids.push_back(expect_op("}"));
    }

    AstNode element_value() {
        if (at_annotation()) {
            std::size_t b = peek().begin;
            skip_annotation();
            AstNode n;
            n.kind = NodeKind::NameExpr;
            n.span = {b, tok_at(pos_ - 1).end};
            n.token = std::string(src_.substr(n.span.begin, n.span.size()));
            return n;
        }
        if (at_op("{")) {
            std::vector<AstNode> kids;
            kids.push_back(expect_op("{"));
            while (!at_op("}")) {
                kids.push_back(element_value());
                if (!at_op(",")) break;
                kids.push_back(expect_op(","));
            }
            kids.push_back(expect_op("}"));
            return make(NodeKind::ArrayInitializerExpr, std::move(kids));
        }
        return ternary();
    }

    /// One class-body member. Returns nullopt only for members that produce
    /// no node (none currently; kept for symmetry with skipped constructs).
    std::optional<AstNode> member(bool in_record, const std::string& type_name) {
        std::vector<AstNode> kids;
        modifiers(kids);
        if (at_type_decl_start()) return type_declaration_rest(std::move(kids));
        if (at_op("{")) {
            kids.push_back(block());
            return make(NodeKind::InitializerDeclaration, std::move(kids));
        }
        if (at_op("<")) append_type_parameters(kids);
        // constructor: Name (
        if (at_ident() && at_op("(", 1) && (type_name.empty() || peek().text == type_name)) {
            if (!type_name.empty() || !is_method_start_after_name()) {
                kids.push_back(expect_ident());
                parameters(kids);
                throws_clause(kids);
                kids.push_back(block());
                return make(NodeKind::ConstructorDeclaration, std::move(kids));
            }
        }
        // compact record constructor: Name {
        if (in_record && at_ident() && at_op("{", 1) && peek().text == type_name) {
            kids.push_back(expect_ident());
            kids.push_back(block());
            return make(NodeKind::ConstructorDeclaration, std::move(kids));
        }
        kids.push_back(type());
        if (at_ident() && at_op("(", 1)) {
            kids.push_back(expect_ident());
            parameters(kids);
            while (at_op("[") && at_op("]", 1)) {
                kids.push_back(expect_op("["));
                kids.push_back(expect_op("]"));
            }
            throws_clause(kids);
            if (at_op("{")) {
                kids.push_back(block());
            } else if (at_kw("default")) {  // annotation element inside interface-like body
                kids.push_back(keyword());
                kids.push_back(element_value());
                kids.push_back(expect_op(";"));
            } else {
                kids.push_back(expect_op(";"));
            }
            return make(NodeKind::MethodDeclaration, std::move(kids));
        }
        variable_declarators(kids);
        kids.push_back(expect_op(";"));
        return make(NodeKind::FieldDeclaration, std::move(kids));
    }

    // With no enclosing type name (single-method parsing) `Name(` is a
    // constructor only if nothing precedes it; a method always has a type.
    bool is_method_start_after_name() const { return false; }

    void throws_clause(std::vector<AstNode>& kids) {
        if (!at_kw("throws")) return;
        kids.push_back(keyword());
        type_list(kids);
    }

    void parameters(std::vector<AstNode>& kids) {
        kids.push_back(expect_op("("));
        if (!at_op(")")) {
            kids.push_back(parameter());
            while (at_op(",")) {
                kids.push_back(expect_op(","));
                kids.push_back(parameter());
            }
        }
        kids.push_back(expect_op(")"));
    }

    AstNode parameter() {
        std::vector<AstNode> kids;
        modifiers(kids);
        kids.push_back(type());
        skip_annotations();
        if (at_op("...")) kids.push_back(expect_op("..."));
        if (at_kw("this")) {  // receiver parameter
            kids.push_back(keyword());
        } else if (at_ident() && at_op(".", 1) && at_kw("this", 2)) {
            kids.push_back(expect_ident());
            kids.push_back(expect_op("."));
            kids.push_back(keyword());
        } else {
            kids.push_back(expect_ident());
        }
        while (at_op("[") && at_op("]", 1)) {
            kids.push_back(expect_op("["));
            kids.push_back(expect_op("]"));
        }
        return make(NodeKind::Parameter, std::move(kids));
    }

    void variable_declarators(std::vector<AstNode>& kids) {
        kids.push_back(variable_declarator());
        while (at_op(",")) {
            kids.push_back(expect_op(","));
            kids.push_back(variable_declarator());
        }
    }

    AstNode variable_declarator() {
        std::vector<AstNode> kids;
        kids.push_back(expect_ident());
        while (at_op("[") && at_op("]", 1)) {
            kids.push_back(expect_op("["));
            kids.push_back(expect_op("]"));
        }
        if (at_op("=")) {
            kids.push_back(expect_op("="));
            kids.push_back(variable_initializer());
        }
        return make(NodeKind::VariableDeclarator, std::move(kids));
    }

    AstNode variable_initializer() { return at_op("{") ? array_initializer() : expression(); }

    AstNode array_initializer() {
        std::vector<AstNode> kids;
        kids.push_back(expect_op("{"));
        while (!at_op("}")) {
            kids.push_back(variable_initializer());
            if (!at_op(",")) break;
            kids.push_back(expect_op(","));
        }
        kids.push_back(expect_op("}"));
        return make(NodeKind::ArrayInitializerExpr, std::move(kids));
    }

    /// modifiers type declarators — the part of a local variable declaration
    /// before the terminating `;` (also used by for-init and resources).
    AstNode local_var_decl(bool allow_foreach_header = false) {
        std::vector<AstNode> kids;
        modifiers(kids);
        kids.push_back(type());
        if (allow_foreach_header && at_ident() && at_op(":", 1)) {
            std::vector<AstNode> d;
            d.push_back(expect_ident());
            kids.push_back(make(NodeKind::VariableDeclarator, std::move(d)));
        } else {
            variable_declarators(kids);
        }
        return make(NodeKind::VariableDeclarationExpr, std::move(kids));
    }

    // -------------------------------------------------------------- statements

    AstNode block() {
        std::vector<AstNode> kids;
        kids.push_back(expect_op("{"));
        while (!at_op("}")) {
            if (at_end()) fail("unterminated block");
            kids.push_back(statement());
        }
        kids.push_back(expect_op("}"));
        return make(NodeKind::BlockStmt, std::move(kids));
    }

    AstNode paren_expression(std::vector<AstNode>& kids) {
        kids.push_back(expect_op("("));
        AstNode e = expression();
        kids.push_back(std::move(e));
        kids.push_back(expect_op(")"));
        return AstNode{};
    }

    bool at_yield_statement() const {
        if (!at_ident_text("yield")) return false;
        const Token& n = peek(1);
        if (n.kind != TokKind::Op) return true;
        static constexpr std::array<std::string_view, 9> kNotYield = {
            "=", ".", "[", "++", "--", "+=", "-=", "->", "::"};
        return !contains(kNotYield, n.text);
    }

    AstNode statement() {
        if (at_op("{")) return block();
        if (at_op(";")) {
            std::vector<AstNode> kids;
            kids.push_back(expect_op(";"));
            return make(NodeKind::EmptyStmt, std::move(kids));
        }
        const Token& t = peek();
        if (t.kind == TokKind::Keyword) {
            if (t.text == "if") return if_statement();
            if (t.text == "for") return for_statement();
            if (t.text == "while") {
                std::vector<AstNode> kids;
                kids.push_back(keyword());
                paren_expression(kids);
                kids.push_back(statement());
                return make(NodeKind::WhileStmt, std::move(kids));
            }
            if (t.text == "do") {
                std::vector<AstNode> kids;
                kids.push_back(keyword());
                kids.push_back(statement());
                kids.push_back(expect_kw("while"));
                paren_expression(kids);
                kids.push_back(expect_op(";"));
                return make(NodeKind::DoStmt, std::move(kids));
            }
            if (t.text == "return") {
                std::vector<AstNode> kids;
                kids.push_back(keyword());
                if (!at_op(";")) kids.push_back(expression());
                kids.push_back(expect_op(";"));
                return make(NodeKind::ReturnStmt, std::move(kids));
            }
            if (t.text == "break" || t.text == "continue") {
                NodeKind k = t.text == "break" ? NodeKind::BreakStmt : NodeKind::ContinueStmt;
                std::vector<AstNode> kids;
                kids.push_back(keyword());
                if (at_ident()) kids.push_back(expect_ident());
                kids.push_back(expect_op(";"));
                return make(k, std::move(kids));
            }
            if (t.text == "throw") {
                std::vector<AstNode> kids;
                kids.push_back(keyword());
                kids.push_back(expression());
                kids.push_back(expect_op(";"));
                return make(NodeKind::ThrowStmt, std::move(kids));
            }
            if (t.text == "try") return try_statement();
            if (t.text == "switch" && !switch_is_expression_statement()) {
                std::vector<AstNode> kids;
                switch_body(kids);
                return make(NodeKind::SwitchStmt, std::move(kids));
            }
            if (t.text == "synchronized" && at_op("(", 1)) {
                std::vector<AstNode> kids;
                kids.push_back(keyword());
                paren_expression(kids);
                kids.push_back(block());
                return make(NodeKind::SynchronizedStmt, std::move(kids));
            }
            if (t.text == "assert") {
                std::vector<AstNode> kids;
                kids.push_back(keyword());
                kids.push_back(expression());
                if (at_op(":")) {
                    kids.push_back(expect_op(":"));
                    kids.push_back(expression());
                }
                kids.push_back(expect_op(";"));
                return make(NodeKind::AssertStmt, std::move(kids));
            }
            if ((t.text == "this" || t.text == "super") && at_op("(", 1)) {
                std::vector<AstNode> kids;
                kids.push_back(keyword());
                arguments(kids);
                kids.push_back(expect_op(";"));
                return make(NodeKind::ExplicitConstructorInvocationStmt, std::move(kids));
            }
        }
        if (at_yield_statement()) {
            std::vector<AstNode> kids;
            kids.push_back(take(NodeKind::Keyword));
            kids.push_back(expression());
            kids.push_back(expect_op(";"));
            return make(NodeKind::YieldStmt, std::move(kids));
        }
        if (at_ident() && at_op(":", 1)) {
            std::vector<AstNode> kids;
            kids.push_back(expect_ident());
            kids.push_back(expect_op(":"));
            kids.push_back(statement());
            return make(NodeKind::LabeledStmt, std::move(kids));
        }
        // local class / record / interface / enum
        {
            std::size_t save = pos_;
            std::vector<AstNode> mods;
            modifiers(mods);
            if (at_type_decl_start()) {
                std::vector<AstNode> kids;
                kids.push_back(type_declaration_rest(std::move(mods)));
                return make(NodeKind::LocalClassDeclarationStmt, std::move(kids));
            }
            pos_ = save;
        }
        std::vector<AstNode> kids;
        if (looks_like_local_var_decl()) {
            kids.push_back(local_var_decl());
        } else {
            kids.push_back(expression());
        }
        kids.push_back(expect_op(";"));
        return make(NodeKind::ExpressionStmt, std::move(kids));
    }

    // `switch (x) { ... }.foo();` is vanishingly rare; a statement-level
    // switch is always parsed as SwitchStmt.
    bool switch_is_expression_statement() const { return false; }

    AstNode if_statement() {
        std::vector<AstNode> kids;
        kids.push_back(keyword());
        paren_expression(kids);
        kids.push_back(statement());
        if (at_kw("else")) {
            kids.push_back(keyword());
            kids.push_back(statement());
        }
        return make(NodeKind::IfStmt, std::move(kids));
    }

    AstNode for_statement() {
        std::vector<AstNode> kids;
        kids.push_back(keyword());
        kids.push_back(expect_op("("));
        if (!at_op(";") && looks_like_local_var_decl()) {
            kids.push_back(local_var_decl(true));
            if (at_op(":")) {
                kids.push_back(expect_op(":"));
                kids.push_back(expression());
                kids.push_back(expect_op(")"));
                kids.push_back(statement());
                return make(NodeKind::ForEachStmt, std::move(kids));
            }
        } else if (!at_op(";")) {
            expression_list(kids);
        }
        kids.push_back(expect_op(";"));
        if (!at_op(";")) kids.push_back(expression());
        kids.push_back(expect_op(";"));
        if (!at_op(")")) expression_list(kids);
        kids.push_back(expect_op(")"));
        kids.push_back(statement());
        return make(NodeKind::ForStmt, std::move(kids));
    }

    void expression_list(std::vector<AstNode>& kids) {
        kids.push_back(expression());
        while (at_op(",")) {
            kids.push_back(expect_op(","));
            kids.push_back(expression());
        }
    }

    AstNode try_statement() {
        std::vector<AstNode> kids;
        kids.push_back(keyword());
        if (at_op("(")) {
            kids.push_back(expect_op("("));
            while (!at_op(")")) {
                if (looks_like_local_var_decl()) {
                    kids.push_back(local_var_decl());
                } else {
                    kids.push_back(expression());
                }
                if (!at_op(";")) break;
                kids.push_back(expect_op(";"));
            }
            kids.push_back(expect_op(")"));
        }
        kids.push_back(block());
        while (at_kw("catch")) {
            std::vector<AstNode> c;
            c.push_back(keyword());
            c.push_back(expect_op("("));
            std::vector<AstNode> p;
            modifiers(p);
            AstNode first = reference_type();
            if (at_op("|")) {
                std::vector<AstNode> u;
                u.push_back(std::move(first));
                while (at_op("|")) {
                    u.push_back(expect_op("|"));
                    u.push_back(reference_type());
                }
                p.push_back(make(NodeKind::UnionType, std::move(u)));
            } else {
                p.push_back(std::move(first));
            }
            p.push_back(expect_ident());
            c.push_back(make(NodeKind::Parameter, std::move(p)));
            c.push_back(expect_op(")"));
            c.push_back(block());
            kids.push_back(make(NodeKind::CatchClause, std::move(c)));
        }
        if (at_kw("finally")) {
            kids.push_back(keyword());
            kids.push_back(block());
        }
        return make(NodeKind::TryStmt, std::move(kids));
    }

    /// switch (selector) { entries } — shared by statements and expressions.
    void switch_body(std::vector<AstNode>& kids) {
        kids.push_back(expect_kw("switch"));
        paren_expression(kids);
        kids.push_back(expect_op("{"));
        while (!at_op("}")) {
            if (at_end()) fail("unterminated switch");
            std::vector<AstNode> e;
            if (at_kw("default")) {
                e.push_back(keyword());
            } else {
                e.push_back(expect_kw("case"));
                e.push_back(case_label());
                while (at_op(",")) {
                    e.push_back(expect_op(","));
                    e.push_back(case_label());
                }
            }
            if (at_op("->")) {
                e.push_back(expect_op("->"));
                if (at_op("{")) {
                    e.push_back(block());
                } else if (at_kw("throw")) {
                    e.push_back(statement());
                } else {
                    std::vector<AstNode> s;
                    s.push_back(expression());
                    s.push_back(expect_op(";"));
                    e.push_back(make(NodeKind::ExpressionStmt, std::move(s)));
                }
            } else {
                e.push_back(expect_op(":"));
                while (!at_kw("case") && !(at_kw("default") && (at_op(":", 1) || at_op("->", 1))) &&
                       !at_op("}")) {
                    if (at_end()) fail("unterminated switch");
                    e.push_back(statement());
                }
            }
            kids.push_back(make(NodeKind::SwitchEntry, std::move(e)));
        }
        kids.push_back(expect_op("}"));
    }

    AstNode case_label() {
        if (at_kw("null")) return take(NodeKind::NullLiteralExpr);
        if (at_kw("default")) return keyword();
        return ternary();
    }

    // ------------------------------------------------------------- expressions

    bool lambda_ahead() const {
        if (at_ident() && at_op("->", 1)) return true;
        if (!at_op("(")) return false;
        int depth = 0;
        std::size_t i = pos_;
        while (true) {
            const Token& t = tok_at(i);
            if (t.kind == TokKind::End) return false;
            if (t.kind == TokKind::Op) {
                if (t.text == "(") ++depth;
                if (t.text == ")" && --depth == 0) break;
            }
            ++i;
        }
        const Token& after = tok_at(i + 1);
        return after.kind == TokKind::Op && after.text == "->";
    }

    AstNode lambda() {
        std::vector<AstNode> kids;
        if (at_ident()) {
            std::vector<AstNode> p;
            p.push_back(expect_ident());
            kids.push_back(make(NodeKind::Parameter, std::move(p)));
        } else {
            kids.push_back(expect_op("("));
            if (!at_op(")")) {
                bool untyped = at_ident() && (at_op(",", 1) || at_op(")", 1));
                while (true) {
                    if (untyped) {
                        std::vector<AstNode> p;
                        p.push_back(expect_ident());
                        kids.push_back(make(NodeKind::Parameter, std::move(p)));
                    } else {
                        kids.push_back(parameter());
                    }
                    if (!at_op(",")) break;
                    kids.push_back(expect_op(","));
                }
            }
            kids.push_back(expect_op(")"));
        }
        kids.push_back(expect_op("->"));
        kids.push_back(at_op("{") ? block() : expression());
        return make(NodeKind::LambdaExpr, std::move(kids));
    }

    std::optional<AssignOp> peek_assign() const {
        if (at_op(">") && adjacent(0) && at_op(">", 1)) {
            if (adjacent(1) && at_op(">", 2) && adjacent(2) && at_op("=", 3))
                return AssignOp{">>>=", "rUnsignedShift", 4};
            if (adjacent(1) && at_op("=", 2)) return AssignOp{">>=", "rSignedShift", 3};
            return std::nullopt;
        }
        if (peek().kind != TokKind::Op) return std::nullopt;
        for (const AssignOp& a : kAssignOps)
            if (peek().text == a.text) return a;
        return std::nullopt;
    }

    AstNode expression() {
        if (lambda_ahead()) return lambda();
        AstNode lhs = ternary();
        if (std::optional<AssignOp> a = peek_assign()) {
            std::vector<AstNode> kids;
            kids.push_back(std::move(lhs));
            kids.push_back(take_joined(a->ntok, a->text));
            kids.push_back(at_op("{") ? array_initializer() : expression());
            return make(NodeKind::AssignExpr, std::move(kids), std::string(a->name));
        }
        return lhs;
    }

    AstNode ternary() {
        AstNode cond = binary(1);
        if (!at_op("?")) return cond;
        std::vector<AstNode> kids;
        kids.push_back(std::move(cond));
        kids.push_back(expect_op("?"));
        kids.push_back(lambda_ahead() ? lambda() : ternary_branch());
        kids.push_back(expect_op(":"));
        kids.push_back(lambda_ahead() ? lambda() : ternary_branch());
        return make(NodeKind::ConditionalExpr, std::move(kids));
    }

    AstNode ternary_branch() { return ternary(); }

    std::optional<BinOp> peek_binop() const {
        const Token& t = peek();
        if (t.kind == TokKind::Keyword && t.text == "instanceof") return kBinOps[16];
        if (t.kind != TokKind::Op) return std::nullopt;
        if (t.text == ">") {
            if (adjacent(0) && at_op(">", 1)) {
                if (adjacent(1) && at_op(">", 2)) {
                    if (adjacent(2) && at_op("=", 3)) return std::nullopt;  // >>>=
                    return BinOp{">>>", "rUnsignedShift", 8, 3};
                }
                if (adjacent(1) && at_op("=", 2)) return std::nullopt;  // >>=
                return BinOp{">>", "rSignedShift", 8, 2};
            }
            if (adjacent(0) && at_op("=", 1)) return BinOp{">=", "greaterEquals", 7, 2};
            return kBinOps[15];
        }
        for (std::size_t i = 0; i < 15; ++i)
            if (t.text == kBinOps[i].text) return kBinOps[i];
        return std::nullopt;
    }

    AstNode binary(int min_prec) {
        AstNode lhs = unary();
        while (true) {
            std::optional<BinOp> op = peek_binop();
            if (!op || op->prec < min_prec) break;
            std::vector<AstNode> kids;
            kids.push_back(std::move(lhs));
            if (op->name == "instanceof") {
                kids.push_back(keyword());
                std::vector<AstNode> mods;
                modifiers(mods);
                for (AstNode& m : mods) kids.push_back(std::move(m));
                kids.push_back(reference_type());
                if (at_ident() && !at_op("->", 1)) kids.push_back(expect_ident());
                lhs = make(NodeKind::InstanceOfExpr, std::move(kids));
                continue;
            }
            kids.push_back(take_joined(op->ntok, op->text));
            kids.push_back(binary(op->prec + 1));
            lhs = make(NodeKind::BinaryExpr, std::move(kids), std::string(op->name));
        }
        return lhs;
    }

    bool cast_ahead() const {
        if (!at_op("(")) return false;
        std::size_t i = pos_ + 1;
        bool primitive = false;
        if (!scan_type(i, false, &primitive)) return false;
        // intersection casts: (A & B) expr
        while (tok_at(i).kind == TokKind::Op && tok_at(i).text == "&") {
            ++i;
            if (!scan_type(i, false)) return false;
        }
        if (!(tok_at(i).kind == TokKind::Op && tok_at(i).text == ")")) return false;
        if (primitive) return true;
        const Token& n = tok_at(i + 1);
        switch (n.kind) {
            case TokKind::Ident:
            case TokKind::IntLit:
            case TokKind::LongLit:
            case TokKind::DoubleLit:
            case TokKind::CharLit:
            case TokKind::StringLit:
            case TokKind::TextBlock:
                return true;
            case TokKind::Keyword:
                return n.text == "this" || n.text == "super" || n.text == "new" || n.text == "true" ||
                       n.text == "false" || n.text == "null" || n.text == "switch" ||
                       contains(kPrimitives, n.text);
            case TokKind::Op:
                return n.text == "(" || n.text == "!" || n.text == "~";
            default:
                return false;
        }
    }

    AstNode unary() {
        const Token& t = peek();
        if (t.kind == TokKind::Op) {
            std::string_view name;
            if (t.text == "+") name = "positive";
            else if (t.text == "-") name = "negative";
            else if (t.text == "++") name = "preIncrement";
            else if (t.text == "--") name = "preDecrement";
            else if (t.text == "!") name = "not";
            else if (t.text == "~") name = "inverse";
            if (!name.empty()) {
                std::vector<AstNode> kids;
                kids.push_back(take(NodeKind::Punctuation));
                kids.push_back(unary());
                return make(NodeKind::UnaryExpr, std::move(kids), std::string(name));
            }
            if (t.text == "(" && !lambda_ahead() && cast_ahead()) {
                std::vector<AstNode> kids;
                kids.push_back(expect_op("("));
                kids.push_back(reference_type());
                if (at_op("&")) {
                    std::vector<AstNode> it;
                    it.push_back(std::move(kids.back()));
                    kids.pop_back();
                    while (at_op("&")) {
                        it.push_back(expect_op("&"));
                        it.push_back(reference_type());
                    }
                    kids.push_back(make(NodeKind::IntersectionType, std::move(it)));
                }
                kids.push_back(expect_op(")"));
                kids.push_back(lambda_ahead() ? lambda() : unary());
                return make(NodeKind::CastExpr, std::move(kids));
            }
        }
        return postfix(primary());
    }

    AstNode postfix(AstNode e) {
        while (true) {
            if (at_op(".")) {
                if (at_ident(1)) {
                    AstNode dot = expect_op(".");
                    AstNode name = expect_ident();
                    std::vector<AstNode> kids;
                    kids.push_back(std::move(e));
                    kids.push_back(std::move(dot));
                    kids.push_back(std::move(name));
                    if (at_op("(")) {
                        arguments(kids);
                        e = make(NodeKind::MethodCallExpr, std::move(kids));
                    } else {
                        e = make(NodeKind::FieldAccessExpr, std::move(kids));
                    }
                } else if (at_op("<", 1)) {
                    std::vector<AstNode> kids;
                    kids.push_back(std::move(e));
                    kids.push_back(expect_op("."));
                    type_args_flat(kids);
                    kids.push_back(expect_ident());
                    arguments(kids);
                    e = make(NodeKind::MethodCallExpr, std::move(kids));
                } else if (at_kw("new", 1)) {
                    std::vector<AstNode> kids;
                    kids.push_back(std::move(e));
                    kids.push_back(expect_op("."));
                    AstNode created = creation();
                    for (AstNode& c : created.children) kids.push_back(std::move(c));
                    e = make(created.kind, std::move(kids));
                } else if (at_kw("class", 1) || at_kw("this", 1) || at_kw("super", 1)) {
                    NodeKind k = at_kw("class", 1)  ? NodeKind::ClassExpr
                                 : at_kw("this", 1) ? NodeKind::ThisExpr
                                                    : NodeKind::SuperExpr;
                    std::vector<AstNode> kids;
                    kids.push_back(std::move(e));
                    kids.push_back(expect_op("."));
                    kids.push_back(keyword());
                    e = make(k, std::move(kids));
                } else {
                    fail("unexpected token after '.'");
                }
            } else if (at_op("[")) {
                if (at_op("]", 1)) {
                    e = array_dims(std::move(e));
                    if (!(at_op(".") && at_kw("class", 1)) && !at_op("::")) fail("expected .class or ::");
                    continue;
                }
                std::vector<AstNode> kids;
                kids.push_back(std::move(e));
                kids.push_back(expect_op("["));
                kids.push_back(expression());
                kids.push_back(expect_op("]"));
                e = make(NodeKind::ArrayAccessExpr, std::move(kids));
            } else if (at_op("::")) {
                std::vector<AstNode> kids;
                kids.push_back(std::move(e));
                kids.push_back(expect_op("::"));
                if (at_op("<")) type_args_flat(kids);
                if (at_kw("new")) {
                    kids.push_back(keyword());
                } else {
                    kids.push_back(expect_ident());
                }
                e = make(NodeKind::MethodReferenceExpr, std::move(kids));
            } else if (at_op("++") || at_op("--")) {
                std::string name = at_op("++") ? "posIncrement" : "posDecrement";
                std::vector<AstNode> kids;
                kids.push_back(std::move(e));
                kids.push_back(take(NodeKind::Punctuation));
                e = make(NodeKind::UnaryExpr, std::move(kids), name);
            } else {
                return e;
            }
        }
    }

    void type_args_flat(std::vector<AstNode>& kids) {
        kids.push_back(expect_op("<"));
        if (!at_op(">")) {
            kids.push_back(type_argument());
            while (at_op(",")) {
                kids.push_back(expect_op(","));
                kids.push_back(type_argument());
            }
        }
        kids.push_back(expect_op(">"));
    }

    void arguments(std::vector<AstNode>& kids) {
        kids.push_back(expect_op("("));
        if (!at_op(")")) expression_list(kids);
        kids.push_back(expect_op(")"));
    }

    AstNode primary() {
        const Token& t = peek();
        switch (t.kind) {
            case TokKind::IntLit: return take(NodeKind::IntegerLiteralExpr);
            case TokKind::LongLit: return take(NodeKind::LongLiteralExpr);
            case TokKind::DoubleLit: return take(NodeKind::DoubleLiteralExpr);
            case TokKind::CharLit: return take(NodeKind::CharLiteralExpr);
            case TokKind::StringLit: return take(NodeKind::StringLiteralExpr);
            case TokKind::TextBlock: return take(NodeKind::TextBlockLiteralExpr);
            case TokKind::Ident: {
                if (at_op("(", 1)) {
                    std::vector<AstNode> kids;
                    kids.push_back(expect_ident());
                    arguments(kids);
                    return make(NodeKind::MethodCallExpr, std::move(kids));
                }
                if (at_op("<", 1) && generic_type_then_method_ref()) {
                    AstNode ty = class_type();
                    return array_dims(std::move(ty));
                }
                return take(NodeKind::NameExpr);
            }
            case TokKind::Keyword: {
                if (t.text == "true" || t.text == "false") return take(NodeKind::BooleanLiteralExpr);
                if (t.text == "null") return take(NodeKind::NullLiteralExpr);
                if (t.text == "this") {
                    if (at_op("(", 1)) fail("constructor call must be a statement");
                    return take(NodeKind::ThisExpr);
                }
                if (t.text == "super") return take(NodeKind::SuperExpr);
                if (t.text == "new") return creation();
                if (t.text == "switch") {
                    std::vector<AstNode> kids;
                    switch_body(kids);
                    return make(NodeKind::SwitchExpr, std::move(kids));
                }
                if (contains(kPrimitives, t.text) || t.text == "void") {
                    AstNode ty = t.text == "void" ? take(NodeKind::VoidType) : array_dims(take(NodeKind::PrimitiveType));
                    if (at_op(".") && at_kw("class", 1)) {
                        std::vector<AstNode> kids;
                        kids.push_back(std::move(ty));
                        kids.push_back(expect_op("."));
                        kids.push_back(keyword());
                        return make(NodeKind::ClassExpr, std::move(kids));
                    }
                    if (at_op("::")) return ty;
                    fail("unexpected type in expression");
                }
                break;
            }
            case TokKind::Op: {
                if (t.text == "(") {
                    std::vector<AstNode> kids;
                    kids.push_back(expect_op("("));
                    kids.push_back(expression());
                    kids.push_back(expect_op(")"));
                    return make(NodeKind::EnclosedExpr, std::move(kids));
                }
                if (t.text == "@") {
                    skip_annotations();
                    return primary();
                }
                break;
            }
            default:
                break;
        }
        fail("expected expression");
    }

    // Foo<Bar>::new / Foo<Bar>[]::new
    bool generic_type_then_method_ref() const {
        std::size_t i = pos_;
        if (!scan_type(i, false)) return false;
        return tok_at(i).kind == TokKind::Op && tok_at(i).text == "::";
    }

    AstNode creation() {
        std::vector<AstNode> kids;
        kids.push_back(expect_kw("new"));
        if (at_op("<")) type_args_flat(kids);
        skip_annotations();
        AstNode ty = at_primitive() ? take(NodeKind::PrimitiveType) : class_type();
        kids.push_back(std::move(ty));
        skip_annotations();
        if (at_op("[")) {
            while (true) {
                std::size_t save = pos_;
                skip_annotations();
                if (!at_op("[")) {
                    pos_ = save;
                    break;
                }
                std::vector<AstNode> lvl;
                lvl.push_back(expect_op("["));
                if (!at_op("]")) lvl.push_back(expression());
                lvl.push_back(expect_op("]"));
                kids.push_back(make(NodeKind::ArrayCreationLevel, std::move(lvl)));
            }
            if (at_op("{")) kids.push_back(array_initializer());
            return make(NodeKind::ArrayCreationExpr, std::move(kids));
        }
        arguments(kids);
        if (at_op("{")) class_body(kids, false, {});
        return make(NodeKind::ObjectCreationExpr, std::move(kids));
    }

    std::string_view src_;
    const std::string& file_;
    std::vector<Token> toks_;
    std::size_t pos_ = 0;
};

void collect_methods(const AstNode& n, std::vector<const AstNode*>& out) {
    if (n.kind == NodeKind::MethodDeclaration && !n.children.empty() &&
        n.children.back().kind == NodeKind::BlockStmt) {
        out.push_back(&n);
    }
    for (const AstNode& c : n.children) collect_methods(c, out);
}

void shift_spans(AstNode& n, std::size_t by) {
    n.span.begin -= by;
    n.span.end -= by;
    for (AstNode& c : n.children) shift_spans(c, by);
}

std::string method_name_of(const AstNode& method) {
    // The name is the SimpleName directly followed by the parameter list.
    for (std::size_t i = 0; i + 1 < method.children.size(); ++i) {
        const AstNode& c = method.children[i];
        const AstNode& next = method.children[i + 1];
        if (c.kind == NodeKind::SimpleName && next.kind == NodeKind::Punctuation && next.token == "(")
            return c.token;
    }
    return {};
}

void collect_leaves(const AstNode& n, std::vector<const AstNode*>& out, bool values_only) {
    if (n.children.empty()) {
        if (!values_only || is_value_terminal(n)) out.push_back(&n);
        return;
    }
    for (const AstNode& c : n.children) collect_leaves(c, out, values_only);
}

void dump(const AstNode& n, int depth, std::string& out) {
    out.append(static_cast<std::size_t>(depth) * 2, ' ');
    out += n.label();
    if (n.is_leaf()) {
        out += " '";
        out += n.token;
        out += '\'';
    }
    out += '\n';
    for (const AstNode& c : n.children) dump(c, depth + 1, out);
}

}  // namespace

ParseError::ParseError(std::string file_path, std::size_t position, const std::string& message)
    : std::runtime_error(file_path + ":" + std::to_string(position) + ": " + message),
      file_path_(std::move(file_path)),
      position_(position) {}

AstNode parse_compilation_unit(std::string_view source, const std::string& file_path) {
    return Parser(source, file_path).compilation_unit();
}

std::vector<MethodUnit> parse_file(std::string_view source, const std::string& file_path) {
    AstNode cu = parse_compilation_unit(source, file_path);
    std::vector<const AstNode*> methods;
    collect_methods(cu, methods);

    std::vector<MethodUnit> units;
    units.reserve(methods.size());
    std::size_t line = 1;
    std::size_t line_pos = 0;
    for (const AstNode* m : methods) {
        MethodUnit u;
        u.file_path = file_path;
        u.method_name = method_name_of(*m);
        u.file_offset = m->span.begin;
        // methods are in increasing span order, so the line count is incremental
        line += static_cast<std::size_t>(
            std::count(source.begin() + static_cast<std::ptrdiff_t>(line_pos),
                       source.begin() + static_cast<std::ptrdiff_t>(m->span.begin), '\n'));
        line_pos = m->span.begin;
        u.line = line;
        u.source = std::string(source.substr(m->span.begin, m->span.size()));
        u.root = *m;
        shift_spans(u.root, m->span.begin);
        units.push_back(std::move(u));
    }
    return units;
}

MethodUnit parse_method(std::string_view source, const std::string& file_path) {
    AstNode root = Parser(source, file_path).single_member();
    if (root.kind != NodeKind::MethodDeclaration || root.children.back().kind != NodeKind::BlockStmt)
        throw ParseError(file_path, 0, "input is not a method declaration with a body");
    MethodUnit u;
    u.file_path = file_path;
    u.method_name = method_name_of(root);
    u.source = std::string(source.substr(root.span.begin, root.span.size()));
    shift_spans(root, root.span.begin);
    u.root = std::move(root);
    return u;
}

std::vector<const AstNode*> terminals_in_order(const AstNode& root) {
    std::vector<const AstNode*> out;
    collect_leaves(root, out, false);
    return out;
}

std::vector<const AstNode*> value_terminals(const AstNode& root) {
    std::vector<const AstNode*> out;
    collect_leaves(root, out, true);
    return out;
}

std::string dump_tree(const AstNode& root) {
    std::string out;
    dump(root, 0, out);
    return out;
}

}  // namespace obo
