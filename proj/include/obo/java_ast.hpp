#pragma once

#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace obo {

/// Half-open byte interval [begin, end) into a source text.
struct Span {
    std::size_t begin = 0;
    std::size_t end = 0;

    std::size_t size() const { return end - begin; }
    bool contains(const Span& o) const { return begin <= o.begin && o.end <= end; }
    bool operator==(const Span&) const = default;
};

/// Node kinds of the supported Java grammar. Names follow JavaParser's
/// class names. The last three kinds are syntax leaves (keywords, modifiers,
/// punctuation and operators) that carry no value for path extraction.
enum class NodeKind : std::uint8_t {
    CompilationUnit,
    PackageDeclaration,
    ImportDeclaration,
    ClassOrInterfaceDeclaration,
    EnumDeclaration,
    EnumConstantDeclaration,
    RecordDeclaration,
    AnnotationDeclaration,
    AnnotationMemberDeclaration,
    FieldDeclaration,
    MethodDeclaration,
    ConstructorDeclaration,
    InitializerDeclaration,
    Parameter,
    TypeParameter,
    VariableDeclarator,
    // types
    PrimitiveType,
    VoidType,
    VarType,
    ClassOrInterfaceType,
    ArrayType,
    WildcardType,
    UnionType,
    IntersectionType,
    // statements
    BlockStmt,
    ExpressionStmt,
    IfStmt,
    ForStmt,
    ForEachStmt,
    WhileStmt,
    DoStmt,
    ReturnStmt,
    BreakStmt,
    ContinueStmt,
    ThrowStmt,
    TryStmt,
    CatchClause,
    SwitchStmt,
    SwitchEntry,
    SynchronizedStmt,
    LabeledStmt,
    AssertStmt,
    EmptyStmt,
    LocalClassDeclarationStmt,
    ExplicitConstructorInvocationStmt,
    YieldStmt,
    // expressions
    AssignExpr,
    ConditionalExpr,
    BinaryExpr,
    UnaryExpr,
    CastExpr,
    InstanceOfExpr,
    LambdaExpr,
    MethodReferenceExpr,
    MethodCallExpr,
    FieldAccessExpr,
    ArrayAccessExpr,
    ObjectCreationExpr,
    ArrayCreationExpr,
    ArrayCreationLevel,
    ArrayInitializerExpr,
    EnclosedExpr,
    NameExpr,
    ThisExpr,
    SuperExpr,
    ClassExpr,
    SwitchExpr,
    VariableDeclarationExpr,
    // literals
    IntegerLiteralExpr,
    LongLiteralExpr,
    DoubleLiteralExpr,
    CharLiteralExpr,
    StringLiteralExpr,
    TextBlockLiteralExpr,
    BooleanLiteralExpr,
    NullLiteralExpr,
    // leaves
    SimpleName,
    Keyword,
    Modifier,
    Punctuation,
};

std::string_view kind_name(NodeKind k);

/// Every kind, in declaration order.
const std::vector<NodeKind>& all_node_kinds();

/// One AST node. Leaves carry the raw lexeme in `token`; inner nodes carry
/// none. Operator-bearing expressions (BinaryExpr, UnaryExpr, AssignExpr)
/// record the operator name in `op` (JavaParser spelling, e.g. "less").
struct AstNode {
    NodeKind kind = NodeKind::Punctuation;
    std::string op;
    std::string token;
    std::vector<AstNode> children;
    Span span;

    bool is_leaf() const { return children.empty(); }

    /// Kind name with the operator appended ("BinaryExpr:less") when present.
    std::string label() const;

    /// Structural equality on kind/op/token/children, ignoring spans.
    bool same_shape(const AstNode& other) const;

    bool operator==(const AstNode&) const = default;
};

/// Leaves that take part in path extraction: identifiers, literals, type
/// names and keyword operands (`this`, `super`). Syntax leaves do not.
bool is_value_terminal(const AstNode& node);

/// True for syntax leaves (Keyword, Modifier, Punctuation).
bool is_syntax(const AstNode& node);

/// One parsed method. Spans inside `root` are relative to `source`, so
/// root.span == [0, source.size()).
struct MethodUnit {
    std::string file_path;
    std::string method_name;
    AstNode root;
    std::string source;
    std::size_t line = 1;         ///< 1-based line of the declaration in its file
    std::size_t file_offset = 0;  ///< byte offset of `source` in its file
};

class ParseError : public std::runtime_error {
public:
    ParseError(std::string file_path, std::size_t position, const std::string& message);

    const std::string& file_path() const { return file_path_; }
    std::size_t position() const { return position_; }

private:
    std::string file_path_;
    std::size_t position_;
};

/// Parse a whole compilation unit.
AstNode parse_compilation_unit(std::string_view source, const std::string& file_path = "<input>");

/// One MethodUnit per method declaration with a body, in source order,
/// including methods of nested, local and anonymous classes. Constructors
/// and bodiless (abstract / interface) methods are not returned.
std::vector<MethodUnit> parse_file(std::string_view source, const std::string& file_path);

/// Parse text holding exactly one method declaration (the `source` of a
/// MethodUnit) back into a MethodUnit.
MethodUnit parse_method(std::string_view source, const std::string& file_path = "<method>");

/// All leaves in left-to-right order (syntax leaves included).
std::vector<const AstNode*> terminals_in_order(const AstNode& root);

/// Value-bearing leaves in left-to-right order.
std::vector<const AstNode*> value_terminals(const AstNode& root);

/// Indented one-node-per-line dump, for debugging and golden tests.
std::string dump_tree(const AstNode& root);

}  // namespace obo
