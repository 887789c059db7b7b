#include "obo/java_ast.hpp"

namespace obo {

std::string_view kind_name(NodeKind k) {
    switch (k) {
        case NodeKind::CompilationUnit: return "CompilationUnit";
        case NodeKind::PackageDeclaration: return "PackageDeclaration";
        case NodeKind::ImportDeclaration: return "ImportDeclaration";
        case NodeKind::ClassOrInterfaceDeclaration: return "ClassOrInterfaceDeclaration";
        case NodeKind::EnumDeclaration: return "EnumDeclaration";
        case NodeKind::EnumConstantDeclaration: return "EnumConstantDeclaration";
        case NodeKind::RecordDeclaration: return "RecordDeclaration";
        case NodeKind::AnnotationDeclaration: return "AnnotationDeclaration";
        case NodeKind::AnnotationMemberDeclaration: return "AnnotationMemberDeclaration";
        case NodeKind::FieldDeclaration: return "FieldDeclaration";
        case NodeKind::MethodDeclaration: return "MethodDeclaration";
        case NodeKind::ConstructorDeclaration: return "ConstructorDeclaration";
        case NodeKind::InitializerDeclaration: return "InitializerDeclaration";
        case NodeKind::Parameter: return "Parameter";
        case NodeKind::TypeParameter: return "TypeParameter";
        case NodeKind::VariableDeclarator: return "VariableDeclarator";
        case NodeKind::PrimitiveType: return "PrimitiveType";
        case NodeKind::VoidType: return "VoidType";
        case NodeKind::VarType: return "VarType";
        case NodeKind::ClassOrInterfaceType: return "ClassOrInterfaceType";
        case NodeKind::ArrayType: return "ArrayType";
        case NodeKind::WildcardType: return "WildcardType";
        case NodeKind::UnionType: return "UnionType";
        case NodeKind::IntersectionType: return "IntersectionType";
        case NodeKind::BlockStmt: return "BlockStmt";
        case NodeKind::ExpressionStmt: return "ExpressionStmt";
        case NodeKind::IfStmt: return "IfStmt";
        case NodeKind::ForStmt: return "ForStmt";
        case NodeKind::ForEachStmt: return "ForEachStmt";
        case NodeKind::WhileStmt: return "WhileStmt";
        case NodeKind::DoStmt: return "DoStmt";
        case NodeKind::ReturnStmt: return "ReturnStmt";
        case NodeKind::BreakStmt: return "BreakStmt";
        case NodeKind::ContinueStmt: return "ContinueStmt";
        case NodeKind::ThrowStmt: return "ThrowStmt";
        case NodeKind::TryStmt: return "TryStmt";
        case NodeKind::CatchClause: return "CatchClause";
        case NodeKind::SwitchStmt: return "SwitchStmt";
        case NodeKind::SwitchEntry: return "SwitchEntry";
        case NodeKind::SynchronizedStmt: return "SynchronizedStmt";
        case NodeKind::LabeledStmt: return "LabeledStmt";
        case NodeKind::AssertStmt: return "AssertStmt";
        case NodeKind::EmptyStmt: return "EmptyStmt";
        case NodeKind::LocalClassDeclarationStmt: return "LocalClassDeclarationStmt";
        case NodeKind::ExplicitConstructorInvocationStmt: return "ExplicitConstructorInvocationStmt";
        case NodeKind::YieldStmt: return "YieldStmt";
        case NodeKind::AssignExpr: return "AssignExpr";
        case NodeKind::ConditionalExpr: return "ConditionalExpr";
        case NodeKind::BinaryExpr: return "BinaryExpr";
        case NodeKind::UnaryExpr: return "UnaryExpr";
        case NodeKind::CastExpr: return "CastExpr";
        case NodeKind::InstanceOfExpr: return "InstanceOfExpr";
        case NodeKind::LambdaExpr: return "LambdaExpr";
        case NodeKind::MethodReferenceExpr: return "MethodReferenceExpr";
        case NodeKind::MethodCallExpr: return "MethodCallExpr";
        case NodeKind::FieldAccessExpr: return "FieldAccessExpr";
        case NodeKind::ArrayAccessExpr: return "ArrayAccessExpr";
        case NodeKind::ObjectCreationExpr: return "ObjectCreationExpr";
        case NodeKind::ArrayCreationExpr: return "ArrayCreationExpr";
        case NodeKind::ArrayCreationLevel: return "ArrayCreationLevel";
        case NodeKind::ArrayInitializerExpr: return "ArrayInitializerExpr";
        case NodeKind::EnclosedExpr: return "EnclosedExpr";
        case NodeKind::NameExpr: return "NameExpr";
        case NodeKind::ThisExpr: return "ThisExpr";
        case NodeKind::SuperExpr: return "SuperExpr";
        case NodeKind::ClassExpr: return "ClassExpr";
        case NodeKind::SwitchExpr: return "SwitchExpr";
        case NodeKind::VariableDeclarationExpr: return "VariableDeclarationExpr";
        case NodeKind::IntegerLiteralExpr: return "IntegerLiteralExpr";
        case NodeKind::LongLiteralExpr: return "LongLiteralExpr";
        case NodeKind::DoubleLiteralExpr: return "DoubleLiteralExpr";
        case NodeKind::CharLiteralExpr: return "CharLiteralExpr";
        case NodeKind::StringLiteralExpr: return "StringLiteralExpr";
        case NodeKind::TextBlockLiteralExpr: return "TextBlockLiteralExpr";
        case NodeKind::BooleanLiteralExpr: return "BooleanLiteralExpr";
        case NodeKind::NullLiteralExpr: return "NullLiteralExpr";
        case NodeKind::SimpleName: return "SimpleName";
        case NodeKind::Keyword: return "Keyword";
        case NodeKind::Modifier: return "Modifier";
        case NodeKind::Punctuation: return "Punctuation";
    }
    return "?";
}

const std::vector<NodeKind>& all_node_kinds() {
    static const std::vector<NodeKind> kinds = {
        NodeKind::CompilationUnit,
        NodeKind::PackageDeclaration,
        NodeKind::ImportDeclaration,
        NodeKind::ClassOrInterfaceDeclaration,
        NodeKind::EnumDeclaration,
        NodeKind::EnumConstantDeclaration,
        NodeKind::RecordDeclaration,
        NodeKind::AnnotationDeclaration,
        NodeKind::AnnotationMemberDeclaration,
        NodeKind::FieldDeclaration,
        NodeKind::MethodDeclaration,
        NodeKind::ConstructorDeclaration,
        NodeKind::InitializerDeclaration,
        NodeKind::Parameter,
        NodeKind::TypeParameter,
        NodeKind::VariableDeclarator,
        NodeKind::PrimitiveType,
        NodeKind::VoidType,
        NodeKind::VarType,
        NodeKind::ClassOrInterfaceType,
        NodeKind::ArrayType,
        NodeKind::WildcardType,
        NodeKind::UnionType,
        NodeKind::IntersectionType,
        NodeKind::BlockStmt,
        NodeKind::ExpressionStmt,
        NodeKind::IfStmt,
        NodeKind::ForStmt,
        NodeKind::ForEachStmt,
        NodeKind::WhileStmt,
        NodeKind::DoStmt,
        NodeKind::ReturnStmt,
        NodeKind::BreakStmt,
        NodeKind::ContinueStmt,
        NodeKind::ThrowStmt,
        NodeKind::TryStmt,
        NodeKind::CatchClause,
        NodeKind::SwitchStmt,
        NodeKind::SwitchEntry,
        NodeKind::SynchronizedStmt,
        NodeKind::LabeledStmt,
        NodeKind::AssertStmt,
        NodeKind::EmptyStmt,
        NodeKind::LocalClassDeclarationStmt,
        NodeKind::ExplicitConstructorInvocationStmt,
        NodeKind::YieldStmt,
        NodeKind::AssignExpr,
        NodeKind::ConditionalExpr,
        NodeKind::BinaryExpr,
        NodeKind::UnaryExpr,
        NodeKind::CastExpr,
        NodeKind::InstanceOfExpr,
        NodeKind::LambdaExpr,
        NodeKind::MethodReferenceExpr,
        NodeKind::MethodCallExpr,
        NodeKind::FieldAccessExpr,
        NodeKind::ArrayAccessExpr,
        NodeKind::ObjectCreationExpr,
        NodeKind::ArrayCreationExpr,
        NodeKind::ArrayCreationLevel,
        NodeKind::ArrayInitializerExpr,
        NodeKind::EnclosedExpr,
        NodeKind::NameExpr,
        NodeKind::ThisExpr,
        NodeKind::SuperExpr,
        NodeKind::ClassExpr,
        NodeKind::SwitchExpr,
        NodeKind::VariableDeclarationExpr,
        NodeKind::IntegerLiteralExpr,
        NodeKind::LongLiteralExpr,
        NodeKind::DoubleLiteralExpr,
        NodeKind::CharLiteralExpr,
        NodeKind::StringLiteralExpr,
        NodeKind::TextBlockLiteralExpr,
        NodeKind::BooleanLiteralExpr,
        NodeKind::NullLiteralExpr,
        NodeKind::SimpleName,
        NodeKind::Keyword,
        NodeKind::Modifier,
        NodeKind::Punctuation,
    };
    return kinds;
}

std::string AstNode::label() const {
    std::string s(kind_name(kind));
    if (!op.empty()) {
        s += ':';
        s += op;
    }
    return s;
}

bool AstNode::same_shape(const AstNode& other) const {
    if (kind != other.kind || op != other.op || token != other.token ||
        children.size() != other.children.size())
        return false;
    for (std::size_t i = 0; i < children.size(); ++i)
        if (!children[i].same_shape(other.children[i])) return false;
    return true;
}

bool is_syntax(const AstNode& node) {
    return node.kind == NodeKind::Keyword || node.kind == NodeKind::Modifier ||
           node.kind == NodeKind::Punctuation;
}

bool is_value_terminal(const AstNode& node) {
    return node.is_leaf() && !is_syntax(node);
}

}  // namespace obo
