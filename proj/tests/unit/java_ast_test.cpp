#include "obo/java_ast.hpp"

#include <gtest/gtest.h>

#include <set>

namespace {

using obo::AstNode;
using obo::NodeKind;

constexpr const char* kListing1 = R"(public class Buffer {
    private char[] contents;

    public void setContents(char[] contentsAfter) {
        for (int i = 0; i < contentsAfter.length; i++) {
            if (contents[i] != contentsAfter[i]) {
                contents[i] = contentsAfter[i];
            }
        }
    }
}
)";

int count_kind(const AstNode& n, NodeKind k, const std::string& op = {}) {
    int c = (n.kind == k && (op.empty() || n.op == op)) ? 1 : 0;
    for (const AstNode& ch : n.children) c += count_kind(ch, k, op);
    return c;
}

void check_invariants(const AstNode& n) {
    EXPECT_EQ(n.is_leaf(), !n.token.empty()) << n.label();
    std::size_t prev_end = n.span.begin;
    for (const AstNode& c : n.children) {
        EXPECT_TRUE(n.span.contains(c.span)) << n.label() << " / " << c.label();
        EXPECT_LE(prev_end, c.span.begin);
        prev_end = c.span.end;
        check_invariants(c);
    }
}

TEST(JavaAst, MinimalMethod) {
    auto units = obo::parse_file("class C { void f() {} }", "C.java");
    ASSERT_EQ(units.size(), 1u);
    EXPECT_EQ(units[0].method_name, "f");
    EXPECT_EQ(units[0].source, "void f() {}");
    EXPECT_EQ(units[0].root.kind, NodeKind::MethodDeclaration);
    EXPECT_EQ(units[0].root.span, (obo::Span{0, units[0].source.size()}));

    std::vector<std::string> toks;
    for (const AstNode* t : obo::terminals_in_order(units[0].root)) toks.push_back(t->token);
    EXPECT_EQ(toks, (std::vector<std::string>{"void", "f", "(", ")", "{", "}"}));

    std::vector<std::string> values;
    for (const AstNode* t : obo::value_terminals(units[0].root)) values.push_back(t->token);
    EXPECT_EQ(values, (std::vector<std::string>{"void", "f"}));
}

TEST(JavaAst, ListingOneShape) {
    auto units = obo::parse_file(kListing1, "Buffer.java");
    ASSERT_EQ(units.size(), 1u);
    const AstNode& r = units[0].root;
    EXPECT_EQ(units[0].method_name, "setContents");
    EXPECT_EQ(units[0].line, 4u);
    EXPECT_EQ(count_kind(r, NodeKind::ForStmt), 1);
    EXPECT_EQ(count_kind(r, NodeKind::IfStmt), 1);
    EXPECT_EQ(count_kind(r, NodeKind::BinaryExpr, "less"), 1);
    EXPECT_EQ(count_kind(r, NodeKind::BinaryExpr, "notEquals"), 1);
    check_invariants(r);
}

TEST(JavaAst, MalformedInputThrows) {
    EXPECT_THROW(obo::parse_file("class C { void f( {} }", "C.java"), obo::ParseError);
    try {
        obo::parse_file("class C { void f( {} }", "Bad.java");
    } catch (const obo::ParseError& e) {
        EXPECT_EQ(e.file_path(), "Bad.java");
        EXPECT_GT(e.position(), 0u);
    }
}

TEST(JavaAst, TerminalsSingleLeafAndPair) {
    AstNode leaf;
    leaf.kind = NodeKind::NameExpr;
    leaf.token = "x";
    auto t = obo::terminals_in_order(leaf);
    ASSERT_EQ(t.size(), 1u);
    EXPECT_EQ(t[0], &leaf);

    AstNode a = leaf, b = leaf;
    b.token = "y";
    AstNode parent;
    parent.kind = NodeKind::BinaryExpr;
    parent.children = {a, b};
    auto t2 = obo::terminals_in_order(parent);
    ASSERT_EQ(t2.size(), 2u);
    EXPECT_EQ(t2[0]->token, "x");
    EXPECT_EQ(t2[1]->token, "y");
}

TEST(JavaAst, NestedAnonymousAndInterfaceMethods) {
    const char* src = R"(
interface I { int g(); default int h() { return 1; } }
class Outer {
    Outer() { }
    static class Inner { void a() { Runnable r = new Runnable() { public void run() { } }; } }
    abstract void abs();
    void b() { class Local { void c() {} } }
}
)";
    auto units = obo::parse_file(src, "O.java");
    std::vector<std::string> names;
    for (const auto& u : units) names.push_back(u.method_name);
    EXPECT_EQ(names, (std::vector<std::string>{"h", "a", "run", "b", "c"}));
}

TEST(JavaAst, ShiftAndGenericsDisambiguation) {
    const char* src = R"(class C {
    java.util.Map<String, java.util.List<Integer>> m;
    int f(int a, int b) {
        int x = a >> 2; int y = a >>> b; x >>= 1; y >>>= 2;
        boolean p = a >= b, q = a > b, r = a < b, s = a <= b;
        java.util.List<java.util.List<String>> l = new java.util.ArrayList<>();
        return (int) x + (y << 1);
    }
})";
    auto units = obo::parse_file(src, "C.java");
    ASSERT_EQ(units.size(), 1u);
    const AstNode& r = units[0].root;
    EXPECT_EQ(count_kind(r, NodeKind::BinaryExpr, "rSignedShift"), 1);
    EXPECT_EQ(count_kind(r, NodeKind::BinaryExpr, "rUnsignedShift"), 1);
    EXPECT_EQ(count_kind(r, NodeKind::AssignExpr, "rSignedShift"), 1);
    EXPECT_EQ(count_kind(r, NodeKind::AssignExpr, "rUnsignedShift"), 1);
    EXPECT_EQ(count_kind(r, NodeKind::BinaryExpr, "greaterEquals"), 1);
    EXPECT_EQ(count_kind(r, NodeKind::BinaryExpr, "greater"), 1);
    EXPECT_EQ(count_kind(r, NodeKind::BinaryExpr, "less"), 1);
    EXPECT_EQ(count_kind(r, NodeKind::BinaryExpr, "lessEquals"), 1);
    EXPECT_EQ(count_kind(r, NodeKind::CastExpr), 1);
    check_invariants(r);
}

TEST(JavaAst, ModernSyntax) {
    const char* src = R"(class C {
    int f(Object o, java.util.List<String> xs) throws Exception {
        var n = switch (xs.size()) { case 0, 1 -> 1; default -> { yield 2; } };
        xs.forEach(s -> System.out.println(s));
        java.util.function.BiFunction<Integer, Integer, Integer> add = (a, b) -> a + b;
        Runnable r = () -> { if (n < 3) return; };
        try (var in = new java.io.StringReader("x"); var in2 = in) {
            in.read();
        } catch (java.io.IOException | RuntimeException e) {
            throw e;
        } finally { }
        outer:
        for (String s : xs) { for (;;) { break outer; } }
        if (o instanceof String str && str.length() > 2) return str.length();
        int[][] grid = new int[3][];
        int[] init = {1, 2, 3};
        String t = """
            text "block"
            """;
        char c = '\'';
        long l = 0xFFL + 0b101 + 1_000L;
        double d = 1e-3 + .5 + 1.f;
        assert n >= 0 : "negative";
        java.util.function.Function<String, Integer> len = String::length;
        Object[] arr = xs.toArray(String[]::new);
        Class<?> k = int[].class;
        do { n--; } while (n > 0);
        synchronized (this) { n = this.<Integer>id(n); }
        return n > 0 ? n : -n;
    }
    <T> T id(T t) { return t; }
    record P(int x, int y) { P { assert x >= 0; } int sum() { return x + y; } }
    enum E { A(1), B(2) { int v() { return 3; } }; final int k; E(int k) { this.k = k; } int v() { return k; } }
})";
    auto units = obo::parse_file(src, "C.java");
    std::vector<std::string> names;
    for (const auto& u : units) names.push_back(u.method_name);
    EXPECT_EQ(names, (std::vector<std::string>{"f", "id", "sum", "v", "v"}));
    for (const auto& u : units) check_invariants(u.root);
}

TEST(JavaAst, ReparseMethodSourceYieldsSameTree) {
    auto units = obo::parse_file(kListing1, "Buffer.java");
    ASSERT_EQ(units.size(), 1u);
    obo::MethodUnit again = obo::parse_method(units[0].source);
    EXPECT_TRUE(again.root.same_shape(units[0].root));
    EXPECT_EQ(again.root, units[0].root);  // spans are method-relative, so even spans agree
    EXPECT_EQ(again.method_name, "setContents");
}

TEST(JavaAst, DeterministicParse) {
    auto a = obo::parse_compilation_unit(kListing1);
    auto b = obo::parse_compilation_unit(kListing1);
    EXPECT_EQ(a, b);
    EXPECT_EQ(obo::dump_tree(a), obo::dump_tree(b));
}

TEST(JavaAst, KindNamesAreUnique) {
    std::set<std::string_view> seen;
    for (NodeKind k : obo::all_node_kinds()) EXPECT_TRUE(seen.insert(obo::kind_name(k)).second);
    EXPECT_EQ(obo::kind_name(NodeKind::ForStmt), "ForStmt");
}

}  // namespace
