#pragma once

#include "obo/java_ast.hpp"
#include "obo/rng.hpp"

#include <array>
#include <compare>
#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace obo {

enum class Comparator : std::uint8_t { Less, LessEquals, Greater, GreaterEquals };

inline constexpr std::array<Comparator, 4> kComparators = {
    Comparator::Less, Comparator::LessEquals, Comparator::Greater, Comparator::GreaterEquals};

/// "less", "lessEquals", "greater", "greaterEquals" (BinaryExpr op names).
std::string_view comparator_name(Comparator c);
/// "<", "<=", ">", ">=".
std::string_view comparator_symbol(Comparator c);
std::optional<Comparator> comparator_from_name(std::string_view name);

/// The off-by-one partner: < <-> <=, > <-> >=.
constexpr Comparator flip(Comparator c) {
    switch (c) {
        case Comparator::Less: return Comparator::LessEquals;
        case Comparator::LessEquals: return Comparator::Less;
        case Comparator::Greater: return Comparator::GreaterEquals;
        case Comparator::GreaterEquals: return Comparator::Greater;
    }
    return c;
}

enum class StatementKind : std::uint8_t {
    If,
    For,
    While,
    Do,
    Return,
    Ternary,
    Method,
    Assert,
    VariableDeclarator,
    Assign,
    Expression,
    ObjectCreation,
};

inline constexpr std::array<StatementKind, 12> kStatementKinds = {
    StatementKind::If,      StatementKind::For,    StatementKind::While,
    StatementKind::Do,      StatementKind::Return, StatementKind::Ternary,
    StatementKind::Method,  StatementKind::Assert, StatementKind::VariableDeclarator,
    StatementKind::Assign,  StatementKind::Expression, StatementKind::ObjectCreation,
};

/// Upper-case label: "IF", "FOR", ..., "VARIABLEDECLARATOR", "OBJECTCREATION".
std::string_view statement_name(StatementKind k);
std::optional<StatementKind> statement_from_name(std::string_view name);

struct ContextType {
    StatementKind statement = StatementKind::Expression;
    Comparator comparator = Comparator::Less;

    /// Concatenated label, e.g. "FORlessEquals".
    std::string str() const;
    static std::optional<ContextType> parse(std::string_view s);

    auto operator<=>(const ContextType&) const = default;
};

/// All 48 statement x comparator combinations.
const std::vector<ContextType>& all_context_types();

struct ComparatorSite {
    std::vector<std::size_t> node_path;  ///< child indices from the method root to the BinaryExpr
    Comparator comparator = Comparator::Less;
    StatementKind statement = StatementKind::Expression;
    Span span;  ///< the operator lexeme, relative to the method source
};

enum class Origin : std::uint8_t { Original, Mutated };

struct LabeledMethod {
    std::string id;
    std::string source;
    int label = 0;  ///< 1 = mutated (likely buggy)
    ContextType context;
    Origin origin = Origin::Original;
    std::optional<Comparator> mutated_from;

    bool operator==(const LabeledMethod&) const = default;
};

/// Node addressed by a child-index path. Throws std::out_of_range.
const AstNode& node_at(const AstNode& root, const std::vector<std::size_t>& path);

/// Every <, <=, >, >= BinaryExpr in source order.
std::vector<ComparatorSite> find_comparator_sites(const MethodUnit& method);

/// Statement kind of the comparator at `node_path`. Parentheses, boolean
/// connectives (&&, ||, &, |, ^) and `!` between the comparator and its
/// classifying ancestor are looked through; the first other ancestor decides.
StatementKind classify_statement(const AstNode& root, const std::vector<std::size_t>& node_path);
StatementKind classify_statement(const MethodUnit& method, const ComparatorSite& site);

/// Source with the operator at `site` replaced by `to`. All other bytes are kept.
std::string splice_comparator(std::string_view source, const ComparatorSite& site, Comparator to);

struct MutateOptions {
    /// When set, only sites of this statement kind are candidates.
    std::optional<StatementKind> only_statement;
};

/// Sites eligible for mutation under `opts`, in source order.
std::vector<ComparatorSite> candidate_sites(const MethodUnit& method, const MutateOptions& opts = {});

/// Original/mutated pair for one chosen site.
std::pair<LabeledMethod, LabeledMethod> mutate_at(const MethodUnit& method, const std::string& id,
                                                  const ComparatorSite& site);

/// Picks one candidate uniformly with `rng`; nullopt when the method has none.
std::optional<std::pair<LabeledMethod, LabeledMethod>> mutate_method(const MethodUnit& method,
                                                                     const std::string& id, Rng& rng,
                                                                     const MutateOptions& opts = {});

/// Per-method stream: derive_seed(derive_seed(seed, "mutate"), id).
Rng method_rng(std::uint64_t seed, std::string_view id);

struct Distribution {
    std::map<Comparator, std::size_t> by_comparator;
    std::map<StatementKind, std::size_t> by_statement;
    std::size_t total = 0;
};

/// Counts over original (label 0) records only.
Distribution corpus_distribution(const std::vector<LabeledMethod>& labeled);

/// Two TSV tables (comparator, statement) with counts and percentages.
std::string render_distribution(const Distribution& d);

}  // namespace obo
