#include "obo/mutation.hpp"

#include <cstdio>
#include <stdexcept>

namespace obo {

namespace {

constexpr std::array<std::string_view, 4> kCmpNames = {"less", "lessEquals", "greater", "greaterEquals"};
constexpr std::array<std::string_view, 4> kCmpSymbols = {"<", "<=", ">", ">="};
constexpr std::array<std::string_view, 12> kStmtNames = {
    "IF",     "FOR",    "WHILE",  "DO",         "RETURN",     "TERNARY",
    "METHOD", "ASSERT", "VARIABLEDECLARATOR", "ASSIGN", "EXPRESSION", "OBJECTCREATION",
};

bool is_comparator_node(const AstNode& n) {
    return n.kind == NodeKind::BinaryExpr && comparator_from_name(n.op).has_value();
}

bool is_transparent(const AstNode& n) {
    switch (n.kind) {
        case NodeKind::EnclosedExpr:
            return true;
        case NodeKind::BinaryExpr:
            return n.op == "and" || n.op == "or" || n.op == "binAnd" || n.op == "binOr" || n.op == "xor";
        case NodeKind::UnaryExpr:
            return n.op == "not";
        default:
            return false;
    }
}

StatementKind kind_of_ancestor(const AstNode& n) {
    switch (n.kind) {
        case NodeKind::ForStmt: return StatementKind::For;
        case NodeKind::IfStmt: return StatementKind::If;
        case NodeKind::WhileStmt: return StatementKind::While;
        case NodeKind::DoStmt: return StatementKind::Do;
        case NodeKind::ReturnStmt: return StatementKind::Return;
        case NodeKind::ConditionalExpr: return StatementKind::Ternary;
        case NodeKind::MethodCallExpr: return StatementKind::Method;
        case NodeKind::AssertStmt: return StatementKind::Assert;
        case NodeKind::VariableDeclarator: return StatementKind::VariableDeclarator;
        case NodeKind::AssignExpr: return StatementKind::Assign;
        case NodeKind::ObjectCreationExpr: return StatementKind::ObjectCreation;
        default: return StatementKind::Expression;
    }
}

void collect_sites(const AstNode& n, std::vector<std::size_t>& path, std::vector<ComparatorSite>& out) {
    if (is_comparator_node(n)) {
        ComparatorSite s;
        s.node_path = path;
        s.comparator = *comparator_from_name(n.op);
        s.span = n.children.at(1).span;
        out.push_back(std::move(s));
    }
    for (std::size_t i = 0; i < n.children.size(); ++i) {
        path.push_back(i);
        collect_sites(n.children[i], path, out);
        path.pop_back();
    }
}

}  // namespace

std::string_view comparator_name(Comparator c) { return kCmpNames[static_cast<std::size_t>(c)]; }
std::string_view comparator_symbol(Comparator c) { return kCmpSymbols[static_cast<std::size_t>(c)]; }

std::optional<Comparator> comparator_from_name(std::string_view name) {
    for (std::size_t i = 0; i < kCmpNames.size(); ++i)
        if (kCmpNames[i] == name) return static_cast<Comparator>(i);
    return std::nullopt;
}

std::string_view statement_name(StatementKind k) { return kStmtNames[static_cast<std::size_t>(k)]; }

std::optional<StatementKind> statement_from_name(std::string_view name) {
    for (std::size_t i = 0; i < kStmtNames.size(); ++i)
        if (kStmtNames[i] == name) return static_cast<StatementKind>(i);
    return std::nullopt;
}

std::string ContextType::str() const {
    std::string s(statement_name(statement));
    s += comparator_name(comparator);
    return s;
}

std::optional<ContextType> ContextType::parse(std::string_view s) {
    // Statement names are upper case, comparator names start lower case.
    std::size_t split = 0;
    while (split < s.size() && s[split] >= 'A' && s[split] <= 'Z') ++split;
    auto st = statement_from_name(s.substr(0, split));
    auto cmp = comparator_from_name(s.substr(split));
    if (!st || !cmp) return std::nullopt;
    return ContextType{*st, *cmp};
}

const std::vector<ContextType>& all_context_types() {
    static const std::vector<ContextType> all = [] {
        std::vector<ContextType> v;
        for (StatementKind s : kStatementKinds)
            for (Comparator c : kComparators) v.push_back({s, c});
        return v;
    }();
    return all;
}

const AstNode& node_at(const AstNode& root, const std::vector<std::size_t>& path) {
    const AstNode* n = &root;
    for (std::size_t i : path) n = &n->children.at(i);
    return *n;
}

StatementKind classify_statement(const AstNode& root, const std::vector<std::size_t>& node_path) {
    if (!is_comparator_node(node_at(root, node_path)))
        throw std::invalid_argument("classify_statement: node is not a comparator");
    std::vector<const AstNode*> chain{&root};
    for (std::size_t i : node_path) chain.push_back(&chain.back()->children.at(i));
    // chain.back() is the comparator; walk its ancestors from the nearest outwards
    for (std::size_t k = chain.size() - 1; k-- > 0;) {
        if (is_transparent(*chain[k])) continue;
        return kind_of_ancestor(*chain[k]);
    }
    return StatementKind::Expression;
}

StatementKind classify_statement(const MethodUnit& method, const ComparatorSite& site) {
    return classify_statement(method.root, site.node_path);
}

std::vector<ComparatorSite> find_comparator_sites(const MethodUnit& method) {
    std::vector<ComparatorSite> sites;
    std::vector<std::size_t> path;
    collect_sites(method.root, path, sites);
    for (ComparatorSite& s : sites) s.statement = classify_statement(method.root, s.node_path);
    return sites;
}

std::string splice_comparator(std::string_view source, const ComparatorSite& site, Comparator to) {
    if (site.span.end > source.size() || source.substr(site.span.begin, site.span.size()) !=
                                             comparator_symbol(site.comparator))
        throw std::invalid_argument("splice_comparator: site does not match source");
    std::string out;
    out.reserve(source.size() + 1);
    out.append(source.substr(0, site.span.begin));
    out.append(comparator_symbol(to));
    out.append(source.substr(site.span.end));
    return out;
}

std::vector<ComparatorSite> candidate_sites(const MethodUnit& method, const MutateOptions& opts) {
    std::vector<ComparatorSite> sites = find_comparator_sites(method);
    if (opts.only_statement) {
        std::erase_if(sites, [&](const ComparatorSite& s) { return s.statement != *opts.only_statement; });
    }
    return sites;
}

std::pair<LabeledMethod, LabeledMethod> mutate_at(const MethodUnit& method, const std::string& id,
                                                  const ComparatorSite& site) {
    LabeledMethod orig;
    orig.id = id;
    orig.source = method.source;
    orig.label = 0;
    orig.context = {site.statement, site.comparator};
    orig.origin = Origin::Original;

    const Comparator to = flip(site.comparator);
    LabeledMethod mut;
    mut.id = id;
    mut.source = splice_comparator(method.source, site, to);
    mut.label = 1;
    mut.context = {site.statement, to};
    mut.origin = Origin::Mutated;
    mut.mutated_from = site.comparator;
    return {std::move(orig), std::move(mut)};
}

std::optional<std::pair<LabeledMethod, LabeledMethod>> mutate_method(const MethodUnit& method,
                                                                     const std::string& id, Rng& rng,
                                                                     const MutateOptions& opts) {
    std::vector<ComparatorSite> sites = candidate_sites(method, opts);
    if (sites.empty()) return std::nullopt;
    const auto pick = static_cast<std::size_t>(rng.below(sites.size()));
    return mutate_at(method, id, sites[pick]);
}

Rng method_rng(std::uint64_t seed, std::string_view id) {
    return Rng(derive_seed(derive_seed(seed, "mutate"), id));
}

Distribution corpus_distribution(const std::vector<LabeledMethod>& labeled) {
    Distribution d;
    for (const LabeledMethod& m : labeled) {
        if (m.label != 0) continue;
        ++d.by_comparator[m.context.comparator];
        ++d.by_statement[m.context.statement];
        ++d.total;
    }
    return d;
}

std::string render_distribution(const Distribution& d) {
    auto pct = [&](std::size_t n) {
        char buf[32];
        std::snprintf(buf, sizeof buf, "%.2f", d.total ? 100.0 * static_cast<double>(n) / static_cast<double>(d.total) : 0.0);
        return std::string(buf);
    };
    std::string out = "comparator\tcount\tpercent\n";
    for (Comparator c : kComparators) {
        auto it = d.by_comparator.find(c);
        std::size_t n = it == d.by_comparator.end() ? 0 : it->second;
        out += std::string(comparator_name(c)) + '\t' + std::to_string(n) + '\t' + pct(n) + '\n';
    }
    out += "\nstatement\tcount\tpercent\n";
    for (StatementKind s : kStatementKinds) {
        auto it = d.by_statement.find(s);
        std::size_t n = it == d.by_statement.end() ? 0 : it->second;
        out += std::string(statement_name(s)) + '\t' + std::to_string(n) + '\t' + pct(n) + '\n';
    }
    out += "\ntotal\t" + std::to_string(d.total) + '\n';
    return out;
}

}  // namespace obo
