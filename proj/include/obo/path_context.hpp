#pragma once

#include "obo/java_ast.hpp"
#include "obo/mutation.hpp"

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <map>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace obo {

/// Thrown when a method yields no path-context within the limits.
class EmptyRepresentation : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Token for a value leaf. Identifiers and type names are split at
/// camelCase / snake_case / dot boundaries, lowercased and joined with '|';
/// numeric and char literals keep their text; string literals become "STR".
std::string normalize_terminal(std::string_view raw_lexeme);
std::string normalize_terminal(const AstNode& leaf);

/// Java String.hashCode of the UTF-16 encoding of a UTF-8 string.
/// Invalid UTF-8 bytes are replaced by U+FFFD, as Java's decoder does.
std::int32_t java_string_hash(std::string_view utf8);

struct PathLimits {
    int max_length = 8;  ///< nodes on the path, both leaves included
    int max_width = 2;   ///< child-index distance below the top node
};

/// One path between value terminals `source` < `target`, indices into
/// value_terminals(root). `path` is e.g. "NameExpr^BinaryExpr:less_IntegerLiteralExpr".
struct PathContext {
    std::size_t source = 0;
    std::size_t target = 0;
    std::string path;

    bool operator==(const PathContext&) const = default;
};

/// All terminal pairs whose path satisfies `limits`, sorted by (source, target).
/// Throws EmptyRepresentation when none does.
std::vector<PathContext> extract_paths(const AstNode& root, const PathLimits& limits = {});
std::vector<PathContext> extract_paths(const MethodUnit& method, const PathLimits& limits = {});

/// A method reduced to what the vocabulary and encoder need.
struct ExtractedMethod {
    std::vector<std::string> tokens;  ///< normalized value terminals
    struct Context {
        std::size_t source, target;
        std::int32_t path_hash;
    };
    std::vector<Context> contexts;
};

ExtractedMethod extract_method(const MethodUnit& method, const PathLimits& limits = {});

inline constexpr std::int32_t kPadId = 0;
inline constexpr std::int32_t kUnkId = 1;

class Vocabulary {
public:
    Vocabulary();
    Vocabulary(std::vector<std::string> tokens, std::vector<std::int32_t> path_hashes);

    std::int32_t token_id(const std::string& token) const;
    std::int32_t path_id(std::int32_t hash) const;

    /// Table sizes, PAD and UNK included.
    std::size_t token_count() const { return tokens_.size(); }
    std::size_t path_count() const { return paths_.size(); }

    const std::string& token_at(std::int32_t id) const { return tokens_.at(static_cast<std::size_t>(id)); }
    std::int32_t path_at(std::int32_t id) const { return paths_.at(static_cast<std::size_t>(id)); }

    void save(std::ostream& out) const;
    static Vocabulary load(std::istream& in);
    void save_file(const std::filesystem::path& path) const;
    static Vocabulary load_file(const std::filesystem::path& path);

    bool operator==(const Vocabulary& o) const { return tokens_ == o.tokens_ && paths_ == o.paths_; }

private:
    std::vector<std::string> tokens_;   // id -> token; [0], [1] are placeholders
    std::vector<std::int32_t> paths_;   // id -> hash
    std::unordered_map<std::string, std::int32_t> token_ids_;
    std::unordered_map<std::int32_t, std::int32_t> path_ids_;
};

/// Frequency counter over extracted methods. Every context counts its two
/// tokens and its path hash once.
class VocabularyBuilder {
public:
    void add(const ExtractedMethod& m);
    void add_token(const std::string& token, std::size_t n = 1) { tokens_[token] += n; }
    void add_path(std::int32_t hash, std::size_t n = 1) { paths_[hash] += n; }

    /// Most frequent entries up to the caps; ties broken by token text /
    /// hash value ascending. Ids are assigned in that order starting at 2.
    Vocabulary build(std::size_t max_tokens = 100000, std::size_t max_paths = 500000) const;

private:
    std::map<std::string, std::size_t> tokens_;
    std::map<std::int32_t, std::size_t> paths_;
};

struct Triple {
    std::int32_t source = 0;
    std::int32_t path = 0;
    std::int32_t target = 0;

    bool operator==(const Triple&) const = default;
};

struct EncodedExample {
    std::string id;
    int label = 0;
    ContextType context;
    std::vector<Triple> contexts;

    bool operator==(const EncodedExample&) const = default;
};

struct EncodeOptions {
    std::size_t max_contexts = 200;  ///< 0 means unlimited
    PathLimits limits;
};

/// Map an extracted method to id triples, sampling max_contexts of them
/// uniformly without replacement (original order kept) when over the cap.
std::vector<Triple> encode_contexts(const ExtractedMethod& m, const Vocabulary& vocab, std::size_t max_contexts,
                                    Rng& rng);

/// Parse, extract and encode one labeled record. The sampling stream is
/// derive_seed(derive_seed(seed, "encode"), id), so both records of a pair
/// keep the same context positions. Throws EmptyRepresentation / ParseError.
EncodedExample encode_method(const LabeledMethod& record, const Vocabulary& vocab, const EncodeOptions& opts,
                             std::uint64_t seed);

/// `id<TAB>label<TAB>context<TAB>s,p,t s,p,t ...` per line.
void write_encoded(std::ostream& out, const std::vector<EncodedExample>& examples);
std::vector<EncodedExample> read_encoded(std::istream& in);
void write_encoded_file(const std::filesystem::path& path, const std::vector<EncodedExample>& examples);
std::vector<EncodedExample> read_encoded_file(const std::filesystem::path& path);

}  // namespace obo
