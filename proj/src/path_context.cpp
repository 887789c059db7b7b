#include "obo/path_context.hpp"

#include "obo/corpus.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <numeric>
#include <sstream>

namespace obo {

// ------------------------------------------------------------ normalization

namespace {

bool is_upper(char c) { return c >= 'A' && c <= 'Z'; }
bool is_lower(char c) { return (c >= 'a' && c <= 'z') || static_cast<unsigned char>(c) >= 0x80; }
bool is_digit(char c) { return c >= '0' && c <= '9'; }
char lower(char c) { return is_upper(c) ? static_cast<char>(c - 'A' + 'a') : c; }

std::string escape_controls(std::string_view s) {
    std::string out;
    for (char c : s) {
        if (c == '\t') out += "\\t";
        else if (c == '\n') out += "\\n";
        else if (c == '\r') out += "\\r";
        else out += c;
    }
    return out;
}

std::vector<std::string> split_identifier(std::string_view s) {
    std::vector<std::string> parts;
    std::string cur;
    auto flush = [&] {
        if (!cur.empty()) parts.push_back(std::move(cur));
        cur.clear();
    };
    for (std::size_t i = 0; i < s.size(); ++i) {
        const char c = s[i];
        if (!is_upper(c) && !is_lower(c) && !is_digit(c)) {  // _ . $ and anything else separate
            flush();
            continue;
        }
        if (is_upper(c) && !cur.empty()) {
            const char prev = s[i - 1];
            const bool next_lower = i + 1 < s.size() && is_lower(s[i + 1]);
            // fooBar | HTTPServer -> http, server | utf8Decoder
            if (is_lower(prev) || is_digit(prev) || (is_upper(prev) && next_lower)) flush();
        }
        cur += lower(c);
    }
    flush();
    return parts;
}

}  // namespace

std::string normalize_terminal(std::string_view raw) {
    if (raw.empty()) return "<empty>";
    if (raw.front() == '"') return "STR";
    if (raw.front() == '\'') return escape_controls(raw);
    if (is_digit(raw.front()) || (raw.front() == '.' && raw.size() > 1 && is_digit(raw[1]))) return std::string(raw);
    std::vector<std::string> parts = split_identifier(raw);
    if (parts.empty()) return escape_controls(raw);
    std::string out = parts[0];
    for (std::size_t i = 1; i < parts.size(); ++i) {
        out += '|';
        out += parts[i];
    }
    return out;
}

std::string normalize_terminal(const AstNode& leaf) {
    if (leaf.kind == NodeKind::StringLiteralExpr || leaf.kind == NodeKind::TextBlockLiteralExpr) return "STR";
    return normalize_terminal(leaf.token);
}

// ------------------------------------------------------------------ hashing

std::int32_t java_string_hash(std::string_view s) {
    std::uint32_t h = 0;
    auto push = [&h](std::uint32_t unit) { h = 31u * h + unit; };
    auto push_cp = [&](std::uint32_t cp) {
        if (cp >= 0x10000) {
            cp -= 0x10000;
            push(0xD800 + (cp >> 10));
            push(0xDC00 + (cp & 0x3FF));
        } else {
            push(cp);
        }
    };
    const auto* p = reinterpret_cast<const unsigned char*>(s.data());
    const std::size_t n = s.size();
    std::size_t i = 0;
    while (i < n) {
        const unsigned char b = p[i];
        if (b < 0x80) {
            push(b);
            ++i;
            continue;
        }
        int len = 0;
        std::uint32_t cp = 0;
        unsigned char lo = 0x80, hi = 0xBF;  // bounds for the second byte
        if (b >= 0xC2 && b <= 0xDF) {
            len = 2;
            cp = b & 0x1F;
        } else if (b >= 0xE0 && b <= 0xEF) {
            len = 3;
            cp = b & 0x0F;
            if (b == 0xE0) lo = 0xA0;
            if (b == 0xED) hi = 0x9F;  // no encoded surrogates
        } else if (b >= 0xF0 && b <= 0xF4) {
            len = 4;
            cp = b & 0x07;
            if (b == 0xF0) lo = 0x90;
            if (b == 0xF4) hi = 0x8F;
        } else {
            push(0xFFFD);
            ++i;
            continue;
        }
        // Consume the longest valid prefix; a broken sequence becomes one U+FFFD.
        std::size_t k = 1;
        bool ok = true;
        for (; k < static_cast<std::size_t>(len); ++k) {
            if (i + k >= n) {
                ok = false;
                break;
            }
            const unsigned char c = p[i + k];
            const unsigned char l = k == 1 ? lo : 0x80, u = k == 1 ? hi : 0xBF;
            if (c < l || c > u) {
                ok = false;
                break;
            }
            cp = (cp << 6) | (c & 0x3F);
        }
        if (ok) {
            push_cp(cp);
            i += static_cast<std::size_t>(len);
        } else {
            push(0xFFFD);
            i += k;
        }
    }
    return static_cast<std::int32_t>(h);
}

// --------------------------------------------------------------- extraction

namespace {

struct Partial {
    std::size_t terminal;
    std::string up;    // leaf^...^node
    std::string down;  // node_..._leaf
    int length;        // nodes on the partial path
};

class PathCollector {
public:
    PathCollector(const PathLimits& limits) : limits_(limits) {}

    std::vector<Partial> visit(const AstNode& n) {
        if (n.is_leaf()) {
            if (!is_value_terminal(n)) return {};
            std::string l = n.label();
            return {Partial{next_terminal_++, l, l, 1}};
        }
        const std::string label = n.label();
        std::vector<std::vector<Partial>> kids;
        for (const AstNode& c : n.children) {
            if (c.is_leaf() && is_syntax(c)) continue;  // syntax leaves have no structural index
            kids.push_back(visit(c));
        }
        for (std::size_t a = 0; a < kids.size(); ++a) {
            for (std::size_t b = a + 1; b < kids.size() && b - a <= static_cast<std::size_t>(limits_.max_width); ++b) {
                for (const Partial& s : kids[a]) {
                    for (const Partial& t : kids[b]) {
                        if (s.length + 1 + t.length > limits_.max_length) continue;
                        std::string path;
                        path.reserve(s.up.size() + label.size() + t.down.size() + 2);
                        path += s.up;
                        path += '^';
                        path += label;
                        path += '_';
                        path += t.down;
                        out_.push_back({s.terminal, t.terminal, std::move(path)});
                    }
                }
            }
        }
        // Extend upwards; anything that can no longer pair within the limit is dropped.
        std::vector<Partial> up;
        for (auto& v : kids) {
            for (Partial& p : v) {
                if (p.length + 1 > limits_.max_length - 2) continue;
                p.up += '^';
                p.up += label;
                p.down = label + '_' + p.down;
                ++p.length;
                up.push_back(std::move(p));
            }
        }
        return up;
    }

    std::vector<PathContext> take() {
        std::sort(out_.begin(), out_.end(), [](const PathContext& x, const PathContext& y) {
            return x.source != y.source ? x.source < y.source : x.target < y.target;
        });
        return std::move(out_);
    }

private:
    PathLimits limits_;
    std::size_t next_terminal_ = 0;
    std::vector<PathContext> out_;
};

}  // namespace

std::vector<PathContext> extract_paths(const AstNode& root, const PathLimits& limits) {
    PathCollector collector(limits);
    collector.visit(root);
    std::vector<PathContext> out = collector.take();
    if (out.empty()) throw EmptyRepresentation("no path-context within limits");
    return out;
}

std::vector<PathContext> extract_paths(const MethodUnit& method, const PathLimits& limits) {
    return extract_paths(method.root, limits);
}

ExtractedMethod extract_method(const MethodUnit& method, const PathLimits& limits) {
    ExtractedMethod m;
    for (const AstNode* t : value_terminals(method.root)) m.tokens.push_back(normalize_terminal(*t));
    for (const PathContext& p : extract_paths(method.root, limits))
        m.contexts.push_back({p.source, p.target, java_string_hash(p.path)});
    return m;
}

// --------------------------------------------------------------- vocabulary

Vocabulary::Vocabulary() : Vocabulary({}, {}) {}

Vocabulary::Vocabulary(std::vector<std::string> tokens, std::vector<std::int32_t> path_hashes) {
    tokens_ = {"<PAD>", "<UNK>"};
    paths_ = {0, 0};
    for (std::string& t : tokens) {
        if (!token_ids_.emplace(t, static_cast<std::int32_t>(tokens_.size())).second)
            throw FormatError("duplicate token in vocabulary: " + t);
        tokens_.push_back(std::move(t));
    }
    for (std::int32_t h : path_hashes) {
        if (!path_ids_.emplace(h, static_cast<std::int32_t>(paths_.size())).second)
            throw FormatError("duplicate path hash in vocabulary: " + std::to_string(h));
        paths_.push_back(h);
    }
}

std::int32_t Vocabulary::token_id(const std::string& token) const {
    auto it = token_ids_.find(token);
    return it == token_ids_.end() ? kUnkId : it->second;
}

std::int32_t Vocabulary::path_id(std::int32_t hash) const {
    auto it = path_ids_.find(hash);
    return it == path_ids_.end() ? kUnkId : it->second;
}

void Vocabulary::save(std::ostream& out) const {
    out << "token-vocab " << tokens_.size() << '\n';
    for (std::size_t i = 2; i < tokens_.size(); ++i) out << i << '\t' << tokens_[i] << '\n';
    out << "path-vocab " << paths_.size() << '\n';
    for (std::size_t i = 2; i < paths_.size(); ++i) out << i << '\t' << paths_[i] << '\n';
}

namespace {

template <typename T>
T parse_int(std::string_view s, const char* what) {
    T v{};
    auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || p != s.data() + s.size()) throw FormatError(std::string("bad ") + what + ": '" + std::string(s) + "'");
    return v;
}

std::size_t read_header(std::istream& in, const std::string& name) {
    std::string line;
    if (!std::getline(in, line) || line.rfind(name + " ", 0) != 0) throw FormatError("expected '" + name + "' header");
    return parse_int<std::size_t>(std::string_view(line).substr(name.size() + 1), "vocabulary size");
}

}  // namespace

Vocabulary Vocabulary::load(std::istream& in) {
    std::string line;
    const std::size_t nt = read_header(in, "token-vocab");
    if (nt < 2) throw FormatError("token vocabulary smaller than 2");
    std::vector<std::string> tokens;
    for (std::size_t i = 2; i < nt; ++i) {
        if (!std::getline(in, line)) throw FormatError("truncated token vocabulary");
        const std::size_t tab = line.find('\t');
        if (tab == std::string::npos || parse_int<std::size_t>(std::string_view(line).substr(0, tab), "token id") != i)
            throw FormatError("token ids must be consecutive from 2");
        tokens.push_back(line.substr(tab + 1));
    }
    const std::size_t np = read_header(in, "path-vocab");
    if (np < 2) throw FormatError("path vocabulary smaller than 2");
    std::vector<std::int32_t> paths;
    for (std::size_t i = 2; i < np; ++i) {
        if (!std::getline(in, line)) throw FormatError("truncated path vocabulary");
        const std::size_t tab = line.find('\t');
        if (tab == std::string::npos || parse_int<std::size_t>(std::string_view(line).substr(0, tab), "path id") != i)
            throw FormatError("path ids must be consecutive from 2");
        paths.push_back(parse_int<std::int32_t>(std::string_view(line).substr(tab + 1), "path hash"));
    }
    return Vocabulary(std::move(tokens), std::move(paths));
}

void Vocabulary::save_file(const std::filesystem::path& path) const {
    std::ostringstream ss;
    save(ss);
    write_text_file(path, ss.str());
}

Vocabulary Vocabulary::load_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open " + path.string());
    return load(in);
}

void VocabularyBuilder::add(const ExtractedMethod& m) {
    for (const auto& c : m.contexts) {
        ++tokens_[m.tokens[c.source]];
        ++tokens_[m.tokens[c.target]];
        ++paths_[c.path_hash];
    }
}

namespace {

template <typename K>
std::vector<K> top_k(const std::map<K, std::size_t>& counts, std::size_t cap) {
    std::vector<std::pair<K, std::size_t>> v(counts.begin(), counts.end());  // key order = tie order
    std::stable_sort(v.begin(), v.end(), [](const auto& a, const auto& b) { return a.second > b.second; });
    if (v.size() > cap) v.resize(cap);
    std::vector<K> out;
    out.reserve(v.size());
    for (auto& [k, n] : v) out.push_back(k);
    return out;
}

}  // namespace

Vocabulary VocabularyBuilder::build(std::size_t max_tokens, std::size_t max_paths) const {
    return Vocabulary(top_k(tokens_, max_tokens), top_k(paths_, max_paths));
}

// ----------------------------------------------------------------- encoding

std::vector<Triple> encode_contexts(const ExtractedMethod& m, const Vocabulary& vocab, std::size_t max_contexts,
                                    Rng& rng) {
    std::vector<std::size_t> keep(m.contexts.size());
    std::iota(keep.begin(), keep.end(), std::size_t{0});
    if (max_contexts != 0 && keep.size() > max_contexts) {
        // partial Fisher-Yates: the first max_contexts slots are a uniform sample
        for (std::size_t i = 0; i < max_contexts; ++i) {
            const std::size_t j = i + static_cast<std::size_t>(rng.below(keep.size() - i));
            std::swap(keep[i], keep[j]);
        }
        keep.resize(max_contexts);
        std::sort(keep.begin(), keep.end());
    }
    std::vector<Triple> out;
    out.reserve(keep.size());
    for (std::size_t k : keep) {
        const auto& c = m.contexts[k];
        out.push_back({vocab.token_id(m.tokens[c.source]), vocab.path_id(c.path_hash), vocab.token_id(m.tokens[c.target])});
    }
    return out;
}

EncodedExample encode_method(const LabeledMethod& record, const Vocabulary& vocab, const EncodeOptions& opts,
                             std::uint64_t seed) {
    MethodUnit unit = parse_method(record.source, record.id);
    ExtractedMethod m = extract_method(unit, opts.limits);
    Rng rng(derive_seed(derive_seed(seed, "encode"), record.id));
    EncodedExample e;
    e.id = record.id;
    e.label = record.label;
    e.context = record.context;
    e.contexts = encode_contexts(m, vocab, opts.max_contexts, rng);
    return e;
}

void write_encoded(std::ostream& out, const std::vector<EncodedExample>& examples) {
    std::string line;
    for (const EncodedExample& e : examples) {
        line = e.id;
        line += '\t';
        line += std::to_string(e.label);
        line += '\t';
        line += e.context.str();
        line += '\t';
        for (std::size_t i = 0; i < e.contexts.size(); ++i) {
            if (i) line += ' ';
            line += std::to_string(e.contexts[i].source);
            line += ',';
            line += std::to_string(e.contexts[i].path);
            line += ',';
            line += std::to_string(e.contexts[i].target);
        }
        line += '\n';
        out << line;
    }
}

std::vector<EncodedExample> read_encoded(std::istream& in) {
    std::vector<EncodedExample> out;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty()) continue;
        const std::string where = "encoded line " + std::to_string(lineno) + ": ";
        std::size_t t1 = line.find('\t');
        std::size_t t2 = t1 == std::string::npos ? t1 : line.find('\t', t1 + 1);
        std::size_t t3 = t2 == std::string::npos ? t2 : line.find('\t', t2 + 1);
        if (t3 == std::string::npos) throw FormatError(where + "expected 4 fields");
        EncodedExample e;
        e.id = line.substr(0, t1);
        std::string_view label = std::string_view(line).substr(t1 + 1, t2 - t1 - 1);
        if (label != "0" && label != "1") throw FormatError(where + "label must be 0 or 1");
        e.label = label[0] - '0';
        auto ctx = ContextType::parse(std::string_view(line).substr(t2 + 1, t3 - t2 - 1));
        if (!ctx) throw FormatError(where + "unknown context type");
        e.context = *ctx;
        std::string_view rest = std::string_view(line).substr(t3 + 1);
        while (!rest.empty()) {
            std::size_t sp = rest.find(' ');
            std::string_view tri = rest.substr(0, sp);
            std::size_t c1 = tri.find(',');
            std::size_t c2 = c1 == std::string_view::npos ? c1 : tri.find(',', c1 + 1);
            if (c2 == std::string_view::npos) throw FormatError(where + "malformed triple");
            e.contexts.push_back({parse_int<std::int32_t>(tri.substr(0, c1), "token id"),
                                  parse_int<std::int32_t>(tri.substr(c1 + 1, c2 - c1 - 1), "path id"),
                                  parse_int<std::int32_t>(tri.substr(c2 + 1), "token id")});
            if (sp == std::string_view::npos) break;
            rest.remove_prefix(sp + 1);
        }
        if (e.contexts.empty()) throw FormatError(where + "no contexts");
        out.push_back(std::move(e));
    }
    return out;
}

void write_encoded_file(const std::filesystem::path& path, const std::vector<EncodedExample>& examples) {
    std::ostringstream ss;
    write_encoded(ss, examples);
    write_text_file(path, ss.str());
}

std::vector<EncodedExample> read_encoded_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open " + path.string());
    return read_encoded(in);
}

}  // namespace obo
