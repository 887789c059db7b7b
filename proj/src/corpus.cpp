#include "obo/corpus.hpp"

#include <openssl/evp.h>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <sstream>

namespace obo {

namespace fs = std::filesystem;

std::string base64_encode(std::string_view bytes) {
    std::string out(4 * ((bytes.size() + 2) / 3), '\0');
    if (bytes.empty()) return out;
    int n = EVP_EncodeBlock(reinterpret_cast<unsigned char*>(out.data()),
                            reinterpret_cast<const unsigned char*>(bytes.data()), static_cast<int>(bytes.size()));
    out.resize(static_cast<std::size_t>(n));
    return out;
}

std::string base64_decode(std::string_view text) {
    if (text.empty()) return {};
    if (text.size() % 4 != 0) throw FormatError("base64: length not a multiple of 4");
    std::string out(3 * text.size() / 4, '\0');
    int n = EVP_DecodeBlock(reinterpret_cast<unsigned char*>(out.data()),
                            reinterpret_cast<const unsigned char*>(text.data()), static_cast<int>(text.size()));
    if (n < 0) throw FormatError("base64: invalid input");
    // EVP_DecodeBlock keeps the zero bytes produced by '=' padding
    std::size_t pad = 0;
    if (text.back() == '=') ++pad;
    if (text.size() > 1 && text[text.size() - 2] == '=') ++pad;
    out.resize(static_cast<std::size_t>(n) - pad);
    return out;
}

std::string sha256_hex(std::string_view bytes) {
    unsigned char md[EVP_MAX_MD_SIZE];
    unsigned int len = 0;
    if (EVP_Digest(bytes.data(), bytes.size(), md, &len, EVP_sha256(), nullptr) != 1)
        throw std::runtime_error("sha256 failed");
    static constexpr char kHex[] = "0123456789abcdef";
    std::string out;
    for (unsigned int i = 0; i < len; ++i) {
        out += kHex[md[i] >> 4];
        out += kHex[md[i] & 15];
    }
    return out;
}

std::string sha256_file(const fs::path& path) { return sha256_hex(read_text_file(path)); }

std::string read_text_file(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open " + path.string());
    std::ostringstream ss;
    ss << in.rdbuf();
    return std::move(ss).str();
}

void write_text_file(const fs::path& path, std::string_view text) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write " + path.string());
    out.write(text.data(), static_cast<std::streamsize>(text.size()));
    if (!out) throw std::runtime_error("write failed: " + path.string());
}

void write_labeled(std::ostream& out, const std::vector<LabeledMethod>& records) {
    for (const LabeledMethod& r : records) {
        out << r.id << '\t' << r.label << '\t' << r.context.str() << '\t' << base64_encode(r.source) << '\n';
    }
}

std::vector<LabeledMethod> read_labeled(std::istream& in) {
    std::vector<LabeledMethod> out;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty()) continue;
        auto bad = [&](const std::string& why) {
            return FormatError("labeled corpus line " + std::to_string(lineno) + ": " + why);
        };
        std::size_t t1 = line.find('\t');
        std::size_t t2 = t1 == std::string::npos ? t1 : line.find('\t', t1 + 1);
        std::size_t t3 = t2 == std::string::npos ? t2 : line.find('\t', t2 + 1);
        if (t3 == std::string::npos || line.find('\t', t3 + 1) != std::string::npos) throw bad("expected 4 fields");
        LabeledMethod r;
        r.id = line.substr(0, t1);
        std::string label = line.substr(t1 + 1, t2 - t1 - 1);
        if (label != "0" && label != "1") throw bad("label must be 0 or 1");
        r.label = label[0] - '0';
        auto ctx = ContextType::parse(std::string_view(line).substr(t2 + 1, t3 - t2 - 1));
        if (!ctx) throw bad("unknown context type");
        r.context = *ctx;
        r.source = base64_decode(std::string_view(line).substr(t3 + 1));
        if (r.label == 1) {
            r.origin = Origin::Mutated;
            r.mutated_from = flip(r.context.comparator);
        }
        out.push_back(std::move(r));
    }
    return out;
}

void write_labeled_file(const fs::path& path, const std::vector<LabeledMethod>& records) {
    std::ostringstream ss;
    write_labeled(ss, records);
    write_text_file(path, ss.str());
}

std::vector<LabeledMethod> read_labeled_file(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open " + path.string());
    return read_labeled(in);
}

std::vector<std::string> list_java_files(const fs::path& root) {
    if (!fs::is_directory(root)) throw std::runtime_error("not a directory: " + root.string());
    std::vector<std::string> out;
    for (const auto& e : fs::recursive_directory_iterator(root, fs::directory_options::skip_permission_denied)) {
        if (e.is_regular_file() && e.path().extension() == ".java")
            out.push_back(fs::relative(e.path(), root).generic_string());
    }
    std::sort(out.begin(), out.end());
    return out;
}

std::string method_id(std::string_view rel_path, std::string_view method_name, std::size_t ordinal) {
    std::string id(rel_path);
    id += "::";
    id += method_name;
    id += '#';
    id += std::to_string(ordinal);
    return id;
}

std::string project_of(std::string_view id) {
    std::size_t sep = id.find("::");
    std::string_view path = id.substr(0, sep);
    std::size_t slash = path.find('/');
    // files directly under the root form one anonymous project
    return slash == std::string_view::npos ? std::string() : std::string(path.substr(0, slash));
}

MutationRun mutate_directory(const fs::path& root, std::uint64_t seed, const MutateOptions& opts) {
    MutationRun run;
    for (const std::string& rel : list_java_files(root)) {
        ++run.files;
        std::vector<MethodUnit> methods;
        try {
            methods = parse_file(read_text_file(root / rel), rel);
        } catch (const std::exception& e) {
            run.errors.push_back({rel, e.what()});
            continue;
        }
        for (std::size_t i = 0; i < methods.size(); ++i) {
            ++run.methods;
            const std::string id = method_id(rel, methods[i].method_name, i);
            Rng rng = method_rng(seed, id);
            if (auto pair = mutate_method(methods[i], id, rng, opts)) {
                run.records.push_back(std::move(pair->first));
                run.records.push_back(std::move(pair->second));
            }
        }
    }
    return run;
}

Split split_by_project(const std::vector<LabeledMethod>& records, std::uint64_t seed, double train_frac,
                       double val_frac) {
    std::map<std::string, std::size_t> sizes;
    for (const LabeledMethod& r : records) ++sizes[project_of(r.id)];
    std::vector<std::string> projects;
    for (const auto& [p, n] : sizes) projects.push_back(p);
    Rng rng(derive_seed(seed, "split"));
    rng.shuffle(projects);

    const double total = static_cast<double>(records.size());
    const double train_target = std::round(train_frac * total);
    const double val_target = std::round((train_frac + val_frac) * total);
    std::map<std::string, int> bucket;
    double filled = 0;
    for (const std::string& p : projects) {
        bucket[p] = filled < train_target ? 0 : filled < val_target ? 1 : 2;
        filled += static_cast<double>(sizes[p]);
    }

    Split s;
    for (const LabeledMethod& r : records) {
        switch (bucket[project_of(r.id)]) {
            case 0: s.train.push_back(r); break;
            case 1: s.val.push_back(r); break;
            default: s.test.push_back(r); break;
        }
    }
    return s;
}

}  // namespace obo
