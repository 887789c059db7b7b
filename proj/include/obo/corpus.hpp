#pragma once

#include "obo/mutation.hpp"

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

namespace obo {

std::string base64_encode(std::string_view bytes);
/// Throws FormatError on malformed input.
std::string base64_decode(std::string_view text);

/// Lowercase hex SHA-256 of a byte string / of a file's contents.
std::string sha256_hex(std::string_view bytes);
std::string sha256_file(const std::filesystem::path& path);

class FormatError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Labeled corpus: `id<TAB>label<TAB>context_type<TAB>base64(source)` per line.
void write_labeled(std::ostream& out, const std::vector<LabeledMethod>& records);
std::vector<LabeledMethod> read_labeled(std::istream& in);
void write_labeled_file(const std::filesystem::path& path, const std::vector<LabeledMethod>& records);
std::vector<LabeledMethod> read_labeled_file(const std::filesystem::path& path);

std::string read_text_file(const std::filesystem::path& path);
void write_text_file(const std::filesystem::path& path, std::string_view text);

/// All *.java files below `root`, as paths relative to it, sorted by their
/// generic (forward-slash) string.
std::vector<std::string> list_java_files(const std::filesystem::path& root);

struct FileError {
    std::string file;
    std::string message;
};

struct MutationRun {
    std::vector<LabeledMethod> records;  ///< original, mutated, original, mutated, ...
    std::vector<FileError> errors;       ///< files skipped because they did not parse
    std::size_t files = 0;
    std::size_t methods = 0;
};

/// Method id: `<relative file path>::<method name>#<ordinal in file>`.
std::string method_id(std::string_view rel_path, std::string_view method_name, std::size_t ordinal);

/// The project a method belongs to: the first path component of its id.
std::string project_of(std::string_view id);

/// Parse every Java file under `root` (sorted order) and mutate each method.
MutationRun mutate_directory(const std::filesystem::path& root, std::uint64_t seed,
                             const MutateOptions& opts = {});

struct Split {
    std::vector<LabeledMethod> train, val, test;
};

/// Assign whole projects to train/val/test. Projects are shuffled with
/// derive_seed(seed, "split") and filled greedily in that order until each
/// split reaches its share of records; pairs therefore never straddle splits.
Split split_by_project(const std::vector<LabeledMethod>& records, std::uint64_t seed,
                       double train_frac = 0.8, double val_frac = 0.1);

}  // namespace obo
