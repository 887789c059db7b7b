#pragma once

// Template family of canonical index loops,
//   for (int i = 0; i < items.size(); i++) { ... }
// with varied identifiers, types and bodies. The loop condition is the only
// comparator, so every method mutates into exactly one `<=` variant.

#include "obo/corpus.hpp"
#include "obo/rng.hpp"

#include <array>
#include <cstdint>
#include <filesystem>
#include <string>

namespace obo::synthetic {

inline std::string pick(Rng& rng, std::initializer_list<const char*> pool) {
    return *(pool.begin() + rng.below(pool.size()));
}

inline std::string capitalize(std::string s) {
    if (!s.empty() && s[0] >= 'a' && s[0] <= 'z') s[0] = static_cast<char>(s[0] - 'a' + 'A');
    return s;
}

/// One method from template seed `seed`.
inline std::string loop_method(std::uint64_t seed) {
    Rng rng(derive_seed(seed, "synthetic"));
    const std::string coll = pick(rng, {"items", "values", "nodes", "entries", "rows", "records", "users", "tokens",
                                        "points", "children", "elements", "orders", "files", "lines", "words",
                                        "samples", "tasks", "events", "keys", "results"});
    const std::string type = pick(rng, {"String", "Integer", "Long", "Double", "Node", "Item", "Entry", "Record",
                                        "User", "Point", "Task", "Event"});
    const std::string i = pick(rng, {"i", "j", "k", "idx", "index", "pos", "n", "cursor"});
    const std::string noun = pick(rng, {"total", "count", "size", "score", "weight", "length", "sum", "value"});
    const std::string verb = pick(rng, {"compute", "collect", "scan", "process", "visit", "check", "update",
                                        "render", "merge", "count", "apply", "find"});
    const std::string name = verb + capitalize(coll) + (rng.below(2) ? capitalize(noun) : "");
    const std::string param = "List<" + type + "> " + coll;
    const std::string head = "for (int " + i + " = 0; " + i + " < " + coll + ".size(); " + i + "++) {\n";
    const std::string elem = coll + ".get(" + i + ")";

    std::string out;
    switch (rng.below(6)) {
        case 0:
            out = "int " + name + "(" + param + ") {\n    int " + noun + " = 0;\n    " + head + "        " + noun +
                  " += " + elem + ".hashCode();\n    }\n    return " + noun + ";\n}\n";
            break;
        case 1:
            out = "int " + name + "(" + param + ", " + type + " target) {\n    " + head + "        if (" + elem +
                  ".equals(target)) {\n            return " + i + ";\n        }\n    }\n    return -1;\n}\n";
            break;
        case 2:
            out = "List<" + type + "> " + name + "(" + param + ") {\n    List<" + type + "> out = new ArrayList<>();\n    " +
                  head + "        out.add(" + elem + ");\n    }\n    return out;\n}\n";
            break;
        case 3:
            out = "void " + name + "(" + param + ") {\n    " + head + "        System.out.println(" + elem +
                  ");\n    }\n}\n";
            break;
        case 4:
            out = "void " + name + "(" + param + ", " + type + " fill) {\n    " + head + "        " + coll + ".set(" +
                  i + ", fill);\n    }\n}\n";
            break;
        default:
            out = "String " + name + "(" + param + ") {\n    StringBuilder sb = new StringBuilder();\n    " + head +
                  "        sb.append(" + elem + ").append(\",\");\n    }\n    return sb.toString();\n}\n";
            break;
    }
    return out;
}

/// Writes `count` methods, one class per template seed, each in its own
/// project directory `t<seed>/` so that project splits follow template seeds.
inline void write_loop_corpus(const std::filesystem::path& root, std::uint64_t first_seed, std::size_t count) {
    std::filesystem::create_directories(root);
    for (std::size_t k = 0; k < count; ++k) {
        const std::uint64_t seed = first_seed + k;
        std::string body = loop_method(seed);
        std::string indented;
        for (std::size_t pos = 0; pos < body.size();) {
            const std::size_t nl = body.find('\n', pos);
            indented += "    " + body.substr(pos, nl - pos + 1);
            pos = nl + 1;
        }
        const std::string dir = "t" + std::to_string(seed);
        const std::string cls = "Loops" + std::to_string(seed);
        std::filesystem::create_directories(root / dir);
        write_text_file(root / dir / (cls + ".java"),
                        "import java.util.*;\n\nclass " + cls + " {\n" + indented + "}\n");
    }
}

}  // namespace obo::synthetic
