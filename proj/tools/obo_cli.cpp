// obo: off-by-one comparator bug detector pipeline.
//
//   obo mutate  --in DIR --out corpus.tsv
//   obo split   --corpus corpus.tsv --train train.tsv --val val.tsv --test test.tsv
//   obo vocab   --corpus train.tsv --out vocab.txt
//   obo encode  --corpus train.tsv --vocab vocab.txt --out train.enc
//   obo train   --train train.enc --val val.enc --vocab vocab.txt --out-weights model.bin
//   obo eval    --weights model.bin --test test.enc --group-by context --format csv
//   obo predict --weights model.bin --vocab vocab.txt --in SRC
//
// Exit codes: 0 ok, 1 I/O or compatibility error, 2 empty result, 64 usage.

#include "obo/corpus.hpp"
#include "obo/evaluator.hpp"
#include "obo/path_context.hpp"
#include "obo/trainer.hpp"

#include <CLI11.hpp>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>

namespace fs = std::filesystem;
using namespace obo;

namespace {

constexpr int kOk = 0;
constexpr int kIoError = 1;
constexpr int kEmpty = 2;
constexpr int kUsage = 64;

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

std::uint64_t default_seed() {
    if (const char* env = std::getenv("OBO_SEED")) {
        try {
            std::size_t used = 0;
            const unsigned long long v = std::stoull(env, &used);
            if (used == std::string(env).size()) return v;
        } catch (const std::exception&) {
        }
        throw UsageError("OBO_SEED is not an unsigned integer");
    }
    return 0;
}

void add_limits(CLI::App* cmd, PathLimits& limits) {
    cmd->add_option("--max-path-length", limits.max_length, "Nodes per path, both ends included")
        ->capture_default_str();
    cmd->add_option("--max-path-width", limits.max_width, "Sibling distance at the top of a path")
        ->capture_default_str();
}

// ---- mutate ----

struct MutateArgs {
    std::string in, out, only;
    std::uint64_t seed = 0;
};

int run_mutate(const MutateArgs& a) {
    if (!fs::is_directory(a.in)) {
        std::cerr << "obo mutate: not a directory: " << a.in << "\n";
        return kIoError;
    }
    MutateOptions opts;
    if (!a.only.empty()) {
        opts.only_statement = statement_from_name(a.only);
        if (!opts.only_statement) throw UsageError("unknown statement kind for --only-context: " + a.only);
    }
    MutationRun run = mutate_directory(a.in, a.seed, opts);
    for (const FileError& e : run.errors) std::cerr << "skipped " << e.file << ": " << e.message << "\n";
    write_labeled_file(a.out, run.records);
    write_text_file(a.out + ".dist.tsv", render_distribution(corpus_distribution(run.records)));
    std::cout << "files=" << run.files << " methods=" << run.methods << " pairs=" << run.records.size() / 2
              << " parse_errors=" << run.errors.size() << "\n";
    return run.records.empty() ? kEmpty : kOk;
}

// ---- split ----

struct SplitArgs {
    std::string corpus, train, val, test;
    double train_frac = 0.8, val_frac = 0.1;
    std::uint64_t seed = 0;
};

int run_split(const SplitArgs& a) {
    if (a.train_frac < 0 || a.val_frac < 0 || a.train_frac + a.val_frac > 1)
        throw UsageError("split fractions must be non-negative and sum to at most 1");
    auto records = read_labeled_file(a.corpus);
    Split s = split_by_project(records, a.seed, a.train_frac, a.val_frac);
    write_labeled_file(a.train, s.train);
    write_labeled_file(a.val, s.val);
    write_labeled_file(a.test, s.test);
    std::cout << "train=" << s.train.size() << " val=" << s.val.size() << " test=" << s.test.size() << "\n";
    return records.empty() ? kEmpty : kOk;
}

// ---- vocab ----

struct VocabArgs {
    std::string corpus, out;
    std::size_t max_tokens = 100000, max_paths = 500000;
    PathLimits limits;
};

int run_vocab(const VocabArgs& a) {
    auto records = read_labeled_file(a.corpus);
    VocabularyBuilder b;
    std::size_t skipped = 0;
    for (const LabeledMethod& r : records) {
        try {
            b.add(extract_method(parse_method(r.source), a.limits));
        } catch (const EmptyRepresentation&) {
            ++skipped;
        } catch (const ParseError&) {
            ++skipped;
        }
    }
    Vocabulary v = b.build(a.max_tokens, a.max_paths);
    v.save_file(a.out);
    std::cout << "tokens=" << v.token_count() << " paths=" << v.path_count() << " skipped=" << skipped << "\n";
    return v.token_count() > 2 ? kOk : kEmpty;
}

// ---- encode ----

struct EncodeArgs {
    std::string corpus, vocab, out;
    EncodeOptions opts;
    std::uint64_t seed = 0;
};

int run_encode(const EncodeArgs& a) {
    if (!fs::exists(a.vocab)) {
        std::cerr << "obo encode: vocabulary not found: " << a.vocab << "\n";
        return kIoError;
    }
    Vocabulary v = Vocabulary::load_file(a.vocab);
    auto records = read_labeled_file(a.corpus);
    std::vector<EncodedExample> out;
    std::size_t dropped = 0;
    for (const LabeledMethod& r : records) {
        try {
            out.push_back(encode_method(r, v, a.opts, a.seed));
        } catch (const EmptyRepresentation&) {
            ++dropped;
        } catch (const ParseError&) {
            ++dropped;
        }
    }
    write_encoded_file(a.out, out);
    std::cout << "encoded=" << out.size() << " dropped=" << dropped << "\n";
    return out.empty() ? kEmpty : kOk;
}

// ---- train ----

struct TrainArgs {
    std::string train, val, vocab, weights, history;
    TrainConfig cfg;
};

bool ids_fit(const std::vector<EncodedExample>& data, std::size_t tokens, std::size_t paths) {
    for (const auto& ex : data)
        for (const Triple& t : ex.contexts)
            if (t.source < 0 || t.target < 0 || t.path < 0 || static_cast<std::size_t>(t.source) >= tokens ||
                static_cast<std::size_t>(t.target) >= tokens || static_cast<std::size_t>(t.path) >= paths)
                return false;
    return true;
}

void print_metrics(const Metrics& m) {
    std::printf("tp=%zu tn=%zu fp=%zu fn=%zu accuracy=%s precision=%s recall=%s f1=%s\n", m.tp, m.tn, m.fp, m.fn,
                format_ratio(m.accuracy).c_str(), format_ratio(m.precision).c_str(), format_ratio(m.recall).c_str(),
                format_ratio(m.f1).c_str());
}

int run_train(TrainArgs a) {
    Vocabulary v = Vocabulary::load_file(a.vocab);
    auto train_set = read_encoded_file(a.train);
    auto val_set = read_encoded_file(a.val);
    if (!ids_fit(train_set, v.token_count(), v.path_count()) || !ids_fit(val_set, v.token_count(), v.path_count())) {
        std::cerr << "obo train: encoded splits do not match the vocabulary\n";
        return kIoError;
    }
    if (train_set.empty() || val_set.empty()) {
        std::cerr << "obo train: empty training or validation split\n";
        return kEmpty;
    }
    ModelDims dims;
    dims.token_vocab_size = v.token_count();
    dims.path_vocab_size = v.path_count();

    std::string history;
    TrainResult r = train(train_set, val_set, dims, a.cfg, [&](const EpochRecord& rec) {
        const std::string line = format_epoch(rec);
        std::cout << line << std::endl;
        history += line + "\n";
    });
    save_params(r.best, a.weights);
    write_text_file(a.history.empty() ? a.weights + ".history.tsv" : a.history, history);
    std::cout << "best_epoch=" << r.best_epoch << "\n";
    print_metrics(evaluate_split(r.best, val_set, a.cfg.classification_threshold));
    return kOk;
}

// ---- eval ----

struct EvalArgs {
    std::string weights, test, group_by = "context", format = "csv", out;
    double threshold = 0.5;
};

int run_eval(const EvalArgs& a) {
    ModelParams p = load_params(a.weights);
    auto test = read_encoded_file(a.test);
    if (!ids_fit(test, p.dims().token_vocab_size, p.dims().path_vocab_size)) {
        std::cerr << "obo eval: test split does not match the weights\n";
        return kIoError;
    }
    Breakdown b = breakdown(predict_all(p, test), a.threshold, group_by_from_name(a.group_by));
    const auto rows = b.with_total();
    const std::string doc = a.format == "csv" ? render_csv(rows) : render_text(rows);
    if (a.out.empty())
        std::cout << doc;
    else
        write_text_file(a.out, doc);
    return test.empty() ? kEmpty : kOk;
}

// ---- predict ----

struct PredictArgs {
    std::string weights, vocab, in;
    double threshold = 0.5;
    EncodeOptions opts;
    std::uint64_t seed = 0;
};

int run_predict(const PredictArgs& a) {
    ModelParams p = load_params(a.weights);
    Vocabulary v = Vocabulary::load_file(a.vocab);
    if (v.token_count() != p.dims().token_vocab_size || v.path_count() != p.dims().path_vocab_size) {
        std::cerr << "obo predict: vocabulary does not match the weights\n";
        return kIoError;
    }
    std::vector<std::pair<std::string, fs::path>> files;  // display name, path
    if (fs::is_directory(a.in)) {
        for (const std::string& rel : list_java_files(a.in)) files.emplace_back(rel, fs::path(a.in) / rel);
    } else if (fs::is_regular_file(a.in)) {
        files.emplace_back(a.in, a.in);
    } else {
        std::cerr << "obo predict: no such file or directory: " << a.in << "\n";
        return kIoError;
    }

    for (const auto& [name, path] : files) {
        std::vector<MethodUnit> methods;
        try {
            methods = parse_file(read_text_file(path), name);
        } catch (const ParseError& e) {
            std::cerr << "skipped " << name << ": " << e.what() << "\n";
            continue;
        }
        std::size_t ordinal = 0;
        for (const MethodUnit& m : methods) {
            const std::string id = method_id(name, m.method_name, ordinal++);
            const std::string where = name + ":" + std::to_string(m.line) + "  " + m.method_name;
            try {
                ExtractedMethod ex = extract_method(m, a.opts.limits);
                Rng rng(derive_seed(derive_seed(a.seed, "encode"), id));
                EncodedExample e;
                e.id = id;
                e.contexts = encode_contexts(ex, v, a.opts.max_contexts, rng);
                const double prob = predict(p, e);
                std::printf("%s  p=%.4f  %s\n", where.c_str(), prob, prob >= a.threshold ? "FLAGGED" : "ok");
            } catch (const EmptyRepresentation&) {
                std::printf("%s  skipped\n", where.c_str());
            }
        }
    }
    return kOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Off-by-one comparator bug detection: corpus mutation, path-context encoding, training, evaluation"};
    app.require_subcommand(1);
    app.set_version_flag("--version", "obo 0.1.0");

    std::uint64_t seed = 0;
    try {
        seed = default_seed();
    } catch (const UsageError& e) {
        std::cerr << "obo: " << e.what() << "\n";
        return kUsage;
    }
    auto add_seed = [&](CLI::App* cmd) {
        cmd->add_option("--seed", seed, "Global seed (falls back to $OBO_SEED, then 0)")->capture_default_str();
    };

    MutateArgs ma;
    auto* mutate = app.add_subcommand("mutate", "Build a labeled original/mutated corpus from a source tree");
    mutate->add_option("--in", ma.in, "Directory of .java files")->required();
    mutate->add_option("--out", ma.out, "Labeled corpus to write")->required();
    mutate->add_option("--only-context", ma.only, "Restrict mutations to one statement kind (IF, FOR, ...)");
    add_seed(mutate);

    SplitArgs sa;
    auto* split = app.add_subcommand("split", "Split a labeled corpus by project into train/val/test");
    split->add_option("--corpus", sa.corpus)->required();
    split->add_option("--train", sa.train)->required();
    split->add_option("--val", sa.val)->required();
    split->add_option("--test", sa.test)->required();
    split->add_option("--train-fraction", sa.train_frac)->capture_default_str();
    split->add_option("--val-fraction", sa.val_frac)->capture_default_str();
    add_seed(split);

    VocabArgs va;
    auto* vocab = app.add_subcommand("vocab", "Build token and path vocabularies from a labeled split");
    vocab->add_option("--corpus", va.corpus)->required();
    vocab->add_option("--out", va.out)->required();
    vocab->add_option("--max-tokens", va.max_tokens)->capture_default_str();
    vocab->add_option("--max-paths", va.max_paths)->capture_default_str();
    add_limits(vocab, va.limits);

    EncodeArgs ea;
    auto* encode = app.add_subcommand("encode", "Encode a labeled split as path-context id triples");
    encode->add_option("--corpus", ea.corpus)->required();
    encode->add_option("--vocab", ea.vocab)->required();
    encode->add_option("--out", ea.out)->required();
    encode->add_option("--max-contexts", ea.opts.max_contexts, "0 keeps every context")->capture_default_str();
    add_limits(encode, ea.opts.limits);
    add_seed(encode);

    TrainArgs ta;
    auto* trainc = app.add_subcommand("train", "Train the classifier with early stopping");
    trainc->add_option("--train", ta.train)->required();
    trainc->add_option("--val", ta.val)->required();
    trainc->add_option("--vocab", ta.vocab, "Vocabulary the splits were encoded with")->required();
    trainc->add_option("--out-weights", ta.weights)->required();
    trainc->add_option("--history", ta.history, "Epoch log (default: <weights>.history.tsv)");
    trainc->add_option("--learning-rate", ta.cfg.learning_rate)->capture_default_str();
    trainc->add_option("--batch-size", ta.cfg.batch_size)->capture_default_str();
    trainc->add_option("--dropout", ta.cfg.dropout_p)->capture_default_str();
    trainc->add_option("--patience", ta.cfg.patience_epochs)->capture_default_str();
    trainc->add_option("--max-epochs", ta.cfg.max_epochs)->capture_default_str();
    trainc->add_option("--embed-dim", ta.cfg.embed_dim)->capture_default_str();
    trainc->add_option("--threshold", ta.cfg.classification_threshold)->capture_default_str();
    trainc->add_option("--adam-beta1", ta.cfg.adam_beta1)->capture_default_str();
    trainc->add_option("--adam-beta2", ta.cfg.adam_beta2)->capture_default_str();
    trainc->add_option("--adam-eps", ta.cfg.adam_eps)->capture_default_str();
    add_seed(trainc);

    EvalArgs ev;
    auto* evalc = app.add_subcommand("eval", "Per-group confusion report on an encoded split");
    evalc->add_option("--weights", ev.weights)->required();
    evalc->add_option("--test", ev.test)->required();
    evalc->add_option("--group-by", ev.group_by)
        ->check(CLI::IsMember({"context", "statement", "comparator"}))
        ->capture_default_str();
    evalc->add_option("--format", ev.format)->check(CLI::IsMember({"csv", "text"}))->capture_default_str();
    evalc->add_option("--out", ev.out, "Write the report here instead of stdout");
    evalc->add_option("--threshold", ev.threshold)->capture_default_str();

    PredictArgs pa;
    auto* predictc = app.add_subcommand("predict", "Score every method of a file or directory");
    predictc->add_option("--weights", pa.weights)->required();
    predictc->add_option("--vocab", pa.vocab)->required();
    predictc->add_option("--in", pa.in, "Java file or directory")->required();
    predictc->add_option("--threshold", pa.threshold)->capture_default_str();
    predictc->add_option("--max-contexts", pa.opts.max_contexts)->capture_default_str();
    add_limits(predictc, pa.opts.limits);
    add_seed(predictc);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kOk : kUsage;
    }

    try {
        if (*mutate) return ma.seed = seed, run_mutate(ma);
        if (*split) return sa.seed = seed, run_split(sa);
        if (*vocab) return run_vocab(va);
        if (*encode) return ea.seed = seed, run_encode(ea);
        if (*trainc) return ta.cfg.seed = seed, run_train(ta);
        if (*evalc) return run_eval(ev);
        if (*predictc) return pa.seed = seed, run_predict(pa);
    } catch (const UsageError& e) {
        std::cerr << "obo: " << e.what() << "\n";
        return kUsage;
    } catch (const ConfigError& e) {
        std::cerr << "obo: " << e.what() << "\n";
        return kUsage;
    } catch (const InvalidId& e) {
        std::cerr << "obo: " << e.what() << "\n";
        return kIoError;
    } catch (const std::exception& e) {
        std::cerr << "obo: " << e.what() << "\n";
        return kIoError;
    }
    return kUsage;
}
