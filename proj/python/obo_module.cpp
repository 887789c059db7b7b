// Python bindings: parsing, mutation, path extraction, vocabularies,
// encoding, the model, training and metrics.

#include "obo/corpus.hpp"
#include "obo/evaluator.hpp"
#include "obo/model.hpp"
#include "obo/mutation.hpp"
#include "obo/path_context.hpp"
#include "obo/trainer.hpp"

#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

namespace py = pybind11;
using namespace obo;

namespace {

ContextType context_of(const std::string& s) {
    auto c = ContextType::parse(s);
    if (!c) throw std::invalid_argument("unknown context type: " + s);
    return *c;
}

py::dict site_dict(const ComparatorSite& s) {
    py::dict d;
    d["comparator"] = std::string(comparator_name(s.comparator));
    d["statement"] = std::string(statement_name(s.statement));
    d["span"] = py::make_tuple(s.span.begin, s.span.end);
    return d;
}

MutateOptions options_for(const std::optional<std::string>& only) {
    MutateOptions o;
    if (only) {
        o.only_statement = statement_from_name(*only);
        if (!o.only_statement) throw std::invalid_argument("unknown statement kind: " + *only);
    }
    return o;
}

}  // namespace

PYBIND11_MODULE(obo, m) {
    m.doc() = "Off-by-one comparator bug detection on Java methods";

    py::register_exception<ParseError>(m, "ParseError", PyExc_ValueError);
    py::register_exception<FormatError>(m, "FormatError", PyExc_ValueError);
    py::register_exception<EmptyRepresentation>(m, "EmptyRepresentation", PyExc_ValueError);
    py::register_exception<ConfigError>(m, "ConfigError", PyExc_ValueError);
    py::register_exception<TrainingDiverged>(m, "TrainingDiverged", PyExc_ArithmeticError);
    py::register_exception<InvalidId>(m, "InvalidId", PyExc_IndexError);

    m.def("java_string_hash", [](const py::bytes& b) { return java_string_hash(std::string(b)); }, py::arg("utf8"));
    m.def("java_string_hash", [](const std::string& s) { return java_string_hash(s); }, py::arg("text"));
    m.def("normalize_terminal", py::overload_cast<std::string_view>(&normalize_terminal), py::arg("lexeme"));
    m.def("sha256_hex", [](const py::bytes& b) { return sha256_hex(std::string(b)); });

    py::class_<MethodUnit>(m, "Method")
        .def_readonly("file_path", &MethodUnit::file_path)
        .def_readonly("name", &MethodUnit::method_name)
        .def_readonly("source", &MethodUnit::source)
        .def_readonly("line", &MethodUnit::line)
        .def("dump", [](const MethodUnit& u) { return dump_tree(u.root); })
        .def("__repr__", [](const MethodUnit& u) { return "<Method " + u.file_path + "::" + u.method_name + ">"; });

    m.def("parse_file", &parse_file, py::arg("source"), py::arg("file_path") = "<input>");
    m.def("parse_method", &parse_method, py::arg("source"), py::arg("file_path") = "<method>");

    m.def(
        "comparator_sites",
        [](const MethodUnit& u) {
            py::list out;
            for (const ComparatorSite& s : find_comparator_sites(u)) out.append(site_dict(s));
            return out;
        },
        py::arg("method"), "Every <, <=, >, >= in source order");

    py::class_<LabeledMethod>(m, "LabeledMethod")
        .def_readonly("id", &LabeledMethod::id)
        .def_readonly("source", &LabeledMethod::source)
        .def_readonly("label", &LabeledMethod::label)
        .def_property_readonly("context", [](const LabeledMethod& r) { return r.context.str(); })
        .def("__repr__", [](const LabeledMethod& r) {
            return "<LabeledMethod " + r.id + " " + std::to_string(r.label) + " " + r.context.str() + ">";
        });

    m.def(
        "mutate_site",
        [](const MethodUnit& u, std::size_t index, const std::string& id) {
            auto sites = find_comparator_sites(u);
            if (index >= sites.size()) throw py::index_error("no comparator site " + std::to_string(index));
            return mutate_at(u, id, sites[index]);
        },
        py::arg("method"), py::arg("index"), py::arg("id") = "method");
    m.def(
        "mutate_method",
        [](const MethodUnit& u, const std::string& id, std::uint64_t seed, std::optional<std::string> only) {
            Rng rng = method_rng(seed, id);
            return mutate_method(u, id, rng, options_for(only));
        },
        py::arg("method"), py::arg("id"), py::arg("seed") = 0, py::arg("only_context") = py::none());
    m.def(
        "mutate_directory",
        [](const std::filesystem::path& root, std::uint64_t seed, std::optional<std::string> only) {
            return mutate_directory(root, seed, options_for(only)).records;
        },
        py::arg("root"), py::arg("seed") = 0, py::arg("only_context") = py::none());
    m.def(
        "split_by_project",
        [](const std::vector<LabeledMethod>& records, std::uint64_t seed, double train, double val) {
            Split s = split_by_project(records, seed, train, val);
            return py::make_tuple(s.train, s.val, s.test);
        },
        py::arg("records"), py::arg("seed") = 0, py::arg("train_fraction") = 0.8, py::arg("val_fraction") = 0.1);
    m.def("read_labeled", &read_labeled_file, py::arg("path"));
    m.def("write_labeled", &write_labeled_file, py::arg("path"), py::arg("records"));

    m.def(
        "extract_paths",
        [](const MethodUnit& u, int max_length, int max_width) {
            const auto terms = value_terminals(u.root);
            py::list out;
            for (const PathContext& p : extract_paths(u, PathLimits{max_length, max_width}))
                out.append(py::make_tuple(normalize_terminal(*terms[p.source]), p.path,
                                          normalize_terminal(*terms[p.target])));
            return out;
        },
        py::arg("method"), py::arg("max_length") = 8, py::arg("max_width") = 2,
        "(source token, path, target token) for every terminal pair within the limits");

    py::class_<Vocabulary>(m, "Vocabulary")
        .def_property_readonly("token_count", &Vocabulary::token_count)
        .def_property_readonly("path_count", &Vocabulary::path_count)
        .def("token_id", &Vocabulary::token_id)
        .def("save", &Vocabulary::save_file)
        .def_static("load", &Vocabulary::load_file);
    m.def(
        "build_vocabulary",
        [](const std::vector<LabeledMethod>& records, std::size_t max_tokens, std::size_t max_paths) {
            VocabularyBuilder b;
            for (const LabeledMethod& r : records) {
                try {
                    b.add(extract_method(parse_method(r.source)));
                } catch (const EmptyRepresentation&) {
                }
            }
            return b.build(max_tokens, max_paths);
        },
        py::arg("records"), py::arg("max_tokens") = 100000, py::arg("max_paths") = 500000);

    py::class_<Triple>(m, "Triple")
        .def(py::init<std::int32_t, std::int32_t, std::int32_t>())
        .def_readwrite("source", &Triple::source)
        .def_readwrite("path", &Triple::path)
        .def_readwrite("target", &Triple::target)
        .def("__repr__", [](const Triple& t) {
            return "Triple(" + std::to_string(t.source) + ", " + std::to_string(t.path) + ", " +
                   std::to_string(t.target) + ")";
        });

    py::class_<EncodedExample>(m, "EncodedExample")
        .def(py::init([](std::string id, int label, const std::string& ctx, std::vector<Triple> contexts) {
                 return EncodedExample{std::move(id), label, context_of(ctx), std::move(contexts)};
             }),
             py::arg("id"), py::arg("label"), py::arg("context"), py::arg("contexts"))
        .def_readonly("id", &EncodedExample::id)
        .def_readonly("label", &EncodedExample::label)
        .def_property_readonly("context", [](const EncodedExample& e) { return e.context.str(); })
        .def_readonly("contexts", &EncodedExample::contexts);
    m.def(
        "encode",
        [](const LabeledMethod& r, const Vocabulary& v, std::uint64_t seed, std::size_t max_contexts) {
            EncodeOptions o;
            o.max_contexts = max_contexts;
            return encode_method(r, v, o, seed);
        },
        py::arg("record"), py::arg("vocab"), py::arg("seed") = 0, py::arg("max_contexts") = 200);
    m.def("read_encoded", &read_encoded_file, py::arg("path"));
    m.def("write_encoded", &write_encoded_file, py::arg("path"), py::arg("examples"));

    py::class_<ModelParams>(m, "Model")
        .def_static(
            "init",
            [](std::size_t tokens, std::size_t paths, std::size_t embed, std::uint64_t seed) {
                ModelDims d;
                d.token_vocab_size = tokens;
                d.path_vocab_size = paths;
                d.embed_dim = embed;
                Rng rng(seed);
                return init_params(d, rng);
            },
            py::arg("token_vocab"), py::arg("path_vocab"), py::arg("embed_dim") = 128, py::arg("seed") = 0)
        .def_static("load", &load_params, py::arg("path"))
        .def("save", [](const ModelParams& p, const std::filesystem::path& path) { save_params(p, path); })
        .def_property_readonly("embed_dim", [](const ModelParams& p) { return p.dims().embed_dim; })
        .def("predict", [](const ModelParams& p, const std::vector<Triple>& t) { return forward(p, t).p; })
        .def("predict", [](const ModelParams& p, const EncodedExample& e) { return predict(p, e); })
        .def(
            "attention",
            [](const ModelParams& p, const std::vector<Triple>& t) {
                const Vector a = forward(p, t).alpha;
                return std::vector<double>(a.data(), a.data() + a.size());
            },
            "Attention weight of each context")
        .def("__eq__", [](const ModelParams& a, const ModelParams& b) { return a == b; });

    py::class_<TrainConfig>(m, "TrainConfig")
        .def(py::init<>())
        .def_readwrite("learning_rate", &TrainConfig::learning_rate)
        .def_readwrite("adam_beta1", &TrainConfig::adam_beta1)
        .def_readwrite("adam_beta2", &TrainConfig::adam_beta2)
        .def_readwrite("adam_eps", &TrainConfig::adam_eps)
        .def_readwrite("batch_size", &TrainConfig::batch_size)
        .def_readwrite("dropout", &TrainConfig::dropout_p)
        .def_readwrite("patience", &TrainConfig::patience_epochs)
        .def_readwrite("max_epochs", &TrainConfig::max_epochs)
        .def_readwrite("seed", &TrainConfig::seed)
        .def_readwrite("threshold", &TrainConfig::classification_threshold)
        .def_readwrite("embed_dim", &TrainConfig::embed_dim);

    py::class_<EpochRecord>(m, "EpochRecord")
        .def_readonly("epoch", &EpochRecord::epoch)
        .def_readonly("train_loss", &EpochRecord::train_loss)
        .def_readonly("val_loss", &EpochRecord::val_loss)
        .def_readonly("val_accuracy", &EpochRecord::val_accuracy)
        .def("__repr__", &format_epoch);

    py::class_<TrainResult>(m, "TrainResult")
        .def_readonly("model", &TrainResult::best)
        .def_readonly("best_epoch", &TrainResult::best_epoch)
        .def_readonly("history", &TrainResult::history);

    m.def(
        "train",
        [](const std::vector<EncodedExample>& tr, const std::vector<EncodedExample>& val, const Vocabulary& v,
           const TrainConfig& cfg, const std::function<void(const EpochRecord&)>& on_epoch) {
            ModelDims d;
            d.token_vocab_size = v.token_count();
            d.path_vocab_size = v.path_count();
            py::gil_scoped_release nogil;
            std::function<void(const EpochRecord&)> cb;
            if (on_epoch)
                cb = [&](const EpochRecord& r) {
                    py::gil_scoped_acquire gil;
                    on_epoch(r);
                };
            return train(tr, val, d, cfg, cb);
        },
        py::arg("train"), py::arg("val"), py::arg("vocab"), py::arg("config") = TrainConfig{},
        py::arg("on_epoch") = nullptr);

    py::class_<Metrics>(m, "Metrics")
        .def_static("from_counts", &Metrics::from_counts, py::arg("tp"), py::arg("tn"), py::arg("fp"), py::arg("fn"))
        .def_readonly("tp", &Metrics::tp)
        .def_readonly("tn", &Metrics::tn)
        .def_readonly("fp", &Metrics::fp)
        .def_readonly("fn", &Metrics::fn)
        .def_readonly("accuracy", &Metrics::accuracy)
        .def_readonly("precision", &Metrics::precision)
        .def_readonly("recall", &Metrics::recall)
        .def_readonly("f1", &Metrics::f1)
        .def_property_readonly("total", &Metrics::total);

    m.def("evaluate", &evaluate_split, py::arg("model"), py::arg("examples"), py::arg("threshold") = 0.5);
    m.def(
        "report",
        [](const ModelParams& p, const std::vector<EncodedExample>& ex, const std::string& group_by,
           const std::string& format, double threshold) {
            const Breakdown b = breakdown(predict_all(p, ex), threshold, group_by_from_name(group_by));
            if (format == "csv") return render_csv(b.with_total());
            if (format == "text") return render_text(b.with_total());
            throw std::invalid_argument("format must be csv or text");
        },
        py::arg("model"), py::arg("examples"), py::arg("group_by") = "context", py::arg("format") = "csv",
        py::arg("threshold") = 0.5);
}
