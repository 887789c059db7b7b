#pragma once

#include "obo/path_context.hpp"
#include "obo/rng.hpp"

#include <Eigen/Dense>

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <stdexcept>
#include <vector>

namespace obo {

class InvalidId : public std::out_of_range {
public:
    using std::out_of_range::out_of_range;
};

struct ModelDims {
    std::size_t token_vocab_size = 0;
    std::size_t path_vocab_size = 0;
    std::size_t embed_dim = 128;
    std::size_t max_contexts = 200;

    std::size_t combined_dim() const { return 3 * embed_dim; }
    bool operator==(const ModelDims&) const = default;
};

using Matrix = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
using Vector = Eigen::VectorXd;

struct ModelParams {
    Matrix E_tok;   // token_vocab x embed
    Matrix E_path;  // path_vocab x embed
    Matrix W;       // combined x combined
    Vector a;       // attention
    Vector w_out;
    double b_out = 0.0;

    ModelDims dims() const;
    bool operator==(const ModelParams& o) const;
};

/// Xavier-uniform weights, zero bias, zeroed PAD rows.
ModelParams init_params(const ModelDims& dims, Rng& rng);
/// All-zero parameters of the given shape.
ModelParams zero_params(const ModelDims& dims);

struct Dropout {
    double p = 0.25;
    Rng* rng = nullptr;
};

struct ForwardTrace {
    std::vector<Triple> triples;
    std::vector<bool> active;  ///< false for all-PAD triples (masked out)
    Matrix X;                  ///< n x combined, inputs after dropout
    Matrix mask;               ///< n x combined dropout scale (empty in eval)
    Matrix C;                  ///< n x combined, tanh(W x)
    Vector logits;
    Vector alpha;
    Vector v;
    double z = 0.0;  ///< output pre-activation
    double p = 0.5;
};

/// One example through the network; `dropout` set means training mode.
/// Throws InvalidId for out-of-range ids, std::invalid_argument for an
/// example without any non-PAD context.
ForwardTrace forward(const ModelParams& params, const std::vector<Triple>& triples,
                     std::optional<Dropout> dropout = std::nullopt);
inline ForwardTrace forward(const ModelParams& params, const EncodedExample& ex,
                            std::optional<Dropout> dropout = std::nullopt) {
    return forward(params, ex.contexts, dropout);
}

/// Gradients of one or more examples. Embedding gradients are kept as
/// sparse rows keyed by id; PAD never appears.
struct Gradients {
    std::map<std::int32_t, Vector> tok_rows;
    std::map<std::int32_t, Vector> path_rows;
    Matrix W;
    Vector a;
    Vector w_out;
    double b_out = 0.0;

    explicit Gradients(const ModelDims& dims);
    void add(const Gradients& g);
    void scale(double s);
    bool all_finite() const;
};

/// dL/dθ of binary cross-entropy for `label` given a trace from forward
/// on the same params (dropout mask reused).
Gradients backward(const ModelParams& params, const ForwardTrace& trace, int label);
/// Same, added into `into` (avoids a fresh dense buffer per example).
void accumulate_backward(const ModelParams& params, const ForwardTrace& trace, int label, Gradients& into);

/// Unclamped BCE as a function of the logit, numerically stable.
double loss_from_logit(double z, int label);

double predict(const ModelParams& params, const EncodedExample& ex);

/// Weight file: "OBO1", u32 token_vocab, path_vocab, embed_dim, combined_dim,
/// then E_tok, E_path, W, a, w_out, b_out as little-endian f64, row-major.
void save_params(const ModelParams& params, const std::filesystem::path& path);
ModelParams load_params(const std::filesystem::path& path);
std::string serialize_params(const ModelParams& params);
ModelParams deserialize_params(std::string_view bytes);

}  // namespace obo
