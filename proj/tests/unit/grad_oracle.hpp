#pragma once

// Central finite differences over every parameter entry, compared with
// backward(). Shared by the unit and acceptance tests.

#include "obo/model.hpp"

#include <algorithm>
#include <cmath>
#include <optional>
#include <vector>

namespace obo {

struct GradCheck {
    double max_rel_error = 0;
    std::size_t entries = 0;
    std::vector<std::pair<double, double>> pairs;  ///< (analytic, numeric) per entry
};

inline double relative_error(double analytic, double numeric) {
    // floor keeps entries that are zero up to rounding from dominating
    const double den = std::max({std::abs(analytic), std::abs(numeric), 1e-6});
    return std::abs(analytic - numeric) / den;
}

/// Loss of one example; with a dropout seed the same mask is drawn each call.
inline double example_loss(const ModelParams& p, const std::vector<Triple>& triples, int label,
                           std::optional<std::uint64_t> dropout_seed, double dropout_p) {
    if (!dropout_seed) return loss_from_logit(forward(p, triples).z, label);
    Rng rng(*dropout_seed);
    return loss_from_logit(forward(p, triples, Dropout{dropout_p, &rng}).z, label);
}

inline GradCheck check_gradients(ModelParams p, const std::vector<Triple>& triples, int label,
                                 std::optional<std::uint64_t> dropout_seed = std::nullopt, double dropout_p = 0.25,
                                 double h = 1e-5) {
    ForwardTrace t;
    if (dropout_seed) {
        Rng rng(*dropout_seed);
        t = forward(p, triples, Dropout{dropout_p, &rng});
    } else {
        t = forward(p, triples);
    }
    const Gradients g = backward(p, t, label);

    Matrix dtok = Matrix::Zero(p.E_tok.rows(), p.E_tok.cols());
    for (const auto& [id, row] : g.tok_rows) dtok.row(id) = row.transpose();
    Matrix dpath = Matrix::Zero(p.E_path.rows(), p.E_path.cols());
    for (const auto& [id, row] : g.path_rows) dpath.row(id) = row.transpose();

    GradCheck out;
    auto sweep = [&](double* data, Eigen::Index size, const double* analytic, Eigen::Index skip_prefix) {
        for (Eigen::Index i = skip_prefix; i < size; ++i) {
            const double keep = data[i];
            data[i] = keep + h;
            const double up = example_loss(p, triples, label, dropout_seed, dropout_p);
            data[i] = keep - h;
            const double down = example_loss(p, triples, label, dropout_seed, dropout_p);
            data[i] = keep;
            const double numeric = (up - down) / (2 * h);
            out.max_rel_error = std::max(out.max_rel_error, relative_error(analytic[i], numeric));
            out.pairs.emplace_back(analytic[i], numeric);
            ++out.entries;
        }
    };
    // row 0 (PAD) is excluded: its gradient is zero by rule, not by calculus
    sweep(p.E_tok.data(), p.E_tok.size(), dtok.data(), p.E_tok.cols());
    sweep(p.E_path.data(), p.E_path.size(), dpath.data(), p.E_path.cols());
    sweep(p.W.data(), p.W.size(), g.W.data(), 0);
    sweep(p.a.data(), p.a.size(), g.a.data(), 0);
    sweep(p.w_out.data(), p.w_out.size(), g.w_out.data(), 0);
    sweep(&p.b_out, 1, &g.b_out, 0);
    return out;
}

/// Random example with ids in [1, vocab) and `n` contexts.
inline std::vector<Triple> random_triples(const ModelDims& d, std::size_t n, Rng& rng) {
    std::vector<Triple> out;
    for (std::size_t i = 0; i < n; ++i) {
        out.push_back({static_cast<std::int32_t>(1 + rng.below(d.token_vocab_size - 1)),
                       static_cast<std::int32_t>(1 + rng.below(d.path_vocab_size - 1)),
                       static_cast<std::int32_t>(1 + rng.below(d.token_vocab_size - 1))});
    }
    return out;
}

/// Xavier draws times `scale` with a random bias; scale > 1 pushes tanh and
/// attention out of their near-linear regime.
inline ModelParams random_params(const ModelDims& d, Rng& rng, double scale = 1.0) {
    ModelParams p = init_params(d, rng);
    p.E_tok *= scale;
    p.E_path *= scale;
    p.W *= scale;
    p.a *= scale;
    p.w_out *= scale;
    p.b_out = rng.uniform(-0.5, 0.5);
    return p;
}

}  // namespace obo
