#include "obo/trainer.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <numeric>
#include <string>

namespace obo {

void TrainConfig::validate() const {
    if (!(learning_rate > 0)) throw ConfigError("learning rate must be positive");
    if (!(dropout_p >= 0 && dropout_p < 1)) throw ConfigError("dropout must be in [0, 1)");
    if (patience_epochs < 1) throw ConfigError("patience must be at least 1");
    if (max_epochs < 1) throw ConfigError("max_epochs must be at least 1");
    if (batch_size < 1) throw ConfigError("batch size must be at least 1");
    if (embed_dim < 1) throw ConfigError("embedding size must be at least 1");
    if (!(adam_beta1 >= 0 && adam_beta1 < 1 && adam_beta2 >= 0 && adam_beta2 < 1 && adam_eps > 0))
        throw ConfigError("invalid Adam hyper-parameters");
}

double bce_loss(double p, int label) {
    p = std::clamp(p, 1e-12, 1.0 - 1e-12);
    return label == 1 ? -std::log(p) : -std::log1p(-p);
}

namespace {

struct AdamCoef {
    double b1, b2, eps, lr, c1, c2;

    template <typename P, typename M, typename G>
    void apply(P&& theta, M&& m, M&& v, const G& g) const {
        m = b1 * m + (1 - b1) * g;
        v = b2 * v + (1 - b2) * g.cwiseProduct(g);
        theta.array() -= lr * (m.array() / c1) / ((v.array() / c2).sqrt() + eps);
    }
};

}  // namespace

void adam_step(ModelParams& params, const Gradients& grads, AdamState& s, const TrainConfig& cfg) {
    ++s.t;
    const AdamCoef k{cfg.adam_beta1,
                     cfg.adam_beta2,
                     cfg.adam_eps,
                     cfg.learning_rate,
                     1.0 - std::pow(cfg.adam_beta1, static_cast<double>(s.t)),
                     1.0 - std::pow(cfg.adam_beta2, static_cast<double>(s.t))};

    for (const auto& [id, g] : grads.tok_rows) {
        auto m = s.m.E_tok.row(id), v = s.v.E_tok.row(id);
        k.apply(params.E_tok.row(id), m, v, g.transpose());
    }
    for (const auto& [id, g] : grads.path_rows) {
        auto m = s.m.E_path.row(id), v = s.v.E_path.row(id);
        k.apply(params.E_path.row(id), m, v, g.transpose());
    }
    k.apply(params.W, s.m.W, s.v.W, grads.W);
    k.apply(params.a, s.m.a, s.v.a, grads.a);
    k.apply(params.w_out, s.m.w_out, s.v.w_out, grads.w_out);

    s.m.b_out = k.b1 * s.m.b_out + (1 - k.b1) * grads.b_out;
    s.v.b_out = k.b2 * s.v.b_out + (1 - k.b2) * grads.b_out * grads.b_out;
    params.b_out -= k.lr * (s.m.b_out / k.c1) / (std::sqrt(s.v.b_out / k.c2) + k.eps);
}

bool EarlyStopping::observe(double accuracy) {
    if (!seen_ || accuracy > best_) {
        seen_ = true;
        best_ = accuracy;
        stale_ = 0;
        return false;
    }
    return ++stale_ >= patience_;
}

std::vector<Prediction> predict_all(const ModelParams& params, const std::vector<EncodedExample>& dataset) {
    std::vector<Prediction> out;
    out.reserve(dataset.size());
    for (const EncodedExample& ex : dataset) out.push_back({ex.context, ex.label, predict(params, ex)});
    return out;
}

Metrics evaluate_split(const ModelParams& params, const std::vector<EncodedExample>& dataset, double threshold) {
    return confusion(predict_all(params, dataset), threshold);
}

std::string format_epoch(const EpochRecord& r) {
    char buf[128];
    std::snprintf(buf, sizeof buf, "%d\t%.6f\t%.6f\t%.6f", r.epoch, r.train_loss, r.val_loss, r.val_accuracy);
    return buf;
}

TrainResult train(const std::vector<EncodedExample>& train_set, const std::vector<EncodedExample>& val_set,
                  const ModelDims& dims_in, const TrainConfig& cfg,
                  const std::function<void(const EpochRecord&)>& on_epoch) {
    cfg.validate();
    if (train_set.empty()) throw ConfigError("training split is empty");
    if (val_set.empty()) throw ConfigError("validation split is empty");

    ModelDims dims = dims_in;
    dims.embed_dim = cfg.embed_dim;
    Rng init_rng(derive_seed(cfg.seed, "init"));
    Rng shuffle_rng(derive_seed(cfg.seed, "shuffle"));
    Rng dropout_rng(derive_seed(cfg.seed, "dropout"));

    ModelParams params = init_params(dims, init_rng);
    AdamState adam(dims);
    EarlyStopping stopper(cfg.patience_epochs);

    TrainResult result{params, 0, {}};
    double best_loss = std::numeric_limits<double>::infinity();

    std::vector<std::size_t> order(train_set.size());
    std::iota(order.begin(), order.end(), 0);

    for (int epoch = 1; epoch <= cfg.max_epochs; ++epoch) {
        shuffle_rng.shuffle(order);
        double loss_sum = 0;
        for (std::size_t start = 0; start < order.size(); start += cfg.batch_size) {
            const std::size_t end = std::min(order.size(), start + cfg.batch_size);
            Gradients batch(dims);
            for (std::size_t i = start; i < end; ++i) {
                const EncodedExample& ex = train_set[order[i]];
                ForwardTrace t = forward(params, ex, Dropout{cfg.dropout_p, &dropout_rng});
                loss_sum += bce_loss(t.p, ex.label);
                accumulate_backward(params, t, ex.label, batch);
            }
            batch.scale(1.0 / static_cast<double>(end - start));
            if (!batch.all_finite())
                throw TrainingDiverged("non-finite gradient in epoch " + std::to_string(epoch) + ", batch starting at " +
                                       std::to_string(start));
            adam_step(params, batch, adam, cfg);
        }

        EpochRecord rec;
        rec.epoch = epoch;
        rec.train_loss = loss_sum / static_cast<double>(train_set.size());
        std::vector<Prediction> preds = predict_all(params, val_set);
        double val_loss = 0;
        for (const Prediction& p : preds) val_loss += bce_loss(p.probability, p.label);
        rec.val_loss = val_loss / static_cast<double>(val_set.size());
        rec.val_accuracy = confusion(preds, cfg.classification_threshold).accuracy;
        if (!std::isfinite(rec.train_loss) || !std::isfinite(rec.val_loss))
            throw TrainingDiverged("non-finite loss in epoch " + std::to_string(epoch));

        result.history.push_back(rec);
        if (on_epoch) on_epoch(rec);
        if (rec.val_loss < best_loss) {
            best_loss = rec.val_loss;
            result.best = params;
            result.best_epoch = epoch;
        }
        if (stopper.observe(rec.val_accuracy)) break;
    }
    return result;
}

}  // namespace obo
