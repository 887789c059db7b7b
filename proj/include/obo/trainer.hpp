#pragma once

#include "obo/evaluator.hpp"
#include "obo/model.hpp"

#include <functional>
#include <stdexcept>
#include <vector>

namespace obo {

class ConfigError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Raised when a loss or gradient stops being finite.
class TrainingDiverged : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct TrainConfig {
    double learning_rate = 1e-3;
    double adam_beta1 = 0.9;
    double adam_beta2 = 0.999;
    double adam_eps = 1e-8;
    std::size_t batch_size = 128;
    double dropout_p = 0.25;
    int patience_epochs = 2;
    int max_epochs = 30;
    std::uint64_t seed = 0;
    double classification_threshold = 0.5;
    std::size_t embed_dim = 128;

    /// Throws ConfigError.
    void validate() const;
};

/// Adam moments. Embedding moments are updated lazily: only rows present in
/// a gradient change.
struct AdamState {
    ModelParams m, v;
    long long t = 0;

    explicit AdamState(const ModelDims& dims) : m(zero_params(dims)), v(zero_params(dims)) {}
};

void adam_step(ModelParams& params, const Gradients& grads, AdamState& state, const TrainConfig& config);

/// Binary cross-entropy with p clamped to [1e-12, 1 - 1e-12].
double bce_loss(double p, int label);

struct EpochRecord {
    int epoch = 0;
    double train_loss = 0;
    double val_loss = 0;
    double val_accuracy = 0;

    bool operator==(const EpochRecord&) const = default;
};

/// Patience on validation accuracy: stop once the best value has not
/// strictly improved for `patience` consecutive epochs.
class EarlyStopping {
public:
    explicit EarlyStopping(int patience) : patience_(patience) {}
    /// Returns true when training should stop after this epoch.
    bool observe(double accuracy);

private:
    int patience_;
    bool seen_ = false;
    double best_ = 0.0;
    int stale_ = 0;
};

struct TrainResult {
    ModelParams best;              ///< snapshot with the lowest validation loss
    int best_epoch = 0;
    std::vector<EpochRecord> history;
};

/// Mini-batch Adam on BCE. Streams are derived from config.seed by name:
/// "init" for weights, "shuffle" for epoch order, "dropout" for masks.
TrainResult train(const std::vector<EncodedExample>& train_set, const std::vector<EncodedExample>& val_set,
                  const ModelDims& dims, const TrainConfig& config,
                  const std::function<void(const EpochRecord&)>& on_epoch = {});

std::vector<Prediction> predict_all(const ModelParams& params, const std::vector<EncodedExample>& dataset);
Metrics evaluate_split(const ModelParams& params, const std::vector<EncodedExample>& dataset, double threshold = 0.5);

/// `epoch<TAB>train_loss<TAB>val_loss<TAB>val_acc`
std::string format_epoch(const EpochRecord& r);

}  // namespace obo
