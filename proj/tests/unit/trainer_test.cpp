#include "obo/trainer.hpp"

#include <gtest/gtest.h>

#include <cmath>

#include "grad_oracle.hpp"

namespace {

using namespace obo;

ModelDims small_dims() {
    ModelDims d;
    d.token_vocab_size = 12;
    d.path_vocab_size = 12;
    d.embed_dim = 4;
    return d;
}

EncodedExample example(int label, std::vector<Triple> triples) {
    EncodedExample ex;
    ex.id = "p/A.java::f#0";
    ex.label = label;
    ex.context = *ContextType::parse(label ? "FORlessEquals" : "FORless");
    ex.contexts = std::move(triples);
    return ex;
}

// label decided by which path id the example carries
std::vector<EncodedExample> toy_set(std::size_t n, Rng& rng) {
    std::vector<EncodedExample> out;
    for (std::size_t i = 0; i < n; ++i) {
        const int label = static_cast<int>(i % 2);
        std::vector<Triple> ts = random_triples(small_dims(), 2 + rng.below(3), rng);
        for (Triple& t : ts)
            if (t.path <= 3) t.path = 4 + static_cast<std::int32_t>(rng.below(8));
        ts.push_back({static_cast<std::int32_t>(2 + rng.below(9)), label ? 2 : 3,
                      static_cast<std::int32_t>(2 + rng.below(9))});
        out.push_back(example(label, ts));
    }
    return out;
}

TEST(Bce, Examples) {
    EXPECT_NEAR(bce_loss(0.5, 1), std::log(2.0), 1e-12);
    EXPECT_NEAR(bce_loss(1 - 1e-12, 1), 0.0, 1e-11);
    EXPECT_NEAR(bce_loss(0.25, 0), 0.287682072451781, 1e-12);
    EXPECT_TRUE(std::isfinite(bce_loss(0.0, 1)));
    EXPECT_TRUE(std::isfinite(bce_loss(1.0, 0)));
}

TEST(Adam, FirstStepOnScalar) {
    ModelParams p = zero_params(small_dims());
    AdamState s(small_dims());
    Gradients g(small_dims());
    g.b_out = 1.0;
    TrainConfig cfg;
    cfg.learning_rate = 0.1;
    adam_step(p, g, s, cfg);
    EXPECT_NEAR(p.b_out, -0.1, 1e-8);
    EXPECT_EQ(s.t, 1);
    // zero gradient leaves the other tensors untouched
    EXPECT_TRUE(p.W.isZero(0));
    EXPECT_TRUE(p.w_out.isZero(0));
}

TEST(Adam, LazyRowsOnlyTouchPresentRows) {
    Rng rng(1);
    ModelParams p = init_params(small_dims(), rng);
    ModelParams before = p;
    AdamState s(small_dims());
    Gradients g(small_dims());
    g.tok_rows[3] = Vector::Constant(4, 0.5);
    adam_step(p, g, s, TrainConfig{});
    for (Eigen::Index r = 0; r < p.E_tok.rows(); ++r) {
        if (r == 3)
            EXPECT_NE(p.E_tok.row(r), before.E_tok.row(r));
        else
            EXPECT_EQ(p.E_tok.row(r), before.E_tok.row(r));
    }
    EXPECT_TRUE(s.m.E_tok.row(5).isZero(0));
    EXPECT_EQ(p.E_path, before.E_path);
}

TEST(EarlyStoppingTest, StopsAfterTwoFlatEpochs) {
    EarlyStopping s(2);
    EXPECT_FALSE(s.observe(0.70));
    EXPECT_FALSE(s.observe(0.75));
    EXPECT_FALSE(s.observe(0.74));
    EXPECT_TRUE(s.observe(0.73));

    EarlyStopping equal(2);
    EXPECT_FALSE(equal.observe(0.5));
    EXPECT_FALSE(equal.observe(0.5));  // equal is not an improvement
    EXPECT_TRUE(equal.observe(0.5));
}

TEST(Train, OverfitsFixedBatch) {
    Rng rng(2);
    std::vector<EncodedExample> data = toy_set(8, rng);
    Rng init(3);
    ModelParams p = init_params(small_dims(), init);
    AdamState s(small_dims());
    TrainConfig cfg;
    cfg.learning_rate = 0.01;
    double loss = 0;
    for (int step = 0; step < 200; ++step) {
        Gradients g(small_dims());
        loss = 0;
        for (const auto& ex : data) {
            ForwardTrace t = forward(p, ex);
            loss += bce_loss(t.p, ex.label);
            g.add(backward(p, t, ex.label));
        }
        loss /= static_cast<double>(data.size());
        g.scale(1.0 / static_cast<double>(data.size()));
        adam_step(p, g, s, cfg);
    }
    EXPECT_LT(loss, 0.05);
}

TEST(Train, ReproducibleAndKeepsLowestValidationLoss) {
    Rng rng(4);
    std::vector<EncodedExample> tr = toy_set(40, rng), va = toy_set(10, rng);
    TrainConfig cfg;
    cfg.embed_dim = 4;
    cfg.batch_size = 8;
    cfg.max_epochs = 12;
    cfg.seed = 77;
    std::vector<EpochRecord> seen;
    TrainResult a = train(tr, va, small_dims(), cfg, [&](const EpochRecord& r) { seen.push_back(r); });
    TrainResult b = train(tr, va, small_dims(), cfg);
    EXPECT_EQ(a.history, b.history);
    EXPECT_EQ(serialize_params(a.best), serialize_params(b.best));
    EXPECT_EQ(seen, a.history);
    ASSERT_FALSE(a.history.empty());
    EXPECT_LE(a.history.size(), 12u);

    double min_loss = a.history[0].val_loss;
    int min_epoch = 1;
    for (const auto& r : a.history)
        if (r.val_loss < min_loss) min_loss = r.val_loss, min_epoch = r.epoch;
    EXPECT_EQ(a.best_epoch, min_epoch);
    double check = 0;
    for (const auto& ex : va) check += bce_loss(predict(a.best, ex), ex.label);
    EXPECT_NEAR(check / static_cast<double>(va.size()), min_loss, 1e-12);

    cfg.seed = 78;
    EXPECT_NE(train(tr, va, small_dims(), cfg).history, a.history);
}

TEST(Train, StopsOnPatienceOrBudget) {
    Rng rng(5);
    std::vector<EncodedExample> tr = toy_set(16, rng);
    TrainConfig cfg;
    cfg.embed_dim = 4;
    cfg.max_epochs = 50;
    cfg.seed = 1;
    TrainResult r = train(tr, tr, small_dims(), cfg);
    const auto& h = r.history;
    if (h.size() < 50u) {
        // the last two epochs did not beat the best accuracy before them
        double best = 0;
        for (std::size_t i = 0; i + 2 < h.size(); ++i) best = std::max(best, h[i].val_accuracy);
        EXPECT_LE(h[h.size() - 1].val_accuracy, best);
        EXPECT_LE(h[h.size() - 2].val_accuracy, best);
    }
}

TEST(Train, RejectsEmptySplitsAndBadConfig) {
    Rng rng(6);
    auto data = toy_set(4, rng);
    EXPECT_THROW(train({}, data, small_dims(), TrainConfig{}), ConfigError);
    EXPECT_THROW(train(data, {}, small_dims(), TrainConfig{}), ConfigError);
    TrainConfig bad;
    bad.dropout_p = 1.0;
    EXPECT_THROW(train(data, data, small_dims(), bad), ConfigError);
    bad = TrainConfig{};
    bad.learning_rate = 0;
    EXPECT_THROW(bad.validate(), ConfigError);
}

TEST(Train, DivergenceAborts) {
    Rng rng(7);
    auto data = toy_set(4, rng);
    TrainConfig cfg;
    cfg.embed_dim = 4;
    cfg.learning_rate = std::numeric_limits<double>::infinity();
    EXPECT_THROW(train(data, data, small_dims(), cfg), TrainingDiverged);
}

TEST(EvaluateSplit, TieRuleAndConstantModel) {
    Rng rng(8);
    auto data = toy_set(10, rng);
    ModelParams zero = zero_params(small_dims());
    Metrics m = evaluate_split(zero, data, 0.5);
    EXPECT_EQ(m.tp + m.fp, 10u);  // p = 0.5 exactly counts as positive
    EXPECT_DOUBLE_EQ(m.accuracy, 0.5);
}

TEST(EpochLog, Format) {
    EXPECT_EQ(format_epoch({3, 0.5, 0.25, 0.75}), "3\t0.500000\t0.250000\t0.750000");
}

}  // namespace
