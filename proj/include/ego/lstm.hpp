#pragma once

#include "ego/core.hpp"

#include <cstdint>
#include <utility>
#include <vector>

namespace ego {

// Single-layer LSTM with final-hidden-state readout through a logistic unit.
struct LstmParams {
    Eigen::Index input_dim = 0;
    Eigen::Index hidden_dim = 0;
    // per-gate input weights (H x D), recurrent weights (H x H), biases (H);
    // gate order: input, forget, candidate, output
    Eigen::MatrixXd w_in[4];
    Eigen::MatrixXd w_rec[4];
    Eigen::VectorXd bias[4];
    Eigen::VectorXd w_out;  // H
    double b_out = 0.0;

    static LstmParams zeros(Eigen::Index input_dim, Eigen::Index hidden_dim);
    static LstmParams xavier(Eigen::Index input_dim, Eigen::Index hidden_dim,
                             std::uint64_t seed);

    Eigen::Index parameter_count() const;
    Eigen::VectorXd flatten() const;
    static LstmParams unflatten(const Eigen::VectorXd& theta, Eigen::Index input_dim,
                                Eigen::Index hidden_dim);
};

struct LstmCache {
    std::vector<Eigen::VectorXd> gate[4];  // post-nonlinearity activations per step
    std::vector<Eigen::VectorXd> cell;     // c_t
    std::vector<Eigen::VectorXd> hidden;   // h_t
    double logit = 0.0;
    double probability = 0.5;
};

// Standard LSTM recurrence from zero initial state; returns the positive-class
// probability and cached activations for backpropagation.
std::pair<double, LstmCache> lstm_forward(const LstmParams& params, const MultiSeries& series);

struct LstmGradients {
    Eigen::VectorXd flat;  // same layout as LstmParams::flatten
    double loss = 0.0;
};

// Binary cross-entropy loss and its gradient via full backpropagation
// through time.
LstmGradients lstm_backward(const LstmParams& params, const MultiSeries& series, int label);

struct TrainConfig {
    double learning_rate = 1e-2;
    int epochs = 60;
    std::uint64_t seed = 0;
    double grad_clip_norm = 5.0;
    int early_stop_patience = 15;
    double validation_fraction = 0.2;
    Eigen::Index hidden_dim = 32;
};

struct EpochLog {
    int epoch = 0;
    double train_loss = 0.0;
    double train_accuracy = 0.0;
    double val_accuracy = 0.0;
};

struct TrainResult {
    LstmParams params;  // best-validation parameters
    std::vector<EpochLog> log;
};

// Per-sequence Adam updates with gradient-norm clipping; deterministic for a
// given seed. Requires both labels present. Returns the parameters with the
// best validation accuracy (training accuracy when validation_fraction = 0).
TrainResult train(const std::vector<std::pair<MultiSeries, int>>& samples,
                  const TrainConfig& cfg);

struct Classification {
    int label = 0;
    double probability = 0.0;
};

// label = probability >= threshold
Classification classify(const LstmParams& params, const MultiSeries& series,
                        double threshold = 0.5);

}  // namespace ego
