#include "ego/lstm.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>

namespace ego {

namespace {

inline double sigmoid(double x) { return 1.0 / (1.0 + std::exp(-x)); }

inline double bce_loss(double p, int label) {
    const double eps = 1e-12;
    const double q = std::clamp(p, eps, 1.0 - eps);
    return label == 1 ? -std::log(q) : -std::log(1.0 - q);
}

void check_series(const LstmParams& params, const MultiSeries& series) {
    if (series.length() < 1) throw std::invalid_argument("lstm: empty series");
    if (series.dim() != params.input_dim)
        throw std::invalid_argument("lstm: series dimension " +
                                    std::to_string(series.dim()) +
                                    " does not match model input dimension " +
                                    std::to_string(params.input_dim));
    if (!series.values.allFinite())
        throw std::invalid_argument("lstm: non-finite series values");
}

}  // namespace

LstmParams LstmParams::zeros(Eigen::Index input_dim, Eigen::Index hidden_dim) {
    LstmParams p;
    p.input_dim = input_dim;
    p.hidden_dim = hidden_dim;
    for (int g = 0; g < 4; ++g) {
        p.w_in[g] = Eigen::MatrixXd::Zero(hidden_dim, input_dim);
        p.w_rec[g] = Eigen::MatrixXd::Zero(hidden_dim, hidden_dim);
        p.bias[g] = Eigen::VectorXd::Zero(hidden_dim);
    }
    p.w_out = Eigen::VectorXd::Zero(hidden_dim);
    p.b_out = 0.0;
    return p;
}

LstmParams LstmParams::xavier(Eigen::Index input_dim, Eigen::Index hidden_dim,
                              std::uint64_t seed) {
    LstmParams p = zeros(input_dim, hidden_dim);
    std::mt19937_64 rng(seed);
    auto fill = [&rng](Eigen::MatrixXd& m, double fan_in, double fan_out) {
        const double limit = std::sqrt(6.0 / (fan_in + fan_out));
        std::uniform_real_distribution<double> dist(-limit, limit);
        for (Eigen::Index j = 0; j < m.cols(); ++j)
            for (Eigen::Index i = 0; i < m.rows(); ++i) m(i, j) = dist(rng);
    };
    for (int g = 0; g < 4; ++g) {
        fill(p.w_in[g], double(input_dim), double(hidden_dim));
        fill(p.w_rec[g], double(hidden_dim), double(hidden_dim));
    }
    p.bias[1].setOnes();  // forget gate starts open
    Eigen::MatrixXd wy(hidden_dim, 1);
    fill(wy, double(hidden_dim), 1.0);
    p.w_out = wy.col(0);
    return p;
}

Eigen::Index LstmParams::parameter_count() const {
    return 4 * (hidden_dim * input_dim + hidden_dim * hidden_dim + hidden_dim) +
           hidden_dim + 1;
}

Eigen::VectorXd LstmParams::flatten() const {
    Eigen::VectorXd theta(parameter_count());
    Eigen::Index pos = 0;
    auto put = [&](const double* data, Eigen::Index n) {
        theta.segment(pos, n) = Eigen::Map<const Eigen::VectorXd>(data, n);
        pos += n;
    };
    for (int g = 0; g < 4; ++g) {
        put(w_in[g].data(), w_in[g].size());
        put(w_rec[g].data(), w_rec[g].size());
        put(bias[g].data(), bias[g].size());
    }
    put(w_out.data(), w_out.size());
    theta[pos++] = b_out;
    return theta;
}

LstmParams LstmParams::unflatten(const Eigen::VectorXd& theta, Eigen::Index input_dim,
                                 Eigen::Index hidden_dim) {
    LstmParams p = zeros(input_dim, hidden_dim);
    if (theta.size() != p.parameter_count())
        throw std::invalid_argument("unflatten: wrong parameter vector length");
    Eigen::Index pos = 0;
    auto take = [&](double* data, Eigen::Index n) {
        Eigen::Map<Eigen::VectorXd>(data, n) = theta.segment(pos, n);
        pos += n;
    };
    for (int g = 0; g < 4; ++g) {
        take(p.w_in[g].data(), p.w_in[g].size());
        take(p.w_rec[g].data(), p.w_rec[g].size());
        take(p.bias[g].data(), p.bias[g].size());
    }
    take(p.w_out.data(), p.w_out.size());
    p.b_out = theta[pos];
    return p;
}

std::pair<double, LstmCache> lstm_forward(const LstmParams& params,
                                          const MultiSeries& series) {
    check_series(params, series);
    const Eigen::Index T = series.length();
    const Eigen::Index H = params.hidden_dim;

    LstmCache cache;
    for (int g = 0; g < 4; ++g) cache.gate[g].reserve(std::size_t(T));
    cache.cell.reserve(std::size_t(T));
    cache.hidden.reserve(std::size_t(T));

    Eigen::VectorXd h = Eigen::VectorXd::Zero(H);
    Eigen::VectorXd c = Eigen::VectorXd::Zero(H);
    for (Eigen::Index t = 0; t < T; ++t) {
        const Eigen::VectorXd x = series.values.row(t).transpose();
        Eigen::VectorXd pre[4];
        for (int g = 0; g < 4; ++g)
            pre[g] = params.w_in[g] * x + params.w_rec[g] * h + params.bias[g];
        const Eigen::VectorXd gi = pre[0].unaryExpr([](double v) { return sigmoid(v); });
        const Eigen::VectorXd gf = pre[1].unaryExpr([](double v) { return sigmoid(v); });
        const Eigen::VectorXd gg = pre[2].array().tanh();
        const Eigen::VectorXd go = pre[3].unaryExpr([](double v) { return sigmoid(v); });
        c = gf.cwiseProduct(c) + gi.cwiseProduct(gg);
        h = go.cwiseProduct(Eigen::VectorXd(c.array().tanh()));
        cache.gate[0].push_back(gi);
        cache.gate[1].push_back(gf);
        cache.gate[2].push_back(gg);
        cache.gate[3].push_back(go);
        cache.cell.push_back(c);
        cache.hidden.push_back(h);
    }
    cache.logit = params.w_out.dot(h) + params.b_out;
    cache.probability = sigmoid(cache.logit);
    return {cache.probability, std::move(cache)};
}

LstmGradients lstm_backward(const LstmParams& params, const MultiSeries& series,
                            int label) {
    if (label != 0 && label != 1) throw std::invalid_argument("label must be 0 or 1");
    auto [p, cache] = lstm_forward(params, series);

    const Eigen::Index T = series.length();
    const Eigen::Index H = params.hidden_dim;
    LstmParams grad = LstmParams::zeros(params.input_dim, H);

    const double dlogit = p - double(label);
    grad.w_out = dlogit * cache.hidden.back();
    grad.b_out = dlogit;

    Eigen::VectorXd dh = dlogit * params.w_out;
    Eigen::VectorXd dc = Eigen::VectorXd::Zero(H);
    for (Eigen::Index t = T - 1; t >= 0; --t) {
        const auto& gi = cache.gate[0][std::size_t(t)];
        const auto& gf = cache.gate[1][std::size_t(t)];
        const auto& gg = cache.gate[2][std::size_t(t)];
        const auto& go = cache.gate[3][std::size_t(t)];
        const Eigen::VectorXd tanh_c = cache.cell[std::size_t(t)].array().tanh();
        const Eigen::VectorXd c_prev =
            t > 0 ? cache.cell[std::size_t(t - 1)] : Eigen::VectorXd::Zero(H);
        const Eigen::VectorXd h_prev =
            t > 0 ? cache.hidden[std::size_t(t - 1)] : Eigen::VectorXd::Zero(H);

        dc += dh.cwiseProduct(go).cwiseProduct(
            Eigen::VectorXd(1.0 - tanh_c.array().square()));

        Eigen::VectorXd da[4];
        da[3] = dh.cwiseProduct(tanh_c).cwiseProduct(go).cwiseProduct(
            Eigen::VectorXd(Eigen::VectorXd::Ones(H) - go));
        da[0] = dc.cwiseProduct(gg).cwiseProduct(gi).cwiseProduct(
            Eigen::VectorXd(Eigen::VectorXd::Ones(H) - gi));
        da[1] = dc.cwiseProduct(c_prev).cwiseProduct(gf).cwiseProduct(
            Eigen::VectorXd(Eigen::VectorXd::Ones(H) - gf));
        da[2] = dc.cwiseProduct(gi).cwiseProduct(
            Eigen::VectorXd(1.0 - gg.array().square()));

        const Eigen::VectorXd x = series.values.row(t).transpose();
        Eigen::VectorXd dh_prev = Eigen::VectorXd::Zero(H);
        for (int g = 0; g < 4; ++g) {
            grad.w_in[g].noalias() += da[g] * x.transpose();
            grad.w_rec[g].noalias() += da[g] * h_prev.transpose();
            grad.bias[g] += da[g];
            dh_prev.noalias() += params.w_rec[g].transpose() * da[g];
        }
        dh = dh_prev;
        dc = dc.cwiseProduct(gf);
    }

    LstmGradients out;
    out.flat = grad.flatten();
    out.loss = bce_loss(p, label);
    return out;
}

Classification classify(const LstmParams& params, const MultiSeries& series,
                        double threshold) {
    const double p = lstm_forward(params, series).first;
    return {p >= threshold ? 1 : 0, p};
}

TrainResult train(const std::vector<std::pair<MultiSeries, int>>& samples,
                  const TrainConfig& cfg) {
    if (samples.size() < 2) throw std::invalid_argument("train: need at least 2 samples");
    if (cfg.epochs < 1) throw std::invalid_argument("train: epochs must be >= 1");
    if (cfg.validation_fraction < 0.0 || cfg.validation_fraction >= 1.0)
        throw std::invalid_argument("train: validation fraction must be in [0, 1)");

    const Eigen::Index input_dim = samples.front().first.dim();
    bool has_pos = false, has_neg = false;
    for (const auto& [series, label] : samples) {
        if (series.dim() != input_dim)
            throw std::invalid_argument("train: inconsistent series dimensions");
        if (label == 1) has_pos = true;
        else if (label == 0) has_neg = true;
        else throw std::invalid_argument("train: labels must be 0 or 1");
    }
    if (!has_pos || !has_neg)
        throw std::invalid_argument("train: single-class training set");

    std::mt19937_64 rng(cfg.seed);

    // stratified validation split so both classes stay in the training part
    std::vector<std::size_t> by_class[2];
    for (std::size_t i = 0; i < samples.size(); ++i)
        by_class[samples[i].second].push_back(i);
    std::vector<std::size_t> train_idx, val_idx;
    for (auto& cls : by_class) {
        std::shuffle(cls.begin(), cls.end(), rng);
        std::size_t n_val = std::size_t(cfg.validation_fraction * double(cls.size()));
        if (n_val >= cls.size()) n_val = cls.size() - 1;
        val_idx.insert(val_idx.end(), cls.begin(), cls.begin() + long(n_val));
        train_idx.insert(train_idx.end(), cls.begin() + long(n_val), cls.end());
    }

    LstmParams params = LstmParams::xavier(input_dim, cfg.hidden_dim, cfg.seed);
    Eigen::VectorXd theta = params.flatten();
    Eigen::VectorXd m = Eigen::VectorXd::Zero(theta.size());
    Eigen::VectorXd v = Eigen::VectorXd::Zero(theta.size());
    const double beta1 = 0.9, beta2 = 0.999, adam_eps = 1e-8;
    long step = 0;

    auto evaluate = [&](const LstmParams& pr, const std::vector<std::size_t>& idx,
                        double& loss, double& acc) {
        loss = 0.0;
        long correct = 0;
        for (std::size_t i : idx) {
            const double p = lstm_forward(pr, samples[i].first).first;
            loss += bce_loss(p, samples[i].second);
            if ((p >= 0.5 ? 1 : 0) == samples[i].second) ++correct;
        }
        if (!idx.empty()) {
            loss /= double(idx.size());
            acc = double(correct) / double(idx.size());
        } else {
            acc = 0.0;
        }
    };

    TrainResult result;
    result.params = params;
    double best_metric = -1.0;
    int since_best = 0;

    for (int epoch = 0; epoch < cfg.epochs; ++epoch) {
        std::shuffle(train_idx.begin(), train_idx.end(), rng);
        for (std::size_t i : train_idx) {
            LstmGradients g = lstm_backward(params, samples[i].first, samples[i].second);
            const double norm = g.flat.norm();
            if (cfg.grad_clip_norm > 0.0 && norm > cfg.grad_clip_norm)
                g.flat *= cfg.grad_clip_norm / norm;
            ++step;
            m = beta1 * m + (1.0 - beta1) * g.flat;
            v = beta2 * v + (1.0 - beta2) * g.flat.cwiseProduct(g.flat);
            const double bc1 = 1.0 - std::pow(beta1, double(step));
            const double bc2 = 1.0 - std::pow(beta2, double(step));
            theta -= cfg.learning_rate *
                     (m / bc1).cwiseQuotient(
                         Eigen::VectorXd((v / bc2).array().sqrt() + adam_eps));
            params = LstmParams::unflatten(theta, input_dim, cfg.hidden_dim);
        }

        EpochLog log;
        log.epoch = epoch;
        evaluate(params, train_idx, log.train_loss, log.train_accuracy);
        double val_loss = 0.0;
        evaluate(params, val_idx, val_loss, log.val_accuracy);
        result.log.push_back(log);

        const double metric = val_idx.empty() ? log.train_accuracy : log.val_accuracy;
        if (metric > best_metric) {
            best_metric = metric;
            result.params = params;
            since_best = 0;
        } else if (++since_best >= cfg.early_stop_patience && cfg.early_stop_patience > 0) {
            break;
        }
    }
    return result;
}

}  // namespace ego
