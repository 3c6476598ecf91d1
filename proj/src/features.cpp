#include "ego/features.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace ego {

int dominant_expression(const ExpressionVector& e) {
    int best = 0;
    for (int k = 1; k < 8; ++k)
        if (e.probs[std::size_t(k)] > e.probs[std::size_t(best)]) best = k;
    return best + 1;
}

std::vector<int> detection_mask_columns(const FeatureMask& mask) {
    if (mask.kind != MaskKind::Detection)
        throw std::invalid_argument("expected a detection mask");
    std::vector<int> cols;
    if (mask.distance) cols.push_back(0);
    if (mask.yaw) cols.push_back(1);
    if (mask.pitch) cols.push_back(2);
    if (mask.roll) cols.push_back(3);
    if (mask.expression) cols.push_back(4);
    if (cols.empty()) throw std::invalid_argument("empty feature mask");
    return cols;
}

MultiSeries build_detection_series(const Prototype& p, const FeatureMask& mask) {
    if (p.observations.empty())
        throw std::invalid_argument("build_detection_series: empty prototype");
    const auto cols = detection_mask_columns(mask);
    static const char* kLabels[5] = {"distance", "yaw", "pitch", "roll", "expression"};

    MultiSeries s;
    s.values.resize(Eigen::Index(p.observations.size()), Eigen::Index(cols.size()));
    for (int c : cols) s.dim_labels.push_back(kLabels[c]);

    for (std::size_t t = 0; t < p.observations.size(); ++t) {
        const auto& obs = p.observations[t];
        const double full[5] = {obs.distance, obs.yaw, obs.pitch, obs.roll,
                                double(dominant_expression(obs.expression))};
        for (std::size_t c = 0; c < cols.size(); ++c)
            s.values(Eigen::Index(t), Eigen::Index(c)) = full[cols[c]];
    }
    return s;
}

ExpressionVector mean_expression(const std::vector<ExpressionVector>& faces) {
    ExpressionVector out;
    if (faces.empty()) {
        out.probs.fill(1.0 / 8.0);
        return out;
    }
    for (const auto& e : faces)
        for (std::size_t k = 0; k < 8; ++k) out.probs[k] += e.probs[k];
    for (auto& p : out.probs) p /= double(faces.size());
    return out;
}

Eigen::VectorXd quantize_descriptor(const Eigen::VectorXd& x, const Vocabulary& v) {
    if (v.top_k < 1) throw std::invalid_argument("Vocabulary.top_k must be >= 1");
    if (x.size() != v.raw_dim)
        throw std::invalid_argument("quantize_descriptor: dimension mismatch, got " +
                                    std::to_string(x.size()) + ", expected " +
                                    std::to_string(v.raw_dim));
    if (!x.allFinite()) throw std::invalid_argument("quantize_descriptor: non-finite input");
    if (v.top_k >= x.size()) return x;

    std::vector<Eigen::Index> idx(std::size_t(x.size()));
    std::iota(idx.begin(), idx.end(), 0);
    std::partial_sort(idx.begin(), idx.begin() + v.top_k, idx.end(),
                      [&](Eigen::Index a, Eigen::Index b) {
                          const double ma = std::abs(x[a]), mb = std::abs(x[b]);
                          return ma != mb ? ma > mb : a < b;
                      });
    Eigen::VectorXd out = Eigen::VectorXd::Zero(x.size());
    for (int i = 0; i < v.top_k; ++i) out[idx[std::size_t(i)]] = x[idx[std::size_t(i)]];
    return out;
}

MultiSeries build_categorization_series(const EventRecord& e, const PcaModel& pca,
                                        const Vocabulary& v, const FeatureMask& mask) {
    if (mask.kind != MaskKind::Categorization)
        throw std::invalid_argument("expected a categorization mask");
    if (!mask.environment && !mask.expression)
        throw std::invalid_argument("empty feature mask");
    if (e.frames.empty())
        throw std::invalid_argument("build_categorization_series: event has no frames");
    if (mask.environment && pca.input_dim() != v.raw_dim)
        throw std::invalid_argument("PCA input dimension does not match vocabulary");

    const Eigen::Index env_dim = mask.environment ? pca.output_dim() : 0;
    const Eigen::Index expr_dim = mask.expression ? 8 : 0;

    MultiSeries s;
    s.values.resize(Eigen::Index(e.frames.size()), env_dim + expr_dim);
    for (Eigen::Index k = 0; k < env_dim; ++k)
        s.dim_labels.push_back("env" + std::to_string(k));
    for (Eigen::Index k = 0; k < expr_dim; ++k)
        s.dim_labels.push_back("expr" + std::to_string(k + 1));

    for (std::size_t t = 0; t < e.frames.size(); ++t) {
        const auto& fr = e.frames[t];
        Eigen::Index col = 0;
        if (mask.environment) {
            Eigen::VectorXd g = project_pca(pca, quantize_descriptor(fr.scene_descriptor, v));
            s.values.row(Eigen::Index(t)).head(env_dim) = g.transpose();
            col = env_dim;
        }
        if (mask.expression) {
            std::vector<ExpressionVector> faces;
            faces.reserve(fr.faces.size());
            for (const auto& f : fr.faces) faces.push_back(f.expression);
            const ExpressionVector m = mean_expression(faces);
            for (Eigen::Index k = 0; k < 8; ++k)
                s.values(Eigen::Index(t), col + k) = m.probs[std::size_t(k)];
        }
    }
    return s;
}

}  // namespace ego
