#include "ego/numerics.hpp"

#include <Eigen/SVD>

#include <cmath>
#include <stdexcept>

namespace ego {

PcaModel fit_pca(const Eigen::MatrixXd& rows, double variance_threshold) {
    if (variance_threshold <= 0.0 || variance_threshold > 1.0)
        throw std::invalid_argument("variance_threshold must be in (0, 1]");
    if (rows.rows() < 2) throw std::invalid_argument("fit_pca needs at least 2 rows");
    if (!rows.allFinite()) throw std::invalid_argument("fit_pca: non-finite input");

    const Eigen::Index n = rows.rows();
    const Eigen::Index d = rows.cols();

    PcaModel model;
    model.variance_threshold = variance_threshold;
    model.mean = rows.colwise().mean();
    Eigen::MatrixXd centered = rows.rowwise() - model.mean.transpose();

    Eigen::BDCSVD<Eigen::MatrixXd> svd(centered, Eigen::ComputeThinU | Eigen::ComputeThinV);
    const Eigen::VectorXd& sv = svd.singularValues();
    Eigen::VectorXd variances = sv.array().square() / double(n - 1);
    const double total = variances.sum();
    if (total <= 0.0) throw std::invalid_argument("fit_pca: zero total variance");

    Eigen::Index k = 0;
    double cumulative = 0.0;
    while (k < variances.size()) {
        cumulative += variances[k];
        ++k;
        if (cumulative / total >= variance_threshold) break;
    }

    model.components = svd.matrixV().leftCols(k).transpose();
    model.explained_variance = variances.head(k);
    model.variance_fraction_retained = cumulative / total;

    // sign convention: largest-magnitude entry of each component positive
    for (Eigen::Index i = 0; i < k; ++i) {
        Eigen::Index arg = 0;
        model.components.row(i).cwiseAbs().maxCoeff(&arg);
        if (model.components(i, arg) < 0.0) model.components.row(i) *= -1.0;
    }
    (void)d;
    return model;
}

Eigen::VectorXd project_pca(const PcaModel& model, const Eigen::VectorXd& x) {
    if (x.size() != model.input_dim())
        throw std::invalid_argument("project_pca: dimension mismatch, got " +
                                    std::to_string(x.size()) + ", expected " +
                                    std::to_string(model.input_dim()));
    return model.components * (x - model.mean);
}

Standardizer fit_standardizer(const Eigen::MatrixXd& rows) {
    if (rows.rows() < 1) throw std::invalid_argument("fit_standardizer: empty input");
    Standardizer s;
    s.mean = rows.colwise().mean();
    Eigen::MatrixXd centered = rows.rowwise() - s.mean.transpose();
    const double n = double(rows.rows());
    s.std_dev = (centered.array().square().colwise().sum() / n).sqrt();
    s.std_dev = s.std_dev.cwiseMax(Standardizer::kStdFloor);
    return s;
}

Standardizer Standardizer::select(const std::vector<int>& dims) const {
    Standardizer out;
    out.mean.resize(Eigen::Index(dims.size()));
    out.std_dev.resize(Eigen::Index(dims.size()));
    for (std::size_t i = 0; i < dims.size(); ++i) {
        if (dims[i] < 0 || dims[i] >= mean.size())
            throw std::invalid_argument("Standardizer::select: index out of range");
        out.mean[Eigen::Index(i)] = mean[dims[i]];
        out.std_dev[Eigen::Index(i)] = std_dev[dims[i]];
    }
    return out;
}

Eigen::VectorXd apply_standardizer(const Standardizer& s, const Eigen::VectorXd& x) {
    if (x.size() != s.dim())
        throw std::invalid_argument("apply_standardizer: dimension mismatch");
    Eigen::VectorXd z = (x - s.mean).cwiseQuotient(s.std_dev);
    // constant dimensions (std at floor) map to exactly 0
    for (Eigen::Index i = 0; i < z.size(); ++i)
        if (s.std_dev[i] <= Standardizer::kStdFloor) z[i] = 0.0;
    return z;
}

Eigen::MatrixXd apply_standardizer(const Standardizer& s, const Eigen::MatrixXd& rows) {
    Eigen::MatrixXd out(rows.rows(), rows.cols());
    for (Eigen::Index r = 0; r < rows.rows(); ++r)
        out.row(r) = apply_standardizer(s, Eigen::VectorXd(rows.row(r))).transpose();
    return out;
}

double shannon_entropy_nat(const std::vector<double>& p) {
    double sum = 0.0;
    for (double v : p) {
        if (!std::isfinite(v) || v < 0.0 || v > 1.0)
            throw std::invalid_argument("shannon_entropy_nat: entry outside [0,1]");
        sum += v;
    }
    if (std::abs(sum - 1.0) > 1e-6)
        throw std::invalid_argument("shannon_entropy_nat: probabilities sum to " +
                                    std::to_string(sum));
    double h = 0.0;
    for (double v : p)
        if (v > 0.0) h -= v * std::log(v);
    return h < 0.0 ? 0.0 : h;
}

}  // namespace ego
