#pragma once

#include <Eigen/Dense>

#include <vector>

namespace ego {

// PCA with variance-threshold truncation. Components are orthonormal rows,
// sorted by non-increasing explained variance, with a deterministic sign
// convention: each component's largest-magnitude entry is positive.
struct PcaModel {
    Eigen::VectorXd mean;                 // D
    Eigen::MatrixXd components;           // K x D
    Eigen::VectorXd explained_variance;   // K, non-increasing
    double variance_fraction_retained = 0.0;
    double variance_threshold = 0.0;

    Eigen::Index input_dim() const { return mean.size(); }
    Eigen::Index output_dim() const { return components.rows(); }
};

// Fits PCA on the rows of `rows`, keeping the smallest K whose cumulative
// explained variance reaches `variance_threshold`. Throws on degenerate
// (zero total variance) input.
PcaModel fit_pca(const Eigen::MatrixXd& rows, double variance_threshold);

// components * (x - mean)
Eigen::VectorXd project_pca(const PcaModel& model, const Eigen::VectorXd& x);

// Per-dimension z-score transform. Standard deviations are floored so that
// constant dimensions map to 0.
struct Standardizer {
    Eigen::VectorXd mean;
    Eigen::VectorXd std_dev;  // every entry >= kStdFloor

    static constexpr double kStdFloor = 1e-8;

    Eigen::Index dim() const { return mean.size(); }
    // Restriction to a subset of dimensions, in the given order.
    Standardizer select(const std::vector<int>& dims) const;
};

Standardizer fit_standardizer(const Eigen::MatrixXd& rows);
Eigen::VectorXd apply_standardizer(const Standardizer& s, const Eigen::VectorXd& x);
Eigen::MatrixXd apply_standardizer(const Standardizer& s, const Eigen::MatrixXd& rows);

// -sum p_i ln p_i with 0 ln 0 := 0. Throws unless p is a distribution
// (entries in [0,1], sum within 1e-6 of 1).
double shannon_entropy_nat(const std::vector<double>& p);

}  // namespace ego
