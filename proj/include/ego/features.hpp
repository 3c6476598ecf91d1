#pragma once

#include "ego/core.hpp"
#include "ego/numerics.hpp"

namespace ego {

// Sparsification scheme standing in for the discrete-words descriptor
// encoding: each frame keeps its top_k largest-magnitude components.
struct Vocabulary {
    int top_k = 64;
    Eigen::Index raw_dim = 0;
};

// Lowest index (1-based) attaining the maximum probability.
int dominant_expression(const ExpressionVector& e);

// Canonical detection feature order: distance, yaw, pitch, roll,
// expression index. The mask restricts to a subset of these columns.
MultiSeries build_detection_series(const Prototype& p, const FeatureMask& mask);

// Component-wise mean of expression vectors; n = 0 yields the uniform
// distribution (1/8 everywhere).
ExpressionVector mean_expression(const std::vector<ExpressionVector>& faces);

// Keeps the top_k largest-magnitude entries of x at their values, zeroing
// all others; ties broken toward the lower index.
Eigen::VectorXd quantize_descriptor(const Eigen::VectorXd& x, const Vocabulary& v);

// Per frame: PCA-projected quantized scene descriptor (environment block)
// and/or mean expression vector, concatenated per the categorization mask.
MultiSeries build_categorization_series(const EventRecord& e, const PcaModel& pca,
                                        const Vocabulary& v, const FeatureMask& mask);

// Column indices of `mask` within the full 5-column canonical detection
// layout. Used to restrict standardizers fitted on the full layout.
std::vector<int> detection_mask_columns(const FeatureMask& mask);

}  // namespace ego
