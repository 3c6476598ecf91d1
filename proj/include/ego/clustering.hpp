#pragma once

#include "ego/core.hpp"

#include <map>
#include <string>
#include <vector>

namespace ego {

// Partition of prototype ids into identity clusters.
struct ClusterSet {
    std::vector<std::vector<std::string>> clusters;  // each sorted, non-empty
    std::map<std::string, std::size_t> assignment;   // prototype_id -> cluster index

    std::size_t size() const { return clusters.size(); }
};

// Mean of the per-frame embeddings, L2-normalized. Throws on missing
// embeddings or a zero mean ("degenerate descriptor").
Eigen::VectorXd prototype_descriptor(const Prototype& p);

// Average-linkage agglomerative clustering on cosine distance between
// prototype descriptors, cut at distance_threshold. Tie-breaking and cluster
// order are by lowest prototype_id, so the result is independent of input
// order.
ClusterSet cluster_prototypes(const std::vector<Prototype>& prototypes,
                              double distance_threshold);

}  // namespace ego
