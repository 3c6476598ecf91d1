#include "ego/clustering.hpp"

#include <algorithm>
#include <limits>
#include <stdexcept>

namespace ego {

Eigen::VectorXd prototype_descriptor(const Prototype& p) {
    if (p.observations.empty())
        throw std::invalid_argument("prototype_descriptor: empty prototype");
    Eigen::Index dim = -1;
    Eigen::VectorXd sum;
    for (const auto& obs : p.observations) {
        if (!obs.embedding)
            throw std::invalid_argument("prototype_descriptor: missing embedding in " +
                                        p.prototype_id);
        if (dim < 0) {
            dim = obs.embedding->size();
            sum = Eigen::VectorXd::Zero(dim);
        }
        if (obs.embedding->size() != dim)
            throw std::invalid_argument("prototype_descriptor: embedding dimension mismatch");
        sum += *obs.embedding;
    }
    sum /= double(p.observations.size());
    const double norm = sum.norm();
    if (norm < 1e-12)
        throw std::invalid_argument("prototype_descriptor: degenerate descriptor for " +
                                    p.prototype_id);
    return sum / norm;
}

ClusterSet cluster_prototypes(const std::vector<Prototype>& prototypes,
                              double distance_threshold) {
    if (prototypes.empty())
        throw std::invalid_argument("cluster_prototypes: no prototypes");
    if (distance_threshold <= 0.0)
        throw std::invalid_argument("cluster_prototypes: threshold must be > 0");

    // canonical order by prototype_id makes the result input-order independent
    std::vector<const Prototype*> sorted;
    sorted.reserve(prototypes.size());
    for (const auto& p : prototypes) sorted.push_back(&p);
    std::sort(sorted.begin(), sorted.end(),
              [](const Prototype* a, const Prototype* b) {
                  return a->prototype_id < b->prototype_id;
              });

    const std::size_t n = sorted.size();
    std::vector<Eigen::VectorXd> desc(n);
    for (std::size_t i = 0; i < n; ++i) desc[i] = prototype_descriptor(*sorted[i]);

    // cosine distance between unit vectors
    Eigen::MatrixXd item_dist(n, n);
    for (std::size_t i = 0; i < n; ++i) {
        item_dist(long(i), long(i)) = 0.0;
        for (std::size_t j = i + 1; j < n; ++j) {
            const double d = 1.0 - desc[i].dot(desc[j]);
            item_dist(long(i), long(j)) = d;
            item_dist(long(j), long(i)) = d;
        }
    }

    struct Cluster {
        std::vector<std::size_t> members;  // item indices, ascending
        bool alive = true;
    };
    std::vector<Cluster> cl(n);
    for (std::size_t i = 0; i < n; ++i) cl[i].members = {i};

    // average linkage maintained with the Lance-Williams update
    Eigen::MatrixXd link = item_dist;
    while (true) {
        double best = std::numeric_limits<double>::infinity();
        std::size_t bi = 0, bj = 0;
        bool found = false;
        for (std::size_t i = 0; i < n; ++i) {
            if (!cl[i].alive) continue;
            for (std::size_t j = i + 1; j < n; ++j) {
                if (!cl[j].alive) continue;
                // ties resolved toward the pair with the lowest member ids,
                // which is (i, j) order under the canonical sort
                if (link(long(i), long(j)) < best) {
                    best = link(long(i), long(j));
                    bi = i;
                    bj = j;
                    found = true;
                }
            }
        }
        if (!found || best > distance_threshold) break;
        const double ni = double(cl[bi].members.size());
        const double nj = double(cl[bj].members.size());
        for (std::size_t k = 0; k < n; ++k) {
            if (!cl[k].alive || k == bi || k == bj) continue;
            const double d =
                (ni * link(long(bi), long(k)) + nj * link(long(bj), long(k))) / (ni + nj);
            link(long(bi), long(k)) = d;
            link(long(k), long(bi)) = d;
        }
        auto& merged = cl[bi].members;
        merged.insert(merged.end(), cl[bj].members.begin(), cl[bj].members.end());
        std::sort(merged.begin(), merged.end());
        cl[bj].alive = false;
    }

    ClusterSet out;
    for (const auto& c : cl) {
        if (!c.alive) continue;
        std::vector<std::string> ids;
        ids.reserve(c.members.size());
        for (std::size_t i : c.members) ids.push_back(sorted[i]->prototype_id);
        std::sort(ids.begin(), ids.end());
        out.clusters.push_back(std::move(ids));
    }
    std::sort(out.clusters.begin(), out.clusters.end(),
              [](const auto& a, const auto& b) { return a.front() < b.front(); });
    for (std::size_t k = 0; k < out.clusters.size(); ++k)
        for (const auto& id : out.clusters[k]) out.assignment[id] = k;
    return out;
}

}  // namespace ego
