#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "ego/clustering.hpp"

#include <algorithm>
#include <random>
#include <set>

using namespace ego;

namespace {

Prototype make_prototype(const std::string& id,
                         const std::vector<Eigen::VectorXd>& embeddings) {
    Prototype p;
    p.prototype_id = id;
    for (const auto& e : embeddings) {
        FaceObservation f;
        f.track_id = "t";
        f.embedding = e;
        p.observations.push_back(std::move(f));
    }
    return p;
}

Eigen::VectorXd unit(std::initializer_list<double> v) {
    Eigen::VectorXd x(Eigen::Index(v.size()));
    Eigen::Index i = 0;
    for (double d : v) x[i++] = d;
    return x.normalized();
}

// prototypes for `people` identities with per-identity noise
std::vector<Prototype> synthetic_prototypes(int people, int per_person, double noise,
                                            std::uint64_t seed,
                                            std::vector<int>* truth = nullptr) {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> normal(0.0, 1.0);
    const auto n_people = std::size_t(people);
    std::vector<Eigen::VectorXd> identity(n_people);
    for (auto& e : identity) {
        e.resize(16);
        for (Eigen::Index i = 0; i < 16; ++i) e[i] = normal(rng);
        e.normalize();
    }
    std::vector<Prototype> out;
    int n = 0;
    for (int person = 0; person < people; ++person) {
        for (int k = 0; k < per_person; ++k) {
            std::vector<Eigen::VectorXd> embs;
            for (int f = 0; f < 3; ++f) {
                Eigen::VectorXd e = identity[std::size_t(person)];
                for (Eigen::Index i = 0; i < 16; ++i) e[i] += noise * normal(rng);
                embs.push_back(std::move(e));
            }
            out.push_back(make_prototype("p" + std::to_string(100 + n++), embs));
            if (truth) truth->push_back(person);
        }
    }
    return out;
}

double purity(const ClusterSet& clusters, const std::vector<Prototype>& protos,
              const std::vector<int>& truth) {
    std::map<std::string, int> truth_of;
    for (std::size_t i = 0; i < protos.size(); ++i)
        truth_of[protos[i].prototype_id] = truth[i];
    std::size_t majority_sum = 0, total = 0;
    for (const auto& cluster : clusters.clusters) {
        std::map<int, std::size_t> counts;
        for (const auto& id : cluster) ++counts[truth_of.at(id)];
        std::size_t best = 0;
        for (const auto& [person, c] : counts) best = std::max(best, c);
        majority_sum += best;
        total += cluster.size();
    }
    return double(majority_sum) / double(total);
}

}  // namespace

TEST_CASE("prototype descriptor: shared embedding, degenerate case, oracle") {
    const auto e = unit({1.0, 2.0, 2.0});
    const auto p = make_prototype("p0", {e, e, e});
    CHECK((prototype_descriptor(p) - e).norm() < 1e-12);

    const auto bad = make_prototype("p1", {unit({1, 0, 0}), unit({-1, 0, 0})});
    CHECK_THROWS_WITH_AS(prototype_descriptor(bad), doctest::Contains("degenerate"),
                         std::invalid_argument);

    Prototype missing;
    missing.prototype_id = "p2";
    missing.observations.push_back(FaceObservation{});
    CHECK_THROWS_AS(prototype_descriptor(missing), std::invalid_argument);

    std::mt19937_64 rng(3);
    std::normal_distribution<double> normal(0.0, 1.0);
    std::vector<Eigen::VectorXd> embs;
    for (int i = 0; i < 5; ++i) {
        Eigen::VectorXd v(8);
        for (Eigen::Index k = 0; k < 8; ++k) v[k] = normal(rng);
        embs.push_back(std::move(v));
    }
    const auto rp = make_prototype("p3", embs);
    Eigen::VectorXd mean = Eigen::VectorXd::Zero(8);
    for (const auto& v : embs) mean += v;
    mean /= 5.0;
    CHECK((prototype_descriptor(rp) - mean.normalized()).norm() < 1e-12);
}

TEST_CASE("single prototype gives one singleton cluster") {
    const auto p = make_prototype("p0", {unit({1, 1, 0})});
    const auto cs = cluster_prototypes({p}, 0.5);
    REQUIRE(cs.size() == 1);
    CHECK(cs.clusters[0] == std::vector<std::string>{"p0"});
}

TEST_CASE("identical descriptors merge, orthogonal ones stay apart") {
    const auto a = make_prototype("a", {unit({1, 0, 0})});
    const auto b = make_prototype("b", {unit({1, 0, 0})});
    CHECK(cluster_prototypes({a, b}, 0.1).size() == 1);

    const auto c = make_prototype("c", {unit({0, 1, 0})});
    const auto cs = cluster_prototypes({a, c}, 0.5);  // cosine distance 1.0
    CHECK(cs.size() == 2);
}

TEST_CASE("clustering purity on synthetic identities") {
    std::vector<int> truth;
    const auto protos = synthetic_prototypes(5, 6, 0.05, 11, &truth);
    const auto cs = cluster_prototypes(protos, 0.5);
    CHECK(purity(cs, protos, truth) >= 0.95);
}

TEST_CASE("output is a partition of the input") {
    const auto protos = synthetic_prototypes(4, 5, 0.1, 19);
    const auto cs = cluster_prototypes(protos, 0.5);
    std::set<std::string> seen;
    std::size_t total = 0;
    for (const auto& cluster : cs.clusters) {
        CHECK(!cluster.empty());
        for (const auto& id : cluster) {
            CHECK(seen.insert(id).second);  // disjointness
            ++total;
        }
    }
    CHECK(total == protos.size());
    for (const auto& p : protos) CHECK(seen.count(p.prototype_id) == 1);
    for (const auto& [id, k] : cs.assignment)
        CHECK(std::find(cs.clusters[k].begin(), cs.clusters[k].end(), id) !=
              cs.clusters[k].end());
}

TEST_CASE("raising the threshold never increases the cluster count") {
    const auto protos = synthetic_prototypes(4, 4, 0.15, 29);
    std::size_t prev = protos.size() + 1;
    for (double threshold : {0.05, 0.1, 0.2, 0.4, 0.8, 1.2, 2.0}) {
        const auto cs = cluster_prototypes(protos, threshold);
        CHECK(cs.size() <= prev);
        prev = cs.size();
    }
}

TEST_CASE("result is invariant under input permutation") {
    auto protos = synthetic_prototypes(3, 5, 0.1, 37);
    const auto baseline = cluster_prototypes(protos, 0.5);
    std::mt19937_64 rng(41);
    for (int it = 0; it < 5; ++it) {
        std::shuffle(protos.begin(), protos.end(), rng);
        const auto cs = cluster_prototypes(protos, 0.5);
        REQUIRE(cs.size() == baseline.size());
        for (std::size_t k = 0; k < cs.size(); ++k)
            CHECK(cs.clusters[k] == baseline.clusters[k]);
    }
}
