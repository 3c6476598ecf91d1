// Acceptance suite: one pass/fail line per criterion, non-zero exit on any
// failure.

#include "ego/io.hpp"
#include "ego/pipeline.hpp"
#include "oracles.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <iostream>
#include <map>
#include <random>
#include <set>
#include <sstream>

using namespace ego;

namespace {

int failures = 0;

void report(int criterion, const std::string& name, bool pass, const std::string& detail) {
    std::cout << (pass ? "PASS" : "FAIL") << " criterion " << criterion << " (" << name
              << "): " << detail << "\n";
    if (!pass) ++failures;
}

double seconds_since(std::chrono::steady_clock::time_point start) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

// --- criterion 1 & 2: metric reproduction -----------------------------------

std::vector<InteractionRecord> counted_records(int formal, int informal) {
    std::vector<InteractionRecord> records;
    for (int i = 0; i < formal + informal; ++i) {
        InteractionRecord r;
        r.prototype_id = "p" + std::to_string(i);
        r.event_id = "e" + std::to_string(i);
        r.category = i < formal ? EventCategory::Formal : EventCategory::Informal;
        r.frame_count = 10;
        records.push_back(r);
    }
    return records;
}

void criterion_metric_reproduction() {
    const auto start = std::chrono::steady_clock::now();
    const auto records = counted_records(25, 75);
    const auto [f_formal, f_informal] = frequency(records, 30);
    const auto [a_formal, a_informal] = interaction_shares(records);
    const double d = diversity(a_formal, a_informal);
    const double elapsed = seconds_since(start);

    const bool pass = std::abs(f_formal - 0.83) <= 0.01 &&
                      std::abs(f_informal - 2.50) <= 0.01 && a_formal == 0.25 &&
                      a_informal == 0.75 && std::abs(d - 0.87) <= 0.01 && elapsed < 1.0;
    std::ostringstream detail;
    detail << "F=(" << f_formal << ", " << f_informal << ") A=(" << a_formal << ", "
           << a_informal << ") D=" << d << " in " << elapsed << " s";
    report(1, "metric reproduction", pass, detail.str());
}

void criterion_balanced_diversity() {
    const double d = diversity(0.5, 0.5);
    report(2, "balanced diversity", std::abs(d - 1.0) <= 1e-12,
           "diversity(0.5, 0.5) = " + std::to_string(d));
}

// --- criterion 3: gradient suite --------------------------------------------

double gradient_max_rel_err(Eigen::Index D, Eigen::Index H, Eigen::Index T,
                            std::uint64_t seed) {
    LstmParams params = LstmParams::xavier(D, H, seed);
    std::mt19937_64 rng(seed ^ 0x9e3779b97f4a7c15ull);
    std::normal_distribution<double> normal(0.0, 1.0);
    MultiSeries series;
    series.values.resize(T, D);
    for (Eigen::Index t = 0; t < T; ++t)
        for (Eigen::Index d = 0; d < D; ++d) series.values(t, d) = normal(rng);
    for (Eigen::Index d = 0; d < D; ++d) series.dim_labels.push_back("x");
    const int label = int(seed % 2);

    const Eigen::VectorXd analytic = lstm_backward(params, series, label).flat;
    const Eigen::VectorXd theta = params.flatten();
    const double eps = 1e-5;
    double worst = 0.0;
    for (Eigen::Index i = 0; i < theta.size(); ++i) {
        Eigen::VectorXd tp = theta, tm = theta;
        tp[i] += eps;
        tm[i] -= eps;
        const double lp = lstm_backward(LstmParams::unflatten(tp, D, H), series, label).loss;
        const double lm = lstm_backward(LstmParams::unflatten(tm, D, H), series, label).loss;
        const double numeric = (lp - lm) / (2.0 * eps);
        const double a = analytic[i];
        worst = std::max(worst, std::abs(a - numeric) /
                                    std::max({std::abs(a), std::abs(numeric), 1e-4}));
    }
    return worst;
}

void criterion_gradient_suite() {
    const auto start = std::chrono::steady_clock::now();
    std::mt19937_64 rng(2024);
    double worst = 0.0;
    const int instances = 100;
    for (int it = 0; it < instances; ++it) {
        const Eigen::Index D = 1 + Eigen::Index(rng() % 5);
        const Eigen::Index H = 1 + Eigen::Index(rng() % 8);
        const Eigen::Index T = 1 + Eigen::Index(rng() % 12);
        worst = std::max(worst, gradient_max_rel_err(D, H, T, rng()));
    }
    const double elapsed = seconds_since(start);
    std::ostringstream detail;
    detail << instances << " instances, max relative error " << worst << " in " << elapsed
           << " s";
    report(3, "LSTM gradient suite", worst < 1e-5 && elapsed < 60.0, detail.str());
}

// --- criterion 4: PCA oracle equivalence ------------------------------------

void criterion_pca_oracle() {
    bool pass = true;
    double worst = 0.0;
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        const Eigen::MatrixXd rows = test_oracles::random_matrix(50, 10, 9000 + seed);
        const auto model = fit_pca(rows, 0.95);
        const auto oracle = test_oracles::oracle_pca(rows);
        const double total = oracle.evals.sum();
        const Eigen::Index k = model.output_dim();
        if (oracle.evals.head(k).sum() / total < 0.95) pass = false;
        if (k > 1 && oracle.evals.head(k - 1).sum() / total >= 0.95) pass = false;
        for (Eigen::Index i = 0; i < k; ++i) {
            worst = std::max(worst,
                             std::abs(model.explained_variance[i] - oracle.evals[i]));
            const Eigen::VectorXd a = model.components.row(i).transpose();
            const Eigen::VectorXd b = oracle.evecs.col(i);
            worst = std::max(worst, std::min((a - b).norm(), (a + b).norm()));
        }
    }
    pass = pass && worst < 1e-8;
    std::ostringstream detail;
    detail << "20 matrices, max deviation from Jacobi oracle " << worst;
    report(4, "PCA oracle equivalence", pass, detail.str());
}

// --- criterion 5: end-to-end synthetic run ----------------------------------

struct EndToEnd {
    GeneratedDataset data;
    std::vector<EventRecord> train_events, test_events;
    FeatureArtifacts artifacts;
    DetectorModel sid4, sid1;
    CategorizerModel sic3;
    std::vector<InteractionRecord> records;
    double sid4_acc = 0.0, sid1_acc = 0.0, sic3_acc = 0.0;
};

double detector_accuracy(const DetectorModel& model, const std::vector<EventRecord>& events,
                         const DatasetLabels& labels) {
    long correct = 0, total = 0;
    for (const auto& ev : events)
        for (const auto& p : extract_prototypes(ev)) {
            const auto it = labels.prototypes.find(p.prototype_id);
            if (it == labels.prototypes.end()) continue;
            const auto s = standardized_detection_series(model, p);
            const int predicted = classify(model.lstm, s).label;
            const int truth = it->second == InteractionLabel::Interacting ? 1 : 0;
            if (predicted == truth) ++correct;
            ++total;
        }
    return total == 0 ? 0.0 : double(correct) / double(total);
}

double categorizer_accuracy(const CategorizerModel& model,
                            const std::vector<EventRecord>& events,
                            const DatasetLabels& labels) {
    long correct = 0, total = 0;
    for (const auto& ev : events) {
        const auto it = labels.events.find(ev.event_id);
        if (it == labels.events.end()) continue;
        const auto s = standardized_categorization_series(model, ev);
        const int predicted = classify(model.lstm, s).label;
        const int truth = it->second == EventCategory::Formal ? 1 : 0;
        if (predicted == truth) ++correct;
        ++total;
    }
    return total == 0 ? 0.0 : double(correct) / double(total);
}

EndToEnd criterion_end_to_end() {
    const auto start = std::chrono::steady_clock::now();
    EndToEnd e2e;

    GeneratorConfig gen;
    gen.seed = 20240817;
    gen.days = 10;
    gen.events_per_day = 20;
    gen.people = 8;
    e2e.data = generate_dataset(gen);

    std::vector<std::size_t> order(e2e.data.events.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::mt19937_64 rng(42);
    std::shuffle(order.begin(), order.end(), rng);
    const std::size_t n_train = order.size() * 7 / 10;
    for (std::size_t i = 0; i < order.size(); ++i)
        (i < n_train ? e2e.train_events : e2e.test_events)
            .push_back(e2e.data.events[order[i]]);

    e2e.artifacts = fit_feature_artifacts(e2e.train_events, 64, 0.95);

    TrainConfig cfg;
    cfg.seed = 7;
    cfg.epochs = 40;
    cfg.hidden_dim = 32;
    e2e.sid4 = train_detector(e2e.train_events, e2e.data.labels, e2e.artifacts,
                              FeatureMask::sid(4), cfg);
    e2e.sid1 = train_detector(e2e.train_events, e2e.data.labels, e2e.artifacts,
                              FeatureMask::sid(1), cfg);
    e2e.sic3 = train_categorizer(e2e.train_events, e2e.data.labels, e2e.artifacts,
                                 FeatureMask::sic(3), cfg);

    e2e.sid4_acc = detector_accuracy(e2e.sid4, e2e.test_events, e2e.data.labels);
    e2e.sid1_acc = detector_accuracy(e2e.sid1, e2e.test_events, e2e.data.labels);
    e2e.sic3_acc = categorizer_accuracy(e2e.sic3, e2e.test_events, e2e.data.labels);

    PipelineConfig pcfg;
    e2e.records = run_pipeline(e2e.test_events, e2e.sid4, e2e.sic3, pcfg);

    const double elapsed = seconds_since(start);
    const bool pass = e2e.sid4_acc >= 0.90 && e2e.sic3_acc >= 0.90 &&
                      e2e.sid1_acc <= e2e.sid4_acc && elapsed < 600.0;
    std::ostringstream detail;
    detail << "SID4 acc " << e2e.sid4_acc << ", SID1 acc " << e2e.sid1_acc << ", SIC3 acc "
           << e2e.sic3_acc << " in " << elapsed << " s";
    report(5, "end-to-end synthetic run", pass, detail.str());
    return e2e;
}

// --- criterion 6: clustering ------------------------------------------------

ClusterSet criterion_clustering(const EndToEnd& e2e) {
    std::vector<Prototype> interacting;
    for (const auto& ev : e2e.data.events)
        for (auto& p : extract_prototypes(ev))
            if (e2e.data.labels.prototypes.at(p.prototype_id) ==
                InteractionLabel::Interacting)
                interacting.push_back(std::move(p));

    const auto clusters = cluster_prototypes(interacting, 0.5);

    // purity against generator identities
    std::size_t majority = 0, total = 0;
    for (const auto& cluster : clusters.clusters) {
        std::map<int, std::size_t> counts;
        for (const auto& id : cluster) ++counts[e2e.data.labels.identities.at(id)];
        std::size_t best = 0;
        for (const auto& [person, c] : counts) best = std::max(best, c);
        majority += best;
        total += cluster.size();
    }
    const double purity = double(majority) / double(total);

    // partition
    bool partition = total == interacting.size();
    std::set<std::string> seen;
    for (const auto& cluster : clusters.clusters) {
        if (cluster.empty()) partition = false;
        for (const auto& id : cluster)
            if (!seen.insert(id).second) partition = false;
    }
    for (const auto& p : interacting)
        if (!seen.count(p.prototype_id)) partition = false;

    // monotonicity
    bool monotone = true;
    std::size_t prev = interacting.size() + 1;
    for (double threshold : {0.05, 0.2, 0.5, 1.0, 1.8}) {
        const std::size_t k = cluster_prototypes(interacting, threshold).size();
        if (k > prev) monotone = false;
        prev = k;
    }

    // order invariance
    std::mt19937_64 rng(99);
    std::shuffle(interacting.begin(), interacting.end(), rng);
    const auto shuffled = cluster_prototypes(interacting, 0.5);
    const bool invariant = shuffled.clusters == clusters.clusters;

    const bool pass = purity >= 0.95 && partition && monotone && invariant;
    std::ostringstream detail;
    detail << clusters.size() << " clusters over " << total << " prototypes, purity "
           << purity << ", partition " << partition << ", monotone " << monotone
           << ", order-invariant " << invariant;
    report(6, "clustering", pass, detail.str());
    return clusters;
}

// --- criterion 7: consistency -----------------------------------------------

void criterion_consistency(const EndToEnd& e2e, const ClusterSet& clusters) {
    bool pass = true;
    std::ostringstream detail;

    // generic report equals the merge of all person-scope reports
    const auto day_count = count_days(e2e.test_events);
    const auto generic =
        characterize(e2e.records, day_count, 0.5, ReportScope::Generic);
    std::int64_t person_total = 0;
    for (std::size_t k = 0; k < clusters.size(); ++k) {
        bool any = false;
        for (const auto& r : e2e.records) {
            const auto it = clusters.assignment.find(r.prototype_id);
            if (it != clusters.assignment.end() && it->second == k) any = true;
        }
        if (!any) continue;
        person_total +=
            characterize(e2e.records, day_count, 0.5, ReportScope::Person, &clusters, k)
                .n_interactions;
    }
    if (person_total != generic.n_interactions) pass = false;
    detail << "person-scope sum " << person_total << " vs generic "
           << generic.n_interactions;

    // mask restriction: SID1 series equals the column restriction of SID4
    const auto protos = extract_prototypes(e2e.data.events.front());
    if (!protos.empty()) {
        const auto full = build_detection_series(protos[0], FeatureMask::sid(4));
        for (int n = 1; n <= 3; ++n) {
            const auto mask = FeatureMask::sid(n);
            const auto restricted = build_detection_series(protos[0], mask);
            const auto cols = detection_mask_columns(mask);
            for (std::size_t c = 0; c < cols.size(); ++c)
                if ((restricted.values.col(Eigen::Index(c)) - full.values.col(cols[c]))
                        .cwiseAbs()
                        .maxCoeff() != 0.0)
                    pass = false;
        }
    }

    // dataset round trip
    const auto tmp = (std::filesystem::temp_directory_path() / "ego_acceptance.jsonl");
    save_dataset(e2e.data.events, tmp.string());
    const auto reloaded = load_dataset(tmp.string());
    std::remove(tmp.string().c_str());
    bool roundtrip = reloaded.size() == e2e.data.events.size();
    if (roundtrip)
        for (std::size_t i = 0; i < reloaded.size(); ++i) {
            const auto& a = e2e.data.events[i];
            const auto& b = reloaded[i];
            if (a.event_id != b.event_id || a.frames.size() != b.frames.size())
                roundtrip = false;
            else
                for (std::size_t t = 0; t < a.frames.size(); ++t) {
                    if ((a.frames[t].scene_descriptor.array() !=
                         b.frames[t].scene_descriptor.array())
                            .any())
                        roundtrip = false;
                    if (a.frames[t].faces.size() != b.frames[t].faces.size())
                        roundtrip = false;
                    else
                        for (std::size_t f = 0; f < a.frames[t].faces.size(); ++f)
                            if (a.frames[t].faces[f].yaw != b.frames[t].faces[f].yaw ||
                                a.frames[t].faces[f].expression.probs !=
                                    b.frames[t].faces[f].expression.probs)
                                roundtrip = false;
                }
        }
    if (!roundtrip) pass = false;
    detail << ", round-trip " << roundtrip;

    // determinism: generator and pipeline reruns are identical
    GeneratorConfig gen;
    gen.seed = 20240817;
    gen.days = 10;
    gen.events_per_day = 20;
    gen.people = 8;
    const auto regen = generate_dataset(gen);
    bool deterministic = regen.events.size() == e2e.data.events.size();
    if (deterministic)
        for (std::size_t i = 0; i < regen.events.size(); ++i)
            for (std::size_t t = 0; t < regen.events[i].frames.size(); ++t)
                if ((regen.events[i].frames[t].scene_descriptor.array() !=
                     e2e.data.events[i].frames[t].scene_descriptor.array())
                        .any())
                    deterministic = false;
    PipelineConfig pcfg;
    const auto rerun = run_pipeline(e2e.test_events, e2e.sid4, e2e.sic3, pcfg);
    if (rerun.size() != e2e.records.size()) deterministic = false;
    else
        for (std::size_t i = 0; i < rerun.size(); ++i)
            if (rerun[i].prototype_id != e2e.records[i].prototype_id ||
                rerun[i].category != e2e.records[i].category)
                deterministic = false;
    if (!deterministic) pass = false;
    detail << ", determinism " << deterministic;

    report(7, "consistency", pass, detail.str());
}

}  // namespace

int main() {
    criterion_metric_reproduction();
    criterion_balanced_diversity();
    criterion_gradient_suite();
    criterion_pca_oracle();
    const auto e2e = criterion_end_to_end();
    const auto clusters = criterion_clustering(e2e);
    criterion_consistency(e2e, clusters);

    if (failures > 0) {
        std::cout << failures << " criterion(s) failed\n";
        return 1;
    }
    std::cout << "all acceptance criteria passed\n";
    return 0;
}
