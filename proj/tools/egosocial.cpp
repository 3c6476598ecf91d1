#include "ego/io.hpp"

#include <CLI11.hpp>

#include <iostream>
#include <set>

namespace {

using namespace ego;

int cmd_validate(const std::string& input) {
    const auto events = load_dataset(input);
    const auto report = validate_dataset(events);
    for (const auto& v : report.violations) {
        std::cout << "violation: event=" << v.event_id;
        if (v.frame_index >= 0) std::cout << " frame=" << v.frame_index;
        if (!v.track_id.empty()) std::cout << " track=" << v.track_id;
        std::cout << " " << v.message << "\n";
    }
    if (!report.ok()) {
        std::cerr << report.violations.size() << " violation(s) found\n";
        return 1;
    }
    std::cout << "dataset OK: " << events.size() << " events\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Social interaction detection, categorization and characterization "
                 "from per-frame egocentric feature streams"};
    app.require_subcommand(1);

    std::string input, labels_path, output, features_path, detector_path,
        categorizer_path, records_path, clusters_path;
    std::uint64_t seed = 0;
    int sid = 4, sic = 3, epochs = 60, top_k = 64;
    Eigen::Index hidden_dim = 32;
    double learning_rate = 1e-2, variance_threshold = 0.95, threshold = 0.5,
           min_face_density = 0.25, cluster_threshold = 0.5, frame_period = 0.5;
    std::int64_t person = -1;
    GeneratorConfig gen_cfg;

    auto* validate = app.add_subcommand("validate", "Check a dataset for violations");
    validate->add_option("--input", input, "dataset file")->required();

    auto* generate = app.add_subcommand("generate", "Generate a synthetic dataset");
    generate->add_option("--output", output, "dataset file to write")->required();
    generate->add_option("--labels", labels_path, "ground-truth sidecar to write")
        ->required();
    generate->add_option("--seed", gen_cfg.seed, "RNG seed");
    generate->add_option("--days", gen_cfg.days, "number of days");
    generate->add_option("--events-per-day", gen_cfg.events_per_day, "events per day");
    generate->add_option("--people", gen_cfg.people, "number of identities");
    generate->add_option("--interaction-probability", gen_cfg.interaction_probability,
                         "probability a prototype is interacting");
    generate->add_option("--formal-probability", gen_cfg.formal_probability,
                         "probability an event is formal");
    generate->add_option("--descriptor-dim", gen_cfg.descriptor_dim,
                         "scene descriptor dimension");
    generate->add_option("--embedding-dim", gen_cfg.embedding_dim,
                         "face embedding dimension");

    auto* fit = app.add_subcommand("fit-features",
                                   "Fit vocabulary, PCA and standardizers on a dataset");
    fit->add_option("--input", input, "training dataset")->required();
    fit->add_option("--output", output, "feature artifacts file to write")->required();
    fit->add_option("--top-k", top_k, "descriptor words kept per frame");
    fit->add_option("--variance-threshold", variance_threshold,
                    "PCA retained variance fraction");

    auto add_train_opts = [&](CLI::App* cmd) {
        cmd->add_option("--input", input, "training dataset")->required();
        cmd->add_option("--labels", labels_path, "ground-truth sidecar")->required();
        cmd->add_option("--features", features_path, "feature artifacts file")->required();
        cmd->add_option("--output", output, "model file to write")->required();
        cmd->add_option("--seed", seed, "RNG seed");
        cmd->add_option("--epochs", epochs, "training epochs");
        cmd->add_option("--hidden-dim", hidden_dim, "LSTM hidden units");
        cmd->add_option("--learning-rate", learning_rate, "Adam step size");
    };
    auto* train_det = app.add_subcommand("train-detector",
                                         "Train the interacting/non-interacting classifier");
    add_train_opts(train_det);
    train_det->add_option("--sid", sid, "detection feature setting (1..4)");

    auto* train_cat = app.add_subcommand("train-categorizer",
                                         "Train the formal/informal classifier");
    add_train_opts(train_cat);
    train_cat->add_option("--sic", sic, "categorization feature setting (1..3)");

    auto* run = app.add_subcommand("run", "Run detection and categorization");
    run->add_option("--input", input, "dataset file")->required();
    run->add_option("--detector", detector_path, "detector model file")->required();
    run->add_option("--categorizer", categorizer_path, "categorizer model file")
        ->required();
    run->add_option("--output", output, "interaction records file to write")->required();
    run->add_option("--sid", sid, "expected detection setting (1..4)");
    run->add_option("--sic", sic, "expected categorization setting (1..3)");
    run->add_option("--threshold", threshold, "classification threshold");
    run->add_option("--min-face-density", min_face_density,
                    "minimum fraction of frames with faces");

    auto* cluster = app.add_subcommand("cluster",
                                       "Cluster interacting prototypes by identity");
    cluster->add_option("--input", input, "dataset file")->required();
    cluster->add_option("--records", records_path, "interaction records file")->required();
    cluster->add_option("--output", output, "cluster file to write")->required();
    cluster->add_option("--cluster-threshold", cluster_threshold,
                        "cosine-distance cut for average linkage");

    auto* characterize_cmd =
        app.add_subcommand("characterize", "Compute frequency/diversity/duration metrics");
    characterize_cmd->add_option("--records", records_path, "interaction records file")
        ->required();
    characterize_cmd->add_option("--output", output, "report file to write")->required();
    characterize_cmd->add_option("--clusters", clusters_path,
                                 "cluster file (required for --person)");
    characterize_cmd->add_option("--person", person, "cluster index for person scope");
    characterize_cmd->add_option("--frame-period", frame_period,
                                 "capture period per frame (time units)");
    std::int64_t days_override = -1;
    characterize_cmd->add_option(
        "--days", days_override,
        "observation days (default: distinct day indices in the records)");

    auto* report_cmd = app.add_subcommand("report", "Print reports as a plain-text table");
    std::vector<std::string> report_paths;
    report_cmd->add_option("--report", report_paths, "report file (repeatable)")
        ->required();

    CLI11_PARSE(app, argc, argv);

    try {
        using namespace ego;
        if (validate->parsed()) return cmd_validate(input);

        if (generate->parsed()) {
            const auto data = generate_dataset(gen_cfg);
            save_dataset(data.events, output);
            save_labels(data.labels, labels_path);
            std::cout << "wrote " << data.events.size() << " events to " << output << "\n";
            return 0;
        }

        if (fit->parsed()) {
            const auto events = load_dataset(input);
            const auto art = fit_feature_artifacts(events, top_k, variance_threshold);
            save_feature_artifacts(art, output);
            std::cout << "PCA kept " << art.pca.output_dim() << " of "
                      << art.pca.input_dim() << " dimensions ("
                      << art.pca.variance_fraction_retained << " variance)\n";
            return 0;
        }

        if (train_det->parsed() || train_cat->parsed()) {
            const auto events = load_dataset(input);
            const auto labels = load_labels(labels_path);
            const auto art = load_feature_artifacts(features_path);
            TrainConfig cfg;
            cfg.seed = seed;
            cfg.epochs = epochs;
            cfg.hidden_dim = hidden_dim;
            cfg.learning_rate = learning_rate;
            if (train_det->parsed()) {
                const auto model =
                    train_detector(events, labels, art, FeatureMask::sid(sid), cfg);
                save_detector(model, output);
            } else {
                const auto model =
                    train_categorizer(events, labels, art, FeatureMask::sic(sic), cfg);
                save_categorizer(model, output);
            }
            std::cout << "model written to " << output << "\n";
            return 0;
        }

        if (run->parsed()) {
            const auto events = load_dataset(input);
            PipelineConfig cfg;
            cfg.detection_mask = FeatureMask::sid(sid);
            cfg.categorization_mask = FeatureMask::sic(sic);
            cfg.threshold = threshold;
            cfg.min_face_density = min_face_density;
            const auto records = run_pipeline(events, load_detector(detector_path),
                                              load_categorizer(categorizer_path), cfg);
            save_records(records, output);
            std::cout << records.size() << " interaction record(s) written to " << output
                      << "\n";
            return 0;
        }

        if (cluster->parsed()) {
            const auto events = load_dataset(input);
            auto records = load_records(records_path);
            std::map<std::string, Prototype> by_id;
            for (const auto& ev : events)
                for (auto& p : extract_prototypes(ev))
                    by_id.emplace(p.prototype_id, std::move(p));
            std::vector<Prototype> interacting;
            for (const auto& r : records) {
                auto it = by_id.find(r.prototype_id);
                if (it == by_id.end())
                    throw std::runtime_error("record references unknown prototype " +
                                             r.prototype_id);
                interacting.push_back(it->second);
            }
            const auto clusters = cluster_prototypes(interacting, cluster_threshold);
            save_clusters(clusters, output);
            for (auto& r : records) r.person_id = clusters.assignment.at(r.prototype_id);
            save_records(records, records_path);
            std::cout << clusters.size() << " cluster(s) written to " << output << "\n";
            return 0;
        }

        if (characterize_cmd->parsed()) {
            const auto records = load_records(records_path);
            std::set<std::int64_t> days;
            for (const auto& r : records) days.insert(r.day_index);
            const auto day_count =
                days_override > 0 ? days_override : std::int64_t(days.size());
            CharacterizationReport rep;
            if (person >= 0) {
                if (clusters_path.empty())
                    throw std::runtime_error("--person requires --clusters");
                const auto clusters = load_clusters(clusters_path);
                rep = characterize(records, day_count, frame_period, ReportScope::Person,
                                   &clusters, std::size_t(person));
            } else {
                rep = characterize(records, day_count, frame_period, ReportScope::Generic);
            }
            save_report(rep, output);
            std::cout << format_report_table({rep});
            return 0;
        }

        if (report_cmd->parsed()) {
            std::vector<CharacterizationReport> reports;
            for (const auto& p : report_paths) reports.push_back(load_report(p));
            std::cout << format_report_table(reports);
            return 0;
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
