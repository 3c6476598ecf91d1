#pragma once

#include "ego/characterization.hpp"
#include "ego/clustering.hpp"
#include "ego/core.hpp"
#include "ego/pipeline.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace ego {

inline constexpr int kFormatVersion = 1;

// Line-delimited dataset: one JSON frame object per line, grouped by event in
// order of first appearance. Parse errors name the offending line and field.
std::vector<EventRecord> load_dataset(const std::string& path);
void save_dataset(const std::vector<EventRecord>& events, const std::string& path);

DatasetLabels load_labels(const std::string& path);
void save_labels(const DatasetLabels& labels, const std::string& path);

void save_feature_artifacts(const FeatureArtifacts& art, const std::string& path);
FeatureArtifacts load_feature_artifacts(const std::string& path);

void save_detector(const DetectorModel& model, const std::string& path);
DetectorModel load_detector(const std::string& path);

void save_categorizer(const CategorizerModel& model, const std::string& path);
CategorizerModel load_categorizer(const std::string& path);

void save_records(const std::vector<InteractionRecord>& records, const std::string& path);
std::vector<InteractionRecord> load_records(const std::string& path);

void save_clusters(const ClusterSet& clusters, const std::string& path);
ClusterSet load_clusters(const std::string& path);

void save_report(const CharacterizationReport& report, const std::string& path);
CharacterizationReport load_report(const std::string& path);

// Plain-text table, one row per report.
std::string format_report_table(const std::vector<CharacterizationReport>& reports);

// Synthetic dataset generator. Interacting prototypes face the wearer from
// close by with stable expressions; non-interacting ones look away from
// further off. An ambiguous fraction carries the class signal only in pitch,
// roll and expression, so distance+yaw alone cannot separate them. Formal and
// informal events draw scene descriptors from different fixed distributions.
struct GeneratorConfig {
    std::uint64_t seed = 0;
    int days = 10;
    int events_per_day = 20;
    int people = 8;
    int min_prototypes = 1;
    int max_prototypes = 3;
    int min_frames = 8;
    int max_frames = 20;
    double interaction_probability = 0.5;
    double formal_probability = 0.4;
    double face_presence = 0.9;

    int embedding_dim = 16;
    double embedding_noise = 0.05;
    int descriptor_dim = 128;
    double descriptor_noise = 0.3;

    // class-separation parameters
    double distance_interacting = 1.0;
    double distance_noninteracting = 2.6;
    double distance_sigma = 0.2;
    double yaw_gap = 55.0;
    double yaw_sigma = 8.0;
    double pitch_gap = 25.0;
    double pitch_sigma = 6.0;
    double roll_gap = 30.0;
    double roll_sigma = 6.0;
    double ambiguous_fraction = 0.25;
};

struct GeneratedDataset {
    std::vector<EventRecord> events;
    DatasetLabels labels;
};

// Deterministic for a given seed.
GeneratedDataset generate_dataset(const GeneratorConfig& cfg);

}  // namespace ego
