#pragma once

#include "ego/characterization.hpp"
#include "ego/core.hpp"
#include "ego/features.hpp"
#include "ego/lstm.hpp"
#include "ego/numerics.hpp"

#include <map>

namespace ego {

// Trained interacting / non-interacting classifier over detection series.
// The standardizer covers the mask's columns in canonical order.
struct DetectorModel {
    FeatureMask mask;
    Standardizer standardizer;
    LstmParams lstm;
};

// Trained formal / informal classifier over categorization series.
struct CategorizerModel {
    FeatureMask mask;
    Vocabulary vocabulary;
    PcaModel pca;
    Standardizer standardizer;
    LstmParams lstm;
};

struct PipelineConfig {
    FeatureMask detection_mask = FeatureMask::sid(4);
    FeatureMask categorization_mask = FeatureMask::sic(3);
    double min_face_density = 0.25;
    double threshold = 0.5;
};

// Keeps events where the fraction of frames containing at least one face
// reaches min_face_density; order preserved.
std::vector<EventRecord> select_social_events(const std::vector<EventRecord>& events,
                                              double min_face_density);

MultiSeries standardized_detection_series(const DetectorModel& model, const Prototype& p);
MultiSeries standardized_categorization_series(const CategorizerModel& model,
                                               const EventRecord& e);

// Ground-truth sidecar: labels are never stored inline in dataset files.
struct DatasetLabels {
    std::map<std::string, InteractionLabel> prototypes;  // prototype_id -> label
    std::map<std::string, EventCategory> events;         // event_id -> category
    std::map<std::string, int> identities;               // prototype_id -> person (generator truth)
};

// Feature-fitting artifacts shared by both classifiers: the descriptor
// vocabulary, the PCA model over quantized descriptors, and standardizers
// over the full canonical detection (5 columns) and categorization
// (K environment + 8 expression columns) layouts.
struct FeatureArtifacts {
    Vocabulary vocabulary;
    PcaModel pca;
    Standardizer detection_standardizer;
    Standardizer categorization_standardizer;
};

FeatureArtifacts fit_feature_artifacts(const std::vector<EventRecord>& events, int top_k,
                                       double variance_threshold);

// Column indices of a categorization mask within the K+8 canonical layout.
std::vector<int> categorization_mask_columns(const FeatureMask& mask, Eigen::Index env_dim);

DetectorModel train_detector(const std::vector<EventRecord>& events,
                             const DatasetLabels& labels,
                             const FeatureArtifacts& artifacts, const FeatureMask& mask,
                             const TrainConfig& cfg);

CategorizerModel train_categorizer(const std::vector<EventRecord>& events,
                                   const DatasetLabels& labels,
                                   const FeatureArtifacts& artifacts,
                                   const FeatureMask& mask, const TrainConfig& cfg);

// Number of distinct day_index values.
std::int64_t count_days(const std::vector<EventRecord>& events);

// Detection then categorization per selected event: prototypes are classified
// interacting / non-interacting, and events with at least one interacting
// prototype are classified formal / informal. One record per interacting
// prototype, ordered by (event_id, prototype_id).
std::vector<InteractionRecord> run_pipeline(const std::vector<EventRecord>& events,
                                            const DetectorModel& detector,
                                            const CategorizerModel& categorizer,
                                            const PipelineConfig& config);

}  // namespace ego
