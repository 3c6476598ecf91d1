#include "ego/pipeline.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

namespace ego {

std::int64_t count_days(const std::vector<EventRecord>& events) {
    std::set<std::int64_t> days;
    for (const auto& ev : events) days.insert(ev.day_index);
    return std::int64_t(days.size());
}

FeatureArtifacts fit_feature_artifacts(const std::vector<EventRecord>& events, int top_k,
                                       double variance_threshold) {
    if (events.empty()) throw std::invalid_argument("fit_feature_artifacts: no events");
    FeatureArtifacts art;
    art.vocabulary.raw_dim = events.front().frames.front().scene_descriptor.size();
    art.vocabulary.top_k = std::min<int>(top_k, int(art.vocabulary.raw_dim));
    if (art.vocabulary.top_k < 1)
        throw std::invalid_argument("fit_feature_artifacts: top_k must be >= 1");

    std::size_t n_frames = 0;
    for (const auto& ev : events) n_frames += ev.frames.size();
    Eigen::MatrixXd quantized(Eigen::Index(n_frames), art.vocabulary.raw_dim);
    Eigen::Index row = 0;
    for (const auto& ev : events)
        for (const auto& fr : ev.frames)
            quantized.row(row++) =
                quantize_descriptor(fr.scene_descriptor, art.vocabulary).transpose();
    art.pca = fit_pca(quantized, variance_threshold);

    std::vector<Eigen::VectorXd> det_rows;
    const FeatureMask sid4 = FeatureMask::sid(4);
    for (const auto& ev : events)
        for (const auto& p : extract_prototypes(ev)) {
            const MultiSeries s = build_detection_series(p, sid4);
            for (Eigen::Index t = 0; t < s.length(); ++t)
                det_rows.push_back(s.values.row(t).transpose());
        }
    if (det_rows.empty())
        throw std::invalid_argument("fit_feature_artifacts: dataset has no faces");
    Eigen::MatrixXd det(Eigen::Index(det_rows.size()), 5);
    for (std::size_t i = 0; i < det_rows.size(); ++i)
        det.row(Eigen::Index(i)) = det_rows[i].transpose();
    art.detection_standardizer = fit_standardizer(det);

    const FeatureMask sic3 = FeatureMask::sic(3);
    Eigen::MatrixXd cat(Eigen::Index(n_frames), art.pca.output_dim() + 8);
    row = 0;
    for (const auto& ev : events) {
        const MultiSeries s = build_categorization_series(ev, art.pca, art.vocabulary, sic3);
        cat.middleRows(row, s.length()) = s.values;
        row += s.length();
    }
    art.categorization_standardizer = fit_standardizer(cat);
    return art;
}

std::vector<int> categorization_mask_columns(const FeatureMask& mask,
                                             Eigen::Index env_dim) {
    if (mask.kind != MaskKind::Categorization)
        throw std::invalid_argument("expected a categorization mask");
    std::vector<int> cols;
    if (mask.environment)
        for (Eigen::Index k = 0; k < env_dim; ++k) cols.push_back(int(k));
    if (mask.expression)
        for (int k = 0; k < 8; ++k) cols.push_back(int(env_dim) + k);
    if (cols.empty()) throw std::invalid_argument("empty feature mask");
    return cols;
}

DetectorModel train_detector(const std::vector<EventRecord>& events,
                             const DatasetLabels& labels,
                             const FeatureArtifacts& artifacts, const FeatureMask& mask,
                             const TrainConfig& cfg) {
    DetectorModel model;
    model.mask = mask;
    model.standardizer = artifacts.detection_standardizer.select(detection_mask_columns(mask));

    std::vector<std::pair<MultiSeries, int>> samples;
    for (const auto& ev : events)
        for (const auto& p : extract_prototypes(ev)) {
            auto it = labels.prototypes.find(p.prototype_id);
            if (it == labels.prototypes.end()) continue;
            MultiSeries s = build_detection_series(p, mask);
            s.values = apply_standardizer(model.standardizer, s.values);
            samples.emplace_back(std::move(s),
                                 it->second == InteractionLabel::Interacting ? 1 : 0);
        }
    model.lstm = train(samples, cfg).params;
    return model;
}

CategorizerModel train_categorizer(const std::vector<EventRecord>& events,
                                   const DatasetLabels& labels,
                                   const FeatureArtifacts& artifacts,
                                   const FeatureMask& mask, const TrainConfig& cfg) {
    CategorizerModel model;
    model.mask = mask;
    model.vocabulary = artifacts.vocabulary;
    model.pca = artifacts.pca;
    model.standardizer = artifacts.categorization_standardizer.select(
        categorization_mask_columns(mask, artifacts.pca.output_dim()));

    std::vector<std::pair<MultiSeries, int>> samples;
    for (const auto& ev : events) {
        auto it = labels.events.find(ev.event_id);
        if (it == labels.events.end()) continue;
        MultiSeries s = build_categorization_series(ev, model.pca, model.vocabulary, mask);
        s.values = apply_standardizer(model.standardizer, s.values);
        samples.emplace_back(std::move(s), it->second == EventCategory::Formal ? 1 : 0);
    }
    model.lstm = train(samples, cfg).params;
    return model;
}

std::vector<EventRecord> select_social_events(const std::vector<EventRecord>& events,
                                              double min_face_density) {
    if (min_face_density < 0.0 || min_face_density > 1.0)
        throw std::invalid_argument("min_face_density must be in [0, 1]");
    std::vector<EventRecord> selected;
    for (const auto& ev : events) {
        if (ev.frames.empty()) continue;
        std::size_t with_faces = 0;
        for (const auto& fr : ev.frames)
            if (!fr.faces.empty()) ++with_faces;
        const double density = double(with_faces) / double(ev.frames.size());
        if (density >= min_face_density) selected.push_back(ev);
    }
    return selected;
}

MultiSeries standardized_detection_series(const DetectorModel& model, const Prototype& p) {
    MultiSeries s = build_detection_series(p, model.mask);
    if (model.standardizer.dim() != s.dim())
        throw std::invalid_argument("detector standardizer does not match mask dimensions");
    s.values = apply_standardizer(model.standardizer, s.values);
    return s;
}

MultiSeries standardized_categorization_series(const CategorizerModel& model,
                                               const EventRecord& e) {
    MultiSeries s = build_categorization_series(e, model.pca, model.vocabulary, model.mask);
    if (model.standardizer.dim() != s.dim())
        throw std::invalid_argument(
            "categorizer standardizer does not match mask dimensions");
    s.values = apply_standardizer(model.standardizer, s.values);
    return s;
}

std::vector<InteractionRecord> run_pipeline(const std::vector<EventRecord>& events,
                                            const DetectorModel& detector,
                                            const CategorizerModel& categorizer,
                                            const PipelineConfig& config) {
    if (!(detector.mask == config.detection_mask))
        throw std::invalid_argument("detector model was built with mask " +
                                    detector.mask.name + ", config requests " +
                                    config.detection_mask.name);
    if (!(categorizer.mask == config.categorization_mask))
        throw std::invalid_argument("categorizer model was built with mask " +
                                    categorizer.mask.name + ", config requests " +
                                    config.categorization_mask.name);

    std::vector<InteractionRecord> records;
    for (const auto& ev : select_social_events(events, config.min_face_density)) {
        std::vector<const Prototype*> interacting;
        auto prototypes = extract_prototypes(ev);
        for (const auto& p : prototypes) {
            const auto series = standardized_detection_series(detector, p);
            if (classify(detector.lstm, series, config.threshold).label == 1)
                interacting.push_back(&p);
        }
        if (interacting.empty()) continue;  // nothing to categorize

        const auto cat_series = standardized_categorization_series(categorizer, ev);
        const auto cat = classify(categorizer.lstm, cat_series, config.threshold);
        const EventCategory category =
            cat.label == 1 ? EventCategory::Formal : EventCategory::Informal;

        for (const Prototype* p : interacting) {
            InteractionRecord r;
            r.prototype_id = p->prototype_id;
            r.event_id = ev.event_id;
            r.day_index = ev.day_index;
            r.category = category;
            r.frame_count = std::int64_t(p->observations.size());
            records.push_back(std::move(r));
        }
    }
    std::sort(records.begin(), records.end(),
              [](const InteractionRecord& a, const InteractionRecord& b) {
                  return std::tie(a.event_id, a.prototype_id) <
                         std::tie(b.event_id, b.prototype_id);
              });
    return records;
}

}  // namespace ego
