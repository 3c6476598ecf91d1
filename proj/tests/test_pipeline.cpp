#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "ego/io.hpp"
#include "ego/pipeline.hpp"

#include <random>

using namespace ego;

namespace {

EventRecord event_with_face_pattern(const std::string& id,
                                    const std::vector<bool>& has_face) {
    EventRecord ev;
    ev.event_id = id;
    for (std::size_t t = 0; t < has_face.size(); ++t) {
        Frame fr;
        fr.frame_index = std::int64_t(t);
        fr.scene_descriptor = Eigen::VectorXd::Zero(4);
        if (has_face[t]) {
            FaceObservation f;
            f.track_id = "t0";
            f.expression.probs.fill(0.125);
            fr.faces.push_back(std::move(f));
        }
        ev.frames.push_back(std::move(fr));
    }
    return ev;
}

struct TrainedModels {
    DetectorModel detector;
    CategorizerModel categorizer;
    GeneratedDataset data;
};

TrainedModels small_trained_setup(std::uint64_t seed) {
    GeneratorConfig gen;
    gen.seed = seed;
    gen.days = 3;
    gen.events_per_day = 8;
    gen.people = 3;
    gen.descriptor_dim = 24;
    gen.embedding_dim = 8;
    TrainedModels out;
    out.data = generate_dataset(gen);

    const auto art = fit_feature_artifacts(out.data.events, 12, 0.95);
    TrainConfig cfg;
    cfg.epochs = 20;
    cfg.hidden_dim = 8;
    cfg.seed = seed;
    out.detector =
        train_detector(out.data.events, out.data.labels, art, FeatureMask::sid(4), cfg);
    out.categorizer =
        train_categorizer(out.data.events, out.data.labels, art, FeatureMask::sic(3), cfg);
    return out;
}

}  // namespace

TEST_CASE("select_social_events: threshold 0 keeps all, faceless events drop") {
    std::vector<EventRecord> events{
        event_with_face_pattern("a", {true, true, false, false}),
        event_with_face_pattern("b", {false, false, false, false}),
        event_with_face_pattern("c", {true, true, true, true}),
    };
    CHECK(select_social_events(events, 0.0).size() == 3);
    const auto kept = select_social_events(events, 0.25);
    REQUIRE(kept.size() == 2);
    CHECK(kept[0].event_id == "a");
    CHECK(kept[1].event_id == "c");
    CHECK(select_social_events(events, 0.75).size() == 1);
}

TEST_CASE("select_social_events matches a counting oracle on mixed data") {
    std::mt19937_64 rng(5);
    std::vector<EventRecord> events;
    for (int i = 0; i < 30; ++i) {
        std::vector<bool> pattern;
        for (int t = 0; t < 8; ++t) pattern.push_back(rng() % 3 != 0);
        events.push_back(event_with_face_pattern("e" + std::to_string(i), pattern));
    }
    for (double threshold : {0.1, 0.5, 0.9}) {
        const auto kept = select_social_events(events, threshold);
        std::vector<std::string> expected;
        for (const auto& ev : events) {
            int with = 0;
            for (const auto& fr : ev.frames)
                if (!fr.faces.empty()) ++with;
            if (double(with) / double(ev.frames.size()) >= threshold)
                expected.push_back(ev.event_id);
        }
        REQUIRE(kept.size() == expected.size());
        for (std::size_t i = 0; i < kept.size(); ++i)
            CHECK(kept[i].event_id == expected[i]);
    }
}

TEST_CASE("pipeline records match a stage-by-stage oracle run") {
    const auto setup = small_trained_setup(77);
    PipelineConfig cfg;
    const auto records =
        run_pipeline(setup.data.events, setup.detector, setup.categorizer, cfg);

    // hand orchestration of the same stages
    std::vector<InteractionRecord> expected;
    for (const auto& ev : select_social_events(setup.data.events, cfg.min_face_density)) {
        std::vector<const Prototype*> interacting;
        const auto protos = extract_prototypes(ev);
        for (const auto& p : protos) {
            const auto s = standardized_detection_series(setup.detector, p);
            if (classify(setup.detector.lstm, s, cfg.threshold).label == 1)
                interacting.push_back(&p);
        }
        if (interacting.empty()) continue;
        const auto cs = standardized_categorization_series(setup.categorizer, ev);
        const auto category =
            classify(setup.categorizer.lstm, cs, cfg.threshold).label == 1
                ? EventCategory::Formal
                : EventCategory::Informal;
        for (const auto* p : interacting)
            expected.push_back({p->prototype_id, ev.event_id, ev.day_index, category,
                                std::int64_t(p->observations.size()), std::nullopt});
    }
    std::sort(expected.begin(), expected.end(),
              [](const auto& a, const auto& b) {
                  return std::tie(a.event_id, a.prototype_id) <
                         std::tie(b.event_id, b.prototype_id);
              });

    REQUIRE(records.size() == expected.size());
    CHECK(!records.empty());
    for (std::size_t i = 0; i < records.size(); ++i) {
        CHECK(records[i].prototype_id == expected[i].prototype_id);
        CHECK(records[i].event_id == expected[i].event_id);
        CHECK(records[i].day_index == expected[i].day_index);
        CHECK(records[i].category == expected[i].category);
        CHECK(records[i].frame_count == expected[i].frame_count);
    }
}

TEST_CASE("events with no interacting prototype contribute nothing") {
    const auto setup = small_trained_setup(81);
    PipelineConfig cfg;
    const auto records =
        run_pipeline(setup.data.events, setup.detector, setup.categorizer, cfg);

    // count interacting-classified prototypes directly
    std::size_t interacting = 0;
    for (const auto& ev : select_social_events(setup.data.events, cfg.min_face_density))
        for (const auto& p : extract_prototypes(ev)) {
            const auto s = standardized_detection_series(setup.detector, p);
            if (classify(setup.detector.lstm, s, cfg.threshold).label == 1) ++interacting;
        }
    CHECK(records.size() == interacting);
}

TEST_CASE("pipeline is deterministic across repeated runs") {
    const auto setup = small_trained_setup(85);
    PipelineConfig cfg;
    const auto a = run_pipeline(setup.data.events, setup.detector, setup.categorizer, cfg);
    const auto b = run_pipeline(setup.data.events, setup.detector, setup.categorizer, cfg);
    REQUIRE(a.size() == b.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
        CHECK(a[i].prototype_id == b[i].prototype_id);
        CHECK(a[i].category == b[i].category);
    }
}

TEST_CASE("feature-mask mismatch between model and config is an error") {
    const auto setup = small_trained_setup(89);
    PipelineConfig cfg;
    cfg.detection_mask = FeatureMask::sid(1);  // detector was trained with SID4
    CHECK_THROWS_WITH_AS(
        run_pipeline(setup.data.events, setup.detector, setup.categorizer, cfg),
        doctest::Contains("mask"), std::invalid_argument);

    PipelineConfig cfg2;
    cfg2.categorization_mask = FeatureMask::sic(1);
    CHECK_THROWS_AS(
        run_pipeline(setup.data.events, setup.detector, setup.categorizer, cfg2),
        std::invalid_argument);
}

TEST_CASE("count_days counts distinct day indices") {
    std::vector<EventRecord> events;
    for (std::int64_t day : {0, 0, 2, 5, 5, 5}) {
        EventRecord ev;
        ev.day_index = day;
        events.push_back(ev);
    }
    CHECK(count_days(events) == 3);
}
