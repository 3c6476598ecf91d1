#pragma once

#include <Eigen/Dense>

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace ego {

// Probability vector over the 8 basic facial expressions.
struct ExpressionVector {
    std::array<double, 8> probs{};

    double sum() const;
    // Rescales so the entries sum to 1. Valid only when sum() is within the
    // accepted band (see expression_sum_band).
    ExpressionVector normalized() const;
    bool is_valid_distribution(double tol = 1e-6) const;
};

// Expression sums inside [lo, hi] are renormalized on ingestion; outside the
// band the record is a validation violation.
inline constexpr double kExpressionSumLo = 0.9;
inline constexpr double kExpressionSumHi = 1.1;

struct FaceObservation {
    std::string track_id;
    double distance = 0.0;  // meters
    double yaw = 0.0;       // degrees, [-180, 180]
    double pitch = 0.0;     // degrees, [-90, 90]
    double roll = 0.0;      // degrees, [-180, 180]
    ExpressionVector expression;
    std::optional<Eigen::VectorXd> embedding;
};

enum class InteractionLabel { Interacting, NonInteracting };
enum class EventCategory { Formal, Informal };

// One tracked person within one event, the unit classified as
// interacting / non-interacting.
struct Prototype {
    std::string prototype_id;
    std::string event_id;
    std::vector<FaceObservation> observations;  // ordered by frame index
    std::optional<InteractionLabel> label;
};

struct Frame {
    std::int64_t frame_index = 0;
    Eigen::VectorXd scene_descriptor;
    std::vector<FaceObservation> faces;
};

struct EventRecord {
    std::string event_id;
    std::int64_t day_index = 0;
    std::vector<Frame> frames;  // strictly increasing frame_index
    std::optional<EventCategory> label;
};

// Labeled T x D time-series, the input to the LSTM classifier.
struct MultiSeries {
    Eigen::MatrixXd values;               // T x D
    std::vector<std::string> dim_labels;  // size D

    Eigen::Index length() const { return values.rows(); }
    Eigen::Index dim() const { return values.cols(); }
};

enum class MaskKind { Detection, Categorization };

// Named feature subset selecting time-series columns. The SID1..SID4 and
// SIC1..SIC3 presets cover the standard settings.
struct FeatureMask {
    MaskKind kind = MaskKind::Detection;
    std::string name;
    // detection dimensions
    bool distance = false;
    bool yaw = false;
    bool pitch = false;
    bool roll = false;
    // categorization dimension
    bool environment = false;
    // shared
    bool expression = false;

    int detection_dim() const;

    static FeatureMask sid(int n);  // n in 1..4
    static FeatureMask sic(int n);  // n in 1..3
};

bool operator==(const FeatureMask& a, const FeatureMask& b);

struct Violation {
    std::string event_id;
    std::int64_t frame_index = -1;  // -1 when not frame-specific
    std::string track_id;           // empty when not face-specific
    std::string message;
};

struct ValidationReport {
    std::vector<Violation> violations;
    bool ok() const { return violations.empty(); }
};

// Scans a dataset for invariant violations: angle/distance ranges, expression
// sums outside the accepted band, unordered frames, and descriptor/embedding
// dimension mismatches. Violations are data, not failures.
ValidationReport validate_dataset(const std::vector<EventRecord>& events);

// Groups each event's face observations by track id, preserving frame order.
// Prototype ids are "<event_id>/<track_id>".
std::vector<Prototype> extract_prototypes(const EventRecord& event);

std::string make_prototype_id(const std::string& event_id, const std::string& track_id);

}  // namespace ego
