#include "ego/core.hpp"

#include <cmath>
#include <numeric>
#include <sstream>
#include <stdexcept>
#include <unordered_map>

namespace ego {

double ExpressionVector::sum() const {
    return std::accumulate(probs.begin(), probs.end(), 0.0);
}

ExpressionVector ExpressionVector::normalized() const {
    const double s = sum();
    if (s <= 0.0) throw std::invalid_argument("expression vector has non-positive sum");
    ExpressionVector out;
    for (std::size_t k = 0; k < probs.size(); ++k) out.probs[k] = probs[k] / s;
    return out;
}

bool ExpressionVector::is_valid_distribution(double tol) const {
    for (double p : probs)
        if (!std::isfinite(p) || p < 0.0 || p > 1.0) return false;
    return std::abs(sum() - 1.0) <= tol;
}

int FeatureMask::detection_dim() const {
    return int(distance) + int(yaw) + int(pitch) + int(roll) + int(expression);
}

FeatureMask FeatureMask::sid(int n) {
    FeatureMask m;
    m.kind = MaskKind::Detection;
    m.name = "SID" + std::to_string(n);
    switch (n) {
        case 1: m.distance = m.yaw = true; break;
        case 2: m.distance = m.yaw = m.pitch = m.roll = true; break;
        case 3: m.distance = m.yaw = m.expression = true; break;
        case 4: m.distance = m.yaw = m.pitch = m.roll = m.expression = true; break;
        default: throw std::invalid_argument("SID setting must be 1..4");
    }
    return m;
}

FeatureMask FeatureMask::sic(int n) {
    FeatureMask m;
    m.kind = MaskKind::Categorization;
    m.name = "SIC" + std::to_string(n);
    switch (n) {
        case 1:
        case 2: m.environment = true; break;
        case 3: m.environment = m.expression = true; break;
        default: throw std::invalid_argument("SIC setting must be 1..3");
    }
    return m;
}

bool operator==(const FeatureMask& a, const FeatureMask& b) {
    return a.kind == b.kind && a.distance == b.distance && a.yaw == b.yaw &&
           a.pitch == b.pitch && a.roll == b.roll && a.environment == b.environment &&
           a.expression == b.expression;
}

namespace {

void check_face(const EventRecord& ev, const Frame& fr, const FaceObservation& f,
                std::vector<Violation>& out) {
    auto add = [&](const std::string& msg) {
        out.push_back({ev.event_id, fr.frame_index, f.track_id, msg});
    };
    if (!std::isfinite(f.distance) || f.distance < 0.0)
        add("distance out of range: " + std::to_string(f.distance));
    if (!std::isfinite(f.yaw) || f.yaw < -180.0 || f.yaw > 180.0)
        add("yaw out of range: " + std::to_string(f.yaw));
    if (!std::isfinite(f.pitch) || f.pitch < -90.0 || f.pitch > 90.0)
        add("pitch out of range: " + std::to_string(f.pitch));
    if (!std::isfinite(f.roll) || f.roll < -180.0 || f.roll > 180.0)
        add("roll out of range: " + std::to_string(f.roll));
    bool finite = true;
    for (double p : f.expression.probs)
        if (!std::isfinite(p) || p < 0.0 || p > 1.0) finite = false;
    if (!finite) {
        add("expression probability out of [0,1]");
    } else {
        const double s = f.expression.sum();
        if (s < kExpressionSumLo || s > kExpressionSumHi)
            add("expression probabilities sum to " + std::to_string(s) +
                ", outside accepted band");
    }
    if (f.embedding && !f.embedding->allFinite()) add("embedding has non-finite entries");
}

}  // namespace

ValidationReport validate_dataset(const std::vector<EventRecord>& events) {
    ValidationReport report;
    auto& out = report.violations;
    Eigen::Index descriptor_dim = -1;
    std::string descriptor_dim_origin;
    Eigen::Index embedding_dim = -1;

    for (const auto& ev : events) {
        if (ev.day_index < 0)
            out.push_back({ev.event_id, -1, "", "negative day_index"});
        if (ev.frames.empty()) {
            out.push_back({ev.event_id, -1, "", "event has no frames"});
            continue;
        }
        std::int64_t prev_index = ev.frames.front().frame_index - 1;
        Eigen::Index event_dim = -1;
        for (const auto& fr : ev.frames) {
            if (fr.frame_index <= prev_index)
                out.push_back({ev.event_id, fr.frame_index, "",
                               "frame_index not strictly increasing"});
            prev_index = fr.frame_index;

            if (event_dim < 0) event_dim = fr.scene_descriptor.size();
            if (fr.scene_descriptor.size() != event_dim)
                out.push_back({ev.event_id, fr.frame_index, "",
                               "scene_descriptor dimension " +
                                   std::to_string(fr.scene_descriptor.size()) +
                                   " differs from event's " + std::to_string(event_dim)});
            if (!fr.scene_descriptor.allFinite())
                out.push_back({ev.event_id, fr.frame_index, "",
                               "scene_descriptor has non-finite entries"});
            for (const auto& f : fr.faces) {
                check_face(ev, fr, f, out);
                if (f.embedding) {
                    if (embedding_dim < 0) embedding_dim = f.embedding->size();
                    if (f.embedding->size() != embedding_dim)
                        out.push_back({ev.event_id, fr.frame_index, f.track_id,
                                       "embedding dimension " +
                                           std::to_string(f.embedding->size()) +
                                           " differs from dataset's " +
                                           std::to_string(embedding_dim)});
                }
            }
        }
        if (event_dim >= 0) {
            if (descriptor_dim < 0) {
                descriptor_dim = event_dim;
                descriptor_dim_origin = ev.event_id;
            } else if (event_dim != descriptor_dim) {
                out.push_back({ev.event_id, -1, "",
                               "scene_descriptor dimension " + std::to_string(event_dim) +
                                   " differs from dimension " +
                                   std::to_string(descriptor_dim) + " of event " +
                                   descriptor_dim_origin});
            }
        }
    }
    return report;
}

std::string make_prototype_id(const std::string& event_id, const std::string& track_id) {
    return event_id + "/" + track_id;
}

std::vector<Prototype> extract_prototypes(const EventRecord& event) {
    std::vector<Prototype> prototypes;
    std::unordered_map<std::string, std::size_t> index_of;
    for (const auto& fr : event.frames) {
        for (const auto& f : fr.faces) {
            auto it = index_of.find(f.track_id);
            if (it == index_of.end()) {
                Prototype p;
                p.prototype_id = make_prototype_id(event.event_id, f.track_id);
                p.event_id = event.event_id;
                index_of.emplace(f.track_id, prototypes.size());
                prototypes.push_back(std::move(p));
                it = index_of.find(f.track_id);
            }
            prototypes[it->second].observations.push_back(f);
        }
    }
    return prototypes;
}

}  // namespace ego
