#include "ego/io.hpp"

#include <json.hpp>

#include <cmath>
#include <fstream>
#include <iomanip>
#include <random>
#include <sstream>
#include <stdexcept>

namespace ego {

using nlohmann::json;

namespace {

std::ifstream open_in(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path + " for reading");
    return in;
}

std::ofstream open_out(const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open " + path + " for writing");
    return out;
}

json vec_to_json(const Eigen::VectorXd& v) {
    json a = json::array();
    for (Eigen::Index i = 0; i < v.size(); ++i) a.push_back(v[i]);
    return a;
}

Eigen::VectorXd vec_from_json(const json& a) {
    Eigen::VectorXd v(Eigen::Index(a.size()));
    for (std::size_t i = 0; i < a.size(); ++i) v[Eigen::Index(i)] = a[i].get<double>();
    return v;
}

json mat_to_json(const Eigen::MatrixXd& m) {
    json rows = json::array();
    for (Eigen::Index r = 0; r < m.rows(); ++r)
        rows.push_back(vec_to_json(m.row(r).transpose()));
    return rows;
}

Eigen::MatrixXd mat_from_json(const json& rows) {
    if (rows.empty()) return Eigen::MatrixXd(0, 0);
    Eigen::MatrixXd m(Eigen::Index(rows.size()), Eigen::Index(rows[0].size()));
    for (std::size_t r = 0; r < rows.size(); ++r)
        m.row(Eigen::Index(r)) = vec_from_json(rows[r]).transpose();
    return m;
}

[[noreturn]] void field_error(std::size_t line, const std::string& field,
                              const std::string& what) {
    throw std::runtime_error("line " + std::to_string(line) + ", field '" + field +
                             "': " + what);
}

double require_number(const json& obj, const char* field, std::size_t line) {
    if (!obj.contains(field)) field_error(line, field, "missing");
    if (!obj[field].is_number()) field_error(line, field, "not a number");
    return obj[field].get<double>();
}

std::string require_string(const json& obj, const char* field, std::size_t line) {
    if (!obj.contains(field)) field_error(line, field, "missing");
    if (!obj[field].is_string()) field_error(line, field, "not a string");
    return obj[field].get<std::string>();
}

const json& require_array(const json& obj, const char* field, std::size_t line) {
    if (!obj.contains(field)) field_error(line, field, "missing");
    if (!obj[field].is_array()) field_error(line, field, "not an array");
    return obj[field];
}

// sums already within 1e-9 of 1 are left untouched so that ingestion is
// idempotent and round-trips are bit-identical
ExpressionVector ingest_expression(ExpressionVector e) {
    const double s = e.sum();
    if (std::abs(s - 1.0) <= 1e-9) return e;
    if (s >= kExpressionSumLo && s <= kExpressionSumHi) return e.normalized();
    return e;  // out of band, left for validate_dataset to flag
}

json mask_to_json(const FeatureMask& m) {
    return json{{"kind", m.kind == MaskKind::Detection ? "detection" : "categorization"},
                {"name", m.name},
                {"distance", m.distance},
                {"yaw", m.yaw},
                {"pitch", m.pitch},
                {"roll", m.roll},
                {"environment", m.environment},
                {"expression", m.expression}};
}

FeatureMask mask_from_json(const json& j) {
    FeatureMask m;
    m.kind = j.at("kind").get<std::string>() == "detection" ? MaskKind::Detection
                                                            : MaskKind::Categorization;
    m.name = j.at("name").get<std::string>();
    m.distance = j.at("distance").get<bool>();
    m.yaw = j.at("yaw").get<bool>();
    m.pitch = j.at("pitch").get<bool>();
    m.roll = j.at("roll").get<bool>();
    m.environment = j.at("environment").get<bool>();
    m.expression = j.at("expression").get<bool>();
    return m;
}

json standardizer_to_json(const Standardizer& s) {
    return json{{"mean", vec_to_json(s.mean)}, {"std_dev", vec_to_json(s.std_dev)}};
}

Standardizer standardizer_from_json(const json& j) {
    Standardizer s;
    s.mean = vec_from_json(j.at("mean"));
    s.std_dev = vec_from_json(j.at("std_dev"));
    return s;
}

json pca_to_json(const PcaModel& m) {
    return json{{"mean", vec_to_json(m.mean)},
                {"components", mat_to_json(m.components)},
                {"explained_variance", vec_to_json(m.explained_variance)},
                {"variance_fraction_retained", m.variance_fraction_retained},
                {"variance_threshold", m.variance_threshold}};
}

PcaModel pca_from_json(const json& j) {
    PcaModel m;
    m.mean = vec_from_json(j.at("mean"));
    m.components = mat_from_json(j.at("components"));
    m.explained_variance = vec_from_json(j.at("explained_variance"));
    m.variance_fraction_retained = j.at("variance_fraction_retained").get<double>();
    m.variance_threshold = j.at("variance_threshold").get<double>();
    return m;
}

json lstm_to_json(const LstmParams& p) {
    json j;
    j["input_dim"] = p.input_dim;
    j["hidden_dim"] = p.hidden_dim;
    j["theta"] = vec_to_json(p.flatten());
    return j;
}

LstmParams lstm_from_json(const json& j) {
    return LstmParams::unflatten(vec_from_json(j.at("theta")),
                                 j.at("input_dim").get<Eigen::Index>(),
                                 j.at("hidden_dim").get<Eigen::Index>());
}

void check_version(const json& j, const std::string& path) {
    if (!j.contains("format_version") || j["format_version"].get<int>() != kFormatVersion)
        throw std::runtime_error(path + ": missing or unsupported format_version");
}

json read_json_file(const std::string& path) {
    auto in = open_in(path);
    json j;
    try {
        in >> j;
    } catch (const json::exception& e) {
        throw std::runtime_error(path + ": " + e.what());
    }
    return j;
}

}  // namespace

std::vector<EventRecord> load_dataset(const std::string& path) {
    auto in = open_in(path);
    std::vector<EventRecord> events;
    std::map<std::string, std::size_t> event_index;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty()) continue;
        json j;
        try {
            j = json::parse(line);
        } catch (const json::exception& e) {
            throw std::runtime_error("line " + std::to_string(lineno) +
                                     ": parse error: " + e.what());
        }
        const std::string event_id = require_string(j, "event_id", lineno);
        Frame frame;
        frame.frame_index = std::int64_t(require_number(j, "frame_index", lineno));
        frame.scene_descriptor = vec_from_json(require_array(j, "scene_descriptor", lineno));
        for (const auto& fj : require_array(j, "faces", lineno)) {
            if (!fj.is_object()) field_error(lineno, "faces", "entry not an object");
            FaceObservation f;
            f.track_id = require_string(fj, "track_id", lineno);
            f.distance = require_number(fj, "distance", lineno);
            f.yaw = require_number(fj, "yaw", lineno);
            f.pitch = require_number(fj, "pitch", lineno);
            f.roll = require_number(fj, "roll", lineno);
            const json& probs = require_array(fj, "expression_probs", lineno);
            if (probs.size() != 8)
                field_error(lineno, "expression_probs", "expected 8 entries, got " +
                                                            std::to_string(probs.size()));
            for (std::size_t k = 0; k < 8; ++k) f.expression.probs[k] = probs[k].get<double>();
            f.expression = ingest_expression(f.expression);
            if (fj.contains("embedding"))
                f.embedding = vec_from_json(require_array(fj, "embedding", lineno));
            frame.faces.push_back(std::move(f));
        }

        auto it = event_index.find(event_id);
        if (it == event_index.end()) {
            EventRecord ev;
            ev.event_id = event_id;
            ev.day_index = std::int64_t(require_number(j, "day_index", lineno));
            event_index.emplace(event_id, events.size());
            events.push_back(std::move(ev));
            it = event_index.find(event_id);
        }
        events[it->second].frames.push_back(std::move(frame));
    }
    return events;
}

void save_dataset(const std::vector<EventRecord>& events, const std::string& path) {
    auto out = open_out(path);
    for (const auto& ev : events) {
        for (const auto& fr : ev.frames) {
            json j;
            j["event_id"] = ev.event_id;
            j["day_index"] = ev.day_index;
            j["frame_index"] = fr.frame_index;
            j["scene_descriptor"] = vec_to_json(fr.scene_descriptor);
            json faces = json::array();
            for (const auto& f : fr.faces) {
                json fj{{"track_id", f.track_id}, {"distance", f.distance},
                        {"yaw", f.yaw},          {"pitch", f.pitch},
                        {"roll", f.roll}};
                json probs = json::array();
                for (double p : f.expression.probs) probs.push_back(p);
                fj["expression_probs"] = probs;
                if (f.embedding) fj["embedding"] = vec_to_json(*f.embedding);
                faces.push_back(std::move(fj));
            }
            j["faces"] = std::move(faces);
            out << j.dump() << "\n";
        }
    }
}

DatasetLabels load_labels(const std::string& path) {
    const json j = read_json_file(path);
    check_version(j, path);
    DatasetLabels labels;
    if (j.contains("prototypes"))
        for (const auto& [id, v] : j["prototypes"].items()) {
            const std::string s = v.get<std::string>();
            if (s != "interacting" && s != "non_interacting")
                throw std::runtime_error(path + ": bad prototype label '" + s + "'");
            labels.prototypes[id] = s == "interacting" ? InteractionLabel::Interacting
                                                       : InteractionLabel::NonInteracting;
        }
    if (j.contains("events"))
        for (const auto& [id, v] : j["events"].items()) {
            const std::string s = v.get<std::string>();
            if (s != "formal" && s != "informal")
                throw std::runtime_error(path + ": bad event label '" + s + "'");
            labels.events[id] = s == "formal" ? EventCategory::Formal : EventCategory::Informal;
        }
    if (j.contains("identities"))
        for (const auto& [id, v] : j["identities"].items())
            labels.identities[id] = v.get<int>();
    return labels;
}

void save_labels(const DatasetLabels& labels, const std::string& path) {
    json j;
    j["format_version"] = kFormatVersion;
    json p = json::object();
    for (const auto& [id, label] : labels.prototypes)
        p[id] = label == InteractionLabel::Interacting ? "interacting" : "non_interacting";
    j["prototypes"] = std::move(p);
    json e = json::object();
    for (const auto& [id, cat] : labels.events)
        e[id] = cat == EventCategory::Formal ? "formal" : "informal";
    j["events"] = std::move(e);
    json ids = json::object();
    for (const auto& [id, person] : labels.identities) ids[id] = person;
    j["identities"] = std::move(ids);
    open_out(path) << j.dump(2) << "\n";
}

void save_feature_artifacts(const FeatureArtifacts& art, const std::string& path) {
    json j;
    j["format_version"] = kFormatVersion;
    j["vocabulary"] = {{"top_k", art.vocabulary.top_k}, {"raw_dim", art.vocabulary.raw_dim}};
    j["pca"] = pca_to_json(art.pca);
    j["detection_standardizer"] = standardizer_to_json(art.detection_standardizer);
    j["categorization_standardizer"] = standardizer_to_json(art.categorization_standardizer);
    open_out(path) << j.dump() << "\n";
}

FeatureArtifacts load_feature_artifacts(const std::string& path) {
    const json j = read_json_file(path);
    check_version(j, path);
    FeatureArtifacts art;
    art.vocabulary.top_k = j.at("vocabulary").at("top_k").get<int>();
    art.vocabulary.raw_dim = j.at("vocabulary").at("raw_dim").get<Eigen::Index>();
    art.pca = pca_from_json(j.at("pca"));
    art.detection_standardizer = standardizer_from_json(j.at("detection_standardizer"));
    art.categorization_standardizer =
        standardizer_from_json(j.at("categorization_standardizer"));
    return art;
}

void save_detector(const DetectorModel& model, const std::string& path) {
    json j;
    j["format_version"] = kFormatVersion;
    j["mask"] = mask_to_json(model.mask);
    j["standardizer"] = standardizer_to_json(model.standardizer);
    j["lstm"] = lstm_to_json(model.lstm);
    open_out(path) << j.dump() << "\n";
}

DetectorModel load_detector(const std::string& path) {
    const json j = read_json_file(path);
    check_version(j, path);
    DetectorModel m;
    m.mask = mask_from_json(j.at("mask"));
    m.standardizer = standardizer_from_json(j.at("standardizer"));
    m.lstm = lstm_from_json(j.at("lstm"));
    return m;
}

void save_categorizer(const CategorizerModel& model, const std::string& path) {
    json j;
    j["format_version"] = kFormatVersion;
    j["mask"] = mask_to_json(model.mask);
    j["vocabulary"] = {{"top_k", model.vocabulary.top_k},
                       {"raw_dim", model.vocabulary.raw_dim}};
    j["pca"] = pca_to_json(model.pca);
    j["standardizer"] = standardizer_to_json(model.standardizer);
    j["lstm"] = lstm_to_json(model.lstm);
    open_out(path) << j.dump() << "\n";
}

CategorizerModel load_categorizer(const std::string& path) {
    const json j = read_json_file(path);
    check_version(j, path);
    CategorizerModel m;
    m.mask = mask_from_json(j.at("mask"));
    m.vocabulary.top_k = j.at("vocabulary").at("top_k").get<int>();
    m.vocabulary.raw_dim = j.at("vocabulary").at("raw_dim").get<Eigen::Index>();
    m.pca = pca_from_json(j.at("pca"));
    m.standardizer = standardizer_from_json(j.at("standardizer"));
    m.lstm = lstm_from_json(j.at("lstm"));
    return m;
}

void save_records(const std::vector<InteractionRecord>& records, const std::string& path) {
    json j;
    j["format_version"] = kFormatVersion;
    json arr = json::array();
    for (const auto& r : records) {
        json rj{{"prototype_id", r.prototype_id},
                {"event_id", r.event_id},
                {"day_index", r.day_index},
                {"category", r.category == EventCategory::Formal ? "formal" : "informal"},
                {"frame_count", r.frame_count}};
        if (r.person_id) rj["person_id"] = *r.person_id;
        arr.push_back(std::move(rj));
    }
    j["records"] = std::move(arr);
    open_out(path) << j.dump() << "\n";
}

std::vector<InteractionRecord> load_records(const std::string& path) {
    const json j = read_json_file(path);
    check_version(j, path);
    std::vector<InteractionRecord> records;
    for (const auto& rj : j.at("records")) {
        InteractionRecord r;
        r.prototype_id = rj.at("prototype_id").get<std::string>();
        r.event_id = rj.at("event_id").get<std::string>();
        r.day_index = rj.at("day_index").get<std::int64_t>();
        r.category = rj.at("category").get<std::string>() == "formal"
                         ? EventCategory::Formal
                         : EventCategory::Informal;
        r.frame_count = rj.at("frame_count").get<std::int64_t>();
        if (rj.contains("person_id")) r.person_id = rj["person_id"].get<std::size_t>();
        records.push_back(std::move(r));
    }
    return records;
}

void save_clusters(const ClusterSet& clusters, const std::string& path) {
    json j;
    j["format_version"] = kFormatVersion;
    j["clusters"] = clusters.clusters;
    open_out(path) << j.dump() << "\n";
}

ClusterSet load_clusters(const std::string& path) {
    const json j = read_json_file(path);
    check_version(j, path);
    ClusterSet cs;
    cs.clusters = j.at("clusters").get<std::vector<std::vector<std::string>>>();
    for (std::size_t k = 0; k < cs.clusters.size(); ++k)
        for (const auto& id : cs.clusters[k]) cs.assignment[id] = k;
    return cs;
}

void save_report(const CharacterizationReport& r, const std::string& path) {
    json j;
    j["format_version"] = kFormatVersion;
    j["scope"] = r.scope == ReportScope::Generic ? "generic" : "person";
    if (r.person) j["person"] = *r.person;
    j["f_formal"] = r.f_formal;
    j["f_informal"] = r.f_informal;
    j["a_formal"] = r.a_formal;
    j["a_informal"] = r.a_informal;
    j["diversity"] = r.diversity;
    j["duration_mean"] = r.duration_mean;
    j["duration_sem"] = r.duration_sem;
    j["n_interactions"] = r.n_interactions;
    j["n_days"] = r.n_days;
    open_out(path) << j.dump(2) << "\n";
}

CharacterizationReport load_report(const std::string& path) {
    const json j = read_json_file(path);
    check_version(j, path);
    CharacterizationReport r;
    r.scope = j.at("scope").get<std::string>() == "generic" ? ReportScope::Generic
                                                            : ReportScope::Person;
    if (j.contains("person")) r.person = j["person"].get<std::size_t>();
    r.f_formal = j.at("f_formal").get<double>();
    r.f_informal = j.at("f_informal").get<double>();
    r.a_formal = j.at("a_formal").get<double>();
    r.a_informal = j.at("a_informal").get<double>();
    r.diversity = j.at("diversity").get<double>();
    r.duration_mean = j.at("duration_mean").get<double>();
    r.duration_sem = j.at("duration_sem").get<double>();
    r.n_interactions = j.at("n_interactions").get<std::int64_t>();
    r.n_days = j.at("n_days").get<std::int64_t>();
    return r;
}

std::string format_report_table(const std::vector<CharacterizationReport>& reports) {
    std::ostringstream os;
    os << std::left << std::setw(16) << "" << std::right << std::setw(10) << "F-Formal"
       << std::setw(12) << "F-Informal" << std::setw(10) << "A-Formal" << std::setw(12)
       << "A-Informal" << std::setw(8) << "D" << std::setw(16) << "L" << "\n";
    for (const auto& r : reports) {
        std::string name = r.scope == ReportScope::Generic
                               ? "Generic"
                               : "Person-" + std::to_string(r.person.value_or(0));
        std::ostringstream dur;
        dur << std::fixed << std::setprecision(2) << r.duration_mean << "±"
            << r.duration_sem;
        os << std::left << std::setw(16) << name << std::right << std::fixed
           << std::setprecision(2) << std::setw(10) << r.f_formal << std::setw(12)
           << r.f_informal << std::setw(10) << r.a_formal << std::setw(12)
           << r.a_informal << std::setw(8) << r.diversity << std::setw(16) << dur.str()
           << "\n";
    }
    return os.str();
}

GeneratedDataset generate_dataset(const GeneratorConfig& cfg) {
    if (cfg.days < 1 || cfg.events_per_day < 1 || cfg.people < 1 ||
        cfg.min_prototypes < 1 || cfg.max_prototypes < cfg.min_prototypes ||
        cfg.min_frames < 1 || cfg.max_frames < cfg.min_frames)
        throw std::invalid_argument("generate_dataset: counts must be >= 1 and ordered");
    if (cfg.interaction_probability < 0.0 || cfg.interaction_probability > 1.0 ||
        cfg.formal_probability < 0.0 || cfg.formal_probability > 1.0 ||
        cfg.face_presence < 0.0 || cfg.face_presence > 1.0 ||
        cfg.ambiguous_fraction < 0.0 || cfg.ambiguous_fraction > 1.0)
        throw std::invalid_argument("generate_dataset: probabilities must be in [0,1]");

    std::mt19937_64 rng(cfg.seed);
    std::normal_distribution<double> normal(0.0, 1.0);
    std::uniform_real_distribution<double> unit(0.0, 1.0);

    auto clamp_angle = [](double v, double lo, double hi) {
        return std::min(hi, std::max(lo, v));
    };

    // one unit embedding per identity, orthogonalized against the previous
    // ones (while dimensions allow) so distinct identities stay separated
    std::vector<Eigen::VectorXd> identity(std::size_t(cfg.people));
    for (std::size_t p = 0; p < identity.size(); ++p) {
        auto& e = identity[p];
        e.resize(cfg.embedding_dim);
        for (Eigen::Index i = 0; i < e.size(); ++i) e[i] = normal(rng);
        if (p < std::size_t(cfg.embedding_dim))
            for (std::size_t q = 0; q < p; ++q) e -= e.dot(identity[q]) * identity[q];
        e.normalize();
    }

    // per-category scene distributions
    Eigen::VectorXd scene_mean[2];
    for (int c = 0; c < 2; ++c) {
        scene_mean[c].resize(cfg.descriptor_dim);
        for (Eigen::Index i = 0; i < scene_mean[c].size(); ++i)
            scene_mean[c][i] = 1.5 * normal(rng);
    }

    GeneratedDataset out;
    for (int day = 0; day < cfg.days; ++day) {
        for (int e = 0; e < cfg.events_per_day; ++e) {
            EventRecord ev;
            {
                std::ostringstream id;
                id << "d" << std::setw(3) << std::setfill('0') << day << "e"
                   << std::setw(3) << std::setfill('0') << e;
                ev.event_id = id.str();
            }
            ev.day_index = day;
            const bool formal = unit(rng) < cfg.formal_probability;
            out.labels.events[ev.event_id] =
                formal ? EventCategory::Formal : EventCategory::Informal;

            const int n_frames =
                cfg.min_frames +
                int(unit(rng) * double(cfg.max_frames - cfg.min_frames + 1)) %
                    (cfg.max_frames - cfg.min_frames + 1);
            const int n_protos =
                cfg.min_prototypes +
                int(unit(rng) * double(cfg.max_prototypes - cfg.min_prototypes + 1)) %
                    (cfg.max_prototypes - cfg.min_prototypes + 1);

            struct ProtoPlan {
                std::string track_id;
                int person = 0;
                bool interacting = false;
                bool ambiguous = false;
                double base_distance = 0, base_yaw = 0, base_pitch = 0, base_roll = 0;
                int dominant = 1;  // 1-based expression index
                std::vector<bool> present;
            };
            std::vector<ProtoPlan> plans;
            for (int k = 0; k < n_protos; ++k) {
                ProtoPlan pl;
                pl.track_id = "t" + std::to_string(k);
                pl.person = int(unit(rng) * double(cfg.people)) % cfg.people;
                pl.interacting = unit(rng) < cfg.interaction_probability;
                pl.ambiguous = unit(rng) < cfg.ambiguous_fraction;

                // distance and yaw follow the opposite class's profile for
                // ambiguous prototypes; pitch, roll and expression always
                // carry the true class
                const bool dy_close = pl.ambiguous ? !pl.interacting : pl.interacting;
                if (dy_close) {
                    pl.base_distance =
                        cfg.distance_interacting + cfg.distance_sigma * normal(rng);
                    pl.base_yaw = cfg.yaw_sigma * normal(rng);
                } else {
                    pl.base_distance =
                        cfg.distance_noninteracting + cfg.distance_sigma * normal(rng);
                    const double sign = unit(rng) < 0.5 ? -1.0 : 1.0;
                    pl.base_yaw =
                        sign * (1.15 * cfg.yaw_gap + std::abs(cfg.yaw_sigma * normal(rng)));
                }
                if (pl.interacting) {
                    pl.base_pitch = cfg.pitch_sigma * normal(rng);
                    pl.base_roll = cfg.roll_sigma * normal(rng);
                    pl.dominant = formal ? 1 : 4;
                } else {
                    double sign = unit(rng) < 0.5 ? -1.0 : 1.0;
                    pl.base_pitch =
                        sign * (cfg.pitch_gap + std::abs(cfg.pitch_sigma * normal(rng)));
                    sign = unit(rng) < 0.5 ? -1.0 : 1.0;
                    pl.base_roll =
                        sign * (cfg.roll_gap + std::abs(cfg.roll_sigma * normal(rng)));
                }

                pl.present.resize(std::size_t(n_frames));
                bool any = false;
                for (int t = 0; t < n_frames; ++t) {
                    pl.present[std::size_t(t)] = unit(rng) < cfg.face_presence;
                    any = any || pl.present[std::size_t(t)];
                }
                if (!any) pl.present[0] = true;

                const std::string pid = make_prototype_id(ev.event_id, pl.track_id);
                out.labels.prototypes[pid] = pl.interacting
                                                 ? InteractionLabel::Interacting
                                                 : InteractionLabel::NonInteracting;
                out.labels.identities[pid] = pl.person;
                plans.push_back(std::move(pl));
            }

            for (int t = 0; t < n_frames; ++t) {
                Frame fr;
                fr.frame_index = t;
                fr.scene_descriptor.resize(cfg.descriptor_dim);
                const Eigen::VectorXd& mean = scene_mean[formal ? 0 : 1];
                for (Eigen::Index i = 0; i < fr.scene_descriptor.size(); ++i)
                    fr.scene_descriptor[i] = mean[i] + cfg.descriptor_noise * normal(rng);

                for (const auto& pl : plans) {
                    if (!pl.present[std::size_t(t)]) continue;
                    FaceObservation f;
                    f.track_id = pl.track_id;
                    f.distance = std::max(
                        0.0, pl.base_distance + 0.5 * cfg.distance_sigma * normal(rng));
                    f.yaw = clamp_angle(pl.base_yaw + 0.5 * cfg.yaw_sigma * normal(rng),
                                        -180.0, 180.0);
                    f.pitch = clamp_angle(
                        pl.base_pitch + 0.5 * cfg.pitch_sigma * normal(rng), -90.0, 90.0);
                    f.roll = clamp_angle(pl.base_roll + 0.5 * cfg.roll_sigma * normal(rng),
                                         -180.0, 180.0);

                    if (pl.interacting) {
                        // stable, peaked expression
                        for (auto& p : f.expression.probs)
                            p = 0.05 + 0.02 * unit(rng);
                        f.expression.probs[std::size_t(pl.dominant - 1)] = 0.6;
                    } else {
                        // drifting, near-uniform expression
                        for (auto& p : f.expression.probs) p = 0.2 + unit(rng);
                    }
                    f.expression = f.expression.normalized();

                    Eigen::VectorXd emb = identity[std::size_t(pl.person)];
                    for (Eigen::Index i = 0; i < emb.size(); ++i)
                        emb[i] += cfg.embedding_noise * normal(rng);
                    f.embedding = std::move(emb);
                    fr.faces.push_back(std::move(f));
                }
                ev.frames.push_back(std::move(fr));
            }
            out.events.push_back(std::move(ev));
        }
    }
    return out;
}

}  // namespace ego
