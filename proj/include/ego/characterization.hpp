#pragma once

#include "ego/clustering.hpp"
#include "ego/core.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace ego {

// One detected social interaction: an interacting prototype inside a
// categorized event.
struct InteractionRecord {
    std::string prototype_id;
    std::string event_id;
    std::int64_t day_index = 0;
    EventCategory category = EventCategory::Informal;
    std::int64_t frame_count = 0;  // >= 1
    std::optional<std::size_t> person_id;  // cluster index, filled by clustering
};

enum class ReportScope { Generic, Person };

struct CharacterizationReport {
    double f_formal = 0.0;    // interactions per day
    double f_informal = 0.0;
    double a_formal = 0.0;    // shares, sum to 1 when n_interactions > 0
    double a_informal = 0.0;
    double diversity = 0.5;   // in [0.5, 1]
    double duration_mean = 0.0;
    double duration_sem = 0.0;
    std::int64_t n_interactions = 0;
    std::int64_t n_days = 0;
    ReportScope scope = ReportScope::Generic;
    std::optional<std::size_t> person = std::nullopt;
};

// F = category count / day count
std::pair<double, double> frequency(const std::vector<InteractionRecord>& records,
                                    std::int64_t day_count);

// A = category count / total count; throws on an empty record set.
std::pair<double, double> interaction_shares(const std::vector<InteractionRecord>& records);

// D = 1/2 exp(-sum A_i ln A_i), in [0.5, 1]; 1 at balanced shares.
double diversity(double a_formal, double a_informal);

// L(i) = frame_count * frame_period; returns mean and standard error of the
// mean over records.
std::pair<double, double> duration_stats(const std::vector<InteractionRecord>& records,
                                         double frame_period);

// Generic scope uses all records; Person scope restricts to one cluster's
// prototypes first. day_count is the dataset-wide number of observation days.
CharacterizationReport characterize(const std::vector<InteractionRecord>& records,
                                    std::int64_t day_count, double frame_period,
                                    ReportScope scope,
                                    const ClusterSet* clusters = nullptr,
                                    std::size_t person = 0);

}  // namespace ego
