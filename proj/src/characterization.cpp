#include "ego/characterization.hpp"

#include "ego/numerics.hpp"

#include <cmath>
#include <stdexcept>

namespace ego {

namespace {

std::pair<std::int64_t, std::int64_t> category_counts(
    const std::vector<InteractionRecord>& records) {
    std::int64_t formal = 0, informal = 0;
    for (const auto& r : records)
        (r.category == EventCategory::Formal ? formal : informal) += 1;
    return {formal, informal};
}

}  // namespace

std::pair<double, double> frequency(const std::vector<InteractionRecord>& records,
                                    std::int64_t day_count) {
    if (day_count < 1) throw std::invalid_argument("frequency: day_count must be >= 1");
    const auto [formal, informal] = category_counts(records);
    return {double(formal) / double(day_count), double(informal) / double(day_count)};
}

std::pair<double, double> interaction_shares(
    const std::vector<InteractionRecord>& records) {
    if (records.empty()) throw std::invalid_argument("interaction_shares: no interactions");
    const auto [formal, informal] = category_counts(records);
    const double total = double(formal + informal);
    return {double(formal) / total, double(informal) / total};
}

double diversity(double a_formal, double a_informal) {
    if (a_formal < 0.0 || a_informal < 0.0 || std::abs(a_formal + a_informal - 1.0) > 1e-6)
        throw std::invalid_argument("diversity: shares must be a two-way distribution");
    const double h = shannon_entropy_nat({a_formal, a_informal});
    return 0.5 * std::exp(h);
}

std::pair<double, double> duration_stats(const std::vector<InteractionRecord>& records,
                                         double frame_period) {
    if (records.empty()) throw std::invalid_argument("duration_stats: no interactions");
    if (frame_period <= 0.0)
        throw std::invalid_argument("duration_stats: frame_period must be > 0");
    const double n = double(records.size());
    double mean = 0.0;
    for (const auto& r : records) mean += double(r.frame_count) * frame_period;
    mean /= n;
    if (records.size() == 1) return {mean, 0.0};
    double ss = 0.0;
    for (const auto& r : records) {
        const double d = double(r.frame_count) * frame_period - mean;
        ss += d * d;
    }
    const double sample_std = std::sqrt(ss / (n - 1.0));
    return {mean, sample_std / std::sqrt(n)};
}

CharacterizationReport characterize(const std::vector<InteractionRecord>& records,
                                    std::int64_t day_count, double frame_period,
                                    ReportScope scope, const ClusterSet* clusters,
                                    std::size_t person) {
    std::vector<InteractionRecord> selected;
    if (scope == ReportScope::Person) {
        if (clusters == nullptr)
            throw std::invalid_argument("characterize: Person scope requires clusters");
        if (person >= clusters->size())
            throw std::invalid_argument("characterize: invalid cluster index");
        for (const auto& r : records)
            if (clusters->assignment.count(r.prototype_id) &&
                clusters->assignment.at(r.prototype_id) == person)
                selected.push_back(r);
        if (selected.empty())
            throw std::invalid_argument("characterize: person has no interactions");
    } else {
        selected = records;
    }

    CharacterizationReport rep;
    rep.scope = scope;
    if (scope == ReportScope::Person) rep.person = person;
    rep.n_days = day_count;
    rep.n_interactions = std::int64_t(selected.size());
    std::tie(rep.f_formal, rep.f_informal) = frequency(selected, day_count);
    if (!selected.empty()) {
        std::tie(rep.a_formal, rep.a_informal) = interaction_shares(selected);
        rep.diversity = diversity(rep.a_formal, rep.a_informal);
        std::tie(rep.duration_mean, rep.duration_sem) =
            duration_stats(selected, frame_period);
    }
    return rep;
}

}  // namespace ego
