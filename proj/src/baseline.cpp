#include "adcast/baseline.hpp"

#include <cmath>
#include <stdexcept>

namespace adcast {

LogGrowthProfile fit_baseline(const SeriesMap& training, Index t1_bins, Index horizon_bins) {
    if (training.empty()) throw std::invalid_argument("fit_baseline: empty training set");
    if (t1_bins < 1 || t1_bins >= horizon_bins)
        throw std::invalid_argument("fit_baseline: need 1 <= t1_bins < horizon_bins");

    LogGrowthProfile profile;
    profile.t1_bins = t1_bins;
    profile.horizon_bins = horizon_bins;
    profile.n_train = static_cast<std::int64_t>(training.size());
    profile.cumulative_log_growth.assign(static_cast<std::size_t>(horizon_bins - t1_bins), 0.0);

    bool first = true;
    for (const auto& [id, s] : training) {
        if (first) {
            profile.granularity_seconds = s.granularity_seconds;
            first = false;
        }
        if (s.horizon_bins() < horizon_bins)
            throw std::invalid_argument("fit_baseline: training series shorter than the horizon");
        std::int64_t cumulative = 0;
        for (Index i = 0; i < t1_bins; ++i) cumulative += s.counts[i];
        const double log_n1 = std::log(static_cast<double>(cumulative + 1));
        for (Index t = t1_bins; t < horizon_bins; ++t) {
            cumulative += s.counts[t];
            profile.cumulative_log_growth[static_cast<std::size_t>(t - t1_bins)] +=
                std::log(static_cast<double>(cumulative + 1)) - log_n1;
        }
    }
    for (double& v : profile.cumulative_log_growth) v /= static_cast<double>(profile.n_train);
    return profile;
}

double baseline_predict(const LogGrowthProfile& profile, const BinnedSeries& series,
                        Index t2_bins) {
    if (t2_bins <= profile.t1_bins || t2_bins > profile.horizon_bins)
        throw std::invalid_argument("baseline_predict: t2 outside the profile domain");
    if (series.horizon_bins() < profile.t1_bins)
        throw std::invalid_argument("baseline_predict: series shorter than the reference window");

    std::int64_t n1 = 0;
    for (Index i = 0; i < profile.t1_bins; ++i) n1 += series.counts[i];
    const double growth =
        profile.cumulative_log_growth[static_cast<std::size_t>(t2_bins - profile.t1_bins - 1)];
    const double predicted = std::exp(std::log(static_cast<double>(n1 + 1)) + growth) - 1.0;
    return std::max(predicted, static_cast<double>(n1));
}

} // namespace adcast
