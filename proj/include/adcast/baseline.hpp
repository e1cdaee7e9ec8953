#pragma once

#include <vector>

#include "adcast/types.hpp"

namespace adcast {

/// Log-linear growth baseline: mean cumulative log-growth from a reference
/// window t1 to every later bin, learned on training messages.
struct LogGrowthProfile {
    std::int64_t granularity_seconds = 0;
    Index t1_bins = 0;
    Index horizon_bins = 0;
    std::int64_t n_train = 0;
    /// cumulative_log_growth[i] = mean ln((N(t1+1+i)+1)/(N(t1)+1)) over training.
    std::vector<double> cumulative_log_growth;
};

/// Learns the mean cumulative log-growth profile. N(t) is the cumulative
/// count through bin t; add-one smoothing keeps zero counts finite.
[[nodiscard]] LogGrowthProfile fit_baseline(const SeriesMap& training, Index t1_bins,
                                            Index horizon_bins);

/// exp(ln(N(t1)+1) + profile[t2]) - 1, floored at N(t1).
[[nodiscard]] double baseline_predict(const LogGrowthProfile& profile, const BinnedSeries& series,
                                      Index t2_bins);

} // namespace adcast
