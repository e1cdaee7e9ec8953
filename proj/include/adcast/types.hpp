#pragma once

#include <Eigen/Dense>

#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace adcast {

using ValueArray = Eigen::ArrayXd;
using CountArray = Eigen::Array<std::int64_t, Eigen::Dynamic, 1>;
using Index = Eigen::Index;

/// One repost record. After normalization, `t` is whole seconds since the
/// message release (floored to 1-second resolution).
struct ForwardEvent {
    std::string message_id;
    double t = 0.0;
};

/// Per-message forwarding counts per unit-time bin. Bins are 1-based and
/// half-open: counts[i-1] covers normalized timestamps in [(i-1)*g, i*g).
struct BinnedSeries {
    std::string message_id;
    std::int64_t granularity_seconds = 0;
    CountArray counts;

    Index horizon_bins() const { return counts.size(); }
    std::int64_t total() const { return counts.sum(); }
};

/// Element-wise mean of N per-message series sharing granularity and horizon.
struct AverageSeries {
    std::int64_t granularity_seconds = 0;
    ValueArray values;
    std::int64_t n_messages = 0;

    Index horizon_bins() const { return values.size(); }
};

using SeriesMap = std::map<std::string, BinnedSeries>;
using ReleaseMap = std::map<std::string, double>;

} // namespace adcast
