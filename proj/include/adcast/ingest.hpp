#pragma once

#include "adcast/types.hpp"

#include <optional>
#include <span>

namespace adcast {

struct NormalizeResult {
    std::vector<ForwardEvent> events;
    std::int64_t dropped_pre_release = 0; // events earlier than their release
    std::int64_t rejected_events = 0;     // events whose message has no release time
    std::vector<std::string> rejected_ids;
};

/// Rebase each event's clock to its message release (t = 0) and floor to
/// whole seconds. Events before release are dropped and tallied; messages
/// missing a release time are rejected with a diagnostic. Ordering within a
/// message is preserved.
NormalizeResult normalize(std::span<const ForwardEvent> events, const ReleaseMap& release_times);

struct BinResult {
    SeriesMap series;
    std::int64_t excluded_post_horizon = 0;
};

/// Bin normalized events into per-message counts, bins half-open
/// [(i-1)*g, i*g) for i = 1..horizon_bins. Events at or beyond the horizon
/// are excluded and tallied. When `universe` is given, every id in it gets a
/// series (all-zero if it has no events), so quiet messages still enter the
/// population average.
BinResult bin(std::span<const ForwardEvent> events, std::int64_t granularity_seconds,
              Index horizon_bins, const std::vector<std::string>* universe = nullptr);

/// Element-wise mean across series sharing granularity and horizon. Counts
/// are accumulated in integers and divided once, so the result is exact and
/// independent of message order.
AverageSeries average(const SeriesMap& series);
AverageSeries average(const std::vector<BinnedSeries>& series);

/// Sum groups of `factor` consecutive bins; horizon must divide evenly.
BinnedSeries rebin(const BinnedSeries& s, Index factor);

} // namespace adcast
