#include "adcast/ingest.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <stdexcept>

namespace adcast {

NormalizeResult normalize(std::span<const ForwardEvent> events, const ReleaseMap& release_times) {
    NormalizeResult out;
    out.events.reserve(events.size());
    std::set<std::string> rejected;
    for (const ForwardEvent& ev : events) {
        if (ev.message_id.empty()) throw std::invalid_argument("normalize: empty message id");
        const auto it = release_times.find(ev.message_id);
        if (it == release_times.end()) {
            ++out.rejected_events;
            rejected.insert(ev.message_id);
            continue;
        }
        const double rel = ev.t - it->second;
        if (rel < 0.0) {
            ++out.dropped_pre_release;
            continue;
        }
        out.events.push_back({ev.message_id, std::floor(rel)});
    }
    out.rejected_ids.assign(rejected.begin(), rejected.end());
    return out;
}

BinResult bin(std::span<const ForwardEvent> events, std::int64_t granularity_seconds,
              Index horizon_bins, const std::vector<std::string>* universe) {
    if (granularity_seconds < 1) throw std::invalid_argument("bin: granularity must be >= 1 second");
    if (horizon_bins < 1) throw std::invalid_argument("bin: horizon must be >= 1 bin");

    BinResult out;
    auto series_for = [&](const std::string& id) -> BinnedSeries& {
        auto [it, inserted] = out.series.try_emplace(id);
        if (inserted) {
            it->second.message_id = id;
            it->second.granularity_seconds = granularity_seconds;
            it->second.counts = CountArray::Zero(horizon_bins);
        }
        return it->second;
    };

    if (universe != nullptr)
        for (const std::string& id : *universe) series_for(id);

    const double horizon_seconds =
        static_cast<double>(granularity_seconds) * static_cast<double>(horizon_bins);
    for (const ForwardEvent& ev : events) {
        if (ev.t < 0.0) throw std::invalid_argument("bin: negative timestamp; normalize first");
        if (universe != nullptr && out.series.find(ev.message_id) == out.series.end()) continue;
        if (ev.t >= horizon_seconds) {
            ++out.excluded_post_horizon;
            series_for(ev.message_id);
            continue;
        }
        const Index idx = static_cast<Index>(ev.t / static_cast<double>(granularity_seconds));
        ++series_for(ev.message_id).counts[idx];
    }
    return out;
}

namespace {

AverageSeries average_impl(std::span<const BinnedSeries* const> series) {
    if (series.empty()) throw std::invalid_argument("average: empty collection");
    const std::int64_t g = series.front()->granularity_seconds;
    const Index horizon = series.front()->horizon_bins();
    CountArray sums = CountArray::Zero(horizon);
    for (const BinnedSeries* s : series) {
        if (s->granularity_seconds != g) throw std::invalid_argument("average: mixed granularities");
        if (s->horizon_bins() != horizon) throw std::invalid_argument("average: mixed horizons");
        sums += s->counts;
    }
    AverageSeries avg;
    avg.granularity_seconds = g;
    avg.n_messages = static_cast<std::int64_t>(series.size());
    avg.values = sums.cast<double>() / static_cast<double>(series.size());
    return avg;
}

} // namespace

AverageSeries average(const SeriesMap& series) {
    std::vector<const BinnedSeries*> ptrs;
    ptrs.reserve(series.size());
    for (const auto& [id, s] : series) ptrs.push_back(&s);
    return average_impl(ptrs);
}

AverageSeries average(const std::vector<BinnedSeries>& series) {
    std::vector<const BinnedSeries*> ptrs;
    ptrs.reserve(series.size());
    for (const BinnedSeries& s : series) ptrs.push_back(&s);
    std::sort(ptrs.begin(), ptrs.end(),
              [](const BinnedSeries* a, const BinnedSeries* b) { return a->message_id < b->message_id; });
    return average_impl(ptrs);
}

BinnedSeries rebin(const BinnedSeries& s, Index factor) {
    if (factor < 1) throw std::invalid_argument("rebin: factor must be >= 1");
    if (s.horizon_bins() % factor != 0)
        throw std::invalid_argument("rebin: horizon must be a multiple of the factor");
    BinnedSeries out;
    out.message_id = s.message_id;
    out.granularity_seconds = s.granularity_seconds * factor;
    out.counts = CountArray::Zero(s.horizon_bins() / factor);
    for (Index i = 0; i < s.horizon_bins(); ++i) out.counts[i / factor] += s.counts[i];
    return out;
}

} // namespace adcast
