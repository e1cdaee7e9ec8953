#pragma once

#include <string>
#include <vector>

#include "adcast/model.hpp"
#include "adcast/types.hpp"

namespace adcast {

/// Generator settings. Per-bin counts are Poisson with mean
/// q_max * shape_normalized(t) + noise_floor, q_max log-normal per message.
struct SynthConfig {
    BiHillParams shape{1.0, 15.0, 2.0, 45.0, 2.0};
    std::int64_t n_messages = 1000;
    Index horizon_bins = 10080;
    std::int64_t granularity_seconds = 60;
    double q_max_log_mean = 1.0;  ///< mu of ln q_max
    double q_max_log_sigma = 2.0; ///< sigma of ln q_max, wide popularity span
    double noise_floor = 0.005;   ///< extra per-bin mean
    double release_spacing_seconds = 60.0;
    std::uint64_t rng_seed = 1;

    void validate() const;
};

/// Peak of the population mean near 26 minutes at 60 s bins.
[[nodiscard]] SynthConfig wechat_preset();

/// Peak of the population mean near 200 s at 10 s bins.
[[nodiscard]] SynthConfig weibo_preset();

struct MessageTruth {
    std::string message_id;
    double release = 0.0;
    double q_max = 0.0;
    std::int64_t total_events = 0;
};

struct SynthResult {
    SynthConfig config;
    std::vector<ForwardEvent> events; ///< absolute timestamps, sorted by (id, t)
    ReleaseMap releases;
    std::vector<MessageTruth> truth;
    ValueArray mean_shape; ///< unit-peak shape values over the horizon bins

    /// Per-bin Poisson means of one message.
    [[nodiscard]] ValueArray bin_means(std::size_t truth_index) const;
};

/// Draws the whole corpus. Deterministic: message i's scale uses stream
/// (seed, i, 0) and bin t uses stream (seed, i, t), so any subset of the
/// corpus is reproducible independently.
[[nodiscard]] SynthResult generate(const SynthConfig& config);

} // namespace adcast
