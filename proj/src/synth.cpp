#include "adcast/synth.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <stdexcept>

#include "adcast/rng.hpp"

namespace adcast {

void SynthConfig::validate() const {
    adcast::validate(shape);
    if (n_messages < 1) throw std::invalid_argument("SynthConfig: n_messages must be >= 1");
    if (horizon_bins < 1) throw std::invalid_argument("SynthConfig: horizon_bins must be >= 1");
    if (granularity_seconds < 1)
        throw std::invalid_argument("SynthConfig: granularity must be >= 1 second");
    if (q_max_log_sigma < 0.0) throw std::invalid_argument("SynthConfig: sigma must be >= 0");
    if (noise_floor < 0.0) throw std::invalid_argument("SynthConfig: noise floor must be >= 0");
    if (release_spacing_seconds < 0.0)
        throw std::invalid_argument("SynthConfig: release spacing must be >= 0");
}

SynthConfig wechat_preset() {
    SynthConfig c;
    c.shape = {1.0, 15.0, 2.0, 45.0, 2.0};
    c.granularity_seconds = 60;
    c.horizon_bins = 10080; // 7 days
    c.release_spacing_seconds = 60.0;
    return c;
}

SynthConfig weibo_preset() {
    SynthConfig c;
    c.shape = {1.0, 12.0, 2.0, 33.0, 2.0};
    c.granularity_seconds = 10;
    c.horizon_bins = 60480; // 7 days
    c.release_spacing_seconds = 10.0;
    return c;
}

ValueArray SynthResult::bin_means(std::size_t truth_index) const {
    return truth.at(truth_index).q_max * mean_shape + config.noise_floor;
}

SynthResult generate(const SynthConfig& config) {
    config.validate();

    SynthResult out;
    out.config = config;
    const UnitPeakShape shape = normalize_shape(config.shape, config.horizon_bins);
    out.mean_shape = bihill_curve(config.shape, config.horizon_bins) / shape.peak_value;

    const double g = static_cast<double>(config.granularity_seconds);
    char id_buf[16];
    for (std::int64_t i = 0; i < config.n_messages; ++i) {
        std::snprintf(id_buf, sizeof(id_buf), "m%07lld", static_cast<long long>(i));
        const std::string id(id_buf);
        const double release = config.release_spacing_seconds * static_cast<double>(i);

        RngStream scale_stream(config.rng_seed, static_cast<std::uint64_t>(i), 0);
        const double q_max =
            std::exp(config.q_max_log_mean + config.q_max_log_sigma * scale_stream.normal());

        MessageTruth truth{id, release, q_max, 0};
        for (Index t = 1; t <= config.horizon_bins; ++t) {
            const double mean = q_max * out.mean_shape[t - 1] + config.noise_floor;
            if (!(mean > 0.0)) continue;
            RngStream bin_stream(config.rng_seed, static_cast<std::uint64_t>(i),
                                 static_cast<std::uint64_t>(t));
            const std::int64_t count = bin_stream.poisson(mean);
            for (std::int64_t e = 0; e < count; ++e) {
                const double offset = (static_cast<double>(t) - 1.0 + bin_stream.uniform()) * g;
                out.events.push_back({id, release + offset});
            }
            truth.total_events += count;
        }
        out.releases.emplace(id, release);
        out.truth.push_back(std::move(truth));
    }

    std::sort(out.events.begin(), out.events.end(), [](const ForwardEvent& a, const ForwardEvent& b) {
        return a.message_id != b.message_id ? a.message_id < b.message_id : a.t < b.t;
    });
    return out;
}

} // namespace adcast
