#include "doctest.h"

#include <cmath>
#include <map>

#include "adcast/ingest.hpp"
#include "adcast/synth.hpp"

using namespace adcast;

namespace {

SynthConfig small_config(std::uint64_t seed = 1) {
    SynthConfig c;
    c.shape = {1.0, 6.0, 2.0, 18.0, 2.0};
    c.n_messages = 50;
    c.horizon_bins = 120;
    c.granularity_seconds = 30;
    c.q_max_log_mean = 1.5;
    c.q_max_log_sigma = 0.8;
    c.noise_floor = 0.01;
    c.release_spacing_seconds = 30.0;
    c.rng_seed = seed;
    return c;
}

} // namespace

TEST_CASE("generate is deterministic in the seed") {
    const SynthResult a = generate(small_config(5));
    const SynthResult b = generate(small_config(5));
    REQUIRE(a.events.size() == b.events.size());
    for (std::size_t i = 0; i < a.events.size(); ++i) {
        CHECK(a.events[i].message_id == b.events[i].message_id);
        CHECK(a.events[i].t == b.events[i].t);
    }
    REQUIRE(a.truth.size() == b.truth.size());
    for (std::size_t i = 0; i < a.truth.size(); ++i) {
        CHECK(a.truth[i].q_max == b.truth[i].q_max);
        CHECK(a.truth[i].total_events == b.truth[i].total_events);
    }
    const SynthResult c = generate(small_config(6));
    CHECK(a.events.size() != c.events.size());
}

TEST_CASE("a message's draws do not depend on corpus size") {
    SynthConfig small = small_config(9);
    small.n_messages = 5;
    SynthConfig large = small_config(9);
    large.n_messages = 20;
    const SynthResult a = generate(small);
    const SynthResult b = generate(large);
    for (std::size_t i = 0; i < 5; ++i) {
        CHECK(a.truth[i].q_max == b.truth[i].q_max);
        CHECK(a.truth[i].total_events == b.truth[i].total_events);
    }
}

TEST_CASE("truth bookkeeping matches the emitted events") {
    const SynthResult r = generate(small_config(3));
    std::map<std::string, std::int64_t> counts;
    for (const ForwardEvent& ev : r.events) ++counts[ev.message_id];
    std::int64_t sum = 0;
    for (const MessageTruth& t : r.truth) {
        CHECK(counts[t.message_id] == t.total_events);
        sum += t.total_events;
    }
    CHECK(sum == static_cast<std::int64_t>(r.events.size()));
}

TEST_CASE("every event falls inside its own message horizon") {
    const SynthResult r = generate(small_config(4));
    const double horizon_seconds = static_cast<double>(r.config.horizon_bins) *
                                   static_cast<double>(r.config.granularity_seconds);
    for (const ForwardEvent& ev : r.events) {
        const double release = r.releases.at(ev.message_id);
        CHECK(ev.t >= release);
        CHECK(ev.t < release + horizon_seconds);
    }
}

TEST_CASE("events arrive sorted by message then time") {
    const SynthResult r = generate(small_config(8));
    for (std::size_t i = 1; i < r.events.size(); ++i) {
        const ForwardEvent& prev = r.events[i - 1];
        const ForwardEvent& cur = r.events[i];
        const bool ordered = prev.message_id < cur.message_id ||
                             (prev.message_id == cur.message_id && prev.t <= cur.t);
        CHECK(ordered);
    }
}

TEST_CASE("releases are evenly spaced and ids zero-padded") {
    const SynthResult r = generate(small_config(2));
    CHECK(r.releases.at("m0000000") == 0.0);
    CHECK(r.releases.at("m0000007") == 7.0 * 30.0);
    CHECK(r.truth[0].message_id == "m0000000");
    CHECK(r.truth[49].message_id == "m0000049");
}

TEST_CASE("binning the corpus at generator granularity recovers the totals") {
    const SynthResult r = generate(small_config(12));
    const NormalizeResult norm = normalize(r.events, r.releases);
    CHECK(norm.dropped_pre_release == 0);
    CHECK(norm.rejected_events == 0);
    std::vector<std::string> universe;
    for (const MessageTruth& t : r.truth) universe.push_back(t.message_id);
    const BinResult binned =
        bin(norm.events, r.config.granularity_seconds, r.config.horizon_bins, &universe);
    CHECK(binned.excluded_post_horizon == 0);
    for (const MessageTruth& t : r.truth)
        CHECK(binned.series.at(t.message_id).total() == t.total_events);
}

TEST_CASE("mean_shape has a unit peak and bin_means scales it") {
    const SynthResult r = generate(small_config(1));
    CHECK(r.mean_shape.maxCoeff() == doctest::Approx(1.0).epsilon(1e-15));
    const ValueArray means = r.bin_means(0);
    REQUIRE(means.size() == r.config.horizon_bins);
    for (Index i = 0; i < 5; ++i)
        CHECK(means[i] ==
              doctest::Approx(r.truth[0].q_max * r.mean_shape[i] + 0.01).epsilon(1e-15));
}

TEST_CASE("sample statistics track the configured distribution") {
    SynthConfig c = small_config(17);
    c.n_messages = 2000;
    c.horizon_bins = 60;
    const SynthResult r = generate(c);

    double sum_log = 0.0;
    for (const MessageTruth& t : r.truth) sum_log += std::log(t.q_max);
    const double mean_log = sum_log / static_cast<double>(r.truth.size());
    // mean of ln q over 2000 draws: tolerance ~5 sigma / sqrt(n)
    CHECK(std::abs(mean_log - c.q_max_log_mean) < 5.0 * c.q_max_log_sigma / std::sqrt(2000.0));

    double sq = 0.0;
    for (const MessageTruth& t : r.truth) {
        const double d = std::log(t.q_max) - mean_log;
        sq += d * d;
    }
    const double sd_log = std::sqrt(sq / static_cast<double>(r.truth.size() - 1));
    CHECK(sd_log == doctest::Approx(c.q_max_log_sigma).epsilon(0.1));

    // Poisson totals: each message's total has mean q*mass + floor*T, and the
    // corpus-wide ratio of totals to expected totals concentrates near 1.
    const double mass = r.mean_shape.sum();
    double expected = 0.0, observed = 0.0;
    for (const MessageTruth& t : r.truth) {
        expected += t.q_max * mass + c.noise_floor * static_cast<double>(c.horizon_bins);
        observed += static_cast<double>(t.total_events);
    }
    CHECK(observed / expected == doctest::Approx(1.0).epsilon(0.05));
}

TEST_CASE("presets peak where their populations are documented to") {
    const SynthConfig wechat = wechat_preset();
    const UnitPeakShape ws = normalize_shape(wechat.shape, wechat.horizon_bins);
    CHECK(ws.peak_bin >= 20);
    CHECK(ws.peak_bin <= 35); // ~26 minutes at 60 s bins
    CHECK(wechat.granularity_seconds == 60);

    const SynthConfig weibo = weibo_preset();
    const UnitPeakShape bs = normalize_shape(weibo.shape, weibo.horizon_bins);
    CHECK(bs.peak_bin >= 15);
    CHECK(bs.peak_bin <= 25); // ~200 s at 10 s bins
    CHECK(weibo.granularity_seconds == 10);
}

TEST_CASE("generate validates its configuration") {
    SynthConfig c = small_config();
    c.n_messages = 0;
    CHECK_THROWS_AS(generate(c), std::invalid_argument);
    c = small_config();
    c.noise_floor = -0.1;
    CHECK_THROWS_AS(generate(c), std::invalid_argument);
    c = small_config();
    c.shape.p_m = 0.0;
    CHECK_THROWS_AS(generate(c), std::invalid_argument);
}
