#include "doctest.h"

#include <vector>

#include "adcast/ingest.hpp"

using namespace adcast;

TEST_CASE("normalize rebases to release and floors to whole seconds") {
    const std::vector<ForwardEvent> events{{"a", 102.7}, {"a", 100.0}, {"a", 99.5}};
    const ReleaseMap releases{{"a", 100.0}};
    const NormalizeResult out = normalize(events, releases);
    REQUIRE(out.events.size() == 2);
    CHECK(out.events[0].t == 2.0);
    CHECK(out.events[1].t == 0.0);
    CHECK(out.dropped_pre_release == 1);
    CHECK(out.rejected_events == 0);
}

TEST_CASE("normalize rejects events without a release time") {
    const std::vector<ForwardEvent> events{{"a", 5.0}, {"b", 6.0}, {"b", 7.0}};
    const ReleaseMap releases{{"a", 0.0}};
    const NormalizeResult out = normalize(events, releases);
    CHECK(out.events.size() == 1);
    CHECK(out.rejected_events == 2);
    CHECK(out.rejected_ids == std::vector<std::string>{"b"});
}

TEST_CASE("normalize preserves within-message order") {
    const std::vector<ForwardEvent> events{{"a", 9.0}, {"a", 3.0}, {"a", 5.0}};
    const ReleaseMap releases{{"a", 0.0}};
    const NormalizeResult out = normalize(events, releases);
    REQUIRE(out.events.size() == 3);
    CHECK(out.events[0].t == 9.0);
    CHECK(out.events[1].t == 3.0);
    CHECK(out.events[2].t == 5.0);
}

TEST_CASE("bin places events into half-open unit-time bins") {
    const std::vector<ForwardEvent> events{
        {"a", 0.0}, {"a", 9.0}, {"a", 10.0}, {"a", 29.9}, {"a", 30.0}};
    const BinResult out = bin(events, 10, 3);
    REQUIRE(out.series.count("a") == 1);
    const BinnedSeries& s = out.series.at("a");
    CHECK(s.granularity_seconds == 10);
    REQUIRE(s.horizon_bins() == 3);
    CHECK(s.counts[0] == 2);
    CHECK(s.counts[1] == 1);
    CHECK(s.counts[2] == 1);
    CHECK(out.excluded_post_horizon == 1);
}

TEST_CASE("bin conserves event mass") {
    std::vector<ForwardEvent> events;
    for (int i = 0; i < 250; ++i)
        events.push_back({i % 2 == 0 ? "a" : "b", static_cast<double>((i * 37) % 400)});
    const BinResult out = bin(events, 7, 50); // horizon at 350 s
    std::int64_t binned = 0;
    for (const auto& [id, s] : out.series) binned += s.total();
    CHECK(binned + out.excluded_post_horizon == 250);
}

TEST_CASE("bin materializes quiet universe messages as all-zero series") {
    const std::vector<ForwardEvent> events{{"a", 1.0}};
    const std::vector<std::string> universe{"a", "quiet"};
    const BinResult out = bin(events, 10, 2, &universe);
    REQUIRE(out.series.count("quiet") == 1);
    CHECK(out.series.at("quiet").total() == 0);
    CHECK(out.series.at("a").total() == 1);
}

TEST_CASE("bin with a universe ignores events from unknown messages") {
    const std::vector<ForwardEvent> events{{"a", 1.0}, {"ghost", 1.0}};
    const std::vector<std::string> universe{"a"};
    const BinResult out = bin(events, 10, 2, &universe);
    CHECK(out.series.size() == 1);
    CHECK(out.series.count("ghost") == 0);
}

TEST_CASE("bin rejects negative timestamps and bad shapes") {
    const std::vector<ForwardEvent> neg{{"a", -1.0}};
    CHECK_THROWS_AS(bin(neg, 10, 2), std::invalid_argument);
    const std::vector<ForwardEvent> ok{{"a", 1.0}};
    CHECK_THROWS_AS(bin(ok, 0, 2), std::invalid_argument);
    CHECK_THROWS_AS(bin(ok, 10, 0), std::invalid_argument);
}

TEST_CASE("a post-horizon event still materializes its message") {
    const std::vector<ForwardEvent> events{{"late", 1000.0}};
    const BinResult out = bin(events, 10, 3);
    REQUIRE(out.series.count("late") == 1);
    CHECK(out.series.at("late").total() == 0);
    CHECK(out.excluded_post_horizon == 1);
}

TEST_CASE("average is the exact elementwise mean") {
    SeriesMap series;
    for (int m = 0; m < 4; ++m) {
        BinnedSeries s;
        s.message_id = std::string(1, static_cast<char>('a' + m));
        s.granularity_seconds = 5;
        s.counts = CountArray::Zero(3);
        s.counts << m, 2 * m, 1;
        series[s.message_id] = s;
    }
    const AverageSeries avg = average(series);
    CHECK(avg.n_messages == 4);
    CHECK(avg.granularity_seconds == 5);
    CHECK(avg.values[0] == doctest::Approx(1.5).epsilon(1e-15)); // (0+1+2+3)/4
    CHECK(avg.values[1] == doctest::Approx(3.0).epsilon(1e-15));
    CHECK(avg.values[2] == 1.0);
}

TEST_CASE("average is independent of message order") {
    std::vector<BinnedSeries> forward, backward;
    for (int m = 0; m < 5; ++m) {
        BinnedSeries s;
        s.message_id = "m" + std::to_string(m);
        s.granularity_seconds = 1;
        s.counts = CountArray::Zero(4);
        s.counts << m, m * m, 7 - m, 1;
        forward.push_back(s);
    }
    backward.assign(forward.rbegin(), forward.rend());
    const AverageSeries a = average(forward);
    const AverageSeries b = average(backward);
    for (Index i = 0; i < a.values.size(); ++i) CHECK(a.values[i] == b.values[i]);
}

TEST_CASE("average rejects mixed shapes and empty input") {
    BinnedSeries a, b;
    a.message_id = "a";
    a.granularity_seconds = 5;
    a.counts = CountArray::Zero(3);
    b = a;
    b.message_id = "b";
    b.granularity_seconds = 10;
    SeriesMap mixed{{"a", a}, {"b", b}};
    CHECK_THROWS_AS(average(mixed), std::invalid_argument);
    b.granularity_seconds = 5;
    b.counts = CountArray::Zero(4);
    SeriesMap mixed_horizon{{"a", a}, {"b", b}};
    CHECK_THROWS_AS(average(mixed_horizon), std::invalid_argument);
    CHECK_THROWS_AS(average(SeriesMap{}), std::invalid_argument);
}

TEST_CASE("rebin sums groups of consecutive bins") {
    BinnedSeries s;
    s.message_id = "a";
    s.granularity_seconds = 10;
    s.counts = CountArray::Zero(6);
    s.counts << 1, 2, 3, 4, 5, 6;
    const BinnedSeries out = rebin(s, 3);
    CHECK(out.granularity_seconds == 30);
    REQUIRE(out.horizon_bins() == 2);
    CHECK(out.counts[0] == 6);
    CHECK(out.counts[1] == 15);
    CHECK(out.total() == s.total());
    CHECK_THROWS_AS(rebin(s, 4), std::invalid_argument);
    CHECK_THROWS_AS(rebin(s, 0), std::invalid_argument);
}

TEST_CASE("binning coarsely equals binning finely then rebinning") {
    std::vector<ForwardEvent> events;
    for (int i = 0; i < 500; ++i)
        events.push_back({"m", static_cast<double>((i * 13) % 600)});
    const BinResult fine = bin(events, 5, 120);
    const BinResult coarse = bin(events, 20, 30);
    const BinnedSeries regrouped = rebin(fine.series.at("m"), 4);
    const BinnedSeries& direct = coarse.series.at("m");
    REQUIRE(regrouped.horizon_bins() == direct.horizon_bins());
    for (Index i = 0; i < direct.horizon_bins(); ++i)
        CHECK(regrouped.counts[i] == direct.counts[i]);
}
