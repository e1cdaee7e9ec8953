#include "doctest.h"

#include <charconv>
#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

#include "json.hpp"

#include "adcast/io.hpp"

using namespace adcast;
namespace fs = std::filesystem;

namespace {

struct TempDir {
    fs::path path;
    TempDir() {
        path = fs::temp_directory_path() / ("adcast_io_test_" + std::to_string(counter()++));
        fs::remove_all(path);
        fs::create_directories(path);
    }
    ~TempDir() { fs::remove_all(path); }
    fs::path operator/(const char* name) const { return path / name; }
    static int& counter() {
        static int c = 0;
        return c;
    }
};

void write_text(const fs::path& p, const std::string& text) {
    std::ofstream out(p, std::ios::binary);
    out << text;
}

} // namespace

TEST_CASE("events round-trip through JSON lines") {
    TempDir dir;
    const std::vector<ForwardEvent> events{{"a", 1.5}, {"a", 2.0}, {"b", 0.0}};
    write_events_jsonl(dir / "events.jsonl", events);
    const EventLog log = read_events(dir / "events.jsonl");
    REQUIRE(log.events.size() == 3);
    for (std::size_t i = 0; i < events.size(); ++i) {
        CHECK(log.events[i].message_id == events[i].message_id);
        CHECK(log.events[i].t == events[i].t);
    }
    CHECK(log.releases.empty());
}

TEST_CASE("JSON lines may carry inline releases and integer ids") {
    TempDir dir;
    write_text(dir / "events.jsonl",
               "{\"id\":\"a\",\"t\":3.0,\"release\":1.0}\n"
               "\n"
               "{\"id\":42,\"t\":7.5}\n");
    const EventLog log = read_events(dir / "events.jsonl");
    REQUIRE(log.events.size() == 2);
    CHECK(log.events[1].message_id == "42");
    CHECK(log.releases.at("a") == 1.0);
}

TEST_CASE("events CSV requires the documented header") {
    TempDir dir;
    write_text(dir / "events.csv", "id,t\nm1,4.5\nm2,0\n");
    const EventLog log = read_events(dir / "events.csv");
    REQUIRE(log.events.size() == 2);
    CHECK(log.events[0].t == 4.5);

    write_text(dir / "with_release.csv", "id,t,release\nm1,4.5,1\n");
    const EventLog rel = read_events(dir / "with_release.csv");
    CHECK(rel.releases.at("m1") == 1.0);

    write_text(dir / "bad.csv", "time,id\n1,2\n");
    CHECK_THROWS_AS(read_events(dir / "bad.csv"), std::runtime_error);
    write_text(dir / "ragged.csv", "id,t\nm1\n");
    CHECK_THROWS_AS(read_events(dir / "ragged.csv"), std::runtime_error);
    CHECK_THROWS_AS(read_events(dir / "missing.csv"), std::runtime_error);
}

TEST_CASE("releases round-trip through CSV") {
    TempDir dir;
    const ReleaseMap releases{{"a", 0.0}, {"b", 360.5}};
    write_releases_csv(dir / "releases.csv", releases);
    const ReleaseMap back = read_releases_csv(dir / "releases.csv");
    CHECK(back == releases);
    write_text(dir / "bad.csv", "release,id\n1,a\n");
    CHECK_THROWS_AS(read_releases_csv(dir / "bad.csv"), std::runtime_error);
}

TEST_CASE("average series round-trips with its sidecar") {
    TempDir dir;
    AverageSeries avg;
    avg.granularity_seconds = 300;
    avg.n_messages = 12;
    avg.values = ValueArray(4);
    avg.values << 0.25, 3.75, 1.0 / 3.0, 0.0;
    write_average_csv(dir / "average.csv", avg);
    const AverageSeries back = read_average_csv(dir / "average.csv", dir / "average.meta.json");
    CHECK(back.granularity_seconds == 300);
    CHECK(back.n_messages == 12);
    REQUIRE(back.values.size() == 4);
    for (Index i = 0; i < 4; ++i) CHECK(back.values[i] == avg.values[i]);
}

TEST_CASE("model JSON round-trips including the null error floor") {
    TempDir dir;
    ADModel model;
    model.shape = normalize_shape(BiHillParams{12.5, 7.0, 1.9, 30.0, 2.1}, 100);
    model.cal.alpha = 1.25;
    model.granularity_seconds = 60;
    model.t_known_bins = 10;
    model.horizon_bins = 100;

    SUBCASE("beta = -inf serializes as null") {
        write_model_json(dir / "model.json", model);
        const ADModel back = read_model_json(dir / "model.json");
        CHECK(back.cal.beta == -std::numeric_limits<double>::infinity());
        CHECK(back.cal.alpha == model.cal.alpha);
        CHECK(back.shape.params.p_m == model.shape.params.p_m);
        CHECK(back.shape.params.k_a == model.shape.params.k_a);
        CHECK(back.shape.params.h_a == model.shape.params.h_a);
        CHECK(back.shape.params.k_d == model.shape.params.k_d);
        CHECK(back.shape.params.h_d == model.shape.params.h_d);
        CHECK(back.shape.peak_bin == model.shape.peak_bin);
        CHECK(back.shape.peak_value == model.shape.peak_value);
        CHECK(back.t_known_bins == 10);
        CHECK(back.horizon_bins == 100);
    }
    SUBCASE("finite beta survives") {
        model.cal.beta = -2.5;
        write_model_json(dir / "model.json", model);
        CHECK(read_model_json(dir / "model.json").cal.beta == -2.5);
    }
}

TEST_CASE("baseline profile JSON round-trips and checks its length") {
    TempDir dir;
    LogGrowthProfile p;
    p.granularity_seconds = 60;
    p.t1_bins = 2;
    p.horizon_bins = 5;
    p.n_train = 9;
    p.cumulative_log_growth = {0.1, 0.2, 0.25};
    write_baseline_json(dir / "baseline.json", p);
    const LogGrowthProfile back = read_baseline_json(dir / "baseline.json");
    CHECK(back.t1_bins == 2);
    CHECK(back.horizon_bins == 5);
    CHECK(back.n_train == 9);
    CHECK(back.cumulative_log_growth == p.cumulative_log_growth);

    p.cumulative_log_growth.pop_back();
    write_baseline_json(dir / "bad.json", p);
    CHECK_THROWS_AS(read_baseline_json(dir / "bad.json"), std::runtime_error);
}

TEST_CASE("predictions CSV round-trips both layouts") {
    TempDir dir;
    std::vector<PredictionRow> rows(2);
    rows[0].rec.message_id = "a";
    rows[0].rec.known_sum = 11;
    rows[0].rec.predicted_total = 14.25;
    rows[1].rec.message_id = "b";
    rows[1].rec.known_sum = 0;
    rows[1].rec.predicted_total = 0.5;

    SUBCASE("bare predictions") {
        write_predictions_csv(dir / "p.csv", rows, false);
        const auto back = read_predictions_csv(dir / "p.csv");
        REQUIRE(back.size() == 2);
        CHECK(back[0].rec.message_id == "a");
        CHECK(back[0].rec.known_sum == 11);
        CHECK(back[0].rec.predicted_total == 14.25);
        CHECK_FALSE(back[0].real_total.has_value());
    }
    SUBCASE("predictions with truth attached") {
        rows[0].real_total = 16.0;
        rows[0].ape = std::abs(14.25 - 16.0) / 16.0;
        rows[0].rec.peak_class = PeakClass::real_peak;
        rows[1].real_total = 0.0;
        rows[1].rec.peak_class = PeakClass::fake_peak;
        write_predictions_csv(dir / "p.csv", rows, true);
        const auto back = read_predictions_csv(dir / "p.csv");
        REQUIRE(back.size() == 2);
        CHECK(back[0].real_total == 16.0);
        CHECK(back[0].ape == rows[0].ape);
        CHECK(back[0].rec.peak_class == PeakClass::real_peak);
        CHECK(back[1].real_total == 0.0);
        CHECK_FALSE(back[1].ape.has_value());
        CHECK(back[1].rec.peak_class == PeakClass::fake_peak);
    }
}

TEST_CASE("binned CSV lists only the nonzero cells") {
    TempDir dir;
    SeriesMap series;
    BinnedSeries s;
    s.message_id = "m";
    s.granularity_seconds = 60;
    s.counts = CountArray::Zero(4);
    s.counts << 0, 3, 0, 1;
    series["m"] = s;
    write_binned_csv(dir / "binned.csv", series);
    std::ifstream in(dir / "binned.csv");
    std::string all((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    CHECK(all == "id,bin,count\nm,2,3\nm,4,1\n");
}

TEST_CASE("eval summary JSON carries both TIC variants") {
    TempDir dir;
    EvalSummary s;
    s.mape = 0.25;
    s.tic_standard = 0.1;
    s.tic_as_written = 0.45;
    s.n_pairs = 7;
    s.zero_real_count = 1;
    s.ape_p50 = 0.2;
    s.ape_p70 = 0.3;
    s.ape_p90 = 0.6;
    write_eval_json(dir / "eval.json", s);
    std::ifstream in(dir / "eval.json");
    nlohmann::json j;
    in >> j;
    CHECK(j.at("mape").get<double>() == 0.25);
    CHECK(j.at("tic_standard").get<double>() == 0.1);
    CHECK(j.at("tic_as_written").get<double>() == 0.45);
    CHECK(j.at("ape_p50").get<double>() == 0.2);
    CHECK(j.at("ape_p70").get<double>() == 0.3);
    CHECK(j.at("ape_p90").get<double>() == 0.6);
    CHECK(j.at("n_pairs").get<int>() == 7);
    CHECK(j.at("zero_real_count").get<int>() == 1);
}

TEST_CASE("format_double writes the shortest round-trip form") {
    CHECK(format_double(0.1) == "0.1");
    CHECK(format_double(1.0) == "1");
    CHECK(format_double(-2.5) == "-2.5");
    for (double v : {1.0 / 3.0, 0.1 + 0.2, 1e300, 4.9e-324, -0.0}) {
        const std::string text = format_double(v);
        double parsed = 0.0;
        std::from_chars(text.data(), text.data() + text.size(), parsed);
        CHECK(parsed == v);
    }
}

TEST_CASE("fit report JSON names the route") {
    TempDir dir;
    FitReport report;
    report.params = {4.0, 2.0, 1.5, 8.0, 2.5};
    report.rss = 0.125;
    report.iterations = 12;
    report.converged = true;
    report.route = FitRoute::r_index_regression;
    report.rss_history = {1.0, 0.5, 0.125};
    write_fit_report_json(dir / "fit.json", report);
    std::ifstream in(dir / "fit.json");
    nlohmann::json j;
    in >> j;
    CHECK(j.at("route").get<std::string>() == "r_index_regression");
    CHECK(j.at("rss").get<double>() == 0.125);
    CHECK(j.at("iterations").get<int>() == 12);
    CHECK(j.at("converged").get<bool>());
    CHECK(j.at("params").at("p_m").get<double>() == 4.0);
    CHECK(j.at("rss_history").get<std::vector<double>>() == report.rss_history);
}
