#include "adcast/io.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <limits>
#include <stdexcept>
#include <system_error>

#include "json.hpp"

namespace adcast {

namespace {

using nlohmann::json;

std::ofstream open_out(const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out.is_open()) throw std::runtime_error("cannot write " + path.string());
    return out;
}

std::ifstream open_in(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in.is_open()) throw std::runtime_error("cannot read " + path.string());
    return in;
}

std::string_view trim(std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t' || s.front() == '\r')) s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
    return s;
}

double parse_double(std::string_view s, const char* what) {
    s = trim(s);
    double v = 0.0;
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc{} || ptr != s.data() + s.size())
        throw std::runtime_error(std::string("bad number in ") + what + ": '" + std::string(s) + "'");
    return v;
}

std::int64_t parse_int(std::string_view s, const char* what) {
    s = trim(s);
    std::int64_t v = 0;
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc{} || ptr != s.data() + s.size())
        throw std::runtime_error(std::string("bad integer in ") + what + ": '" + std::string(s) + "'");
    return v;
}

std::vector<std::string_view> split(std::string_view line, char sep) {
    std::vector<std::string_view> out;
    std::size_t start = 0;
    while (true) {
        const std::size_t pos = line.find(sep, start);
        if (pos == std::string_view::npos) {
            out.push_back(line.substr(start));
            return out;
        }
        out.push_back(line.substr(start, pos - start));
        start = pos + 1;
    }
}

json params_to_json(const BiHillParams& p) {
    return json{{"p_m", p.p_m}, {"k_a", p.k_a}, {"h_a", p.h_a}, {"k_d", p.k_d}, {"h_d", p.h_d}};
}

BiHillParams params_from_json(const json& j) {
    BiHillParams p{j.at("p_m").get<double>(), j.at("k_a").get<double>(), j.at("h_a").get<double>(),
                   j.at("k_d").get<double>(), j.at("h_d").get<double>()};
    validate(p);
    return p;
}

std::string event_id_of(const json& j) {
    const json& id = j.at("id");
    if (id.is_string()) return id.get<std::string>();
    if (id.is_number_integer()) return std::to_string(id.get<std::int64_t>());
    throw std::runtime_error("event id must be a string or integer");
}

} // namespace

std::string format_double(double value) {
    char buf[64];
    const auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), value);
    if (ec != std::errc{}) throw std::runtime_error("format_double failed");
    return std::string(buf, ptr);
}

std::string_view peak_class_name(PeakClass c) {
    switch (c) {
        case PeakClass::real_peak: return "real_peak";
        case PeakClass::fake_peak: return "fake_peak";
        case PeakClass::unknown: return "unknown";
    }
    throw std::logic_error("unreachable peak class");
}

EventLog read_events(const std::filesystem::path& path) {
    EventLog log;
    std::ifstream in = open_in(path);
    std::string line;
    const std::string ext = path.extension().string();

    if (ext == ".jsonl" || ext == ".json") {
        while (std::getline(in, line)) {
            if (trim(line).empty()) continue;
            const json j = json::parse(line);
            ForwardEvent ev{event_id_of(j), j.at("t").get<double>()};
            if (j.contains("release")) log.releases[ev.message_id] = j.at("release").get<double>();
            log.events.push_back(std::move(ev));
        }
        return log;
    }

    if (!std::getline(in, line)) throw std::runtime_error("empty events CSV: " + path.string());
    const auto header = split(trim(line), ',');
    const bool with_release = header.size() == 3 && trim(header[2]) == "release";
    if (!(header.size() == 2 || with_release) || trim(header[0]) != "id" || trim(header[1]) != "t")
        throw std::runtime_error("events CSV header must be id,t[,release]: " + path.string());
    while (std::getline(in, line)) {
        const std::string_view row = trim(line);
        if (row.empty()) continue;
        const auto cells = split(row, ',');
        if (cells.size() != header.size())
            throw std::runtime_error("ragged events CSV row: '" + std::string(row) + "'");
        ForwardEvent ev{std::string(trim(cells[0])), parse_double(cells[1], "events CSV")};
        if (with_release) log.releases[ev.message_id] = parse_double(cells[2], "events CSV");
        log.events.push_back(std::move(ev));
    }
    return log;
}

void write_events_jsonl(const std::filesystem::path& path, std::span<const ForwardEvent> events) {
    std::ofstream out = open_out(path);
    std::string line;
    for (const ForwardEvent& ev : events) {
        line.clear();
        line += "{\"id\":\"";
        line += ev.message_id;
        line += "\",\"t\":";
        line += format_double(ev.t);
        line += "}\n";
        out << line;
    }
}

ReleaseMap read_releases_csv(const std::filesystem::path& path) {
    std::ifstream in = open_in(path);
    std::string line;
    if (!std::getline(in, line) || trim(line) != "id,release")
        throw std::runtime_error("releases CSV header must be id,release: " + path.string());
    ReleaseMap releases;
    while (std::getline(in, line)) {
        const std::string_view row = trim(line);
        if (row.empty()) continue;
        const auto cells = split(row, ',');
        if (cells.size() != 2)
            throw std::runtime_error("ragged releases CSV row: '" + std::string(row) + "'");
        releases[std::string(trim(cells[0]))] = parse_double(cells[1], "releases CSV");
    }
    return releases;
}

void write_releases_csv(const std::filesystem::path& path, const ReleaseMap& releases) {
    std::ofstream out = open_out(path);
    out << "id,release\n";
    for (const auto& [id, release] : releases) out << id << ',' << format_double(release) << '\n';
}

void write_binned_csv(const std::filesystem::path& path, const SeriesMap& series) {
    std::ofstream out = open_out(path);
    out << "id,bin,count\n";
    for (const auto& [id, s] : series)
        for (Index i = 0; i < s.horizon_bins(); ++i)
            if (s.counts[i] != 0) out << id << ',' << i + 1 << ',' << s.counts[i] << '\n';
}

void write_binned_meta(const std::filesystem::path& path, const BinnedMeta& meta) {
    const json j{{"granularity_seconds", meta.granularity_seconds},
                 {"horizon_bins", meta.horizon_bins},
                 {"n_messages", meta.n_messages},
                 {"dropped_pre_release", meta.dropped_pre_release},
                 {"excluded_post_horizon", meta.excluded_post_horizon},
                 {"message_ids", meta.message_ids}};
    open_out(path) << j.dump(2) << '\n';
}

void write_average_csv(const std::filesystem::path& path, const AverageSeries& avg) {
    std::ofstream out = open_out(path);
    out << "bin,value\n";
    for (Index i = 0; i < avg.values.size(); ++i)
        out << i + 1 << ',' << format_double(avg.values[i]) << '\n';

    std::filesystem::path meta_path = path;
    meta_path.replace_extension(".meta.json");
    const json j{{"granularity_seconds", avg.granularity_seconds},
                 {"n_messages", avg.n_messages},
                 {"horizon_bins", avg.values.size()}};
    open_out(meta_path) << j.dump(2) << '\n';
}

AverageSeries read_average_csv(const std::filesystem::path& csv_path,
                               const std::filesystem::path& meta_path) {
    json meta;
    open_in(meta_path) >> meta;
    AverageSeries avg;
    avg.granularity_seconds = meta.at("granularity_seconds").get<std::int64_t>();
    avg.n_messages = meta.at("n_messages").get<std::int64_t>();
    const Index horizon = meta.at("horizon_bins").get<Index>();
    avg.values = ValueArray::Zero(horizon);

    std::ifstream in = open_in(csv_path);
    std::string line;
    if (!std::getline(in, line) || trim(line) != "bin,value")
        throw std::runtime_error("average CSV header must be bin,value: " + csv_path.string());
    while (std::getline(in, line)) {
        const std::string_view row = trim(line);
        if (row.empty()) continue;
        const auto cells = split(row, ',');
        if (cells.size() != 2)
            throw std::runtime_error("ragged average CSV row: '" + std::string(row) + "'");
        const std::int64_t bin = parse_int(cells[0], "average CSV");
        if (bin < 1 || bin > horizon)
            throw std::runtime_error("average CSV bin outside the horizon");
        avg.values[bin - 1] = parse_double(cells[1], "average CSV");
    }
    return avg;
}

void write_model_json(const std::filesystem::path& path, const ADModel& model) {
    json j = params_to_json(model.shape.params);
    j["alpha"] = model.cal.alpha;
    if (std::isfinite(model.cal.beta))
        j["beta"] = model.cal.beta;
    else
        j["beta"] = nullptr;
    j["granularity_seconds"] = model.granularity_seconds;
    j["shape_peak_bin"] = model.shape.peak_bin;
    j["t_known_bins"] = model.t_known_bins;
    j["horizon_bins"] = model.horizon_bins;
    open_out(path) << j.dump(2) << '\n';
}

ADModel read_model_json(const std::filesystem::path& path) {
    json j;
    open_in(path) >> j;
    ADModel model;
    model.shape.params = params_from_json(j);
    model.shape.peak_bin = j.at("shape_peak_bin").get<Index>();
    model.shape.peak_value =
        bihill_eval(model.shape.params, static_cast<double>(model.shape.peak_bin));
    model.cal.alpha = j.at("alpha").get<double>();
    const json& beta = j.at("beta");
    model.cal.beta =
        beta.is_null() ? -std::numeric_limits<double>::infinity() : beta.get<double>();
    model.granularity_seconds = j.at("granularity_seconds").get<std::int64_t>();
    model.t_known_bins = j.at("t_known_bins").get<Index>();
    model.horizon_bins = j.at("horizon_bins").get<Index>();
    model.validate();
    return model;
}

void write_baseline_json(const std::filesystem::path& path, const LogGrowthProfile& profile) {
    const json j{{"granularity_seconds", profile.granularity_seconds},
                 {"t1_bins", profile.t1_bins},
                 {"horizon_bins", profile.horizon_bins},
                 {"n_train", profile.n_train},
                 {"cumulative_log_growth", profile.cumulative_log_growth}};
    open_out(path) << j.dump(2) << '\n';
}

LogGrowthProfile read_baseline_json(const std::filesystem::path& path) {
    json j;
    open_in(path) >> j;
    LogGrowthProfile profile;
    profile.granularity_seconds = j.at("granularity_seconds").get<std::int64_t>();
    profile.t1_bins = j.at("t1_bins").get<Index>();
    profile.horizon_bins = j.at("horizon_bins").get<Index>();
    profile.n_train = j.at("n_train").get<std::int64_t>();
    profile.cumulative_log_growth = j.at("cumulative_log_growth").get<std::vector<double>>();
    if (profile.cumulative_log_growth.size() !=
        static_cast<std::size_t>(profile.horizon_bins - profile.t1_bins))
        throw std::runtime_error("baseline profile length does not match its horizon");
    return profile;
}

void write_fit_report_json(const std::filesystem::path& path, const FitReport& report) {
    const json j{{"params", params_to_json(report.params)},
                 {"rss", report.rss},
                 {"iterations", report.iterations},
                 {"converged", report.converged},
                 {"route", report.route == FitRoute::r_index_regression ? "r_index_regression"
                                                                        : "nonlinear_ls"},
                 {"start_index", report.start_index},
                 {"rss_history", report.rss_history}};
    open_out(path) << j.dump(2) << '\n';
}

void write_predictions_csv(const std::filesystem::path& path,
                           std::span<const PredictionRow> rows, bool with_truth) {
    std::ofstream out = open_out(path);
    out << (with_truth ? "id,known_sum,predicted_total,real_total,ape,peak_class\n"
                       : "id,known_sum,predicted_total\n");
    for (const PredictionRow& row : rows) {
        out << row.rec.message_id << ',' << row.rec.known_sum << ','
            << format_double(row.rec.predicted_total);
        if (with_truth) {
            out << ',' << (row.real_total ? format_double(*row.real_total) : "") << ','
                << (row.ape ? format_double(*row.ape) : "") << ','
                << peak_class_name(row.rec.peak_class);
        }
        out << '\n';
    }
}

std::vector<PredictionRow> read_predictions_csv(const std::filesystem::path& path) {
    std::ifstream in = open_in(path);
    std::string line;
    if (!std::getline(in, line)) throw std::runtime_error("empty predictions CSV: " + path.string());
    const std::string_view header = trim(line);
    const bool with_truth = header == "id,known_sum,predicted_total,real_total,ape,peak_class";
    if (!with_truth && header != "id,known_sum,predicted_total")
        throw std::runtime_error("unrecognized predictions CSV header: " + path.string());

    std::vector<PredictionRow> rows;
    while (std::getline(in, line)) {
        const std::string_view row = trim(line);
        if (row.empty()) continue;
        const auto cells = split(row, ',');
        if (cells.size() != (with_truth ? 6u : 3u))
            throw std::runtime_error("ragged predictions CSV row: '" + std::string(row) + "'");
        PredictionRow out;
        out.rec.message_id = std::string(trim(cells[0]));
        out.rec.known_sum = parse_int(cells[1], "predictions CSV");
        out.rec.predicted_total = parse_double(cells[2], "predictions CSV");
        if (with_truth) {
            if (!trim(cells[3]).empty()) out.real_total = parse_double(cells[3], "predictions CSV");
            if (!trim(cells[4]).empty()) out.ape = parse_double(cells[4], "predictions CSV");
            const std::string_view cls = trim(cells[5]);
            out.rec.peak_class = cls == "real_peak"   ? PeakClass::real_peak
                                 : cls == "fake_peak" ? PeakClass::fake_peak
                                                      : PeakClass::unknown;
        }
        rows.push_back(std::move(out));
    }
    return rows;
}

void write_eval_json(const std::filesystem::path& path, const EvalSummary& summary) {
    const json j{{"mape", summary.mape},
                 {"tic_standard", summary.tic_standard},
                 {"tic_as_written", summary.tic_as_written},
                 {"n_pairs", summary.n_pairs},
                 {"zero_real_count", summary.zero_real_count},
                 {"ape_p50", summary.ape_p50},
                 {"ape_p70", summary.ape_p70},
                 {"ape_p90", summary.ape_p90}};
    open_out(path) << j.dump(2) << '\n';
}

void write_truth_csv(const std::filesystem::path& path, const SynthResult& result) {
    std::ofstream out = open_out(path);
    out << "id,release,q_max,total_events\n";
    for (const MessageTruth& t : result.truth)
        out << t.message_id << ',' << format_double(t.release) << ',' << format_double(t.q_max)
            << ',' << t.total_events << '\n';
}

void write_truth_shape_csv(const std::filesystem::path& path, const SynthResult& result) {
    std::ofstream out = open_out(path);
    out << "bin,mean_shape,noise_floor\n";
    for (Index i = 0; i < result.mean_shape.size(); ++i)
        out << i + 1 << ',' << format_double(result.mean_shape[i]) << ','
            << format_double(result.config.noise_floor) << '\n';
}

} // namespace adcast
