#include "adcast/sweep.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <optional>
#include <set>
#include <stdexcept>

#include "json.hpp"

#include "adcast/baseline.hpp"
#include "adcast/ingest.hpp"
#include "adcast/io.hpp"
#include "adcast/predictor.hpp"

namespace adcast {

namespace {

using nlohmann::json;

struct MetricRow {
    std::int64_t granularity_seconds = 0;
    std::int64_t t_known_seconds = 0;
    std::string method;
    std::string metric;
    double value = 0.0;
};

std::string cell_dir_name(std::int64_t g, std::int64_t tk) {
    return "g" + std::to_string(g) + "_t" + std::to_string(tk);
}

double subset_mape(const std::vector<double>& predicted, const std::vector<double>& real) {
    double sum = 0.0;
    std::int64_t n = 0;
    for (std::size_t i = 0; i < real.size(); ++i) {
        if (real[i] == 0.0) continue;
        sum += std::abs(predicted[i] - real[i]) / real[i];
        ++n;
    }
    return n == 0 ? std::numeric_limits<double>::quiet_NaN()
                  : sum / static_cast<double>(n);
}

struct CellEval {
    std::vector<PredictionRow> rows;
    ValueArray predicted;
    ValueArray real;
};

void append_metric_rows(std::vector<MetricRow>& out, std::int64_t g, std::int64_t tk,
                        const std::string& method, const CellEval& cell, TicVariant variant) {
    const EvalSummary s = summarize(cell.predicted, cell.real);
    auto push = [&](const std::string& metric, double value) {
        out.push_back({g, tk, method, metric, value});
    };
    push("mape", s.mape);
    push("tic", variant == TicVariant::standard ? s.tic_standard : s.tic_as_written);
    push("ape_p50", s.ape_p50);
    push("ape_p70", s.ape_p70);
    push("ape_p90", s.ape_p90);
    push("n_pairs", static_cast<double>(s.n_pairs));
    push("zero_real_count", static_cast<double>(s.zero_real_count));

    std::vector<double> real_p, real_r, fake_p, fake_r;
    for (std::size_t i = 0; i < cell.rows.size(); ++i) {
        const PredictionRow& row = cell.rows[i];
        if (row.rec.peak_class == PeakClass::real_peak) {
            real_p.push_back(cell.predicted[static_cast<Index>(i)]);
            real_r.push_back(cell.real[static_cast<Index>(i)]);
        } else if (row.rec.peak_class == PeakClass::fake_peak) {
            fake_p.push_back(cell.predicted[static_cast<Index>(i)]);
            fake_r.push_back(cell.real[static_cast<Index>(i)]);
        }
    }
    push("n_real_peak", static_cast<double>(real_r.size()));
    push("n_fake_peak", static_cast<double>(fake_r.size()));
    const double mape_real = subset_mape(real_p, real_r);
    const double mape_fake = subset_mape(fake_p, fake_r);
    if (std::isfinite(mape_real)) push("mape_real_peak", mape_real);
    if (std::isfinite(mape_fake)) push("mape_fake_peak", mape_fake);
}

void write_results_csv(const std::filesystem::path& path, const std::vector<MetricRow>& rows) {
    std::ofstream out(path, std::ios::binary);
    if (!out.is_open()) throw std::runtime_error("cannot write " + path.string());
    out << "granularity_seconds,t_known_seconds,method,metric,value\n";
    for (const MetricRow& row : rows)
        out << row.granularity_seconds << ',' << row.t_known_seconds << ',' << row.method << ','
            << row.metric << ',' << format_double(row.value) << '\n';
}

void write_failures_json(const std::filesystem::path& path,
                         const std::vector<CellFailure>& failures) {
    json arr = json::array();
    for (const CellFailure& f : failures)
        arr.push_back({{"granularity_seconds", f.granularity_seconds},
                       {"t_known_seconds", f.t_known_seconds},
                       {"method", f.method},
                       {"error", f.error}});
    std::ofstream out(path, std::ios::binary);
    if (!out.is_open()) throw std::runtime_error("cannot write " + path.string());
    out << arr.dump(2) << '\n';
}

} // namespace

void ExperimentConfig::normalize_and_validate() {
    auto canonicalize = [](std::vector<std::int64_t>& v) {
        std::sort(v.begin(), v.end());
        v.erase(std::unique(v.begin(), v.end()), v.end());
    };
    canonicalize(granularities);
    canonicalize(t_known_values);
    if (granularities.empty()) throw std::invalid_argument("sweep: no granularities");
    if (t_known_values.empty()) throw std::invalid_argument("sweep: no t_known values");
    for (std::int64_t g : granularities)
        if (g < 1) throw std::invalid_argument("sweep: granularity must be >= 1 second");
    for (std::int64_t tk : t_known_values)
        if (tk < 1 || tk >= horizon_seconds)
            throw std::invalid_argument("sweep: need 1 <= t_known < horizon (seconds)");
    if (horizon_seconds < 2) throw std::invalid_argument("sweep: horizon too short");
    if (!(split_fraction > 0.0 && split_fraction < 1.0))
        throw std::invalid_argument("sweep: split fraction must be in (0, 1)");
    if (events_path.empty()) throw std::invalid_argument("sweep: events path required");
    if (out_dir.empty()) throw std::invalid_argument("sweep: output directory required");
}

SweepOutcome run_sweep(ExperimentConfig config) {
    config.normalize_and_validate();
    std::filesystem::create_directories(config.out_dir);

    EventLog log = read_events(config.events_path);
    if (!config.releases_path.empty())
        for (auto& [id, release] : read_releases_csv(config.releases_path))
            log.releases[id] = release;
    if (config.zero_based) log.releases.clear();

    std::vector<ForwardEvent> normalized;
    std::vector<std::string> universe;
    if (log.releases.empty()) {
        if (!config.zero_based)
            throw std::invalid_argument(
                "sweep: no release times; pass a releases file or mark the log zero-based");
        normalized = std::move(log.events);
        std::set<std::string> ids;
        for (const ForwardEvent& ev : normalized) ids.insert(ev.message_id);
        universe.assign(ids.begin(), ids.end());
    } else {
        NormalizeResult norm = normalize(log.events, log.releases);
        normalized = std::move(norm.events);
        for (const auto& [id, release] : log.releases) universe.push_back(id);
    }

    const bool run_ad = config.method != Method::baseline;
    const bool run_baseline = config.method != Method::ad;

    SweepOutcome outcome;
    std::vector<MetricRow> results;

    for (const std::int64_t g : config.granularities) {
        const Index horizon_bins = static_cast<Index>(config.horizon_seconds / g);

        SeriesMap train, test;
        SplitResult split;
        std::optional<FitReport> fit;
        std::optional<AverageSeries> train_avg;
        std::string stage_error;
        try {
            if (horizon_bins < 2) throw std::invalid_argument("horizon shorter than 2 bins");
            BinResult binned = bin(normalized, g, horizon_bins, &universe);
            split = chronological_split(binned.series, log.releases, config.split_fraction);
            for (const std::string& id : split.train_ids)
                train.insert(binned.series.extract(id));
            test = std::move(binned.series);
            if (run_ad) {
                train_avg = average(train);
                fit = fit_bihill(train_avg->values);
            }
        } catch (const std::exception& e) {
            stage_error = e.what();
        }

        std::vector<double> real_totals;
        if (stage_error.empty()) {
            real_totals.reserve(test.size());
            for (const auto& [id, s] : test)
                real_totals.push_back(static_cast<double>(s.total()));
        }

        for (const std::int64_t tk : config.t_known_values) {
            const Index t_known_bins = static_cast<Index>(tk / g);
            const std::filesystem::path cell = config.out_dir / cell_dir_name(g, tk);

            auto run_cell = [&](const std::string& method, auto&& body) {
                ++outcome.cells_run;
                try {
                    if (!stage_error.empty()) throw std::runtime_error(stage_error);
                    if (t_known_bins < 1 || t_known_bins >= horizon_bins)
                        throw std::invalid_argument(
                            "t_known does not leave a future window at this granularity");
                    std::filesystem::create_directories(cell);
                    body();
                } catch (const std::exception& e) {
                    outcome.failures.push_back({g, tk, method, e.what()});
                }
            };

            if (run_ad) {
                run_cell("ad", [&] {
                    ADModel model;
                    model.shape = normalize_shape(fit->params, horizon_bins);
                    model.cal = calibrate(fit->params, train, t_known_bins, horizon_bins);
                    model.granularity_seconds = g;
                    model.t_known_bins = t_known_bins;
                    model.horizon_bins = horizon_bins;
                    model.validate();
                    write_model_json(cell / "model.json", model);
                    write_fit_report_json(cell / "fit_report.json", *fit);

                    const std::vector<PredictionRecord> preds = predict_all(model, test);
                    CellEval eval;
                    eval.predicted = ValueArray(static_cast<Index>(preds.size()));
                    eval.real = ValueArray(static_cast<Index>(preds.size()));
                    Index i = 0;
                    for (const PredictionRecord& rec : preds) {
                        PredictionRow row;
                        row.rec = rec;
                        row.rec.peak_class =
                            classify_peak(test.at(rec.message_id), t_known_bins, horizon_bins);
                        row.real_total = real_totals[static_cast<std::size_t>(i)];
                        if (*row.real_total > 0.0)
                            row.ape = std::abs(rec.predicted_total - *row.real_total) /
                                      *row.real_total;
                        eval.predicted[i] = rec.predicted_total;
                        eval.real[i] = *row.real_total;
                        eval.rows.push_back(std::move(row));
                        ++i;
                    }
                    write_predictions_csv(cell / "predictions_ad.csv", eval.rows, true);
                    write_eval_json(cell / "eval_ad.json",
                                    summarize(eval.predicted, eval.real));
                    append_metric_rows(results, g, tk, "ad", eval, config.tic_variant);
                });
            }

            if (run_baseline) {
                run_cell("baseline", [&] {
                    const LogGrowthProfile profile =
                        fit_baseline(train, t_known_bins, horizon_bins);
                    write_baseline_json(cell / "baseline.json", profile);

                    CellEval eval;
                    eval.predicted = ValueArray(static_cast<Index>(test.size()));
                    eval.real = ValueArray(static_cast<Index>(test.size()));
                    Index i = 0;
                    for (const auto& [id, s] : test) {
                        PredictionRow row;
                        row.rec.message_id = id;
                        const QMaxKnown q = q_max_known(s, t_known_bins);
                        row.rec.q_max_observed = q.q_max;
                        for (Index b = 0; b < t_known_bins; ++b) row.rec.known_sum += s.counts[b];
                        row.rec.predicted_total = baseline_predict(profile, s, horizon_bins);
                        row.rec.predicted_future_sum =
                            row.rec.predicted_total - static_cast<double>(row.rec.known_sum);
                        row.rec.peak_class = classify_peak(s, t_known_bins, horizon_bins);
                        row.real_total = real_totals[static_cast<std::size_t>(i)];
                        if (*row.real_total > 0.0)
                            row.ape = std::abs(row.rec.predicted_total - *row.real_total) /
                                      *row.real_total;
                        eval.predicted[i] = row.rec.predicted_total;
                        eval.real[i] = *row.real_total;
                        eval.rows.push_back(std::move(row));
                        ++i;
                    }
                    write_predictions_csv(cell / "predictions_baseline.csv", eval.rows, true);
                    write_eval_json(cell / "eval_baseline.json",
                                    summarize(eval.predicted, eval.real));
                    append_metric_rows(results, g, tk, "baseline", eval, config.tic_variant);
                });
            }
        }
    }

    write_results_csv(config.out_dir / "sweep_results.csv", results);
    write_failures_json(config.out_dir / "failures.json", outcome.failures);
    return outcome;
}

void write_report(const std::filesystem::path& sweep_dir, const std::filesystem::path& out_dir) {
    std::filesystem::create_directories(out_dir);

    const std::set<std::string> plot_metrics{"mape",           "tic",
                                             "ape_p50",        "ape_p70",
                                             "ape_p90",        "mape_real_peak",
                                             "mape_fake_peak"};
    std::ifstream in(sweep_dir / "sweep_results.csv", std::ios::binary);
    if (!in.is_open())
        throw std::runtime_error("no sweep_results.csv in " + sweep_dir.string());
    std::ofstream report(out_dir / "report.csv", std::ios::binary);
    if (!report.is_open())
        throw std::runtime_error("cannot write report.csv in " + out_dir.string());

    std::string line;
    if (!std::getline(in, line) ||
        line != "granularity_seconds,t_known_seconds,method,metric,value")
        throw std::runtime_error("unrecognized sweep_results.csv header");
    report << line << '\n';

    struct CellRef {
        std::int64_t g = 0;
        std::int64_t tk = 0;
    };
    std::vector<CellRef> cells;
    std::set<std::pair<std::int64_t, std::int64_t>> seen;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        const std::size_t c1 = line.find(',');
        const std::size_t c2 = line.find(',', c1 + 1);
        const std::size_t c3 = line.find(',', c2 + 1);
        const std::size_t c4 = line.find(',', c3 + 1);
        if (c4 == std::string::npos) throw std::runtime_error("ragged sweep_results.csv row");
        const std::int64_t g = std::stoll(line.substr(0, c1));
        const std::int64_t tk = std::stoll(line.substr(c1 + 1, c2 - c1 - 1));
        const std::string metric = line.substr(c3 + 1, c4 - c3 - 1);
        if (plot_metrics.count(metric) != 0) report << line << '\n';
        if (seen.emplace(g, tk).second) cells.push_back({g, tk});
    }

    std::ofstream scatter(out_dir / "scatter.csv", std::ios::binary);
    if (!scatter.is_open())
        throw std::runtime_error("cannot write scatter.csv in " + out_dir.string());
    scatter << "granularity_seconds,t_known_seconds,method,id,known_sum,predicted_total,"
               "real_total,ape,peak_class\n";
    for (const CellRef& cell : cells) {
        for (const std::string method : {"ad", "baseline"}) {
            const std::filesystem::path path =
                sweep_dir / cell_dir_name(cell.g, cell.tk) / ("predictions_" + method + ".csv");
            if (!std::filesystem::exists(path)) continue;
            for (const PredictionRow& row : read_predictions_csv(path)) {
                scatter << cell.g << ',' << cell.tk << ',' << method << ',' << row.rec.message_id
                        << ',' << row.rec.known_sum << ','
                        << format_double(row.rec.predicted_total) << ','
                        << (row.real_total ? format_double(*row.real_total) : "") << ','
                        << (row.ape ? format_double(*row.ape) : "") << ','
                        << peak_class_name(row.rec.peak_class) << '\n';
            }
        }
    }
}

} // namespace adcast
